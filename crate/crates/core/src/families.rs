//! Named series and Riordan-array constructions: Catalan and ternary
//! series, generalized Chebyshev arrays, and the parameterized
//! orthogonal-polynomial families whose moment arrays are involutions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::{binomial, rat, Coeff, Rational};
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, LowerTriMatrix};
use crate::poly::Poly;
use crate::riordan::RiordanPair;
use crate::series::{solve_gk, Series};

/// `c(x) = sum C(2n, n) / (n + 1) x^n`, to the given order.
pub fn catalan<C: Coeff>(order: usize) -> Result<Series<C>> {
    let coeffs = (0..=order as i64)
        .map(|n| C::from_rational(&Rational::new(binomial(2 * n, n), BigInt::from(n + 1))))
        .collect();
    Ok(Series::new(coeffs, order))
}

/// `t(x) = 1 + x t(x)^3`.
pub fn ternary<C: Coeff>(order: usize) -> Result<Series<C>> {
    solve_gk(3, order)
}

fn rseries(coeffs: &[Rational], order: usize) -> Series<Rational> {
    Series::from_rationals(coeffs, order)
}

/// `1 + a x + b x^2`.
fn quadratic(a: &Rational, b: &Rational, order: usize) -> Series<Rational> {
    rseries(&[rat(1), a.clone(), b.clone()], order)
}

/// `((1 - l x - mu x^2) / (1 + r x + s x^2), x / (1 + r x + s x^2))`.
pub fn gen_cheb_pair(r: &Rational, s: &Rational, l: &Rational, mu: &Rational, order: usize) -> Result<RiordanPair<Rational>> {
    let d = quadratic(r, s, order);
    let num = rseries(&[rat(1), -l.clone(), -mu.clone()], order);
    RiordanPair::new(num.try_div(&d)?, Series::x(order).try_div(&d)?)
}

/// Leading `n x n` block of [`gen_cheb_pair`].
pub fn gen_cheb_array(r: &Rational, s: &Rational, l: &Rational, mu: &Rational, n: usize) -> Result<LowerTriMatrix<Rational>> {
    gen_cheb_pair(r, s, l, mu, n.max(2) - 1)?.to_matrix(n)
}

/// `U_n(x)` by `U_n = 2x U_{n-1} - U_{n-2}`.
pub fn chebyshev_u_eval(n: usize, x: &Rational) -> Rational {
    let two_x = x * rat(2);
    let (mut prev, mut cur) = (rat(1), two_x.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &two_x * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// A series with polynomial coefficients, given low order first.
fn poly_series(coeffs: Vec<Poly>, order: usize) -> Series<Poly> {
    Series::new(coeffs, order)
}

fn one_plus_x_pow(m: usize, order: usize) -> Result<Series<Poly>> {
    Series::<Poly>::from_ints(&[1, 1], order).pow(m as i64)
}

/// `((1 + y x + y x^2) / (1 + x)^m, x / (1 + x)^2)` for `m` in {1, 2}.
pub fn main_theorem_family(m: usize, order: usize) -> Result<RiordanPair<Poly>> {
    if !(1..=2).contains(&m) {
        return Err(Error::InvalidParameter("main theorem family needs m in {1, 2}"));
    }
    probe_family(&rat(1), m, order)
}

/// `((1 + y x + s y x^2) / (1 + x)^m, x / (1 + x)^2)`.
fn probe_family(s: &Rational, m: usize, order: usize) -> Result<RiordanPair<Poly>> {
    let y = Poly::u();
    let num = poly_series(vec![Poly::one(), y.clone(), y.scale(s)], order);
    let g = num.try_div(&one_plus_x_pow(m, order)?)?;
    let f = Series::x(order).try_div(&one_plus_x_pow(2, order)?)?;
    RiordanPair::new(g, f)
}

/// The involution the main theorem attaches to `m`: `(c^m, -x c^3)`.
pub fn main_theorem_involution(m: usize, order: usize) -> Result<RiordanPair<Rational>> {
    if !(1..=2).contains(&m) {
        return Err(Error::InvalidParameter("main theorem family needs m in {1, 2}"));
    }
    let c = catalan::<Rational>(order)?;
    RiordanPair::new(c.pow(m as i64)?, -&(&Series::x(order) * &c.pow(3)?))
}

/// Square of the moment coefficient array of
/// `((1 + y x + s y x^2) / (1 + x)^2, x / (1 + x)^2)` at a fixed `s`.
pub fn necessity_probe_square(s: &Rational, n: usize) -> Result<LowerTriMatrix<Rational>> {
    let m = probe_family(s, 2, n.max(2) - 1)?.moment_coefficient_array(n)?;
    m.mul(&m)
}

/// [`necessity_probe_square`] with `s` kept symbolic: each entry is
/// recovered as a polynomial in `s` (written `u`) by interpolation.
pub fn necessity_probe_polys(n: usize) -> Result<LowerTriMatrix<Poly>> {
    // entries of the square have degree at most 2n - 2 in s; one extra
    // sample confirms the bound
    let samples: Vec<Rational> = (0..=2 * n as i64).map(rat).collect();
    let squares = samples.iter().map(|s| necessity_probe_square(s, n)).collect::<Result<Vec<_>>>()?;
    let (fit, check) = samples.split_at(samples.len() - 1);
    LowerTriMatrix::try_from_fn(n, |r, c| {
        let points: Vec<(Rational, Rational)> = fit.iter().zip(&squares).map(|(s, sq)| (s.clone(), sq.get(r, c))).collect();
        let p = Poly::interpolate(&points)?;
        if p.eval(&check[0]) != squares[fit.len()].get(r, c) {
            return Err(Error::InvalidParameter("probe entry exceeds its degree bound"));
        }
        Ok(p)
    })
}

/// `((1 + (2 - a + y) x + (-a + b + 1 + y) x^2) / (1 + a x + b x^2), x / (1 + a x + b x^2))`.
pub fn general_family(a: &Rational, b: &Rational, order: usize) -> Result<RiordanPair<Poly>> {
    let y = Poly::u();
    let c1 = &Poly::constant(rat(2) - a) + &y;
    let c2 = &Poly::constant(-a + b + rat(1)) + &y;
    let num = poly_series(vec![Poly::one(), c1, c2], order);
    let d = quadratic(a, b, order).map(|c| Poly::constant(c.clone()));
    RiordanPair::new(num.try_div(&d)?, Series::x(order).try_div(&d)?)
}

/// Closed form of the moment-array involution of [`general_family`]:
/// `g = 2b / D`, `f = (R + (a - 2b) x - 1) / D` with
/// `R = sqrt(1 - 2a x + (a^2 - 4b) x^2)` and
/// `D = 1 - a + 2b + (a - 1)(a - 4b) x + (a - 1) R`.
pub fn general_involution(a: &Rational, b: &Rational, order: usize) -> Result<RiordanPair<Rational>> {
    if b.is_zero() {
        return Err(Error::DegenerateParameters("b must be nonzero"));
    }
    let one = rat(1);
    let two = rat(2);
    let big_r = rseries(&[one.clone(), -(a * &two), a * a - b * rat(4)], order).sqrt1()?;
    let lin = rseries(&[&one - a + b * &two, (a - &one) * (a - b * rat(4))], order);
    let d = &lin + &big_r.scale(&(a - &one));
    let g = Series::constant(b * &two, order).try_div(&d)?;
    let num = &big_r + &rseries(&[-one, a - b * &two], order);
    RiordanPair::new(g, num.try_div(&d)?)
}

/// `R * (1 / g(fbar(-x)), fbar(-x))`.
pub fn factorization_involution<C: Coeff>(r: &RiordanPair<C>) -> Result<RiordanPair<C>> {
    r.rmul(&factorization_partner(r)?)
}

/// The right factor `(1 / g(fbar(-x)), fbar(-x))`.
pub fn factorization_partner<C: Coeff>(r: &RiordanPair<C>) -> Result<RiordanPair<C>> {
    let h = r.f().revert()?.negate_arg();
    RiordanPair::new(r.g().compose(&h)?.inverse()?, h)
}

/// `(D, inner)` with `D = 1 + 2a x + b x^2` and `inner = c(b x^2 / D^2) / D`.
fn corollary_parts(a: &Rational, b: &Rational, order: usize) -> Result<Series<Rational>> {
    let d = quadratic(&(a * rat(2)), b, order);
    let arg = Series::monomial(b.clone(), 2, order).try_div(&d.pow(2)?)?;
    catalan::<Rational>(order)?.compose(&arg)?.try_div(&d)
}

/// `(1, -x / (1 + 2a x + b x^2) c(b x^2 / (1 + 2a x + b x^2)^2))`.
pub fn corollary_involution(a: &Rational, b: &Rational, order: usize) -> Result<RiordanPair<Rational>> {
    let h = corollary_parts(a, b, order)?;
    RiordanPair::new(Series::one(order), -&(&Series::x(order) * &h))
}

/// The involution built from `(1 / (1 + a x + b x^2), x / (1 + a x + b x^2))`:
/// `(h, -x h)` with `h = c(b x^2 / D^2) / D`, `D = 1 + 2a x + b x^2`.
pub fn chebyshev_involution(a: &Rational, b: &Rational, order: usize) -> Result<RiordanPair<Rational>> {
    let h = corollary_parts(a, b, order)?;
    let f = -&(&Series::x(order) * &h);
    RiordanPair::new(h, f)
}

/// `(1 / (1 + a x + b x^2), x / (1 + a x + b x^2))`.
pub fn chebyshev_pair(a: &Rational, b: &Rational, order: usize) -> Result<RiordanPair<Rational>> {
    gen_cheb_pair(a, b, &Rational::zero(), &Rational::zero(), order)
}

/// The RNA involution as a factorization of
/// `(1 / (1 - x/2 + x^2), x / (1 - x/2 + x^2))`.
pub fn rna_involution(order: usize) -> Result<RiordanPair<Rational>> {
    factorization_involution(&rna_source(order)?)
}

pub fn rna_source(order: usize) -> Result<RiordanPair<Rational>> {
    chebyshev_pair(&crate::ratio(-1, 2), &rat(1), order)
}

fn check_k_m(k: usize, m: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter("k must be at least 2"));
    }
    if m > k {
        return Err(Error::InvalidParameter("m must lie in 0..=k"));
    }
    Ok(())
}

/// `(g^m, -x g^{2k-1})` with `g = 1 + x g^k`.
pub fn k_theorem_involution(k: usize, m: usize, order: usize) -> Result<RiordanPair<Rational>> {
    check_k_m(k, m)?;
    let g = solve_gk::<Rational>(k as u32, order)?;
    RiordanPair::new(g.pow(m as i64)?, -&(&Series::x(order) * &g.pow(2 * k as i64 - 1)?))
}

/// `((1 + x y (1 + x)^{k-1}) / (1 + x)^m, x / (1 + x)^k)`.
pub fn k_theorem_family(k: usize, m: usize, order: usize) -> Result<RiordanPair<Poly>> {
    check_k_m(k, m)?;
    let xy = Series::monomial(Poly::u(), 1, order);
    let num = &Series::one(order) + &(&xy * &one_plus_x_pow(k - 1, order)?);
    let g = num.try_div(&one_plus_x_pow(m, order)?)?;
    let f = Series::x(order).try_div(&one_plus_x_pow(k, order)?)?;
    RiordanPair::new(g, f)
}

/// `((1 + (alpha - gamma) x + (beta - delta) x^2) / (1 + alpha x + beta x^2), x / (1 + alpha x + beta x^2))`:
/// the inverse of the array whose production matrix is [`tridiagonal_template`].
pub fn tridiagonal_inverse(gamma: &Rational, delta: &Rational, alpha: &Rational, beta: &Rational, order: usize) -> Result<RiordanPair<Rational>> {
    gen_cheb_pair(alpha, beta, &(gamma - alpha), &(delta - beta), order)
}

/// Production matrix with `Z = gamma + delta x`, `A = 1 + alpha x + beta x^2`.
pub fn tridiagonal_template(gamma: &Rational, delta: &Rational, alpha: &Rational, beta: &Rational, n: usize) -> DenseMatrix<Rational> {
    DenseMatrix::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => gamma.clone(),
        (1, 0) => delta.clone(),
        _ if j == i + 1 => rat(1),
        _ if j == i => alpha.clone(),
        _ if j + 1 == i => beta.clone(),
        _ => Rational::zero(),
    })
}

/// A named construction, as accepted on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    MainTheorem { m: usize },
    General { a: Rational, b: Rational },
    KTheorem { k: usize, m: usize },
    GenCheb { r: Rational, s: Rational, lambda: Rational, mu: Rational },
    Factorization(RiordanPair<Rational>),
    Corollary { a: Rational, b: Rational },
    Rna,
}

impl FamilySpec {
    /// The rational Riordan array the construction names. For the
    /// parameterized families this is the closed-form moment involution.
    pub fn pair(&self, order: usize) -> Result<RiordanPair<Rational>> {
        match self {
            FamilySpec::MainTheorem { m } => main_theorem_involution(*m, order),
            FamilySpec::General { a, b } => general_involution(a, b, order),
            FamilySpec::KTheorem { k, m } => k_theorem_involution(*k, *m, order),
            FamilySpec::GenCheb { r, s, lambda, mu } => gen_cheb_pair(r, s, lambda, mu, order),
            FamilySpec::Factorization(r) => factorization_involution(&r.truncate(order.min(r.order()))?),
            FamilySpec::Corollary { a, b } => corollary_involution(a, b, order),
            FamilySpec::Rna => rna_involution(order),
        }
    }

    /// The parameterized orthogonal-polynomial array, for families that have one.
    pub fn parameterized(&self, order: usize) -> Result<Option<RiordanPair<Poly>>> {
        Ok(match self {
            FamilySpec::MainTheorem { m } => Some(main_theorem_family(*m, order)?),
            FamilySpec::General { a, b } => Some(general_family(a, b, order)?),
            FamilySpec::KTheorem { k, m } => Some(k_theorem_family(*k, *m, order)?),
            _ => None,
        })
    }

    pub fn is_involution_claim(&self) -> bool {
        !matches!(self, FamilySpec::GenCheb { .. })
    }
}

fn parse_args<T: FromStr>(s: &str, count: usize, name: &str) -> Result<Vec<T>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != count {
        return Err(Error::Parse(format!("{name} expects {count} parameter(s)")));
    }
    parts
        .iter()
        .map(|p| p.parse::<T>().map_err(|_| Error::Parse(format!("bad parameter {p:?} for {name}"))))
        .collect()
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a)),
            None => (s.trim(), None),
        };
        let need = |n: usize| args.ok_or_else(|| Error::Parse(format!("{name} expects {n} parameter(s)")));
        match name {
            "main-theorem" => {
                let v = parse_args::<usize>(need(1)?, 1, name)?;
                Ok(FamilySpec::MainTheorem { m: v[0] })
            }
            "general" => {
                let v = parse_args::<Rational>(need(2)?, 2, name)?;
                Ok(FamilySpec::General { a: v[0].clone(), b: v[1].clone() })
            }
            "k-theorem" => {
                let v = parse_args::<usize>(need(2)?, 2, name)?;
                Ok(FamilySpec::KTheorem { k: v[0], m: v[1] })
            }
            "gen-cheb" => {
                let v = parse_args::<Rational>(need(4)?, 4, name)?;
                Ok(FamilySpec::GenCheb { r: v[0].clone(), s: v[1].clone(), lambda: v[2].clone(), mu: v[3].clone() })
            }
            "corollary" => {
                let v = parse_args::<Rational>(need(2)?, 2, name)?;
                Ok(FamilySpec::Corollary { a: v[0].clone(), b: v[1].clone() })
            }
            "rna" if args.is_none() => Ok(FamilySpec::Rna),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::MainTheorem { m } => write!(f, "main-theorem:{m}"),
            FamilySpec::General { a, b } => write!(f, "general:{a},{b}"),
            FamilySpec::KTheorem { k, m } => write!(f, "k-theorem:{k},{m}"),
            FamilySpec::GenCheb { r, s, lambda, mu } => write!(f, "gen-cheb:{r},{s},{lambda},{mu}"),
            FamilySpec::Factorization(_) => write!(f, "factorization"),
            FamilySpec::Corollary { a, b } => write!(f, "corollary:{a},{b}"),
            FamilySpec::Rna => write!(f, "rna"),
        }
    }
}
