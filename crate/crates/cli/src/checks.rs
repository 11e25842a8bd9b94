//! The reproduction catalogue behind `verify-paper`, grouped by criterion.

use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use riordan::almost::{self, ar_to_matrix};
use riordan::families::{self as fam};
use riordan::riordan::coefficient_array;
use riordan::transforms::{self, det_cofactor, hankel, SumMode};
use riordan::{rat, ratio, series_to_jfraction, Coeff, JFraction, LowerTriMatrix, Poly, Rational, RiordanPair, Series};
use serde_json::{json, Value};

use crate::expr::{eval_seq, parse_pair};
use crate::golden;
use crate::oeis::OeisSource;

/// A failed check, carrying the first witness found.
#[derive(Debug)]
pub struct Fail(pub String);

impl<E: std::error::Error> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

pub fn fail(msg: impl Into<String>) -> Fail {
    Fail(msg.into())
}

type Outcome = Result<String, Fail>;
type Body = Box<dyn Fn() -> Outcome + Send + Sync>;

pub struct Check {
    pub id: String,
    pub criterion: u8,
    pub name: String,
    body: Body,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub id: String,
    pub criterion: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

pub const CRITERIA: [&str; 10] = [
    "golden matrices",
    "involution suite",
    "power identity",
    "Hankel numbers",
    "polynomial Hankels",
    "continued fractions",
    "dual routes",
    "production matrices",
    "OEIS fixtures",
    "property suites",
];

/// Series order used for pairs checked at 16 x 16.
const N: usize = 20;
const INVOLUTION_SIZE: usize = 16;

const SEED_FACTOR_PAIRS: u64 = 0x5eed_0002;
const SEED_PROD_PAIRS: u64 = 0x5eed_0008;
const SEED_TRIDIAGONAL: u64 = 0x5eed_0108;
const SEED_PROPERTIES: u64 = 0x5eed_0010;

#[derive(Default)]
struct Catalog {
    checks: Vec<Check>,
    counts: [usize; 11],
}

impl Catalog {
    fn add(&mut self, criterion: u8, name: impl Into<String>, body: impl Fn() -> Outcome + Send + Sync + 'static) {
        self.counts[criterion as usize] += 1;
        let id = format!("{criterion:02}.{:02}", self.counts[criterion as usize]);
        self.checks.push(Check { id, criterion, name: name.into(), body: Box::new(body) });
    }
}

fn seq_eq<T: PartialEq + Display>(got: &[T], want: &[T]) -> Result<(), Fail> {
    if got.len() != want.len() {
        return Err(fail(format!("length {} against {}", got.len(), want.len())));
    }
    match got.iter().zip(want).position(|(a, b)| a != b) {
        Some(i) => Err(fail(format!("index {i}: got {}, expected {}", got[i], want[i]))),
        None => Ok(()),
    }
}

fn mat_eq<C: Coeff>(got: &LowerTriMatrix<C>, want: &LowerTriMatrix<C>) -> Result<(), Fail> {
    if got.size() != want.size() {
        return Err(fail(format!("size {} against {}", got.size(), want.size())));
    }
    match got.first_mismatch(want) {
        Some((r, c, a, b)) => Err(fail(format!("({r}, {c}): got {a}, expected {b}"))),
        None => Ok(()),
    }
}

fn golden_eq(name: &str, m: &impl golden::Entries) -> Result<(), Fail> {
    golden::compare(name, m).map_err(Fail)
}

fn pair(src: &str, order: usize) -> Result<RiordanPair<Rational>, Fail> {
    Ok(parse_pair(src, order)?)
}

fn pow2(e: usize) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn sign(n: usize) -> Rational {
    if n % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

fn poly_pow(p: &Poly, e: usize) -> Poly {
    (0..e).fold(Poly::one(), |acc, _| acc * p.clone())
}

fn rseq_pow(r: &Rational, e: usize) -> Rational {
    (0..e).fold(rat(1), |acc, _| acc * r)
}

fn random_pair(rng: &mut ChaCha8Rng, order: usize) -> Result<RiordanPair<Rational>, Fail> {
    let mut g = vec![rat(1)];
    g.extend((0..3).map(|_| rat(rng.gen_range(-3..=3))));
    let lead = [1, -1, 2][rng.gen_range(0..3)];
    let mut f = vec![rat(0), rat(lead)];
    f.extend((0..2).map(|_| rat(rng.gen_range(-3..=3))));
    Ok(RiordanPair::new(Series::from_rationals(&g, order), Series::from_rationals(&f, order))?)
}

fn random_pairs(seed: u64, count: usize, order: usize) -> Vec<Result<RiordanPair<Rational>, String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_pair(&mut rng, order).map_err(|f| f.0)).collect()
}

type PairFn = Arc<dyn Fn() -> Result<RiordanPair<Rational>, Fail> + Send + Sync>;

fn involution_list() -> Vec<(String, PairFn)> {
    let mut out: Vec<(String, PairFn)> = Vec::new();
    out.push(("(1, -x)".into(), Arc::new(|| pair("(1, -x)", N))));
    out.push(("signed Pascal".into(), Arc::new(|| pair("(1/(1-x), -x/(1-x))", N))));
    out.push(("(c, -x c^3)".into(), Arc::new(|| Ok(fam::main_theorem_involution(1, N)?))));
    out.push(("(c^2, -x c^3)".into(), Arc::new(|| Ok(fam::main_theorem_involution(2, N)?))));
    for (a, b) in [(3, 2), (1, 2), (2, 1), (2, 2), (4, 3)] {
        out.push((format!("general {a},{b}"), Arc::new(move || Ok(fam::general_involution(&rat(a), &rat(b), N)?))));
    }
    for (i, p) in random_pairs(SEED_FACTOR_PAIRS, 10, N).into_iter().enumerate() {
        out.push((
            format!("factorization of random pair {}", i + 1),
            Arc::new(move || Ok(fam::factorization_involution(&p.clone().map_err(Fail)?)?)),
        ));
    }
    for (a, b) in [(2, 1), (1, 2), (3, 2)] {
        out.push((format!("corollary {a},{b}"), Arc::new(move || Ok(fam::corollary_involution(&rat(a), &rat(b), N)?))));
    }
    out.push(("RNA".into(), Arc::new(|| Ok(fam::rna_involution(N)?))));
    for k in 2..=4 {
        for m in 0..=k {
            out.push((format!("k-theorem k={k} m={m}"), Arc::new(move || Ok(fam::k_theorem_involution(k, m, N)?))));
        }
    }
    out
}

fn involution_outcome(p: &RiordanPair<Rational>) -> Outcome {
    let r = p.involution_check(INVOLUTION_SIZE)?;
    if r.holds {
        return Ok(format!("{0}x{0}", r.size));
    }
    match r.witness {
        Some((row, col, got, want)) => Err(fail(format!("M^2 at ({row}, {col}) is {got}, expected {want}"))),
        None => Err(fail("pair identity fails")),
    }
}

fn golden_checks(cat: &mut Catalog) {
    fn rows(name: &str) -> usize {
        golden::rows(name)
    }
    macro_rules! block {
        ($name:expr, |$n:ident| $body:expr) => {
            cat.add(1, $name, move || {
                let $n = rows($name);
                if $n == 0 {
                    return Err(fail(concat!("missing golden block ", $name)));
                }
                let m = $body;
                golden_eq($name, &m)?;
                Ok(format!("{0} rows", $n))
            });
        };
    }
    let o = |n: usize| n + 2;
    block!("a106566", |n| pair("(1, x*c)", o(n))?.to_matrix(n)?);
    block!("signed_pascal", |n| pair("(1/(1-x), -x/(1-x))", o(n))?.to_matrix(n)?);
    block!("c_neg_xc3", |n| fam::main_theorem_involution(1, o(n))?.to_matrix(n)?);
    block!("c2_neg_xc3", |n| fam::main_theorem_involution(2, o(n))?.to_matrix(n)?);
    block!("u_half", |n| fam::chebyshev_pair(&rat(0), &rat(1), o(n))?.to_matrix(n)?);
    block!("probe_square", |n| fam::necessity_probe_polys(n)?);
    block!("hankel2_array", |n| hankel_coefficient_array(&fam::main_theorem_family(2, 2 * n + 2)?, n)?);
    block!("hankel1_array", |n| hankel_coefficient_array(&fam::main_theorem_family(1, 2 * n + 2)?, n)?);
    block!("hankel1_reversal", |n| {
        let rev = hankel_coefficient_array(&fam::main_theorem_family(1, 2 * n + 2)?, n)?.reversal();
        mat_eq(&rev, &fam::chebyshev_pair(&rat(2), &rat(1), o(n))?.to_matrix(n)?)?;
        rev
    });
    block!("general_3_2", |n| fam::general_involution(&rat(3), &rat(2), o(n))?.to_matrix(n)?);
    block!("general_1_2", |n| fam::general_involution(&rat(1), &rat(2), o(n))?.to_matrix(n)?);
    block!("inv_one_plus_x_sq", |n| fam::chebyshev_pair(&rat(2), &rat(1), o(n))?.to_matrix(n)?);
    block!("c2_xc2", |n| pair("(c^2, x*c^2)", o(n))?.to_matrix(n)?);
    block!("factor_inv_sq", |n| {
        fam::factorization_involution(&fam::chebyshev_pair(&rat(2), &rat(1), o(n))?)?.to_matrix(n)?
    });
    let source = |n: usize| fam::gen_cheb_pair(&rat(2), &rat(1), &rat(-1), &rat(-1), n + 2);
    block!("factor_source", |n| source(n)?.to_matrix(n)?);
    block!("factor_partner", |n| fam::factorization_partner(&source(n)?)?.to_matrix(n)?);
    block!("factor_product", |n| {
        let s = source(n)?;
        let prod = s.rmul(&fam::factorization_partner(&s)?)?;
        mat_eq(&prod.to_matrix(n)?, &fam::factorization_involution(&s)?.to_matrix(n)?)?;
        prod.to_matrix(n)?
    });
    block!("corollary_2_1", |n| fam::corollary_involution(&rat(2), &rat(1), o(n))?.to_matrix(n)?);
    block!("rna_source", |n| fam::rna_source(o(n))?.to_matrix(n)?);
    block!("rna_partner", |n| fam::factorization_partner(&fam::rna_source(o(n))?)?.to_matrix(n)?);
    block!("rna", |n| fam::rna_involution(o(n))?.to_matrix(n)?);
    block!("prodmat_k2", |n| {
        let p = pair("(c^2, x*c^2)", 2 * n + 2)?;
        let m = p.production_matrix(n)?;
        if m != p.production_matrix_by_matrices(n)? {
            return Err(fail("routes disagree"));
        }
        m
    });
    block!("prodmat_k3", |n| {
        let p = pair("(t^3, x*t^3)", 2 * n + 2)?;
        let m = p.production_matrix(n)?;
        if m != p.production_matrix_by_matrices(n)? {
            return Err(fail("routes disagree"));
        }
        m
    });
    block!("ternary_moment_array", |n| {
        let closed = fam::k_theorem_involution(3, 3, o(n))?.to_matrix(n)?;
        mat_eq(&fam::k_theorem_family(3, 3, o(n))?.moment_coefficient_array(n)?, &closed)?;
        closed
    });
    block!("ternary_hankel_array", |n| hankel_coefficient_array(&fam::k_theorem_family(3, 3, 2 * n + 2)?, n)?);
    block!("chebyshev_t", |n| ar_to_matrix(&almost::chebyshev_t_array(n)?, n)?);
    block!("chebyshev_t_embedded", |n| almost::chebyshev_t_array(o(n))?.pair().to_matrix(n)?);
    block!("appendix_array", |n| ar_to_matrix(&almost::appendix_array(n)?, n)?);
    block!("appendix_inverse", |n| ar_to_matrix(&almost::appendix_array(n)?, n)?.inverse()?);
    block!("appendix_coeff_array", |n| almost::appendix_coefficient_pair(o(n))?.to_matrix(n)?);
}

/// Coefficient array of `h_0(y), ..., h_{n-1}(y)` for the family's moments.
fn hankel_coefficient_array(p: &RiordanPair<Poly>, n: usize) -> Result<LowerTriMatrix<Rational>, Fail> {
    let mu = p.moment_polys(2 * n - 1)?;
    Ok(coefficient_array(&hankel(&mu, n - 1)?)?)
}

fn involution_checks(cat: &mut Catalog) {
    for (name, make) in involution_list() {
        let m2 = make.clone();
        cat.add(2, name.clone(), move || involution_outcome(&make()?));
        cat.add(3, format!("{name}, g^m for m in -2..=3"), move || {
            let p = m2()?;
            for m in -2..=3 {
                involution_outcome(&p.pow_g(m)?).map_err(|f| fail(format!("m = {m}: {}", f.0)))?;
            }
            Ok("6 powers".into())
        });
    }
}

type SeqFn = Arc<dyn Fn() -> Result<Vec<Rational>, Fail> + Send + Sync>;

struct NumberCase {
    name: &'static str,
    seq: SeqFn,
    n: usize,
    expected: Vec<Rational>,
}

fn sums(src: &str, size: usize, mode: SumMode) -> Result<Vec<Rational>, Fail> {
    Ok(transforms::matrix_sums(&pair(src, size + 2)?.to_matrix(size)?, mode)?)
}

fn number_cases() -> Vec<NumberCase> {
    let fib: Vec<Rational> = {
        let (mut a, mut b) = (BigInt::zero(), BigInt::one());
        let mut v = Vec::new();
        for _ in 0..20 {
            v.push(Rational::from_integer(a.clone()));
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
        }
        v
    };
    let cor: Vec<Rational> = {
        let mut s = vec![rat(1), rat(2)];
        for k in 2..=6 {
            let next = &s[k - 1] * rat(2) - &s[k - 2] * rat(2);
            s.push(next);
        }
        s
    };
    let c = |order: usize| -> Result<Vec<Rational>, Fail> { Ok(fam::catalan::<Rational>(order)?.into_coeffs()) };
    let ones = |n: usize| vec![rat(1); n + 1];
    vec![
        NumberCase { name: "Catalan", seq: Arc::new(move || c(12)), n: 6, expected: ones(6) },
        NumberCase { name: "Catalan shifted", seq: Arc::new(move || Ok(c(13)?[1..].to_vec())), n: 6, expected: ones(6) },
        NumberCase {
            name: "A081696",
            seq: Arc::new(|| sums("(c, x*c^3)", 13, SumMode::Diagonal)),
            n: 6,
            expected: (0..=6).map(pow2).collect(),
        },
        NumberCase {
            name: "A081696 shifted",
            seq: Arc::new(|| Ok(sums("(c, x*c^3)", 14, SumMode::Diagonal)?[1..].to_vec())),
            n: 6,
            expected: (0..=6).map(|n| pow2(n) * (rat(1) - rat(n as i64))).collect(),
        },
        NumberCase {
            name: "A109262",
            seq: Arc::new(|| sums("(c^2, x*c^3)", 13, SumMode::Diagonal)),
            n: 6,
            expected: (0..=6).map(|n| fib[2 * n + 1].clone()).collect(),
        },
        NumberCase {
            name: "ternary numbers",
            seq: Arc::new(|| Ok(fam::ternary::<Rational>(8)?.into_coeffs())),
            n: 4,
            expected: [1, 2, 11, 170, 7429].map(rat).to_vec(),
        },
        NumberCase {
            name: "row sums of general 1,2",
            seq: Arc::new(|| sums("general:1,2", 13, SumMode::Row)),
            n: 6,
            expected: (0..=6).map(|n| sign(n) * pow2(choose2(n))).collect(),
        },
        NumberCase {
            name: "absolute row sums of general 1,2",
            seq: Arc::new(|| sums("general:1,2", 13, SumMode::AbsRow)),
            n: 6,
            expected: (0..=6).map(|n| pow2(choose2(n))).collect(),
        },
        NumberCase {
            name: "row sums of corollary 2,1",
            seq: Arc::new(|| sums("corollary:2,1", 13, SumMode::Row)),
            n: 6,
            expected: (0..=6).map(|n| pow2(choose2(n + 1)) * &cor[n]).collect(),
        },
        NumberCase {
            name: "Somos sequence",
            seq: Arc::new(|| Ok(almost::somos_series(16)?.into_coeffs())),
            n: 7,
            expected: (0..=7).map(sign).collect(),
        },
        NumberCase {
            name: "Somos sequence shifted",
            seq: Arc::new(|| {
                let mut v = vec![rat(1)];
                v.extend(almost::somos_series(16)?.into_coeffs());
                Ok(v)
            }),
            n: 7,
            expected: (0..=7).map(sign).collect(),
        },
    ]
}

type PolySeqFn = Arc<dyn Fn() -> Result<Vec<Poly>, Fail> + Send + Sync>;

struct PolyCase {
    name: &'static str,
    seq: PolySeqFn,
    n: usize,
    expected: Vec<Poly>,
}

fn poly_cases() -> Vec<PolyCase> {
    let y = Poly::u();
    let one_minus_y = Poly::from_ints(&[1, -1]);
    let h1 = |n: usize| -> Poly {
        let m = 2 * n as i64 + 1;
        let cs = (0..=n as i64).map(|k| Rational::from_integer(riordan::binomial(m - k, m - 2 * k)) * sign(k as usize)).collect();
        Poly::new(cs)
    };
    let general = |a: i64, b: i64| -> Vec<Poly> {
        let base = &y - &Poly::constant(rat(a - 1));
        (0..=4)
            .map(|n| poly_pow(&base, n) * Poly::constant(sign(n) * rseq_pow(&rat(b), choose2(n))))
            .collect()
    };
    let ternary: Vec<Poly> = golden::block("ternary_hankel_array")
        .map(|b| b.iter().take(5).map(|row| Poly::new(row.iter().map(|c| c.coeff(0)).collect())).collect())
        .unwrap_or_default();
    vec![
        PolyCase {
            name: "mu^(2)",
            seq: Arc::new(|| Ok(fam::main_theorem_family(2, 12)?.moment_polys(11)?)),
            n: 5,
            expected: (0..=5).map(|n| poly_pow(&one_minus_y, n)).collect(),
        },
        PolyCase {
            name: "mu^(1)",
            seq: Arc::new(|| Ok(fam::main_theorem_family(1, 12)?.moment_polys(11)?)),
            n: 5,
            expected: (0..=5).map(h1).collect(),
        },
        PolyCase {
            name: "general 3,2",
            seq: Arc::new(|| Ok(fam::general_family(&rat(3), &rat(2), 10)?.moment_polys(9)?)),
            n: 4,
            expected: general(3, 2),
        },
        PolyCase {
            name: "general 1,2",
            seq: Arc::new(|| Ok(fam::general_family(&rat(1), &rat(2), 10)?.moment_polys(9)?)),
            n: 4,
            expected: general(1, 2),
        },
        PolyCase {
            name: "ternary moments",
            seq: Arc::new(|| Ok(fam::k_theorem_family(3, 3, 10)?.moment_polys(9)?)),
            n: 4,
            expected: ternary,
        },
    ]
}

fn hankel_checks(cat: &mut Catalog) {
    for case in number_cases() {
        let NumberCase { name, seq, n, expected } = case;
        let s2 = seq.clone();
        cat.add(4, name, move || {
            let v = seq()?;
            seq_eq(&hankel(&v, n)?, &expected)?;
            Ok(format!("n <= {n}"))
        });
        cat.add(6, format!("Heilermann, {name}"), move || heilermann_outcome(&s2()?, n));
    }
    for case in poly_cases() {
        let PolyCase { name, seq, n, expected } = case;
        let s2 = seq.clone();
        cat.add(5, name, move || {
            let v = seq()?;
            seq_eq(&hankel(&v, n)?, &expected)?;
            Ok(format!("n <= {n}"))
        });
        cat.add(6, format!("Heilermann, {name} at y = 3, -2, 1/2"), move || {
            let v = s2()?;
            for y in [rat(3), rat(-2), ratio(1, 2)] {
                let at: Vec<Rational> = v.iter().map(|p| p.eval(&y)).collect();
                heilermann_outcome(&at, n).map_err(|f| fail(format!("y = {y}: {}", f.0)))?;
            }
            Ok(format!("n <= {n}"))
        });
    }
}

/// Compares the product formula with the determinant route up to `n`. A
/// vanishing `beta_k` must coincide with a vanishing determinant `h_k`.
fn heilermann_outcome(seq: &[Rational], n: usize) -> Outcome {
    let h = hankel(seq, n)?;
    let s: Series<Rational> = Series::from_rationals(&seq[..2 * n + 1], 2 * n);
    let (jf, upto, note) = match series_to_jfraction(&s, n) {
        Ok(jf) => (jf, n, String::new()),
        Err(riordan::Error::HankelDegenerate { level }) => {
            if !h[level].is_zero() {
                return Err(fail(format!("beta_{level} vanishes but h_{level} = {}", h[level])));
            }
            (series_to_jfraction(&s, level - 1)?, level - 1, format!(", degenerate at level {level}"))
        }
        Err(e) => return Err(e.into()),
    };
    for (k, hk) in h.iter().enumerate().take(upto + 1) {
        let got = jf.heilermann(k)?;
        if &got != hk {
            return Err(fail(format!("h_{k}: product formula {got}, determinant {hk}")));
        }
    }
    Ok(format!("n <= {upto}{note}"))
}

fn roundtrip<C: Coeff>(cf: &JFraction<C>, series: &Series<C>, depth: usize) -> Outcome {
    let order = 2 * depth;
    let expanded = cf.to_series(order)?;
    let target = series.truncate(order);
    if let Some(i) = (0..=order).find(|&i| expanded.coeffs()[i] != target.coeffs()[i]) {
        return Err(fail(format!("[x^{i}]: fraction gives {}, series has {}", expanded.coeffs()[i], target.coeffs()[i])));
    }
    let peeled = series_to_jfraction(&expanded, depth)?;
    match peeled.detect_tail() {
        Some(back) if &back == cf => Ok(format!("depth {depth}")),
        other => Err(fail(format!("peeled back to {:?}", other.map(|j| j.to_json().to_string())))),
    }
}

fn periodic<C: Coeff>(alphas: Vec<C>, betas: Vec<C>, alpha: C, beta: C) -> Result<JFraction<C>, Fail> {
    Ok(JFraction::periodic(C::one(), alphas, betas, alpha, beta)?)
}

fn cf_checks(cat: &mut Catalog) {
    const DEPTH: usize = 7;
    let order = 2 * DEPTH;
    let y = Poly::u();
    let pc = |c: i64| Poly::constant(rat(c));
    {
        let y = y.clone();
        cat.add(6, "mu^(2) fraction", move || {
            let cf = periodic(vec![&pc(2) - &y], vec![&pc(1) - &y], pc(2), pc(1))?;
            let mu = fam::main_theorem_family(2, order + 1)?.moment_polys(order + 1)?;
            roundtrip(&cf, &Series::new(mu, order), DEPTH)
        });
    }
    cat.add(6, "c^2 fraction", move || {
        let cf = periodic(vec![], vec![], rat(2), rat(1))?;
        roundtrip(&cf, &fam::catalan::<Rational>(order)?.pow(2)?, DEPTH)
    });
    for (a, b) in [(3, 2), (1, 2)] {
        let y = y.clone();
        cat.add(6, format!("general {a},{b} fraction"), move || {
            let cf = periodic(vec![&pc(2 * a - 2) - &y], vec![&pc(a - 1) - &y], pc(a), pc(b))?;
            let mu = fam::general_family(&rat(a), &rat(b), order + 1)?.moment_polys(order + 1)?;
            roundtrip(&cf, &Series::new(mu, order), DEPTH)
        });
    }
    cat.add(6, "A225887 fraction", move || {
        let cf = periodic(vec![rat(4)], vec![rat(2)], rat(3), rat(2))?;
        roundtrip(&cf, fam::general_involution(&rat(3), &rat(2), order)?.g(), DEPTH)
    });
    let sum_cases: [(&str, &str, SumMode, i64, i64, i64, i64); 4] = [
        ("row sums of general 3,2", "general:3,2", SumMode::Row, 3, 1, 3, 2),
        ("absolute row sums of general 3,2", "general:3,2", SumMode::AbsRow, 5, 3, 3, 2),
        ("row sums of general 1,2", "general:1,2", SumMode::Row, -1, -1, 1, 2),
        ("absolute row sums of general 1,2", "general:1,2", SumMode::AbsRow, 1, 1, 1, 2),
    ];
    for (name, src, mode, a0, b1, a, b) in sum_cases {
        cat.add(6, format!("{name} fraction"), move || {
            let cf = periodic(vec![rat(a0)], vec![rat(b1)], rat(a), rat(b))?;
            let s = sums(src, order + 1, mode)?;
            roundtrip(&cf, &Series::new(s, order), DEPTH)
        });
    }
    cat.add(6, "appendix moment fraction", move || {
        let cf = periodic(vec![-Poly::u()], vec![Poly::from_ints(&[1, -1])], Poly::zero(), Poly::one())?;
        let out = almost::appendix_moment_pipeline(order + 1)?;
        if out.jf != cf {
            return Err(fail("pipeline fraction differs"));
        }
        roundtrip(&cf, &Series::new(out.moments, order), DEPTH)
    });
}

fn dual_route_checks(cat: &mut Catalog) {
    fn dual(family: RiordanPair<Poly>, closed: RiordanPair<Rational>) -> Outcome {
        mat_eq(&family.moment_coefficient_array(INVOLUTION_SIZE)?, &closed.to_matrix(INVOLUTION_SIZE)?)?;
        Ok("16x16".into())
    }
    for m in 1..=2 {
        cat.add(7, format!("main theorem m={m}"), move || {
            dual(fam::main_theorem_family(m, N)?, fam::main_theorem_involution(m, N)?)
        });
    }
    for (a, b) in [(3, 2), (1, 2), (2, 1), (2, 2), (4, 3)] {
        cat.add(7, format!("general {a},{b}"), move || {
            let (a, b) = (rat(a), rat(b));
            dual(fam::general_family(&a, &b, N)?, fam::general_involution(&a, &b, N)?)
        });
    }
    for k in 2..=4 {
        for m in 0..=k {
            cat.add(7, format!("k-theorem k={k} m={m}"), move || {
                dual(fam::k_theorem_family(k, m, N)?, fam::k_theorem_involution(k, m, N)?)
            });
        }
    }
}

fn production_checks(cat: &mut Catalog) {
    const SIZE: usize = 8;
    fn both_routes(p: &RiordanPair<Rational>) -> Outcome {
        let a = p.production_matrix(SIZE)?;
        let b = p.production_matrix_by_matrices(SIZE)?;
        match a.first_mismatch(&b) {
            Some((r, c, x, y)) => Err(fail(format!("({r}, {c}): series route {x}, matrix route {y}"))),
            None => Ok(format!("{SIZE}x{SIZE}, band width {}", a.band_width())),
        }
    }
    for (i, p) in random_pairs(SEED_PROD_PAIRS, 10, 2 * SIZE + 4).into_iter().enumerate() {
        cat.add(8, format!("random pair {}", i + 1), move || both_routes(&p.clone().map_err(Fail)?));
    }
    for (name, src) in [("prodmat_k2", "(c^2, x*c^2)"), ("prodmat_k3", "(t^3, x*t^3)")] {
        cat.add(8, format!("displayed production matrix {src}"), move || {
            let p = pair(src, 2 * SIZE + 4)?;
            both_routes(&p)?;
            let n = golden::rows(name);
            golden_eq(name, &p.production_matrix(n)?)?;
            Ok(format!("{n}x{n}"))
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED_TRIDIAGONAL);
    let mut params = vec![(rat(3), ratio(-1, 2), rat(2), rat(5)), (rat(1), rat(1), rat(1), rat(1))];
    for _ in 0..3 {
        let mut nonzero = || loop {
            let v = ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3));
            if !v.is_zero() {
                return v;
            }
        };
        params.push((nonzero(), nonzero(), nonzero(), nonzero()));
    }
    for (g, d, a, b) in params {
        cat.add(8, format!("tridiagonal template {g},{d},{a},{b}"), move || {
            let order = 2 * SIZE + 4;
            let rinv = fam::tridiagonal_inverse(&g, &d, &a, &b, order)?;
            let big_a = Series::from_rationals(&[rat(1), a.clone(), b.clone()], order);
            let z = Series::from_rationals(&[g.clone(), d.clone()], order);
            let x = Series::x(order);
            let oracle = RiordanPair::new(&Series::one(order) - &(&x * &z.try_div(&big_a)?), x.try_div(&big_a)?)?;
            if rinv != oracle {
                return Err(fail("closed form differs from (1 - x Z/A, x/A)"));
            }
            let m = rinv.inverse()?;
            let template = fam::tridiagonal_template(&g, &d, &a, &b, SIZE);
            for (route, p) in [("series", m.production_matrix(SIZE)?), ("matrix", m.production_matrix_by_matrices(SIZE)?)] {
                if let Some((r, c, x, y)) = p.first_mismatch(&template) {
                    return Err(fail(format!("{route} route ({r}, {c}): {x}, template {y}")));
                }
            }
            Ok(format!("{SIZE}x{SIZE}"))
        });
    }
}

/// Compares `terms` b-file values, after dropping `skip`, with a sequence expression.
pub fn oeis_check(src: &OeisSource, id: &str, against: &str, terms: usize, skip: usize) -> Result<usize, Fail> {
    let b = src.load(id)?;
    let want: Vec<Rational> = b.values().skip(skip).take(terms).map(|v| Rational::from_integer(v.clone())).collect();
    if want.len() < terms {
        return Err(fail(format!("{} has only {} terms after skipping {skip}", b.anumber, want.len())));
    }
    let got = eval_seq(against, terms, src)?.rationals()?;
    seq_eq(&got, &want)?;
    Ok(terms)
}

fn oeis_checks(cat: &mut Catalog, src: OeisSource) {
    let list: [(&str, &str, usize, usize); 15] = [
        ("A000108", "series c", 0, 30),
        ("A081696", "diagsums (c, x*c^3)", 0, 30),
        ("A107842", "abstriangle (c^2, -x*c^3)", 0, 55),
        ("A109262", "diagsums (c^2, x*c^3)", 0, 30),
        ("A225887", "column 0 general:3,2", 0, 30),
        ("A006319", "shift alt fcoeffs corollary:2,1", 1, 29),
        ("A001764", "series t", 0, 30),
        ("A005156", "hankel moments k-theorem:3,3 y=1", 0, 12),
        ("A051255", "hankel series t", 1, 12),
        ("A035929", "series x/(1-(1-x)*x*c)", 0, 30),
        ("A182486", "prepend 1 series (sqrt1(1-4*x)-2*x+3)/(2*(x^2-2*x+2))", 0, 30),
        ("A000045", "diagsums (1/(1-x), x/(1-x))", 1, 39),
        ("A106566", "triangle (1, x*c)", 0, 55),
        ("A128899", "triangle (1, x*c^2)", 0, 55),
        ("A109267", "triangle inv (1-x-x^2, x*(1-x))", 0, 55),
    ];
    for (id, against, skip, terms) in list {
        let src = src.clone();
        let label = if skip > 0 { format!("{id} from index {skip} vs {against}") } else { format!("{id} vs {against}") };
        cat.add(9, label, move || Ok(format!("{} terms", oeis_check(&src, id, against, terms, skip)?)));
    }
    let pairs: [(&str, &str, &str, usize); 4] = [
        ("INVERT of A098746 vs listed values", "invert oeis A098746", "list 1,2,5,15,53,215,971,4745,24540,132235,734572", 11),
        ("INVERT of A098746 vs ternary moments at y=1", "invert oeis A098746", "moments k-theorem:3,3 y=1", 25),
        ("A109267 column 0 vs A081696", "column 0 inv (1-x-x^2, x*(1-x))", "oeis A081696", 25),
        ("A109267 column 1 vs A109262", "column 1 inv (1-x-x^2, x*(1-x))", "oeis A109262", 25),
    ];
    for (name, lhs, rhs, terms) in pairs {
        let src = src.clone();
        cat.add(9, name, move || {
            let a = eval_seq(lhs, terms, &src)?.rationals()?;
            let b = eval_seq(rhs, terms, &src)?.rationals()?;
            seq_eq(&a, &b)?;
            Ok(format!("{terms} terms"))
        });
    }
}

fn random_series(rng: &mut ChaCha8Rng, head: &[i64], extra: usize, order: usize) -> Series<Rational> {
    let mut cs: Vec<Rational> = head.iter().map(|&v| rat(v)).collect();
    cs.extend((0..extra).map(|_| ratio(rng.gen_range(-4..=4), rng.gen_range(1..=2))));
    Series::from_rationals(&cs, order)
}

fn property_checks(cat: &mut Catalog) {
    const CASES: usize = 16;
    let rng = |k: u64| ChaCha8Rng::seed_from_u64(SEED_PROPERTIES + k);
    cat.add(10, "revert round trip", move || {
        let mut r = rng(1);
        for i in 0..CASES {
            let lead = [1, -1, 2][r.gen_range(0..3)];
            let f = random_series(&mut r, &[0, lead], 4, 12);
            let fbar = f.revert()?;
            if fbar.compose(&f)? != Series::x(12) || f.compose(&fbar)? != Series::x(12) {
                return Err(fail(format!("case {i}: f = {}", f.render())));
            }
        }
        Ok(format!("{CASES} cases"))
    });
    cat.add(10, "sqrt1 squares back", move || {
        let mut r = rng(2);
        for i in 0..CASES {
            let s = random_series(&mut r, &[1], 5, 12);
            let root = s.sqrt1()?;
            if &root * &root != s {
                return Err(fail(format!("case {i}: s = {}", s.render())));
            }
        }
        Ok(format!("{CASES} cases"))
    });
    cat.add(10, "pair product is matrix product", move || {
        let mut r = rng(3);
        for i in 0..CASES {
            let (a, b) = (random_pair(&mut r, 10)?, random_pair(&mut r, 10)?);
            let lhs = a.rmul(&b)?.to_matrix(8)?;
            let rhs = a.to_matrix(8)?.mul(&b.to_matrix(8)?)?;
            mat_eq(&lhs, &rhs).map_err(|f| fail(format!("case {i}: {}", f.0)))?;
        }
        Ok(format!("{CASES} cases"))
    });
    cat.add(10, "Hankel transform is binomial invariant", move || {
        let mut r = rng(4);
        for i in 0..CASES {
            let a: Vec<Rational> = (0..13).map(|_| rat(r.gen_range(-5..=5))).collect();
            let lhs = hankel(&transforms::binomial_transform(&a), 6)?;
            seq_eq(&lhs, &hankel(&a, 6)?).map_err(|f| fail(format!("case {i}: {}", f.0)))?;
        }
        Ok(format!("{CASES} cases"))
    });
    cat.add(10, "Bareiss agrees with cofactor expansion", move || {
        let mut r = rng(5);
        for i in 0..4 * CASES {
            let a: Vec<Rational> = (0..7).map(|_| rat(r.gen_range(-2..=2))).collect();
            let h = hankel(&a, 3)?;
            for (n, hn) in h.iter().enumerate() {
                let m: Vec<Vec<Rational>> = (0..=n).map(|i| (0..=n).map(|j| a[i + j].clone()).collect()).collect();
                let d = det_cofactor(&m);
                if &d != hn {
                    return Err(fail(format!("case {i}, n = {n}: Bareiss {hn}, cofactor {d}")));
                }
            }
        }
        Ok(format!("{} cases", 4 * CASES))
    });
    cat.add(10, "factorization output is an involution", move || {
        let mut r = rng(6);
        for i in 0..10 {
            let p = random_pair(&mut r, N)?;
            involution_outcome(&fam::factorization_involution(&p)?).map_err(|f| fail(format!("case {i}: {}", f.0)))?;
        }
        Ok("10 cases".into())
    });
}

pub fn catalog(src: OeisSource) -> Vec<Check> {
    let mut cat = Catalog::default();
    golden_checks(&mut cat);
    involution_checks(&mut cat);
    hankel_checks(&mut cat);
    cf_checks(&mut cat);
    dual_route_checks(&mut cat);
    production_checks(&mut cat);
    oeis_checks(&mut cat, src);
    property_checks(&mut cat);
    cat.checks
}

/// Runs the selected criteria (all when empty) in parallel; results are sorted by id.
pub fn run(src: OeisSource, criteria: &[u8]) -> Vec<CheckResult> {
    let checks: Vec<Check> = catalog(src).into_iter().filter(|c| criteria.is_empty() || criteria.contains(&c.criterion)).collect();
    let mut results: Vec<CheckResult> = checks
        .par_iter()
        .map(|c| {
            let outcome = catch_unwind(AssertUnwindSafe(|| (c.body)())).unwrap_or_else(|p| {
                let msg = p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned());
                Err(fail(format!("panicked: {}", msg.unwrap_or_default())))
            });
            let (pass, detail) = match outcome {
                Ok(d) => (true, d),
                Err(f) => (false, f.0),
            };
            CheckResult { id: c.id.clone(), criterion: c.criterion, name: c.name.clone(), pass, detail }
        })
        .collect();
    results.sort_by(|a, b| a.id.cmp(&b.id));
    results
}

/// `(criterion, passed, total)` for each criterion present.
pub fn summary(results: &[CheckResult]) -> Vec<(u8, usize, usize)> {
    (1..=10u8)
        .filter_map(|c| {
            let mine: Vec<_> = results.iter().filter(|r| r.criterion == c).collect();
            (!mine.is_empty()).then(|| (c, mine.iter().filter(|r| r.pass).count(), mine.len()))
        })
        .collect()
}

pub fn render(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} {} {}: {}\n", r.id, r.name, r.detail));
    }
    for (c, pass, total) in summary(results) {
        let status = if pass == total { "PASS" } else { "FAIL" };
        out.push_str(&format!("criterion {c} ({}): {status} {pass}/{total}\n", CRITERIA[c as usize - 1]));
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    let overall = if failed == 0 { "PASS" } else { "FAIL" };
    out.push_str(&format!("verify-paper: {overall} ({} checks, {failed} failed)\n", results.len()));
    out
}

pub fn to_json(results: &[CheckResult]) -> Value {
    let checks: Vec<Value> = results
        .iter()
        .map(|r| json!({"id": r.id, "criterion": r.criterion, "name": r.name, "pass": r.pass, "detail": r.detail}))
        .collect();
    let criteria: Vec<Value> = summary(results)
        .into_iter()
        .map(|(c, p, t)| json!({"criterion": c, "title": CRITERIA[c as usize - 1], "passed": p, "total": t, "pass": p == t}))
        .collect();
    json!({"pass": results.iter().all(|r| r.pass), "checks": checks, "criteria": criteria})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_grouped() {
        let cat = catalog(OeisSource::fixtures_only(crate::oeis::default_fixture_dir()));
        let mut ids: Vec<&str> = cat.iter().map(|c| c.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), cat.len());
        for c in &cat {
            assert_eq!(c.id[..2].parse::<u8>().unwrap(), c.criterion);
        }
        assert_eq!(summary_counts(&cat), (1..=10).collect::<Vec<u8>>());
    }

    fn summary_counts(cat: &[Check]) -> Vec<u8> {
        let mut c: Vec<u8> = cat.iter().map(|c| c.criterion).collect();
        c.sort();
        c.dedup();
        c
    }

    #[test]
    fn helper_oracles() {
        assert_eq!(pow2(10), rat(1024));
        assert_eq!(choose2(4), 6);
        assert!(seq_eq(&[rat(1), rat(2)], &[rat(1), rat(3)]).unwrap_err().0.starts_with("index 1"));
    }

    #[test]
    fn random_pairs_are_pinned() {
        let a = random_pairs(SEED_FACTOR_PAIRS, 3, 6);
        let b = random_pairs(SEED_FACTOR_PAIRS, 3, 6);
        assert_eq!(a, b);
    }
}
