//! Dense univariate polynomials over [`Rational`] in the parameter `u`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::coeff::{Coeff, Rational};
use crate::error::{Error, Result};

/// A polynomial `c0 + c1*u + c2*u^2 + ...`; never stores trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| crate::rat(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `u`.
    pub fn u() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `u^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Quotient and remainder of long division by a nonzero `d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / &lead;
            if !q.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * dc;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Lagrange interpolation through `(x_i, y_i)`; the `x_i` must be distinct.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Poly> {
        let mut acc = Poly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Poly::one();
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis * Poly::new(vec![-xj.clone(), Rational::one()]);
                    denom *= xi - xj;
                }
            }
            if denom.is_zero() {
                return Err(Error::InvalidParameter("interpolation nodes must be distinct"));
            }
            acc = acc + basis.scale(&(yi / denom));
        }
        Ok(acc)
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Coeff for Poly {
    fn from_rational(r: &Rational) -> Self {
        Poly::constant(r.clone())
    }

    fn try_inverse(&self) -> Option<Self> {
        match self.as_constant() {
            Some(c) if !c.is_zero() => Some(Poly::constant(c.recip())),
            _ => None,
        }
    }

    fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    fn scale(&self, r: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c * r).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "u".to_string(),
                (1, false) => format!("{mag}*u"),
                (_, true) => format!("u^{i}"),
                (_, false) => format!("{mag}*u^{i}"),
            };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => f.write_str(&body)?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Parses sums of terms `c`, `c*u`, `c*u^k`, `u^k`, e.g. `2 - 4*u + u^2`.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = cleaned.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' {
                terms.push(&cleaned[start..i]);
                start = i;
            }
        }
        terms.push(&cleaned[start..]);
        let mut acc = Poly::zero();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-Rational::one(), &term[1..]),
                Some(b'+') => (Rational::one(), &term[1..]),
                _ => (Rational::one(), term),
            };
            let bad = || Error::Parse(format!("bad polynomial term '{term}'"));
            let (coef, power) = match body.find('u') {
                None => (body.parse::<Rational>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let c = match body[..pos].strip_suffix('*') {
                        Some(c) => c.parse::<Rational>().map_err(|_| bad())?,
                        None if pos == 0 => Rational::one(),
                        None => return Err(bad()),
                    };
                    let rest = &body[pos + 1..];
                    let p = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                    };
                    (c, p)
                }
            };
            let mut cs = vec![Rational::zero(); power + 1];
            cs[power] = sign * coef;
            acc = acc + Poly::new(cs);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn difference_of_squares() {
        let p = Poly::from_ints(&[1, -1]) * Poly::from_ints(&[1, 1]);
        assert_eq!(p, Poly::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn monomial_factor_divides_out() {
        let q = Poly::from_ints(&[1, -1, 1]);
        let p = &q * &Poly::u();
        assert_eq!(p.exact_div(&Poly::u()).unwrap(), q);
    }

    #[test]
    fn inexact_and_zero_division() {
        let p = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(p.exact_div(&Poly::u()), Err(Error::InexactDivision));
        assert_eq!(p.exact_div(&Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn appendix_second_moment_entry() {
        // (y^2 - y + 1) recovered from y*(y - 1) + 1
        let y = Poly::u();
        let recomputed = &y * &(&y - &Poly::one()) + Poly::one();
        assert_eq!(recomputed, Poly::from_ints(&[1, -1, 1]));
        assert_eq!(recomputed.to_string(), "1 - u + u^2");
    }

    #[test]
    fn evaluation() {
        assert_eq!(Poly::zero().eval(&ratio(7, 3)), rat(0));
        assert_eq!(Poly::from_ints(&[3, -2]).eval(&rat(1)), rat(1));
        assert_eq!(Poly::from_ints(&[26, -34, 11]).eval(&rat(0)), rat(26));
    }

    #[test]
    fn rendering_and_parsing() {
        let p = Poly::new(vec![rat(2), rat(-4), rat(1), ratio(-1, 2)]);
        assert_eq!(p.to_string(), "2 - 4*u + u^2 - 1/2*u^3");
        assert_eq!(p.to_string().parse::<Poly>().unwrap(), p);
        assert_eq!("-u".parse::<Poly>().unwrap(), -Poly::u());
        assert_eq!("0".parse::<Poly>().unwrap(), Poly::zero());
        assert_eq!(Poly::zero().to_string(), "0");
        assert!("2*v".parse::<Poly>().is_err());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Poly::from_ints(&[11, -16, 5]);
        let pts: Vec<_> = (0..4).map(|i| (rat(i), p.eval(&rat(i)))).collect();
        assert_eq!(Poly::interpolate(&pts).unwrap(), p);
    }

    fn poly_strategy() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-9i64..10, 0..9).prop_map(|v| Poly::from_ints(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, rng_seed: proptest::test_runner::RngSeed::Fixed(7), ..ProptestConfig::default() })]
        #[test]
        fn exact_div_inverts_mul(p in poly_strategy(), q in poly_strategy()) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
        }

        #[test]
        fn eval_is_homomorphism(p in poly_strategy(), q in poly_strategy(), n in -5i64..5, d in 1i64..5) {
            let x = ratio(n, d);
            prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
            prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
        }

        #[test]
        fn display_parse_roundtrip(p in poly_strategy()) {
            prop_assert_eq!(p.to_string().parse::<Poly>().unwrap(), p);
        }
    }
}
