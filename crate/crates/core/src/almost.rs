//! Almost-Riordan arrays of the first kind `(a | g, f)`: a first column
//! with generating function `a`, followed by the Riordan array `(g, f)`
//! shifted down one row.

use std::fmt;

use num_traits::One;

use crate::coeff::{rat, Coeff, Rational};
use crate::error::{Error, Result};
use crate::jfrac::{series_to_jfraction, JFraction};
use crate::matrix::LowerTriMatrix;
use crate::poly::Poly;
use crate::riordan::{coefficient_array, RiordanPair};
use crate::series::Series;
use crate::transforms::hankel;

#[derive(Clone, PartialEq)]
pub struct AlmostRiordan1<C> {
    a: Series<C>,
    pair: RiordanPair<C>,
}

impl<C: Coeff> AlmostRiordan1<C> {
    pub fn new(a: Series<C>, g: Series<C>, f: Series<C>) -> Result<Self> {
        if !a.constant_term().is_unit() {
            return Err(Error::InvalidPair("a(0) must be a unit"));
        }
        Ok(AlmostRiordan1 { a, pair: RiordanPair::new(g, f)? })
    }

    pub fn a(&self) -> &Series<C> {
        &self.a
    }

    pub fn pair(&self) -> &RiordanPair<C> {
        &self.pair
    }
}

/// Entries `(n, 0) = [x^n] a` and `(n, k) = [x^{n-1}] g f^{k-1}` for `k >= 1`.
pub fn ar_to_matrix<C: Coeff>(ar: &AlmostRiordan1<C>, n: usize) -> Result<LowerTriMatrix<C>> {
    if n > ar.a.order() + 1 {
        return Err(Error::TruncationExceeded { index: n - 1, order: ar.a.order() });
    }
    let inner = ar.pair.to_matrix(n.saturating_sub(1))?;
    LowerTriMatrix::try_from_fn(n, |r, k| Ok(if k == 0 { ar.a.coeffs()[r].clone() } else { inner.get(r - 1, k - 1) }))
}

/// `(1 / (1 + x^2) | (1 - x^2) / (1 + x^2)^2, 2x / (1 + x^2))`, whose rows
/// hold the coefficients of the Chebyshev polynomials `T_n`.
pub fn chebyshev_t_array(order: usize) -> Result<AlmostRiordan1<Rational>> {
    let d = Series::<Rational>::from_ints(&[1, 0, 1], order);
    let a = d.inverse()?;
    let g = Series::from_ints(&[1, 0, -1], order).try_div(&d.pow(2)?)?;
    let f = Series::monomial(rat(2), 1, order).try_div(&d)?;
    AlmostRiordan1::new(a, g, f)
}

/// `((1 + y x + y x^2) / (1 + x^2) | (1 + y x + y x^2) / (1 + x^2)^2, x / (1 + x^2))`.
pub fn appendix_array(order: usize) -> Result<AlmostRiordan1<Poly>> {
    let y = Poly::u();
    let num = Series::new(vec![Poly::one(), y.clone(), y], order);
    let d = Series::<Poly>::from_ints(&[1, 0, 1], order);
    let a = num.try_div(&d)?;
    let g = num.try_div(&d.pow(2)?)?;
    let f = Series::x(order).try_div(&d)?;
    AlmostRiordan1::new(a, g, f)
}

impl<C: Coeff> fmt::Debug for AlmostRiordan1<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlmostRiordan1").field("a", &self.a).field("pair", &self.pair).finish()
    }
}

/// Everything derived from the inverse of [`appendix_array`].
#[derive(Clone, Debug, PartialEq)]
pub struct AppendixMoments {
    pub moments: Vec<Poly>,
    pub coeff_array: LowerTriMatrix<Rational>,
    pub jf: JFraction<Poly>,
    pub hankel: Vec<Poly>,
}

/// Inverts the `n x n` appendix array, reads the first-column moments,
/// their coefficient array, their J-fraction and their Hankel transform.
pub fn appendix_moment_pipeline(n: usize) -> Result<AppendixMoments> {
    if n < 5 {
        return Err(Error::InvalidParameter("pipeline needs n >= 5"));
    }
    let m = ar_to_matrix(&appendix_array(n - 1)?, n)?;
    let moments = m.inverse()?.column(0);
    let coeff_array = coefficient_array(&moments)?;
    let mu = Series::new(moments.clone(), n - 1);
    let depth = (n - 1) / 2;
    let peeled = series_to_jfraction(&mu, depth)?;
    let jf = peeled.detect_tail().unwrap_or(peeled);
    let hankel = hankel(&moments, (n - 1) / 2)?;
    Ok(AppendixMoments { moments, coeff_array, jf, hankel })
}

/// `(c(x^2), ((1 + x) sqrt(1 - 4x^2) + 2x^2 - x - 1) / (2x^2))`, that is
/// `(c(x^2), 1 - (1 + x) c(x^2))`.
pub fn appendix_coefficient_pair(order: usize) -> Result<RiordanPair<Rational>> {
    let c2 = crate::families::catalan::<Rational>(order)?.stretch(2);
    let f = &Series::one(order) - &(&Series::from_ints(&[1, 1], order) * &c2);
    RiordanPair::new(c2, f)
}

/// The displayed inverse of [`appendix_coefficient_pair`]:
/// `((R - 2x + 3) / (2(x^2 - 2x + 2)), -(R (x - 1) + x + 1) / (2(x^2 - 2x + 2)))`
/// with `R = sqrt(1 - 4x)`.
pub fn appendix_inverse_pair(order: usize) -> Result<RiordanPair<Rational>> {
    let (g, f) = appendix_inverse_series(order)?;
    RiordanPair::new(g, f)
}

fn appendix_inverse_series(order: usize) -> Result<(Series<Rational>, Series<Rational>)> {
    let root = Series::<Rational>::from_ints(&[1, -4], order).sqrt1()?;
    let den = Series::from_ints(&[4, -4, 2], order);
    let g = (&root + &Series::from_ints(&[3, -2], order)).try_div(&den)?;
    let fnum = &(&root * &Series::from_ints(&[-1, 1], order)) + &Series::from_ints(&[1, 1], order);
    let f = -&fnum.try_div(&den)?;
    Ok((g, f))
}

/// The first inverse component `(sqrt(1 - 4x) - 2x + 3) / (2(x^2 - 2x + 2))`.
pub fn somos_series(order: usize) -> Result<Series<Rational>> {
    Ok(appendix_inverse_series(order)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::catalan;
    use num_traits::Zero;

    fn int_rows(m: &LowerTriMatrix<Rational>) -> Vec<Vec<i64>> {
        m.rows().iter().map(|r| r.iter().map(|c| c.to_integer().try_into().unwrap()).collect()).collect()
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn chebyshev_t_rows() {
        let m = ar_to_matrix(&chebyshev_t_array(8).unwrap(), 7).unwrap();
        let r = int_rows(&m);
        assert_eq!(r[0], [1]);
        assert_eq!(r[3], [0, -3, 0, 4]);
        assert_eq!(r[4], [1, 0, -8, 0, 8]);
        assert_eq!(m.column(0), [1, 0, -1, 0, 1, 0, -1].map(rat));
        // oracle: T_{n+1} = 2x T_n - T_{n-1}
        let mut t: Vec<Vec<i64>> = vec![vec![1], vec![0, 1]];
        for n in 1..6 {
            let mut next = vec![0i64; n + 2];
            for (i, c) in t[n].iter().enumerate() {
                next[i + 1] += 2 * c;
            }
            for (i, c) in t[n - 1].iter().enumerate() {
                next[i] -= c;
            }
            t.push(next);
        }
        assert_eq!(r, t[..7]);
    }

    #[test]
    fn trivial_almost_array_is_identity() {
        let ar = AlmostRiordan1::<Rational>::new(Series::one(6), Series::one(6), Series::x(6)).unwrap();
        assert!(ar_to_matrix(&ar, 7).unwrap().is_identity());
    }

    #[test]
    fn appendix_array_rows() {
        let m = ar_to_matrix(&appendix_array(8).unwrap(), 7).unwrap();
        assert_eq!(m.rows()[3], [p(&[0, -1]), p(&[-2, 1]), p(&[0, 1]), p(&[1])]);
        assert_eq!(m.rows()[6][2], p(&[6, -3]));
    }

    #[test]
    fn pipeline() {
        let out = appendix_moment_pipeline(12).unwrap();
        assert_eq!(out.moments[..4], [p(&[1]), p(&[0, -1]), p(&[1, -1, 1]), p(&[0, -2, 2, -1])]);
        assert_eq!(out.coeff_array, appendix_coefficient_pair(11).unwrap().to_matrix(12).unwrap());
        assert_eq!(
            int_rows(&out.coeff_array)[..5],
            [vec![1], vec![0, -1], vec![1, -1, 1], vec![0, -2, 2, -1], vec![2, -3, 4, -3, 1]]
        );
        let expected = JFraction::periodic(Poly::one(), vec![p(&[0, -1])], vec![p(&[1, -1])], Poly::zero(), Poly::one()).unwrap();
        assert_eq!(out.jf, expected);
        let mut pow = Poly::one();
        for h in &out.hankel {
            assert_eq!(h, &pow);
            pow = pow * p(&[1, -1]);
        }
    }

    #[test]
    fn radical_form_of_coefficient_pair() {
        let n = 14;
        let root = Series::<Rational>::from_ints(&[1, 0, -4], n + 2).sqrt1().unwrap();
        let num = &(&Series::from_ints(&[1, 1], n + 2) * &root) + &Series::from_ints(&[-1, -1, 2], n + 2);
        let f = num.shift_down(2).unwrap().scale(&crate::ratio(1, 2));
        assert_eq!(&f, appendix_coefficient_pair(n).unwrap().f());
    }

    #[test]
    fn not_an_involution() {
        let r = appendix_coefficient_pair(12).unwrap().involution_check(5).unwrap();
        assert!(!r.holds);
        let (row, col, got, want) = r.witness.unwrap();
        assert!(row <= 4 && col <= 4);
        assert_ne!(got, want);
    }

    #[test]
    fn printed_inverse() {
        let n = 16;
        assert_eq!(appendix_coefficient_pair(n).unwrap().inverse().unwrap(), appendix_inverse_pair(n).unwrap());
    }

    #[test]
    fn somos_pair() {
        let s = somos_series(16).unwrap();
        let v: Vec<i64> = s.coeffs()[..9].iter().map(|c| c.to_integer().try_into().unwrap()).collect();
        assert_eq!(v, [1, 0, -1, -2, -4, -10, -29, -90, -290]);
        let alt: Vec<Rational> = (0..=7).map(|n| rat(if n % 2 == 0 { 1 } else { -1 })).collect();
        assert_eq!(hankel(s.coeffs(), 7).unwrap(), alt);
        let mut shifted = vec![rat(1)];
        shifted.extend_from_slice(s.coeffs());
        assert_eq!(hankel(&shifted, 7).unwrap(), alt);
    }

    #[test]
    fn a035929_identity() {
        let n = 16;
        let f = -appendix_inverse_pair(n).unwrap().f();
        let c = catalan::<Rational>(n).unwrap();
        let x = Series::x(n);
        let den = &Series::one(n) - &(&(&Series::from_ints(&[1, -1], n) * &x) * &c);
        assert_eq!(f, x.try_div(&den).unwrap());
    }
}
