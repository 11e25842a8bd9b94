//! Riordan pairs `(g, f)`, their matrix realizations and group structure,
//! A/Z-sequences, production matrices and moment extraction.

use std::fmt;



use crate::coeff::{Coeff, Rational};
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, LowerTriMatrix, ProductionMatrix, Witness};
use crate::poly::Poly;
use crate::series::Series;

/// A Riordan array `(g, f)` with `g(0)` a unit, `f(0) = 0` and `f'(0)` a unit.
#[derive(Clone, PartialEq)]
pub struct RiordanPair<C> {
    g: Series<C>,
    f: Series<C>,
}

/// Outcome of [`RiordanPair::involution_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct InvolutionReport<C> {
    pub holds: bool,
    /// Pair-level check: `g * (g o f) = 1` and `f o f = x`.
    pub series_holds: bool,
    /// Matrix-level check: `M^2 = I`.
    pub matrix_holds: bool,
    /// First off-identity entry of `M^2`, row-major.
    pub witness: Option<Witness<C>>,
    pub size: usize,
}

impl<C: Coeff> RiordanPair<C> {
    /// Validates the pair; both series are truncated to their common order.
    pub fn new(g: Series<C>, f: Series<C>) -> Result<Self> {
        let n = g.order().min(f.order());
        if n == 0 {
            return Err(Error::InvalidPair("order must be at least 1"));
        }
        let (g, f) = (g.truncate(n), f.truncate(n));
        if !g.constant_term().is_unit() {
            return Err(Error::InvalidPair("g(0) must be a unit"));
        }
        if !f.constant_term().is_zero() {
            return Err(Error::InvalidPair("f(0) must be zero"));
        }
        if !f.coeffs()[1].is_unit() {
            return Err(Error::InvalidPair("f'(0) must be a unit"));
        }
        Ok(RiordanPair { g, f })
    }

    pub fn identity(order: usize) -> Self {
        RiordanPair { g: Series::one(order), f: Series::x(order) }
    }

    pub fn g(&self) -> &Series<C> {
        &self.g
    }

    pub fn f(&self) -> &Series<C> {
        &self.f
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        Self::new(self.g.truncate(order), self.f.truncate(order))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Result<RiordanPair<D>> {
        RiordanPair::new(self.g.map(&f), self.f.map(&f))
    }

    /// `t(n, k) = [x^n] g f^k`.
    pub fn entry(&self, n: usize, k: usize) -> Result<C> {
        if n > self.order() {
            return Err(Error::TruncationExceeded { index: n, order: self.order() });
        }
        if k > n {
            return Ok(C::zero());
        }
        let col = &self.g * &self.f.pow(k as i64)?;
        Ok(col.coeff(n)?.clone())
    }

    /// Leading `n x n` block of the matrix realization.
    pub fn to_matrix(&self, n: usize) -> Result<LowerTriMatrix<C>> {
        if n > self.order() + 1 {
            return Err(Error::TruncationExceeded { index: n - 1, order: self.order() });
        }
        let mut rows: Vec<Vec<C>> = (0..n).map(|r| Vec::with_capacity(r + 1)).collect();
        let mut col = self.g.clone();
        for k in 0..n {
            for (r, row) in rows.iter_mut().enumerate().skip(k) {
                row.push(col.coeffs()[r].clone());
            }
            if k + 1 < n {
                col = &col * &self.f;
            }
        }
        LowerTriMatrix::from_rows(rows)
    }

    /// Group product `(g, f) * (u, v) = (g * u(f), v(f))`.
    pub fn rmul(&self, other: &Self) -> Result<Self> {
        let g = &self.g * &other.g.compose(&self.f)?;
        let f = other.f.compose(&self.f)?;
        Self::new(g, f)
    }

    /// `(g, f)^{-1} = (1 / g(fbar), fbar)`.
    pub fn inverse(&self) -> Result<Self> {
        let fbar = self.f.revert()?;
        let g = self.g.compose(&fbar)?.inverse()?;
        Self::new(g, fbar)
    }

    /// `(g^m, f)`.
    pub fn pow_g(&self, m: i64) -> Result<Self> {
        Self::new(self.g.pow(m)?, self.f.clone())
    }

    /// Fundamental-theorem action `g * h(f)`.
    pub fn apply(&self, h: &Series<C>) -> Result<Series<C>> {
        Ok(&self.g * &h.compose(&self.f)?)
    }

    pub fn is_identity(&self) -> bool {
        self.g == Series::one(self.order()) && self.f == Series::x(self.order())
    }

    /// Checks `R^2 = (1, x)` both at the pair level (to order `n - 1`) and
    /// as `n x n` matrices.
    pub fn involution_check(&self, n: usize) -> Result<InvolutionReport<C>> {
        if n == 0 {
            return Err(Error::InvalidParameter("involution check needs n >= 1"));
        }
        if n > self.order() + 1 {
            return Err(Error::TruncationExceeded { index: n - 1, order: self.order() });
        }
        let truncated = self.truncate((n - 1).max(1))?;
        let series_holds = truncated.rmul(&truncated)?.is_identity();
        let m = self.to_matrix(n)?;
        let sq = m.mul(&m)?;
        let witness = sq.first_mismatch(&LowerTriMatrix::identity(n));
        let matrix_holds = witness.is_none();
        Ok(InvolutionReport { holds: series_holds && matrix_holds, series_holds, matrix_holds, witness, size: n })
    }

    /// `A = x / fbar` and `Z = (1 / fbar) (1 - 1 / g(fbar))`, both of order `N - 1`.
    pub fn az_sequences(&self) -> Result<(Series<C>, Series<C>)> {
        let fbar = self.f.revert()?;
        let fbar_over_x = fbar.shift_down(1)?;
        let a = fbar_over_x.inverse()?;
        let one = Series::one(self.order());
        let numer = (&one - &self.g.compose(&fbar)?.inverse()?).shift_down(1)?;
        let z = numer.try_div(&fbar_over_x)?;
        Ok((a, z))
    }

    /// Production matrix from the bivariate form `Z(x) + A(x) y / (1 - x y)`:
    /// `P[i][0] = Z_i` and `P[i][j] = A_{i-j+1}` for `j >= 1`.
    pub fn production_matrix(&self, n: usize) -> Result<ProductionMatrix<C>> {
        let (a, z) = self.az_sequences()?;
        if n > a.order() + 1 {
            return Err(Error::TruncationExceeded { index: n - 1, order: a.order() });
        }
        Ok(DenseMatrix::from_fn(n, n, |i, j| {
            if j == 0 {
                z.coeffs()[i].clone()
            } else if j <= i + 1 {
                a.coeffs()[i + 1 - j].clone()
            } else {
                C::zero()
            }
        }))
    }

    /// Production matrix as `M^{-1} Mbar`, `Mbar` being `M` without its first row.
    pub fn production_matrix_by_matrices(&self, n: usize) -> Result<ProductionMatrix<C>> {
        let m = self.to_matrix(n + 1)?;
        let inv = m.truncate(n).inverse()?.to_dense();
        let mbar = DenseMatrix::from_fn(n, n, |r, c| m.get(r + 1, c));
        inv.mul(&mbar)
    }

    /// The pair `(1 - x Z / A, x / A)` built from A- and Z-sequences.
    pub fn inverse_from_az(a: &Series<C>, z: &Series<C>) -> Result<Self> {
        let n = a.order().min(z.order());
        let x = Series::x(n);
        let z_over_a = z.try_div(a)?;
        let g = &Series::one(n) - &(&x * &z_over_a);
        let f = x.try_div(a)?;
        Self::new(g, f)
    }

    /// First column of the inverse array: the moments.
    pub fn moments(&self) -> Result<Series<C>> {
        Ok(self.inverse()?.g)
    }
}

impl RiordanPair<Poly> {
    /// The `f` series with constant-polynomial coefficients, as rationals.
    fn parameter_free_f(&self) -> Result<Series<Rational>> {
        let coeffs = self
            .f
            .coeffs()
            .iter()
            .map(|p| p.as_constant().ok_or(Error::ParameterDependent))
            .collect::<Result<Vec<_>>>()?;
        Ok(Series::new(coeffs, self.order()))
    }

    /// Moments `mu_0(u), ..., mu_{count-1}(u)`: the first column of the inverse.
    /// `f` must not depend on the parameter.
    pub fn moment_polys(&self, count: usize) -> Result<Vec<Poly>> {
        if count > self.order() + 1 {
            return Err(Error::TruncationExceeded { index: count - 1, order: self.order() });
        }
        let fbar = self.parameter_free_f()?.revert()?.map(|c| Poly::constant(c.clone()));
        let mu = self.g.compose(&fbar)?.inverse()?;
        Ok(mu.coeffs()[..count].to_vec())
    }

    /// Matrix whose row `r` lists the coefficients of `u^0..u^r` in `mu_r(u)`.
    pub fn moment_coefficient_array(&self, n: usize) -> Result<LowerTriMatrix<Rational>> {
        coefficient_array(&self.moment_polys(n)?)
    }
}

/// Coefficient array of a polynomial sequence whose `r`-th member has degree at most `r`.
pub fn coefficient_array(polys: &[Poly]) -> Result<LowerTriMatrix<Rational>> {
    let rows = polys
        .iter()
        .enumerate()
        .map(|(r, p)| match p.degree() {
            Some(d) if d > r => Err(Error::NotLowerTriangular { row: r, col: d }),
            _ => Ok((0..=r).map(|k| p.coeff(k)).collect()),
        })
        .collect::<Result<Vec<_>>>()?;
    LowerTriMatrix::from_rows(rows)
}

/// Bivariate generating function of a lower-triangular matrix:
/// `sum_n (sum_k M[n][k] u^k) x^n`.
pub fn row_generating_series(m: &LowerTriMatrix<Rational>, order: usize) -> Series<Poly> {
    let coeffs = m.rows().iter().map(|row| Poly::new(row.clone())).collect();
    Series::new(coeffs, order)
}

impl<C: Coeff> fmt::Debug for RiordanPair<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RiordanPair").field("g", &self.g).field("f", &self.f).finish()
    }
}
