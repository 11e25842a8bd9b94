//! Dense exact matrices: lower-triangular realizations of Riordan arrays,
//! and general square matrices for production matrices and squares.

use std::fmt;

use num_traits::Zero;

use crate::coeff::Coeff;
use crate::error::{Error, Result};

/// A mismatching entry: `(row, col, got, expected)`.
pub type Witness<C> = (usize, usize, C, C);

/// An `n x n` lower-triangular matrix; row `r` stores `r + 1` entries.
#[derive(Clone, PartialEq)]
pub struct LowerTriMatrix<C> {
    rows: Vec<Vec<C>>,
}

impl<C: Coeff> LowerTriMatrix<C> {
    /// Builds from jagged rows, row `r` holding columns `0..=r`.
    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<Self> {
        for (r, row) in rows.iter().enumerate() {
            if row.len() != r + 1 {
                return Err(Error::SizeMismatch("row r of a lower-triangular matrix needs r + 1 entries"));
            }
        }
        Ok(LowerTriMatrix { rows })
    }

    /// Builds from square rows, checking that everything above the diagonal is zero.
    pub fn from_square_rows(rows: Vec<Vec<C>>) -> Result<Self> {
        let n = rows.len();
        let mut out = Vec::with_capacity(n);
        for (r, mut row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch("square rows expected"));
            }
            if let Some(c) = row.iter().skip(r + 1).position(|v| !v.is_zero()) {
                return Err(Error::NotLowerTriangular { row: r, col: r + 1 + c });
            }
            row.truncate(r + 1);
            out.push(row);
        }
        Ok(LowerTriMatrix { rows: out })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        LowerTriMatrix { rows: (0..n).map(|r| (0..=r).map(|c| f(r, c)).collect()).collect() }
    }

    pub fn try_from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Result<C>) -> Result<Self> {
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            rows.push((0..=r).map(|c| f(r, c)).collect::<Result<Vec<_>>>()?);
        }
        Ok(LowerTriMatrix { rows })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |r, c| if r == c { C::one() } else { C::zero() })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<C>] {
        &self.rows
    }

    /// Entry `(r, c)`; zero above the diagonal.
    pub fn get(&self, r: usize, c: usize) -> C {
        if c > r {
            C::zero()
        } else {
            self.rows[r][c].clone()
        }
    }

    pub fn column(&self, c: usize) -> Vec<C> {
        (c..self.size()).map(|r| self.rows[r][c].clone()).collect()
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LowerTriMatrix<D> {
        LowerTriMatrix { rows: self.rows.iter().map(|row| row.iter().map(&f).collect()).collect() }
    }

    /// The leading `n x n` block.
    pub fn truncate(&self, n: usize) -> Self {
        assert!(n <= self.size());
        LowerTriMatrix { rows: self.rows[..n].to_vec() }
    }

    /// Reverses each row: `(r, c) -> (r, r - c)`.
    pub fn reversal(&self) -> Self {
        LowerTriMatrix { rows: self.rows.iter().map(|row| row.iter().rev().cloned().collect()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch("matrix product of different sizes"));
        }
        Ok(Self::from_fn(self.size(), |r, c| {
            let mut acc = C::zero();
            for k in c..=r {
                let a = &self.rows[r][k];
                let b = &other.rows[k][c];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
            acc
        }))
    }

    /// Matrix times column vector; `v` must have at least `size()` entries.
    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).fold(C::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    /// Exact inverse by forward substitution.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.size();
        let mut diag_inv = Vec::with_capacity(n);
        for i in 0..n {
            diag_inv.push(self.rows[i][i].try_inverse().ok_or(Error::SingularMatrix { index: i })?);
        }
        let mut out: Vec<Vec<C>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = vec![C::zero(); i + 1];
            row[i] = diag_inv[i].clone();
            for j in 0..i {
                let mut acc = C::zero();
                for k in j..i {
                    let a = &self.rows[i][k];
                    if !a.is_zero() {
                        acc = acc + a.clone() * out[k][j].clone();
                    }
                }
                row[j] = -(acc * diag_inv[i].clone());
            }
            out.push(row);
        }
        Ok(LowerTriMatrix { rows: out })
    }

    /// First entry, scanning row-major, where `self` differs from `other`.
    pub fn first_mismatch(&self, other: &Self) -> Option<Witness<C>> {
        for r in 0..self.size().min(other.size()) {
            for c in 0..=r {
                if self.rows[r][c] != other.rows[r][c] {
                    return Some((r, c, self.rows[r][c].clone(), other.rows[r][c].clone()));
                }
            }
        }
        None
    }

    pub fn is_identity(&self) -> bool {
        self.first_mismatch(&Self::identity(self.size())).is_none()
    }

    pub fn to_dense(&self) -> DenseMatrix<C> {
        let n = self.size();
        DenseMatrix::from_fn(n, n, |r, c| self.get(r, c))
    }

    /// One row per line, entries separated by ` & `, zeros shown above the diagonal.
    pub fn render(&self) -> String {
        self.to_dense().render()
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.to_dense().to_json()
    }
}

impl<C: Coeff> fmt::Debug for LowerTriMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LowerTriMatrix {}x{}", self.size(), self.size())?;
        f.write_str(&self.render())
    }
}

/// A dense `rows x cols` matrix.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<C> {
    cols: usize,
    rows: Vec<Vec<C>>,
}

/// Production matrices are lower Hessenberg and stored densely.
pub type ProductionMatrix<C> = DenseMatrix<C>;

impl<C: Coeff> DenseMatrix<C> {
    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::SizeMismatch("ragged rows"));
        }
        Ok(DenseMatrix { cols, rows })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        DenseMatrix { cols, rows: (0..rows).map(|r| (0..cols).map(|c| f(r, c)).collect()).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<C>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &C {
        &self.rows[r][c]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.nrows() {
            return Err(Error::SizeMismatch("inner dimensions differ"));
        }
        Ok(Self::from_fn(self.nrows(), other.cols, |r, c| {
            let mut acc = C::zero();
            for k in 0..self.cols {
                let a = &self.rows[r][k];
                let b = &other.rows[k][c];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
            acc
        }))
    }

    /// True when every entry with `col > row + 1` vanishes.
    pub fn is_lower_hessenberg(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| row.iter().skip(r + 2).all(Zero::is_zero))
    }

    /// Number of nonzero diagonals from the superdiagonal downward.
    pub fn band_width(&self) -> usize {
        let mut width = 0;
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() && c <= r + 1 {
                    width = width.max(r + 2 - c);
                }
            }
        }
        width
    }

    pub fn first_mismatch(&self, other: &Self) -> Option<Witness<C>> {
        for (r, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            for (c, (x, y)) in a.iter().zip(b).enumerate() {
                if x != y {
                    return Some((r, c, x.clone(), y.clone()));
                }
            }
        }
        None
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, v)| if r == c { v.is_one() } else { v.is_zero() })
        })
    }

    pub fn render(&self) -> String {
        self.rows
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" & "))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// `{"n": size, "rows": [[entry, ...], ...]}` with exact string entries.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.nrows(),
            "rows": self.rows.iter().map(|r| crate::seq_to_json(r)).collect::<Vec<_>>(),
        })
    }
}

impl<C: Coeff> fmt::Debug for DenseMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{}", self.nrows(), self.cols)?;
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{binomial, rat, Rational};

    fn pascal(n: usize) -> LowerTriMatrix<Rational> {
        LowerTriMatrix::from_fn(n, |r, c| Rational::from_integer(binomial(r as i64, c as i64)))
    }

    #[test]
    fn identity_inverse() {
        let id = LowerTriMatrix::<Rational>::identity(5);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn pascal_inverse_is_signed_pascal() {
        let p = pascal(6);
        let inv = p.inverse().unwrap();
        for r in 0..6 {
            for c in 0..=r {
                let sign = if (r - c) % 2 == 0 { 1 } else { -1 };
                assert_eq!(inv.get(r, c), rat(sign) * Rational::from_integer(binomial(r as i64, c as i64)));
            }
        }
        assert!(p.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn singular_diagonal_rejected() {
        let m = LowerTriMatrix::from_rows(vec![vec![rat(1)], vec![rat(2), rat(0)]]).unwrap();
        assert_eq!(m.inverse(), Err(Error::SingularMatrix { index: 1 }));
    }

    #[test]
    fn square_rows_must_be_lower() {
        let bad = vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]];
        assert_eq!(LowerTriMatrix::from_square_rows(bad), Err(Error::NotLowerTriangular { row: 0, col: 1 }));
    }

    #[test]
    fn rendering() {
        let m = pascal(3);
        assert_eq!(m.render(), "1 & 0 & 0\n1 & 1 & 0\n1 & 2 & 1");
        assert_eq!(m.to_json(), serde_json::json!({"n": 3, "rows": [["1","0","0"],["1","1","0"],["1","2","1"]]}));
    }

    #[test]
    fn reversal_of_rows() {
        let m = LowerTriMatrix::from_rows(vec![vec![rat(1)], vec![rat(1), rat(-2)]]).unwrap();
        assert_eq!(m.reversal().rows(), &[vec![rat(1)], vec![rat(-2), rat(1)]]);
    }

    #[test]
    fn hessenberg_band() {
        let m = DenseMatrix::from_fn(5, 5, |r, c| if c <= r + 1 && r <= c + 2 { rat(1) } else { rat(0) });
        assert!(m.is_lower_hessenberg());
        assert_eq!(m.band_width(), 4);
    }
}
