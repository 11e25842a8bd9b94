//! Sequence transforms: Hankel determinants, binomial and INVERT
//! transforms, and row/diagonal sums of triangles.



use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::matrix::LowerTriMatrix;
use crate::series::Series;

/// Hankel transform `h_n = det(a_{i+j})_{0<=i,j<=n}` for `n = 0..=n_max`.
///
/// Runs one fraction-free (Bareiss) elimination on the largest Hankel
/// matrix: its successive pivots are the leading principal minors. A zero
/// pivot switches the remaining sizes to cofactor expansion.
pub fn hankel<C: Coeff>(a: &[C], n_max: usize) -> Result<Vec<C>> {
    let needed = 2 * n_max + 1;
    if a.len() < needed {
        return Err(Error::NotEnoughTerms { needed, got: a.len() });
    }
    let size = n_max + 1;
    let mut m: Vec<Vec<C>> = (0..size).map(|i| (0..size).map(|j| a[i + j].clone()).collect()).collect();
    let mut out = Vec::with_capacity(size);
    let mut prev = C::one();
    for k in 0..size {
        let pivot = m[k][k].clone();
        if pivot.is_zero() {
            for n in k..size {
                let minor: Vec<Vec<C>> = (0..=n).map(|i| (0..=n).map(|j| a[i + j].clone()).collect()).collect();
                out.push(det_cofactor(&minor));
            }
            return Ok(out);
        }
        out.push(pivot.clone());
        for i in k + 1..size {
            for j in k + 1..size {
                let v = m[i][j].clone() * pivot.clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v.exact_div(&prev)?;
            }
        }
        prev = pivot;
    }
    Ok(out)
}

/// Determinant by Laplace expansion, memoized over column subsets.
pub fn det_cofactor<C: Coeff>(m: &[Vec<C>]) -> C {
    let n = m.len();
    if n == 0 {
        return C::one();
    }
    assert!(n < 25, "cofactor expansion is exponential in the size");
    let mut dp = vec![C::zero(); 1 << n];
    dp[0] = C::one();
    for mask in 0..(1usize << n) {
        if dp[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for j in 0..n {
            if mask & (1 << j) != 0 || m[row][j].is_zero() {
                continue;
            }
            let above = (mask >> (j + 1)).count_ones();
            let term = dp[mask].clone() * m[row][j].clone();
            let next = mask | (1 << j);
            dp[next] = if above % 2 == 0 { dp[next].clone() + term } else { dp[next].clone() - term };
        }
    }
    dp[(1 << n) - 1].clone()
}

/// `b_n = sum_k C(n, k) a_k`.
pub fn binomial_transform<C: Coeff>(a: &[C]) -> Vec<C> {
    (0..a.len())
        .map(|n| {
            (0..=n).fold(C::zero(), |acc, k| {
                let c = crate::Rational::from_integer(crate::binomial(n as i64, k as i64));
                acc + a[k].scale(&c)
            })
        })
        .collect()
}

/// The sequence with generating function `a(x) / (1 - x a(x))`.
pub fn invert_transform<C: Coeff>(a: &[C]) -> Result<Vec<C>> {
    if a.is_empty() {
        return Ok(Vec::new());
    }
    let s = Series::new(a.to_vec(), a.len() - 1);
    let denom = &Series::one(s.order()) - &s.shift_up(1);
    Ok(s.try_div(&denom)?.into_coeffs())
}

/// Which sums [`matrix_sums`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumMode {
    Row,
    AbsRow,
    Diagonal,
}

/// Row sums, absolute row sums or diagonal sums `sum_k M[n-k][k]`.
pub fn matrix_sums<C: Coeff>(m: &LowerTriMatrix<C>, mode: SumMode) -> Result<Vec<C>> {
    match mode {
        SumMode::Row => Ok(m.rows().iter().map(|row| row.iter().fold(C::zero(), |a, b| a + b.clone())).collect()),
        SumMode::AbsRow => m
            .rows()
            .iter()
            .map(|row| {
                row.iter().try_fold(C::zero(), |a, b| b.try_abs().map(|v| a + v).ok_or(Error::UnsupportedCoefficient))
            })
            .collect(),
        SumMode::Diagonal => Ok((0..m.size())
            .map(|n| (0..=n / 2).fold(C::zero(), |acc, k| acc + m.get(n - k, k)))
            .collect()),
    }
}
