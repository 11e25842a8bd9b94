//! Jacobi continued fractions
//! `mu0 / (1 - a0 x - b1 x^2 / (1 - a1 x - b2 x^2 / ...))`,
//! their Hankel determinants, and monic three-term-recurrence arrays.

use std::str::FromStr;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::matrix::LowerTriMatrix;
use crate::series::Series;

/// A J-fraction given by a finite prefix and an optional repeating tail
/// `(alpha*, beta*)` used for every level past the prefix.
#[derive(Clone, Debug, PartialEq)]
pub struct JFraction<C> {
    mu0: C,
    alphas: Vec<C>,
    /// `betas[k]` is `beta_{k+1}`.
    betas: Vec<C>,
    tail: Option<(C, C)>,
}

impl<C: Coeff> JFraction<C> {
    pub fn new(mu0: C, alphas: Vec<C>, betas: Vec<C>, tail: Option<(C, C)>) -> Result<Self> {
        if betas.len() > alphas.len() || betas.len() + 1 < alphas.len() {
            return Err(Error::SizeMismatch("need len(betas) = len(alphas) or len(alphas) - 1"));
        }
        if tail.is_some() && betas.len() != alphas.len() {
            return Err(Error::SizeMismatch("a periodic tail needs len(betas) = len(alphas)"));
        }
        if let Some(k) = betas.iter().position(Zero::is_zero) {
            return Err(Error::ZeroBeta { level: k + 1 });
        }
        if tail.as_ref().is_some_and(|(_, b)| b.is_zero()) {
            return Err(Error::ZeroBeta { level: betas.len() + 1 });
        }
        Ok(JFraction { mu0, alphas, betas, tail })
    }

    /// Eventually constant fraction: the prefix, then `alpha*`, `beta*` forever.
    pub fn periodic(mu0: C, alphas: Vec<C>, betas: Vec<C>, alpha: C, beta: C) -> Result<Self> {
        Self::new(mu0, alphas, betas, Some((alpha, beta)))
    }

    pub fn mu0(&self) -> &C {
        &self.mu0
    }

    pub fn prefix_alphas(&self) -> &[C] {
        &self.alphas
    }

    pub fn prefix_betas(&self) -> &[C] {
        &self.betas
    }

    pub fn tail(&self) -> Option<&(C, C)> {
        self.tail.as_ref()
    }

    /// `alpha_k`, resolving the tail.
    pub fn alpha(&self, k: usize) -> Option<C> {
        self.alphas.get(k).cloned().or_else(|| self.tail.as_ref().map(|(a, _)| a.clone()))
    }

    /// `beta_k` for `k >= 1`, resolving the tail.
    pub fn beta(&self, k: usize) -> Option<C> {
        assert!(k >= 1, "betas are indexed from 1");
        self.betas.get(k - 1).cloned().or_else(|| self.tail.as_ref().map(|(_, b)| b.clone()))
    }

    /// `(alpha_0..alpha_{d-1}, beta_1..beta_d)` with the tail unrolled.
    pub fn expanded(&self, depth: usize) -> Option<(Vec<C>, Vec<C>)> {
        let a = (0..depth).map(|k| self.alpha(k)).collect::<Option<Vec<_>>>()?;
        let b = (1..=depth).map(|k| self.beta(k)).collect::<Option<Vec<_>>>()?;
        Some((a, b))
    }

    /// Expands the fraction to a truncated series of the given order.
    pub fn to_series(&self, order: usize) -> Result<Series<C>> {
        let levels = if self.tail.is_some() { order / 2 + 2 } else { self.alphas.len().min(order / 2 + 2) };
        let x = Series::<C>::x(order);
        let one = Series::<C>::one(order);
        let mut below = one.clone();
        for k in (0..levels).rev() {
            let alpha = self.alpha(k).unwrap_or_else(C::zero);
            let beta = self.beta(k + 1).unwrap_or_else(C::zero);
            let denom = &(&one - &x.scale(&alpha)) - &(&(&x * &x).scale(&beta) * &below);
            below = denom.inverse()?;
        }
        Ok(below.scale(&self.mu0))
    }

    /// Recognizes an eventually constant tail in a finite fraction: the
    /// shortest prefix after which every level repeats the same
    /// `(alpha, beta)`, seen at least twice.
    pub fn detect_tail(&self) -> Option<Self> {
        if self.tail.is_some() {
            return Some(self.clone());
        }
        let d = self.alphas.len();
        if self.betas.len() != d || d < 2 {
            return None;
        }
        let (a, b) = (&self.alphas[d - 1], &self.betas[d - 1]);
        let mut p = d - 1;
        while p > 0 && &self.alphas[p - 1] == a && &self.betas[p - 1] == b {
            p -= 1;
        }
        if d - p < 2 {
            return None;
        }
        Self::periodic(self.mu0.clone(), self.alphas[..p].to_vec(), self.betas[..p].to_vec(), a.clone(), b.clone()).ok()
    }

    /// Hankel determinant via `h_n = mu0^{n+1} prod_{k=1}^{n} beta_k^{n+1-k}`.
    pub fn heilermann(&self, n: usize) -> Result<C> {
        let mut acc = pow(&self.mu0, n + 1);
        for k in 1..=n {
            let b = self.beta(k).ok_or(Error::NotEnoughTerms { needed: n, got: k - 1 })?;
            acc = acc * pow(&b, n + 1 - k);
        }
        Ok(acc)
    }

    /// `{"mu0": s, "alphas": [...], "betas": [...], "tail": {"alpha": s, "beta": s} | null}`.
    pub fn to_json(&self) -> Value {
        json!({
            "mu0": self.mu0.to_string(),
            "alphas": crate::seq_to_json(&self.alphas),
            "betas": crate::seq_to_json(&self.betas),
            "tail": self.tail.as_ref().map(|(a, b)| json!({"alpha": a.to_string(), "beta": b.to_string()})),
        })
    }
}

impl<C: Coeff + FromStr> JFraction<C> {
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("J-fraction JSON: {what}"));
        let parse = |v: &Value| -> Result<C> {
            v.as_str().ok_or_else(|| bad("expected string"))?.parse::<C>().map_err(|_| bad("bad coefficient"))
        };
        let list = |key: &str| -> Result<Vec<C>> {
            v.get(key).and_then(Value::as_array).ok_or_else(|| bad(key))?.iter().map(parse).collect()
        };
        let mu0 = parse(v.get("mu0").ok_or_else(|| bad("mu0"))?)?;
        let tail = match v.get("tail") {
            None | Some(Value::Null) => None,
            Some(t) => Some((
                parse(t.get("alpha").ok_or_else(|| bad("tail.alpha"))?)?,
                parse(t.get("beta").ok_or_else(|| bad("tail.beta"))?)?,
            )),
        };
        Self::new(mu0, list("alphas")?, list("betas")?, tail)
    }
}

fn pow<C: Coeff>(c: &C, e: usize) -> C {
    (0..e).fold(C::one(), |acc, _| acc * c.clone())
}

/// Peels a J-fraction of the given depth off a series with unit constant
/// term: `r = 1 - 1/h`, `alpha_k = [x] r`, `beta_{k+1} = [x^2] r`, and the next
/// level is `(r - alpha_k x) / (beta_{k+1} x^2)`. Needs order `>= 2 * depth`.
pub fn series_to_jfraction<C: Coeff>(a: &Series<C>, depth: usize) -> Result<JFraction<C>> {
    if a.order() < 2 * depth {
        return Err(Error::NotEnoughTerms { needed: 2 * depth + 1, got: a.order() + 1 });
    }
    let mu0 = a.constant_term().clone();
    let inv_mu0 = mu0.try_inverse().ok_or(Error::NonUnitConstantTerm)?;
    let mut level = a.scale(&inv_mu0);
    let mut alphas = Vec::with_capacity(depth);
    let mut betas = Vec::with_capacity(depth);
    for k in 0..depth {
        let n = level.order();
        let r = &Series::one(n) - &level.inverse()?;
        let alpha = r.coeffs()[1].clone();
        let beta = r.coeffs()[2].clone();
        if beta.is_zero() {
            return Err(Error::HankelDegenerate { level: k + 1 });
        }
        let rest = (&r - &Series::monomial(alpha.clone(), 1, n)).shift_down(2)?;
        let quotient = rest.coeffs().iter().map(|c| c.exact_div(&beta)).collect::<Result<Vec<_>>>()?;
        alphas.push(alpha);
        betas.push(beta);
        level = Series::new(quotient, n - 2);
    }
    JFraction::new(mu0, alphas, betas, None)
}

/// Recurrence data for `p_{n+1} = (x - alpha_n) p_n - beta_n p_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrencePair<C> {
    pub alphas: Vec<C>,
    /// `betas[k]` is `beta_{k+1}`.
    pub betas: Vec<C>,
    pub tail: Option<(C, C)>,
}

impl<C: Coeff> RecurrencePair<C> {
    pub fn constant(alpha: C, beta: C) -> Self {
        RecurrencePair { alphas: Vec::new(), betas: Vec::new(), tail: Some((alpha, beta)) }
    }

    fn alpha(&self, k: usize) -> Option<C> {
        self.alphas.get(k).cloned().or_else(|| self.tail.as_ref().map(|(a, _)| a.clone()))
    }

    fn beta(&self, k: usize) -> Option<C> {
        self.betas.get(k - 1).cloned().or_else(|| self.tail.as_ref().map(|(_, b)| b.clone()))
    }
}

impl<C: Coeff> From<&JFraction<C>> for RecurrencePair<C> {
    fn from(j: &JFraction<C>) -> Self {
        RecurrencePair { alphas: j.alphas.clone(), betas: j.betas.clone(), tail: j.tail.clone() }
    }
}

/// Coefficient rows of the monic polynomials `p_0, ..., p_{n-1}`.
pub fn favard_array<C: Coeff>(rec: &RecurrencePair<C>, n: usize) -> Result<LowerTriMatrix<C>> {
    let mut rows: Vec<Vec<C>> = Vec::with_capacity(n);
    for r in 0..n {
        let row = match r {
            0 => vec![C::one()],
            _ => {
                let alpha = rec.alpha(r - 1).ok_or(Error::NotEnoughTerms { needed: r, got: r - 1 })?;
                let prev = &rows[r - 1];
                let mut row = vec![C::zero(); r + 1];
                for (i, c) in prev.iter().enumerate() {
                    row[i + 1] = row[i + 1].clone() + c.clone();
                    row[i] = row[i].clone() - alpha.clone() * c.clone();
                }
                if r >= 2 {
                    let beta = rec.beta(r - 1).ok_or(Error::NotEnoughTerms { needed: r - 1, got: r - 2 })?;
                    if beta.is_zero() {
                        return Err(Error::ZeroBeta { level: r - 1 });
                    }
                    for (i, c) in rows[r - 2].iter().enumerate() {
                        row[i] = row[i].clone() - beta.clone() * c.clone();
                    }
                }
                row
            }
        };
        rows.push(row);
    }
    LowerTriMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use num_traits::One;
    use super::*;
    use crate::families::catalan;
    use crate::riordan::RiordanPair;
    use crate::transforms::hankel;
    use crate::{rat, Poly, Rational};
    use proptest::prelude::*;

    type S = Series<Rational>;

    fn ints(s: &S) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn constant_fraction_gives_catalan_square() {
        let j = JFraction::periodic(rat(1), vec![], vec![], rat(2), rat(1)).unwrap();
        assert_eq!(ints(&j.to_series(4).unwrap()), vec![1, 2, 5, 14, 42]);
    }

    #[test]
    fn schroeder_like_fraction() {
        let j = JFraction::periodic(rat(1), vec![rat(4)], vec![rat(2)], rat(3), rat(2)).unwrap();
        assert_eq!(ints(&j.to_series(5).unwrap()), vec![1, 4, 18, 86, 426, 2162]);
    }

    #[test]
    fn aerated_catalan() {
        // oracle: c(x^2) by substitution
        let n = 12;
        let j = JFraction::periodic(rat(1), vec![], vec![], rat(0), rat(1)).unwrap();
        let c = catalan::<Rational>(n).unwrap().stretch(2);
        assert_eq!(j.to_series(n).unwrap(), c);
        assert_eq!(ints(&c)[..7], [1, 0, 1, 0, 2, 0, 5]);
    }

    #[test]
    fn zero_beta_rejected() {
        assert_eq!(JFraction::new(rat(1), vec![rat(1), rat(1)], vec![rat(0)], None), Err(Error::ZeroBeta { level: 1 }));
    }

    #[test]
    fn geometric_series_is_degenerate() {
        let geo = S::one(8).try_div(&S::from_ints(&[1, -1], 8)).unwrap();
        assert_eq!(series_to_jfraction(&geo, 1), Err(Error::HankelDegenerate { level: 1 }));
    }

    #[test]
    fn peel_catalan_square() {
        let c = catalan::<Rational>(10).unwrap();
        let j = series_to_jfraction(&(&c * &c), 2).unwrap();
        assert_eq!(j.prefix_alphas(), &[rat(2), rat(2)]);
        assert_eq!(j.prefix_betas(), &[rat(1), rat(1)]);
    }

    #[test]
    fn peel_parameterized_moments() {
        let n = 12;
        let y = Poly::u();
        let one_plus_x_sq = Series::<Poly>::from_ints(&[1, 2, 1], n);
        let g = Series::new(vec![Poly::one(), y.clone(), y.clone()], n).try_div(&one_plus_x_sq).unwrap();
        let f = Series::x(n).try_div(&one_plus_x_sq).unwrap();
        let family = RiordanPair::new(g, f).unwrap();
        let mu = Series::new(family.moment_polys(n + 1).unwrap(), n);
        let j = series_to_jfraction(&mu, 4).unwrap();
        let two = Poly::from_ints(&[2]);
        assert_eq!(j.prefix_alphas(), &[Poly::from_ints(&[2, -1]), two.clone(), two.clone(), two]);
        assert_eq!(j.prefix_betas(), &[Poly::from_ints(&[1, -1]), Poly::one(), Poly::one(), Poly::one()]);
        for k in 0..=5 {
            let expected = (0..k).fold(Poly::one(), |acc, _| acc * Poly::from_ints(&[1, -1]));
            let tail_j = JFraction::periodic(Poly::one(), vec![Poly::from_ints(&[2, -1])], vec![Poly::from_ints(&[1, -1])], Poly::from_ints(&[2]), Poly::one()).unwrap();
            assert_eq!(tail_j.heilermann(k).unwrap(), expected);
        }
    }

    #[test]
    fn heilermann_values() {
        let all_ones = JFraction::periodic(rat(1), vec![], vec![], rat(7), rat(1)).unwrap();
        for n in 0..8 {
            assert_eq!(all_ones.heilermann(n).unwrap(), rat(1));
        }
        // (a, b) = (3, 2): beta_1 = a - 1 - y, tail beta = b; at y = 5: h_n = (-1)^n (y - a + 1)^n b^{C(n,2)}
        let (a, b, y) = (3i64, 2i64, 5i64);
        let j = JFraction::periodic(rat(1), vec![rat(2 * a - 2 - y)], vec![rat(a - 1 - y)], rat(a), rat(b)).unwrap();
        for n in 0..6u32 {
            let expected = rat(-(y - a + 1)).pow(n as i32) * rat(b).pow((n * n.saturating_sub(1) / 2) as i32);
            assert_eq!(j.heilermann(n as usize).unwrap(), expected);
        }
    }

    #[test]
    fn favard_chebyshev_u() {
        let rows = favard_array(&RecurrencePair::constant(rat(0), rat(1)), 4).unwrap();
        let expected = LowerTriMatrix::from_rows(vec![
            vec![rat(1)],
            vec![rat(0), rat(1)],
            vec![rat(-1), rat(0), rat(1)],
            vec![rat(0), rat(-2), rat(0), rat(1)],
        ])
        .unwrap();
        assert_eq!(rows, expected);
    }

    fn tridiagonal_pair(alpha: i64, beta: i64, n: usize) -> RiordanPair<Rational> {
        let d = S::from_ints(&[1, alpha, beta], n);
        RiordanPair::new(S::one(n).try_div(&d).unwrap(), S::x(n).try_div(&d).unwrap()).unwrap()
    }

    #[test]
    fn favard_matches_closed_form_pairs() {
        for (alpha, beta) in [(2, 1), (3, 2)] {
            let fav = favard_array(&RecurrencePair::constant(rat(alpha), rat(beta)), 10).unwrap();
            assert_eq!(fav, tridiagonal_pair(alpha, beta, 12).to_matrix(10).unwrap());
        }
    }

    #[test]
    fn json_roundtrip() {
        let j = JFraction::periodic(rat(1), vec![rat(4)], vec![crate::ratio(-3, 2)], rat(3), rat(2)).unwrap();
        let v = j.to_json();
        assert_eq!(v["tail"]["beta"], "2");
        assert_eq!(v["betas"][0], "-3/2");
        assert_eq!(JFraction::<Rational>::from_json(&v).unwrap(), j);
        let p = JFraction::new(Poly::one(), vec![Poly::from_ints(&[0, -1])], vec![], None).unwrap();
        assert_eq!(JFraction::<Poly>::from_json(&p.to_json()).unwrap(), p);
    }

    fn fraction_strategy() -> impl Strategy<Value = JFraction<Rational>> {
        (1usize..=6).prop_flat_map(|d| {
            (
                prop::collection::vec(-3i64..4, d),
                prop::collection::vec(prop_oneof![-3i64..0, 1i64..4], d),
            )
                .prop_map(|(a, b)| JFraction::new(rat(1), a.into_iter().map(rat).collect(), b.into_iter().map(rat).collect(), None).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 48, rng_seed: proptest::test_runner::RngSeed::Fixed(5), ..ProptestConfig::default() })]
        #[test]
        fn peel_inverts_expand(j in fraction_strategy()) {
            let d = j.prefix_alphas().len();
            let s = j.to_series(2 * d).unwrap();
            prop_assert_eq!(series_to_jfraction(&s, d).unwrap(), j);
        }

        #[test]
        fn heilermann_equals_determinants(j in fraction_strategy()) {
            let d = j.prefix_alphas().len();
            let s = j.to_series(2 * d).unwrap();
            let h = hankel(s.coeffs(), d).unwrap();
            for (n, hn) in h.iter().enumerate() {
                prop_assert_eq!(hn, &j.heilermann(n).unwrap());
            }
        }

        #[test]
        fn hankel_ignores_alphas(j in fraction_strategy(), shift in -3i64..4) {
            let d = j.prefix_alphas().len();
            let moved: Vec<Rational> = j.prefix_alphas().iter().map(|a| a + rat(shift)).collect();
            let k = JFraction::new(rat(1), moved, j.prefix_betas().to_vec(), None).unwrap();
            let hj = hankel(j.to_series(2 * d).unwrap().coeffs(), d).unwrap();
            let hk = hankel(k.to_series(2 * d).unwrap().coeffs(), d).unwrap();
            prop_assert_eq!(hj, hk);
        }
    }
}
