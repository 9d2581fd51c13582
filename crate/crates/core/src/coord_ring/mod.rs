//! The graded coordinate ring `S = k[x0..xn, t] / (t^{n+1} - x0...xn)` with
//! its total degree and torus-weight gradings, plus the hom spaces between
//! twists of the structure sheaf that the ring's graded pieces compute.

mod block;

pub use block::{product_of_coordinates, pushforward_of_monomial, pushforward_of_t, BlockMap};

use crate::exact_poly::binomial;
use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("{0}")]
    Argument(String),
}

/// Monomial of `S` in normal form: the relation `t^{n+1} = x0...xn` has been
/// applied until the `t`-exponent is at most `n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RingMonomial {
    #[serde(skip)]
    n: usize,
    #[serde(rename = "t")]
    t_exp: u32,
    #[serde(rename = "x")]
    x_exps: Vec<u32>,
}

/// Torus weight `(a1 - a0, ..., an - a0)` of a monomial; insensitive to the
/// `t`-exponent and to the defining relation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ToricDegree(pub Vec<i64>);

impl RingMonomial {
    /// Build a monomial from raw exponents, applying the relation until the
    /// `t`-exponent lies in `[0, n]`.
    pub fn normal_form(n: usize, t_exp: i64, x_exps: &[i64]) -> Result<Self, RingError> {
        if t_exp < 0 {
            return Err(RingError::NegativeExponent(t_exp));
        }
        if x_exps.len() != n + 1 {
            return Err(RingError::Argument(format!(
                "expected {} x-exponents, got {}",
                n + 1,
                x_exps.len()
            )));
        }
        for &e in x_exps {
            if e < 0 {
                return Err(RingError::NegativeExponent(e));
            }
        }
        let mut t = t_exp as u64;
        let mut xs: Vec<u64> = x_exps.iter().map(|&e| e as u64).collect();
        while t > n as u64 {
            t -= (n + 1) as u64;
            for x in &mut xs {
                *x += 1;
            }
        }
        Ok(RingMonomial {
            n,
            t_exp: t as u32,
            x_exps: xs.into_iter().map(|x| x as u32).collect(),
        })
    }

    pub fn one(n: usize) -> Self {
        RingMonomial {
            n,
            t_exp: 0,
            x_exps: vec![0; n + 1],
        }
    }

    pub fn t(n: usize) -> Self {
        RingMonomial {
            n,
            t_exp: 1,
            x_exps: vec![0; n + 1],
        }
    }

    pub fn x(n: usize, i: usize) -> Self {
        let mut xs = vec![0; n + 1];
        xs[i] = 1;
        RingMonomial {
            n,
            t_exp: 0,
            x_exps: xs,
        }
    }

    pub fn dim_param(&self) -> usize {
        self.n
    }

    pub fn t_exp(&self) -> u32 {
        self.t_exp
    }

    pub fn x_exps(&self) -> &[u32] {
        &self.x_exps
    }

    pub fn total_degree(&self) -> u64 {
        self.t_exp as u64 + self.x_exps.iter().map(|&e| e as u64).sum::<u64>()
    }

    /// Product in `S`, renormalized.
    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        if self.n != other.n {
            return Err(RingError::Argument(format!(
                "dimension mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        let xs: Vec<i64> = self
            .x_exps
            .iter()
            .zip(&other.x_exps)
            .map(|(&a, &b)| a as i64 + b as i64)
            .collect();
        Self::normal_form(self.n, self.t_exp as i64 + other.t_exp as i64, &xs)
    }

    pub fn toric_degree(&self) -> ToricDegree {
        let a0 = self.x_exps[0] as i64;
        ToricDegree(self.x_exps[1..].iter().map(|&a| a as i64 - a0).collect())
    }
}

/// Count of normal-form monomials of total degree `d`: the `t`-exponent `a`
/// ranges over `0..=min(n, d)` and contributes `C(d - a + n, n)` choices of
/// x-part.
pub fn graded_dim(n: usize, d: i64) -> BigUint {
    if d < 0 {
        return BigUint::zero();
    }
    let d = d as u64;
    let mut acc = BigUint::zero();
    for a in 0..=(n as u64).min(d) {
        acc += binomial(d - a + n as u64, n as u64);
    }
    acc
}

/// All normal-form monomials of total degree `d`, in deterministic
/// (t-exponent, then lexicographic x-part) order.
pub fn basis(n: usize, d: u64) -> Vec<RingMonomial> {
    let mut out = Vec::new();
    for t in 0..=(n as u64).min(d) {
        let rem = d - t;
        let mut xs = vec![0u32; n + 1];
        compositions(rem, 0, &mut xs, &mut |xs| {
            out.push(RingMonomial {
                n,
                t_exp: t as u32,
                x_exps: xs.to_vec(),
            });
        });
    }
    out
}

fn compositions(remaining: u64, idx: usize, xs: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if idx + 1 == xs.len() {
        xs[idx] = remaining as u32;
        emit(xs);
        xs[idx] = 0;
        return;
    }
    for v in 0..=remaining {
        xs[idx] = v as u32;
        compositions(remaining - v, idx + 1, xs, emit);
    }
    xs[idx] = 0;
}

/// The unique normal-form monomial of total degree `d` with torus weight
/// `v`, when one exists. Solving `a_k = a_0 + v_k` pins the whole monomial
/// down to the choice of `a_0`, and the degree constraint leaves at most one.
pub fn monomial_by_toric_degree(n: usize, d: i64, v: &ToricDegree) -> Option<RingMonomial> {
    if d < 0 || v.0.len() != n {
        return None;
    }
    let sum_v: i64 = v.0.iter().sum();
    let span = (n + 1) as i64;
    let window_top = d - sum_v;
    if window_top < 0 {
        return None;
    }
    // unique multiple of n+1 in [window_top - n, window_top]
    let a0 = window_top.div_euclid(span);
    let t = window_top - a0 * span;
    debug_assert!((0..span).contains(&t));
    if a0 < 0 {
        return None;
    }
    let mut xs = Vec::with_capacity(n + 1);
    xs.push(a0);
    for &vk in &v.0 {
        let a = a0 + vk;
        if a < 0 {
            return None;
        }
        xs.push(a);
    }
    let m = RingMonomial::normal_form(n, t, &xs).ok()?;
    debug_assert_eq!(m.total_degree(), d as u64);
    Some(m)
}

/// Marker for a hom space recorded through its dual pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SerreDualMarker {
    pub src_twist: i64,
    pub tgt_twist: i64,
    pub shift: usize,
}

/// Hom space between twists `O(i) -> O(j)` on the hypersurface. For `j >= i`
/// the graded piece `S_{j-i}` provides a monomial basis; for `j < i` only
/// the dual dimension and a shift marker are kept.
#[derive(Debug, Clone, Serialize)]
pub struct HomSpace {
    pub i: i64,
    pub j: i64,
    pub dim: BigUint,
    pub basis: Option<Vec<RingMonomial>>,
    pub serre_dual_of: Option<SerreDualMarker>,
}

pub fn hom_space(n: usize, i: i64, j: i64) -> HomSpace {
    if j >= i {
        let d = (j - i) as u64;
        let basis = basis(n, d);
        HomSpace {
            i,
            j,
            dim: BigUint::from(basis.len()),
            basis: Some(basis),
            serre_dual_of: None,
        }
    } else {
        let span = (n + 1) as i64;
        let dual_tgt = i - span;
        HomSpace {
            i,
            j,
            dim: graded_dim(n, dual_tgt - j),
            basis: None,
            serre_dual_of: Some(SerreDualMarker {
                src_twist: j,
                tgt_twist: dual_tgt,
                shift: n,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use std::collections::BTreeSet;

    #[test]
    fn normal_form_examples() {
        // n=2: t^3 = x0 x1 x2
        let m = RingMonomial::normal_form(2, 3, &[0, 0, 0]).unwrap();
        assert_eq!(m.t_exp(), 0);
        assert_eq!(m.x_exps(), &[1, 1, 1]);
        // n=2: t^4 x0 = t x0^2 x1 x2
        let m = RingMonomial::normal_form(2, 4, &[1, 0, 0]).unwrap();
        assert_eq!(m.t_exp(), 1);
        assert_eq!(m.x_exps(), &[2, 1, 1]);
        assert_eq!(m.total_degree(), 5);
        // already normal
        let m = RingMonomial::normal_form(2, 2, &[0, 0, 0]).unwrap();
        assert_eq!(m.t_exp(), 2);
        assert_eq!(m.x_exps(), &[0, 0, 0]);
    }

    #[test]
    fn normal_form_rejects_negative() {
        assert!(RingMonomial::normal_form(2, -1, &[0, 0, 0]).is_err());
        assert!(RingMonomial::normal_form(2, 0, &[0, -2, 0]).is_err());
    }

    #[test]
    fn graded_dim_examples() {
        assert_eq!(graded_dim(2, 1).to_u64().unwrap(), 4);
        assert_eq!(graded_dim(2, 0).to_u64().unwrap(), 1);
        assert_eq!(graded_dim(3, 2).to_u64().unwrap(), 15);
        assert_eq!(graded_dim(2, -3).to_u64().unwrap(), 0);
    }

    #[test]
    fn graded_dim_matches_enumeration() {
        for n in 1..=4usize {
            for d in 0..=8u64 {
                assert_eq!(
                    graded_dim(n, d as i64).to_u64().unwrap(),
                    basis(n, d).len() as u64,
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn toric_degree_examples() {
        assert_eq!(RingMonomial::t(2).toric_degree(), ToricDegree(vec![0, 0]));
        let m = RingMonomial::normal_form(2, 1, &[1, 0, 2]).unwrap();
        assert_eq!(m.toric_degree(), ToricDegree(vec![-1, 1]));
        let m = RingMonomial::normal_form(2, 0, &[1, 1, 1]).unwrap();
        assert_eq!(m.toric_degree(), ToricDegree(vec![0, 0]));
        // x0 x1 x2 and t share a weight but live in different degrees
        assert_eq!(m.total_degree(), 3);
        assert_eq!(RingMonomial::t(2).total_degree(), 1);
    }

    #[test]
    fn toric_degree_additive_under_mul() {
        for a in basis(2, 3) {
            for b in basis(2, 2) {
                let p = a.mul(&b).unwrap();
                let sum: Vec<i64> = a
                    .toric_degree()
                    .0
                    .iter()
                    .zip(&b.toric_degree().0)
                    .map(|(u, v)| u + v)
                    .collect();
                assert_eq!(p.toric_degree(), ToricDegree(sum));
            }
        }
    }

    #[test]
    fn lookup_by_toric_degree() {
        let t = monomial_by_toric_degree(2, 1, &ToricDegree(vec![0, 0])).unwrap();
        assert_eq!(t, RingMonomial::t(2));
        let x1 = monomial_by_toric_degree(2, 1, &ToricDegree(vec![1, 0])).unwrap();
        assert_eq!(x1, RingMonomial::x(2, 1));
        assert!(monomial_by_toric_degree(2, 1, &ToricDegree(vec![5, 5])).is_none());
    }

    #[test]
    fn lookup_agrees_with_enumeration() {
        for n in 1..=3usize {
            for d in 0..=6u64 {
                let all = basis(n, d);
                for m in &all {
                    assert_eq!(
                        monomial_by_toric_degree(n, d as i64, &m.toric_degree()).as_ref(),
                        Some(m)
                    );
                }
            }
        }
    }

    #[test]
    fn toric_tag_injective_per_degree() {
        for n in 1..=4usize {
            for d in 0..=8u64 {
                let all = basis(n, d);
                let tags: BTreeSet<ToricDegree> = all.iter().map(|m| m.toric_degree()).collect();
                assert_eq!(tags.len(), all.len(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn hom_space_dual_dimensions() {
        // n=2: hom(O(0), O(1)) has the 4 generators; reverse direction
        // records the dual pair (O(1-3) target) and its dimension.
        let fwd = hom_space(2, 0, 1);
        assert_eq!(fwd.dim.to_u64().unwrap(), 4);
        let bwd = hom_space(2, 1, 0);
        assert!(bwd.basis.is_none());
        let marker = bwd.serre_dual_of.unwrap();
        assert_eq!(marker.tgt_twist, -2);
        assert_eq!(marker.shift, 2);
        assert_eq!(bwd.dim, graded_dim(2, -2));
    }

    #[test]
    fn degree_one_generates() {
        // multiplication S_1 (x) S_d -> S_{d+1} is surjective: the 0/1
        // pairing matrix has full row rank
        use crate::linalg::rational_rank;
        use num_bigint::BigInt;
        use num_rational::BigRational;
        for n in 1..=3usize {
            for d in 0..=4u64 {
                let rows = basis(n, d + 1);
                let gens = basis(n, 1);
                let mids = basis(n, d);
                let index: std::collections::BTreeMap<&RingMonomial, usize> =
                    rows.iter().zip(0..).collect();
                let mut mat = vec![vec![BigRational::zero(); gens.len() * mids.len()]; rows.len()];
                for (gi, g) in gens.iter().enumerate() {
                    for (mi, m) in mids.iter().enumerate() {
                        let p = g.mul(m).unwrap();
                        let r = index[&p];
                        mat[r][gi * mids.len() + mi] = BigRational::from_integer(BigInt::from(1));
                    }
                }
                assert_eq!(rational_rank(&mat), rows.len(), "n={n} d={d}");
            }
        }
    }
}
