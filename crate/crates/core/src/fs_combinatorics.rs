//! Thimble combinatorics on the A-side: winding bookkeeping for thimbles in
//! the base and in the cyclic cover, the decomposition of a base thimble
//! into cover thimbles, Serre twists, hom-space dimensions over projective
//! space, and the dimension cross-check against the coordinate ring.

use crate::coord_ring::{graded_dim, monomial_by_toric_degree, RingMonomial, ToricDegree};
use crate::exact_poly::binomial;
use crate::par::map_indexed;
use num_traits::ToPrimitive;
use serde::Serialize;

/// Thimble in the base labelled by its clockwise winding number around the
/// big critical value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BaseThimble {
    pub j: i64,
}

impl BaseThimble {
    /// Preimage under the covering, one cover thimble per critical value.
    pub fn decompose(&self, n: usize) -> Vec<CoverThimble> {
        psi_decompose(n, self.j)
    }
}

/// Thimble in the cover: `k` selects the critical value (a rotation of the
/// fundamental one), `i` counts stop crossings. Its mirror degree is
/// `-k + i (n+1)`, and that degree determines `(k, i)` uniquely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CoverThimble {
    pub k: u32,
    pub i: i64,
}

impl CoverThimble {
    pub fn mirror_degree(&self, n: usize) -> i64 {
        -(self.k as i64) + self.i * (n as i64 + 1)
    }

    /// Recover `(k, i)` from a mirror degree by Euclidean division.
    pub fn from_mirror_degree(n: usize, d: i64) -> Self {
        let span = n as i64 + 1;
        let i = d.div_euclid(span) + i64::from(d.rem_euclid(span) != 0);
        let k = i * span - d;
        debug_assert!((0..span).contains(&k));
        CoverThimble { k: k as u32, i }
    }

    /// One application of the Serre twist: mirror degree drops by `n+1`,
    /// homological degree shifts by `n`.
    pub fn serre_twist(&self, n: usize) -> (CoverThimble, usize) {
        (
            CoverThimble {
                k: self.k,
                i: self.i - 1,
            },
            n,
        )
    }

    pub fn serre_untwist(&self, n: usize) -> (CoverThimble, usize) {
        (
            CoverThimble {
                k: self.k,
                i: self.i + 1,
            },
            n,
        )
    }
}

/// Preimage of the base thimble of winding `j` under the covering: one cover
/// thimble per critical value, with windings `q` or `q+1` split by the
/// remainder of `j = q(n+1) + r`.
pub fn psi_decompose(n: usize, j: i64) -> Vec<CoverThimble> {
    let span = n as i64 + 1;
    let q = j.div_euclid(span);
    let r = j.rem_euclid(span);
    (0..=n as u32)
        .map(|k| {
            let winding = if (k as i64) <= n as i64 - r { q } else { q + 1 };
            CoverThimble { k, i: winding }
        })
        .collect()
}

/// The multiset of mirror degrees of `psi_decompose(n, j)` equals
/// `{ j - k : k = 0..n }`.
pub fn psi_degree_multiset_matches(n: usize, j: i64) -> bool {
    let mut lhs: Vec<i64> = psi_decompose(n, j)
        .iter()
        .map(|t| t.mirror_degree(n))
        .collect();
    let mut rhs: Vec<i64> = (0..=n as i64).map(|k| j - k).collect();
    lhs.sort_unstable();
    rhs.sort_unstable();
    lhs == rhs
}

/// Hom dimension between line-bundle mirrors on projective space. Gap
/// `g = d_tgt - d_src >= 0` gives the symmetric power `C(g + n, n)` in
/// degree zero; a negative gap gives the dual dimension `C(-g - 1, n)` in
/// degree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GradedDim {
    pub dim: u64,
    pub shift: usize,
}

pub fn pn_hom_dim(n: usize, d_src: i64, d_tgt: i64) -> GradedDim {
    if d_tgt >= d_src {
        let g = (d_tgt - d_src, n as i64);
        GradedDim {
            dim: binomial((g.0 + g.1) as u64, n as u64)
                .to_u64()
                .expect("fits"),
            shift: 0,
        }
    } else {
        let gap = (d_src - d_tgt) as u64;
        GradedDim {
            dim: binomial(gap - 1, n as u64).to_u64().expect("fits"),
            shift: n,
        }
    }
}

/// Hom dimension between consecutive-collection thimbles: the exterior
/// power `C(n+1, j-i)`, concentrated in degree `j - i`.
pub fn futaki_ueda_dim(n: usize, i: i64, j: i64) -> GradedDim {
    if j < i {
        return GradedDim { dim: 0, shift: 0 };
    }
    let g = (j - i) as u64;
    GradedDim {
        dim: binomial(n as u64 + 1, g).to_u64().expect("fits"),
        shift: g as usize,
    }
}

/// Alternating sum over the exterior algebra vanishes.
pub fn futaki_ueda_euler_zero(n: usize) -> bool {
    let mut acc: i128 = 0;
    for m in 0..=(n as u64 + 1) {
        let c = binomial(n as u64 + 1, m).to_i128().expect("fits");
        acc += if m % 2 == 0 { c } else { -c };
    }
    acc == 0
}

/// Grading group element: a class in `Z^{n+1}` modulo the all-ones vector,
/// stored in the normal form that subtracts the 0th coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingClass {
    pub v: Vec<i64>,
}

impl GradingClass {
    /// Class of an ambient vector `(g_0, ..., g_n)`.
    pub fn from_ambient(g: &[i64]) -> Self {
        let g0 = g[0];
        GradingClass {
            v: g[1..].iter().map(|&gi| gi - g0).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        GradingClass { v: vec![0; n] }
    }

    /// Class of the k-th ambient generator.
    pub fn generator(n: usize, k: usize) -> Self {
        let mut g = vec![0i64; n + 1];
        g[k] = 1;
        Self::from_ambient(&g)
    }

    pub fn add(&self, other: &Self) -> Self {
        GradingClass {
            v: self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect(),
        }
    }

    /// Canonical ambient representative `(0, v_1, ..., v_n)`.
    pub fn to_ambient(&self) -> Vec<i64> {
        let mut g = Vec::with_capacity(self.v.len() + 1);
        g.push(0);
        g.extend_from_slice(&self.v);
        g
    }

    pub fn to_toric_degree(&self) -> ToricDegree {
        ToricDegree(self.v.clone())
    }
}

/// Dictionary from a Hamiltonian-chord weight to the coordinate-ring
/// monomial of the same weight in total degree `d`, when one exists.
pub fn chord_to_monomial(n: usize, g: &GradingClass, d: i64) -> Option<RingMonomial> {
    monomial_by_toric_degree(n, d, &g.to_toric_degree())
}

/// A/B dimension comparison for one pair of twists.
#[derive(Debug, Clone, Serialize)]
pub struct DimReport {
    pub n: usize,
    pub i: i64,
    pub j: i64,
    pub a_side: u64,
    pub b_side: u64,
    /// per-critical-value summand dimensions contributing to the A-side
    pub blocks: Vec<u64>,
    /// both sides were computed through the dual pair `(j, i-(n+1))`
    pub dual: bool,
    /// homological shift attached to the dual computation
    pub shift: usize,
    #[serde(rename = "match")]
    pub is_match: bool,
}

/// A-side dimension as the sum over cover summands of symmetric-power
/// dimensions, against the coordinate-ring graded dimension on the B-side.
/// Reverse twists are routed through the dual pair `(j, i-(n+1))`, keeping
/// both sides in the same convention.
pub fn a_side_dim(n: usize, i: i64, j: i64) -> DimReport {
    let (src, tgt, dual, shift) = if j >= i {
        (i, j, false, 0)
    } else {
        (j, i - (n as i64 + 1), true, n)
    };
    let mut blocks = Vec::with_capacity(n + 1);
    let mut a_side: u64 = 0;
    for k in 0..=n as i64 {
        let d = if tgt - k >= src {
            pn_hom_dim(n, src, tgt - k).dim
        } else {
            0
        };
        blocks.push(d);
        a_side += d;
    }
    let b_side = graded_dim(n, tgt - src).to_u64().expect("fits");
    DimReport {
        n,
        i,
        j,
        a_side,
        b_side,
        blocks,
        dual,
        shift,
        is_match: a_side == b_side,
    }
}

/// Dimension comparison over a full twist grid, in row-major `(i, j)` order.
pub fn dim_grid(n: usize, i_range: (i64, i64), j_range: (i64, i64)) -> Vec<DimReport> {
    let i_count = (i_range.1 - i_range.0 + 1).max(0) as usize;
    let j_count = (j_range.1 - j_range.0 + 1).max(0) as usize;
    map_indexed(i_count * j_count, |idx| {
        let i = i_range.0 + (idx / j_count) as i64;
        let j = j_range.0 + (idx % j_count) as i64;
        a_side_dim(n, i, j)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_decompose_examples() {
        assert_eq!(
            psi_decompose(2, 0),
            vec![
                CoverThimble { k: 0, i: 0 },
                CoverThimble { k: 1, i: 0 },
                CoverThimble { k: 2, i: 0 }
            ]
        );
        let d4 = psi_decompose(2, 4);
        assert_eq!(
            d4,
            vec![
                CoverThimble { k: 0, i: 1 },
                CoverThimble { k: 1, i: 1 },
                CoverThimble { k: 2, i: 2 }
            ]
        );
        let degrees: Vec<i64> = d4.iter().map(|t| t.mirror_degree(2)).collect();
        assert_eq!(degrees, vec![3, 2, 4]);
        // negative winding uses floor division
        let dm1 = psi_decompose(2, -1);
        assert_eq!(
            dm1,
            vec![
                CoverThimble { k: 0, i: -1 },
                CoverThimble { k: 1, i: 0 },
                CoverThimble { k: 2, i: 0 }
            ]
        );
        let degrees: Vec<i64> = dm1.iter().map(|t| t.mirror_degree(2)).collect();
        assert_eq!(degrees, vec![-3, -1, -2]);
    }

    #[test]
    fn base_thimble_decomposes() {
        assert_eq!(BaseThimble { j: 4 }.decompose(2), psi_decompose(2, 4));
    }

    #[test]
    fn psi_degree_multiset_sweep() {
        for n in 1..=6usize {
            for j in -20..=20i64 {
                assert!(psi_degree_multiset_matches(n, j), "n={n} j={j}");
            }
        }
    }

    #[test]
    fn mirror_degree_roundtrip() {
        for n in 1..=5usize {
            for d in -30..=30i64 {
                let t = CoverThimble::from_mirror_degree(n, d);
                assert!(t.k <= n as u32);
                assert_eq!(t.mirror_degree(n), d);
            }
        }
    }

    #[test]
    fn serre_twist_examples() {
        let t = CoverThimble { k: 0, i: 1 };
        assert_eq!(t.mirror_degree(2), 3);
        let (tw, shift) = t.serre_twist(2);
        assert_eq!(tw, CoverThimble { k: 0, i: 0 });
        assert_eq!(tw.mirror_degree(2), 0);
        assert_eq!(shift, 2);
        // n+1 twists drop the degree by (n+1)^2
        let mut cur = t;
        for _ in 0..3 {
            cur = cur.serre_twist(2).0;
        }
        assert_eq!(cur.mirror_degree(2), 3 - 9);
        // twist then untwist is the identity
        assert_eq!(t.serre_twist(2).0.serre_untwist(2).0, t);
    }

    #[test]
    fn psi_commutes_with_serre_twist() {
        for n in 1..=4usize {
            let span = n as i64 + 1;
            for j in -10..=10i64 {
                let twisted: Vec<CoverThimble> = psi_decompose(n, j + span);
                let via_serre: Vec<CoverThimble> = psi_decompose(n, j)
                    .iter()
                    .map(|t| t.serre_untwist(n).0)
                    .collect();
                assert_eq!(twisted, via_serre, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn pn_hom_dims() {
        assert_eq!(pn_hom_dim(2, 0, 1), GradedDim { dim: 3, shift: 0 });
        assert_eq!(pn_hom_dim(2, 0, 0), GradedDim { dim: 1, shift: 0 });
        // dual side: gap 3 over n=2 has one class, shifted by n
        assert_eq!(pn_hom_dim(2, 0, -3), GradedDim { dim: 1, shift: 2 });
        // gaps up to n have no dual classes
        assert_eq!(pn_hom_dim(2, 0, -1).dim, 0);
        assert_eq!(pn_hom_dim(2, 0, -2).dim, 0);
    }

    #[test]
    fn futaki_ueda_dims() {
        assert_eq!(futaki_ueda_dim(5, 0, 1).dim, 6);
        assert_eq!(futaki_ueda_dim(3, 2, 2), GradedDim { dim: 1, shift: 0 });
        assert_eq!(futaki_ueda_dim(2, 0, 3), GradedDim { dim: 1, shift: 3 });
        assert_eq!(futaki_ueda_dim(2, 1, 0).dim, 0);
        for n in 0..=8 {
            assert!(futaki_ueda_euler_zero(n));
        }
    }

    #[test]
    fn grading_class_normal_form() {
        // the all-ones vector is the relation
        assert_eq!(
            GradingClass::from_ambient(&[1, 1, 1]),
            GradingClass::zero(2)
        );
        // generators sum to zero
        let mut acc = GradingClass::zero(2);
        for k in 0..=2 {
            acc = acc.add(&GradingClass::generator(2, k));
        }
        assert_eq!(acc, GradingClass::zero(2));
        // roundtrip through the ambient representative
        for v in [[0, 0], [1, -2], [-3, 5]] {
            let g = GradingClass { v: v.to_vec() };
            assert_eq!(GradingClass::from_ambient(&g.to_ambient()), g);
        }
    }

    #[test]
    fn chord_dictionary_examples() {
        let g1 = GradingClass::generator(2, 1);
        assert_eq!(chord_to_monomial(2, &g1, 1).unwrap(), RingMonomial::x(2, 1));
        let g0 = GradingClass::zero(2);
        assert_eq!(chord_to_monomial(2, &g0, 1).unwrap(), RingMonomial::t(2));
        // class of -e0 normalizes to (1,1); first hit is x1 x2 in degree 2
        let gm = GradingClass::from_ambient(&[-1, 0, 0]);
        assert_eq!(gm.v, vec![1, 1]);
        assert!(chord_to_monomial(2, &gm, 1).is_none());
        let m = chord_to_monomial(2, &gm, 2).unwrap();
        assert_eq!(m.x_exps(), &[0, 1, 1]);
        assert_eq!(m.t_exp(), 0);
    }

    #[test]
    fn chord_dictionary_bijective_per_degree() {
        use crate::coord_ring::basis;
        for n in 1..=3usize {
            for d in 0..=6i64 {
                let all = basis(n, d as u64);
                let mut seen = std::collections::BTreeSet::new();
                for m in &all {
                    let g = GradingClass {
                        v: m.toric_degree().0,
                    };
                    let back = chord_to_monomial(n, &g, d).unwrap();
                    assert_eq!(&back, m);
                    assert!(seen.insert(back));
                }
                assert_eq!(seen.len(), all.len());
            }
        }
    }

    #[test]
    fn dim_match_examples() {
        let r = a_side_dim(2, 0, 1);
        assert_eq!(r.a_side, 4);
        assert_eq!(r.b_side, 4);
        assert_eq!(r.blocks, vec![3, 1, 0]);
        assert!(r.is_match);
        let r = a_side_dim(2, 0, 0);
        assert_eq!((r.a_side, r.b_side), (1, 1));
        let r = a_side_dim(3, -2, 0);
        assert_eq!(r.a_side, 15);
        assert_eq!(r.b_side, 15);
        assert_eq!(r.blocks, vec![10, 4, 1, 0]);
    }

    #[test]
    fn dim_match_grid() {
        for n in 2..=4usize {
            for r in dim_grid(n, (-6, 6), (-6, 6)) {
                assert!(r.is_match, "n={n} i={} j={}", r.i, r.j);
            }
        }
    }

    #[test]
    fn twist_invariance() {
        for n in 1..=4usize {
            let span = n as i64 + 1;
            for i in -5..=5i64 {
                for j in -5..=5i64 {
                    let a = a_side_dim(n, i, j);
                    let b = a_side_dim(n, i + span, j + span);
                    assert_eq!(a.a_side, b.a_side);
                    assert_eq!(a.b_side, b.b_side);
                }
            }
        }
    }
}
