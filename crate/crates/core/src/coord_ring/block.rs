//! Pushforward of twist homomorphisms along the cover that forgets `t`.
//!
//! The direct image of `O(i)` splits as `O(i) + O(i-1) + ... + O(i-n)`, and a
//! map between twists becomes an (n+1) x (n+1) block matrix of homogeneous
//! polynomials in `x0..xn`.

use super::{RingError, RingMonomial};
use crate::exact_poly::{Exponent, LaurentPolynomial, VarContext};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Block matrix of polynomial maps `E(i) -> E(j)`, where `E` is the split
/// direct image bundle. `blocks[l][k]` maps summand `O(i-k)` to `O(j-l)` and
/// is zero or homogeneous of degree `(j-l) - (i-k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMap {
    n: usize,
    src_twist: i64,
    tgt_twist: i64,
    blocks: Vec<Vec<LaurentPolynomial>>,
}

impl BlockMap {
    pub fn zero(n: usize, src_twist: i64, tgt_twist: i64) -> Self {
        let ctx = VarContext::x_vars(n + 1);
        let blocks = (0..=n)
            .map(|_| {
                (0..=n)
                    .map(|_| LaurentPolynomial::zero(ctx.clone()))
                    .collect()
            })
            .collect();
        BlockMap {
            n,
            src_twist,
            tgt_twist,
            blocks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn src_twist(&self) -> i64 {
        self.src_twist
    }

    pub fn tgt_twist(&self) -> i64 {
        self.tgt_twist
    }

    pub fn block(&self, l: usize, k: usize) -> &LaurentPolynomial {
        &self.blocks[l][k]
    }

    pub fn set_block(&mut self, l: usize, k: usize, p: LaurentPolynomial) -> Result<(), RingError> {
        let deg = (self.tgt_twist - l as i64) - (self.src_twist - k as i64);
        if !p.is_zero() && (deg < 0 || !p.is_homogeneous_of_degree(deg)) {
            return Err(RingError::Argument(format!(
                "block ({l},{k}) must be homogeneous of degree {deg}"
            )));
        }
        self.blocks[l][k] = p;
        Ok(())
    }

    /// `other` after `self`: composition of `self: E(i) -> E(j)` with
    /// `other: E(j) -> E(p)`.
    pub fn then(&self, other: &BlockMap) -> Result<BlockMap, RingError> {
        if self.n != other.n || self.tgt_twist != other.src_twist {
            return Err(RingError::Argument(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.src_twist, self.tgt_twist, other.src_twist, other.tgt_twist
            )));
        }
        let mut out = BlockMap::zero(self.n, self.src_twist, other.tgt_twist);
        for l in 0..=self.n {
            for k in 0..=self.n {
                let mut acc = LaurentPolynomial::zero(self.blocks[0][0].context().clone());
                for m in 0..=self.n {
                    let prod = other.blocks[l][m]
                        .mul(&self.blocks[m][k])
                        .expect("shared ctx");
                    acc = acc.add(&prod).expect("shared ctx");
                }
                out.blocks[l][k] = acc;
            }
        }
        Ok(out)
    }

    /// All blocks respect the degree constraint (zero or homogeneous of
    /// `(j-l)-(i-k)`).
    pub fn degrees_consistent(&self) -> bool {
        (0..=self.n).all(|l| {
            (0..=self.n).all(|k| {
                let p = &self.blocks[l][k];
                if p.is_zero() {
                    return true;
                }
                let deg = (self.tgt_twist - l as i64) - (self.src_twist - k as i64);
                deg >= 0 && p.is_homogeneous_of_degree(deg)
            })
        })
    }
}

/// Row-major dense serialization of the block grid as polynomial text forms.
impl Serialize for BlockMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BlockMap", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("src_twist", &self.src_twist)?;
        st.serialize_field("tgt_twist", &self.tgt_twist)?;
        let grid: Vec<String> = self
            .blocks
            .iter()
            .flat_map(|row| row.iter().map(|p| p.to_string()))
            .collect();
        st.serialize_field("blocks", &grid)?;
        st.end()
    }
}

/// The product monomial `x0...xn` as a polynomial.
pub fn product_of_coordinates(n: usize) -> LaurentPolynomial {
    let ctx = VarContext::x_vars(n + 1);
    LaurentPolynomial::monomial(ctx, Exponent(vec![1; n + 1]), BigRational::one())
}

/// Pushforward of multiplication by `t` as a block map `E(i) -> E(i+1)`:
/// identity blocks shifting each summand down, and multiplication by `f` in
/// the corner where the defining relation folds `t^{n+1}` back.
pub fn pushforward_of_t(
    n: usize,
    f: &LaurentPolynomial,
    src_twist: i64,
) -> Result<BlockMap, RingError> {
    if f.context().len() != n + 1 || !f.is_homogeneous_of_degree(n as i64 + 1) {
        return Err(RingError::Argument(format!(
            "f must be homogeneous of degree {} in x0..x{}",
            n + 1,
            n
        )));
    }
    let ctx = f.context().clone();
    let mut out = BlockMap::zero(n, src_twist, src_twist + 1);
    for k in 0..n {
        out.set_block(
            k + 1,
            k,
            LaurentPolynomial::constant(ctx.clone(), BigRational::one()),
        )?;
    }
    out.set_block(0, n, f.clone())?;
    Ok(out)
}

/// Pushforward of multiplication by a normal-form monomial of `S`, as a map
/// `E(i) -> E(j)` with `j - i` the monomial's total degree. Writing the
/// monomial as `t^a x^alpha`, summand `k` lands in summand `(k+a) mod (n+1)`
/// with entry `x^alpha` times `x0..xn` whenever the relation folds once.
pub fn pushforward_of_monomial(
    m: &RingMonomial,
    src_twist: i64,
    tgt_twist: i64,
) -> Result<BlockMap, RingError> {
    let n = m.dim_param();
    let d = m.total_degree() as i64;
    if tgt_twist - src_twist != d {
        return Err(RingError::Argument(format!(
            "monomial has degree {d}, expected {}",
            tgt_twist - src_twist
        )));
    }
    let ctx = VarContext::x_vars(n + 1);
    let xpart = LaurentPolynomial::monomial(
        ctx.clone(),
        Exponent(m.x_exps().iter().map(|&e| e as i64).collect()),
        BigRational::from_integer(BigInt::one()),
    );
    let folded = xpart.mul(&product_of_coordinates(n)).expect("shared ctx");
    let span = n as u32 + 1;
    let mut out = BlockMap::zero(n, src_twist, tgt_twist);
    for k in 0..=n as u32 {
        let total_t = k + m.t_exp();
        let l = (total_t % span) as usize;
        let entry = if total_t < span {
            xpart.clone()
        } else {
            folded.clone()
        };
        out.set_block(l, k as usize, entry)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coord_ring::basis;

    fn constant_one(n: usize) -> LaurentPolynomial {
        LaurentPolynomial::constant(VarContext::x_vars(n + 1), BigRational::one())
    }

    #[test]
    fn t_pushforward_shape_n2() {
        let f = product_of_coordinates(2);
        let b = pushforward_of_t(2, &f, 0).unwrap();
        assert_eq!(b.block(1, 0), &constant_one(2));
        assert_eq!(b.block(2, 1), &constant_one(2));
        assert_eq!(b.block(0, 2), &f);
        // every other block vanishes
        for l in 0..=2 {
            for k in 0..=2 {
                if (l, k) != (1, 0) && (l, k) != (2, 1) && (l, k) != (0, 2) {
                    assert!(b.block(l, k).is_zero());
                }
            }
        }
        assert!(b.degrees_consistent());
    }

    #[test]
    fn t_pushforward_shape_n1() {
        let f = product_of_coordinates(1);
        let b = pushforward_of_t(1, &f, 0).unwrap();
        assert_eq!(b.block(1, 0), &constant_one(1));
        assert_eq!(b.block(0, 1), &f);
    }

    #[test]
    fn t_pushforward_rejects_wrong_degree() {
        let f = product_of_coordinates(2);
        assert!(pushforward_of_t(1, &f, 0).is_err());
    }

    #[test]
    fn t_composed_full_cycle_is_relation() {
        // composing the t map n+1 times multiplies every summand by f
        for n in 1..=3usize {
            let f = product_of_coordinates(n);
            let mut acc = pushforward_of_t(n, &f, 0).unwrap();
            for step in 1..=n as i64 {
                acc = acc.then(&pushforward_of_t(n, &f, step).unwrap()).unwrap();
            }
            for l in 0..=n {
                for k in 0..=n {
                    if l == k {
                        assert_eq!(acc.block(l, k), &f, "n={n} diag {l}");
                    } else {
                        assert!(acc.block(l, k).is_zero(), "n={n} off-diag ({l},{k})");
                    }
                }
            }
        }
    }

    #[test]
    fn t_composed_cycle_for_general_f() {
        // the relation argument does not use the product structure of f
        let ctx = VarContext::x_vars(3);
        let cube =
            LaurentPolynomial::monomial(ctx.clone(), Exponent(vec![3, 0, 0]), BigRational::one());
        let f = cube.add(&product_of_coordinates(2)).unwrap();
        let mut acc = pushforward_of_t(2, &f, 0).unwrap();
        for step in 1..=2 {
            acc = acc.then(&pushforward_of_t(2, &f, step).unwrap()).unwrap();
        }
        for l in 0..=2 {
            for k in 0..=2 {
                if l == k {
                    assert_eq!(acc.block(l, k), &f);
                } else {
                    assert!(acc.block(l, k).is_zero());
                }
            }
        }
    }

    #[test]
    fn monomial_pushforward_of_t_matches_block_map() {
        let m = RingMonomial::t(2);
        let viat = pushforward_of_t(2, &product_of_coordinates(2), 0).unwrap();
        let viam = pushforward_of_monomial(&m, 0, 1).unwrap();
        assert_eq!(viat, viam);
    }

    #[test]
    fn monomial_pushforward_is_diagonal_for_x() {
        let m = RingMonomial::x(2, 1);
        let b = pushforward_of_monomial(&m, 0, 1).unwrap();
        for k in 0..=2 {
            let entry = b.block(k, k);
            assert_eq!(entry.num_terms(), 1);
            let (e, _) = entry.terms().next().unwrap();
            assert_eq!(e.0, vec![0, 1, 0]);
        }
    }

    #[test]
    fn monomial_pushforward_degree_two_n1() {
        // n=1, m = t x0 of degree 2: two entries of torus weight (-1)
        let m = RingMonomial::normal_form(1, 1, &[1, 0]).unwrap();
        let b = pushforward_of_monomial(&m, 0, 2).unwrap();
        // k=0: t stays visible, entry x0 into summand 1
        let (e, _) = b.block(1, 0).terms().next().unwrap();
        assert_eq!(e.0, vec![1, 0]);
        // k=1: relation folds, entry x0 * (x0 x1) into summand 0
        let (e, _) = b.block(0, 1).terms().next().unwrap();
        assert_eq!(e.0, vec![2, 1]);
        assert!(b.degrees_consistent());
    }

    #[test]
    fn monomial_pushforward_rejects_degree_mismatch() {
        let m = RingMonomial::t(2);
        assert!(pushforward_of_monomial(&m, 0, 3).is_err());
    }

    #[test]
    fn pushforward_respects_products() {
        for n in 1..=3usize {
            let mut pool = Vec::new();
            for d in 0..=2u64 {
                pool.extend(basis(n, d));
            }
            for m1 in &pool {
                for m2 in &pool {
                    if m1.total_degree() + m2.total_degree() > 4 {
                        continue;
                    }
                    let d1 = m1.total_degree() as i64;
                    let d2 = m2.total_degree() as i64;
                    let prod = m1.mul(m2).unwrap();
                    let lhs = pushforward_of_monomial(&prod, 0, d1 + d2).unwrap();
                    let rhs = pushforward_of_monomial(m1, 0, d1)
                        .unwrap()
                        .then(&pushforward_of_monomial(m2, d1, d1 + d2).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "n={n} {m1:?} * {m2:?}");
                }
            }
        }
    }
}
