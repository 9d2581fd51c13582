//! Clifford algebra of a symmetric bilinear form, as an explicit
//! multiplication table on the subset basis.

use crate::linalg::rational_rank;
use crate::par::map_indexed;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Element written over the blade basis: bitmask of generators -> rational
/// coefficient, zero coefficients never stored.
pub type CliffordElement = BTreeMap<u32, BigRational>;

fn add_term(out: &mut CliffordElement, blade: u32, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match out.entry(blade) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get() + &c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// The algebra generated by `e_1..e_n` with `e_i e_j + e_j e_i = 2 B(i,j)`,
/// realized as a full blade-by-blade product table.
#[derive(Debug, Clone)]
pub struct CliffordAlgebra {
    n: usize,
    form: Vec<Vec<BigRational>>,
    table: Vec<Vec<CliffordElement>>,
    nondegenerate: bool,
}

/// Build the table from a symmetric rational form. Degenerate forms are
/// allowed; nondegeneracy is reported as a flag.
pub fn clifford_from_form(form: &[Vec<BigRational>]) -> CliffordAlgebra {
    let n = form.len();
    for row in form {
        assert_eq!(row.len(), n, "form must be square");
    }
    for (i, row) in form.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            assert_eq!(entry, &form[j][i], "form must be symmetric");
        }
    }
    let dim = 1usize << n;

    // blade * generator, filled in mask order so recursions hit earlier rows
    let mut blade_gen: Vec<Vec<CliffordElement>> = vec![vec![CliffordElement::new(); n]; dim];
    for mask in 0..dim as u32 {
        for i in 0..n {
            blade_gen[mask as usize][i] = blade_times_gen(mask, i, form, &blade_gen);
        }
    }

    let rows = map_indexed(dim, |a| {
        (0..dim as u32)
            .map(|b| blade_times_blade(a as u32, b, &blade_gen))
            .collect::<Vec<_>>()
    });

    CliffordAlgebra {
        n,
        form: form.to_vec(),
        table: rows,
        nondegenerate: rational_rank(form) == n,
    }
}

/// `e_S * e_i` with `S` a sorted blade. Either appends, squares off the top
/// generator, or swaps it past with the anticommutation correction.
fn blade_times_gen(
    mask: u32,
    i: usize,
    form: &[Vec<BigRational>],
    memo: &[Vec<CliffordElement>],
) -> CliffordElement {
    let mut out = CliffordElement::new();
    if mask == 0 {
        add_term(&mut out, 1 << i, BigRational::from_integer(1.into()));
        return out;
    }
    let top = 31 - mask.leading_zeros() as usize;
    let rest = mask & !(1u32 << top);
    if top < i {
        add_term(
            &mut out,
            mask | (1 << i),
            BigRational::from_integer(1.into()),
        );
    } else if top == i {
        add_term(&mut out, rest, form[i][i].clone());
    } else {
        // e_rest (e_top e_i) = 2B(top,i) e_rest - (e_rest e_i) e_top
        add_term(
            &mut out,
            rest,
            &form[top][i] * BigRational::from_integer(2.into()),
        );
        for (blade, c) in &memo[rest as usize][i] {
            // every blade here lies below `top`, so e_top appends cleanly
            debug_assert!(blade & (1 << top) == 0 && *blade < (1 << top));
            add_term(&mut out, blade | (1 << top), -c.clone());
        }
    }
    out
}

fn blade_times_blade(a: u32, b: u32, blade_gen: &[Vec<CliffordElement>]) -> CliffordElement {
    let mut acc = CliffordElement::new();
    add_term(&mut acc, a, BigRational::from_integer(1.into()));
    let mut rem = b;
    while rem != 0 {
        let i = rem.trailing_zeros() as usize;
        rem &= rem - 1;
        let mut next = CliffordElement::new();
        for (blade, c) in &acc {
            for (nb, nc) in &blade_gen[*blade as usize][i] {
                add_term(&mut next, *nb, c * nc);
            }
        }
        acc = next;
    }
    acc
}

impl CliffordAlgebra {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn form(&self) -> &[Vec<BigRational>] {
        &self.form
    }

    pub fn nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    /// Product of two basis blades, straight from the table.
    pub fn blade_product(&self, a: u32, b: u32) -> &CliffordElement {
        &self.table[a as usize][b as usize]
    }

    /// Bilinear extension of the table to arbitrary elements.
    pub fn mul(&self, x: &CliffordElement, y: &CliffordElement) -> CliffordElement {
        let mut out = CliffordElement::new();
        for (a, ca) in x {
            for (b, cb) in y {
                for (blade, c) in self.blade_product(*a, *b) {
                    add_term(&mut out, *blade, c * &(ca * cb));
                }
            }
        }
        out
    }

    /// `e_i e_j + e_j e_i = 2 B(i,j)` on every generator pair.
    pub fn generator_relations_hold(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                let ei = 1u32 << i;
                let ej = 1u32 << j;
                let mut anti = self.blade_product(ei, ej).clone();
                for (blade, c) in self.blade_product(ej, ei) {
                    add_term(&mut anti, *blade, c.clone());
                }
                let mut expected = CliffordElement::new();
                add_term(
                    &mut expected,
                    0,
                    &self.form[i][j] * BigRational::from_integer(2.into()),
                );
                if anti != expected {
                    return false;
                }
            }
        }
        true
    }

    /// `(e_a e_b) e_c = e_a (e_b e_c)` over all basis triples.
    pub fn associative_on_basis(&self) -> bool {
        let dim = self.dim() as u32;
        let per_a = map_indexed(dim as usize, |a| {
            let a = a as u32;
            for b in 0..dim {
                let ab = self.blade_product(a, b);
                for c in 0..dim {
                    let mut left = CliffordElement::new();
                    for (blade, coeff) in ab {
                        for (nb, nc) in self.blade_product(*blade, c) {
                            add_term(&mut left, *nb, coeff * nc);
                        }
                    }
                    let bc = self.blade_product(b, c);
                    let mut right = CliffordElement::new();
                    for (blade, coeff) in bc {
                        for (nb, nc) in self.blade_product(a, *blade) {
                            add_term(&mut right, *nb, coeff * nc);
                        }
                    }
                    if left != right {
                        return false;
                    }
                }
            }
            true
        });
        per_a.into_iter().all(|ok| ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn zero_form(n: usize) -> Vec<Vec<BigRational>> {
        vec![vec![rat(0); n]; n]
    }

    fn identity_form(n: usize) -> Vec<Vec<BigRational>> {
        (0..n)
            .map(|i| (0..n).map(|j| rat(i64::from(i == j))).collect())
            .collect()
    }

    #[test]
    fn zero_form_gives_exterior_algebra() {
        let alg = clifford_from_form(&zero_form(3));
        assert!(!alg.nondegenerate());
        for i in 0..3 {
            let e = 1u32 << i;
            assert!(alg.blade_product(e, e).is_empty(), "e_{i}^2 = 0");
        }
        assert!(alg.generator_relations_hold());
        assert!(alg.associative_on_basis());
    }

    #[test]
    fn rank_one_identity_form() {
        let alg = clifford_from_form(&identity_form(1));
        assert_eq!(alg.dim(), 2);
        let sq = alg.blade_product(1, 1);
        assert_eq!(sq.len(), 1);
        assert_eq!(sq[&0], rat(1));
        assert!(alg.nondegenerate());
    }

    #[test]
    fn anticommutation_signs() {
        let alg = clifford_from_form(&identity_form(2));
        // e1 e2 = blade {1,2}; e2 e1 = -blade {1,2}
        let fwd = alg.blade_product(0b01, 0b10);
        let bwd = alg.blade_product(0b10, 0b01);
        assert_eq!(fwd[&0b11], rat(1));
        assert_eq!(bwd[&0b11], rat(-1));
    }

    #[test]
    fn element_product_difference_of_squares() {
        // (1 + e_1)(1 - e_1) = 1 - B(1,1)
        let mut form = identity_form(2);
        form[0][0] = rat(5);
        let alg = clifford_from_form(&form);
        let mut plus = CliffordElement::new();
        plus.insert(0, rat(1));
        plus.insert(0b01, rat(1));
        let mut minus = CliffordElement::new();
        minus.insert(0, rat(1));
        minus.insert(0b01, rat(-1));
        let prod = alg.mul(&plus, &minus);
        let mut expected = CliffordElement::new();
        expected.insert(0, rat(1) - rat(5));
        assert_eq!(prod, expected);
    }

    #[test]
    fn hessian_form_checks() {
        use crate::superpotential::hessian_at_symmetric_point;
        let alg = clifford_from_form(&hessian_at_symmetric_point(2));
        assert!(alg.nondegenerate());
        assert!(alg.generator_relations_hold());
        assert!(alg.associative_on_basis());
    }

    #[test]
    fn off_diagonal_form_still_associative() {
        let mut form = identity_form(3);
        form[0][1] = rat(5);
        form[1][0] = rat(5);
        form[2][0] = rat(-2);
        form[0][2] = rat(-2);
        let alg = clifford_from_form(&form);
        assert!(alg.generator_relations_hold());
        assert!(alg.associative_on_basis());
    }
}
