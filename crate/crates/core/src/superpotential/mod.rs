//! The superpotential of the central torus fiber and its disc-count
//! combinatorics: exact construction of `W`, `W_cl` and the shifted
//! numerator form, the covering-pullback identity, the table of
//! minimal-Maslov disc counts, and the count identity that ties the table
//! to the expansion of `(z_0 + ... + z_n)^{n+1}`.

mod clifford;
mod hessian;
mod solver;

pub use clifford::{clifford_from_form, CliffordAlgebra, CliffordElement};
pub use hessian::{hessian_at_symmetric_point, hessian_closed_form, hessian_determinant};
pub use solver::{
    critical_points, expected_small_value, ClusteredValue, CriticalPoint, CriticalReport,
    SolverConfig,
};

use crate::exact_poly::{multinomial, Exponent, LaurentPolynomial, VarContext};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

/// `(n+1)!` as a big integer.
pub fn shift_constant(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=(n as u64 + 1) {
        acc *= BigInt::from(k);
    }
    acc
}

/// The superpotential `W = (1 + y_1 + ... + y_n)^{n+1} / (y_1 ... y_n)
/// - (n+1)!` as an exact Laurent polynomial in `y_1..y_n`.
pub fn build_w(n: usize) -> LaurentPolynomial {
    assert!(n >= 1, "dimension must be positive");
    build_w_hat(n)
        .sub(&LaurentPolynomial::constant(
            VarContext::y_vars(n),
            BigRational::from_integer(shift_constant(n)),
        ))
        .expect("same context")
}

/// The shifted numerator form `W + (n+1)! = (1 + y_1 + ... + y_n)^{n+1}
/// / (y_1 ... y_n)`.
pub fn build_w_hat(n: usize) -> LaurentPolynomial {
    assert!(n >= 1, "dimension must be positive");
    let ctx = VarContext::y_vars(n);
    let mut s = LaurentPolynomial::constant(ctx.clone(), BigRational::one());
    for i in 0..n {
        s = s
            .add(&LaurentPolynomial::var(ctx.clone(), i))
            .expect("same context");
    }
    let inv_prod =
        LaurentPolynomial::monomial(ctx.clone(), Exponent(vec![-1; n]), BigRational::one());
    s.pow(n as u32 + 1).mul(&inv_prod).expect("same context")
}

/// The classical-torus superpotential `y_1 + ... + y_n + 1/(y_1 ... y_n)`.
pub fn build_w_cl(n: usize) -> LaurentPolynomial {
    assert!(n >= 1, "dimension must be positive");
    let ctx = VarContext::y_vars(n);
    let mut s = LaurentPolynomial::monomial(ctx.clone(), Exponent(vec![-1; n]), BigRational::one());
    for i in 0..n {
        s = s
            .add(&LaurentPolynomial::var(ctx.clone(), i))
            .expect("same context");
    }
    s
}

/// Pullback of the shifted superpotential along the cyclic covering
/// `y_i -> y_i * (y_1 ... y_n)`. Equal to `build_w_cl(n)^{n+1}` exactly.
pub fn covering_pullback(n: usize) -> LaurentPolynomial {
    let ctx = VarContext::y_vars(n);
    let images: Vec<LaurentPolynomial> = (0..n)
        .map(|i| {
            let mut e = vec![1i64; n];
            e[i] = 2;
            LaurentPolynomial::monomial(ctx.clone(), Exponent(e), BigRational::one())
        })
        .collect();
    build_w_hat(n).substitute(&images).expect("monomial images")
}

/// A relative disc class recorded by its intersection numbers with the
/// coordinate hyperplanes. The Maslov number is twice their sum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DiscClass {
    pub alpha: Vec<u64>,
}

impl DiscClass {
    pub fn maslov(&self) -> u64 {
        2 * self.alpha.iter().sum::<u64>()
    }

    /// The unique minimal class hitting every hyperplane once.
    pub fn is_spherical(&self) -> bool {
        self.alpha.iter().all(|&a| a == 1)
    }
}

/// Counts of minimal-Maslov discs per class: the spherical class counts
/// zero, every other class counts the multinomial coefficient of its
/// intersection vector.
#[derive(Debug, Clone)]
pub struct DiscCountTable {
    pub n: usize,
    pub rows: BTreeMap<DiscClass, BigUint>,
}

impl DiscCountTable {
    pub fn count(&self, alpha: &[u64]) -> Option<&BigUint> {
        self.rows.get(&DiscClass {
            alpha: alpha.to_vec(),
        })
    }

    /// Sum of all counts: `(n+1)^{n+1} - (n+1)!`.
    pub fn total(&self) -> BigUint {
        let mut acc = BigUint::zero();
        for c in self.rows.values() {
            acc += c;
        }
        acc
    }
}

impl Serialize for DiscCountTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            alpha: &'a [u64],
            count: String,
        }
        let rows: Vec<Row> = self
            .rows
            .iter()
            .map(|(k, v)| Row {
                alpha: &k.alpha,
                count: v.to_string(),
            })
            .collect();
        let mut st = serializer.serialize_struct("DiscCountTable", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

/// Enumerate every class of Maslov number `2(n+1)` with its count.
pub fn disc_counts(n: usize) -> DiscCountTable {
    let total = n as u64 + 1;
    let mut rows = BTreeMap::new();
    let mut alpha = vec![0u64; n + 1];
    enumerate_compositions(total, 0, &mut alpha, &mut |alpha| {
        let class = DiscClass {
            alpha: alpha.to_vec(),
        };
        let count = if class.is_spherical() {
            BigUint::zero()
        } else {
            multinomial(total, alpha).expect("parts sum to total")
        };
        rows.insert(class, count);
    });
    DiscCountTable { n, rows }
}

fn enumerate_compositions(
    remaining: u64,
    idx: usize,
    alpha: &mut Vec<u64>,
    emit: &mut impl FnMut(&[u64]),
) {
    if idx + 1 == alpha.len() {
        alpha[idx] = remaining;
        emit(alpha);
        alpha[idx] = 0;
        return;
    }
    for v in 0..=remaining {
        alpha[idx] = v;
        enumerate_compositions(remaining - v, idx + 1, alpha, emit);
    }
    alpha[idx] = 0;
}

/// Outcome of the count identity: the generating polynomial of the table
/// against the reduction of `(z_0 + ... + z_n)^{n+1} - (n+1)!` modulo
/// `z_0 ... z_n = 1`.
#[derive(Debug, Clone)]
pub struct CountIdentity {
    pub holds: bool,
    pub residual: LaurentPolynomial,
}

pub fn verify_count_identity(n: usize) -> CountIdentity {
    let ctx = VarContext::z_vars(n + 1);
    let table = disc_counts(n);
    let mut lhs = LaurentPolynomial::zero(ctx.clone());
    for (class, count) in &table.rows {
        if count.is_zero() {
            continue;
        }
        let term = LaurentPolynomial::monomial(
            ctx.clone(),
            Exponent(class.alpha.iter().map(|&a| a as i64).collect()),
            BigRational::from_integer(BigInt::from(count.clone())),
        );
        lhs = lhs.add(&term).expect("same context");
    }
    let mut sum = LaurentPolynomial::zero(ctx.clone());
    for i in 0..=n {
        sum = sum
            .add(&LaurentPolynomial::var(ctx.clone(), i))
            .expect("same context");
    }
    let rhs = sum
        .pow(n as u32 + 1)
        .sub(&LaurentPolynomial::constant(
            ctx.clone(),
            BigRational::from_integer(shift_constant(n)),
        ))
        .expect("same context")
        .reduce_mod_product();
    let residual = rhs.sub(&lhs).expect("same context");
    CountIdentity {
        holds: residual.is_zero(),
        residual,
    }
}

/// Exact value of the shifted superpotential at the symmetric point
/// `(1, ..., 1)`; equals `(n+1)^{n+1}`.
pub fn symmetric_point_value(n: usize) -> BigRational {
    let ones = vec![BigRational::one(); n];
    build_w_hat(n)
        .eval_rational(&ones)
        .expect("no zero coordinate")
}
