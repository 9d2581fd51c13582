//! Numerical and exact checks for the covering geometry: Blaschke products
//! and their jets, regularity of the jet map, rigidity of the fully-tangent
//! configuration, and the branch-degree and Maslov-number calculators.

mod blaschke;
mod jacobian;
mod rigidity;
pub mod series;

pub use blaschke::{BlaschkeProduct, JetVector};
pub use jacobian::{jet_at, jet_jacobian_at_zero, JetJacobianReport};
pub use rigidity::{spherical_rigidity_check, RigidityConfig, RigidityReport, TrialOutcome};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("scalar has modulus {0}, expected 1")]
    NotUnitModulus(f64),
    #[error("center has modulus {0}, must lie strictly inside the disc")]
    CenterOutsideDisc(f64),
    #[error(
        "finite differences did not converge (column {column}, {direction} direction, \
         disagreement {disagreement:e})"
    )]
    FdNotConverged {
        column: usize,
        direction: &'static str,
        disagreement: f64,
    },
    #[error("{0}")]
    Argument(String),
}

/// Input for the branch-degree formula: ambient dimension `n`, the
/// very-ampleness multiple `m` of the anticanonical class used for the
/// projection, and the degree of the covering variety.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BranchData {
    pub n: usize,
    pub m: u64,
    pub deg_x: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchDegree {
    /// exact value of `(n + 1 - 1/m) * deg_x`
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    pub is_integer: bool,
    /// meaningful only when the value is an integer
    pub divisible_by_n_plus_1: bool,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Degree of the branch hypersurface of a projection produced by the `m`-th
/// anticanonical linear system.
pub fn branch_degree(bd: &BranchData) -> Result<BranchDegree, NumericsError> {
    if bd.m == 0 || bd.deg_x == 0 {
        return Err(NumericsError::Argument(
            "multiple and degree must be positive".into(),
        ));
    }
    let span = BigInt::from(bd.n as u64 + 1);
    let m = BigInt::from(bd.m);
    let value = BigRational::new((&span * &m - 1) * BigInt::from(bd.deg_x), m);
    let is_integer = value.is_integer();
    let divisible = is_integer && (value.to_integer() % span).is_zero();
    Ok(BranchDegree {
        value,
        is_integer,
        divisible_by_n_plus_1: divisible,
    })
}

/// Maslov number of a disc upstairs in terms of its projection: the base
/// Maslov number loses `(2/deg B)(n + 1 - 1/m)` per intersection with the
/// branch hypersurface. Exact rational arithmetic throughout.
pub fn maslov_in_cover(
    n: usize,
    m: u64,
    deg_b: &BigRational,
    mu_base: &BigRational,
    v_dot_b: i64,
) -> Result<BigRational, NumericsError> {
    if !deg_b.is_positive() {
        return Err(NumericsError::Argument(
            "branch degree must be positive".into(),
        ));
    }
    if m == 0 {
        return Err(NumericsError::Argument("multiple must be positive".into()));
    }
    let slope = BigRational::new(BigInt::from((n as u64 + 1) * m - 1), BigInt::from(m));
    let correction = BigRational::from_integer(BigInt::from(2 * v_dot_b)) * slope / deg_b;
    Ok(mu_base - correction)
}
