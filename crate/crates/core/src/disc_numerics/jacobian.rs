//! Regularity of the jet map at the fully-tangent configuration.
//!
//! Degree-`d` disc endomorphisms normalized by `v(1) = 1` are parametrized
//! by the elementary symmetric functions `lambda_1..lambda_d` of their
//! centers. The jet map sends `lambda` to the first `d` derivatives at the
//! origin; at `lambda = 0` its anti-holomorphic differential vanishes and
//! its holomorphic differential is a signed permutation (up to factorial
//! column scales), so `0` is a regular value.

use super::series::Taylor;
use super::NumericsError;
use crate::linalg::det_magnitude;
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Jet of the normalized product with symmetric-function coordinates
/// `lambda`: value and first `d - 1` derivatives at the origin.
pub fn jet_at(lambda: &[Complex64]) -> Vec<Complex64> {
    let d = lambda.len();
    let order = d - 1;
    // numerator prod (z - a_k): coefficient of z^{d-i} is (-1)^i lambda_i
    let mut num = Taylor::zero(order);
    for i in 1..=d {
        let m = d - i;
        if m <= order {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            num.coeffs[m] = sign * lambda[i - 1];
        }
    }
    // denominator prod (1 - conj(a_k) z): coefficient of z^i is
    // (-1)^i conj(lambda_i)
    let mut den = Taylor::zero(order);
    den.coeffs[0] = Complex64::ONE;
    for i in 1..=order {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        den.coeffs[i] = sign * lambda[i - 1].conj();
    }
    // normalization v(1) = 1
    let mut num_at_one = Complex64::ONE;
    let mut den_at_one = Complex64::ONE;
    for i in 1..=d {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        num_at_one += sign * lambda[i - 1];
        den_at_one += sign * lambda[i - 1].conj();
    }
    let scale = den_at_one / num_at_one;
    num.mul(&den.inverse()).scale(scale).derivatives()
}

#[derive(Debug, Clone)]
pub struct JetJacobianReport {
    pub d: usize,
    /// rows are jet slots `0..d`, columns are `lambda_1..lambda_d`
    pub holomorphic: Vec<Vec<Complex64>>,
    pub antiholomorphic: Vec<Vec<Complex64>>,
    pub antiholomorphic_max: f64,
    /// dominant jet slot per column, as observed
    pub observed_slots: Vec<usize>,
    pub det_magnitude: f64,
    pub signed_permutation: bool,
    pub regular: bool,
}

impl Serialize for JetJacobianReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        fn grid(m: &[Vec<Complex64>]) -> Vec<Vec<[f64; 2]>> {
            m.iter()
                .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
                .collect()
        }
        let mut st = s.serialize_struct("JetJacobianReport", 7)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("holomorphic", &grid(&self.holomorphic))?;
        st.serialize_field("antiholomorphic_max", &self.antiholomorphic_max)?;
        st.serialize_field("observed_slots", &self.observed_slots)?;
        st.serialize_field("det_magnitude", &self.det_magnitude)?;
        st.serialize_field("signed_permutation", &self.signed_permutation)?;
        st.serialize_field("regular", &self.regular)?;
        st.end()
    }
}

const FD_STEP: f64 = 1e-4;

fn factorial(k: usize) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

/// Central difference with one Richardson step (`h` and `h/2`), erroring
/// out when the two estimates disagree.
fn richardson(
    f: &impl Fn(Complex64) -> Vec<Complex64>,
    column: usize,
    direction: &'static str,
    step: Complex64,
) -> Result<Vec<Complex64>, NumericsError> {
    let diff = |h: f64| -> Vec<Complex64> {
        let plus = f(step * h);
        let minus = f(-step * h);
        plus.iter()
            .zip(&minus)
            .map(|(p, m)| (p - m) / (2.0 * h))
            .collect()
    };
    let coarse = diff(FD_STEP);
    let fine = diff(FD_STEP / 2.0);
    let disagreement = coarse
        .iter()
        .zip(&fine)
        .map(|(c, v)| (c - v).norm())
        .fold(0.0f64, f64::max);
    if disagreement > 1e-3 {
        return Err(NumericsError::FdNotConverged {
            column,
            direction,
            disagreement,
        });
    }
    Ok(fine
        .iter()
        .zip(&coarse)
        .map(|(f4, f1)| (4.0 * f4 - f1) / 3.0)
        .collect())
}

/// Finite-difference Wirtinger Jacobian of the jet map at `lambda = 0`.
pub fn jet_jacobian_at_zero(d: usize, fd_tol: f64) -> Result<JetJacobianReport, NumericsError> {
    if d == 0 {
        return Err(NumericsError::Argument("degree must be positive".into()));
    }
    let base = jet_at(&vec![Complex64::ZERO; d]);
    debug_assert!(base.iter().all(|c| c.norm() < 1e-12));

    let mut hol = vec![vec![Complex64::ZERO; d]; d];
    let mut antihol = vec![vec![Complex64::ZERO; d]; d];
    for col in 0..d {
        let probe = |delta: Complex64| {
            let mut lambda = vec![Complex64::ZERO; d];
            lambda[col] = delta;
            jet_at(&lambda)
        };
        let dx = richardson(&probe, col, "re", Complex64::ONE)?;
        let dy = richardson(&probe, col, "im", Complex64::I)?;
        for row in 0..d {
            hol[row][col] = (dx[row] - Complex64::I * dy[row]) / 2.0;
            antihol[row][col] = (dx[row] + Complex64::I * dy[row]) / 2.0;
        }
    }

    let antiholomorphic_max = antihol
        .iter()
        .flatten()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max);

    // expected structure: column i (1-based) hits jet slot d - i with value
    // (-1)^i (d - i)!
    let mut signed_permutation = true;
    let mut observed_slots = Vec::with_capacity(d);
    for col in 0..d {
        let i = col + 1;
        let expected_slot = d - i;
        let expected = {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(sign * factorial(d - i), 0.0)
        };
        let (slot, _) = hol
            .iter()
            .enumerate()
            .map(|(r, row)| (r, row[col].norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        observed_slots.push(slot);
        if slot != expected_slot {
            signed_permutation = false;
            continue;
        }
        if (hol[slot][col] - expected).norm() > 1e-3 * expected.norm().max(1.0) {
            signed_permutation = false;
        }
        for (r, row) in hol.iter().enumerate() {
            if r != slot && row[col].norm() > fd_tol {
                signed_permutation = false;
            }
        }
    }

    let det = det_magnitude(&hol);
    let det_floor: f64 = 0.5 * (0..d).map(factorial).product::<f64>();
    let regular = signed_permutation && antiholomorphic_max <= fd_tol && det >= det_floor;

    Ok(JetJacobianReport {
        d,
        holomorphic: hol,
        antiholomorphic: antihol,
        antiholomorphic_max,
        observed_slots,
        det_magnitude: det,
        signed_permutation,
        regular,
    })
}
