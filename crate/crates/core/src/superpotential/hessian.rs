//! Exact Hessian of the shifted superpotential at the symmetric point.

use super::build_w_hat;
use crate::linalg::rational_det;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Second-derivative matrix of `W + (n+1)!` at `(1, ..., 1)`, computed by
/// symbolic differentiation of the exact expansion.
#[allow(clippy::needless_range_loop)] // j indexes both triangles of h
pub fn hessian_at_symmetric_point(n: usize) -> Vec<Vec<BigRational>> {
    let w = build_w_hat(n);
    let ones = vec![BigRational::one(); n];
    let grads: Vec<_> = (0..n).map(|i| w.derivative(i)).collect();
    let mut h = vec![vec![BigRational::one(); n]; n];
    for (i, grad) in grads.iter().enumerate() {
        for j in i..n {
            let v = grad
                .derivative(j)
                .eval_rational(&ones)
                .expect("no zero coordinate");
            h[i][j] = v.clone();
            h[j][i] = v;
        }
    }
    h
}

/// Closed form `(n+1)^n ((n+1) delta_ij - 1)`, derived by differentiating
/// the factored gradient by hand; kept as an independent cross-check.
pub fn hessian_closed_form(n: usize) -> Vec<Vec<BigRational>> {
    let scale = BigInt::from(n as u64 + 1).pow(n as u32);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let entry = if i == j { n as i64 } else { -1 };
                    BigRational::from_integer(&scale * BigInt::from(entry))
                })
                .collect()
        })
        .collect()
}

pub fn hessian_determinant(h: &[Vec<BigRational>]) -> BigRational {
    rational_det(h)
}
