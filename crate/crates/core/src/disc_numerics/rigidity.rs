//! Rigidity of the fully-tangent configuration at the degenerate divisor:
//! a product of n+1 degree-one disc maps whose jet vanishes to order n at
//! the origin must have every center at the origin.
//!
//! Each trial samples a random tuple of degree-one factors, drives it into
//! the tangency condition with a damped Newton solve, and checks that only
//! the center-zero solution is recovered. The solve runs in the elementary
//! symmetric functions of the centers, where the jet map's differential is
//! invertible at the solution (see [`super::jet_jacobian_at_zero`]); in the
//! raw centers the root has multiplicity and a small residual would not pin
//! the centers down.

use super::series::Taylor;
use crate::linalg::{lu_solve, polynomial_roots};
use crate::par::map_indexed;
use crate::seeds;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct RigidityConfig {
    pub trials: usize,
    pub seed: u64,
    /// recovered centers must be within this of zero
    pub center_tol: f64,
    /// jet residual treated as solved
    pub residual_tol: f64,
    pub max_iter: usize,
    /// fresh restarts allowed per trial before reporting non-convergence
    pub attempts: usize,
}

impl Default for RigidityConfig {
    fn default() -> Self {
        RigidityConfig {
            trials: 100,
            seed: 0,
            center_tol: 1e-8,
            residual_tol: 1e-40,
            max_iter: 120,
            attempts: 5,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub converged: bool,
    pub attempts_used: usize,
    pub residual: f64,
    pub max_center_norm: f64,
    pub recovered_zero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RigidityReport {
    pub n: usize,
    pub config: RigidityConfig,
    pub outcomes: Vec<TrialOutcome>,
    pub converged: usize,
    pub unconverged_trials: Vec<usize>,
    /// largest recovered center over converged trials
    pub max_center_norm: f64,
    /// every trial converged and recovered only centers at zero
    pub all_pass: bool,
}

/// Taylor coefficients through order `n` of the degree n+1 product written
/// in symmetric-function coordinates: numerator `sum (-1)^i lambda_i
/// z^{d-i}`, denominator `sum (-1)^i conj(lambda_i) z^i`, `lambda_0 = 1`.
/// Vanishing of all of them is the order-n tangency condition.
fn tangency_residual(xi: Complex64, lambda: &[Complex64], order: usize) -> Vec<Complex64> {
    let d = lambda.len();
    let mut num = Taylor::zero(order);
    for i in 1..=d {
        let m = d - i;
        if m <= order {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            num.coeffs[m] = sign * lambda[i - 1];
        }
    }
    if d <= order {
        num.coeffs[d] = Complex64::ONE;
    }
    let mut den = Taylor::zero(order);
    den.coeffs[0] = Complex64::ONE;
    for i in 1..=order.min(d) {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        den.coeffs[i] = sign * lambda[i - 1].conj();
    }
    num.mul(&den.inverse()).scale(xi).coeffs
}

/// Elementary symmetric functions of the centers.
fn symmetric_functions(centers: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::ZERO; centers.len() + 1];
    e[0] = Complex64::ONE;
    for (k, &a) in centers.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            let prev = e[j - 1];
            e[j] += a * prev;
        }
    }
    e.remove(0);
    e
}

/// Centers back from symmetric functions: roots of
/// `z^d - lambda_1 z^{d-1} + ... + (-1)^d lambda_d`.
fn centers_from_symmetric(lambda: &[Complex64]) -> Vec<Complex64> {
    let d = lambda.len();
    let mut coeffs = Vec::with_capacity(d + 1);
    coeffs.push(Complex64::ONE);
    for (i, &l) in lambda.iter().enumerate() {
        let sign = if (i + 1) % 2 == 0 { 1.0 } else { -1.0 };
        coeffs.push(sign * l);
    }
    polynomial_roots(&coeffs)
}

fn pack(v: &[Complex64]) -> Vec<f64> {
    v.iter().flat_map(|c| [c.re, c.im]).collect()
}

fn unpack(x: &[f64]) -> Vec<Complex64> {
    x.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect()
}

fn residual_real(xi: Complex64, x: &[f64], order: usize) -> Vec<f64> {
    tangency_residual(xi, &unpack(x), order)
        .iter()
        .flat_map(|c| [c.re, c.im])
        .collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Damped Newton on the packed real system with a central-difference
/// Jacobian. Quadratic near the solution since the differential there is
/// invertible, so the residual can be driven far below the center
/// tolerance raised to the degree.
fn solve_tangency(
    xi: Complex64,
    start: &[Complex64],
    order: usize,
    tol: f64,
    max_iter: usize,
) -> Option<(Vec<Complex64>, f64)> {
    let dim = 2 * start.len();
    let mut x = pack(start);
    let mut res = residual_real(xi, &x, order);
    for _ in 0..max_iter {
        let r = norm(&res);
        if r < tol {
            return Some((unpack(&x), r));
        }
        let h = 1e-7;
        let mut jac = vec![vec![Complex64::ZERO; dim]; dim];
        for col in 0..dim {
            let mut xp = x.clone();
            xp[col] += h;
            let mut xm = x.clone();
            xm[col] -= h;
            let rp = residual_real(xi, &xp, order);
            let rm = residual_real(xi, &xm, order);
            for row in 0..dim {
                jac[row][col] = Complex64::new((rp[row] - rm[row]) / (2.0 * h), 0.0);
            }
        }
        let rhs: Vec<Complex64> = res.iter().map(|&v| Complex64::new(-v, 0.0)).collect();
        let step = lu_solve(&jac, &rhs)?;
        let mut t = 1.0f64;
        let mut accepted = false;
        for _ in 0..40 {
            let candidate: Vec<f64> = x.iter().zip(&step).map(|(&xv, s)| xv + t * s.re).collect();
            let cand_res = residual_real(xi, &candidate, order);
            if norm(&cand_res) < (1.0 - 1e-4 * t) * r {
                x = candidate;
                res = cand_res;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    None
}

fn sample_disc(rng: &mut impl Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random_range(0.0f64..1.0).sqrt();
    let theta = rng.random_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, theta)
}

/// Run `trials` independent tangency solves for tuples of n+1 degree-one
/// factors. Trials run in parallel; per-trial seeds derive from the master
/// seed and the trial index.
pub fn spherical_rigidity_check(n: usize, config: &RigidityConfig) -> RigidityReport {
    let order = n;
    let factors = n + 1;
    let outcomes: Vec<TrialOutcome> = map_indexed(config.trials, |trial| {
        for attempt in 0..config.attempts {
            let mut rng = seeds::stream(config.seed, ((trial as u64) << 8) | attempt as u64);
            // per-factor unit scalars only multiply into one overall phase
            let xi = (0..factors)
                .map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
                .product::<Complex64>();
            let centers: Vec<Complex64> =
                (0..factors).map(|_| sample_disc(&mut rng, 0.9)).collect();
            let start = symmetric_functions(&centers);
            if let Some((lambda, residual)) =
                solve_tangency(xi, &start, order, config.residual_tol, config.max_iter)
            {
                let recovered = centers_from_symmetric(&lambda);
                let max_center_norm = recovered.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
                return TrialOutcome {
                    trial,
                    converged: true,
                    attempts_used: attempt + 1,
                    residual,
                    max_center_norm,
                    recovered_zero: max_center_norm <= config.center_tol,
                };
            }
        }
        TrialOutcome {
            trial,
            converged: false,
            attempts_used: config.attempts,
            residual: f64::NAN,
            max_center_norm: f64::NAN,
            recovered_zero: false,
        }
    });

    let converged = outcomes.iter().filter(|o| o.converged).count();
    let unconverged_trials: Vec<usize> = outcomes
        .iter()
        .filter(|o| !o.converged)
        .map(|o| o.trial)
        .collect();
    let max_center_norm = outcomes
        .iter()
        .filter(|o| o.converged)
        .map(|o| o.max_center_norm)
        .fold(0.0f64, f64::max);
    let all_pass = outcomes.iter().all(|o| o.converged && o.recovered_zero);

    RigidityReport {
        n,
        config: config.clone(),
        outcomes,
        converged,
        unconverged_trials,
        max_center_norm,
        all_pass,
    }
}
