//! Multi-start Newton solver for the critical points of the shifted
//! superpotential on the torus `(C*)^n`.
//!
//! Starts are the symmetric point, explicit samples of the degenerate locus
//! `1 + y_1 + ... + y_n = 0` (Newton is unreliable on a positive-dimensional
//! critical set, so its members are sampled rather than discovered), and
//! seeded random points. Starts are independent and evaluated through
//! [`crate::par::map_indexed`], merged in start order.

use super::shift_constant;
use crate::exact_poly::coeff_to_f64;
use crate::linalg::{eigenvalue_magnitudes, lu_solve};
use crate::par::map_indexed;
use crate::seeds;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Serialize)]
pub struct SolverConfig {
    /// random Newton starts, in addition to the deterministic ones
    pub starts: usize,
    /// explicit samples of the degenerate critical locus
    pub hyperplane_samples: usize,
    pub seed: u64,
    /// gradient norm below which a point counts as critical
    pub newton_tol: f64,
    /// values closer than this merge into one cluster
    pub cluster_radius: f64,
    pub max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            starts: 64,
            hyperplane_samples: 8,
            seed: 0,
            newton_tol: 1e-10,
            cluster_radius: 1e-6,
            max_iter: 200,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriticalPoint {
    pub coordinates: Vec<Complex64>,
    pub value: Complex64,
    pub gradient_norm: f64,
    pub hessian_eigenvalue_magnitudes: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct ClusteredValue {
    /// value of the shifted superpotential
    pub value: Complex64,
    /// the same value in the unshifted convention, `value - (n+1)!`
    pub unshifted: Complex64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone)]
pub struct CriticalReport {
    pub n: usize,
    /// one representative per clustered value, in discovery order
    pub points: Vec<CriticalPoint>,
    pub values: Vec<ClusteredValue>,
    pub converged: usize,
    pub divergent: usize,
    /// start indices whose Newton run did not converge (index 0 is the
    /// symmetric point, then the locus samples, then the random starts)
    pub divergent_starts: Vec<usize>,
    pub config: SolverConfig,
}

impl CriticalReport {
    /// True when the clustered values are exactly `{0, (n+1)^{n+1}}` within
    /// `tol`.
    pub fn values_are_expected(&self, tol: f64) -> bool {
        let small = (self.n as f64 + 1.0).powi(self.n as i32 + 1);
        let mut saw_zero = false;
        let mut saw_small = false;
        for v in &self.values {
            if v.value.norm() <= tol {
                saw_zero = true;
            } else if (v.value - Complex64::new(small, 0.0)).norm() <= tol {
                saw_small = true;
            } else {
                return false;
            }
        }
        saw_zero && saw_small
    }
}

fn ser_complex<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &c.re)?;
    st.serialize_field("im", &c.im)?;
    st.end()
}

impl Serialize for CriticalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct C {
            re: f64,
            im: f64,
        }
        let mut st = s.serialize_struct("CriticalPoint", 4)?;
        let coords: Vec<C> = self
            .coordinates
            .iter()
            .map(|c| C { re: c.re, im: c.im })
            .collect();
        st.serialize_field("coordinates", &coords)?;
        st.serialize_field("value", &SerC(self.value))?;
        st.serialize_field("gradient_norm", &self.gradient_norm)?;
        st.serialize_field(
            "hessian_eigenvalue_magnitudes",
            &self.hessian_eigenvalue_magnitudes,
        )?;
        st.end()
    }
}

struct SerC(Complex64);

impl Serialize for SerC {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_complex(&self.0, s)
    }
}

impl Serialize for ClusteredValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ClusteredValue", 3)?;
        st.serialize_field("value", &SerC(self.value))?;
        st.serialize_field("unshifted", &SerC(self.unshifted))?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.end()
    }
}

impl Serialize for CriticalReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CriticalReport", 7)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("points", &self.points)?;
        st.serialize_field("values", &self.values)?;
        st.serialize_field("converged", &self.converged)?;
        st.serialize_field("divergent", &self.divergent)?;
        st.serialize_field("divergent_starts", &self.divergent_starts)?;
        st.serialize_field("config", &self.config)?;
        st.end()
    }
}

/// Evaluator for the shifted superpotential and its derivatives in the
/// factored form `u^{n+1} / P` with `u = 1 + y_1 + ... + y_n` and
/// `P = y_1 ... y_n`.
///
/// The expanded polynomial and its symbolic derivatives define these maps
/// (see the cross-check test below), but evaluating the expansion near the
/// degenerate locus `u = 0` cancels catastrophically — the factored form
/// keeps tiny gradients tiny, so locus samples actually meet the tolerance.
struct FactoredSystem {
    n: usize,
}

impl FactoredSystem {
    fn new(n: usize) -> Self {
        FactoredSystem { n }
    }

    fn parts(&self, y: &[Complex64]) -> (Complex64, Complex64) {
        let u = Complex64::ONE + y.iter().sum::<Complex64>();
        let p = y.iter().product::<Complex64>();
        (u, p)
    }

    /// `u^{n+1} / P`
    fn value(&self, y: &[Complex64]) -> Complex64 {
        let (u, p) = self.parts(y);
        u.powu(self.n as u32 + 1) / p
    }

    /// `d_i = u^n ((n+1) y_i - u) / (y_i P)`
    fn gradient(&self, y: &[Complex64]) -> Vec<Complex64> {
        let (u, p) = self.parts(y);
        let un = u.powu(self.n as u32);
        let scale = (self.n + 1) as f64;
        y.iter()
            .map(|&yi| un * (scale * yi - u) / (yi * p))
            .collect()
    }

    /// `d_j d_i` from the product rule on the factored gradient:
    /// `n u^{n-1} g_i / u-direction + u^n ((n+1) delta_ij - 1) / (y_i P)
    ///  - u^n ((n+1) y_i - u) (delta_ij / y_i + 1 / y_j) / (y_i P)`.
    fn hessian(&self, y: &[Complex64]) -> Vec<Vec<Complex64>> {
        let n = self.n;
        let (u, p) = self.parts(y);
        let un = u.powu(n as u32);
        let unm1 = u.powu(n.saturating_sub(1) as u32);
        let scale = (n + 1) as f64;
        (0..n)
            .map(|i| {
                let yi = y[i];
                let gi_core = scale * yi - u;
                (0..n)
                    .map(|j| {
                        let yj = y[j];
                        let delta = if i == j { 1.0 } else { 0.0 };
                        let first = (n as f64) * unm1 * gi_core / (yi * p);
                        let second = un * (scale * delta - 1.0) / (yi * p);
                        let third = un * gi_core * (delta / yi + yj.inv()) / (yi * p);
                        first + second - third
                    })
                    .collect()
            })
            .collect()
    }
}

fn grad_norm(g: &[Complex64]) -> f64 {
    g.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

enum StartOutcome {
    Converged(CriticalPoint),
    Diverged,
}

fn point_ok(y: &[Complex64]) -> bool {
    y.iter()
        .all(|c| c.re.is_finite() && c.im.is_finite() && c.norm() < 1e7 && c.norm() > 1e-9)
}

/// Backtrack along `step`, accepting the first candidate that lowers the
/// gradient norm. Returns the accepted point and its norm.
fn backtrack(
    system: &FactoredSystem,
    y: &[Complex64],
    gn: f64,
    step: &[Complex64],
) -> Option<(Vec<Complex64>, f64)> {
    let mut t = 1.0f64;
    for _ in 0..30 {
        let candidate: Vec<Complex64> = y.iter().zip(step).map(|(yi, si)| yi + t * si).collect();
        if point_ok(&candidate) {
            let cand_gn = grad_norm(&system.gradient(&candidate));
            if cand_gn < (1.0 - 1e-4 * t) * gn {
                return Some((candidate, cand_gn));
            }
        }
        t *= 0.5;
    }
    None
}

/// Newton on the gradient with backtracking; when the Newton direction
/// stalls (the Hessian is near-singular around the degenerate locus), one
/// steepest-descent step on the squared gradient norm is tried before the
/// start is written off.
fn newton_from(
    system: &FactoredSystem,
    start: &[Complex64],
    config: &SolverConfig,
) -> StartOutcome {
    let mut y: Vec<Complex64> = start.to_vec();
    let mut gn = grad_norm(&system.gradient(&y));
    for _ in 0..config.max_iter {
        if !gn.is_finite() {
            return StartOutcome::Diverged;
        }
        if gn < config.newton_tol {
            let h = system.hessian(&y);
            return StartOutcome::Converged(CriticalPoint {
                coordinates: y.clone(),
                value: system.value(&y),
                gradient_norm: gn,
                hessian_eigenvalue_magnitudes: eigenvalue_magnitudes(&h),
            });
        }
        let g = system.gradient(&y);
        let h = system.hessian(&y);
        let rhs: Vec<Complex64> = g.iter().map(|c| -c).collect();
        let newton = lu_solve(&h, &rhs);
        let accepted = newton
            .and_then(|step| backtrack(system, &y, gn, &step))
            .or_else(|| {
                // descent direction of |g|^2: minus the conjugate Hessian
                // applied to g, rescaled to a unit move
                let mut descent: Vec<Complex64> = (0..y.len())
                    .map(|i| {
                        -(0..y.len())
                            .map(|j| h[i][j].conj() * g[j])
                            .sum::<Complex64>()
                    })
                    .collect();
                let norm = grad_norm(&descent).max(1e-300);
                for d in &mut descent {
                    *d /= norm;
                }
                backtrack(system, &y, gn, &descent)
            });
        match accepted {
            Some((next, next_gn)) => {
                y = next;
                gn = next_gn;
            }
            None => return StartOutcome::Diverged,
        }
    }
    StartOutcome::Diverged
}

fn sample_torus_point(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let r: f64 = rng.random_range(0.4..1.8);
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(r, theta)
        })
        .collect()
}

/// A point with `1 + y_1 + ... + y_n = 0` and all coordinates away from
/// zero. The last coordinate is solved for; degenerate draws are retried.
fn sample_hyperplane_point(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    loop {
        let mut y = sample_torus_point(rng, n.saturating_sub(1));
        let sum: Complex64 = y.iter().sum();
        let last = -Complex64::ONE - sum;
        if last.norm() < 0.1 {
            continue;
        }
        y.push(last);
        return y;
    }
}

/// Run the solver. Divergent starts are counted, never fatal.
pub fn critical_points(n: usize, config: &SolverConfig) -> CriticalReport {
    assert!(n >= 1, "dimension must be positive");
    let system = FactoredSystem::new(n);

    let mut starts: Vec<Vec<Complex64>> = Vec::new();
    starts.push(vec![Complex64::ONE; n]);
    for idx in 0..config.hyperplane_samples {
        let mut rng = seeds::stream(config.seed, 1_000_000 + idx as u64);
        starts.push(sample_hyperplane_point(&mut rng, n));
    }
    for idx in 0..config.starts {
        let mut rng = seeds::stream(config.seed, idx as u64);
        starts.push(sample_torus_point(&mut rng, n));
    }

    let outcomes = map_indexed(starts.len(), |i| newton_from(&system, &starts[i], config));

    let shift = coeff_to_f64(&num_rational::BigRational::from_integer(shift_constant(n)));
    let mut points: Vec<CriticalPoint> = Vec::new();
    let mut values: Vec<ClusteredValue> = Vec::new();
    let mut converged = 0usize;
    let mut divergent_starts: Vec<usize> = Vec::new();
    for (idx, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            StartOutcome::Diverged => divergent_starts.push(idx),
            StartOutcome::Converged(p) => {
                converged += 1;
                if let Some(existing) = values
                    .iter_mut()
                    .find(|v| (v.value - p.value).norm() <= config.cluster_radius)
                {
                    existing.multiplicity += 1;
                } else {
                    values.push(ClusteredValue {
                        value: p.value,
                        unshifted: p.value - Complex64::new(shift, 0.0),
                        multiplicity: 1,
                    });
                    points.push(p);
                }
            }
        }
    }

    CriticalReport {
        n,
        points,
        values,
        converged,
        divergent: divergent_starts.len(),
        divergent_starts,
        config: config.clone(),
    }
}

/// Convenience: `(n+1)^{n+1}` as f64 for tolerance comparisons.
pub fn expected_small_value(n: usize) -> f64 {
    num_bigint::BigInt::from(n as u64 + 1)
        .pow(n as u32 + 1)
        .to_f64()
        .expect("fits")
}
