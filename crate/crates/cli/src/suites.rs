//! Check suites behind the `verify` and `report` subcommands. Each check
//! yields one record; records are later sorted by (id, params), so the
//! assembly order here does not matter.

use crate::config::RunConfig;
use crate::report::CheckRecord;
use mirrorkit_core::coord_ring::{
    basis, graded_dim, product_of_coordinates, pushforward_of_monomial, pushforward_of_t,
};
use mirrorkit_core::disc_numerics::{
    branch_degree, jet_jacobian_at_zero, spherical_rigidity_check, BlaschkeProduct, BranchData,
    RigidityConfig,
};
use mirrorkit_core::fs_combinatorics::{
    a_side_dim, chord_to_monomial, dim_grid, futaki_ueda_euler_zero, psi_decompose,
    psi_degree_multiset_matches, GradingClass,
};
use mirrorkit_core::seeds;
use mirrorkit_core::superpotential::{
    build_w_cl, clifford_from_form, covering_pullback, critical_points, disc_counts,
    hessian_at_symmetric_point, hessian_determinant, shift_constant, symmetric_point_value,
    verify_count_identity, SolverConfig,
};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde_json::json;

/// Largest dimension for which the full basis-triple associativity sweep of
/// the Clifford table stays inside the suite's time budget.
const CLIFFORD_ASSOC_MAX_N: i64 = 5;

pub fn superpotential_suite(cfg: &RunConfig) -> Vec<CheckRecord> {
    let mut checks = Vec::new();
    let solver_config = SolverConfig {
        starts: cfg.trials,
        seed: cfg.seed,
        newton_tol: cfg.newton_tol,
        cluster_radius: cfg.cluster_radius,
        ..SolverConfig::default()
    };
    for n in cfg.n.iter() {
        let n = n as usize;
        let params = json!({ "n": n });

        let diff = covering_pullback(n)
            .sub(&build_w_cl(n).pow(n as u32 + 1))
            .expect("same context");
        checks.push(CheckRecord::new(
            "superpotential/pullback_identity",
            params.clone(),
            diff.is_zero(),
            json!({ "residual_terms": diff.num_terms() }),
        ));

        let identity = verify_count_identity(n);
        checks.push(CheckRecord::new(
            "superpotential/count_identity",
            params.clone(),
            identity.holds,
            json!({ "residual": identity.residual.to_string() }),
        ));

        let table = disc_counts(n);
        let expected_total = BigUint::from(n as u64 + 1).pow(n as u32 + 1)
            - BigUint::try_from(shift_constant(n)).expect("positive");
        let spherical_zero = table
            .count(&vec![1u64; n + 1])
            .map(|c| c.is_zero())
            .unwrap_or(false);
        checks.push(CheckRecord::new(
            "superpotential/count_row_sum",
            params.clone(),
            table.total() == expected_total && spherical_zero,
            json!({
                "total": table.total().to_string(),
                "expected": expected_total.to_string(),
                "classes": table.rows.len(),
            }),
        ));

        let report = critical_points(n, &solver_config);
        let values_ok = report.values_are_expected(1e-8);
        checks.push(CheckRecord::new(
            "superpotential/critical_values",
            params.clone(),
            values_ok,
            serde_json::to_value(&report).expect("report serializes"),
        ));

        let symmetric = symmetric_point_value(n);
        let expected = BigRational::from_integer(BigInt::from(n as u64 + 1).pow(n as u32 + 1));
        checks.push(CheckRecord::new(
            "superpotential/symmetric_value_exact",
            params.clone(),
            symmetric == expected,
            json!({ "value": symmetric.to_string() }),
        ));

        let hessian = hessian_at_symmetric_point(n);
        let det = hessian_determinant(&hessian);
        checks.push(CheckRecord::new(
            "superpotential/hessian_nondegenerate",
            params.clone(),
            !det.is_zero(),
            json!({ "det": det.to_string() }),
        ));

        let algebra = clifford_from_form(&hessian);
        checks.push(CheckRecord::new(
            "superpotential/clifford_relations",
            params.clone(),
            algebra.generator_relations_hold() && algebra.nondegenerate(),
            json!({ "dim": algebra.dim() }),
        ));
        if n as i64 <= CLIFFORD_ASSOC_MAX_N {
            checks.push(CheckRecord::new(
                "superpotential/clifford_associativity",
                params.clone(),
                algebra.associative_on_basis(),
                json!({ "triples": algebra.dim().pow(3) }),
            ));
        } else {
            checks.push(CheckRecord::skip(
                "superpotential/clifford_associativity",
                params.clone(),
                "basis-triple sweep capped at n=5",
            ));
        }
    }
    checks
}

pub fn hms_suite(cfg: &RunConfig) -> Vec<CheckRecord> {
    let mut checks = Vec::new();
    for n in cfg.n.iter() {
        let n = n as usize;
        let params = json!({ "n": n });

        let grid = dim_grid(n, (cfg.i.start, cfg.i.end), (cfg.j.start, cfg.j.end));
        let mismatches: Vec<String> = grid
            .iter()
            .filter(|r| !r.is_match)
            .map(|r| format!("(i={}, j={})", r.i, r.j))
            .collect();
        checks.push(CheckRecord::new(
            "hms/dim_match_grid",
            json!({ "n": n, "i": cfg.i.to_string(), "j": cfg.j.to_string() }),
            mismatches.is_empty(),
            json!({ "cells": grid.len(), "mismatches": mismatches }),
        ));

        let psi_ok = cfg.j.iter().all(|j| psi_degree_multiset_matches(n, j));
        checks.push(CheckRecord::new(
            "hms/psi_degree_multiset",
            json!({ "n": n, "j": cfg.j.to_string() }),
            psi_ok,
            serde_json::Value::Null,
        ));

        let span = n as i64 + 1;
        let serre_ok = cfg.j.iter().all(|j| {
            let twisted = psi_decompose(n, j + span);
            let via: Vec<_> = psi_decompose(n, j)
                .iter()
                .map(|t| t.serre_untwist(n).0)
                .collect();
            twisted == via
        });
        checks.push(CheckRecord::new(
            "hms/serre_twist_consistency",
            json!({ "n": n, "j": cfg.j.to_string() }),
            serre_ok,
            serde_json::Value::Null,
        ));

        let mut injective = true;
        let mut bijective = true;
        for d in 0..=8u64 {
            let all = basis(n, d);
            let tags: std::collections::BTreeSet<_> =
                all.iter().map(|m| m.toric_degree()).collect();
            injective &= tags.len() == all.len();
            let mut hits = std::collections::BTreeSet::new();
            for m in &all {
                let g = GradingClass {
                    v: m.toric_degree().0,
                };
                match chord_to_monomial(n, &g, d as i64) {
                    Some(back) if back == *m => {
                        hits.insert(back);
                    }
                    _ => bijective = false,
                }
            }
            bijective &= hits.len() == all.len();
            bijective &= graded_dim(n, d as i64) == BigUint::from(all.len() as u64);
        }
        checks.push(CheckRecord::new(
            "hms/toric_injectivity",
            json!({ "n": n, "max_degree": 8 }),
            injective,
            serde_json::Value::Null,
        ));
        checks.push(CheckRecord::new(
            "hms/chord_bijection",
            json!({ "n": n, "max_degree": 8 }),
            bijective,
            serde_json::Value::Null,
        ));

        checks.push(CheckRecord::new(
            "hms/futaki_ueda_euler",
            params.clone(),
            futaki_ueda_euler_zero(n),
            serde_json::Value::Null,
        ));

        if n <= 3 {
            let f = product_of_coordinates(n);
            let mut acc = pushforward_of_t(n, &f, 0).expect("valid degree");
            for step in 1..=n as i64 {
                acc = acc
                    .then(&pushforward_of_t(n, &f, step).expect("valid degree"))
                    .expect("twists chain");
            }
            let cycle_ok = (0..=n).all(|l| {
                (0..=n).all(|k| {
                    if l == k {
                        acc.block(l, k) == &f
                    } else {
                        acc.block(l, k).is_zero()
                    }
                })
            });
            checks.push(CheckRecord::new(
                "hms/pushforward_cycle",
                params.clone(),
                cycle_ok,
                serde_json::Value::Null,
            ));

            let mut pool = Vec::new();
            for d in 0..=2u64 {
                pool.extend(basis(n, d));
            }
            let mut mult_ok = true;
            for m1 in &pool {
                for m2 in &pool {
                    if m1.total_degree() + m2.total_degree() > 4 {
                        continue;
                    }
                    let d1 = m1.total_degree() as i64;
                    let d2 = m2.total_degree() as i64;
                    let prod = m1.mul(m2).expect("same dimension");
                    let lhs = pushforward_of_monomial(&prod, 0, d1 + d2).expect("degree");
                    let rhs = pushforward_of_monomial(m1, 0, d1)
                        .expect("degree")
                        .then(&pushforward_of_monomial(m2, d1, d1 + d2).expect("degree"))
                        .expect("twists chain");
                    mult_ok &= lhs == rhs;
                }
            }
            checks.push(CheckRecord::new(
                "hms/pushforward_multiplicative",
                params.clone(),
                mult_ok,
                serde_json::Value::Null,
            ));
        } else {
            checks.push(CheckRecord::skip(
                "hms/pushforward_cycle",
                params.clone(),
                "block-map sweep capped at n=3",
            ));
            checks.push(CheckRecord::skip(
                "hms/pushforward_multiplicative",
                params.clone(),
                "block-map sweep capped at n=3",
            ));
        }

        // spot dictionary rows mirroring the worked examples
        let spot = a_side_dim(n, 0, 1);
        checks.push(CheckRecord::new(
            "hms/dim_spot",
            params.clone(),
            spot.is_match,
            json!({ "i": 0, "j": 1, "a_side": spot.a_side, "b_side": spot.b_side }),
        ));
    }
    checks
}

fn random_blaschke(rng: &mut impl Rng, degree: usize) -> BlaschkeProduct {
    let xi = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    let centers = (0..degree)
        .map(|_| {
            let r = 0.9 * rng.random_range(0.0f64..1.0).sqrt();
            Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
        })
        .collect();
    BlaschkeProduct::new(xi, centers).expect("sampled inside the disc")
}

pub fn discs_suite(cfg: &RunConfig) -> Vec<CheckRecord> {
    let mut checks = Vec::new();

    let mut boundary_worst = 0.0f64;
    for trial in 0..cfg.trials as u64 {
        let mut rng = seeds::stream(cfg.seed, trial);
        let b = random_blaschke(&mut rng, 1 + (trial % 4) as usize);
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let v = b.eval(Complex64::from_polar(1.0, theta));
        boundary_worst = boundary_worst.max((v.norm() - 1.0).abs());
    }
    checks.push(CheckRecord::new(
        "discs/boundary_modulus",
        json!({ "trials": cfg.trials, "seed": cfg.seed }),
        boundary_worst < 1e-10,
        json!({ "worst": boundary_worst }),
    ));

    let mut jet_worst = 0.0f64;
    for trial in 0..cfg.trials.min(64) as u64 {
        let mut rng = seeds::stream(cfg.seed.wrapping_add(1), trial);
        let b = random_blaschke(&mut rng, 2 + (trial % 3) as usize);
        let jet = b.jet(1).0;
        let h = 1e-5;
        let d0 = b.eval(Complex64::ZERO);
        let d1 = (b.eval(Complex64::new(h, 0.0)) - b.eval(Complex64::new(-h, 0.0))) / (2.0 * h);
        jet_worst = jet_worst
            .max((jet[0] - d0).norm())
            .max((jet[1] - d1).norm());
    }
    checks.push(CheckRecord::new(
        "discs/jet_fd_crosscheck",
        json!({ "trials": cfg.trials.min(64), "seed": cfg.seed }),
        jet_worst < cfg.fd_tol,
        json!({ "worst": jet_worst }),
    ));

    let mut winding_ok = true;
    for trial in 0..cfg.trials.min(32) as u64 {
        let mut rng = seeds::stream(cfg.seed.wrapping_add(2), trial);
        let da = 1 + (trial % 3) as usize;
        let db = 1 + (trial % 2) as usize;
        let prod = random_blaschke(&mut rng, da).product(&random_blaschke(&mut rng, db));
        winding_ok &= prod.boundary_winding(4096) == (da + db) as i64;
    }
    checks.push(CheckRecord::new(
        "discs/winding_degree_additivity",
        json!({ "trials": cfg.trials.min(32), "seed": cfg.seed }),
        winding_ok,
        serde_json::Value::Null,
    ));

    for d in 1..=5usize {
        match jet_jacobian_at_zero(d, cfg.fd_tol) {
            Ok(r) => checks.push(CheckRecord::new(
                "discs/jet_jacobian",
                json!({ "d": d }),
                r.regular,
                serde_json::to_value(&r).expect("report serializes"),
            )),
            Err(e) => checks.push(CheckRecord::new(
                "discs/jet_jacobian",
                json!({ "d": d }),
                false,
                json!({ "error": e.to_string() }),
            )),
        }
    }

    for n in cfg.n.iter() {
        let n = n as usize;
        let r = spherical_rigidity_check(
            n,
            &RigidityConfig {
                trials: cfg.trials,
                seed: cfg.seed,
                ..RigidityConfig::default()
            },
        );
        checks.push(CheckRecord::new(
            "discs/rigidity",
            json!({ "n": n, "trials": cfg.trials, "seed": cfg.seed }),
            r.all_pass,
            json!({
                "converged": r.converged,
                "unconverged_trials": r.unconverged_trials,
                "max_center_norm": r.max_center_norm,
            }),
        ));
    }

    let sextic = branch_degree(&BranchData {
        n: 2,
        m: 1,
        deg_x: 3,
    })
    .expect("valid data");
    checks.push(CheckRecord::new(
        "discs/branch_sextic",
        json!({ "n": 2, "m": 1, "deg_x": 3 }),
        sextic.value == BigRational::from_integer(BigInt::from(6)) && sextic.divisible_by_n_plus_1,
        json!({ "deg_b": sextic.value.to_string() }),
    ));

    let mut divisible = true;
    for n in cfg.n.iter() {
        let b = branch_degree(&BranchData {
            n: n as usize,
            m: 1,
            deg_x: n as u64 + 1,
        })
        .expect("valid data");
        divisible &= b.is_integer && b.divisible_by_n_plus_1;
    }
    checks.push(CheckRecord::new(
        "discs/branch_divisibility",
        json!({ "n": cfg.n.to_string(), "m": 1 }),
        divisible,
        serde_json::Value::Null,
    ));

    let mut slope_ok = true;
    for n in cfg.n.iter() {
        let n = n as usize;
        for m in 1..=3u64 {
            for deg_b_num in [6i64, 12, 15] {
                let deg_b = BigRational::new(BigInt::from(deg_b_num), BigInt::from(2));
                for v_dot_b in [0i64, 1, 7] {
                    let mu_base =
                        BigRational::from_integer(BigInt::from(2 * (n as i64 + 1) * v_dot_b))
                            / &deg_b;
                    let got = mirrorkit_core::disc_numerics::maslov_in_cover(
                        n, m, &deg_b, &mu_base, v_dot_b,
                    )
                    .expect("valid data");
                    let expected = BigRational::from_integer(BigInt::from(2 * v_dot_b))
                        / (&deg_b * BigRational::from_integer(BigInt::from(m)));
                    slope_ok &= got == expected;
                }
            }
        }
    }
    checks.push(CheckRecord::new(
        "discs/maslov_slope_identity",
        json!({ "n": cfg.n.to_string() }),
        slope_ok,
        serde_json::Value::Null,
    ));

    checks
}

pub fn full_suite(cfg: &RunConfig) -> Vec<CheckRecord> {
    let mut checks = superpotential_suite(cfg);
    checks.extend(hms_suite(cfg));
    checks.extend(discs_suite(cfg));
    checks
}
