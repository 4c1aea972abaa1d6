// Copyright 2026 the lorentz-orbits authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! End-to-end acceptance gate. Each test covers one release criterion with
//! pinned tolerances and prints a single pass line; a panic is the fail
//! line. Run with `cargo test --test acceptance`.

use lorentz_orbits::action::{self, RHO_CAP_DEFAULT};
use lorentz_orbits::catalog::{self, Params};
use lorentz_orbits::dynamics::{self, PhaseState};
use lorentz_orbits::potentials::{GaugeFunction, GridSpec, SampleBox};
use lorentz_orbits::trajectory::{random_k_trajectory, DerivativeScheme, PeriodicTrajectory};
use lorentz_orbits::witness;
use lorentz_orbits::{Mat3, Vec3};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::sync::Arc;
use std::time::Instant;

fn pulse(period: f64) -> lorentz_orbits::potentials::PotentialPair {
    catalog::gaussian_pulse(&Params::new(), period).unwrap()
}

fn pass(k: usize, what: &str) {
    println!("acceptance criterion {k:2} ({what}): PASS");
}

/// 1. Closed-form witness certificate on the reference pulse: negative
/// action below the quadratic bound at N = 1024, under one second.
#[test]
fn criterion_01_witness_certificate_on_pulse() {
    let t0 = Instant::now();
    let pair = pulse(1.0);
    let cert =
        witness::certify_lemma_negative(&pair, 1024, &witness::default_candidate_grid(5.0, 21))
            .unwrap();
    assert!(cert.negative && cert.action_value < 0.0);
    assert!(cert.action_value <= cert.theoretical_bound + 1e-6);
    assert!(cert.theoretical_bound < 0.0);
    // ε = ½·π/(π + MT) with the measured grid constant M
    let m = cert.m_used.unwrap();
    assert!((cert.epsilon - 0.5 * PI / (PI + m * 1.0)).abs() < 1e-12);
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1s");
    pass(1, "pulse witness certificate under budget");
}

/// 2. Spatially constant oscillation (M = 0, a = 1, T = 1): ε = 1/2 and the
/// certified action matches the independent 4096-node oracle
/// Ψ(ε sin) − ε‖ġ‖₂² to 1e−8 relative.
#[test]
fn criterion_02_exact_value_for_spatially_constant_a() {
    let pair = catalog::uniform_oscillation(&Params::new(), 1.0).unwrap();
    let cert =
        witness::certify_lemma_negative(&pair, 4096, &witness::default_candidate_grid(1.0, 3))
            .unwrap();
    assert!(cert.m_used.unwrap() < 1e-12);
    assert!((cert.epsilon - 0.5).abs() < 1e-12);
    // quadratic bound −ε(1−ε)‖ġ‖₂² = −1/8 exactly
    assert!((cert.theoretical_bound + 0.125).abs() < 1e-10);
    // oracle: speed is ε|sin(2πt)|, so I₀ = ∫(1−√(1−ε²sin²)) − ε·(1/2)
    let n = 4096;
    let eps = 0.5_f64;
    let psi_oracle: f64 = (0..n)
        .map(|i| {
            let s = eps * (2.0 * PI * i as f64 / n as f64).sin();
            1.0 - (1.0 - s * s).sqrt()
        })
        .sum::<f64>()
        / n as f64;
    let oracle = psi_oracle - eps * 0.5;
    assert!((oracle + 0.18421545766769445).abs() < 1e-12, "oracle drifted: {oracle}");
    let rel = (cert.action_value / oracle - 1.0).abs();
    assert!(rel <= 1e-8, "relative deviation {rel}");
    pass(2, "constant-field witness matches closed-form oracle");
}

/// 3. Decay-ratio certificate along bₙ = (n,0,0) on the slow-envelope pair:
/// the first ratio decreases strictly in n and the final witness is
/// negative, under five seconds.
#[test]
fn criterion_03_decay_ratio_certificate() {
    let t0 = Instant::now();
    let pair = catalog::slow_envelope(&Params::new(), 1.0).unwrap();
    let bases: Vec<Vec3> = (2..=6).map(|k| Vec3::new(k as f64, 0.0, 0.0)).collect();
    let (rows, cert) = witness::certify_theorem2(&pair, &bases, 256).unwrap();
    assert_eq!(rows.len(), 5);
    for w in rows.windows(2) {
        assert!(w[1].r1 < w[0].r1, "r1 not strictly decreasing: {} -> {}", w[0].r1, w[1].r1);
    }
    assert!(cert.negative && cert.action_value < 0.0);
    assert!((cert.epsilon - 0.5 / (3.0 + cert.m_used.unwrap() / PI)).abs() < 1e-12);
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5s");
    pass(3, "decay ratios fall and final witness is negative");
}

/// 4. Gradient flow from the pulse center reaches action < −1e−8 within
/// 200 accepted steps at N = 64 with monotone iterate values.
#[test]
fn criterion_04_gradient_flow_reaches_negative_action() {
    let pair = pulse(1.0);
    let (cert, history) = witness::certify_theorem3_flow(&pair, Vec3::zeros(), 64).unwrap();
    assert!(cert.negative);
    assert!(cert.action_value < -1e-8);
    assert!(cert.flow_steps.unwrap() <= 200);
    for w in history.windows(2) {
        assert!(w[1] <= w[0], "flow not monotone: {} -> {}", w[0], w[1]);
    }
    pass(4, "descent flow certifies a negative action");
}

/// 5. Gauge invariance of the fields: adding (∇f, −∂ₜf) for
/// f = x₁ sin(2πt/T) leaves E and B unchanged at 100 random events.
#[test]
fn criterion_05_gauge_invariance_of_fields() {
    let pair = pulse(1.0);
    let omega = 2.0 * PI;
    let f = GaugeFunction::new(Arc::new(move |t: f64, x: Vec3| x[0] * (omega * t).sin()), 1.0)
        .with_dt(Arc::new(move |t, x: Vec3| x[0] * omega * (omega * t).cos()))
        .with_grad(Arc::new(move |t, _x| Vec3::new((omega * t).sin(), 0.0, 0.0)))
        .with_dt_grad(Arc::new(move |t, _x| Vec3::new(omega * (omega * t).cos(), 0.0, 0.0)))
        .with_hessian(Arc::new(|_t, _x| Mat3::zeros()));
    let gauged = pair.gauge_transform(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let t = rng.random_range(0.0..1.0);
        let x = Vec3::from_fn(|_, _| rng.random_range(-3.0..3.0));
        let a = pair.eval_fields(t, x).unwrap();
        let b = gauged.eval_fields(t, x).unwrap();
        assert!((a.electric - b.electric).norm() < 1e-8, "E differs at t={t}, x={x:?}");
        assert!((a.magnetic - b.magnetic).norm() < 1e-8, "B differs at t={t}, x={x:?}");
    }
    pass(5, "E and B are gauge invariant at 100 random events");
}

/// 6. Full minimization through the command-line binary on the reference
/// pulse at N = 256: negative action, genuinely non-constant orbit, small
/// Euler–Lagrange and periodicity residuals, speed below the a-priori
/// bound, under 60 seconds.
#[test]
fn criterion_06_end_to_end_minimization_via_binary() {
    let t0 = Instant::now();
    let dir = std::env::temp_dir().join(format!("lorbits-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("pulse.json");
    std::fs::write(
        &config_path,
        r#"{"potential": {"kind": "catalog", "name": "gaussian_pulse"}, "period": 1.0, "grid_size": 256}"#,
    )
    .unwrap();
    let out_dir = dir.join("out");
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_lorbits"))
        .args(["--config"])
        .arg(&config_path)
        .args(["--out"])
        .arg(&out_dir)
        .arg("minimize")
        .status()
        .unwrap();
    assert!(status.success(), "minimize exited with {status}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("minimizer_result.json")).unwrap())
            .unwrap();
    let result = &report["report"];
    let total = result["action_report"]["total"].as_f64().unwrap();
    assert!(total < 0.0, "action {total} not negative");
    let q = PeriodicTrajectory::from_json(&result["trajectory"].to_string()).unwrap();
    let tilde_sup = q.decompose().oscillation.norms().sup_norm;
    assert!(tilde_sup > 1e-4, "oscillation sup {tilde_sup} too small");
    let el = result["action_report"]["el_residual_sup"].as_f64().unwrap();
    assert!(el <= 1e-3, "Euler–Lagrange residual {el}");
    let rho = result["rho_bound"].as_f64().unwrap();
    assert!(result["rho_claimed"].as_bool().unwrap());
    assert!(q.sup_speed() <= rho + 1e-6, "speed {} above bound {rho}", q.sup_speed());
    let per = result["periodicity_residual"].as_f64().unwrap();
    assert!(per <= 1e-2, "periodicity residual {per}");
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 60s");
    std::fs::remove_dir_all(&dir).ok();
    pass(6, "binary minimization produces a certified orbit");
}

/// 7. Non-negativity control: a magnetostatic pair with ‖∇A‖ < π/(2T) has
/// action ≥ 0 over 10⁴ random admissible trajectories, and exactly 0 on
/// 100 constants.
#[test]
fn criterion_07_magnetostatic_action_nonnegative() {
    let pair = catalog::magnetostatic(&Params::new(), 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut min_val = f64::INFINITY;
    for _ in 0..10_000 {
        let center = Vec3::from_fn(|_, _| rng.random_range(-2.0..2.0));
        let max_speed = rng.random_range(0.05..0.999);
        let q = random_k_trajectory(&mut rng, 32, 1.0, center, max_speed);
        min_val = min_val.min(action::action_value(&q, &pair));
    }
    assert!(min_val >= -1e-9, "random sweep found action {min_val}");
    for _ in 0..100 {
        let b = Vec3::from_fn(|_, _| rng.random_range(-3.0..3.0));
        let q = PeriodicTrajectory::constant(b, 16, 1.0, DerivativeScheme::Spectral).unwrap();
        let v = action::action(&q, &pair).total.finite().unwrap();
        assert!(v == 0.0, "constant trajectory has action {v}");
    }
    pass(7, "magnetostatic action is non-negative, zero on constants");
}

/// 8. Analytic action gradient against central finite differences on 20
/// random interior trajectories at N = 64: relative deviation ≤ 1e−5.
#[test]
fn criterion_08_gradient_matches_finite_differences() {
    let pair = pulse(1.0);
    let n = 64;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let fd_step = 1e-6;
    let mut max_rel = 0.0_f64;
    for _ in 0..20 {
        let coef: Vec<(Vec3, Vec3)> = (0..3)
            .map(|_| {
                (
                    Vec3::from_fn(|_, _| rng.random_range(-0.02..0.02)),
                    Vec3::from_fn(|_, _| rng.random_range(-0.02..0.02)),
                )
            })
            .collect();
        let base = Vec3::from_fn(|_, _| rng.random_range(-0.2..0.2));
        let q = PeriodicTrajectory::from_fn(
            |t| {
                let mut x = base;
                for (k, (c, s)) in coef.iter().enumerate() {
                    let w = 2.0 * PI * (k + 1) as f64 * t;
                    x += c * w.cos() + s * w.sin();
                }
                x
            },
            n,
            1.0,
            DerivativeScheme::Spectral,
        )
        .unwrap();
        let g = action::grad_action(&q, &pair, RHO_CAP_DEFAULT).unwrap();
        let g_norm = g.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for i in (0..n).step_by(7) {
            for c in 0..3 {
                let mut plus = q.samples().to_vec();
                plus[i][c] += fd_step;
                let mut minus = q.samples().to_vec();
                minus[i][c] -= fd_step;
                let fp = action::action_value(&q.with_samples(plus).unwrap(), &pair);
                let fm = action::action_value(&q.with_samples(minus).unwrap(), &pair);
                let fd = (fp - fm) / (2.0 * fd_step);
                max_rel = max_rel.max((fd - g[i][c]).abs() / g_norm.max(1e-12));
            }
        }
    }
    assert!(max_rel <= 1e-5, "max relative deviation {max_rel}");
    pass(8, "analytic gradient agrees with finite differences");
}

/// 9. Structural inequalities on 1000 random admissible trajectories:
/// Poincaré–Wirtinger, ‖q̃‖∞ ≤ T, Ψ ≤ ∫|q̇|², and vanishing of the field
/// term under translation to distance 10³.
#[test]
fn criterion_09_structural_inequalities() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let center = Vec3::from_fn(|_, _| rng.random_range(-5.0..5.0));
        let max_speed = rng.random_range(0.05..0.999);
        let period = rng.random_range(0.2..4.0);
        let q = random_k_trajectory(&mut rng, 32, period, center, max_speed);
        assert!(q.poincare_wirtinger_check().ok);
        let (_, ok) = q.tilde_sup_check().unwrap();
        assert!(ok);
        let psi = action::psi(&q).finite().unwrap();
        assert!(psi <= action::kinetic_l2_sq(&q) * (1.0 + 1e-12) + 1e-15);
    }
    // far translation: the field term dies off and I ≈ Ψ
    let pair = pulse(1.0);
    let q = random_k_trajectory(&mut rng, 64, 1.0, Vec3::zeros(), 0.5);
    let psi = action::psi(&q).finite().unwrap();
    let far = action::action_value(&q.translated(Vec3::new(1e3, 0.0, 0.0)), &pair);
    assert!((far - psi).abs() <= 1e-3, "translated action {far} vs Ψ {psi}");
    pass(9, "kinematic inequalities hold on 1000 random trajectories");
}

/// 10. Integrator control: the relativistic gyration in a uniform magnetic
/// field closes to 1e−8 over one period at 10⁴ steps, the scheme shows
/// fourth-order convergence, and |p(t)| ≤ t·C from rest.
#[test]
fn criterion_10_integrator_against_gyration() {
    let (period, _radius, s0) = dynamics::gyration_oracle(1.0, 0.5);
    let pair = dynamics::uniform_b_pair(1.0, period);
    let states = dynamics::integrate(&pair, s0, period, 10_000).unwrap();
    let end = states.last().unwrap();
    let closure = (end.position - s0.position).norm() + (end.momentum - s0.momentum).norm();
    assert!(closure < 1e-8, "closure {closure}");
    let err = |steps: usize| {
        let states = dynamics::integrate(&pair, s0, period, steps).unwrap();
        let end = states.last().unwrap();
        (end.position - s0.position).norm() + (end.momentum - s0.momentum).norm()
    };
    let order = (err(1000) / err(2000)).log2();
    assert!((3.7..=4.3).contains(&order), "observed order {order}");
    let pulse_pair = pulse(1.0);
    let sbox = SampleBox::centered(Vec3::zeros(), 2.0);
    let c = pulse_pair.lipschitz_and_c(&sbox, GridSpec { spatial: 15, time: 32 }).unwrap().c;
    let from_rest =
        dynamics::integrate(&pulse_pair, PhaseState::new(Vec3::zeros(), Vec3::zeros(), 0.0), 0.3, 500)
            .unwrap();
    for s in &from_rest {
        assert!(s.momentum.norm() <= s.time * c * (1.0 + 1e-9) + 1e-12);
    }
    pass(10, "integrator reproduces the gyration oracle");
}

/// 11. Divergence probe on the inverse-radial pair: the witness ratio
/// ‖ġ‖₂²/‖ġ‖∞ doubles every time |b| is halved (closed form T/(2|b|)) and
/// the witness action decreases strictly along the approach.
#[test]
fn criterion_11_divergence_along_singular_approach() {
    let pair = catalog::inverse_radial(&Params::new(), 1.0).unwrap();
    let points: Vec<Vec3> = (1..=6).map(|k| Vec3::new(0.0, 0.0, 0.5_f64.powi(k))).collect();
    let table = witness::divergence_probe(&pair, &points, 512).unwrap();
    for (row, k) in table.rows.iter().zip(1..) {
        let expect = 0.5 / 0.5_f64.powi(k);
        assert!(
            (row.ratio / expect - 1.0).abs() <= 1e-3,
            "k={k}: ratio {} vs closed form {expect}",
            row.ratio
        );
    }
    for w in table.rows.windows(2) {
        let doubling = w[1].ratio / w[0].ratio;
        assert!((doubling - 2.0).abs() <= 2e-3, "ratio did not double: {doubling}");
        assert!(w[1].action_value < w[0].action_value, "action not strictly decreasing");
    }
    pass(11, "witness ratio doubles along the singular approach");
}
