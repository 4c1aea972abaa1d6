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

//! Explicit negative-action witness trajectories p = b − ε·g̃, where g is
//! the primitive of the oscillating part Ã(·,b), together with numerical
//! certificates of the negativity bounds, the decay-ratio hypotheses, and
//! the gradient-flow construction.

use crate::action;
use crate::error::{Error, Result};
use crate::potentials::{fibonacci_sphere, GridSpec, PotentialPair, SampleBox};
use crate::spectral;
use crate::trajectory::{DerivativeScheme, PeriodicTrajectory, TOL_SPEED};
use crate::{Vec3, TOL_ZERO};
use serde::Serialize;
use std::f64::consts::PI;

/// Quadrature slack for the bound check action_value ≤ bound + TOL_QUAD.
pub const TOL_QUAD: f64 = 1e-6;
/// Gradient-flow success target for I.
pub const FLOW_TARGET: f64 = -1e-8;
/// Maximum accepted descent steps for the gradient-flow certificate.
pub const MAX_FLOW_STEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessMode {
    PhiZero,
    Theorem2,
    Theorem3Flow,
}

/// A certified witness: the trajectory, the ε and bound that produced it,
/// and the measured action value.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessCertificate {
    pub mode: WitnessMode,
    pub base_point: [f64; 3],
    pub epsilon: f64,
    /// Absent in flow mode, where no primitive g is constructed.
    pub g_curve: Option<PeriodicTrajectory>,
    pub g_dot_l2_sq: Option<f64>,
    pub m_used: Option<f64>,
    pub c_used: Option<f64>,
    pub action_value: f64,
    pub theoretical_bound: f64,
    pub negative: bool,
    pub grid_size: usize,
    /// Accepted descent steps (flow mode only).
    pub flow_steps: Option<usize>,
    /// Ratio-trend verdict (theorem2 mode only).
    pub hypothesis_met: Option<bool>,
    pub trajectory: PeriodicTrajectory,
}

/// The primitive g(t) = ∫₀ᵗ Ã(s,b) ds on the discrete grid and the
/// quantities the bounds need.
#[derive(Debug, Clone)]
pub struct GCurve {
    pub g: PeriodicTrajectory,
    /// g̃ = g minus its time mean.
    pub g_tilde: Vec<Vec3>,
    /// ġ samples = Ã(t_i, b) exactly.
    pub g_dot: Vec<Vec3>,
    /// ‖ġ‖₂² = discrete ∫|Ã(·,b)|².
    pub g_dot_l2_sq: f64,
    pub g_dot_sup: f64,
    pub g_tilde_sup: f64,
}

/// ‖Ã(·,b)‖₂ on `nt` time nodes (periodic trapezoid).
pub fn tilde_a_l2(pair: &PotentialPair, b: Vec3, nt: usize) -> f64 {
    let samples: Vec<Vec3> = pair.time_nodes(nt).iter().map(|&t| pair.a(t, b)).collect();
    let mean: Vec3 = samples.iter().sum::<Vec3>() / nt as f64;
    let h = pair.period / nt as f64;
    (samples.iter().map(|a| (a - mean).norm_squared()).sum::<f64>() * h).sqrt()
}

/// Uniform cubic candidate grid for base-point search.
pub fn default_candidate_grid(half_width: f64, per_axis: usize) -> Vec<Vec3> {
    SampleBox::centered(Vec3::zeros(), half_width).grid_points(per_axis)
}

/// The candidate b maximizing ‖Ã(·,b)‖₂; ties broken by smallest |b|,
/// then lexicographically.
pub fn find_base_point(pair: &PotentialPair, candidates: &[Vec3]) -> Result<Vec3> {
    let nt = 64;
    let mut best: Option<(f64, Vec3)> = None;
    for &b in candidates {
        if pair.distance_to_singular(b) <= 0.0 {
            continue;
        }
        let score = tilde_a_l2(pair, b, nt);
        let better = match best {
            None => true,
            Some((s, prev)) => {
                let tol = 1e-12 * s.max(1.0);
                score > s + tol
                    || (score >= s - tol
                        && (b.norm() < prev.norm() - 1e-12
                            || ((b.norm() - prev.norm()).abs() <= 1e-12
                                && lex_less(b, prev))))
            }
        };
        if better {
            best = Some((score, b));
        }
    }
    match best {
        Some((score, b)) if score > TOL_ZERO => Ok(b),
        _ => Err(Error::NoNonautonomousPoint),
    }
}

fn lex_less(a: Vec3, b: Vec3) -> bool {
    for i in 0..3 {
        if a[i] < b[i] - 1e-15 {
            return true;
        }
        if a[i] > b[i] + 1e-15 {
            return false;
        }
    }
    false
}

/// Builds g(t) = ∫₀ᵗ Ã(s,b) ds on `n` nodes by spectral antiderivative,
/// so ġ reproduces the Ã samples exactly for band-limited oscillations.
pub fn build_g(pair: &PotentialPair, b: Vec3, n: usize) -> Result<GCurve> {
    let times = pair.time_nodes(n);
    let a_samples: Vec<Vec3> = times.iter().map(|&t| pair.a(t, b)).collect();
    if a_samples.iter().any(|v| !(v[0].is_finite() && v[1].is_finite() && v[2].is_finite())) {
        return Err(Error::NonFinite { context: format!("A(·, {b:?}) sampling") });
    }
    let mean: Vec3 = a_samples.iter().sum::<Vec3>() / n as f64;
    let g_dot: Vec<Vec3> = a_samples.iter().map(|a| a - mean).collect();
    let h = pair.period / n as f64;
    let g_dot_l2_sq = g_dot.iter().map(|v| v.norm_squared()).sum::<f64>() * h;
    if g_dot_l2_sq.sqrt() <= TOL_ZERO {
        return Err(Error::DegenerateOscillation(format!(
            "‖Ã(·, b)‖₂ = {} at b = {b:?}",
            g_dot_l2_sq.sqrt()
        )));
    }
    let g_samples = spectral::antiderivative(&g_dot, pair.period);
    let g = PeriodicTrajectory::new(g_samples, pair.period, DerivativeScheme::Spectral)?;
    let g_mean = g.mean();
    let g_tilde: Vec<Vec3> = g.samples().iter().map(|s| s - g_mean).collect();
    let g_dot_sup = g_dot.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let g_tilde_sup = g_tilde.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(GCurve { g, g_tilde, g_dot, g_dot_l2_sq, g_dot_sup, g_tilde_sup })
}

/// Open-interval upper bound on admissible ε for the mode's inequality;
/// callers use a fraction of it. Not defined for flow mode (returns 1).
pub fn epsilon_threshold(m: f64, period: f64, mode: WitnessMode) -> f64 {
    match mode {
        WitnessMode::PhiZero => PI / (PI + m * period),
        WitnessMode::Theorem2 => 1.0 / (3.0 + m * period / PI),
        WitnessMode::Theorem3Flow => 1.0,
    }
}

/// The witness p_i = b − ε·g̃(t_i); sup_speed(p) = ε·sup|ġ|.
pub fn witness_trajectory(pair: &PotentialPair, b: Vec3, epsilon: f64, n: usize) -> Result<PeriodicTrajectory> {
    if epsilon == 0.0 {
        return PeriodicTrajectory::constant(b, n, pair.period, DerivativeScheme::Spectral);
    }
    let gc = build_g(pair, b, n)?;
    if epsilon * gc.g_dot_sup > 1.0 + TOL_SPEED {
        return Err(Error::SpeedCapExceeded { epsilon, sup_gdot: gc.g_dot_sup });
    }
    let samples = gc.g_tilde.iter().map(|gt| b - gt * epsilon).collect();
    PeriodicTrajectory::new(samples, pair.period, DerivativeScheme::Spectral)
}

/// Box around b with margin ‖g̃‖∞ + 1: the proof only uses the Lipschitz
/// bound along segments from p(t) to b.
fn witness_box(b: Vec3, g_tilde_sup: f64) -> SampleBox {
    SampleBox::centered(b, g_tilde_sup + 1.0)
}

fn clip_epsilon(epsilon: f64, g_dot_sup: f64) -> f64 {
    epsilon.min(1.0 / g_dot_sup)
}

/// Certifies the Φ ≡ 0 negativity bound
/// I₀(p) ≤ −ε‖ġ‖₂²(1 − ε(π+MT)/π) with ε = ½·π/(π+MT) (clipped to the
/// K-feasibility cap 1/sup|ġ|).
pub fn certify_lemma_negative(
    pair: &PotentialPair,
    n: usize,
    candidates: &[Vec3],
) -> Result<WitnessCertificate> {
    let b = find_base_point(pair, candidates)?;
    // mode requires Φ ≡ 0; probe a few events
    for &t in &pair.time_nodes(5) {
        for x in [b, b + Vec3::new(1.0, 0.0, 0.0), Vec3::zeros()] {
            if pair.distance_to_singular(x) > 0.0 && pair.phi(t, x).abs() > 1e-12 {
                return Err(Error::PreconditionViolated(
                    "phi_zero witness mode requires Φ ≡ 0".into(),
                ));
            }
        }
    }
    let gc = build_g(pair, b, n)?;
    let lip = pair.lipschitz_and_c(&witness_box(b, gc.g_tilde_sup), GridSpec { spatial: 9, time: 32 })?;
    let m = lip.m;
    let t = pair.period;
    let epsilon = clip_epsilon(0.5 * epsilon_threshold(m, t, WitnessMode::PhiZero), gc.g_dot_sup);
    let p_samples: Vec<Vec3> = gc.g_tilde.iter().map(|gt| b - gt * epsilon).collect();
    let p = PeriodicTrajectory::new(p_samples, t, DerivativeScheme::Spectral)?;
    let report = action::action(&p, pair);
    let action_value = report
        .total
        .finite()
        .ok_or_else(|| Error::CertificateFailed("witness action is not finite".into()))?;
    let theoretical_bound = -epsilon * gc.g_dot_l2_sq * (1.0 - epsilon * (PI + m * t) / PI);
    if action_value > theoretical_bound + TOL_QUAD {
        return Err(Error::CertificateFailed(format!(
            "I₀(p) = {action_value} exceeds bound {theoretical_bound} + {TOL_QUAD}"
        )));
    }
    if action_value >= 0.0 {
        return Err(Error::CertificateFailed(format!("I₀(p) = {action_value} is not negative")));
    }
    Ok(WitnessCertificate {
        mode: WitnessMode::PhiZero,
        base_point: [b[0], b[1], b[2]],
        epsilon,
        g_curve: Some(gc.g.clone()),
        g_dot_l2_sq: Some(gc.g_dot_l2_sq),
        m_used: Some(m),
        c_used: Some(lip.c),
        action_value,
        theoretical_bound,
        negative: true,
        grid_size: n,
        flow_steps: None,
        hypothesis_met: None,
        trajectory: p,
    })
}

/// One row of the decay-ratio table: r1 = |φ(b)|/‖Ã(·,b)‖₂²,
/// r2 = (shell max of |∇Φ|)/‖Ã(·,b)‖₂.
#[derive(Debug, Clone, Serialize)]
pub struct RatioRow {
    pub index: usize,
    pub b_norm: f64,
    pub r1: f64,
    pub r2: f64,
}

/// CSV serialization of a ratio table: (n, |b_n|, r1, r2).
pub fn ratio_table_csv(rows: &[RatioRow]) -> String {
    let mut out = String::from("n,b_norm,r1,r2\n");
    for r in rows {
        out.push_str(&format!("{},{:.16e},{:.16e},{:.16e}\n", r.index, r.b_norm, r.r1, r.r2));
    }
    out
}

/// Max of |∇Φ| over spheres of the given radii (Fibonacci lattice, all
/// time nodes); estimates the unbounded-region max in the decay premise.
fn shell_grad_phi_max(pair: &PotentialPair, radii: &[f64], points_per_sphere: usize, nt: usize) -> f64 {
    let dirs = fibonacci_sphere(points_per_sphere);
    let times = pair.time_nodes(nt);
    let mut max = 0.0_f64;
    for &r in radii {
        if r <= 0.0 {
            continue;
        }
        for u in &dirs {
            let x = u * r;
            if pair.distance_to_singular(x) <= 0.0 {
                continue;
            }
            for &t in &times {
                max = max.max(pair.grad_phi(t, x).norm());
            }
        }
    }
    max
}

/// Tabulates the decay ratios along a base sequence and certifies a
/// negative-action witness at the last base point with
/// ε = ½/(3 + MT/π). The theoretical bound recorded is the asymptotic
/// inequality −ε‖ġ‖₂²(1 − ε(2π+MT)/π) − φ(b); only negativity of the
/// measured value is asserted (the inequality holds for |b| large).
pub fn certify_theorem2(
    pair: &PotentialPair,
    base_sequence: &[Vec3],
    n: usize,
) -> Result<(Vec<RatioRow>, WitnessCertificate)> {
    if base_sequence.is_empty() {
        return Err(Error::PreconditionViolated("base sequence must be non-empty".into()));
    }
    if base_sequence.iter().any(|b| pair.distance_to_singular(*b) <= 0.0) {
        return Err(Error::PreconditionViolated("base points must avoid singular balls".into()));
    }
    let nt = 64;
    let t = pair.period;
    let mut rows = Vec::with_capacity(base_sequence.len());
    for (i, &b) in base_sequence.iter().enumerate() {
        let l2 = tilde_a_l2(pair, b, nt);
        if l2 <= TOL_ZERO {
            return Err(Error::DegenerateOscillation(format!("‖Ã(·, b)‖₂ ≈ 0 at b = {b:?}")));
        }
        let phi_mean = pair.varphi(b, nt);
        let shell = shell_grad_phi_max(pair, &[b.norm() - t, b.norm(), 2.0 * b.norm()], 256, 16);
        rows.push(RatioRow {
            index: i,
            b_norm: b.norm(),
            r1: phi_mean.abs() / (l2 * l2),
            r2: shell / l2,
        });
    }
    let non_increasing = |f: fn(&RatioRow) -> f64| {
        rows.windows(2).all(|w| f(&w[1]) <= f(&w[0]) + TOL_ZERO)
    };
    let hypothesis_met = non_increasing(|r| r.r1) && non_increasing(|r| r.r2);

    let b = *base_sequence.last().expect("non-empty");
    let gc = build_g(pair, b, n)?;
    let lip = pair.lipschitz_and_c(&witness_box(b, gc.g_tilde_sup), GridSpec { spatial: 9, time: 32 })?;
    let m = lip.m;
    let epsilon = clip_epsilon(0.5 * epsilon_threshold(m, t, WitnessMode::Theorem2), gc.g_dot_sup);
    let p_samples: Vec<Vec3> = gc.g_tilde.iter().map(|gt| b - gt * epsilon).collect();
    let p = PeriodicTrajectory::new(p_samples, t, DerivativeScheme::Spectral)?;
    let action_value = action::action(&p, pair)
        .total
        .finite()
        .ok_or_else(|| Error::CertificateFailed("witness action is not finite".into()))?;
    let theoretical_bound =
        -epsilon * gc.g_dot_l2_sq * (1.0 - epsilon * (2.0 * PI + m * t) / PI) - pair.varphi(b, nt);
    if action_value >= 0.0 {
        return Err(Error::CertificateFailed(format!("I(p) = {action_value} is not negative")));
    }
    let cert = WitnessCertificate {
        mode: WitnessMode::Theorem2,
        base_point: [b[0], b[1], b[2]],
        epsilon,
        g_curve: Some(gc.g.clone()),
        g_dot_l2_sq: Some(gc.g_dot_l2_sq),
        m_used: Some(m),
        c_used: Some(lip.c),
        action_value,
        theoretical_bound,
        negative: true,
        grid_size: n,
        flow_steps: None,
        hypothesis_met: Some(hypothesis_met),
        trajectory: p,
    };
    Ok((rows, cert))
}

/// Gradient-flow certificate: explicit-Euler descent with backtracking on
/// the discrete action, started from the constant trajectory b0, until
/// I < −1e−8 or the step budget runs out. Returns the iterate values so
/// callers can check monotone descent.
pub fn certify_theorem3_flow(
    pair: &PotentialPair,
    b0: Vec3,
    n: usize,
) -> Result<(WitnessCertificate, Vec<f64>)> {
    let nt = 64;
    let phi_mean = pair.varphi(b0, nt);
    if !(phi_mean >= -1e-6) {
        return Err(Error::PreconditionViolated(format!(
            "flow start needs φ(b0) ≈ max φ = 0, got φ(b0) = {phi_mean}"
        )));
    }
    let mut q = PeriodicTrajectory::constant(b0, n, pair.period, DerivativeScheme::Spectral)?;
    let g0 = action::grad_action(&q, pair, action::RHO_CAP_DEFAULT)?;
    let g0_norm = (g0.iter().map(|v| v.norm_squared()).sum::<f64>()).sqrt();
    if g0_norm <= TOL_ZERO {
        return Err(Error::EquilibriumStart);
    }
    let mut value = action::action_value(&q, pair);
    let mut history = vec![value];
    let mut accepted = 0usize;
    while value >= FLOW_TARGET {
        if accepted >= MAX_FLOW_STEPS {
            return Err(Error::FlowStalled(accepted));
        }
        let grad = action::grad_action(&q, pair, action::RHO_CAP_DEFAULT)?;
        let grad_sq: f64 = grad.iter().map(|v| v.norm_squared()).sum();
        let mut eta = 1.0;
        let mut stepped = false;
        for _ in 0..60 {
            let samples: Vec<Vec3> =
                q.samples().iter().zip(&grad).map(|(x, g)| x - g * eta).collect();
            if let Ok(trial) = q.with_samples(samples) {
                let trial_value = action::action_value(&trial, pair);
                if trial_value <= value - 1e-4 * eta * grad_sq {
                    q = trial;
                    value = trial_value;
                    history.push(value);
                    accepted += 1;
                    stepped = true;
                    break;
                }
            }
            eta *= 0.5;
        }
        if !stepped {
            return Err(Error::FlowStalled(accepted));
        }
    }
    let cert = WitnessCertificate {
        mode: WitnessMode::Theorem3Flow,
        base_point: [b0[0], b0[1], b0[2]],
        epsilon: 0.0,
        g_curve: None,
        g_dot_l2_sq: None,
        m_used: None,
        c_used: None,
        action_value: value,
        theoretical_bound: 0.0,
        negative: value < 0.0,
        grid_size: n,
        flow_steps: Some(accepted),
        hypothesis_met: None,
        trajectory: q,
    };
    Ok((cert, history))
}

/// One row of the singular-approach table with ε = 1/sup|ġ|.
#[derive(Debug, Clone, Serialize)]
pub struct DivergenceRow {
    pub b: [f64; 3],
    pub b_norm: f64,
    pub epsilon: f64,
    /// ‖ġ‖₂²/‖ġ‖∞, the quantity whose growth drives I(p) → −∞.
    pub ratio: f64,
    pub action_value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DivergenceTable {
    pub rows: Vec<DivergenceRow>,
    /// Whether I(p) decreases strictly along the approach.
    pub monotone_decreasing: bool,
}

pub fn divergence_table_csv(table: &DivergenceTable) -> String {
    let mut out = String::from("b_norm,epsilon,ratio,action_value\n");
    for r in &table.rows {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e}\n",
            r.b_norm, r.epsilon, r.ratio, r.action_value
        ));
    }
    out
}

/// Divergence probe: witnesses at boundary speed (ε = 1/sup|ġ|) along
/// an approach to a singular point of A; exploratory, never errors on a
/// non-diverging pair.
pub fn divergence_probe(
    pair: &PotentialPair,
    approach_points: &[Vec3],
    n: usize,
) -> Result<DivergenceTable> {
    let mut rows = Vec::with_capacity(approach_points.len());
    for &b in approach_points {
        let gc = build_g(pair, b, n)?;
        let epsilon = 1.0 / gc.g_dot_sup;
        let samples: Vec<Vec3> = gc.g_tilde.iter().map(|gt| b - gt * epsilon).collect();
        let p = PeriodicTrajectory::new(samples, pair.period, DerivativeScheme::Spectral)?;
        let action_value = action::action(&p, pair).total.as_f64();
        rows.push(DivergenceRow {
            b: [b[0], b[1], b[2]],
            b_norm: b.norm(),
            epsilon,
            ratio: gc.g_dot_l2_sq / gc.g_dot_sup,
            action_value,
        });
    }
    let monotone_decreasing = rows
        .windows(2)
        .all(|w| w[1].action_value < w[0].action_value);
    Ok(DivergenceTable { rows, monotone_decreasing })
}
