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

//! The relativistic action I(q) = Ψ(q) + F(q) on the discrete grid, its
//! exact gradient with respect to the samples, and the Euler–Lagrange
//! residual that certifies interior critical points as solutions of the
//! Lorentz force equation.

use crate::error::{Error, Result};
use crate::potentials::{GridSpec, PotentialPair, SampleBox};
use crate::trajectory::{differentiate, lambda_margin_default, PeriodicTrajectory, TOL_SPEED};
use crate::{Vec3, TOL_ZERO};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Speed cap for gradient evaluation; the discrete gradient blows up as
/// |q̇| → 1, and minimizers obey the a priori bound ρ < 1.
pub const RHO_CAP_DEFAULT: f64 = 0.999;

/// Extended real with an explicit infinity flag so reports stay
/// serializable and comparisons are explicit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinite,
}

impl ExtReal {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(*v),
            ExtReal::Infinite => None,
        }
    }

    /// Value for comparisons: +∞ dominates every finite value.
    pub fn as_f64(&self) -> f64 {
        match self {
            ExtReal::Finite(v) => *v,
            ExtReal::Infinite => f64::INFINITY,
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => s.serialize_f64(*v),
            ExtReal::Infinite => {
                let mut m = s.serialize_struct("ExtReal", 1)?;
                m.serialize_field("flag", "infinite")?;
                m.end()
            }
        }
    }
}

/// Values of the action and its pieces plus membership verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct ActionReport {
    pub psi: ExtReal,
    pub f_term: ExtReal,
    pub total: ExtReal,
    #[serde(rename = "in_K")]
    pub in_k: bool,
    #[serde(rename = "in_Lambda")]
    pub in_lambda: bool,
    /// Computed only on request; absent otherwise.
    pub el_residual_sup: Option<f64>,
}

/// Ψ(q) = ∫₀ᵀ (1 − √(1−|q̇|²)) dt by periodic trapezoid; +∞ outside K.
pub fn psi(q: &PeriodicTrajectory) -> ExtReal {
    let v = q.derivative();
    let sup_speed = v.iter().map(|u| u.norm()).fold(0.0, f64::max);
    if sup_speed > 1.0 + TOL_SPEED {
        return ExtReal::Infinite;
    }
    let h = q.period() / q.n() as f64;
    let sum: f64 = v
        .iter()
        .map(|u| 1.0 - (1.0 - u.norm_squared()).max(0.0).sqrt())
        .sum();
    ExtReal::Finite(sum * h)
}

/// Discrete ∫|q̇|², the majorant of Ψ from 1 − √(1−s²) ≤ s².
pub fn kinetic_l2_sq(q: &PeriodicTrajectory) -> f64 {
    let h = q.period() / q.n() as f64;
    q.derivative().iter().map(|u| u.norm_squared()).sum::<f64>() * h
}

/// F(q) = ∫₀ᵀ (q̇·A(t,q) − Φ(t,q)) dt by periodic trapezoid.
pub fn f_term(q: &PeriodicTrajectory, pair: &PotentialPair) -> Result<f64> {
    if !q.in_lambda(pair, lambda_margin_default(q.period())) {
        return Err(Error::SingularTrajectory);
    }
    let v = q.derivative();
    let h = q.period() / q.n() as f64;
    let mut sum = 0.0;
    for ((&t, x), u) in q.times().iter().zip(q.samples()).zip(&v) {
        sum += u.dot(&pair.a(t, *x)) - pair.phi(t, *x);
    }
    let value = sum * h;
    if !value.is_finite() {
        return Err(Error::NonFinite { context: "field term quadrature".into() });
    }
    Ok(value)
}

/// Assembles Ψ, F, I = Ψ + F and the K/Λ verdicts. Never errors: failures
/// show up as the +∞ flag and false verdicts.
pub fn action(q: &PeriodicTrajectory, pair: &PotentialPair) -> ActionReport {
    let in_k = q.in_k();
    let in_lambda = q.in_lambda(pair, lambda_margin_default(q.period()));
    let psi_val = psi(q);
    let f_val = if in_lambda {
        match f_term(q, pair) {
            Ok(v) => ExtReal::Finite(v),
            Err(_) => ExtReal::Infinite,
        }
    } else {
        ExtReal::Infinite
    };
    let total = match (psi_val, f_val) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
        _ => ExtReal::Infinite,
    };
    ActionReport { psi: psi_val, f_term: f_val, total, in_k, in_lambda, el_residual_sup: None }
}

/// I(q) as an f64 with +∞ for infeasible trajectories; the line-search
/// comparison value.
pub fn action_value(q: &PeriodicTrajectory, pair: &PotentialPair) -> f64 {
    action(q, pair).total.as_f64()
}

fn interior_guard(q: &PeriodicTrajectory, pair: &PotentialPair, rho_cap: f64) -> Result<Vec<Vec3>> {
    let v = q.derivative();
    let sup_speed = v.iter().map(|u| u.norm()).fold(0.0, f64::max);
    if sup_speed > rho_cap {
        return Err(Error::BoundaryOfK { sup_speed, cap: rho_cap });
    }
    if !q.in_lambda(pair, lambda_margin_default(q.period())) {
        return Err(Error::SingularTrajectory);
    }
    Ok(v)
}

/// Exact gradient of the discrete action with respect to each sample q_i.
///
/// With v = Dq and the differentiation matrix D skew-adjoint on the
/// uniform grid (true for both schemes), the chain rule gives
///   ∂I/∂q_i = h·( −D(γv + A)_i + (∇A)ᵀv_i − ∇Φ_i ),   γ = 1/√(1−|v|²).
pub fn grad_action(q: &PeriodicTrajectory, pair: &PotentialPair, rho_cap: f64) -> Result<Vec<Vec3>> {
    let v = interior_guard(q, pair, rho_cap)?;
    let times = q.times();
    let momentum: Vec<Vec3> = v
        .iter()
        .zip(times.iter().zip(q.samples()))
        .map(|(u, (&t, x))| {
            let gamma = 1.0 / (1.0 - u.norm_squared()).sqrt();
            u * gamma + pair.a(t, *x)
        })
        .collect();
    let d_momentum = differentiate(&momentum, q.period(), q.scheme());
    let h = q.period() / q.n() as f64;
    let mut grad = Vec::with_capacity(q.n());
    for i in 0..q.n() {
        let t = times[i];
        let x = q.samples()[i];
        let g = (-d_momentum[i] + pair.jacobian_a(t, x).transpose() * v[i] - pair.grad_phi(t, x)) * h;
        if !(g[0].is_finite() && g[1].is_finite() && g[2].is_finite()) {
            return Err(Error::NonFinite { context: format!("action gradient at node {i}") });
        }
        grad.push(g);
    }
    Ok(grad)
}

/// sup over nodes of |d/dt(γq̇) − E(t,q) − q̇×B(t,q)|, the pointwise defect
/// in the Lorentz force equation; the outer derivative reuses the
/// trajectory's differentiation scheme on the momentum samples.
pub fn el_residual(q: &PeriodicTrajectory, pair: &PotentialPair, rho_cap: f64) -> Result<f64> {
    let v = interior_guard(q, pair, rho_cap)?;
    let momentum: Vec<Vec3> = v
        .iter()
        .map(|u| u * (1.0 / (1.0 - u.norm_squared()).sqrt()))
        .collect();
    let d_momentum = differentiate(&momentum, q.period(), q.scheme());
    let mut sup = 0.0_f64;
    for ((&t, x), (u, dp)) in q
        .times()
        .iter()
        .zip(q.samples())
        .zip(v.iter().zip(&d_momentum))
    {
        let fields = pair.eval_fields(t, *x)?;
        sup = sup.max((dp - fields.electric - u.cross(&fields.magnetic)).norm());
    }
    Ok(sup)
}

/// Crude lower-bound estimate for I over trajectories confined to the box:
/// I ≥ −T·(sup|A| + sup Φ⁺) since |q̇| ≤ 1 and Ψ ≥ 0.
pub fn lower_bound_estimate(pair: &PotentialPair, sample_box: &SampleBox, grid: GridSpec) -> f64 {
    let mut max_a = 0.0_f64;
    let mut max_phi_plus = 0.0_f64;
    for x in sample_box.grid_points(grid.spatial) {
        if pair.distance_to_singular(x) <= 0.0 {
            continue;
        }
        for &t in &pair.time_nodes(grid.time) {
            max_a = max_a.max(pair.a(t, x).norm());
            max_phi_plus = max_phi_plus.max(pair.phi(t, x));
        }
    }
    -pair.period * (max_a + max_phi_plus)
}

/// Non-constancy scale: ‖q̃‖∞ must exceed this to count as non-constant.
pub fn non_constant_threshold(grad_tol: f64) -> f64 {
    10.0 * grad_tol
}

/// Negativity verdict with the round-off dead zone.
pub fn is_negative(value: f64) -> bool {
    value < -TOL_ZERO
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, Params};
    use crate::trajectory::DerivativeScheme;
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn zero_pair(period: f64) -> PotentialPair {
        PotentialPair::new(
            Arc::new(|_t, _x| Vec3::zeros()),
            Arc::new(|_t, _x| 0.0),
            period,
            vec![],
            "zero",
        )
        .unwrap()
    }

    fn circle(speed: f64, n: usize, period: f64) -> PeriodicTrajectory {
        let radius = speed * period / (2.0 * PI);
        PeriodicTrajectory::from_fn(
            |t| {
                let th = 2.0 * PI * t / period;
                Vec3::new(radius * th.cos(), radius * th.sin(), 0.0)
            },
            n,
            period,
            DerivativeScheme::Spectral,
        )
        .unwrap()
    }

    #[test]
    fn psi_closed_forms() {
        let period = 2.0;
        let constant =
            PeriodicTrajectory::constant(Vec3::new(1.0, 2.0, 3.0), 16, period, DerivativeScheme::Spectral)
                .unwrap();
        assert!(psi(&constant).finite().unwrap().abs() < 1e-12);
        // constant speed 0.6: integrand is 1 − 0.8 everywhere
        let q = circle(0.6, 64, period);
        assert!((psi(&q).finite().unwrap() - 0.2 * period).abs() < 1e-10);
        assert_eq!(psi(&circle(1.2, 64, period)), ExtReal::Infinite);
    }

    #[test]
    fn f_term_constant_under_autonomous_phi() {
        let pair = catalog::coulomb(&Params::new(), 1.5).unwrap();
        let b = Vec3::new(2.0, 0.0, 0.0);
        let q = PeriodicTrajectory::constant(b, 16, 1.5, DerivativeScheme::Spectral).unwrap();
        // F(b) = −T·Φ(b) = −φ(b) = 1.5·(1/2)
        assert!((f_term(&q, &pair).unwrap() - 0.75).abs() < 1e-13);
        let report = action(&q, &pair);
        assert!((report.total.finite().unwrap() - 0.75).abs() < 1e-13);
    }

    #[test]
    fn singular_trajectory_is_flagged() {
        let pair = catalog::coulomb(&Params::new(), 1.0).unwrap();
        let q = PeriodicTrajectory::constant(Vec3::zeros(), 16, 1.0, DerivativeScheme::Spectral).unwrap();
        assert!(matches!(f_term(&q, &pair), Err(Error::SingularTrajectory)));
        let report = action(&q, &pair);
        assert!(!report.in_lambda);
        assert_eq!(report.total, ExtReal::Infinite);
    }

    #[test]
    fn psi_dominated_by_kinetic_l2() {
        let q = circle(0.9, 64, 1.0);
        assert!(psi(&q).finite().unwrap() <= kinetic_l2_sq(&q) + 1e-12);
    }

    #[test]
    fn gradient_vanishes_for_free_constant() {
        let pair = zero_pair(1.0);
        let q = PeriodicTrajectory::constant(Vec3::new(0.3, -0.2, 0.1), 16, 1.0, DerivativeScheme::Spectral)
            .unwrap();
        let g = grad_action(&q, &pair, RHO_CAP_DEFAULT).unwrap();
        assert!(g.iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn gradient_of_quadratic_phi_on_constant() {
        // Φ(x) = |x|²: nodes decouple, gradient = −(T/N)·2b at each node
        let period = 1.0;
        let pair = PotentialPair::new(
            Arc::new(|_t, _x| Vec3::zeros()),
            Arc::new(|_t, x: Vec3| x.norm_squared()),
            period,
            vec![],
            "quadratic",
        )
        .unwrap()
        .with_dt_a(Arc::new(|_t, _x| Vec3::zeros()))
        .with_jacobian_a(Arc::new(|_t, _x| crate::Mat3::zeros()))
        .with_grad_phi(Arc::new(|_t, x: Vec3| x * 2.0));
        let b = Vec3::new(0.5, -1.0, 2.0);
        let n = 16;
        let q = PeriodicTrajectory::constant(b, n, period, DerivativeScheme::Spectral).unwrap();
        let g = grad_action(&q, &pair, RHO_CAP_DEFAULT).unwrap();
        let expect = -b * (2.0 * period / n as f64);
        assert!(g.iter().all(|v| (v - expect).norm() < 1e-12));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        use rand::prelude::*;
        let pair = catalog::gaussian_pulse(&Params::new(), 1.0).unwrap();
        let n = 64;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        // smooth random interior trajectory from a few low harmonics
        let coef: Vec<(Vec3, Vec3)> = (0..3)
            .map(|_| {
                (
                    Vec3::from_fn(|_, _| rng.random_range(-0.02..0.02)),
                    Vec3::from_fn(|_, _| rng.random_range(-0.02..0.02)),
                )
            })
            .collect();
        let q = PeriodicTrajectory::from_fn(
            |t| {
                let mut x = Vec3::new(0.1, -0.05, 0.02);
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
        let g = grad_action(&q, &pair, RHO_CAP_DEFAULT).unwrap();
        let g_norm = g.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let fd_step = 1e-6;
        let mut max_rel = 0.0_f64;
        for i in (0..n).step_by(7) {
            for c in 0..3 {
                let mut plus = q.samples().to_vec();
                plus[i][c] += fd_step;
                let mut minus = q.samples().to_vec();
                minus[i][c] -= fd_step;
                let fp = action_value(&q.with_samples(plus).unwrap(), &pair);
                let fm = action_value(&q.with_samples(minus).unwrap(), &pair);
                let fd = (fp - fm) / (2.0 * fd_step);
                max_rel = max_rel.max((fd - g[i][c]).abs() / g_norm.max(1e-12));
            }
        }
        assert!(max_rel < 1e-5, "max relative deviation {max_rel}");
    }

    #[test]
    fn gauge_shift_leaves_action_unchanged() {
        let pair = catalog::gaussian_pulse(&Params::new(), 1.0).unwrap();
        let omega = 2.0 * PI;
        let f = crate::potentials::GaugeFunction::new(
            Arc::new(move |t: f64, x: Vec3| x[0] * (omega * t).sin()),
            1.0,
        )
        .with_dt(Arc::new(move |t, x: Vec3| x[0] * omega * (omega * t).cos()))
        .with_grad(Arc::new(move |t, _x| Vec3::new((omega * t).sin(), 0.0, 0.0)))
        .with_dt_grad(Arc::new(move |t, _x| Vec3::new(omega * (omega * t).cos(), 0.0, 0.0)))
        .with_hessian(Arc::new(|_t, _x| crate::Mat3::zeros()));
        let gauged = pair.gauge_transform(&f);
        let q = circle(0.4, 64, 1.0).translated(Vec3::new(0.2, 0.0, 0.0));
        let a1 = action_value(&q, &pair);
        let a2 = action_value(&q, &gauged);
        assert!((a1 - a2).abs() < 1e-9, "gauge shift changed action by {}", a1 - a2);
    }

    #[test]
    fn boundary_guard_rejects_fast_trajectories() {
        let pair = zero_pair(1.0);
        let q = circle(0.9999, 64, 1.0);
        assert!(matches!(
            grad_action(&q, &pair, RHO_CAP_DEFAULT),
            Err(Error::BoundaryOfK { .. })
        ));
    }

    #[test]
    fn el_residual_zero_field_constant() {
        let pair = zero_pair(1.0);
        let q = PeriodicTrajectory::constant(Vec3::new(1.0, 1.0, 1.0), 16, 1.0, DerivativeScheme::Spectral)
            .unwrap();
        assert!(el_residual(&q, &pair, RHO_CAP_DEFAULT).unwrap() < 1e-12);
    }

    #[test]
    fn el_residual_vanishes_on_gyration_orbit() {
        // uniform B = (0,0,B₀): relativistic circular orbit at speed β,
        // angular rate Ω = −B₀/γ, radius β/|Ω|
        let b0 = 1.0;
        let beta: f64 = 0.5;
        let gamma = 1.0 / (1.0 - beta * beta).sqrt();
        let omega = -b0 / gamma;
        let period = 2.0 * PI / omega.abs();
        let radius = beta / omega.abs();
        let pair = crate::dynamics::uniform_b_pair(b0, period);
        let q = PeriodicTrajectory::from_fn(
            |t| Vec3::new(radius * (omega * t).cos(), radius * (omega * t).sin(), 0.0),
            256,
            period,
            DerivativeScheme::Spectral,
        )
        .unwrap();
        let r = el_residual(&q, &pair, RHO_CAP_DEFAULT).unwrap();
        assert!(r < 1e-8, "gyration residual {r}");
    }

    #[test]
    fn infinite_flag_serialization() {
        let json = serde_json::to_value(ExtReal::Infinite).unwrap();
        assert_eq!(json, serde_json::json!({"flag": "infinite"}));
        let json = serde_json::to_value(ExtReal::Finite(-0.125)).unwrap();
        assert_eq!(json, serde_json::json!(-0.125));
    }

    #[test]
    fn translation_vanishing_for_gaussian_pulse() {
        let pair = catalog::gaussian_pulse(&Params::new(), 1.0).unwrap();
        let q = circle(0.5, 64, 1.0);
        let far = q.translated(Vec3::new(1e3, 0.0, 0.0));
        assert!(f_term(&far, &pair).unwrap().abs() < 1e-3);
    }
}
