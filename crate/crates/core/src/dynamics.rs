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

//! Hamiltonian form of the Lorentz force equation: q̇ = p/√(1+|p|²),
//! ṗ = −∇Φ − ∂ₜA + q̇ × (∇×A). Fixed-step RK4 integration, the a priori
//! speed bound ρ = TC/√(1+T²C²), and the periodicity residual that
//! cross-validates variational minimizers as genuine orbits.

use crate::error::{Error, Result};
use crate::potentials::{GridSpec, LipschitzReport, PotentialPair, SampleBox};
use crate::trajectory::PeriodicTrajectory;
use crate::{Mat3, Vec3};
use serde::Serialize;
use std::sync::Arc;

/// One point of phase space; momentum is the relativistic p = γq̇.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhaseState {
    pub position: Vec3,
    pub momentum: Vec3,
    pub time: f64,
}

impl PhaseState {
    pub fn new(position: Vec3, momentum: Vec3, time: f64) -> Self {
        PhaseState { position, momentum, time }
    }

    /// q̇ = p/√(1+|p|²); |q̇| < 1 automatically.
    pub fn velocity(&self) -> Vec3 {
        let v = self.momentum / (1.0 + self.momentum.norm_squared()).sqrt();
        debug_assert!(v.norm() < 1.0);
        v
    }
}

/// Momentum of a point moving with velocity v, |v| < 1.
pub fn momentum_from_velocity(v: Vec3) -> Result<Vec3> {
    let s2 = v.norm_squared();
    if s2 >= 1.0 {
        return Err(Error::PreconditionViolated(format!(
            "momentum undefined at speed {} >= 1",
            s2.sqrt()
        )));
    }
    Ok(v / (1.0 - s2).sqrt())
}

/// Right-hand side (q̇, ṗ) of the Hamiltonian system at one state.
pub fn hamiltonian_rhs(pair: &PotentialPair, state: &PhaseState) -> Result<(Vec3, Vec3)> {
    let fields = pair.eval_fields(state.time, state.position)?;
    let dq = state.velocity();
    let dp = fields.electric + dq.cross(&fields.magnetic);
    Ok((dq, dp))
}

/// Classical fixed-step RK4 on the Hamiltonian system; returns all sampled
/// states including the initial one.
pub fn integrate(
    pair: &PotentialPair,
    state0: PhaseState,
    t_end: f64,
    steps: usize,
) -> Result<Vec<PhaseState>> {
    if steps == 0 || !(t_end > state0.time) {
        return Err(Error::PreconditionViolated("integrate needs steps > 0 and t_end > t0".into()));
    }
    let h = (t_end - state0.time) / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut s = state0;
    out.push(s);
    // an RK4 stage can probe inside a singular ball while the state point
    // is still outside; report that as an encounter, not an evaluation bug
    let eval = |t: f64, q: Vec3, p: Vec3| -> Result<(Vec3, Vec3)> {
        hamiltonian_rhs(pair, &PhaseState::new(q, p, t)).map_err(|e| match e {
            Error::SingularPoint { t, .. } => {
                Error::SingularEncounter { time: t, distance: pair.distance_to_singular(q) }
            }
            other => other,
        })
    };
    for step in 0..steps {
        let d = pair.distance_to_singular(s.position);
        if d <= 0.0 {
            return Err(Error::SingularEncounter { time: s.time, distance: d });
        }
        let (k1q, k1p) = eval(s.time, s.position, s.momentum)?;
        let (k2q, k2p) = eval(s.time + 0.5 * h, s.position + k1q * (0.5 * h), s.momentum + k1p * (0.5 * h))?;
        let (k3q, k3p) = eval(s.time + 0.5 * h, s.position + k2q * (0.5 * h), s.momentum + k2p * (0.5 * h))?;
        let (k4q, k4p) = eval(s.time + h, s.position + k3q * h, s.momentum + k3p * h)?;
        s = PhaseState::new(
            s.position + (k1q + k2q * 2.0 + k3q * 2.0 + k4q) * (h / 6.0),
            s.momentum + (k1p + k2p * 2.0 + k3p * 2.0 + k4p) * (h / 6.0),
            state0.time + (step + 1) as f64 * h,
        );
        if !s.position.iter().chain(s.momentum.iter()).all(|v| v.is_finite()) {
            return Err(Error::NonFinite { context: format!("RK4 state at t = {}", s.time) });
        }
        out.push(s);
    }
    Ok(out)
}

/// The a priori speed bound for periodic solutions.
#[derive(Debug, Clone, Serialize)]
pub struct VelocityBound {
    /// ρ = TC/√(1+T²C²); the sentinel 1.0 when the bound is not claimed.
    pub rho: f64,
    /// false when the singular set is non-empty (hypothesis 𝒮 = ∅ fails;
    /// no bound is claimed there).
    pub claimed: bool,
    pub lipschitz: LipschitzReport,
}

/// Computes ρ = TC/√(1+T²C²) with C = max{‖∂ₜA‖, ‖∇A‖_op, ‖∇Φ‖} estimated
/// over the box. With a non-empty singular set returns the sentinel 1.
pub fn velocity_bound(pair: &PotentialPair, sample_box: &SampleBox, grid: GridSpec) -> Result<VelocityBound> {
    let lipschitz = pair.lipschitz_and_c(sample_box, grid)?;
    if !pair.singular_set.is_empty() {
        return Ok(VelocityBound { rho: 1.0, claimed: false, lipschitz });
    }
    let tc = pair.period * lipschitz.c;
    Ok(VelocityBound { rho: tc / (1.0 + tc * tc).sqrt(), claimed: true, lipschitz })
}

/// Integrates one period from (q(0), γq̇(0)) and returns
/// (|q(T) − q(0)| + |p(T) − p(0)|)/(1 + |p(0)|) with 64·N RK4 steps.
pub fn periodicity_residual(pair: &PotentialPair, q: &PeriodicTrajectory) -> Result<f64> {
    let v0 = q.derivative()[0];
    let p0 = momentum_from_velocity(v0)?;
    let state0 = PhaseState::new(q.samples()[0], p0, 0.0);
    let states = integrate(pair, state0, q.period(), 64 * q.n())?;
    let end = states.last().expect("integrate returns at least one state");
    let residual = (end.position - state0.position).norm() + (end.momentum - p0).norm();
    Ok(residual / (1.0 + p0.norm()))
}

/// Test pair for the gyration benchmark: uniform B = (0,0,b0) from
/// A(x) = (−b0·x₂/2, b0·x₁/2, 0), Φ ≡ 0. Not in the admissible class
/// (zero electric field); used only as a closed-form oracle.
pub fn uniform_b_pair(b0: f64, period: f64) -> PotentialPair {
    let pair = PotentialPair::new(
        Arc::new(move |_t, x: Vec3| Vec3::new(-0.5 * b0 * x[1], 0.5 * b0 * x[0], 0.0)),
        Arc::new(|_t, _x| 0.0),
        period,
        vec![],
        "uniform_b",
    )
    .expect("valid test pair");
    pair.with_dt_a(Arc::new(|_t, _x| Vec3::zeros()))
        .with_jacobian_a(Arc::new(move |_t, _x| {
            Mat3::new(0.0, -0.5 * b0, 0.0, 0.5 * b0, 0.0, 0.0, 0.0, 0.0, 0.0)
        }))
        .with_grad_phi(Arc::new(|_t, _x| Vec3::zeros()))
}

/// Closed-form gyration data for uniform B: (period, radius, initial state)
/// of the circular orbit at speed `beta` starting at angle 0.
pub fn gyration_oracle(b0: f64, beta: f64) -> (f64, f64, PhaseState) {
    let gamma = 1.0 / (1.0 - beta * beta).sqrt();
    let omega = -b0 / gamma;
    let period = 2.0 * std::f64::consts::PI / omega.abs();
    let radius = beta / omega.abs();
    // q(0) = (r,0,0), q̇(0) = rΩ(0,1,0), p = γq̇
    let state = PhaseState::new(
        Vec3::new(radius, 0.0, 0.0),
        Vec3::new(0.0, gamma * radius * omega, 0.0),
        0.0,
    );
    (period, radius, state)
}

/// Orbit CSV (t, x1, x2, x3, p1, p2, p3), 17 significant digits.
pub fn states_to_csv(states: &[PhaseState]) -> String {
    let mut out = String::from("t,x1,x2,x3,p1,p2,p3\n");
    for s in states {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            s.time, s.position[0], s.position[1], s.position[2], s.momentum[0], s.momentum[1], s.momentum[2]
        ));
    }
    out
}
