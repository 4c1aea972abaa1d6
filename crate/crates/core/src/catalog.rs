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

//! Named potential catalog. Every entry carries analytic derivatives so
//! field evaluation, gradients, and gauge checks run at machine accuracy.

use crate::error::{Error, Result};
use crate::potentials::{Ball, PotentialPair};
use crate::{Mat3, Vec3};
use serde_json::Value;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

pub type Params = BTreeMap<String, Value>;

/// max of |d/dr e^(−r²)| = √(2/e), attained at r = 1/√2
const GAUSSIAN_GRAD_MAX: f64 = 0.857_763_884_960_707_1;

fn get_f64(params: &Params, key: &str, default: f64) -> Result<f64> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_f64()
            .ok_or_else(|| Error::Config(format!("parameter `{key}` must be a number"))),
    }
}

fn get_vec3(params: &Params, key: &str, default: Vec3) -> Result<Vec3> {
    match params.get(key) {
        None => Ok(default),
        Some(Value::Array(a)) if a.len() == 3 => {
            let mut out = Vec3::zeros();
            for (i, v) in a.iter().enumerate() {
                out[i] = v
                    .as_f64()
                    .ok_or_else(|| Error::Config(format!("parameter `{key}` must be numeric")))?;
            }
            Ok(out)
        }
        Some(_) => Err(Error::Config(format!("parameter `{key}` must be a 3-array"))),
    }
}

pub fn catalog_names() -> &'static [&'static str] {
    &[
        "gaussian_pulse",
        "bump_compact",
        "coulomb",
        "log_wire",
        "magnetostatic",
        "slow_envelope",
        "uniform_oscillation",
        "inverse_radial",
    ]
}

/// Builds a catalog pair by name with the given parameter map.
pub fn build(name: &str, params: &Params, period: f64) -> Result<PotentialPair> {
    match name {
        "gaussian_pulse" => gaussian_pulse(params, period),
        "bump_compact" => bump_compact(params, period),
        "coulomb" => coulomb(params, period),
        "log_wire" => log_wire(params, period),
        "magnetostatic" => magnetostatic(params, period),
        "slow_envelope" => slow_envelope(params, period),
        "uniform_oscillation" => uniform_oscillation(params, period),
        "inverse_radial" => inverse_radial(params, period),
        _ => Err(Error::Config(format!(
            "unknown catalog potential `{name}` (known: {})",
            catalog_names().join(", ")
        ))),
    }
}

/// A(t,x) = a·sin(2πt/T)·e^(−|x−c|²/w²)·pol, Φ ≡ 0.
pub fn gaussian_pulse(params: &Params, period: f64) -> Result<PotentialPair> {
    let a = get_f64(params, "amplitude", 1.0)?;
    let w = get_f64(params, "width", 1.0)?;
    let pol = get_vec3(params, "polarization", Vec3::new(1.0, 0.0, 0.0))?;
    let center = get_vec3(params, "center", Vec3::zeros())?;
    let omega = 2.0 * PI / period;
    let w2 = w * w;

    let env = move |x: Vec3| (-(x - center).norm_squared() / w2).exp();
    let pair = PotentialPair::new(
        Arc::new(move |t: f64, x: Vec3| pol * (a * (omega * t).sin() * env(x))),
        Arc::new(|_t, _x| 0.0),
        period,
        vec![],
        "gaussian_pulse",
    )?;
    Ok(pair
        .with_dt_a(Arc::new(move |t, x| pol * (a * omega * (omega * t).cos() * env(x))))
        .with_jacobian_a(Arc::new(move |t, x| {
            let grad_env = (x - center) * (-2.0 / w2) * env(x);
            pol * grad_env.transpose() * (a * (omega * t).sin())
        }))
        .with_grad_phi(Arc::new(|_t, _x| Vec3::zeros())))
}

fn bump(r: f64, support: f64) -> f64 {
    if r >= support {
        return 0.0;
    }
    let u = r / support;
    (1.0 - 1.0 / (1.0 - u * u)).exp()
}

fn bump_grad(x: Vec3, support: f64) -> Vec3 {
    let r = x.norm();
    if r >= support || r == 0.0 {
        return Vec3::zeros();
    }
    let u = r / support;
    let d = bump(r, support) * (-2.0 * u / (support * (1.0 - u * u).powi(2)));
    x * (d / r)
}

/// Nested compact supports: Ã supported on |x| < a_support, Φ on the
/// strictly smaller |x| < phi_support.
pub fn bump_compact(params: &Params, period: f64) -> Result<PotentialPair> {
    let a = get_f64(params, "amplitude", 1.0)?;
    let a_support = get_f64(params, "a_support", 4.0)?;
    let phi_amp = get_f64(params, "phi_amplitude", 1.0)?;
    let phi_support = get_f64(params, "phi_support", 1.0)?;
    if phi_support >= a_support {
        return Err(Error::Config("bump_compact requires phi_support < a_support".into()));
    }
    let omega = 2.0 * PI / period;
    let e1 = Vec3::new(1.0, 0.0, 0.0);

    let pair = PotentialPair::new(
        Arc::new(move |t: f64, x: Vec3| e1 * (a * (omega * t).sin() * bump(x.norm(), a_support))),
        Arc::new(move |_t, x: Vec3| -phi_amp * bump(x.norm(), phi_support)),
        period,
        vec![],
        "bump_compact",
    )?;
    Ok(pair
        .with_dt_a(Arc::new(move |t, x: Vec3| {
            e1 * (a * omega * (omega * t).cos() * bump(x.norm(), a_support))
        }))
        .with_jacobian_a(Arc::new(move |t, x| {
            e1 * bump_grad(x, a_support).transpose() * (a * (omega * t).sin())
        }))
        .with_grad_phi(Arc::new(move |_t, x| -bump_grad(x, phi_support) * phi_amp)))
}

/// Φ(x) = −k/|x − c|, A ≡ 0, singular point at c.
pub fn coulomb(params: &Params, period: f64) -> Result<PotentialPair> {
    let k = get_f64(params, "charge", 1.0)?;
    let center = get_vec3(params, "center", Vec3::zeros())?;
    let pair = PotentialPair::new(
        Arc::new(|_t, _x| Vec3::zeros()),
        Arc::new(move |_t, x: Vec3| {
            let r = (x - center).norm();
            if r == 0.0 {
                f64::NEG_INFINITY
            } else {
                -k / r
            }
        }),
        period,
        vec![Ball::new(center, 0.0)],
        "coulomb",
    )?;
    Ok(pair
        .with_dt_a(Arc::new(|_t, _x| Vec3::zeros()))
        .with_jacobian_a(Arc::new(|_t, _x| Mat3::zeros()))
        .with_grad_phi(Arc::new(move |_t, x: Vec3| {
            let d = x - center;
            d * (k / d.norm().powi(3))
        })))
}

/// A(t,x) = (0, 0, a·sin(2πt/T)·½·log(1 + x₁² + x₂²)), Φ ≡ 0.
/// |A| grows logarithmically while its gradients decay.
pub fn log_wire(params: &Params, period: f64) -> Result<PotentialPair> {
    let a = get_f64(params, "amplitude", 1.0)?;
    let omega = 2.0 * PI / period;
    let pair = PotentialPair::new(
        Arc::new(move |t: f64, x: Vec3| {
            let rho2 = x[0] * x[0] + x[1] * x[1];
            Vec3::new(0.0, 0.0, a * (omega * t).sin() * 0.5 * (1.0 + rho2).ln())
        }),
        Arc::new(|_t, _x| 0.0),
        period,
        vec![],
        "log_wire",
    )?;
    Ok(pair
        .with_dt_a(Arc::new(move |t, x: Vec3| {
            let rho2 = x[0] * x[0] + x[1] * x[1];
            Vec3::new(0.0, 0.0, a * omega * (omega * t).cos() * 0.5 * (1.0 + rho2).ln())
        }))
        .with_jacobian_a(Arc::new(move |t, x: Vec3| {
            let rho2 = x[0] * x[0] + x[1] * x[1];
            let s = a * (omega * t).sin() / (1.0 + rho2);
            let mut m = Mat3::zeros();
            m[(2, 0)] = s * x[0];
            m[(2, 1)] = s * x[1];
            m
        }))
        .with_grad_phi(Arc::new(|_t, _x| Vec3::zeros())))
}

/// Autonomous A(x) = s·e^(−|x|²)·e₁ with ‖∇A‖_∞ = 0.99·grad_cap < grad_cap,
/// Φ ≡ 0. Not admissible (zero electric field); used as the non-negativity
/// counterexample.
pub fn magnetostatic(params: &Params, period: f64) -> Result<PotentialPair> {
    let cap = get_f64(params, "grad_cap", PI / (2.0 * period))?;
    let scale = 0.99 * cap / GAUSSIAN_GRAD_MAX;
    let e1 = Vec3::new(1.0, 0.0, 0.0);
    let pair = PotentialPair::new(
        Arc::new(move |_t, x: Vec3| e1 * (scale * (-x.norm_squared()).exp())),
        Arc::new(|_t, _x| 0.0),
        period,
        vec![],
        "magnetostatic",
    )?;
    Ok(pair
        .with_dt_a(Arc::new(|_t, _x| Vec3::zeros()))
        .with_jacobian_a(Arc::new(move |_t, x: Vec3| {
            let grad_env = x * (-2.0 * (-x.norm_squared()).exp());
            e1 * grad_env.transpose() * scale
        }))
        .with_grad_phi(Arc::new(|_t, _x| Vec3::zeros())))
}

/// Gaussian Φ decaying faster than the oscillation envelope of A:
/// Φ(x) = −c·e^(−|x|²/w_Φ²) with w_Φ = 1 against A's envelope width √8,
/// so the decay-ratio hypotheses hold along bₙ = (n,0,0).
pub fn slow_envelope(params: &Params, period: f64) -> Result<PotentialPair> {
    let a = get_f64(params, "amplitude", 1.0)?;
    let a_width = get_f64(params, "a_width", 8.0_f64.sqrt())?;
    let phi_amp = get_f64(params, "phi_amplitude", 1.0)?;
    let phi_width = get_f64(params, "phi_width", 1.0)?;
    let omega = 2.0 * PI / period;
    let aw2 = a_width * a_width;
    let pw2 = phi_width * phi_width;
    let e1 = Vec3::new(1.0, 0.0, 0.0);

    let env = move |x: Vec3| (-x.norm_squared() / aw2).exp();
    let pair = PotentialPair::new(
        Arc::new(move |t: f64, x: Vec3| e1 * (a * (omega * t).sin() * env(x))),
        Arc::new(move |_t, x: Vec3| -phi_amp * (-x.norm_squared() / pw2).exp()),
        period,
        vec![],
        "slow_envelope",
    )?;
    Ok(pair
        .with_dt_a(Arc::new(move |t, x| e1 * (a * omega * (omega * t).cos() * env(x))))
        .with_jacobian_a(Arc::new(move |t, x| {
            let grad_env = x * (-2.0 / aw2) * env(x);
            e1 * grad_env.transpose() * (a * (omega * t).sin())
        }))
        .with_grad_phi(Arc::new(move |_t, x: Vec3| {
            x * (2.0 * phi_amp / pw2 * (-x.norm_squared() / pw2).exp())
        })))
}

/// Spatially constant A(t) = a·sin(2πt/T)·pol with zero Jacobian (M = 0).
pub fn uniform_oscillation(params: &Params, period: f64) -> Result<PotentialPair> {
    let a = get_f64(params, "amplitude", 1.0)?;
    let pol = get_vec3(params, "polarization", Vec3::new(1.0, 0.0, 0.0))?;
    let omega = 2.0 * PI / period;
    let pair = PotentialPair::new(
        Arc::new(move |t: f64, _x| pol * (a * (omega * t).sin())),
        Arc::new(|_t, _x| 0.0),
        period,
        vec![],
        "uniform_oscillation",
    )?;
    Ok(pair
        .with_dt_a(Arc::new(move |t, _x| pol * (a * omega * (omega * t).cos())))
        .with_jacobian_a(Arc::new(|_t, _x| Mat3::zeros()))
        .with_grad_phi(Arc::new(|_t, _x| Vec3::zeros())))
}

/// A(t,x) = a·sin(2πt/T)/|x|·e₁ with a singular point at the origin; the
/// oscillation amplitude diverges as |x| → 0.
pub fn inverse_radial(params: &Params, period: f64) -> Result<PotentialPair> {
    let a = get_f64(params, "amplitude", 1.0)?;
    let omega = 2.0 * PI / period;
    let e1 = Vec3::new(1.0, 0.0, 0.0);
    let pair = PotentialPair::new(
        Arc::new(move |t: f64, x: Vec3| {
            let r = x.norm();
            if r == 0.0 {
                Vec3::new(f64::INFINITY, 0.0, 0.0)
            } else {
                e1 * (a * (omega * t).sin() / r)
            }
        }),
        Arc::new(|_t, _x| 0.0),
        period,
        vec![Ball::new(Vec3::zeros(), 0.0)],
        "inverse_radial",
    )?;
    Ok(pair
        .with_dt_a(Arc::new(move |t, x: Vec3| e1 * (a * omega * (omega * t).cos() / x.norm())))
        .with_jacobian_a(Arc::new(move |t, x: Vec3| {
            let r = x.norm();
            e1 * (x * (-1.0 / (r * r * r))).transpose() * (a * (omega * t).sin())
        }))
        .with_grad_phi(Arc::new(|_t, _x| Vec3::zeros())))
}
