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

//! T-periodic curves in R³ on a uniform time grid: differentiation,
//! mean/oscillation decomposition q = q̃ + q̄, norms, and membership tests
//! for the speed-limited set K and the non-singular set Λ.

use crate::error::{Error, Result};
use crate::potentials::PotentialPair;
use crate::{spectral, Vec3};
use serde::{Deserialize, Serialize};

/// Round-off slack on the discrete speed constraint ‖q̇‖∞ ≤ 1.
pub const TOL_SPEED: f64 = 1e-9;
/// Relative slack on inequality checks.
pub const TOL_REL: f64 = 1e-9;

/// Default Λ margin: the non-singular set is open, a quantitative margin
/// makes the predicate decidable.
pub fn lambda_margin_default(period: f64) -> f64 {
    1e-6 * period
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeScheme {
    #[default]
    Spectral,
    Central2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicTrajectory {
    samples: Vec<Vec3>,
    period: f64,
    scheme: DerivativeScheme,
}

/// q = q̃ + q̄ with q̄ the sample mean and q̃ the zero-mean oscillation.
#[derive(Debug, Clone)]
pub struct TrajectoryDecomposition {
    pub mean: Vec3,
    pub oscillation: PeriodicTrajectory,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Norms {
    pub sup_norm: f64,
    pub l2_norm: f64,
    pub sup_speed: f64,
    pub w_norm: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PoincareWirtingerCheck {
    /// (π²/T²)·‖q̃‖₂²
    pub lhs: f64,
    /// ‖q̇‖₂²
    pub rhs: f64,
    pub ok: bool,
}

/// Differentiates an arbitrary T-periodic sample series with the given
/// scheme; shared by the action gradient and momentum residual.
pub fn differentiate(samples: &[Vec3], period: f64, scheme: DerivativeScheme) -> Vec<Vec3> {
    match scheme {
        DerivativeScheme::Spectral => spectral::derivative(samples, period),
        DerivativeScheme::Central2 => spectral::central2_derivative(samples, period),
    }
}

impl PeriodicTrajectory {
    pub fn new(samples: Vec<Vec3>, period: f64, scheme: DerivativeScheme) -> Result<Self> {
        if samples.len() < 8 || samples.len() % 2 != 0 {
            return Err(Error::InvalidTrajectory(format!(
                "need an even number of samples >= 8, got {}",
                samples.len()
            )));
        }
        if !(period > 0.0) {
            return Err(Error::InvalidTrajectory(format!("period must be positive, got {period}")));
        }
        if samples.iter().any(|s| !(s[0].is_finite() && s[1].is_finite() && s[2].is_finite())) {
            return Err(Error::InvalidTrajectory("non-finite sample".into()));
        }
        Ok(PeriodicTrajectory { samples, period, scheme })
    }

    pub fn constant(point: Vec3, n: usize, period: f64, scheme: DerivativeScheme) -> Result<Self> {
        Self::new(vec![point; n], period, scheme)
    }

    pub fn from_fn(
        f: impl Fn(f64) -> Vec3,
        n: usize,
        period: f64,
        scheme: DerivativeScheme,
    ) -> Result<Self> {
        let samples = (0..n).map(|i| f(i as f64 * period / n as f64)).collect();
        Self::new(samples, period, scheme)
    }

    pub fn n(&self) -> usize {
        self.samples.len()
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn scheme(&self) -> DerivativeScheme {
        self.scheme
    }

    pub fn samples(&self) -> &[Vec3] {
        &self.samples
    }

    pub fn times(&self) -> Vec<f64> {
        let n = self.n();
        (0..n).map(|i| i as f64 * self.period / n as f64).collect()
    }

    /// Rebuilds with the same period and scheme from new samples.
    pub fn with_samples(&self, samples: Vec<Vec3>) -> Result<Self> {
        Self::new(samples, self.period, self.scheme)
    }

    pub fn translated(&self, offset: Vec3) -> Self {
        let mut out = self.clone();
        for s in out.samples.iter_mut() {
            *s += offset;
        }
        out
    }

    pub fn derivative(&self) -> Vec<Vec3> {
        differentiate(&self.samples, self.period, self.scheme)
    }

    pub fn mean(&self) -> Vec3 {
        self.samples.iter().sum::<Vec3>() / self.n() as f64
    }

    pub fn decompose(&self) -> TrajectoryDecomposition {
        let mean = self.mean();
        let oscillation = PeriodicTrajectory {
            samples: self.samples.iter().map(|s| s - mean).collect(),
            period: self.period,
            scheme: self.scheme,
        };
        TrajectoryDecomposition { mean, oscillation }
    }

    pub fn norms(&self) -> Norms {
        let sup_norm = self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max);
        let h = self.period / self.n() as f64;
        let l2_norm = (self.samples.iter().map(|s| s.norm_squared()).sum::<f64>() * h).sqrt();
        let sup_speed = self.derivative().iter().map(|v| v.norm()).fold(0.0, f64::max);
        Norms { sup_norm, l2_norm, sup_speed, w_norm: sup_norm + sup_speed }
    }

    pub fn sup_speed(&self) -> f64 {
        self.derivative().iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// K = {q : ‖q̇‖∞ ≤ 1} with round-off slack.
    pub fn in_k(&self) -> bool {
        self.sup_speed() <= 1.0 + TOL_SPEED
    }

    /// Λ membership: samples and segment midpoints keep at least `margin`
    /// distance to every singular ball. Midpoints guard against a segment
    /// crossing a thin obstacle between nodes.
    pub fn in_lambda(&self, pair: &PotentialPair, margin: f64) -> bool {
        if pair.singular_set.is_empty() {
            return true;
        }
        let n = self.n();
        for i in 0..n {
            let a = self.samples[i];
            let b = self.samples[(i + 1) % n];
            let mid = (a + b) * 0.5;
            if pair.distance_to_singular(a) <= margin || pair.distance_to_singular(mid) <= margin {
                return false;
            }
        }
        true
    }

    /// (π²/T²)·‖q̃‖₂² ≤ ‖q̇‖₂² (Poincaré–Wirtinger).
    pub fn poincare_wirtinger_check(&self) -> PoincareWirtingerCheck {
        let dec = self.decompose();
        let tilde_l2 = dec.oscillation.norms().l2_norm;
        let h = self.period / self.n() as f64;
        let rhs = self.derivative().iter().map(|v| v.norm_squared()).sum::<f64>() * h;
        let lhs = (std::f64::consts::PI / self.period).powi(2) * tilde_l2 * tilde_l2;
        PoincareWirtingerCheck { lhs, rhs, ok: lhs <= rhs * (1.0 + TOL_REL) + TOL_REL }
    }

    /// ‖q̃‖∞ ≤ T for trajectories in K.
    pub fn tilde_sup_check(&self) -> Result<(f64, bool)> {
        if !self.in_k() {
            return Err(Error::PreconditionViolated(format!(
                "tilde_sup_check requires q in K, sup speed = {}",
                self.sup_speed()
            )));
        }
        let value = self.decompose().oscillation.norms().sup_norm;
        Ok((value, value <= self.period * (1.0 + TOL_REL)))
    }

    pub fn to_json(&self) -> String {
        let wire = TrajectoryWire {
            period: self.period,
            scheme: self.scheme,
            samples: self.samples.iter().map(|s| [s[0], s[1], s[2]]).collect(),
        };
        serde_json::to_string_pretty(&wire).expect("trajectory serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: TrajectoryWire =
            serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))?;
        Self::new(
            wire.samples.iter().map(|s| Vec3::new(s[0], s[1], s[2])).collect(),
            wire.period,
            wire.scheme,
        )
    }

    /// CSV rows (t, x1, x2, x3), one per node, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x1,x2,x3\n");
        for (t, s) in self.times().into_iter().zip(&self.samples) {
            out.push_str(&format!("{:.16e},{:.16e},{:.16e},{:.16e}\n", t, s[0], s[1], s[2]));
        }
        out
    }

    pub fn from_csv(text: &str, scheme: DerivativeScheme) -> Result<Self> {
        let mut times = Vec::new();
        let mut samples = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with('t')) {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(Error::Serialization(format!("CSV line {} needs 4 fields", lineno + 1)));
            }
            let vals: Vec<f64> = fields
                .iter()
                .map(|f| f.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Serialization(format!("CSV line {}: {e}", lineno + 1)))?;
            times.push(vals[0]);
            samples.push(Vec3::new(vals[1], vals[2], vals[3]));
        }
        if samples.len() < 2 {
            return Err(Error::Serialization("CSV has too few rows".into()));
        }
        // node spacing determines the period: t_i = i·T/N
        let period = (times[1] - times[0]) * samples.len() as f64;
        Self::new(samples, period, scheme)
    }
}

/// Random smooth trajectory in K: a few Fourier harmonics with decaying
/// random coefficients, rescaled so sup_speed lands in
/// (0.2·max_speed, max_speed].
pub fn random_k_trajectory(
    rng: &mut impl rand::Rng,
    n: usize,
    period: f64,
    center: Vec3,
    max_speed: f64,
) -> PeriodicTrajectory {
    use std::f64::consts::PI;
    let harmonics: Vec<(Vec3, Vec3)> = (1..=4)
        .map(|k| {
            let scale = 1.0 / (k * k) as f64;
            (
                Vec3::from_fn(|_, _| rng.random_range(-scale..scale)),
                Vec3::from_fn(|_, _| rng.random_range(-scale..scale)),
            )
        })
        .collect();
    let raw = PeriodicTrajectory::from_fn(
        |t| {
            let mut x = Vec3::zeros();
            for (k, (c, s)) in harmonics.iter().enumerate() {
                let w = 2.0 * PI * (k + 1) as f64 * t / period;
                x += c * w.cos() + s * w.sin();
            }
            x
        },
        n,
        period,
        DerivativeScheme::Spectral,
    )
    .expect("valid grid");
    let sup = raw.sup_speed().max(1e-300);
    let target = max_speed * rng.random_range(0.2..=1.0);
    let factor = target / sup;
    let samples = raw.samples().iter().map(|s| center + s * factor).collect();
    raw.with_samples(samples).expect("rescaling preserves validity")
}

impl Serialize for PeriodicTrajectory {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TrajectoryWire {
            period: self.period,
            scheme: self.scheme,
            samples: self.samples.iter().map(|v| [v[0], v[1], v[2]]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PeriodicTrajectory {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = TrajectoryWire::deserialize(d)?;
        PeriodicTrajectory::new(
            wire.samples.iter().map(|s| Vec3::new(s[0], s[1], s[2])).collect(),
            wire.period,
            wire.scheme,
        )
        .map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct TrajectoryWire {
    period: f64,
    #[serde(default)]
    scheme: DerivativeScheme,
    samples: Vec<[f64; 3]>,
}
