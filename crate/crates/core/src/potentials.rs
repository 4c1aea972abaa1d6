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

//! Electromagnetic potential pairs (A, Φ): field evaluation, gauge
//! transformations, time-mean structure (Ã, φ), and numerical audits of
//! membership in the admissible class (non-zero electric field, uniform
//! decay at infinity, Coulomb-type behaviour at singular balls).

use crate::error::{Error, Result};
use crate::{Mat3, Vec3};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub type TimeSpaceVec = Arc<dyn Fn(f64, Vec3) -> Vec3 + Send + Sync>;
pub type TimeSpaceScalar = Arc<dyn Fn(f64, Vec3) -> f64 + Send + Sync>;
pub type TimeSpaceMat = Arc<dyn Fn(f64, Vec3) -> Mat3 + Send + Sync>;

/// Relative scale of central finite-difference steps.
pub const FD_SCALE: f64 = 1e-5;
/// Threshold below which a sampled field magnitude counts as zero.
pub const TOL_FIELD_ZERO: f64 = 1e-9;

/// A closed ball of the singular set; points are radius-zero balls.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Ball {
    pub center: [f64; 3],
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Vec3, radius: f64) -> Self {
        Ball { center: [center[0], center[1], center[2]], radius }
    }

    pub fn center_vec(&self) -> Vec3 {
        Vec3::new(self.center[0], self.center[1], self.center[2])
    }

    /// Signed distance to the ball surface (negative inside).
    pub fn distance(&self, x: Vec3) -> f64 {
        (x - self.center_vec()).norm() - self.radius
    }
}

/// Axis-aligned spatial box for supremum estimation grids.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SampleBox {
    pub min: [f64; 3],
    pub max: [f64; 3],
}

impl SampleBox {
    pub fn new(min: Vec3, max: Vec3) -> Self {
        SampleBox { min: [min[0], min[1], min[2]], max: [max[0], max[1], max[2]] }
    }

    pub fn centered(center: Vec3, half_width: f64) -> Self {
        let h = Vec3::new(half_width, half_width, half_width);
        SampleBox::new(center - h, center + h)
    }

    /// Largest |x| over the box corners.
    pub fn outer_radius(&self) -> f64 {
        let mut r: f64 = 0.0;
        for ix in 0..2 {
            for iy in 0..2 {
                for iz in 0..2 {
                    let c = Vec3::new(
                        if ix == 0 { self.min[0] } else { self.max[0] },
                        if iy == 0 { self.min[1] } else { self.max[1] },
                        if iz == 0 { self.min[2] } else { self.max[2] },
                    );
                    r = r.max(c.norm());
                }
            }
        }
        r
    }

    /// Uniform grid with `res` nodes per axis (res ≥ 2).
    pub fn grid_points(&self, res: usize) -> Vec<Vec3> {
        let res = res.max(2);
        let mut pts = Vec::with_capacity(res * res * res);
        let step = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (res - 1) as f64;
        for i in 0..res {
            for j in 0..res {
                for k in 0..res {
                    pts.push(Vec3::new(
                        step(self.min[0], self.max[0], i),
                        step(self.min[1], self.max[1], j),
                        step(self.min[2], self.max[2], k),
                    ));
                }
            }
        }
        pts
    }
}

/// Grid metadata logged with every finite-grid supremum estimate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridSpec {
    /// Nodes per spatial axis.
    pub spatial: usize,
    /// Time nodes over one period.
    pub time: usize,
}

/// Electric and magnetic field at one event (t, x).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FieldSample {
    pub electric: Vec3,
    pub magnetic: Vec3,
    pub t: f64,
    pub x: Vec3,
}

/// Operator norm (largest singular value) of a 3×3 matrix.
pub fn op_norm(m: &Mat3) -> f64 {
    let eig = (m.transpose() * m).symmetric_eigenvalues();
    eig.max().max(0.0).sqrt()
}

/// Near-uniform unit directions from the golden-angle spiral.
pub fn fibonacci_sphere(n: usize) -> Vec<Vec3> {
    let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let th = golden * i as f64;
            Vec3::new(r * th.cos(), r * th.sin(), z)
        })
        .collect()
}

/// An electromagnetic potential pair (A, Φ) with period T and a finite
/// union of singular balls. Optional analytic derivatives sharpen field
/// evaluation; otherwise scale-aware central differences are used.
#[derive(Clone)]
pub struct PotentialPair {
    vector_potential: TimeSpaceVec,
    scalar_potential: TimeSpaceScalar,
    pub period: f64,
    pub singular_set: Vec<Ball>,
    analytic_jacobian_a: Option<TimeSpaceMat>,
    analytic_dt_a: Option<TimeSpaceVec>,
    analytic_grad_phi: Option<TimeSpaceVec>,
    pub label: String,
}

impl PotentialPair {
    pub fn new(
        vector_potential: TimeSpaceVec,
        scalar_potential: TimeSpaceScalar,
        period: f64,
        singular_set: Vec<Ball>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if !(period > 0.0) {
            return Err(Error::Config(format!("period must be positive, got {period}")));
        }
        if singular_set.iter().any(|b| b.radius < 0.0) {
            return Err(Error::Config("singular ball radius must be >= 0".into()));
        }
        Ok(PotentialPair {
            vector_potential,
            scalar_potential,
            period,
            singular_set,
            analytic_jacobian_a: None,
            analytic_dt_a: None,
            analytic_grad_phi: None,
            label: label.into(),
        })
    }

    pub fn with_jacobian_a(mut self, j: TimeSpaceMat) -> Self {
        self.analytic_jacobian_a = Some(j);
        self
    }

    pub fn with_dt_a(mut self, d: TimeSpaceVec) -> Self {
        self.analytic_dt_a = Some(d);
        self
    }

    pub fn with_grad_phi(mut self, g: TimeSpaceVec) -> Self {
        self.analytic_grad_phi = Some(g);
        self
    }

    pub fn has_analytic_derivatives(&self) -> bool {
        self.analytic_jacobian_a.is_some()
            && self.analytic_dt_a.is_some()
            && self.analytic_grad_phi.is_some()
    }

    pub fn a(&self, t: f64, x: Vec3) -> Vec3 {
        (self.vector_potential)(t, x)
    }

    pub fn phi(&self, t: f64, x: Vec3) -> f64 {
        (self.scalar_potential)(t, x)
    }

    /// Distance from `x` to the singular set surface (+∞ when 𝒮 = ∅).
    pub fn distance_to_singular(&self, x: Vec3) -> f64 {
        self.singular_set
            .iter()
            .map(|b| b.distance(x))
            .fold(f64::INFINITY, f64::min)
    }

    /// Index of a singular ball containing `x` (boundary included).
    pub fn singular_ball_containing(&self, x: Vec3) -> Option<usize> {
        self.singular_set.iter().position(|b| b.distance(x) <= 0.0)
    }

    fn spatial_fd_step(x: Vec3) -> f64 {
        FD_SCALE * x.norm().max(1.0)
    }

    fn time_fd_step(&self) -> f64 {
        FD_SCALE * self.period.max(1.0)
    }

    pub fn dt_a(&self, t: f64, x: Vec3) -> Vec3 {
        if let Some(f) = &self.analytic_dt_a {
            return f(t, x);
        }
        let h = self.time_fd_step();
        (self.a(t + h, x) - self.a(t - h, x)) / (2.0 * h)
    }

    /// Spatial Jacobian of A; entry (i, j) is ∂A_i/∂x_j.
    pub fn jacobian_a(&self, t: f64, x: Vec3) -> Mat3 {
        if let Some(f) = &self.analytic_jacobian_a {
            return f(t, x);
        }
        let h = Self::spatial_fd_step(x);
        let mut m = Mat3::zeros();
        for j in 0..3 {
            let mut e = Vec3::zeros();
            e[j] = h;
            let col = (self.a(t, x + e) - self.a(t, x - e)) / (2.0 * h);
            m.set_column(j, &col);
        }
        m
    }

    pub fn grad_phi(&self, t: f64, x: Vec3) -> Vec3 {
        if let Some(f) = &self.analytic_grad_phi {
            return f(t, x);
        }
        let h = Self::spatial_fd_step(x);
        let mut g = Vec3::zeros();
        for j in 0..3 {
            let mut e = Vec3::zeros();
            e[j] = h;
            g[j] = (self.phi(t, x + e) - self.phi(t, x - e)) / (2.0 * h);
        }
        g
    }

    pub fn curl_a(&self, t: f64, x: Vec3) -> Vec3 {
        let j = self.jacobian_a(t, x);
        Vec3::new(
            j[(2, 1)] - j[(1, 2)],
            j[(0, 2)] - j[(2, 0)],
            j[(1, 0)] - j[(0, 1)],
        )
    }

    /// E = −∂ₜA − ∇Φ and B = ∇×A at one event.
    pub fn eval_fields(&self, t: f64, x: Vec3) -> Result<FieldSample> {
        if let Some(ball) = self.singular_ball_containing(x) {
            return Err(Error::SingularPoint { t, x: x[0], y: x[1], z: x[2], ball });
        }
        let electric = -self.dt_a(t, x) - self.grad_phi(t, x);
        let magnetic = self.curl_a(t, x);
        if !electric.iter().chain(magnetic.iter()).all(|v| v.is_finite()) {
            return Err(Error::NonFinite { context: format!("evaluating fields at t={t}, x={x:?}") });
        }
        Ok(FieldSample { electric, magnetic, t, x })
    }

    /// Uniform time nodes t_i = i·T/n over one period.
    pub fn time_nodes(&self, n: usize) -> Vec<f64> {
        (0..n).map(|i| i as f64 * self.period / n as f64).collect()
    }

    /// Time average (1/T)∫₀ᵀ A(s,x) ds by periodic trapezoid on `nt` nodes.
    pub fn mean_a(&self, x: Vec3, nt: usize) -> Vec3 {
        let sum: Vec3 = self.time_nodes(nt).iter().map(|&t| self.a(t, x)).sum();
        sum / nt as f64
    }

    /// Oscillating part Ã(t,x) = A(t,x) − (1/T)∫₀ᵀ A(s,x) ds.
    pub fn tilde_a(&self, t: f64, x: Vec3, nt: usize) -> Vec3 {
        self.a(t, x) - self.mean_a(x, nt)
    }

    /// Mean-value function φ(x) = ∫₀ᵀ Φ(t,x) dt; −∞ inside singular balls.
    pub fn varphi(&self, x: Vec3, nt: usize) -> f64 {
        if self.singular_ball_containing(x).is_some() {
            return f64::NEG_INFINITY;
        }
        let sum: f64 = self.time_nodes(nt).iter().map(|&t| self.phi(t, x)).sum();
        sum * self.period / nt as f64
    }

    /// Max of |A(0,x) − A(T,x)| over probe points; should vanish.
    pub fn periodicity_defect(&self, probes: &[Vec3]) -> f64 {
        probes
            .iter()
            .map(|&x| (self.a(0.0, x) - self.a(self.period, x)).norm())
            .fold(0.0, f64::max)
    }

    /// Shifts Φ by −(1/T)·sup φ so that sup φ = 0, estimating the supremum
    /// over a uniform grid on `sample_box` plus far-field probes.
    pub fn normalize_phi(&self, sample_box: &SampleBox, res: usize, nt: usize) -> Result<PotentialPair> {
        let mut sup = f64::NEG_INFINITY;
        for x in sample_box.grid_points(res) {
            let v = self.varphi(x, nt);
            if v.is_finite() {
                sup = sup.max(v);
            }
        }
        // far-field probes at geometrically growing radii
        let base = sample_box.outer_radius().max(1.0);
        let dirs = fibonacci_sphere(32);
        let mut far_maxima = Vec::new();
        for mult in [2.0, 4.0, 8.0, 16.0] {
            let r = base * mult;
            let m = dirs
                .iter()
                .map(|u| self.varphi(u * r, nt))
                .filter(|v| v.is_finite())
                .fold(f64::NEG_INFINITY, f64::max);
            far_maxima.push(m);
            sup = sup.max(m);
        }
        let increasing = far_maxima.windows(2).all(|w| w[1] > w[0] + TOL_FIELD_ZERO);
        if increasing {
            return Err(Error::UnboundedAbove);
        }
        if !sup.is_finite() {
            return Err(Error::NonFinite { context: "estimating sup of the mean-value function".into() });
        }
        let shift = sup / self.period;
        let phi = self.scalar_potential.clone();
        let mut out = self.clone();
        out.scalar_potential = Arc::new(move |t, x| phi(t, x) - shift);
        out.label = format!("{} (phi normalized)", self.label);
        Ok(out)
    }

    /// Applies (Φ, A) → (Φ + ∂ₜf, A − ∇f). The fields of the input and
    /// output pairs agree pointwise; that is the defining contract.
    pub fn gauge_transform(&self, f: &GaugeFunction) -> PotentialPair {
        let phi = self.scalar_potential.clone();
        let a = self.vector_potential.clone();
        let g1 = f.clone();
        let g2 = f.clone();
        let mut out = self.clone();
        out.scalar_potential = Arc::new(move |t, x| phi(t, x) + g1.dt(t, x));
        out.vector_potential = Arc::new(move |t, x| a(t, x) - g2.grad(t, x));
        // derivative closures compose the originals (analytic when present)
        // with the gauge derivatives
        let base = self.clone();
        let g = f.clone();
        out.analytic_dt_a = Some(Arc::new(move |t, x| base.dt_a(t, x) - g.dt_grad(t, x)));
        let base = self.clone();
        let g = f.clone();
        out.analytic_jacobian_a = Some(Arc::new(move |t, x| base.jacobian_a(t, x) - g.hessian(t, x)));
        let base = self.clone();
        let g = f.clone();
        out.analytic_grad_phi = Some(Arc::new(move |t, x| base.grad_phi(t, x) + g.dt_grad(t, x)));
        out.label = format!("{} (gauged)", self.label);
        out
    }

    /// Decay profiles, electric-field audit, and Coulomb minorant fits.
    pub fn admissibility_report(
        &self,
        radii: &[f64],
        samples_per_sphere: usize,
        nt: usize,
    ) -> Result<AdmissibilityReport> {
        if radii.is_empty() || radii.windows(2).any(|w| w[1] <= w[0]) || radii[0] <= 0.0 {
            return Err(Error::Config("radii must be positive and strictly increasing".into()));
        }
        let dirs = fibonacci_sphere(samples_per_sphere);
        let times = self.time_nodes(nt);

        let mut decay_a_profile = Vec::new();
        let mut decay_phi_profile = Vec::new();
        let mut probe_points: Vec<Vec3> = Vec::new();
        // interior probes so a field concentrated near the origin is seen
        let r_min = radii[0];
        for r in [0.0, r_min / 4.0, r_min / 2.0] {
            if r == 0.0 {
                let origin = Vec3::zeros();
                if self.distance_to_singular(origin) > 0.0 {
                    probe_points.push(origin);
                }
            } else {
                for u in dirs.iter().step_by(8.max(dirs.len() / 16)) {
                    let x = u * r;
                    if self.distance_to_singular(x) > 0.0 {
                        probe_points.push(x);
                    }
                }
            }
        }
        for &r in radii {
            let mut max_a = 0.0_f64;
            let mut max_phi = 0.0_f64;
            for u in &dirs {
                let x = u * r;
                if self.distance_to_singular(x) <= 0.0 {
                    continue;
                }
                probe_points.push(x);
                for &t in &times {
                    max_a = max_a.max(self.dt_a(t, x).norm() + op_norm(&self.jacobian_a(t, x)));
                    max_phi = max_phi.max(self.grad_phi(t, x).norm());
                }
            }
            decay_a_profile.push((r, max_a));
            decay_phi_profile.push((r, max_phi));
        }

        let mut max_e = 0.0_f64;
        let mut max_dt_a = 0.0_f64;
        let mut phi_sup = f64::NEG_INFINITY;
        for &x in &probe_points {
            for &t in &times {
                let dta = self.dt_a(t, x);
                max_e = max_e.max((dta + self.grad_phi(t, x)).norm());
                max_dt_a = max_dt_a.max(dta.norm());
            }
            let v = self.varphi(x, nt);
            if v.is_finite() {
                phi_sup = phi_sup.max(v);
            }
        }

        let mut coulomb_minorant = Vec::new();
        for ball in &self.singular_set {
            let mut fitted = f64::INFINITY;
            for delta in [0.05, 0.1, 0.2, 0.4] {
                for u in &dirs {
                    let x = ball.center_vec() + u * (ball.radius + delta);
                    for &t in &times {
                        fitted = fitted.min(-self.phi(t, x) * delta);
                    }
                }
            }
            coulomb_minorant.push(CoulombMinorantFit {
                ball: *ball,
                fitted_r: fitted,
                ok: fitted > 0.0,
            });
        }

        Ok(AdmissibilityReport {
            nonzero_electric_field: max_e > TOL_FIELD_ZERO,
            nonautonomous_a: max_dt_a > TOL_FIELD_ZERO,
            decay_a_profile,
            decay_phi_profile,
            coulomb_minorant,
            phi_sup_estimate: phi_sup,
            samples_per_sphere,
            time_nodes: nt,
        })
    }

    /// Grid estimates of M = ‖∇A‖_∞ (operator norm) and
    /// C = max{‖∂ₜA‖_∞, M, ‖∇Φ‖_∞}. A determinant-based variant is
    /// recorded alongside for reference; it does not enter C.
    pub fn lipschitz_and_c(&self, sample_box: &SampleBox, grid: GridSpec) -> Result<LipschitzReport> {
        let times = self.time_nodes(grid.time);
        let mut m = 0.0_f64;
        let mut max_dt_a = 0.0_f64;
        let mut max_grad_phi = 0.0_f64;
        let mut max_abs_det = 0.0_f64;
        for x in sample_box.grid_points(grid.spatial) {
            for &t in &times {
                let j = self.jacobian_a(t, x);
                let dta = self.dt_a(t, x);
                let gp = self.grad_phi(t, x);
                let vals = [j.norm(), dta.norm(), gp.norm()];
                if vals.iter().any(|v| !v.is_finite()) {
                    return Err(Error::NonFinite {
                        context: format!("Lipschitz grid scan at t={t}, x={x:?}"),
                    });
                }
                m = m.max(op_norm(&j));
                max_dt_a = max_dt_a.max(dta.norm());
                max_grad_phi = max_grad_phi.max(gp.norm());
                max_abs_det = max_abs_det.max(j.determinant().abs());
            }
        }
        Ok(LipschitzReport {
            m,
            c: m.max(max_dt_a).max(max_grad_phi),
            max_dt_a,
            max_grad_phi,
            max_abs_det_jacobian: max_abs_det,
            sample_box: *sample_box,
            grid,
        })
    }
}

/// Gauge function f(t,x); derivatives are analytic when supplied,
/// otherwise scale-aware central differences.
#[derive(Clone)]
pub struct GaugeFunction {
    f: TimeSpaceScalar,
    period: f64,
    dt_f: Option<TimeSpaceScalar>,
    grad_f: Option<TimeSpaceVec>,
    dt_grad_f: Option<TimeSpaceVec>,
    hessian_f: Option<TimeSpaceMat>,
}

impl GaugeFunction {
    pub fn new(f: TimeSpaceScalar, period: f64) -> Self {
        GaugeFunction { f, period, dt_f: None, grad_f: None, dt_grad_f: None, hessian_f: None }
    }

    pub fn with_dt(mut self, d: TimeSpaceScalar) -> Self {
        self.dt_f = Some(d);
        self
    }

    pub fn with_grad(mut self, g: TimeSpaceVec) -> Self {
        self.grad_f = Some(g);
        self
    }

    pub fn with_dt_grad(mut self, g: TimeSpaceVec) -> Self {
        self.dt_grad_f = Some(g);
        self
    }

    pub fn with_hessian(mut self, h: TimeSpaceMat) -> Self {
        self.hessian_f = Some(h);
        self
    }

    pub fn value(&self, t: f64, x: Vec3) -> f64 {
        (self.f)(t, x)
    }

    /// Max of |f(0,x) − f(T,x)| over probes; must vanish for the transform
    /// to preserve T-periodicity of the pair.
    pub fn periodicity_defect(&self, probes: &[Vec3]) -> f64 {
        probes
            .iter()
            .map(|&x| (self.value(0.0, x) - self.value(self.period, x)).abs())
            .fold(0.0, f64::max)
    }

    fn ht(&self) -> f64 {
        FD_SCALE * self.period.max(1.0)
    }

    pub fn dt(&self, t: f64, x: Vec3) -> f64 {
        if let Some(d) = &self.dt_f {
            return d(t, x);
        }
        let h = self.ht();
        (self.value(t + h, x) - self.value(t - h, x)) / (2.0 * h)
    }

    pub fn grad(&self, t: f64, x: Vec3) -> Vec3 {
        if let Some(g) = &self.grad_f {
            return g(t, x);
        }
        let h = FD_SCALE * x.norm().max(1.0);
        let mut out = Vec3::zeros();
        for j in 0..3 {
            let mut e = Vec3::zeros();
            e[j] = h;
            out[j] = (self.value(t, x + e) - self.value(t, x - e)) / (2.0 * h);
        }
        out
    }

    pub fn dt_grad(&self, t: f64, x: Vec3) -> Vec3 {
        if let Some(g) = &self.dt_grad_f {
            return g(t, x);
        }
        let h = self.ht();
        (self.grad(t + h, x) - self.grad(t - h, x)) / (2.0 * h)
    }

    pub fn hessian(&self, t: f64, x: Vec3) -> Mat3 {
        if let Some(m) = &self.hessian_f {
            return m(t, x);
        }
        let h = FD_SCALE * x.norm().max(1.0);
        let mut m = Mat3::zeros();
        for j in 0..3 {
            let mut e = Vec3::zeros();
            e[j] = h;
            let col = (self.grad(t, x + e) - self.grad(t, x - e)) / (2.0 * h);
            m.set_column(j, &col);
        }
        m
    }
}

/// Coulomb-minorant fit around one singular ball: the largest r with
/// −Φ(t,x) ≥ r / dist(x, ∂ball) over the sampled shells.
#[derive(Debug, Clone, Serialize)]
pub struct CoulombMinorantFit {
    pub ball: Ball,
    pub fitted_r: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdmissibilityReport {
    pub nonzero_electric_field: bool,
    pub nonautonomous_a: bool,
    /// (radius, max over sphere×time of |∂ₜA| + ‖∇A‖_op)
    pub decay_a_profile: Vec<(f64, f64)>,
    /// (radius, max over sphere×time of |∇Φ|)
    pub decay_phi_profile: Vec<(f64, f64)>,
    pub coulomb_minorant: Vec<CoulombMinorantFit>,
    pub phi_sup_estimate: f64,
    pub samples_per_sphere: usize,
    pub time_nodes: usize,
}

impl AdmissibilityReport {
    pub fn coulomb_minorant_ok(&self) -> bool {
        self.coulomb_minorant.iter().all(|f| f.ok)
    }
}

/// Grid suprema backing the velocity bound and witness thresholds.
#[derive(Debug, Clone, Serialize)]
pub struct LipschitzReport {
    /// max over the grid of the operator norm of ∇A
    pub m: f64,
    /// max{‖∂ₜA‖, ‖∇A‖_op, ‖∇Φ‖} over the grid
    pub c: f64,
    pub max_dt_a: f64,
    pub max_grad_phi: f64,
    /// the determinant-based term as literally defined upstream; not used
    /// in C because |∇×A| is not dominated by a determinant
    pub max_abs_det_jacobian: f64,
    pub sample_box: SampleBox,
    pub grid: GridSpec,
}
