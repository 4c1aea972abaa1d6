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

//! Periodic orbits of the relativistic Lorentz force equation
//! `d/dt(q̇/√(1−|q̇|²)) = E(t,q) + q̇ × B(t,q)` found by direct minimization
//! of the action functional `I(q) = ∫ (1 − √(1−|q̇|²)) + ∫ (q̇·A − Φ)`.
//!
//! The crate is organised around the pipeline:
//! potentials → trajectories → action evaluation → negative-action
//! witnesses → constrained minimization → dynamical cross-validation.

pub mod action;
pub mod catalog;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod expr;
pub mod optimizer;
pub mod potentials;
pub mod spectral;
pub mod trajectory;
pub mod witness;

pub use error::Error;

/// Position / velocity / field vectors in R³.
pub type Vec3 = nalgebra::Vector3<f64>;
/// Spatial Jacobians and Hessians.
pub type Mat3 = nalgebra::Matrix3<f64>;

/// Threshold under which a sampled quantity is treated as identically zero.
pub const TOL_ZERO: f64 = 1e-12;
