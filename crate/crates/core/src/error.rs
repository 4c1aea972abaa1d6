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

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("evaluation point ({t}, [{x}, {y}, {z}]) lies inside singular ball #{ball}")]
    SingularPoint { t: f64, x: f64, y: f64, z: f64, ball: usize },

    #[error("non-finite value encountered while {context}")]
    NonFinite { context: String },

    #[error("sampled mean-value function diverges upward along the far-field probes")]
    UnboundedAbove,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("trajectory enters the singular-set margin")]
    SingularTrajectory,

    #[error("sup speed {sup_speed} exceeds the interior cap {cap}")]
    BoundaryOfK { sup_speed: f64, cap: f64 },

    #[error("no candidate base point with non-autonomous vector potential oscillation")]
    NoNonautonomousPoint,

    #[error("oscillation primitive is degenerate: {0}")]
    DegenerateOscillation(String),

    #[error("epsilon {epsilon} times sup|ġ| = {sup_gdot} leaves K")]
    SpeedCapExceeded { epsilon: f64, sup_gdot: f64 },

    #[error("witness certificate failed: {0}")]
    CertificateFailed(String),

    #[error("gradient flow started at an equilibrium of the reduced functional")]
    EquilibriumStart,

    #[error("gradient flow produced no negative action value within {0} accepted steps")]
    FlowStalled(usize),

    #[error("increment projection failed to meet the speed cap after {0} sweeps")]
    ProjectionStalled(usize),

    #[error("line search failed after {0} halvings")]
    LineSearchFailed(usize),

    #[error("all optimizer starts failed: {0}")]
    AllStartsFailed(String),

    #[error("integration approached the singular set at t = {time} (closest distance {distance})")]
    SingularEncounter { time: f64, distance: f64 },

    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),

    #[error("expression error: {0}")]
    Expr(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
