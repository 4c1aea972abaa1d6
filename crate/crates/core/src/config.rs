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

//! JSON run configuration: a potential (catalog entry or closed-form
//! expressions), the period, grids, and optimizer settings.

use crate::catalog::{self, Params};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::optimizer::MinimizeConfig;
use crate::potentials::{Ball, GridSpec, PotentialPair, SampleBox};
use crate::Vec3;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialSpec {
    /// A named catalog pair with its parameter map.
    Catalog {
        name: String,
        #[serde(default)]
        params: Params,
    },
    /// Closed-form expressions in t, x1, x2, x3 (grammar in the expr
    /// module) for the three components of A and for Φ.
    Expression {
        a: [String; 3],
        phi: String,
        #[serde(default)]
        singular_balls: Vec<Ball>,
    },
}

/// Spatial box and grid resolutions for supremum estimates.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct BoxSpec {
    pub center: [f64; 3],
    pub half_width: f64,
    pub spatial: usize,
    pub time: usize,
}

impl Default for BoxSpec {
    fn default() -> Self {
        BoxSpec { center: [0.0; 3], half_width: 4.0, spatial: 9, time: 16 }
    }
}

impl BoxSpec {
    pub fn sample_box(&self) -> SampleBox {
        SampleBox::centered(Vec3::new(self.center[0], self.center[1], self.center[2]), self.half_width)
    }

    pub fn grid(&self) -> GridSpec {
        GridSpec { spatial: self.spatial, time: self.time }
    }
}

fn default_period() -> f64 {
    1.0
}

fn default_grid_size() -> usize {
    256
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub potential: PotentialSpec,
    #[serde(default = "default_period")]
    pub period: f64,
    /// Time nodes per period for trajectories (even, ≥ 8).
    #[serde(default = "default_grid_size")]
    pub grid_size: usize,
    #[serde(default, rename = "box")]
    pub sample_box: BoxSpec,
    #[serde(default)]
    pub optimizer: MinimizeConfig,
    #[serde(default)]
    pub seed: u64,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig> {
        let config: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("config parse: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.period > 0.0) {
            return Err(Error::Config(format!("period must be positive, got {}", self.period)));
        }
        if self.grid_size < 8 || self.grid_size % 2 != 0 {
            return Err(Error::Config(format!(
                "grid_size must be an even number >= 8, got {}",
                self.grid_size
            )));
        }
        self.optimizer.validate()?;
        // building the pair validates catalog names and expression syntax
        self.build_pair().map(|_| ())
    }

    /// Optimizer settings with the run-level grid size applied.
    pub fn minimize_config(&self) -> MinimizeConfig {
        MinimizeConfig { grid_size: self.grid_size, ..self.optimizer.clone() }
    }

    pub fn build_pair(&self) -> Result<PotentialPair> {
        match &self.potential {
            PotentialSpec::Catalog { name, params } => catalog::build(name, params, self.period),
            PotentialSpec::Expression { a, phi, singular_balls } => {
                let period = self.period;
                let ax = Arc::new(Expr::parse(&a[0])?);
                let ay = Arc::new(Expr::parse(&a[1])?);
                let az = Arc::new(Expr::parse(&a[2])?);
                let phi_expr = Arc::new(Expr::parse(phi)?);
                PotentialPair::new(
                    Arc::new(move |t, x| {
                        Vec3::new(
                            ax.eval(t, x, period),
                            ay.eval(t, x, period),
                            az.eval(t, x, period),
                        )
                    }),
                    Arc::new(move |t, x| phi_expr.eval(t, x, period)),
                    period,
                    singular_balls.clone(),
                    "expression",
                )
            }
        }
    }
}
