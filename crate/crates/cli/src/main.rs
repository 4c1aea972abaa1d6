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

//! Batch command-line front end. One command per process; all file output
//! is UTF-8 JSON/CSV under the --out directory, with run metadata (config
//! hash, grids, tolerances) embedded in every report and the timestamp in
//! a separate field so reports stay byte-deterministic per config + seed.

use clap::{Parser, Subcommand, ValueEnum};
use lorentz_orbits::action;
use lorentz_orbits::config::RunConfig;
use lorentz_orbits::dynamics;
use lorentz_orbits::error::Error as CoreError;
use lorentz_orbits::expr::Expr;
use lorentz_orbits::optimizer;
use lorentz_orbits::potentials::{fibonacci_sphere, GaugeFunction, PotentialPair};
use lorentz_orbits::trajectory::PeriodicTrajectory;
use lorentz_orbits::witness;
use lorentz_orbits::Vec3;
use serde_json::json;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

const EXIT_CONFIG: u8 = 2;
const EXIT_SINGULAR: u8 = 3;
const EXIT_ADMISSIBILITY: u8 = 4;
const EXIT_CERTIFICATE: u8 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TolProfile {
    Strict,
    Default,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WitnessModeArg {
    PhiZero,
    Theorem2,
    Theorem3Flow,
}

#[derive(Parser)]
#[command(name = "lorbits", about = "Periodic orbits of the relativistic Lorentz force equation by action minimization", version)]
struct Cli {
    /// Run configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for report files.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides the config grid size N.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Tolerance profile for the optimizer and verdicts.
    #[arg(long, global = true, value_enum, default_value = "default")]
    tol_profile: TolProfile,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print E and B at one event (t, x) as JSON on standard output.
    Fields {
        #[arg(long)]
        t: f64,
        /// Comma-separated x1,x2,x3.
        #[arg(long, value_delimiter = ',')]
        x: Vec<f64>,
    },
    /// Audit membership in the admissible potential class.
    Admissible,
    /// Build and certify a negative-action witness trajectory.
    Witness {
        #[arg(long, value_enum, default_value = "phi-zero")]
        mode: WitnessModeArg,
    },
    /// Minimize the action and certify the minimizer.
    Minimize,
    /// Integrate the Hamiltonian system from a trajectory's initial state
    /// and report the periodicity residual.
    Simulate {
        #[arg(long)]
        trajectory: PathBuf,
    },
    /// Evaluate the action report (with Euler–Lagrange residual) for a
    /// stored trajectory.
    Verify {
        #[arg(long)]
        trajectory: PathBuf,
    },
    /// Apply a gauge transformation and report field agreement.
    Gauge {
        /// JSON file {"f": "<expression in t, x1, x2, x3>"}.
        #[arg(long)]
        gauge: PathBuf,
    },
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure { code: EXIT_CONFIG, kind: "config", message: message.into() }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let (code, kind) = match &e {
            CoreError::SingularPoint { .. }
            | CoreError::SingularTrajectory
            | CoreError::SingularEncounter { .. } => (EXIT_SINGULAR, "singular"),
            CoreError::Config(_) | CoreError::Expr(_) | CoreError::Serialization(_) => {
                (EXIT_CONFIG, "config")
            }
            _ => (EXIT_CERTIFICATE, "failure"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

struct Session {
    config: RunConfig,
    config_sha256: String,
    pair: PotentialPair,
    out_dir: PathBuf,
    seed: u64,
    grid_size: usize,
    tol_profile: TolProfile,
    optimizer: optimizer::MinimizeConfig,
}

impl Session {
    fn open(cli: &Cli) -> Result<Session, Failure> {
        let path = cli
            .config
            .as_ref()
            .ok_or_else(|| Failure::config("--config PATH is required for this command"))?;
        let raw = std::fs::read(path)
            .map_err(|e| Failure::config(format!("reading {}: {e}", path.display())))?;
        let mut hasher = Sha256::new();
        hasher.update(&raw);
        let config_sha256: String =
            hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        let text = String::from_utf8(raw)
            .map_err(|e| Failure::config(format!("config is not UTF-8: {e}")))?;
        let mut config = RunConfig::from_json(&text)?;
        if let Some(grid) = cli.grid {
            config.grid_size = grid;
        }
        if let Some(seed) = cli.seed {
            config.seed = seed;
        }
        let pair = config.build_pair()?;
        let mut optimizer = config.minimize_config();
        if cli.tol_profile == TolProfile::Strict {
            optimizer.grad_tol *= 0.1;
            optimizer.residual_tol *= 0.1;
        }
        config.validate()?;
        Ok(Session {
            config_sha256,
            pair,
            out_dir: cli.out.clone(),
            seed: config.seed,
            grid_size: config.grid_size,
            tol_profile: cli.tol_profile,
            optimizer,
            config,
        })
    }

    fn metadata(&self) -> serde_json::Value {
        json!({
            "config_sha256": self.config_sha256,
            "period": self.config.period,
            "grid_size": self.grid_size,
            "seed": self.seed,
            "tol_profile": match self.tol_profile { TolProfile::Strict => "strict", TolProfile::Default => "default" },
            "tolerances": {
                "grad_tol": self.optimizer.grad_tol,
                "residual_tol": self.optimizer.residual_tol,
                "speed_cap": self.optimizer.speed_cap,
                "lambda_margin": self.optimizer.lambda_margin,
                "tol_zero": lorentz_orbits::TOL_ZERO,
                "tol_speed": lorentz_orbits::trajectory::TOL_SPEED,
                "tol_quad": witness::TOL_QUAD,
            },
            "box": serde_json::to_value(self.config.sample_box).expect("box serializes"),
        })
    }

    fn write_report(&self, name: &str, report: serde_json::Value) -> Result<PathBuf, Failure> {
        let body = json!({
            "metadata": self.metadata(),
            "report": report,
        });
        let mut text = serde_json::to_string_pretty(&body).expect("reports serialize");
        // the timestamp lives outside the deterministic body so identical
        // config + seed produce byte-identical report content
        let stamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        text = format!("{{\n  \"generated_unix_time\": {stamp},\n{}", &text[2..]);
        self.write_file(name, &(text + "\n"))
    }

    fn write_file(&self, name: &str, content: &str) -> Result<PathBuf, Failure> {
        std::fs::create_dir_all(&self.out_dir)
            .map_err(|e| Failure::config(format!("creating {}: {e}", self.out_dir.display())))?;
        let path = self.out_dir.join(name);
        std::fs::write(&path, content)
            .map_err(|e| Failure::config(format!("writing {}: {e}", path.display())))?;
        println!("wrote {}", path.display());
        Ok(path)
    }

    fn load_trajectory(&self, path: &Path) -> Result<PeriodicTrajectory, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::config(format!("reading {}: {e}", path.display())))?;
        Ok(PeriodicTrajectory::from_json(&text)?)
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn cmd_fields(session: &Session, t: f64, x: &[f64]) -> Result<(), Failure> {
    if x.len() != 3 {
        return Err(Failure::config("--x needs exactly three comma-separated components"));
    }
    let sample = session.pair.eval_fields(t, Vec3::new(x[0], x[1], x[2]))?;
    println!("{}", serde_json::to_string_pretty(&to_value(&sample)).expect("serializes"));
    Ok(())
}

fn admissibility_radii(session: &Session) -> Vec<f64> {
    let base = session.config.sample_box.sample_box().outer_radius().max(1.0);
    vec![base, 2.0 * base, 4.0 * base, 8.0 * base]
}

fn cmd_admissible(session: &Session) -> Result<(), Failure> {
    let report = session.pair.admissibility_report(
        &admissibility_radii(session),
        128,
        session.config.sample_box.time.max(8),
    )?;
    session.write_report("admissibility.json", to_value(&report))?;
    Ok(())
}

fn cmd_witness(session: &Session, mode: WitnessModeArg) -> Result<(), Failure> {
    let n = session.grid_size;
    let pair = &session.pair;
    match mode {
        WitnessModeArg::PhiZero => {
            let cert =
                witness::certify_lemma_negative(pair, n, &witness::default_candidate_grid(5.0, 21))?;
            session.write_report("witness_certificate.json", to_value(&cert))?;
        }
        WitnessModeArg::Theorem2 => {
            let bases: Vec<Vec3> = (2..=6).map(|k| Vec3::new(k as f64, 0.0, 0.0)).collect();
            let (rows, cert) = witness::certify_theorem2(pair, &bases, n)?;
            session.write_file("ratio_table.csv", &witness::ratio_table_csv(&rows))?;
            session.write_report("witness_certificate.json", to_value(&cert))?;
        }
        WitnessModeArg::Theorem3Flow => {
            let b0 = witness::find_base_point(pair, &witness::default_candidate_grid(5.0, 21))?;
            let (cert, history) = witness::certify_theorem3_flow(pair, b0, n.min(64))?;
            let mut value = to_value(&cert);
            value["iterate_values"] = to_value(&history);
            session.write_report("witness_certificate.json", value)?;
        }
    }
    Ok(())
}

fn cmd_minimize(session: &Session) -> Result<(), Failure> {
    let report = session.pair.admissibility_report(
        &admissibility_radii(session),
        64,
        session.config.sample_box.time.max(8),
    )?;
    if !report.nonzero_electric_field {
        return Err(Failure {
            code: EXIT_ADMISSIBILITY,
            kind: "admissibility",
            message: "pair not admissible: zero electric field".into(),
        });
    }
    let result = optimizer::minimize(&session.pair, &session.optimizer, None)?;
    session.write_file("iterates.csv", &optimizer::iterates_csv(&result.iterates_summary))?;
    // standalone trajectory file for the simulate/verify commands
    session.write_file("orbit.json", &(result.trajectory.to_json() + "\n"))?;
    session.write_report("minimizer_result.json", to_value(&result))?;
    Ok(())
}

fn cmd_simulate(session: &Session, trajectory: &Path) -> Result<(), Failure> {
    let q = session.load_trajectory(trajectory)?;
    let v0 = q.derivative()[0];
    let p0 = dynamics::momentum_from_velocity(v0)?;
    let states = dynamics::integrate(
        &session.pair,
        dynamics::PhaseState::new(q.samples()[0], p0, 0.0),
        q.period(),
        64 * q.n(),
    )?;
    session.write_file("orbit.csv", &dynamics::states_to_csv(&states))?;
    let residual = dynamics::periodicity_residual(&session.pair, &q)?;
    session.write_report(
        "simulation_report.json",
        json!({ "periodicity_residual": residual, "steps": 64 * q.n() }),
    )?;
    Ok(())
}

fn cmd_verify(session: &Session, trajectory: &Path) -> Result<(), Failure> {
    let q = session.load_trajectory(trajectory)?;
    let mut report = action::action(&q, &session.pair);
    if report.in_k && report.in_lambda {
        if let Ok(el) = action::el_residual(&q, &session.pair, session.optimizer.speed_cap) {
            report.el_residual_sup = Some(el);
        }
    }
    session.write_report("action_report.json", to_value(&report))?;
    Ok(())
}

fn cmd_gauge(session: &Session, gauge_path: &Path) -> Result<(), Failure> {
    let text = std::fs::read_to_string(gauge_path)
        .map_err(|e| Failure::config(format!("reading {}: {e}", gauge_path.display())))?;
    let spec: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::config(format!("gauge spec: {e}")))?;
    let f_src = spec
        .get("f")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Failure::config("gauge spec needs a string field \"f\""))?
        .to_string();
    let expr = Arc::new(Expr::parse(&f_src)?);
    let period = session.config.period;
    let f = GaugeFunction::new(
        Arc::new(move |t, x| expr.eval(t, x, period)),
        period,
    );
    let gauged = session.pair.gauge_transform(&f);

    // deterministic probe set: Fibonacci directions at three radii and
    // several phases of the period
    let mut max_de = 0.0_f64;
    let mut max_db = 0.0_f64;
    let mut probes = 0usize;
    for u in fibonacci_sphere(16) {
        for r in [0.5, 1.0, 2.0] {
            let x = u * r;
            if session.pair.distance_to_singular(x) <= 0.0 {
                continue;
            }
            for k in 0..4 {
                let t = period * k as f64 / 4.0;
                let before = session.pair.eval_fields(t, x)?;
                let after = gauged.eval_fields(t, x)?;
                max_de = max_de.max((before.electric - after.electric).norm());
                max_db = max_db.max((before.magnetic - after.magnetic).norm());
                probes += 1;
            }
        }
    }
    let mut transformed = to_value(&session.config);
    transformed["gauge"] = json!({ "f": f_src });
    session.write_file(
        "transformed_config.json",
        &(serde_json::to_string_pretty(&transformed).expect("serializes") + "\n"),
    )?;
    session.write_report(
        "gauge_report.json",
        json!({
            "probes": probes,
            "max_electric_deviation": max_de,
            "max_magnetic_deviation": max_db,
            // finite-difference gauge derivatives: agreement is only as
            // good as the FD truncation
            "agreement_tol": 1e-6,
            "fields_agree": max_de < 1e-6 && max_db < 1e-6,
        }),
    )?;
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let session = Session::open(cli)?;
    match &cli.command {
        Command::Fields { t, x } => cmd_fields(&session, *t, x),
        Command::Admissible => cmd_admissible(&session),
        Command::Witness { mode } => cmd_witness(&session, *mode),
        Command::Minimize => cmd_minimize(&session),
        Command::Simulate { trajectory } => cmd_simulate(&session, trajectory),
        Command::Verify { trajectory } => cmd_verify(&session, trajectory),
        Command::Gauge { gauge } => cmd_gauge(&session, gauge),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let err = json!({ "error": { "kind": f.kind, "message": f.message } });
            eprintln!("{}", serde_json::to_string(&err).expect("error serializes"));
            ExitCode::from(f.code)
        }
    }
}
