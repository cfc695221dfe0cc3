//! Command-line front end: scenarios in, deterministic CSV and key-value summaries out.

pub mod output;
pub mod scenario;
pub mod sweep;

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use crate::dynamics::{integrate, IntegrationOptions, Trajectory};
use crate::error::Error;
use crate::geometry::{chart_distance, Chart, Manifold, PhasePoint};
use crate::oracle::{return_amplitude, semiclassical_check};
use crate::phases::{
    interference_intensity, orbit_delta, phase_breakdown, running_phases, stationary_numeric, stationary_quantization,
    PhaseBreakdown,
};
use crate::resonance::{resonance_for, ResonanceResult};
use crate::verify::{self, Bound, Suite};

use output::{num, write_file, Csv, Summary};
use scenario::{chart_for, parse_convention, Axis, InitialPoint, Scenario};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

/// Largest accepted |⟨z0|U|z0⟩| defect and intensity mismatch.
const OVERLAP_TOLERANCE: f64 = 1e-6;
const INTENSITY_TOLERANCE: f64 = 1e-6;
const STATIONARY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_VALIDATION, message: message.into() }
    }

    pub fn numeric(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_NUMERIC, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_IO, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = if e.is_validation() { EXIT_VALIDATION } else { EXIT_NUMERIC };
        CliError { code, message: e.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Parser)]
#[command(name = "geophase", version, about = "Geometric phases of generalized coherent states")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scenario file (TOML-style sections).
    #[arg(long, global = true, value_name = "PATH")]
    scenario: Option<PathBuf>,

    /// Output directory for CSV and summary files.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Integration tolerance.
    #[arg(long, global = true, value_name = "FLOAT")]
    tol: Option<f64>,

    /// Hilbert-space truncation for the oracle.
    #[arg(long, global = true, value_name = "INT|auto")]
    truncation: Option<String>,

    /// Propagation steps for the oracle.
    #[arg(long, global = true, value_name = "INT")]
    steps: Option<usize>,

    /// SU(1,1) pump phase convention.
    #[arg(long = "sign-convention", global = true, value_name = "rederived|paper")]
    sign_convention: Option<String>,

    /// Sweep axis; repeat for a multi-dimensional grid.
    #[arg(long = "sweep", global = true, value_name = "param=a:b:n")]
    sweep: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate a trajectory and write it with running phases and a summary.
    Simulate,
    /// Evaluate the resonance orbit over a parameter grid.
    Sweep,
    /// Print Γ, Δ and Φ for the scenario's closed trajectory.
    Phase,
    /// Compare the exact return amplitude with the semiclassical phase.
    OracleCheck,
    /// Compare the oracle interference intensity with cos²(Φ/2).
    Interfere,
    /// Tabulate stationary-state quantization Γ = 2πℏ(J − m).
    Stationary,
    /// Run invariant suites and report one line per check.
    Verify {
        /// all, geometry, dynamics, oracle, resonance, stationary or nmr.
        #[arg(default_value = "all")]
        suite: String,
    },
}

/// Parses arguments, runs the command, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::Simulate => simulate(&load(cli, "simulate")?, &out_dir(cli)),
        Command::Sweep => sweep_cmd(&load(cli, "sweep")?, &out_dir(cli)),
        Command::Phase => phase(&load(cli, "phase")?),
        Command::OracleCheck => oracle_check(&load(cli, "oracle-check")?),
        Command::Interfere => interfere(&load(cli, "interfere")?),
        Command::Stationary => {
            let scenario = match &cli.scenario {
                Some(_) => Some(load(cli, "stationary")?),
                None => None,
            };
            stationary(scenario.as_ref(), &out_dir(cli), cli.tol)
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            verify_cmd(suite)
        }
    }
}

fn out_dir(cli: &Cli) -> PathBuf {
    cli.out.clone().unwrap_or_else(|| PathBuf::from("."))
}

/// Loads the scenario and applies command-line overrides.
fn load(cli: &Cli, command: &str) -> Result<Scenario, CliError> {
    let path = cli
        .scenario
        .as_ref()
        .ok_or_else(|| CliError::validation(format!("{command} needs --scenario <path>")))?;
    let mut s = Scenario::load(path)?;
    if let Some(tol) = cli.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::validation(format!("--tol must be positive, got {tol}")));
        }
        s.tol = tol;
    }
    if let Some(t) = &cli.truncation {
        s.truncation = t.parse().map_err(|e: Error| CliError::validation(format!("--truncation: {e}")))?;
    }
    if let Some(steps) = cli.steps {
        if steps == 0 {
            return Err(CliError::validation("--steps must be at least 1"));
        }
        s.steps = steps;
    }
    if let Some(c) = &cli.sign_convention {
        s.set_convention(parse_convention(c)?)?;
    }
    if !cli.sweep.is_empty() {
        s.sweep.axes = cli.sweep.iter().map(|a| Axis::parse(a)).collect::<Result<_, _>>()?;
        s.check_sweep()?;
    }
    Ok(s)
}

fn options(s: &Scenario) -> IntegrationOptions {
    IntegrationOptions {
        tol: s.tol,
        samples_per_period: s.samples_per_period,
        closure_tol: s.closure_tol,
        period: None,
    }
}

/// The scenario's starting point and, when it was placed there, the resonance orbit.
fn start(s: &Scenario) -> Result<(PhasePoint, Option<ResonanceResult>), CliError> {
    let p = s.params();
    p.check_manifold(s.manifold)?;
    match s.initial {
        InitialPoint::Resonance => {
            let res = resonance_for(s.manifold, &p)?;
            Ok((res.initial_point()?, Some(res)))
        }
        InitialPoint::Z(z) => Ok((PhasePoint::from_z(s.manifold, z)?, None)),
        InitialPoint::Chart { radius, angle } => {
            Ok((PhasePoint::from_chart(s.manifold, chart_for(s.manifold, radius, angle))?, None))
        }
    }
}

struct Run {
    start: PhasePoint,
    resonance: Option<ResonanceResult>,
    traj: Trajectory,
}

fn integrate_scenario(s: &Scenario) -> Result<Run, CliError> {
    let (start, resonance) = start(s)?;
    let traj = integrate(s.manifold, &start, &s.params(), s.duration_time()?, &options(s))?;
    Ok(Run { start, resonance, traj })
}

fn chart_columns(manifold: Manifold) -> [&'static str; 2] {
    match manifold {
        Manifold::Sphere { .. } => ["theta", "phi"],
        Manifold::PseudoSphere { .. } => ["tau", "phi"],
        Manifold::Plane => ["r", "angle"],
    }
}

fn chart_values(chart: Chart) -> [f64; 2] {
    match chart {
        Chart::Sphere { theta, phi } => [theta, phi],
        Chart::PseudoSphere { tau, phi } => [tau, phi],
        Chart::Plane { r, angle } => [r, angle],
    }
}

fn describe_scenario(summary: &mut Summary, s: &Scenario) {
    summary.text("schema", "geophase-schema v1");
    summary.text("family", s.drive.family.name());
    match s.manifold {
        Manifold::Sphere { .. } => {
            summary.num("j", s.manifold.spin().unwrap_or(f64::NAN));
        }
        Manifold::PseudoSphere { k } => {
            summary.num("k", k);
        }
        Manifold::Plane => {}
    }
    for (key, value) in &s.drive.values {
        summary.num(key, *value);
    }
    if s.drive.family == scenario::Family::PseudoSphere {
        summary.text(
            "sign_convention",
            match s.drive.convention {
                crate::drive::SignConvention::Rederived => "rederived",
                crate::drive::SignConvention::Paper => "paper",
            },
        );
    }
}

/// Closed-form Δ from the energy on the orbit, alongside the printed formula.
fn describe_orbit_delta(summary: &mut Summary, s: &Scenario, traj: &Trajectory, res: &ResonanceResult) -> Result<(), CliError> {
    if res.period.is_finite() {
        let cycles = ((traj.end_time() - traj.start_time()) / res.period).round();
        summary.num("delta_orbit", cycles * orbit_delta(s.manifold, res, &s.params())?);
    }
    Ok(())
}

fn describe_breakdown(summary: &mut Summary, b: &PhaseBreakdown) {
    summary
        .num("gamma", b.gamma_numeric)
        .num("delta", b.delta_numeric)
        .num("phi", b.total_phi)
        .num("orientation", b.orientation)
        .num("gamma_error_estimate", b.gamma_error_estimate)
        .num("delta_error_estimate", b.delta_error_estimate)
        .opt("gamma_closed_form", b.gamma_closed)
        .opt("delta_closed_form", b.delta_closed)
        .opt("gamma_discrepancy", b.gamma_discrepancy)
        .opt("delta_discrepancy", b.delta_discrepancy);
}

fn simulate(s: &Scenario, out: &Path) -> Result<i32, CliError> {
    let p = s.params();
    let run = integrate_scenario(s)?;
    let running = running_phases(&run.traj, &p)?;

    let [c1, c2] = chart_columns(s.manifold);
    let mut csv = Csv::new(["t", c1, c2, "re_z", "im_z", "gamma_running", "delta_running"]);
    for (sample, (gamma, delta)) in run.traj.samples.iter().zip(&running) {
        let [a, b] = chart_values(sample.point.chart());
        let z = sample.point.z();
        csv.push([sample.t, a, b, z.re, z.im, *gamma, *delta].into_iter().map(num).collect());
    }

    let mut summary = Summary::new();
    describe_scenario(&mut summary, s);
    let z0 = run.start.z();
    summary
        .num("z0_re", z0.re)
        .num("z0_im", z0.im)
        .num("duration", s.duration_time()?)
        .int("samples", run.traj.samples.len())
        .int("steps", run.traj.stats.steps)
        .int("rejected_steps", run.traj.stats.rejected)
        .flag("closed", run.traj.closed)
        .num("closure_error", run.traj.closure_error)
        .num("closure_tolerance", run.traj.closure_tolerance);
    let (gamma_end, delta_end) = running.last().copied().unwrap_or((0.0, 0.0));
    summary.num("gamma_running_final", gamma_end).num("delta_running_final", delta_end);

    match resonance_for(s.manifold, &p) {
        Ok(res) => {
            summary
                .text("resonance_status", "ok")
                .num("resonance_radius", res.radius)
                .num("resonance_angle_rate", res.angle_rate)
                .num("resonance_period", res.period)
                .num("resonance_on_surface_residual", res.on_surface_residual)
                .num("resonance_orbit_distance", chart_distance(s.manifold, z0, res.initial_point()?.z()));
        }
        Err(e) => {
            summary.text("resonance_status", e.kind());
        }
    }

    if run.traj.closed {
        let b = phase_breakdown(&run.traj, &p, run.resonance.as_ref())?;
        describe_breakdown(&mut summary, &b);
        if let Some(res) = &run.resonance {
            describe_orbit_delta(&mut summary, s, &run.traj, res)?;
        }
    }

    if s.oracle {
        let report = semiclassical_check(s.manifold, z0, &p, s.duration_time()?, s.truncation, s.steps)?;
        summary
            .int("oracle_truncation", report.truncation)
            .int("oracle_steps", s.steps)
            .num("oracle_overlap_modulus", report.overlap_modulus)
            .num("oracle_overlap_arg", report.overlap_arg)
            .num("oracle_phase_mismatch", report.phase_mismatch);
    }

    let csv_path = write_file(out, &s.output.trajectory, &csv.render())?;
    let summary_path = write_file(out, &s.output.summary, &summary.render())?;
    println!("trajectory = \"{}\"", csv_path.display());
    println!("summary = \"{}\"", summary_path.display());
    Ok(EXIT_OK)
}

fn sweep_cmd(s: &Scenario, out: &Path) -> Result<i32, CliError> {
    let outcome = sweep::run_sweep(s, true)?;
    let path = write_file(out, &s.output.sweep, &outcome.csv.render())?;
    if outcome.feasible == 0 {
        eprintln!("warning: none of the {} grid points is feasible", outcome.rows);
    }
    println!("sweep = \"{}\"", path.display());
    println!("rows = {}", outcome.rows);
    println!("feasible = {}", outcome.feasible);
    Ok(EXIT_OK)
}

fn phase(s: &Scenario) -> Result<i32, CliError> {
    let p = s.params();
    let run = integrate_scenario(s)?;
    let b = phase_breakdown(&run.traj, &p, run.resonance.as_ref())?;
    let mut summary = Summary::new();
    describe_scenario(&mut summary, s);
    summary.num("closure_error", run.traj.closure_error);
    describe_breakdown(&mut summary, &b);
    if let Some(res) = &run.resonance {
        describe_orbit_delta(&mut summary, s, &run.traj, res)?;
    }
    print!("{}", summary.render());
    Ok(EXIT_OK)
}

fn oracle_check(s: &Scenario) -> Result<i32, CliError> {
    let p = s.params();
    let (start, _) = start(s)?;
    let t = s.duration_time()?;
    let report = semiclassical_check(s.manifold, start.z(), &p, t, s.truncation, s.steps)?;
    let defect = 1.0 - report.overlap_modulus;
    let passed = defect < OVERLAP_TOLERANCE && report.phase_mismatch.abs() < s.phase_tol;
    let mut summary = Summary::new();
    describe_scenario(&mut summary, s);
    summary
        .num("duration", t)
        .int("truncation", report.truncation)
        .int("steps", s.steps)
        .num("overlap_modulus", report.overlap_modulus)
        .num("overlap_arg", report.overlap_arg)
        .num("gamma", report.gamma)
        .num("delta", report.delta)
        .num("phase_mismatch", report.phase_mismatch)
        .num("modulus_tolerance", OVERLAP_TOLERANCE)
        .num("phase_tolerance", s.phase_tol)
        .text("status", if passed { "pass" } else { "fail" });
    print!("{}", summary.render());
    Ok(if passed { EXIT_OK } else { EXIT_VERIFICATION })
}

fn interfere(s: &Scenario) -> Result<i32, CliError> {
    let p = s.params();
    let run = integrate_scenario(s)?;
    let b = phase_breakdown(&run.traj, &p, run.resonance.as_ref())?;
    let t = s.duration_time()?;
    let k: Complex64 = return_amplitude(s.manifold, run.start.z(), &p, t, s.truncation, s.steps)?;
    let oracle = 0.25 * (2.0 + 2.0 * k.re);
    let semiclassical = interference_intensity(b.total_phi);
    let mismatch = (oracle - semiclassical).abs();
    let passed = mismatch < INTENSITY_TOLERANCE;
    let mut summary = Summary::new();
    describe_scenario(&mut summary, s);
    summary
        .num("phi", b.total_phi)
        .num("intensity_semiclassical", semiclassical)
        .num("intensity_oracle", oracle)
        .num("intensity_mismatch", mismatch)
        .num("intensity_tolerance", INTENSITY_TOLERANCE)
        .text("truncation", &s.truncation.to_string())
        .int("steps", s.steps)
        .text("status", if passed { "pass" } else { "fail" });
    print!("{}", summary.render());
    Ok(if passed { EXIT_OK } else { EXIT_VERIFICATION })
}

fn stationary(s: Option<&Scenario>, out: &Path, tol: Option<f64>) -> Result<i32, CliError> {
    let (mut b, mut mu, mut hbar) = (1.0, 1.0, 1.0);
    let mut levels: Vec<(f64, f64)> = Vec::new();
    match s {
        Some(s) => {
            if s.drive.family != scenario::Family::Sphere {
                return Err(CliError::validation("stationary needs a sphere scenario"));
            }
            b = s.drive.get("b");
            mu = s.drive.get("mu");
            hbar = s.drive.get("hbar");
            let j = s.manifold.spin().expect("sphere has a spin");
            match s.stationary_m {
                Some(m) => levels.push((j, m)),
                None => levels.extend((0..=(2.0 * j).round() as usize).map(|i| (j, -j + i as f64))),
            }
        }
        None => {
            for twice_j in 1..=6 {
                let j = twice_j as f64 / 2.0;
                levels.extend((0..=twice_j).map(|i| (j, -j + i as f64)));
            }
        }
    }
    let tol = tol.or(s.map(|s| s.tol)).unwrap_or(1e-12);

    let mut csv = Csv::new([
        "j",
        "m",
        "theta0",
        "period",
        "gamma_closed_form",
        "gamma_numeric",
        "orientation",
        "residual",
        "single_valued",
    ]);
    let mut all_pass = true;
    for (j, m) in levels {
        let closed = stationary_quantization(j, m, b, mu, hbar)?;
        let (numeric, orientation) = stationary_numeric(j, m, b, mu, hbar, tol)?;
        let exponent = (Complex64::from_polar(1.0, closed.gamma / hbar) - 1.0).norm();
        let residual = (orientation * closed.gamma - numeric).abs().max(exponent);
        all_pass &= closed.single_valued && residual < STATIONARY_TOLERANCE;
        let mut row: Vec<String> =
            [j, m, closed.theta0, closed.period, closed.gamma, numeric, orientation, residual].map(num).to_vec();
        row.push(closed.single_valued.to_string());
        csv.push(row);
    }
    let name = s.map_or("stationary.csv", |s| s.output.stationary.as_str());
    let path = write_file(out, name, &csv.render())?;
    println!("stationary = \"{}\"", path.display());
    println!("status = \"{}\"", if all_pass { "pass" } else { "fail" });
    Ok(if all_pass { EXIT_OK } else { EXIT_VERIFICATION })
}

fn verify_cmd(suite: Suite) -> Result<i32, CliError> {
    let checks = verify::run(suite);
    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in &checks {
        let bound = match c.bound {
            Bound::Below => "below",
            Bound::Above => "above",
        };
        let mut line = format!(
            "{} suite={} check={} residual={} threshold={} bound={}",
            if c.passed { "PASS" } else { "FAIL" },
            c.suite,
            c.name,
            num(c.residual),
            num(c.threshold),
            bound
        );
        if let Some(note) = &c.note {
            line.push_str(&format!(" note={note:?}"));
        }
        println!("{line}");
    }
    println!("total={} passed={} failed={}", checks.len(), checks.len() - failed, failed);
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFICATION })
}
