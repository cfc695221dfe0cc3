//! Scenario files: TOML-style sections, unknown keys rejected.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::drive::{DriveParams, SignConvention};
use crate::geometry::{Chart, Manifold, PhasePoint};
use crate::oracle::Truncation;

use super::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    manifold: ManifoldSection,
    #[serde(default)]
    drive: DriveSection,
    #[serde(default)]
    initial: InitialSection,
    #[serde(default)]
    run: RunSection,
    #[serde(default)]
    tolerances: ToleranceSection,
    #[serde(default)]
    oracle: OracleSection,
    #[serde(default)]
    sweep: SweepSection,
    #[serde(default)]
    stationary: StationarySection,
    #[serde(default)]
    output: OutputSection,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifoldSection {
    family: String,
    j: Option<f64>,
    k: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct DriveSection {
    b: Option<f64>,
    b0: Option<f64>,
    mu: Option<f64>,
    omega0: Option<f64>,
    kappa: Option<f64>,
    e: Option<f64>,
    omega: Option<f64>,
    hbar: Option<f64>,
    energy_offset: Option<f64>,
    sign_convention: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct InitialSection {
    point: Option<String>,
    z_re: Option<f64>,
    z_im: Option<f64>,
    radius: Option<f64>,
    angle: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunSection {
    periods: Option<f64>,
    time: Option<f64>,
    samples_per_period: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ToleranceSection {
    integration: Option<f64>,
    closure: Option<f64>,
    phase: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum TruncationValue {
    Count(i64),
    Text(String),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OracleSection {
    enabled: Option<bool>,
    truncation: Option<TruncationValue>,
    steps: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    axes: Option<Vec<String>>,
    surface_radius: Option<f64>,
    columns: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct StationarySection {
    m: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    trajectory: Option<String>,
    summary: Option<String>,
    sweep: Option<String>,
    stationary: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Sphere,
    PseudoSphere,
    Plane,
}

impl Family {
    fn parse(s: &str) -> Result<Family, CliError> {
        match s {
            "sphere" | "su2" => Ok(Family::Sphere),
            "pseudosphere" | "su11" => Ok(Family::PseudoSphere),
            "plane" | "boson" => Ok(Family::Plane),
            other => Err(CliError::validation(format!(
                "manifold.family: unknown family {other:?} (expected sphere, pseudosphere or plane)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Sphere => "sphere",
            Family::PseudoSphere => "pseudosphere",
            Family::Plane => "plane",
        }
    }

    /// Drive keys that belong to this family, with their defaults (None = required).
    pub fn drive_keys(&self) -> &'static [(&'static str, Option<f64>)] {
        match self {
            Family::Sphere => &[("b", None), ("b0", None), ("omega", None), ("mu", Some(1.0))],
            Family::PseudoSphere => &[("omega0", None), ("kappa", None), ("omega", None)],
            Family::Plane => &[("omega0", None), ("e", None), ("omega", None)],
        }
    }
}

/// Keys shared by every family.
const COMMON_KEYS: [(&str, f64); 2] = [("hbar", 1.0), ("energy_offset", 0.0)];

/// Drive parameters by name, so sweeps can overwrite them uniformly.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveSpec {
    pub family: Family,
    pub values: BTreeMap<&'static str, f64>,
    pub convention: SignConvention,
}

impl DriveSpec {
    pub fn get(&self, key: &str) -> f64 {
        self.values[key]
    }

    pub fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn set(&mut self, key: &str, value: f64) -> Result<(), CliError> {
        match self.values.get_mut(key) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(CliError::validation(format!(
                "drive.{key} is not a parameter of the {} family",
                self.family.name()
            ))),
        }
    }

    pub fn params(&self) -> DriveParams {
        let v = |k: &str| self.values[k];
        let base = match self.family {
            Family::Sphere => DriveParams::su2(v("b"), v("b0"), v("omega"), v("mu")),
            Family::PseudoSphere => {
                DriveParams::su11(v("omega0"), v("kappa"), v("omega")).with_convention(self.convention)
            }
            Family::Plane => DriveParams::boson(v("omega0"), v("e"), v("omega")),
        };
        base.with_hbar(v("hbar")).with_offset(v("energy_offset"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialPoint {
    Resonance,
    Z(Complex64),
    Chart { radius: f64, angle: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Duration {
    Periods(f64),
    Time(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub param: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    /// Parses `param=a:b:n`.
    pub fn parse(text: &str) -> Result<Axis, CliError> {
        let bad = || CliError::validation(format!("sweep axis {text:?} must look like param=start:stop:count"));
        let (param, range) = text.split_once('=').ok_or_else(bad)?;
        let parts: Vec<&str> = range.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(bad());
        };
        let start: f64 = a.trim().parse().map_err(|_| bad())?;
        let stop: f64 = b.trim().parse().map_err(|_| bad())?;
        let count: usize = n.trim().parse().map_err(|_| bad())?;
        if count < 2 {
            return Err(CliError::validation(format!("sweep axis {text:?}: count must be at least 2")));
        }
        if !(start.is_finite() && stop.is_finite()) {
            return Err(CliError::validation(format!("sweep axis {text:?}: bounds must be finite")));
        }
        Ok(Axis { param: param.trim().to_string(), start, stop, count })
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.stop
        } else {
            self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
        }
    }
}

/// Derived quantities a sweep can report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Radius,
    Gamma,
    Delta,
    Phi,
    Intensity,
    ClosureError,
}

impl Column {
    pub const ALL: [Column; 6] =
        [Column::Radius, Column::Gamma, Column::Delta, Column::Phi, Column::Intensity, Column::ClosureError];

    pub fn name(&self) -> &'static str {
        match self {
            Column::Radius => "radius",
            Column::Gamma => "gamma",
            Column::Delta => "delta",
            Column::Phi => "phi",
            Column::Intensity => "intensity",
            Column::ClosureError => "closure_error",
        }
    }

    fn parse(s: &str) -> Result<Column, CliError> {
        Column::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::validation(format!("sweep.columns: unknown column {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axes: Vec<Axis>,
    /// Holds θ0, τ0 or r0 fixed by solving for ω at every grid point.
    pub surface_radius: Option<f64>,
    pub columns: Vec<Column>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputNames {
    pub trajectory: String,
    pub summary: String,
    pub sweep: String,
    pub stationary: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub manifold: Manifold,
    pub drive: DriveSpec,
    pub initial: InitialPoint,
    pub duration: Duration,
    pub samples_per_period: usize,
    pub tol: f64,
    pub closure_tol: f64,
    pub phase_tol: f64,
    pub oracle: bool,
    pub truncation: Truncation,
    pub steps: usize,
    pub sweep: SweepSpec,
    pub stationary_m: Option<f64>,
    pub output: OutputNames,
}

fn positive(key: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::validation(format!("{key} must be positive and finite, got {v}")))
    }
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Scenario, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read scenario {}: {e}", path.display())))?;
        Scenario::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Scenario, CliError> {
        let file: ScenarioFile =
            toml::from_str(text).map_err(|e| CliError::validation(format!("scenario: {}", e.message())))?;
        Scenario::from_file(file)
    }

    fn from_file(f: ScenarioFile) -> Result<Scenario, CliError> {
        let family = Family::parse(&f.manifold.family)?;
        let manifold = match family {
            Family::Sphere => {
                if f.manifold.k.is_some() {
                    return Err(CliError::validation("manifold.k does not apply to the sphere"));
                }
                let j = f.manifold.j.ok_or_else(|| CliError::validation("manifold.j is required for the sphere"))?;
                Manifold::sphere(j).map_err(|e| CliError::validation(format!("manifold.j: {e}")))?
            }
            Family::PseudoSphere => {
                if f.manifold.j.is_some() {
                    return Err(CliError::validation("manifold.j does not apply to the pseudosphere"));
                }
                let k = f.manifold.k.ok_or_else(|| CliError::validation("manifold.k is required for the pseudosphere"))?;
                Manifold::pseudo_sphere(k).map_err(|e| CliError::validation(format!("manifold.k: {e}")))?
            }
            Family::Plane => {
                if let Some(key) = [("j", f.manifold.j), ("k", f.manifold.k)].iter().find(|(_, v)| v.is_some()) {
                    return Err(CliError::validation(format!("manifold.{} does not apply to the plane", key.0)));
                }
                Manifold::Plane
            }
        };

        let d = &f.drive;
        let given: [(&'static str, Option<f64>); 9] = [
            ("b", d.b),
            ("b0", d.b0),
            ("mu", d.mu),
            ("omega0", d.omega0),
            ("kappa", d.kappa),
            ("e", d.e),
            ("omega", d.omega),
            ("hbar", d.hbar),
            ("energy_offset", d.energy_offset),
        ];
        let allowed = family.drive_keys();
        let mut values = BTreeMap::new();
        for (key, value) in given {
            let known = allowed.iter().find(|(k, _)| *k == key).map(|(_, default)| *default);
            let common = COMMON_KEYS.iter().find(|(k, _)| *k == key).map(|(_, default)| *default);
            match (known, common, value) {
                (Some(_), _, Some(v)) | (_, Some(_), Some(v)) => {
                    if !v.is_finite() {
                        return Err(CliError::validation(format!("drive.{key} must be finite")));
                    }
                    values.insert(key, v);
                }
                (Some(Some(default)), _, None) => {
                    values.insert(key, default);
                }
                (Some(None), _, None) => {
                    return Err(CliError::validation(format!(
                        "drive.{key} is required for the {} family",
                        family.name()
                    )));
                }
                (None, Some(default), None) => {
                    values.insert(key, default);
                }
                (None, None, Some(_)) => {
                    return Err(CliError::validation(format!(
                        "drive.{key} is not a parameter of the {} family",
                        family.name()
                    )));
                }
                (None, None, None) => {}
            }
        }
        let convention = match (&d.sign_convention, family) {
            (None, _) => SignConvention::Rederived,
            (Some(s), Family::PseudoSphere) => parse_convention(s)?,
            (Some(_), _) => {
                return Err(CliError::validation(format!(
                    "drive.sign_convention is not a parameter of the {} family",
                    family.name()
                )))
            }
        };
        let drive = DriveSpec { family, values, convention };
        positive("drive.hbar", drive.get("hbar"))?;
        drive.params().validate().map_err(|e| CliError::validation(format!("drive: {e}")))?;

        let i = &f.initial;
        let initial = match (i.point.as_deref(), i.z_re.or(i.z_im), i.radius.or(i.angle)) {
            (Some("resonance") | None, None, None) => InitialPoint::Resonance,
            (Some(p), _, _) if p != "resonance" => {
                return Err(CliError::validation(format!("initial.point: expected \"resonance\", got {p:?}")))
            }
            (None, Some(_), None) => InitialPoint::Z(Complex64::new(i.z_re.unwrap_or(0.0), i.z_im.unwrap_or(0.0))),
            (None, None, Some(_)) => InitialPoint::Chart {
                radius: i.radius.ok_or_else(|| CliError::validation("initial.radius is required with initial.angle"))?,
                angle: i.angle.unwrap_or(0.0),
            },
            _ => {
                return Err(CliError::validation(
                    "initial: give exactly one of point = \"resonance\", z_re/z_im, or radius/angle",
                ))
            }
        };
        if let InitialPoint::Z(z) = initial {
            PhasePoint::from_z(manifold, z).map_err(|e| CliError::validation(format!("initial.z: {e}")))?;
        }
        if let InitialPoint::Chart { radius, angle } = initial {
            let chart = chart_for(manifold, radius, angle);
            PhasePoint::from_chart(manifold, chart).map_err(|e| CliError::validation(format!("initial: {e}")))?;
        }

        let duration = match (f.run.periods, f.run.time) {
            (Some(_), Some(_)) => return Err(CliError::validation("run: give either periods or time, not both")),
            (None, Some(t)) => Duration::Time(non_negative("run.time", t)?),
            (Some(n), None) => Duration::Periods(non_negative("run.periods", n)?),
            (None, None) => Duration::Periods(1.0),
        };
        let samples_per_period = f.run.samples_per_period.unwrap_or(1024);
        if samples_per_period < 2 {
            return Err(CliError::validation("run.samples_per_period must be at least 2"));
        }

        let tol = positive("tolerances.integration", f.tolerances.integration.unwrap_or(1e-11))?;
        let closure_tol = positive("tolerances.closure", f.tolerances.closure.unwrap_or(1e-8))?;
        let phase_tol = positive("tolerances.phase", f.tolerances.phase.unwrap_or(1e-5))?;

        let truncation = match &f.oracle.truncation {
            None => Truncation::Auto,
            Some(TruncationValue::Count(n)) if *n >= 0 => Truncation::Fixed(*n as usize),
            Some(TruncationValue::Count(n)) => {
                return Err(CliError::validation(format!("oracle.truncation must be ≥ 0, got {n}")))
            }
            Some(TruncationValue::Text(s)) => {
                s.parse().map_err(|e| CliError::validation(format!("oracle.truncation: {e}")))?
            }
        };
        let steps = f.oracle.steps.unwrap_or(10_000);
        if steps == 0 {
            return Err(CliError::validation("oracle.steps must be at least 1"));
        }

        let axes = f
            .sweep
            .axes
            .unwrap_or_default()
            .iter()
            .map(|a| Axis::parse(a))
            .collect::<Result<Vec<_>, _>>()?;
        let columns = match f.sweep.columns {
            None => Column::ALL.to_vec(),
            Some(cols) => cols.iter().map(|c| Column::parse(c)).collect::<Result<Vec<_>, _>>()?,
        };
        let sweep = SweepSpec { axes, surface_radius: f.sweep.surface_radius, columns };

        if f.stationary.m.is_some() && family != Family::Sphere {
            return Err(CliError::validation("stationary.m applies to the sphere only"));
        }

        let o = f.output;
        let output = OutputNames {
            trajectory: o.trajectory.unwrap_or_else(|| "trajectory.csv".into()),
            summary: o.summary.unwrap_or_else(|| "summary.txt".into()),
            sweep: o.sweep.unwrap_or_else(|| "sweep.csv".into()),
            stationary: o.stationary.unwrap_or_else(|| "stationary.csv".into()),
        };

        let scenario = Scenario {
            manifold,
            drive,
            initial,
            duration,
            samples_per_period,
            tol,
            closure_tol,
            phase_tol,
            oracle: f.oracle.enabled.unwrap_or(false),
            truncation,
            steps,
            sweep,
            stationary_m: f.stationary.m,
            output,
        };
        scenario.check_sweep()?;
        Ok(scenario)
    }

    /// Validates sweep axes against the scenario's family.
    pub fn check_sweep(&self) -> Result<(), CliError> {
        for axis in &self.sweep.axes {
            if axis.param != "phi" && !self.drive.has(&axis.param) {
                return Err(CliError::validation(format!(
                    "sweep axis {:?} is not a parameter of the {} family",
                    axis.param,
                    self.drive.family.name()
                )));
            }
            if self.sweep.surface_radius.is_some() && axis.param == "omega" {
                return Err(CliError::validation(
                    "sweep.surface_radius fixes omega at every grid point, so omega cannot be an axis",
                ));
            }
        }
        if let Some(r) = self.sweep.surface_radius {
            let ok = match self.drive.family {
                Family::Sphere => r > 0.0 && r < std::f64::consts::PI,
                Family::PseudoSphere | Family::Plane => r > 0.0 && r.is_finite(),
            };
            if !ok {
                return Err(CliError::validation(format!("sweep.surface_radius = {r} is outside the chart")));
            }
        }
        Ok(())
    }

    pub fn params(&self) -> DriveParams {
        self.drive.params()
    }

    pub fn set_convention(&mut self, convention: SignConvention) -> Result<(), CliError> {
        if self.drive.family != Family::PseudoSphere && convention == SignConvention::Paper {
            return Err(CliError::validation("--sign-convention applies to the pseudosphere only"));
        }
        self.drive.convention = convention;
        Ok(())
    }

    /// Total integration time.
    pub fn duration_time(&self) -> Result<f64, CliError> {
        match self.duration {
            Duration::Time(t) => Ok(t),
            Duration::Periods(n) => match self.params().period() {
                Some(period) => Ok(n * period),
                None => Err(CliError::validation(
                    "run.periods needs a nonzero drive.omega; use run.time for a static drive",
                )),
            },
        }
    }
}

fn non_negative(key: &str, v: f64) -> Result<f64, CliError> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::validation(format!("{key} must be ≥ 0 and finite, got {v}")))
    }
}

pub fn parse_convention(s: &str) -> Result<SignConvention, CliError> {
    match s {
        "rederived" => Ok(SignConvention::Rederived),
        "paper" => Ok(SignConvention::Paper),
        other => Err(CliError::validation(format!(
            "sign convention must be \"rederived\" or \"paper\", got {other:?}"
        ))),
    }
}

pub fn chart_for(manifold: Manifold, radius: f64, angle: f64) -> Chart {
    match manifold {
        Manifold::Sphere { .. } => Chart::Sphere { theta: radius, phi: angle },
        Manifold::PseudoSphere { .. } => Chart::PseudoSphere { tau: radius, phi: angle },
        Manifold::Plane => Chart::Plane { r: radius, angle },
    }
}
