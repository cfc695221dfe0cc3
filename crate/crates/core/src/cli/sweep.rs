//! Parameter grids over the resonance orbit.

use rayon::prelude::*;

use crate::dynamics::{integrate, IntegrationOptions};
use crate::error::Result;
use crate::geometry::Manifold;
use crate::phases::{interference_intensity, phase_breakdown};
use crate::resonance::resonance_for;

use super::output::{num, Csv};
use super::scenario::{Column, DriveSpec, Family, Scenario};
use super::CliError;

/// Drive frequency that puts the resonance orbit at chart radius `radius`.
///
/// On the plane the branch with a positive steady-state amplitude is taken.
pub fn surface_omega(drive: &DriveSpec, radius: f64) -> f64 {
    let v = |k: &str| drive.get(k);
    match drive.family {
        Family::Sphere => -v("mu") * (v("b0") / radius.tan() + v("b")) / v("hbar"),
        Family::PseudoSphere => -4.0 * v("kappa") / radius.tanh() - 2.0 * v("omega0"),
        Family::Plane => v("omega0") + v("e") / radius,
    }
}

struct Physics {
    radius: f64,
    gamma: f64,
    delta: f64,
    phi: f64,
    closure_error: f64,
}

fn evaluate(manifold: Manifold, drive: &DriveSpec, opts: &IntegrationOptions) -> Result<Physics> {
    let p = drive.params();
    p.validate()?;
    let res = resonance_for(manifold, &p)?;
    let start = res.initial_point()?;
    let traj = integrate(manifold, &start, &p, res.period, opts)?;
    let b = phase_breakdown(&traj, &p, Some(&res))?;
    Ok(Physics {
        radius: res.radius,
        gamma: b.gamma_numeric,
        delta: b.delta_numeric,
        phi: b.total_phi,
        closure_error: traj.closure_error,
    })
}

pub struct SweepOutcome {
    pub csv: Csv,
    pub rows: usize,
    pub feasible: usize,
}

/// Evaluates every grid point (first axis outermost) and returns rows in grid order.
pub fn run_sweep(scenario: &Scenario, parallel: bool) -> std::result::Result<SweepOutcome, CliError> {
    let spec = &scenario.sweep;
    if spec.axes.is_empty() {
        return Err(CliError::validation("sweep needs at least one axis (--sweep param=a:b:n or [sweep] axes)"));
    }
    scenario.check_sweep()?;
    let total: usize = spec.axes.iter().map(|a| a.count).product();
    let derived_omega = spec.surface_radius.is_some();
    // a phi axis already supplies the phi column
    let phi_is_axis = spec.axes.iter().any(|a| a.param == "phi");
    let columns: Vec<Column> =
        spec.columns.iter().copied().filter(|c| !(phi_is_axis && *c == Column::Phi)).collect();
    let opts = IntegrationOptions {
        tol: scenario.tol,
        samples_per_period: scenario.samples_per_period,
        closure_tol: scenario.closure_tol,
        period: None,
    };

    let row = |index: usize| -> (bool, Vec<String>) {
        let mut drive = scenario.drive.clone();
        let mut phi_axis = None;
        let mut cells = vec![index.to_string()];
        let mut rest = index;
        let mut coords = vec![0; spec.axes.len()];
        for (i, axis) in spec.axes.iter().enumerate().rev() {
            coords[i] = rest % axis.count;
            rest /= axis.count;
        }
        for (axis, &i) in spec.axes.iter().zip(&coords) {
            let value = axis.value(i);
            cells.push(num(value));
            if axis.param == "phi" {
                phi_axis = Some(value);
            } else {
                drive.set(&axis.param, value).expect("axes are checked before the sweep");
            }
        }
        if let Some(radius) = spec.surface_radius {
            let omega = surface_omega(&drive, radius);
            drive.set("omega", omega).expect("every family has omega");
            cells.push(num(omega));
        }
        let physics = evaluate(scenario.manifold, &drive, &opts);
        let ok = physics.is_ok();
        cells.push(match &physics {
            Ok(_) => "ok".into(),
            Err(e) => e.kind().into(),
        });
        let phi = phi_axis.or(physics.as_ref().ok().map(|p| p.phi));
        for column in &columns {
            let value = match (column, &physics) {
                (Column::Phi, _) => phi,
                (Column::Intensity, _) => phi.map(interference_intensity),
                (Column::Radius, Ok(p)) => Some(p.radius),
                (Column::Gamma, Ok(p)) => Some(p.gamma),
                (Column::Delta, Ok(p)) => Some(p.delta),
                (Column::ClosureError, Ok(p)) => Some(p.closure_error),
                (_, Err(_)) => None,
            };
            cells.push(value.map_or_else(|| "nan".into(), num));
        }
        (ok, cells)
    };

    let results: Vec<(bool, Vec<String>)> = if parallel {
        (0..total).into_par_iter().map(row).collect()
    } else {
        (0..total).map(row).collect()
    };

    let mut header = vec!["index".to_string()];
    header.extend(spec.axes.iter().map(|a| a.param.clone()));
    if derived_omega {
        header.push("omega".into());
    }
    header.push("status".into());
    header.extend(columns.iter().map(|c| c.name().to_string()));
    let mut csv = Csv::new(header);
    let feasible = results.iter().filter(|(ok, _)| *ok).count();
    for (_, cells) in results {
        csv.push(cells);
    }
    Ok(SweepOutcome { csv, rows: total, feasible })
}
