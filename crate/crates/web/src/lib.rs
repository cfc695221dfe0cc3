//! Browser bindings for three interactive views: the spin resonance orbit with
//! its phases, the interference fringe as the drive frequency is tuned, and
//! the SU(1,1) feasibility map.

use std::f64::consts::TAU;

use wasm_bindgen::prelude::*;

use geophase::dynamics::{integrate, IntegrationOptions};
use geophase::geometry::{bloch_vector, Manifold};
use geophase::phases::{
    dynamical_phase, gamma_closed_form, geometric_phase, interference_intensity, semiclassical_phase,
};
use geophase::resonance::resonance_for;
use geophase::{DriveParams, Result};

/// Samples per drive period for orbit display.
const ORBIT_SAMPLES: usize = 256;

/// A resonance orbit on the Bloch sphere and its phases over one period.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Orbit {
    points: Vec<f64>,
    theta0: f64,
    gamma: f64,
    gamma_closed: f64,
    delta: f64,
    closure_error: f64,
}

#[wasm_bindgen]
impl Orbit {
    /// Bloch-vector samples flattened as x0, y0, z0, x1, …
    #[wasm_bindgen(getter)]
    pub fn points(&self) -> Vec<f64> {
        self.points.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    #[wasm_bindgen(getter)]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    #[wasm_bindgen(getter, js_name = gammaClosed)]
    pub fn gamma_closed(&self) -> f64 {
        self.gamma_closed
    }

    #[wasm_bindgen(getter)]
    pub fn delta(&self) -> f64 {
        self.delta
    }

    #[wasm_bindgen(getter)]
    pub fn phi(&self) -> f64 {
        self.gamma - self.delta
    }

    #[wasm_bindgen(getter, js_name = closureError)]
    pub fn closure_error(&self) -> f64 {
        self.closure_error
    }
}

pub fn compute_orbit(j: f64, b: f64, b0: f64, omega: f64) -> Result<Orbit> {
    let m = Manifold::sphere(j)?;
    let p = DriveParams::su2(b, b0, omega, 1.0);
    let res = resonance_for(m, &p)?;
    let opts = IntegrationOptions { samples_per_period: ORBIT_SAMPLES, ..IntegrationOptions::default() };
    let traj = integrate(m, &res.initial_point()?, &p, res.period, &opts)?;
    let points = traj.samples.iter().flat_map(|s| bloch_vector(s.point.z())).collect();
    Ok(Orbit {
        points,
        theta0: res.radius,
        gamma: geometric_phase(&traj)?,
        gamma_closed: gamma_closed_form(m, &res, p.hbar),
        delta: dynamical_phase(&traj, &p)?,
        closure_error: traj.closure_error,
    })
}

/// Semiclassical intensity cos²(Φ/2) at `n` drive frequencies in [omega_min, omega_max];
/// NaN where there is no closed orbit.
pub fn compute_fringe(j: f64, b: f64, b0: f64, omega_min: f64, omega_max: f64, n: usize) -> Result<Vec<f64>> {
    let m = Manifold::sphere(j)?;
    Ok(grid(omega_min, omega_max, n)
        .map(|omega| {
            let p = DriveParams::su2(b, b0, omega, 1.0);
            resonance_for(m, &p)
                .and_then(|res| semiclassical_phase(m, &res, &p))
                .map_or(f64::NAN, |(gamma, delta)| interference_intensity((gamma - delta) / p.hbar))
        })
        .collect())
}

/// τ0 of the pseudosphere resonance at `n` drive frequencies, NaN where none exists.
pub fn compute_feasibility(omega0: f64, kappa: f64, omega_min: f64, omega_max: f64, n: usize) -> Result<Vec<f64>> {
    DriveParams::su11(omega0, kappa, omega_min).validate()?;
    let m = Manifold::pseudo_sphere(0.25)?;
    Ok(grid(omega_min, omega_max, n)
        .map(|omega| resonance_for(m, &DriveParams::su11(omega0, kappa, omega)).map_or(f64::NAN, |r| r.radius))
        .collect())
}

fn grid(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(2);
    (0..n).map(move |i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 })
}

fn js(e: geophase::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = su2Orbit)]
pub fn su2_orbit(j: f64, b: f64, b0: f64, omega: f64) -> std::result::Result<Orbit, JsError> {
    compute_orbit(j, b, b0, omega).map_err(js)
}

#[wasm_bindgen(js_name = interferenceFringe)]
pub fn interference_fringe(
    j: f64,
    b: f64,
    b0: f64,
    omega_min: f64,
    omega_max: f64,
    n: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    compute_fringe(j, b, b0, omega_min, omega_max, n).map_err(js)
}

#[wasm_bindgen(js_name = su11Feasibility)]
pub fn su11_feasibility(
    omega0: f64,
    kappa: f64,
    omega_min: f64,
    omega_max: f64,
    n: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    compute_feasibility(omega0, kappa, omega_min, omega_max, n).map_err(js)
}

/// Γ for a latitude circle at θ0 on the spin-J sphere, for the page's legend.
#[wasm_bindgen(js_name = solidAngleGamma)]
pub fn solid_angle_gamma(j: f64, theta0: f64) -> f64 {
    TAU * j * (1.0 - theta0.cos())
}
