//! Resonance orbits, invariant surfaces, and operating points where the
//! dynamical phase vanishes.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::drive::{BosonDrive, Drive, DriveParams, SignConvention, Su11Drive, Su2Drive};
use crate::dynamics::{eom_rhs, eom_rhs_complex, integrate, IntegrationOptions};
use crate::error::{Error, Result};
use crate::geometry::{Chart, Manifold, PhasePoint};
use crate::phases::dynamical_phase;

/// A circular orbit with fixed chart radius whose angle is locked to the drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceResult {
    pub manifold: Manifold,
    /// θ0, τ0 or r0.
    pub radius: f64,
    /// Rate of the chart angle: +ω for φ = ωt, −ω for φ = −ωt or θ_polar = −ωt.
    pub angle_rate: f64,
    /// Chart angle at t = 0 (π when the steady-state amplitude is negative).
    pub phase_offset: f64,
    pub period: f64,
    /// Largest deviation of the equations of motion from the orbit's own rates.
    pub on_surface_residual: f64,
}

impl ResonanceResult {
    pub fn chart_at(&self, t: f64) -> Chart {
        let angle = (self.phase_offset + self.angle_rate * t).rem_euclid(TAU);
        let angle = if angle >= TAU { 0.0 } else { angle };
        match self.manifold {
            Manifold::Sphere { .. } => Chart::Sphere { theta: self.radius, phi: angle },
            Manifold::PseudoSphere { .. } => Chart::PseudoSphere { tau: self.radius, phi: angle },
            Manifold::Plane => Chart::Plane { r: self.radius, angle },
        }
    }

    pub fn point_at(&self, t: f64) -> Result<PhasePoint> {
        PhasePoint::from_chart(self.manifold, self.chart_at(t))
    }

    pub fn initial_point(&self) -> Result<PhasePoint> {
        self.point_at(0.0)
    }

    /// Winding sign of φ = −arg z along the orbit.
    pub fn orientation(&self) -> f64 {
        let rate = match self.manifold {
            Manifold::Plane => -self.angle_rate,
            _ => self.angle_rate,
        };
        if rate < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

fn residual(res: &ResonanceResult, p: &DriveParams) -> Result<f64> {
    let period = if res.period.is_finite() { res.period } else { 1.0 };
    let mut worst: f64 = 0.0;
    for frac in [0.0, 0.25, 0.5, 0.75] {
        let t = frac * period;
        let point = res.point_at(t)?;
        let chart_rates = if res.radius == 0.0 {
            // the angle is meaningless at the chart origin
            Err(Error::ChartSingularity("orbit at the chart origin".into()))
        } else {
            eom_rhs(res.manifold, &point, t, p)
        };
        let r = match chart_rates {
            Ok(v) => v.radial.abs().max((v.angular - res.angle_rate).abs()),
            Err(Error::ChartSingularity(_)) => {
                // compare complex velocities instead
                let zdot = eom_rhs_complex(res.manifold, point.z(), t, p)?;
                let expected = match res.manifold {
                    Manifold::Plane => Complex64::i() * res.angle_rate * point.z(),
                    _ => -Complex64::i() * res.angle_rate * point.z(),
                };
                (zdot - expected).norm()
            }
            Err(e) => return Err(e),
        };
        worst = worst.max(r);
    }
    Ok(worst)
}

fn period_of(omega: f64) -> f64 {
    if omega == 0.0 {
        f64::INFINITY
    } else {
        TAU / omega.abs()
    }
}

/// cot θ0 = −(B/B0 + ℏω/(μB0)), θ0 ∈ (0, π).
pub fn invariant_surface_su2(d: &Su2Drive, hbar: f64) -> Result<ResonanceResult> {
    let p = DriveParams { drive: Drive::Su2(*d), hbar, energy_offset: 0.0 };
    p.validate()?;
    if d.b0 == 0.0 {
        return Err(Error::DegenerateDrive("resonance requires a nonzero rotating field b0".into()));
    }
    if d.mu == 0.0 {
        return Err(Error::DegenerateDrive("resonance requires a nonzero moment mu".into()));
    }
    let cot = -(d.b / d.b0 + hbar * d.omega / (d.mu * d.b0));
    let theta0 = 1f64.atan2(cot);
    let twice_j = 1; // the orbit does not depend on J
    let mut res = ResonanceResult {
        manifold: Manifold::Sphere { twice_j },
        radius: theta0,
        angle_rate: d.omega,
        phase_offset: 0.0,
        period: period_of(d.omega),
        on_surface_residual: 0.0,
    };
    res.on_surface_residual = residual(&res, &p)?;
    Ok(res)
}

/// coth τ0 = −(ω + 2ω0)/(4κ), τ0 > 0. With the rederived sign convention the
/// orbit is φ = −ωt; with the printed convention it is φ = ωt.
pub fn invariant_surface_su11(d: &Su11Drive) -> Result<ResonanceResult> {
    let p = DriveParams { drive: Drive::Su11(*d), hbar: 1.0, energy_offset: 0.0 };
    p.validate()?;
    if d.kappa == 0.0 {
        return Err(Error::DegenerateDrive("resonance requires a nonzero pump kappa".into()));
    }
    let coth = -(d.omega + 2.0 * d.omega0) / (4.0 * d.kappa);
    if coth.abs() <= 1.0 {
        return Err(Error::NoResonance(format!(
            "|(ω + 2ω0)/(4κ)| = {} must exceed 1",
            coth.abs()
        )));
    }
    if coth < -1.0 {
        return Err(Error::NegativeBranch(format!(
            "coth τ0 = {coth} < −1; the orbit exists only with φ shifted by π"
        )));
    }
    let tau0 = (1.0 / coth).atanh();
    let angle_rate = match d.convention {
        SignConvention::Rederived => -d.omega,
        SignConvention::Paper => d.omega,
    };
    let mut res = ResonanceResult {
        manifold: Manifold::PseudoSphere { k: 0.25 },
        radius: tau0,
        angle_rate,
        phase_offset: 0.0,
        period: period_of(d.omega),
        on_surface_residual: 0.0,
    };
    res.on_surface_residual = residual(&res, &p)?;
    Ok(res)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BosonSurface {
    pub resonance: ResonanceResult,
    /// Signed steady-state amplitude E/(ω − ω0); z(t) = amplitude·e^{−iωt}.
    pub amplitude: f64,
    /// |E/(ω + ω0)|, the printed invariant-surface radius.
    pub r0_printed: f64,
}

impl BosonSurface {
    pub fn r0_steady(&self) -> f64 {
        self.resonance.radius
    }
}

/// Exact periodic solution z(t) = E/(ω − ω0)·e^{−iωt} of ż + iω0z = −iEe^{−iωt}.
pub fn invariant_surface_boson(d: &BosonDrive) -> Result<BosonSurface> {
    let p = DriveParams { drive: Drive::Boson(*d), hbar: 1.0, energy_offset: 0.0 };
    p.validate()?;
    let detuning = d.omega - d.omega0;
    if detuning == 0.0 {
        return Err(Error::DivergentResponse(format!(
            "drive at the cavity frequency ω = ω0 = {}",
            d.omega0
        )));
    }
    let amplitude = d.e / detuning;
    let sum = d.omega + d.omega0;
    let r0_printed = if sum == 0.0 { f64::INFINITY } else { (d.e / sum).abs() };
    let mut res = ResonanceResult {
        manifold: Manifold::Plane,
        radius: amplitude.abs(),
        angle_rate: -d.omega,
        phase_offset: if amplitude < 0.0 { PI } else { 0.0 },
        period: period_of(d.omega),
        on_surface_residual: 0.0,
    };
    res.on_surface_residual = residual(&res, &p)?;
    Ok(BosonSurface { resonance: res, amplitude, r0_printed })
}

/// Resonance for whichever family `p` drives, attached to `manifold`.
pub fn resonance_for(manifold: Manifold, p: &DriveParams) -> Result<ResonanceResult> {
    p.check_manifold(manifold)?;
    let mut res = match p.drive {
        Drive::Su2(d) => invariant_surface_su2(&d, p.hbar)?,
        Drive::Su11(d) => invariant_surface_su11(&d)?,
        Drive::Boson(d) => invariant_surface_boson(&d)?.resonance,
    };
    res.manifold = manifold;
    Ok(res)
}

/// A drive setting at which the dynamical phase of the resonance orbit vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroDeltaPoint {
    /// θ0, τ0 or r0.
    pub radius: f64,
    pub omega: f64,
    pub gamma: f64,
    pub drive: DriveParams,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroDeltaSu2 {
    pub point: ZeroDeltaPoint,
    /// 2Jπℏ(1 − B0/√(B0² + B²)).
    pub gamma_printed: f64,
}

/// cot θ0 = B0/B and ω = −μ(B0² + B²)/(ℏB).
pub fn zero_delta_su2(b: f64, b0: f64, mu: f64, hbar: f64, j: f64) -> Result<ZeroDeltaSu2> {
    Manifold::sphere(j)?;
    if b == 0.0 {
        return Err(Error::DegenerateDrive("zero-Δ condition undefined for b = 0".into()));
    }
    if b0 == 0.0 {
        return Err(Error::DegenerateDrive("zero-Δ condition requires b0 ≠ 0".into()));
    }
    let theta0 = 1f64.atan2(b0 / b);
    let omega = -mu * (b0 * b0 + b * b) / (hbar * b);
    let gamma = TAU * j * hbar * (1.0 - theta0.cos());
    let gamma_printed = TAU * j * hbar * (1.0 - b0 / b0.hypot(b));
    Ok(ZeroDeltaSu2 {
        point: ZeroDeltaPoint {
            radius: theta0,
            omega,
            gamma,
            drive: DriveParams::su2(b, b0, omega, mu).with_hbar(hbar),
        },
        gamma_printed,
    })
}

/// Zero-Δ operating points on the pseudosphere.
///
/// `printed` follows coth τ0 = −κ/ω0, ω = 4κ²/ω0 − 2ω0 and
/// Γ = 2kπℏ(|κ|/√(κ² − ω0²) − 1). Along the orbit of the operator Hamiltonian
/// the energy is 2ℏk(ω0 cosh τ0 + 2κ sinh τ0), which vanishes instead at
/// coth τ0 = −2κ/ω0, ω = 8κ²/ω0 − 2ω0; that point is `rederived`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroDeltaSu11 {
    pub printed: ZeroDeltaPoint,
    pub rederived: ZeroDeltaPoint,
}

pub fn zero_delta_su11(omega0: f64, kappa: f64, k: f64, hbar: f64) -> Result<ZeroDeltaSu11> {
    Manifold::pseudo_sphere(k)?;
    if omega0 == 0.0 {
        return Err(Error::DegenerateDrive("zero-Δ condition undefined for ω0 = 0".into()));
    }
    if kappa.abs() <= omega0.abs() {
        return Err(Error::NoResonance(format!(
            "|κ/ω0| = {} must exceed 1",
            (kappa / omega0).abs()
        )));
    }
    let ratio = -kappa / omega0;
    if ratio < 0.0 {
        return Err(Error::NegativeBranch(format!(
            "coth τ0 = −κ/ω0 = {ratio} < −1"
        )));
    }
    let point = |coth: f64, omega: f64| {
        let tau0 = (1.0 / coth).atanh();
        ZeroDeltaPoint {
            radius: tau0,
            omega,
            gamma: TAU * hbar * k * (tau0.cosh() - 1.0),
            drive: DriveParams::su11(omega0, kappa, omega).with_hbar(hbar),
        }
    };
    let mut printed = point(ratio, 4.0 * kappa * kappa / omega0 - 2.0 * omega0);
    printed.gamma = TAU * k * hbar * (kappa.abs() / (kappa * kappa - omega0 * omega0).sqrt() - 1.0);
    let rederived = point(2.0 * ratio, 8.0 * kappa * kappa / omega0 - 2.0 * omega0);
    Ok(ZeroDeltaSu11 { printed, rederived })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroDeltaBoson {
    pub omega_root: f64,
    pub r0: f64,
    /// 2πℏr0² at the root.
    pub gamma: f64,
    /// Numerically integrated Δ at the root.
    pub delta_at_root: f64,
    /// ω = −ω0/2.
    pub omega_printed: f64,
    /// 8π|E|²/ω² at ω = −ω0/2, with ℏ restored.
    pub gamma_printed: f64,
}

/// Numerically integrated Δ over one period of the steady-state orbit at drive frequency ω.
pub fn boson_delta(omega0: f64, e: f64, omega: f64, hbar: f64, opts: &IntegrationOptions) -> Result<f64> {
    let p = DriveParams::boson(omega0, e, omega).with_hbar(hbar);
    let surface = invariant_surface_boson(&BosonDrive { omega0, e, omega })?;
    let start = surface.resonance.initial_point()?;
    let traj = integrate(Manifold::Plane, &start, &p, surface.resonance.period, opts)?;
    dynamical_phase(&traj, &p)
}

/// Finds ω where the numerically integrated Δ of the steady-state orbit vanishes.
pub fn zero_delta_boson(
    omega0: f64,
    e: f64,
    hbar: f64,
    opts: &IntegrationOptions,
) -> Result<ZeroDeltaBoson> {
    if !(e >= 0.0 && e.is_finite()) {
        return Err(Error::Domain(format!("drive amplitude must be ≥ 0, got {e}")));
    }
    if omega0 == 0.0 || !omega0.is_finite() {
        return Err(Error::DegenerateDrive("zero-Δ search requires ω0 ≠ 0".into()));
    }
    let omega_printed = -omega0 / 2.0;
    let gamma_printed = 8.0 * PI * hbar * e * e / (omega_printed * omega_printed);
    if e == 0.0 {
        // every ω is a root and the orbit is the origin
        return Ok(ZeroDeltaBoson {
            omega_root: omega0 / 2.0,
            r0: 0.0,
            gamma: 0.0,
            delta_at_root: 0.0,
            omega_printed,
            gamma_printed,
        });
    }

    let scale = omega0.abs();
    let excluded = |w: f64| w.abs() < 0.05 * scale || (w - omega0).abs() < 0.05 * scale;
    let grid: Vec<f64> = (0..=80).map(|i| -4.0 * scale + 8.0 * scale * i as f64 / 80.0).collect();
    let mut bracket = None;
    let mut prev: Option<(f64, f64)> = None;
    for &w in &grid {
        if excluded(w) {
            prev = None;
            continue;
        }
        let d = boson_delta(omega0, e, w, hbar, opts)?;
        if let Some((w0, d0)) = prev {
            let same_side = (w0 - omega0).signum() == (w - omega0).signum() && w0.signum() == w.signum();
            if same_side && d0.signum() != d.signum() {
                bracket = Some(((w0, d0), (w, d)));
                break;
            }
        }
        prev = Some((w, d));
    }
    let ((mut lo, mut dlo), (mut hi, _)) = bracket.ok_or_else(|| {
        Error::RootNotFound(format!(
            "Δ(ω) has no sign change on [{}, {}]",
            grid[0],
            grid[grid.len() - 1]
        ))
    })?;

    let mut root = 0.5 * (lo + hi);
    let mut d_root = boson_delta(omega0, e, root, hbar, opts)?;
    for _ in 0..200 {
        if d_root == 0.0 || (hi - lo).abs() < 1e-14 * scale {
            break;
        }
        if d_root.signum() == dlo.signum() {
            lo = root;
            dlo = d_root;
        } else {
            hi = root;
        }
        root = 0.5 * (lo + hi);
        d_root = boson_delta(omega0, e, root, hbar, opts)?;
    }
    let r0 = (e / (root - omega0)).abs();
    Ok(ZeroDeltaBoson {
        omega_root: root,
        r0,
        gamma: TAU * hbar * r0 * r0,
        delta_at_root: d_root,
        omega_printed,
        gamma_printed,
    })
}
