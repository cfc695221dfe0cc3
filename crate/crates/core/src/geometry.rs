//! Coherent-state phase-space geometry for the three families.
//!
//! | family        | complex coordinate            | kernel F               | metric g              |
//! |---------------|-------------------------------|------------------------|-----------------------|
//! | Sphere (J)    | z = tan(θ/2)·e^{−iφ}          | (1+\|z\|²)^{2J}        | 2J/(1+\|z\|²)²        |
//! | PseudoSphere  | z = tanh(τ/2)·e^{−iφ}, \|z\|<1 | (1−\|z\|²)^{−2k}       | 2k/(1−\|z\|²)²        |
//! | Plane         | z = r·e^{+iθ}                 | e^{\|z\|²}             | 1                     |
//!
//! Note the opposite sign of the angle in the Plane chart. At the chart poles
//! (θ = 0, τ = 0, r = 0) the angle is undefined and is set to 0.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Which coherent-state family and which representation of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Manifold {
    /// SU(2) spin coherent states. Spin J is stored as the integer 2J.
    Sphere { twice_j: u32 },
    /// SU(1,1) coherent states with Bargmann index k.
    PseudoSphere { k: f64 },
    /// Heisenberg–Weyl (boson) coherent states.
    Plane,
}

impl Manifold {
    pub fn sphere(j: f64) -> Result<Self> {
        let twice = 2.0 * j;
        if !j.is_finite() || twice < 1.0 || (twice - twice.round()).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "spin J must be a positive multiple of 1/2, got {j}"
            )));
        }
        Ok(Manifold::Sphere {
            twice_j: twice.round() as u32,
        })
    }

    pub fn pseudo_sphere(k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::Domain(format!(
                "Bargmann index k must be positive, got {k}"
            )));
        }
        Ok(Manifold::PseudoSphere { k })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Manifold::Sphere { .. } => "sphere",
            Manifold::PseudoSphere { .. } => "pseudosphere",
            Manifold::Plane => "plane",
        }
    }

    /// Spin J for the Sphere, None otherwise.
    pub fn spin(&self) -> Option<f64> {
        match *self {
            Manifold::Sphere { twice_j } => Some(twice_j as f64 / 2.0),
            _ => None,
        }
    }

    /// The representation label that multiplies the phase: J, k, or 1.
    pub fn weight(&self) -> f64 {
        match *self {
            Manifold::Sphere { twice_j } => twice_j as f64 / 2.0,
            Manifold::PseudoSphere { k } => k,
            Manifold::Plane => 1.0,
        }
    }

    pub(crate) fn check_z(&self, z: Complex64) -> Result<()> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite coordinate {z}")));
        }
        if let Manifold::PseudoSphere { .. } = self {
            if z.norm() >= 1.0 {
                return Err(Error::Domain(format!(
                    "pseudosphere coordinate must satisfy |z| < 1, got |z| = {}",
                    z.norm()
                )));
            }
        }
        Ok(())
    }
}

/// Real chart coordinates. The first field is the chart radius, the second the angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Chart {
    Sphere { theta: f64, phi: f64 },
    PseudoSphere { tau: f64, phi: f64 },
    Plane { r: f64, angle: f64 },
}

impl Chart {
    /// θ, τ or r.
    pub fn radius(&self) -> f64 {
        match *self {
            Chart::Sphere { theta, .. } => theta,
            Chart::PseudoSphere { tau, .. } => tau,
            Chart::Plane { r, .. } => r,
        }
    }

    /// φ, or the polar angle on the Plane.
    pub fn angle(&self) -> f64 {
        match *self {
            Chart::Sphere { phi, .. } | Chart::PseudoSphere { phi, .. } => phi,
            Chart::Plane { angle, .. } => angle,
        }
    }
}

/// Rates of change of the chart coordinates: (θ̇, φ̇), (τ̇, φ̇) or (ṙ, θ̇_polar).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChartVelocity {
    pub radial: f64,
    pub angular: f64,
}

/// A point of the phase space held both as z and as chart coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    z: Complex64,
    chart: Chart,
}

impl PhasePoint {
    pub fn from_z(manifold: Manifold, z: Complex64) -> Result<Self> {
        let chart = z_to_angles(manifold, z)?;
        Ok(PhasePoint { z, chart })
    }

    pub fn from_chart(manifold: Manifold, chart: Chart) -> Result<Self> {
        let z = angles_to_z(manifold, chart)?;
        Ok(PhasePoint { z, chart })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }
}

fn wrap_angle(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

fn check_angle(name: &str, a: f64) -> Result<()> {
    if !(0.0..TAU).contains(&a) {
        return Err(Error::Domain(format!("{name} = {a} outside [0, 2π)")));
    }
    Ok(())
}

pub fn angles_to_z(manifold: Manifold, chart: Chart) -> Result<Complex64> {
    match (manifold, chart) {
        (Manifold::Sphere { .. }, Chart::Sphere { theta, phi }) => {
            if !(0.0..=PI).contains(&theta) {
                return Err(Error::Domain(format!("θ = {theta} outside [0, π]")));
            }
            check_angle("φ", phi)?;
            if theta == PI {
                return Err(Error::ChartSingularity(
                    "θ = π maps to z = ∞ in the complex chart".into(),
                ));
            }
            Ok(Complex64::from_polar((theta / 2.0).tan(), -phi))
        }
        (Manifold::PseudoSphere { .. }, Chart::PseudoSphere { tau, phi }) => {
            if !(tau.is_finite() && tau >= 0.0) {
                return Err(Error::Domain(format!("τ = {tau} must be finite and ≥ 0")));
            }
            check_angle("φ", phi)?;
            let rho = (tau / 2.0).tanh();
            if rho >= 1.0 {
                return Err(Error::Domain(format!(
                    "τ = {tau} is too large to represent with |z| < 1"
                )));
            }
            Ok(Complex64::from_polar(rho, -phi))
        }
        (Manifold::Plane, Chart::Plane { r, angle }) => {
            if !(r.is_finite() && r >= 0.0) {
                return Err(Error::Domain(format!("r = {r} must be finite and ≥ 0")));
            }
            check_angle("θ_polar", angle)?;
            Ok(Complex64::from_polar(r, angle))
        }
        _ => Err(Error::Domain(format!(
            "chart {chart:?} does not belong to the {} manifold",
            manifold.name()
        ))),
    }
}

pub fn z_to_angles(manifold: Manifold, z: Complex64) -> Result<Chart> {
    manifold.check_z(z)?;
    let rho = z.norm();
    let arg = if rho == 0.0 { 0.0 } else { z.arg() };
    Ok(match manifold {
        Manifold::Sphere { .. } => Chart::Sphere {
            theta: 2.0 * rho.atan(),
            phi: wrap_angle(-arg),
        },
        Manifold::PseudoSphere { .. } => Chart::PseudoSphere {
            tau: 2.0 * rho.atanh(),
            phi: wrap_angle(-arg),
        },
        Manifold::Plane => Chart::Plane {
            r: rho,
            angle: wrap_angle(arg),
        },
    })
}

/// log F(z, z*).
pub fn log_kernel(manifold: Manifold, z: Complex64) -> Result<f64> {
    manifold.check_z(z)?;
    let n2 = z.norm_sqr();
    Ok(match manifold {
        Manifold::Sphere { twice_j } => twice_j as f64 * n2.ln_1p(),
        Manifold::PseudoSphere { k } => -2.0 * k * (-n2).ln_1p(),
        Manifold::Plane => n2,
    })
}

/// The kernel F = ⟨z̃|z̃⟩ of the unnormalized coherent state.
pub fn kernel_f(manifold: Manifold, z: Complex64) -> Result<f64> {
    log_kernel(manifold, z).map(f64::exp)
}

/// g = ∂² log F / ∂z ∂z*.
pub fn kahler_metric(manifold: Manifold, z: Complex64) -> Result<f64> {
    manifold.check_z(z)?;
    let n2 = z.norm_sqr();
    Ok(match manifold {
        Manifold::Sphere { twice_j } => twice_j as f64 / (1.0 + n2).powi(2),
        Manifold::PseudoSphere { k } => 2.0 * k / (1.0 - n2).powi(2),
        Manifold::Plane => 1.0,
    })
}

/// ∂ log F / ∂z. The z* derivative is its conjugate.
pub(crate) fn dlog_kernel_dz(manifold: Manifold, z: Complex64) -> Complex64 {
    let n2 = z.norm_sqr();
    match manifold {
        Manifold::Sphere { twice_j } => z.conj() * (twice_j as f64 / (1.0 + n2)),
        Manifold::PseudoSphere { k } => z.conj() * (2.0 * k / (1.0 - n2)),
        Manifold::Plane => z.conj(),
    }
}

/// Integrand of the geometric phase in the angle chart.
///
/// Sphere: Jℏ(1 − cos θ)φ̇. PseudoSphere: kℏ(cosh τ − 1)φ̇. Plane: −ℏr²θ̇_polar.
pub fn connection_value(
    manifold: Manifold,
    point: &PhasePoint,
    velocity: ChartVelocity,
    hbar: f64,
) -> Result<f64> {
    connection_chart(manifold, point.chart, velocity, hbar)
}

/// [`connection_value`] on raw chart coordinates (valid at θ = π as well).
pub fn connection_chart(
    manifold: Manifold,
    chart: Chart,
    velocity: ChartVelocity,
    hbar: f64,
) -> Result<f64> {
    match (manifold, chart) {
        (Manifold::Sphere { twice_j }, Chart::Sphere { theta, .. }) => {
            Ok(0.5 * twice_j as f64 * hbar * (1.0 - theta.cos()) * velocity.angular)
        }
        (Manifold::PseudoSphere { k }, Chart::PseudoSphere { tau, .. }) => {
            Ok(k * hbar * (tau.cosh() - 1.0) * velocity.angular)
        }
        (Manifold::Plane, Chart::Plane { r, .. }) => Ok(-hbar * r * r * velocity.angular),
        _ => Err(Error::Domain(format!(
            "chart {chart:?} does not belong to the {} manifold",
            manifold.name()
        ))),
    }
}

/// Integrand of the geometric phase in the complex chart:
/// (iℏ/2)(∂_z log F · ż − ∂_{z*} log F · ż*).
pub fn connection_value_complex(
    manifold: Manifold,
    z: Complex64,
    zdot: Complex64,
    hbar: f64,
) -> f64 {
    -hbar * (dlog_kernel_dz(manifold, z) * zdot).im
}

/// Converts a complex velocity ż into chart rates at `point`.
///
/// The angular rate is undefined at a chart pole.
pub fn chart_velocity(point: &PhasePoint, zdot: Complex64) -> Result<ChartVelocity> {
    let rho = point.z.norm();
    if rho == 0.0 {
        return Err(Error::ChartSingularity(
            "angular rate undefined at the chart pole".into(),
        ));
    }
    match point.chart {
        Chart::Sphere { phi, .. } => {
            let w = zdot * Complex64::from_polar(1.0, phi);
            Ok(ChartVelocity {
                radial: 2.0 * w.re / (1.0 + rho * rho),
                angular: -w.im / rho,
            })
        }
        Chart::PseudoSphere { phi, .. } => {
            let w = zdot * Complex64::from_polar(1.0, phi);
            Ok(ChartVelocity {
                radial: 2.0 * w.re / (1.0 - rho * rho),
                angular: -w.im / rho,
            })
        }
        Chart::Plane { angle, .. } => {
            let w = zdot * Complex64::from_polar(1.0, -angle);
            Ok(ChartVelocity {
                radial: w.re,
                angular: w.im / rho,
            })
        }
    }
}

/// Converts chart rates into the complex velocity ż at `point`.
pub fn complex_velocity(point: &PhasePoint, v: ChartVelocity) -> Complex64 {
    let rho = point.z.norm();
    match point.chart {
        Chart::Sphere { phi, .. } => {
            let rho_dot = 0.5 * v.radial * (1.0 + rho * rho);
            Complex64::new(rho_dot, -rho * v.angular) * Complex64::from_polar(1.0, -phi)
        }
        Chart::PseudoSphere { phi, .. } => {
            let rho_dot = 0.5 * v.radial * (1.0 - rho * rho);
            Complex64::new(rho_dot, -rho * v.angular) * Complex64::from_polar(1.0, -phi)
        }
        Chart::Plane { angle, .. } => {
            Complex64::new(v.radial, rho * v.angular) * Complex64::from_polar(1.0, angle)
        }
    }
}

/// Normalized overlap ⟨z1|z2⟩.
pub fn cs_overlap(manifold: Manifold, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    manifold.check_z(z1)?;
    manifold.check_z(z2)?;
    let cross = z1.conj() * z2;
    let n1 = z1.norm_sqr();
    let n2 = z2.norm_sqr();
    Ok(match manifold {
        Manifold::Sphere { twice_j } => {
            let j = twice_j as f64 / 2.0;
            (Complex64::new(1.0, 0.0) + cross).powi(twice_j as i32)
                / ((1.0 + n1) * (1.0 + n2)).powf(j)
        }
        Manifold::PseudoSphere { k } => {
            let num = ((1.0 - n1) * (1.0 - n2)).powf(k);
            num / (Complex64::new(1.0, 0.0) - cross).powf(2.0 * k)
        }
        Manifold::Plane => (cross - 0.5 * (n1 + n2)).exp(),
    })
}

/// Chart distance: great-circle angle on the Sphere, hyperbolic distance
/// (in units where the origin-to-z distance is τ) on the PseudoSphere,
/// |Δz| on the Plane.
pub fn chart_distance(manifold: Manifold, z1: Complex64, z2: Complex64) -> f64 {
    match manifold {
        Manifold::Sphere { .. } => {
            let a = bloch_vector(z1);
            let b = bloch_vector(z2);
            let cross = [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ];
            let sin = cross.iter().map(|c| c * c).sum::<f64>().sqrt();
            let cos: f64 = a.iter().zip(b.iter()).map(|(x, y)| x * y).sum();
            sin.atan2(cos)
        }
        Manifold::PseudoSphere { .. } => {
            let num = (z1 - z2).norm();
            let den = (Complex64::new(1.0, 0.0) - z1.conj() * z2).norm();
            2.0 * (num / den).min(1.0 - f64::EPSILON).atanh()
        }
        Manifold::Plane => (z1 - z2).norm(),
    }
}

/// Unit vector (sin θ cos φ, sin θ sin φ, −cos θ) that the spin points along.
pub fn bloch_vector(z: Complex64) -> [f64; 3] {
    let n2 = z.norm_sqr();
    let d = 1.0 + n2;
    // z* = tan(θ/2) e^{iφ}; 2z*/(1+|z|²) = sin θ e^{iφ}
    let t = z.conj() * (2.0 / d);
    [t.re, t.im, -(1.0 - n2) / d]
}
