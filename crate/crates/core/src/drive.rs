//! Resonant Hamiltonians for the three families and their coherent-state
//! expectation values.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{Manifold, PhasePoint};

/// Phase convention for the SU(1,1) pump term.
///
/// `Rederived` evaluates ⟨Ĥ⟩ directly from the operator Hamiltonian
/// 2ℏ[ω0K̂0 + κ(e^{iωt}K̂₊ + e^{−iωt}K̂₋)], which gives cos(φ + ωt).
/// `Paper` uses cos(φ − ωt) with the matching angle-chart equations of motion.
/// It exists for comparison and does not agree with the operator Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    Rederived,
    Paper,
}

/// Spin in a static field along z plus a field of amplitude `b0` rotating at `omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Drive {
    pub b: f64,
    pub b0: f64,
    pub omega: f64,
    pub mu: f64,
}

/// Cavity mode with an oscillating two-photon pump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su11Drive {
    pub omega0: f64,
    pub kappa: f64,
    pub omega: f64,
    pub convention: SignConvention,
}

/// Cavity mode with a coherent driving field of constant real amplitude `e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BosonDrive {
    pub omega0: f64,
    pub e: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Drive {
    Su2(Su2Drive),
    Su11(Su11Drive),
    Boson(BosonDrive),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    pub drive: Drive,
    pub hbar: f64,
    /// Constant added to the Hamiltonian.
    pub energy_offset: f64,
}

impl DriveParams {
    pub fn su2(b: f64, b0: f64, omega: f64, mu: f64) -> Self {
        Self::new(Drive::Su2(Su2Drive { b, b0, omega, mu }))
    }

    pub fn su11(omega0: f64, kappa: f64, omega: f64) -> Self {
        Self::new(Drive::Su11(Su11Drive {
            omega0,
            kappa,
            omega,
            convention: SignConvention::Rederived,
        }))
    }

    pub fn boson(omega0: f64, e: f64, omega: f64) -> Self {
        Self::new(Drive::Boson(BosonDrive { omega0, e, omega }))
    }

    fn new(drive: Drive) -> Self {
        DriveParams {
            drive,
            hbar: 1.0,
            energy_offset: 0.0,
        }
    }

    pub fn with_hbar(mut self, hbar: f64) -> Self {
        self.hbar = hbar;
        self
    }

    pub fn with_offset(mut self, offset: f64) -> Self {
        self.energy_offset = offset;
        self
    }

    /// Sets the SU(1,1) sign convention; a no-op for the other families.
    pub fn with_convention(mut self, convention: SignConvention) -> Self {
        if let Drive::Su11(ref mut d) = self.drive {
            d.convention = convention;
        }
        self
    }

    pub fn family(&self) -> &'static str {
        match self.drive {
            Drive::Su2(_) => "su2",
            Drive::Su11(_) => "su11",
            Drive::Boson(_) => "boson",
        }
    }

    pub fn omega(&self) -> f64 {
        match self.drive {
            Drive::Su2(d) => d.omega,
            Drive::Su11(d) => d.omega,
            Drive::Boson(d) => d.omega,
        }
    }

    /// Drive period 2π/|ω|, or None for a static drive.
    pub fn period(&self) -> Option<f64> {
        let w = self.omega().abs();
        (w > 0.0).then(|| TAU / w)
    }

    pub fn validate(&self) -> Result<()> {
        let values: Vec<(&str, f64)> = match self.drive {
            Drive::Su2(d) => vec![("b", d.b), ("b0", d.b0), ("omega", d.omega), ("mu", d.mu)],
            Drive::Su11(d) => vec![("omega0", d.omega0), ("kappa", d.kappa), ("omega", d.omega)],
            Drive::Boson(d) => vec![("omega0", d.omega0), ("e", d.e), ("omega", d.omega)],
        };
        for (name, v) in values
            .into_iter()
            .chain([("hbar", self.hbar), ("energy_offset", self.energy_offset)])
        {
            if !v.is_finite() {
                return Err(Error::Domain(format!("drive parameter {name} = {v} is not finite")));
            }
        }
        if self.hbar <= 0.0 {
            return Err(Error::Domain(format!("hbar must be positive, got {}", self.hbar)));
        }
        if let Drive::Boson(d) = self.drive {
            if d.e < 0.0 {
                return Err(Error::Domain(format!("drive amplitude e must be ≥ 0, got {}", d.e)));
            }
        }
        Ok(())
    }

    /// Errors unless this drive acts on `manifold`.
    pub fn check_manifold(&self, manifold: Manifold) -> Result<()> {
        match (manifold, self.drive) {
            (Manifold::Sphere { .. }, Drive::Su2(_))
            | (Manifold::PseudoSphere { .. }, Drive::Su11(_))
            | (Manifold::Plane, Drive::Boson(_)) => Ok(()),
            _ => Err(Error::FamilyMismatch {
                manifold: manifold.name(),
                drive: self.family(),
            }),
        }
    }
}

/// B(t) = (B0 cos ωt, B0 sin ωt, B).
pub fn magnetic_field(t: f64, d: &Su2Drive) -> [f64; 3] {
    let (s, c) = (d.omega * t).sin_cos();
    [d.b0 * c, d.b0 * s, d.b]
}

/// C(t) = 2ℏ(ω0, −2κ cos ωt, −2κ sin ωt).
pub fn pseudo_field(t: f64, d: &Su11Drive, hbar: f64) -> [f64; 3] {
    let (s, c) = (d.omega * t).sin_cos();
    [
        2.0 * hbar * d.omega0,
        -4.0 * hbar * d.kappa * c,
        -4.0 * hbar * d.kappa * s,
    ]
}

/// H(z, z*, t) = ⟨z|Ĥ(t)|z⟩, evaluated in the complex chart so it is regular at the poles.
pub fn energy_expectation(
    manifold: Manifold,
    point: &PhasePoint,
    t: f64,
    p: &DriveParams,
) -> Result<f64> {
    p.check_manifold(manifold)?;
    let z = point.z();
    manifold.check_z(z)?;
    Ok(energy_at(manifold, z, t, p))
}

pub(crate) fn energy_at(manifold: Manifold, z: Complex64, t: f64, p: &DriveParams) -> f64 {
    let n2 = z.norm_sqr();
    let hbar = p.hbar;
    let h = match (manifold, p.drive) {
        (Manifold::Sphere { twice_j }, Drive::Su2(d)) => {
            let j = twice_j as f64 / 2.0;
            let den = 1.0 + n2;
            // e^{−iωt}z* + e^{iωt}z = 2 Re(e^{iωt} z)
            let transverse = 2.0 * (Complex64::from_polar(1.0, d.omega * t) * z).re / den;
            let longitudinal = (1.0 - n2) / den;
            -d.mu * j * (d.b0 * transverse - d.b * longitudinal)
        }
        (Manifold::PseudoSphere { k }, Drive::Su11(d)) => {
            let den = 1.0 - n2;
            let phase = match d.convention {
                SignConvention::Rederived => -d.omega * t,
                SignConvention::Paper => d.omega * t,
            };
            let pump = 2.0 * (Complex64::from_polar(1.0, phase) * z).re / den;
            2.0 * hbar * k * (d.omega0 * (1.0 + n2) / den + 2.0 * d.kappa * pump)
        }
        (Manifold::Plane, Drive::Boson(d)) => {
            hbar * d.omega0 * n2
                + 2.0 * hbar * d.e * (Complex64::from_polar(1.0, d.omega * t) * z).re
        }
        _ => unreachable!("manifold/drive pairing checked by caller"),
    };
    h + p.energy_offset
}

/// ∂H/∂z* in closed form.
pub(crate) fn energy_gradient_conj(
    manifold: Manifold,
    z: Complex64,
    t: f64,
    p: &DriveParams,
) -> Complex64 {
    let n2 = z.norm_sqr();
    let hbar = p.hbar;
    match (manifold, p.drive) {
        (Manifold::Sphere { twice_j }, Drive::Su2(d)) => {
            let j = twice_j as f64 / 2.0;
            let den = 1.0 + n2;
            let rot = Complex64::from_polar(1.0, d.omega * t);
            let s = rot.conj() * z.conj() + rot * z;
            let transverse = rot.conj() / den - z * s / (den * den);
            let longitudinal = -2.0 * z / (den * den);
            -d.mu * j * (d.b0 * transverse - d.b * longitudinal)
        }
        (Manifold::PseudoSphere { k }, Drive::Su11(d)) => {
            let den = 1.0 - n2;
            let rot = match d.convention {
                SignConvention::Rederived => Complex64::from_polar(1.0, d.omega * t),
                SignConvention::Paper => Complex64::from_polar(1.0, -d.omega * t),
            };
            // pump = (rot z* + rot* z)/den
            let s = rot * z.conj() + rot.conj() * z;
            let dpump = rot / den + z * s / (den * den);
            let dcosh = 2.0 * z / (den * den);
            2.0 * hbar * k * (d.omega0 * dcosh + 2.0 * d.kappa * dpump)
        }
        (Manifold::Plane, Drive::Boson(d)) => {
            hbar * d.omega0 * z + hbar * d.e * Complex64::from_polar(1.0, -d.omega * t)
        }
        _ => unreachable!("manifold/drive pairing checked by caller"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Chart;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn magnetic_field_examples() {
        let d = Su2Drive { b: 0.7, b0: 1.3, omega: 2.0, mu: 1.0 };
        assert_eq!(magnetic_field(0.0, &d), [1.3, 0.0, 0.7]);
        let f = magnetic_field(FRAC_PI_2 / 2.0, &d);
        assert!(f[0].abs() < 1e-15 && (f[1] - 1.3).abs() < 1e-15 && f[2] == 0.7);
        let d0 = Su2Drive { b0: 0.0, ..d };
        for t in [0.0, 0.3, 5.0] {
            let f = magnetic_field(t, &d0);
            assert_eq!([f[0].abs(), f[1].abs(), f[2]], [0.0, 0.0, 0.7]);
        }
    }

    #[test]
    fn pseudo_field_examples() {
        let d = Su11Drive { omega0: 1.5, kappa: 0.5, omega: 1.0, convention: SignConvention::Rederived };
        let hbar = 2.0;
        assert_eq!(pseudo_field(0.0, &d, hbar), [6.0, -4.0, -0.0]);
        let f = pseudo_field(PI, &d, hbar);
        assert!((f[1] - 4.0).abs() < 1e-14 && f[2].abs() < 1e-14);
        let d0 = Su11Drive { kappa: 0.0, ..d };
        assert_eq!(pseudo_field(0.4, &d0, hbar)[1..], [-0.0, -0.0]);
    }

    #[test]
    fn energy_examples() {
        let m = Manifold::sphere(1.5).unwrap();
        let p = DriveParams::su2(0.8, 1.1, -2.0, 1.3);
        let north = PhasePoint::from_z(m, Complex64::new(0.0, 0.0)).unwrap();
        // θ = 0 → +μJB
        let e = energy_expectation(m, &north, 0.37, &p).unwrap();
        assert!((e - 1.3 * 1.5 * 0.8).abs() < 1e-14);

        let ps = Manifold::pseudo_sphere(0.25).unwrap();
        let p = DriveParams::su11(1.7, 0.4, 3.0).with_hbar(0.5);
        let origin = PhasePoint::from_z(ps, Complex64::new(0.0, 0.0)).unwrap();
        let e = energy_expectation(ps, &origin, 1.1, &p).unwrap();
        assert!((e - 2.0 * 0.5 * 0.25 * 1.7).abs() < 1e-15);

        let p = DriveParams::boson(1.0, 2.0, 3.0);
        let origin = PhasePoint::from_z(Manifold::Plane, Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(energy_expectation(Manifold::Plane, &origin, 0.2, &p).unwrap(), 0.0);
    }

    #[test]
    fn sphere_energy_matches_angle_form() {
        let m = Manifold::sphere(1.0).unwrap();
        let d = Su2Drive { b: 0.6, b0: 1.4, omega: 1.9, mu: 0.8 };
        let p = DriveParams { drive: Drive::Su2(d), hbar: 1.0, energy_offset: 0.0 };
        for (theta, phi, t) in [(0.4, 0.1, 0.0), (2.0, 5.0, 1.3), (1.2, 3.3, -0.7)] {
            let pt = PhasePoint::from_chart(m, Chart::Sphere { theta, phi }).unwrap();
            let e = energy_expectation(m, &pt, t, &p).unwrap();
            let expected = -d.mu * 1.0
                * (d.b0 * theta.sin() * (phi - d.omega * t).cos() - d.b * theta.cos());
            assert!((e - expected).abs() < 1e-13, "{e} vs {expected}");
        }
    }

    #[test]
    fn sphere_energy_gauge_shift() {
        // (φ, ωt) → (φ + c, ωt + c) leaves H unchanged
        let m = Manifold::sphere(2.0).unwrap();
        let p = DriveParams::su2(0.6, 1.4, 1.0, 1.0);
        let c = 0.83;
        let a = PhasePoint::from_chart(m, Chart::Sphere { theta: 1.1, phi: 0.5 }).unwrap();
        let b = PhasePoint::from_chart(m, Chart::Sphere { theta: 1.1, phi: 0.5 + c }).unwrap();
        let ea = energy_expectation(m, &a, 0.2, &p).unwrap();
        let eb = energy_expectation(m, &b, 0.2 + c, &p).unwrap();
        assert!((ea - eb).abs() < 1e-13);
    }

    #[test]
    fn pseudo_energy_conventions() {
        let ps = Manifold::pseudo_sphere(0.75).unwrap();
        let (omega0, kappa, omega) = (1.2, 0.7, -3.0);
        let (tau, phi, t) = (0.9, 1.1, 0.35);
        let pt = PhasePoint::from_chart(ps, Chart::PseudoSphere { tau, phi }).unwrap();
        for (conv, sign) in [(SignConvention::Rederived, 1.0), (SignConvention::Paper, -1.0)] {
            let p = DriveParams::su11(omega0, kappa, omega).with_convention(conv);
            let e = energy_expectation(ps, &pt, t, &p).unwrap();
            let expected = 2.0 * 0.75
                * (omega0 * tau.cosh() + 2.0 * kappa * tau.sinh() * (phi + sign * omega * t).cos());
            assert!((e - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn mismatched_family_is_rejected() {
        let p = DriveParams::boson(1.0, 1.0, 1.0);
        let m = Manifold::sphere(0.5).unwrap();
        let pt = PhasePoint::from_z(m, Complex64::new(0.1, 0.0)).unwrap();
        assert!(matches!(
            energy_expectation(m, &pt, 0.0, &p),
            Err(Error::FamilyMismatch { .. })
        ));
    }

    #[test]
    fn negative_amplitude_is_invalid() {
        assert!(DriveParams::boson(1.0, -1.0, 2.0).validate().is_err());
        assert!(DriveParams::su2(1.0, 1.0, f64::NAN, 1.0).validate().is_err());
        assert!(DriveParams::su2(1.0, 1.0, 1.0, 1.0).with_hbar(0.0).validate().is_err());
    }
}
