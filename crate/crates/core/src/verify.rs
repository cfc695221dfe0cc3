//! Cross-module invariant suites with measured residuals.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::drive::{energy_at, energy_expectation, DriveParams};
use crate::dynamics::{
    eom_rhs, eom_rhs_complex, integrate, integrate_at, rotating_frame_solution, IntegrationOptions,
    SpinVector,
};
use crate::error::{Error, Result};
use crate::geometry::{
    angles_to_z, bloch_vector, chart_distance, complex_velocity, connection_value,
    connection_value_complex, cs_overlap, kahler_metric, log_kernel, z_to_angles, Manifold,
    PhasePoint,
};
use crate::oracle::{
    build_generators, build_generators_photon, coherence_defect, coherent_vector, commutator,
    hamiltonian_at, max_abs_diff, propagate, resolve_truncation, semiclassical_check,
    su11_matrix_elements, su11_matrix_elements_numeric, Truncation,
};
use crate::phases::{
    dynamical_phase, geometric_phase, stationary_numeric, stationary_quantization,
};
use crate::resonance::{
    boson_delta, invariant_surface_su2, resonance_for, zero_delta_boson, zero_delta_su11,
    zero_delta_su2,
};

const SEED: u64 = 0x6765_6f70_6861_7365;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    All,
    Geometry,
    Dynamics,
    Oracle,
    Resonance,
    Stationary,
    Nmr,
}

impl Suite {
    pub const PARTS: [Suite; 6] = [
        Suite::Geometry,
        Suite::Dynamics,
        Suite::Oracle,
        Suite::Resonance,
        Suite::Stationary,
        Suite::Nmr,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Geometry => "geometry",
            Suite::Dynamics => "dynamics",
            Suite::Oracle => "oracle",
            Suite::Resonance => "resonance",
            Suite::Stationary => "stationary",
            Suite::Nmr => "nmr",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::PARTS)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown verification suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Whether a check passes when its residual is below or above the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Below,
    Above,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub bound: Bound,
    pub passed: bool,
    /// Error message when the check could not be evaluated.
    pub note: Option<String>,
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, residual: Result<f64>, threshold: f64, bound: Bound) -> Check {
        let (residual, note) = match residual {
            Ok(r) => (r, None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        };
        let passed = match bound {
            Bound::Below => residual < threshold,
            Bound::Above => residual > threshold,
        };
        Check { suite, name: name.into(), residual, threshold, bound, passed, note }
    }

    fn below(suite: Suite, name: impl Into<String>, residual: Result<f64>, threshold: f64) -> Check {
        Check::new(suite, name, residual, threshold, Bound::Below)
    }
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::All => Suite::PARTS.iter().flat_map(|&s| run(s)).collect(),
        Suite::Geometry => geometry_checks(),
        Suite::Dynamics => dynamics_checks(),
        Suite::Oracle => oracle_checks(),
        Suite::Resonance => resonance_checks(),
        Suite::Stationary => stationary_checks(),
        Suite::Nmr => nmr_checks(),
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for v in values {
        let v = v?;
        if v.is_nan() {
            return Ok(f64::NAN);
        }
        worst = worst.max(v);
    }
    Ok(worst)
}

fn random_z(rng: &mut ChaCha8Rng, manifold: Manifold, max: f64) -> Complex64 {
    let r = match manifold {
        Manifold::PseudoSphere { .. } => max * rng.gen::<f64>().sqrt(),
        _ => max * rng.gen::<f64>(),
    };
    Complex64::from_polar(r, TAU * rng.gen::<f64>())
}

/// A representative drive for every family.
fn scenarios() -> Vec<(Manifold, DriveParams)> {
    vec![
        (Manifold::Sphere { twice_j: 1 }, DriveParams::su2(1.0, 1.0, -2.0, 1.0)),
        (Manifold::Sphere { twice_j: 3 }, DriveParams::su2(0.6, -1.3, 1.7, 0.9).with_hbar(0.8)),
        (Manifold::PseudoSphere { k: 0.25 }, DriveParams::su11(1.0, 1.0, -10.0)),
        (Manifold::PseudoSphere { k: 0.75 }, DriveParams::su11(0.5, -0.4, 2.2)),
        (Manifold::Plane, DriveParams::boson(1.0, 1.0, 3.0)),
    ]
}

fn geometry_checks() -> Vec<Check> {
    let s = Suite::Geometry;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for (m, _) in scenarios() {
        let tag = format!("{}-{}", m.name(), m.weight());

        // g = ∂z∂z* log F = ¼∇² log F
        let points: Vec<Complex64> = (0..20).map(|_| random_z(&mut rng, m, 0.85)).collect();
        let hessian = max_of(points.iter().map(|&z| {
            let h = 1e-4;
            let f = |dz: Complex64| log_kernel(m, z + dz);
            let lap = f(c(h, 0.0))? + f(c(-h, 0.0))? + f(c(0.0, h))? + f(c(0.0, -h))? - 4.0 * f(c(0.0, 0.0))?;
            let g = kahler_metric(m, z)?;
            Ok((0.25 * lap / (h * h) - g).abs() / g)
        }));
        out.push(Check::below(s, format!("metric_hessian/{tag}"), hessian, 1e-6));

        let roundtrip = max_of(points.iter().map(|&z| {
            let chart = z_to_angles(m, z)?;
            Ok((angles_to_z(m, chart)? - z).norm())
        }));
        out.push(Check::below(s, format!("chart_roundtrip/{tag}"), roundtrip, 1e-12));

        let normalization = max_of(points.iter().map(|&z| Ok((cs_overlap(m, z, z)? - 1.0).norm())));
        out.push(Check::below(s, format!("overlap_normalization/{tag}"), normalization, 1e-12));

        let forms = max_of(points.iter().filter(|z| z.norm() > 1e-3).map(|&z| {
            let pt = PhasePoint::from_z(m, z)?;
            let v = crate::geometry::ChartVelocity { radial: rng.gen::<f64>() - 0.5, angular: rng.gen::<f64>() - 0.5 };
            let zdot = complex_velocity(&pt, v);
            Ok((connection_value(m, &pt, v, 0.7)? - connection_value_complex(m, z, zdot, 0.7)).abs())
        }));
        out.push(Check::below(s, format!("connection_forms/{tag}"), forms, 1e-12));

        let overlaps = max_of((0..10).map(|_| {
            let (z1, z2) = (random_z(&mut rng, m, 0.9), random_z(&mut rng, m, 0.9));
            let n = resolve_truncation(m, Truncation::Auto, 0.9)?;
            let v1 = coherent_vector(m, z1, n)?;
            let v2 = coherent_vector(m, z2, n)?;
            Ok((v1.inner(&v2) - cs_overlap(m, z1, z2)?).norm())
        }));
        out.push(Check::below(s, format!("overlap_vs_oracle/{tag}"), overlaps, 1e-10));
    }
    out
}

/// ∂H/∂z* by central differences.
fn fd_gradient_conj(m: Manifold, z: Complex64, t: f64, p: &DriveParams) -> Complex64 {
    let h = 1e-6;
    let dx = (energy_at(m, z + c(h, 0.0), t, p) - energy_at(m, z - c(h, 0.0), t, p)) / (2.0 * h);
    let dy = (energy_at(m, z + c(0.0, h), t, p) - energy_at(m, z - c(0.0, h), t, p)) / (2.0 * h);
    0.5 * c(dx, dy)
}

fn dynamics_checks() -> Vec<Check> {
    let s = Suite::Dynamics;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let mut out = Vec::new();
    let opts = IntegrationOptions::default();
    for (m, p) in scenarios() {
        let tag = format!("{}-{}", m.name(), m.weight());

        // iℏg ż = ∂H/∂z*, against finite-difference gradients
        let gradient = max_of((0..20).map(|_| {
            let z = random_z(&mut rng, m, 0.8);
            let t = 3.0 * rng.gen::<f64>();
            let zdot = eom_rhs_complex(m, z, t, &p)?;
            let fd = -Complex64::i() * fd_gradient_conj(m, z, t, &p) / (p.hbar * kahler_metric(m, z)?);
            let pt = PhasePoint::from_z(m, z)?;
            let chart = complex_velocity(&pt, eom_rhs(m, &pt, t, &p)?);
            Ok(((zdot - fd).norm() / (1.0 + zdot.norm())).max((chart - fd).norm() / (1.0 + fd.norm())))
        }));
        out.push(Check::below(s, format!("eom_gradient/{tag}"), gradient, 1e-6));

        // orientation antisymmetry on a resonance orbit
        let antisym = (|| {
            let res = resonance_for(m, &p)?;
            let traj = integrate(m, &res.point_at(0.0)?, &p, res.period, &opts)?;
            Ok((geometric_phase(&traj)? + geometric_phase(&traj.reversed()?)?).abs())
        })();
        out.push(Check::below(s, format!("orientation_antisymmetry/{tag}"), antisym, 1e-10));

        // reparametrization t = s − (εT/2π) sin(2πs/T)
        let reparam = (|| {
            let res = resonance_for(m, &p)?;
            let period = res.period;
            let start = res.point_at(0.0)?;
            let uniform = integrate(m, &start, &p, period, &opts)?;
            let n = 2048;
            let eps = 0.4;
            let s_grid: Vec<f64> = (0..=n).map(|i| period * i as f64 / n as f64).collect();
            let times: Vec<f64> = s_grid.iter().map(|&x| x - eps * period / TAU * (TAU * x / period).sin()).collect();
            let rates: Vec<f64> = s_grid.iter().map(|&x| 1.0 - eps * (TAU * x / period).cos()).collect();
            let warped = integrate_at(m, &start, &p, &times, &opts.with_period(period))?;
            let relabeled = warped.reparametrized(&s_grid, &rates)?;
            Ok((geometric_phase(&relabeled)? - geometric_phase(&uniform)?).abs())
        })();
        out.push(Check::below(s, format!("reparametrization/{tag}"), reparam, 1e-8));

        // a constant energy offset shifts Δ by c·T and leaves Γ alone
        let gauge = (|| {
            let res = resonance_for(m, &p)?;
            let shifted = p.with_offset(0.37);
            let a = integrate(m, &res.point_at(0.0)?, &p, res.period, &opts)?;
            let b = integrate(m, &res.point_at(0.0)?, &shifted, res.period, &opts)?;
            let dg = (geometric_phase(&a)? - geometric_phase(&b)?).abs();
            let dd = (dynamical_phase(&b, &shifted)? - dynamical_phase(&a, &p)? - 0.37 * res.period).abs();
            Ok(dg.max(dd))
        })();
        out.push(Check::below(s, format!("gauge_offset/{tag}"), gauge, 1e-10));
    }

    // time reversal of a loop under a static Hamiltonian keeps Δ and negates Γ
    let m = Manifold::Sphere { twice_j: 2 };
    let p = DriveParams::su2(0.8, 0.6, 0.0, 1.0);
    let static_loop = (|| {
        let start = PhasePoint::from_z(m, c(0.4, -0.2))?;
        let period = TAU / 1.0; // |B| = 1
        let traj = integrate(m, &start, &p, period, &IntegrationOptions::default().with_period(period))?;
        let rev = traj.reversed()?;
        let dg = (geometric_phase(&traj)? + geometric_phase(&rev)?).abs();
        let dd = (dynamical_phase(&traj, &p)? - dynamical_phase(&rev, &p)?).abs();
        Ok(dg.max(dd))
    })();
    out.push(Check::below(s, "orientation_antisymmetry/static-loop", static_loop, 1e-10));
    out
}

fn oracle_checks() -> Vec<Check> {
    let s = Suite::Oracle;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut out = Vec::new();
    let i = Complex64::i();

    let spin = max_of([0.5, 1.0, 1.5, 2.0, 5.0].iter().map(|&j| {
        let g = build_generators(Manifold::sphere(j)?, 0)?;
        let (x, y, z) = (g.x(), g.y(), g.diagonal.clone());
        Ok(max_abs_diff(&commutator(&x, &y), &(&z * i))
            .max(max_abs_diff(&commutator(&y, &z), &(&x * i)))
            .max(max_abs_diff(&commutator(&z, &x), &(&y * i))))
    }));
    out.push(Check::below(s, "spin_commutators", spin, 1e-13));

    let su11 = max_of([0.25, 0.75, 1.0, 2.3].iter().map(|&k| {
        let n = 40;
        let g = build_generators(Manifold::pseudo_sphere(k)?, n)?;
        let crop = |a: &nalgebra::DMatrix<Complex64>| a.view((0, 0), (n - 1, n - 1)).into_owned();
        let (kp, km, k0) = (&g.raising, &g.lowering, &g.diagonal);
        Ok(max_abs_diff(&crop(&commutator(k0, kp)), &crop(kp))
            .max(max_abs_diff(&crop(&commutator(k0, km)), &crop(&-km)))
            .max(max_abs_diff(&crop(&commutator(km, kp)), &crop(&(k0 * c(2.0, 0.0))))))
    }));
    out.push(Check::below(s, "su11_commutators", su11, 1e-12));

    let photon = max_of([0.25, 0.75].iter().map(|&k| {
        let a = build_generators(Manifold::pseudo_sphere(k)?, 40)?;
        let b = build_generators_photon(k, 40)?;
        Ok(max_abs_diff(&a.raising, &b.raising).max(max_abs_diff(&a.diagonal, &b.diagonal)))
    }));
    out.push(Check::below(s, "photon_realization", photon, 1e-12));

    let elements = max_of((0..100).map(|_| {
        let k = 0.1 + 1.9 * rng.gen::<f64>();
        let m = Manifold::pseudo_sphere(k)?;
        let (z1, z2) = (random_z(&mut rng, m, 0.9), random_z(&mut rng, m, 0.9));
        let closed = su11_matrix_elements(z1, z2, k)?;
        let numeric = su11_matrix_elements_numeric(z1, z2, k, Truncation::Auto)?;
        Ok(closed.max_difference(&numeric))
    }));
    out.push(Check::below(s, "su11_matrix_elements", elements, 1e-10));

    for (m, p) in scenarios() {
        let tag = format!("{}-{}", m.name(), m.weight());
        let energy = max_of((0..8).map(|_| {
            let z = random_z(&mut rng, m, 0.7);
            let t = 2.0 * rng.gen::<f64>();
            let n = resolve_truncation(m, Truncation::Auto, z.norm())?;
            let g = build_generators(m, n)?;
            let v = coherent_vector(m, z, n)?;
            let h = hamiltonian_at(&g, &p, t)?;
            Ok((v.expectation(&h).re - energy_expectation(m, &PhasePoint::from_z(m, z)?, t, &p)?).abs())
        }));
        out.push(Check::below(s, format!("energy_expectation/{tag}"), energy, 1e-10));

        let unitarity = (|| {
            let res = resonance_for(m, &p)?;
            let z0 = res.point_at(0.0)?.z();
            let n = resolve_truncation(m, Truncation::Auto, z0.norm())?;
            let g = build_generators(m, n)?;
            let psi = propagate(&g, &p, &coherent_vector(m, z0, n)?, 10.0 * res.period, 5000)?;
            Ok((psi.norm() - 1.0).abs())
        })();
        out.push(Check::below(s, format!("unitarity_10_periods/{tag}"), unitarity, 1e-10));

        let coherence = (|| {
            let res = resonance_for(m, &p)?;
            let z0 = res.point_at(0.0)?.z();
            coherence_defect(m, z0, &p, res.period, Truncation::Auto, 10_000)
        })();
        out.push(Check::below(s, format!("coherence/{tag}"), coherence, 1e-6));

        let identity = (|| {
            let res = resonance_for(m, &p)?;
            let z0 = res.point_at(0.0)?.z();
            let r = semiclassical_check(m, z0, &p, res.period, Truncation::Auto, 10_000)?;
            Ok((1.0 - r.overlap_modulus).abs().max(r.phase_mismatch.abs()))
        })();
        out.push(Check::below(s, format!("semiclassical_identity/{tag}"), identity, 1e-5));
    }

    // second-order convergence: successive differences shrink by ≈4
    let doubling = (|| {
        let m = Manifold::Sphere { twice_j: 2 };
        let p = DriveParams::su2(1.0, 1.0, -2.0, 1.0);
        let res = resonance_for(m, &p)?;
        let g = build_generators(m, 0)?;
        let psi0 = coherent_vector(m, res.point_at(0.0)?.z(), 0)?;
        let states = [32, 64, 128, 256, 512]
            .iter()
            .map(|&n| propagate(&g, &p, &psi0, res.period, n))
            .collect::<Result<Vec<_>>>()?;
        let diffs: Vec<f64> = states.windows(2).map(|w| (&w[0].amplitudes - &w[1].amplitudes).norm()).collect();
        Ok(diffs.windows(2).map(|d| (d[0] / d[1] - 4.0).abs()).fold(0.0, f64::max))
    })();
    out.push(Check::below(s, "step_doubling_order", doubling, 0.25));
    out
}

fn resonance_checks() -> Vec<Check> {
    let s = Suite::Resonance;
    let mut out = Vec::new();
    let opts = IntegrationOptions::default();

    let residual = max_of(scenarios().into_iter().map(|(m, p)| Ok(resonance_for(m, &p)?.on_surface_residual)));
    out.push(Check::below(s, "on_surface_residual", residual, 1e-12));

    // the Sphere surface at θ0 = π/4
    let surface: Vec<DriveParams> = (0..20)
        .map(|i| {
            let b0 = 0.5 + 0.08 * i as f64;
            let b = 0.2 + 0.1 * i as f64;
            DriveParams::su2(b, b0, -(b0 / FRAC_PI_4.tan() + b), 1.0)
        })
        .collect();
    let phases: Result<Vec<(f64, f64)>> = surface
        .iter()
        .map(|p| {
            let m = Manifold::Sphere { twice_j: 1 };
            let res = resonance_for(m, p)?;
            let traj = integrate(m, &res.point_at(0.0)?, p, res.period, &opts)?;
            Ok((geometric_phase(&traj)?, dynamical_phase(&traj, p)?))
        })
        .collect();
    let spread = |f: fn(&(f64, f64)) -> f64| -> Result<f64> {
        let v = phases.as_ref().map_err(Clone::clone)?;
        let (lo, hi) = v.iter().map(f).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
        Ok(hi - lo)
    };
    out.push(Check::below(s, "surface_gamma_constancy/sphere", spread(|x| x.0), 1e-8));
    out.push(Check::new(s, "surface_delta_variation/sphere", spread(|x| x.1), 1e-3, Bound::Above));

    // the PseudoSphere surface at coth τ0 = 2
    let gammas = max_of((0..20).map(|i| {
        let kappa = 0.5 + 0.05 * i as f64;
        let omega0 = 0.3 + 0.1 * i as f64;
        let p = DriveParams::su11(omega0, kappa, -8.0 * kappa - 2.0 * omega0);
        let m = Manifold::PseudoSphere { k: 0.25 };
        let res = resonance_for(m, &p)?;
        let traj = integrate(m, &res.point_at(0.0)?, &p, res.period, &opts)?;
        Ok((geometric_phase(&traj)?.abs() - TAU * 0.25 * (2.0 / 3f64.sqrt() - 1.0)).abs())
    }));
    out.push(Check::below(s, "surface_gamma_constancy/pseudosphere", gammas, 1e-8));

    let su2 = (|| {
        let z = zero_delta_su2(1.0, 1.0, 1.0, 1.0, 0.5)?;
        let m = Manifold::Sphere { twice_j: 1 };
        let p = z.point.drive;
        let res = resonance_for(m, &p)?;
        let traj = integrate(m, &res.point_at(0.0)?, &p, res.period, &opts)?;
        Ok(dynamical_phase(&traj, &p)?.abs().max((res.radius - z.point.radius).abs()))
    })();
    out.push(Check::below(s, "zero_delta_su2", su2, 1e-8));

    let su11_membership = (|| {
        let z = zero_delta_su11(1.0, -2.0, 0.25, 1.0)?;
        let m = Manifold::PseudoSphere { k: 0.25 };
        let a = resonance_for(m, &z.printed.drive)?;
        let b = resonance_for(m, &z.rederived.drive)?;
        Ok((a.radius - z.printed.radius).abs().max((b.radius - z.rederived.radius).abs()))
    })();
    out.push(Check::below(s, "zero_delta_su11_surface_membership", su11_membership, 1e-12));

    let su11 = (|| {
        let z = zero_delta_su11(1.0, -2.0, 0.25, 1.0)?.rederived;
        let m = Manifold::PseudoSphere { k: 0.25 };
        let res = resonance_for(m, &z.drive)?;
        let traj = integrate(m, &res.point_at(0.0)?, &z.drive, res.period, &opts)?;
        dynamical_phase(&traj, &z.drive).map(f64::abs)
    })();
    out.push(Check::below(s, "zero_delta_su11_rederived", su11, 1e-8));

    let boson = (|| {
        let z = zero_delta_boson(1.0, 0.3, 1.0, &opts)?;
        let again = boson_delta(1.0, 0.3, z.omega_root, 1.0, &opts)?;
        Ok(z.delta_at_root.abs().max(again.abs()))
    })();
    out.push(Check::below(s, "zero_delta_boson", boson, 1e-8));
    out
}

fn stationary_checks() -> Vec<Check> {
    let s = Suite::Stationary;
    let mut out = Vec::new();
    for twice_j in 1..=6u32 {
        let j = twice_j as f64 / 2.0;
        for step in 0..=twice_j {
            let m = -j + step as f64;
            let r = (|| {
                let closed = stationary_quantization(j, m, 1.0, 1.0, 1.0)?;
                let (numeric, orientation) = stationary_numeric(j, m, 1.0, 1.0, 1.0, 1e-12)?;
                if !closed.single_valued {
                    return Ok(f64::INFINITY);
                }
                let exact = (closed.gamma - TAU * (j - m)).abs();
                let phase = (Complex64::from_polar(1.0, closed.gamma) - 1.0).norm();
                Ok((orientation * closed.gamma - numeric).abs().max(exact).max(phase))
            })();
            out.push(Check::below(s, format!("quantization/J={j}/m={m}"), r, 1e-9));
        }
    }
    out
}

fn nmr_checks() -> Vec<Check> {
    let s = Suite::Nmr;
    let mut out = Vec::new();
    let cases = [(1.0, 1.0, -2.0, 1.0, 0.5), (0.4, 1.5, 3.0, 0.7, 1.0), (-0.8, -0.6, 1.1, 1.3, 2.5)];
    for (idx, &(b, b0, omega, mu, j)) in cases.iter().enumerate() {
        let d = crate::drive::Su2Drive { b, b0, omega, mu };
        let hbar = 1.0;
        let r = (|| {
            let res = invariant_surface_su2(&d, hbar)?;
            let m = Manifold::sphere(j)?;
            let field = crate::dynamics::effective_field(&d, hbar);
            let len = field.iter().map(|x| x * x).sum::<f64>().sqrt();
            let s0 = SpinVector(field.map(|x| j * b0.signum() * x / len));

            // analytic lab-frame angle against the resonance angle
            let angle = (0..=40)
                .map(|i| rotating_frame_solution(&d, hbar, s0, 0.25 * res.period * i as f64).lab.theta())
                .map(|th| (th - res.radius).abs())
                .fold(0.0, f64::max);

            // integrated lab-frame orbit, rotated back into the drive frame
            let p = DriveParams::su2(b, b0, omega, mu).with_hbar(hbar);
            let start = res.point_at(0.0)?;
            let traj = integrate(m, &start, &p, 10.0 * res.period, &IntegrationOptions::default())?;
            let constancy = traj
                .samples
                .iter()
                .map(|smp| {
                    let v = bloch_vector(smp.point.z()).map(|x| j * x);
                    let (sn, cs) = (-omega * smp.t).sin_cos();
                    let rot = [cs * v[0] - sn * v[1], sn * v[0] + cs * v[1], v[2]];
                    (0..3).map(|i| (rot[i] - s0.0[i]).abs()).fold(0.0, f64::max)
                })
                .fold(0.0, f64::max);
            Ok((angle, constancy))
        })();
        out.push(Check::below(s, format!("lab_angle/case{idx}"), r.clone().map(|x| x.0), 1e-12));
        out.push(Check::below(s, format!("rotating_frame_constancy/case{idx}"), r.map(|x| x.1), 1e-8));
    }

    // at ω = −μB/ℏ the effective field has no longitudinal part
    let d = crate::drive::Su2Drive { b: 1.3, b0: 0.4, omega: -1.3 * 0.9, mu: 0.9 };
    let field = crate::dynamics::effective_field(&d, 1.0);
    out.push(Check::below(s, "resonant_field_transverse", Ok(field[2].abs()), 1e-12));

    // the classical spin stays on the orbit's latitude
    let orbit = (|| {
        let d = crate::drive::Su2Drive { b: 1.0, b0: 1.0, omega: -2.0, mu: 1.0 };
        let res = invariant_surface_su2(&d, 1.0)?;
        let p = DriveParams::su2(1.0, 1.0, -2.0, 1.0);
        let m = Manifold::Sphere { twice_j: 1 };
        let traj = integrate(m, &res.point_at(0.0)?, &p, res.period, &IntegrationOptions::default())?;
        max_of(traj.samples.iter().map(|smp| Ok(chart_distance(m, smp.point.z(), res.point_at(smp.t)?.z()))))
    })();
    out.push(Check::below(s, "orbit_tracks_resonance", orbit, 1e-8));
    out
}
