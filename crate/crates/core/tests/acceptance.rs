//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test --test acceptance`. Lines are written straight to
//! stdout so they show up without `--nocapture`. Criteria listed in
//! `EXPECTED_FAILURES` cannot be met as stated; the test requires them to keep
//! failing so a silent change in either direction is caught.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::io::Write;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use geophase::dynamics::{effective_field, integrate, rotating_frame_solution, IntegrationOptions, SpinVector};
use geophase::geometry::{bloch_vector, Manifold};
use geophase::oracle::{
    auto_truncation, coherent_tail, coherent_vector, semiclassical_check, su11_matrix_elements,
    su11_matrix_elements_numeric, Truncation,
};
use geophase::phases::{
    dynamical_phase, geometric_phase, interference_intensity, interference_predict, orientation,
    semiclassical_phase, stationary_numeric, stationary_quantization, Via,
};
use geophase::resonance::{
    invariant_surface_boson, invariant_surface_su2, resonance_for, zero_delta_boson, zero_delta_su11,
    zero_delta_su2,
};
use geophase::verify::{self, Suite};
use geophase::drive::{BosonDrive, Su2Drive};
use geophase::DriveParams;

const SU2_GAMMA_TOL: f64 = 1e-8;
const SU2_RUNTIME: Duration = Duration::from_secs(1);
const SURFACE_GAMMA_SPREAD: f64 = 1e-8;
const SURFACE_DELTA_SPREAD_MIN: f64 = 1e-3;
const SU11_GAMMA_TOL: f64 = 1e-7;
const TAIL_TOL: f64 = 1e-12;
const BOSON_CLOSURE_TOL: f64 = 1e-8;
const BOSON_GAMMA_TOL: f64 = 1e-8;
const ZERO_DELTA_TOL: f64 = 1e-8;
const ZERO_DELTA_GAMMA_TOL: f64 = 1e-8;
const OVERLAP_MODULUS_TOL: f64 = 1e-6;
const OVERLAP_PHASE_TOL: f64 = 1e-5;
const PROPAGATION_STEPS: usize = 10_000;
const PROPAGATOR_RUNTIME: Duration = Duration::from_secs(30);
const APPENDIX_A_TOL: f64 = 1e-10;
const ROTATING_FRAME_TOL: f64 = 1e-8;
const LAB_ANGLE_TOL: f64 = 1e-12;
const TRANSVERSE_TOL: f64 = 1e-12;
const STATIONARY_TOL: f64 = 1e-9;
const INTENSITY_TOL: f64 = 1e-6;

/// Criteria that cannot be met as stated; the analysis is in the README.
const EXPECTED_FAILURES: &[&str] = &["5b"];

struct Outcome {
    id: &'static str,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn opts() -> IntegrationOptions {
    IntegrationOptions::default()
}

fn su2_params() -> DriveParams {
    DriveParams::su2(1.0, 1.0, -2.0, 1.0)
}

fn su11_params() -> DriveParams {
    DriveParams::su11(1.0, 1.0, -10.0)
}

fn boson_params() -> DriveParams {
    DriveParams::boson(1.0, 0.5, 3.0)
}

fn criterion_1() -> Outcome {
    let clock = Instant::now();
    let m = Manifold::sphere(0.5).unwrap();
    let p = su2_params();
    let res = resonance_for(m, &p).unwrap();
    let traj = integrate(m, &res.initial_point().unwrap(), &p, res.period, &opts()).unwrap();
    let gamma = geometric_phase(&traj).unwrap();
    let elapsed = clock.elapsed();
    let closed = TAU * 0.5 * (1.0 - FRAC_PI_4.cos());
    let signed = orientation(&traj) * closed;
    let err = (gamma - signed).abs();
    let theta_err = (res.radius - FRAC_PI_4).abs();
    Outcome {
        id: "1",
        title: "su2 closed-form phase",
        passed: err < SU2_GAMMA_TOL && theta_err < 1e-15 && elapsed < SU2_RUNTIME,
        detail: format!(
            "gamma={gamma:.12} closed={signed:.12} |err|={err:.2e} theta0-pi/4={theta_err:.1e} runtime={:.3}s",
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_2() -> Outcome {
    let m = Manifold::sphere(0.5).unwrap();
    let theta0 = FRAC_PI_4;
    let (mut gammas, mut deltas) = (Vec::new(), Vec::new());
    for i in 0..20 {
        let b = -1.5 + 3.3 * i as f64 / 19.0;
        let b0 = 0.4 + 0.08 * i as f64;
        let mu = 1.0;
        let omega = -mu * (b0 / theta0.tan() + b);
        let p = DriveParams::su2(b, b0, omega, mu);
        let res = resonance_for(m, &p).unwrap();
        let traj = integrate(m, &res.initial_point().unwrap(), &p, res.period, &opts()).unwrap();
        gammas.push(geometric_phase(&traj).unwrap().abs());
        deltas.push(dynamical_phase(&traj, &p).unwrap());
    }
    let spread = |v: &[f64]| {
        v.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - v.iter().cloned().fold(f64::INFINITY, f64::min)
    };
    let (gs, ds) = (spread(&gammas), spread(&deltas));
    Outcome {
        id: "2",
        title: "invariant-surface constancy",
        passed: gs < SURFACE_GAMMA_SPREAD && ds > SURFACE_DELTA_SPREAD_MIN,
        detail: format!("20 triples at theta0=pi/4: gamma spread={gs:.2e} delta spread={ds:.3e}"),
    }
}

fn criterion_3() -> Outcome {
    let k = 0.25;
    let m = Manifold::pseudo_sphere(k).unwrap();
    let p = su11_params();
    let res = resonance_for(m, &p).unwrap();
    let tau_err = (res.radius - 0.5 * 3f64.ln()).abs();
    let start = res.initial_point().unwrap();
    let traj = integrate(m, &start, &p, res.period, &opts()).unwrap();
    let gamma = geometric_phase(&traj).unwrap();
    let closed = TAU * k * (res.radius.cosh() - 1.0);
    let err = (gamma.abs() - closed).abs();
    let n = auto_truncation(m, start.z().norm()).unwrap();
    let tail = coherent_tail(m, start.z(), n).unwrap();
    Outcome {
        id: "3",
        title: "su11 closed-form phase",
        passed: tau_err < 1e-12 && err < SU11_GAMMA_TOL && tail < TAIL_TOL,
        detail: format!(
            "tau0-ln3/2={tau_err:.1e} gamma={gamma:.12} closed={closed:.12} |err|={err:.2e} truncation={n} tail={tail:.1e}"
        ),
    }
}

fn criterion_4() -> Outcome {
    let m = Manifold::Plane;
    let p = boson_params();
    let surface = invariant_surface_boson(&BosonDrive { omega0: 1.0, e: 0.5, omega: 3.0 }).unwrap();
    let res = surface.resonance;
    let traj = integrate(m, &res.initial_point().unwrap(), &p, res.period, &opts()).unwrap();
    let gamma = geometric_phase(&traj).unwrap();
    let r0 = surface.r0_steady();
    let closed = TAU * r0 * r0;
    let err = (gamma.abs() - closed).abs();
    Outcome {
        id: "4",
        title: "boson steady state",
        passed: traj.closure_error < BOSON_CLOSURE_TOL && err < BOSON_GAMMA_TOL,
        detail: format!(
            "closure={:.1e} gamma={gamma:.12} 2*pi*r0^2={closed:.12} |err|={err:.2e} r0_steady={r0:.12} r0_printed={:.12}",
            traj.closure_error, surface.r0_printed
        ),
    }
}

fn criterion_5a() -> Outcome {
    let z = zero_delta_su2(1.0, 1.0, 1.0, 1.0, 0.5).unwrap();
    let m = Manifold::sphere(0.5).unwrap();
    let p = z.point.drive;
    let res = resonance_for(m, &p).unwrap();
    let traj = integrate(m, &res.initial_point().unwrap(), &p, res.period, &opts()).unwrap();
    let delta = dynamical_phase(&traj, &p).unwrap();
    let gamma = geometric_phase(&traj).unwrap();
    let err = (gamma.abs() - z.gamma_printed).abs();
    Outcome {
        id: "5a",
        title: "zero-delta point, su2",
        passed: delta.abs() < ZERO_DELTA_TOL && err < ZERO_DELTA_GAMMA_TOL,
        detail: format!("omega={:.12} |delta|={:.2e} gamma={gamma:.12} printed={:.12}", z.point.omega, delta.abs(), z.gamma_printed),
    }
}

fn su11_phases(p: DriveParams, k: f64) -> (f64, f64) {
    let m = Manifold::pseudo_sphere(k).unwrap();
    let res = resonance_for(m, &p).unwrap();
    let traj = integrate(m, &res.initial_point().unwrap(), &p, res.period, &opts()).unwrap();
    (geometric_phase(&traj).unwrap(), dynamical_phase(&traj, &p).unwrap())
}

fn criterion_5b() -> Outcome {
    let k = 0.25;
    let z = zero_delta_su11(1.0, -2.0, k, 1.0).unwrap();
    let (gamma, delta) = su11_phases(z.printed.drive, k);
    let err = (gamma.abs() - z.printed.gamma).abs();
    let (rg, rd) = su11_phases(z.rederived.drive, k);
    emit(&format!(
        "INFO 5b orbit-energy zero point: omega={:.12} |delta|={:.2e} gamma={rg:.12} printed-form gamma={:.12}",
        z.rederived.omega,
        rd.abs(),
        z.printed.gamma
    ));
    Outcome {
        id: "5b",
        title: "zero-delta point, su11",
        passed: delta.abs() < ZERO_DELTA_TOL && err < ZERO_DELTA_GAMMA_TOL,
        detail: format!(
            "omega={:.12} |delta|={:.6e} gamma={gamma:.12} printed={:.12}",
            z.printed.omega,
            delta.abs(),
            z.printed.gamma
        ),
    }
}

fn criterion_5c() -> Outcome {
    let z = zero_delta_boson(1.0, 0.5, 1.0, &opts()).unwrap();
    Outcome {
        id: "5c",
        title: "zero-delta root, boson",
        passed: z.delta_at_root.abs() < ZERO_DELTA_TOL,
        detail: format!(
            "omega_root={:.12} |delta|={:.2e} gamma={:.12} printed omega={:.6} printed gamma={:.12}",
            z.omega_root,
            z.delta_at_root.abs(),
            z.gamma,
            z.omega_printed,
            z.gamma_printed
        ),
    }
}

fn criterion_6() -> Outcome {
    let clock = Instant::now();
    let mut cases = Vec::new();
    for j in [0.5, 1.0, 5.0] {
        cases.push((Manifold::sphere(j).unwrap(), su2_params()));
    }
    for k in [0.25, 0.75] {
        cases.push((Manifold::pseudo_sphere(k).unwrap(), su11_params()));
    }
    let (mut worst_modulus, mut worst_phase) = (0.0f64, 0.0f64);
    for (m, p) in cases {
        let res = resonance_for(m, &p).unwrap();
        let z0 = res.initial_point().unwrap().z();
        let r = semiclassical_check(m, z0, &p, res.period, Truncation::Auto, PROPAGATION_STEPS).unwrap();
        worst_modulus = worst_modulus.max(1.0 - r.overlap_modulus);
        worst_phase = worst_phase.max(r.phase_mismatch.abs());
    }
    let elapsed = clock.elapsed();
    Outcome {
        id: "6",
        title: "semiclassical propagator identity",
        passed: worst_modulus < OVERLAP_MODULUS_TOL && worst_phase < OVERLAP_PHASE_TOL && elapsed < PROPAGATOR_RUNTIME,
        detail: format!(
            "5 cases, {PROPAGATION_STEPS} steps: max 1-|K|={worst_modulus:.2e} max phase mismatch={worst_phase:.2e} runtime={:.2}s",
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut elements, mut overlap) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let k = 0.1 + 1.9 * rng.gen::<f64>();
        let mut z = || Complex64::from_polar(0.9 * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>());
        let (z1, z2) = (z(), z());
        let closed = su11_matrix_elements(z1, z2, k).unwrap();
        let numeric = su11_matrix_elements_numeric(z1, z2, k, Truncation::Auto).unwrap();
        elements = elements.max(closed.max_difference(&numeric));

        let m = Manifold::pseudo_sphere(k).unwrap();
        let n = auto_truncation(m, 0.9).unwrap();
        let v1 = coherent_vector(m, z1, n).unwrap();
        let v2 = coherent_vector(m, z2, n).unwrap();
        let norm = ((1.0 - z1.norm_sqr()) * (1.0 - z2.norm_sqr())).powf(k);
        let formula = norm * (1.0 - z1.conj() * z2).powf(-2.0 * k);
        overlap = overlap.max((v1.inner(&v2) - formula).norm());
    }
    Outcome {
        id: "7",
        title: "su11 matrix elements and overlap",
        passed: elements < APPENDIX_A_TOL && overlap < APPENDIX_A_TOL,
        detail: format!("100 random (z1, z2, k), |z|<=0.9: max element diff={elements:.2e} max overlap diff={overlap:.2e}"),
    }
}

fn criterion_8() -> Outcome {
    let (b, b0, omega, mu, j, hbar) = (1.0, 1.0, -2.0, 1.0, 0.5, 1.0);
    let d = Su2Drive { b, b0, omega, mu };
    let res = invariant_surface_su2(&d, hbar).unwrap();
    let field = effective_field(&d, hbar);
    let len = field.iter().map(|x| x * x).sum::<f64>().sqrt();
    let s0 = SpinVector(field.map(|x| j * x / len));

    let lab_angle = (0..=40)
        .map(|i| rotating_frame_solution(&d, hbar, s0, 0.25 * res.period * i as f64).lab.theta())
        .map(|th| (th - res.radius).abs())
        .fold(0.0, f64::max);

    let m = Manifold::sphere(j).unwrap();
    let p = DriveParams::su2(b, b0, omega, mu).with_hbar(hbar);
    let traj = integrate(m, &res.initial_point().unwrap(), &p, 10.0 * res.period, &opts()).unwrap();
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

    let resonant = Su2Drive { b: 1.3, b0: 0.4, omega: -1.3 * 0.9 / hbar, mu: 0.9 };
    let longitudinal = effective_field(&resonant, hbar)[2].abs();
    Outcome {
        id: "8",
        title: "rotating frame",
        passed: constancy < ROTATING_FRAME_TOL && lab_angle < LAB_ANGLE_TOL && longitudinal < TRANSVERSE_TOL,
        detail: format!(
            "10 periods: max rotating-frame drift={constancy:.2e} lab angle err={lab_angle:.1e} longitudinal field at omega=-mu*B/hbar={longitudinal:.1e}"
        ),
    }
}

fn criterion_9() -> Outcome {
    let (mut worst_numeric, mut worst_exp, mut worst_exact) = (0.0f64, 0.0f64, 0.0f64);
    let mut all_single = true;
    let mut rows = 0;
    for twice_j in 1..=6u32 {
        let j = twice_j as f64 / 2.0;
        for step in 0..=twice_j {
            let m = -j + step as f64;
            let closed = stationary_quantization(j, m, 1.0, 1.0, 1.0).unwrap();
            let (numeric, sign) = stationary_numeric(j, m, 1.0, 1.0, 1.0, 1e-12).unwrap();
            worst_exact = worst_exact.max((closed.gamma - TAU * (j - m)).abs());
            worst_numeric = worst_numeric.max((sign * closed.gamma - numeric).abs());
            worst_exp = worst_exp.max((Complex64::from_polar(1.0, closed.gamma) - 1.0).norm());
            all_single &= closed.single_valued;
            rows += 1;
        }
    }
    Outcome {
        id: "9",
        title: "stationary quantization",
        passed: worst_exact == 0.0 && worst_numeric < STATIONARY_TOL && worst_exp < STATIONARY_TOL && all_single,
        detail: format!(
            "{rows} levels, J<=3: closed-form err={worst_exact:.1e} numeric err={worst_numeric:.2e} |exp(i gamma)-1|={worst_exp:.2e}"
        ),
    }
}

fn criterion_10() -> Outcome {
    let cases = [
        (Manifold::sphere(0.5).unwrap(), su2_params()),
        (Manifold::pseudo_sphere(0.25).unwrap(), su11_params()),
        (Manifold::Plane, boson_params()),
    ];
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for (m, p) in cases {
        let res = resonance_for(m, &p).unwrap();
        let z0 = res.initial_point().unwrap().z();
        let oracle = interference_predict(
            m,
            z0,
            &p,
            res.period,
            Via::Oracle { truncation: Truncation::Auto, steps: PROPAGATION_STEPS },
        )
        .unwrap();
        let (gamma, delta) = semiclassical_phase(m, &res, &p).unwrap();
        let predicted = interference_intensity((gamma - delta) / p.hbar);
        let diff = (oracle - predicted).abs();
        worst = worst.max(diff);
        parts.push(format!("{}={diff:.1e}", m.name()));
    }
    Outcome {
        id: "10",
        title: "interference intensity",
        passed: worst < INTENSITY_TOL,
        detail: format!("|oracle - cos^2(phi/2)|: {}", parts.join(" ")),
    }
}

fn criterion_11() -> Outcome {
    let checks = verify::run(Suite::All);
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let families = ["eom_gradient", "metric_hessian", "orientation_antisymmetry", "unitarity", "step_doubling_order"];
    let missing: Vec<&str> =
        families.iter().copied().filter(|f| !checks.iter().any(|c| c.name.starts_with(f))).collect();
    Outcome {
        id: "11",
        title: "property suites",
        passed: failed.is_empty() && missing.is_empty(),
        detail: format!("{} checks, failed={failed:?} missing families={missing:?}", checks.len()),
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: [fn() -> Outcome; 13] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5a,
        criterion_5b,
        criterion_5c,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let mut unexpected = Vec::new();
    for criterion in criteria {
        let o = criterion();
        let expected_fail = EXPECTED_FAILURES.contains(&o.id);
        let tag = match (o.passed, expected_fail) {
            (true, _) => "PASS",
            (false, true) => "FAIL (expected)",
            (false, false) => "FAIL",
        };
        emit(&format!("{tag} criterion {} {}: {}", o.id, o.title, o.detail));
        if o.passed == expected_fail {
            unexpected.push(o.id);
        }
    }
    assert!(unexpected.is_empty(), "criteria with an unexpected outcome: {unexpected:?}");
}
