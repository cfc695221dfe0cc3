//! Variational equations of motion, trajectories, and the rotating-frame
//! picture of the spin resonance.
//!
//! Integration always runs in the complex chart, where the equations are
//! polynomial in z and have no coordinate poles:
//!
//! * Sphere: ż = (iμ/2ℏ)[B0 e^{−iωt} + 2Bz − B0 e^{iωt} z²]
//! * PseudoSphere: ż = −2i[ω0 z + κ(e^{iωt} + e^{−iωt} z²)]
//! * Plane: ż = −iω0 z − iE e^{−iωt}
//!
//! Each is iℏ g ż = ∂H/∂z* with g the Kähler metric.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::drive::{energy_gradient_conj, Drive, DriveParams, SignConvention, Su2Drive};
use crate::error::{Error, Result};
use crate::geometry::{
    chart_distance, complex_velocity, kahler_metric, Chart, ChartVelocity, Manifold, PhasePoint,
};
use crate::integrator::{self, StepStats, Tolerance};

/// Angle-chart equations of motion.
///
/// Fails with [`Error::ChartSingularity`] at a chart pole where the angular
/// rate is undefined (sin θ = 0 or τ = 0 or r = 0 with a nonzero transverse drive).
pub fn eom_rhs(
    manifold: Manifold,
    point: &PhasePoint,
    t: f64,
    p: &DriveParams,
) -> Result<ChartVelocity> {
    p.check_manifold(manifold)?;
    eom_rhs_chart(point.chart(), t, p)
}

/// [`eom_rhs`] on raw chart coordinates, which also covers θ = π on the Sphere.
pub fn eom_rhs_chart(chart: Chart, t: f64, p: &DriveParams) -> Result<ChartVelocity> {
    let hbar = p.hbar;
    match (chart, p.drive) {
        (Chart::Sphere { theta, phi }, Drive::Su2(d)) => {
            let arg = phi - d.omega * t;
            let sin_theta = theta.sin();
            let transverse = if d.b0 == 0.0 {
                0.0
            } else {
                if theta <= 0.0 || theta >= std::f64::consts::PI {
                    return Err(Error::ChartSingularity(format!(
                        "angle-chart equations are singular at θ = {theta}"
                    )));
                }
                d.b0 * theta.cos() / sin_theta * arg.cos()
            };
            Ok(ChartVelocity {
                radial: -(d.mu * d.b0 / hbar) * arg.sin(),
                angular: -(d.mu / hbar) * (transverse + d.b),
            })
        }
        (Chart::PseudoSphere { tau, phi }, Drive::Su11(d)) => {
            if tau == 0.0 && d.kappa != 0.0 {
                return Err(Error::ChartSingularity(
                    "angle-chart equations are singular at τ = 0".into(),
                ));
            }
            let coth = if d.kappa == 0.0 { 0.0 } else { 1.0 / tau.tanh() };
            Ok(match d.convention {
                SignConvention::Rederived => {
                    let arg = phi + d.omega * t;
                    ChartVelocity {
                        radial: 4.0 * d.kappa * arg.sin(),
                        angular: 2.0 * d.omega0 + 4.0 * d.kappa * coth * arg.cos(),
                    }
                }
                SignConvention::Paper => {
                    let arg = phi - d.omega * t;
                    ChartVelocity {
                        radial: 4.0 * d.kappa * arg.sin(),
                        angular: 2.0 * (d.omega0 + d.kappa * coth * arg.cos()),
                    }
                }
            })
        }
        (Chart::Plane { r, angle }, Drive::Boson(d)) => {
            let arg = angle + d.omega * t;
            if r == 0.0 && d.e != 0.0 {
                return Err(Error::ChartSingularity(
                    "angle-chart equations are singular at r = 0".into(),
                ));
            }
            let forcing = if d.e == 0.0 { 0.0 } else { d.e * arg.cos() / r };
            Ok(ChartVelocity {
                radial: -d.e * arg.sin(),
                angular: -d.omega0 - forcing,
            })
        }
        _ => Err(Error::Domain(format!(
            "chart {chart:?} cannot be driven by a {} drive",
            p.family()
        ))),
    }
}

/// Complex-chart equation of motion ż(z, t).
pub fn eom_rhs_complex(
    manifold: Manifold,
    z: Complex64,
    t: f64,
    p: &DriveParams,
) -> Result<Complex64> {
    p.check_manifold(manifold)?;
    manifold.check_z(z)?;
    if let Drive::Su11(d) = p.drive {
        if d.convention == SignConvention::Paper {
            // these angle equations have no complex-chart counterpart
            let point = PhasePoint::from_z(manifold, z)?;
            let v = eom_rhs_chart(point.chart(), t, p)?;
            return Ok(complex_velocity(&point, v));
        }
    }
    Ok(zdot(z, t, p))
}

fn zdot(z: Complex64, t: f64, p: &DriveParams) -> Complex64 {
    let i = Complex64::i();
    match p.drive {
        Drive::Su2(d) => {
            let rot = Complex64::from_polar(1.0, d.omega * t);
            i * (d.mu / (2.0 * p.hbar))
                * (d.b0 * rot.conj() + 2.0 * d.b * z - d.b0 * rot * z * z)
        }
        Drive::Su11(d) => {
            let rot = Complex64::from_polar(1.0, d.omega * t);
            -2.0 * i * (d.omega0 * z + d.kappa * (rot + rot.conj() * z * z))
        }
        Drive::Boson(d) => {
            -i * d.omega0 * z - i * d.e * Complex64::from_polar(1.0, -d.omega * t)
        }
    }
}

/// ż assembled from the metric form iℏ g ż = ∂H/∂z* with the analytic gradient.
pub fn eom_metric_form(
    manifold: Manifold,
    z: Complex64,
    t: f64,
    p: &DriveParams,
) -> Result<Complex64> {
    p.check_manifold(manifold)?;
    let g = kahler_metric(manifold, z)?;
    let grad = energy_gradient_conj(manifold, z, t, p);
    Ok(-Complex64::i() * grad / (p.hbar * g))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub point: PhasePoint,
    /// ż at this sample.
    pub velocity: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub manifold: Manifold,
    pub hbar: f64,
    pub samples: Vec<Sample>,
    pub period: f64,
    pub closed: bool,
    pub closure_error: f64,
    pub closure_tolerance: f64,
    pub stats: StepStats,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationOptions {
    /// Relative and absolute local error tolerance.
    pub tol: f64,
    pub samples_per_period: usize,
    pub closure_tol: f64,
    /// Closure period; defaults to the drive period, or the full span for a static drive.
    pub period: Option<f64>,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        IntegrationOptions {
            tol: 1e-11,
            samples_per_period: 1024,
            closure_tol: 1e-8,
            period: None,
        }
    }
}

impl IntegrationOptions {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_period(mut self, period: f64) -> Self {
        self.period = Some(period);
        self
    }
}

/// Integrates from `initial` at t = 0 to `t_final`, sampling uniformly.
pub fn integrate(
    manifold: Manifold,
    initial: &PhasePoint,
    p: &DriveParams,
    t_final: f64,
    opts: &IntegrationOptions,
) -> Result<Trajectory> {
    if !(t_final.is_finite() && t_final >= 0.0) {
        return Err(Error::Domain(format!("t_final = {t_final} must be finite and ≥ 0")));
    }
    let period = opts.period.or(p.period()).unwrap_or(t_final);
    let times = if t_final == 0.0 {
        vec![0.0]
    } else {
        let per = if period > 0.0 { t_final / period } else { 1.0 };
        let n = ((opts.samples_per_period as f64 * per).ceil() as usize).max(2);
        let mut times: Vec<f64> = (0..=n).map(|i| t_final * i as f64 / n as f64).collect();
        // make sure the closure time is sampled exactly
        if period > 0.0 && period < t_final && !times.contains(&period) {
            times.push(period);
            times.sort_by(f64::total_cmp);
        }
        times
    };
    integrate_at(manifold, initial, p, &times, &IntegrationOptions { period: Some(period), ..*opts })
}

/// Integrates from `initial` at t = `times[0]`, producing one sample per entry of `times`.
pub fn integrate_at(
    manifold: Manifold,
    initial: &PhasePoint,
    p: &DriveParams,
    times: &[f64],
    opts: &IntegrationOptions,
) -> Result<Trajectory> {
    p.validate()?;
    p.check_manifold(manifold)?;
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance must be positive, got {}", opts.tol)));
    }
    if times.is_empty() || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("sample times must be non-empty and strictly increasing".into()));
    }
    let t0 = times[0];
    let z0 = initial.z();
    manifold.check_z(z0)?;

    let mut failure = None;
    let rhs = |t: f64, y: &[f64; 2]| {
        let z = Complex64::new(y[0], y[1]);
        match eom_rhs_complex(manifold, z, t, p) {
            Ok(v) => [v.re, v.im],
            Err(e) => {
                failure.get_or_insert(e);
                [f64::NAN, f64::NAN]
            }
        }
    };
    let admissible = |y: &[f64; 2]| match manifold {
        Manifold::PseudoSphere { .. } => y[0] * y[0] + y[1] * y[1] < 1.0,
        _ => y[0].is_finite() && y[1].is_finite(),
    };
    let result = integrator::integrate(
        rhs,
        t0,
        [z0.re, z0.im],
        times,
        Tolerance::uniform(opts.tol),
        admissible,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let (states, stats) = result?;

    let mut samples = Vec::with_capacity(times.len());
    for (&t, y) in times.iter().zip(&states) {
        let z = Complex64::new(y[0], y[1]);
        let point = PhasePoint::from_z(manifold, z)?;
        let velocity = eom_rhs_complex(manifold, z, t, p)?;
        samples.push(Sample { t, point, velocity });
    }

    let span = times[times.len() - 1] - t0;
    let period = opts.period.or(p.period()).unwrap_or(span);
    let mut traj = Trajectory {
        manifold,
        hbar: p.hbar,
        samples,
        period,
        closed: false,
        closure_error: f64::NAN,
        closure_tolerance: opts.closure_tol,
        stats,
    };
    let closure_t = if period <= span { t0 + period } else { t0 + span };
    traj.closure_error = loop_closure(&traj, closure_t - t0)?;
    traj.closed = traj.closure_error < opts.closure_tol;
    Ok(traj)
}

impl Trajectory {
    pub fn start_time(&self) -> f64 {
        self.samples[0].t
    }

    pub fn end_time(&self) -> f64 {
        self.samples[self.samples.len() - 1].t
    }

    /// State at time `t` from the samples, by cubic Hermite interpolation on (z, ż).
    pub fn state_at(&self, t: f64) -> Result<Complex64> {
        let (start, end) = (self.start_time(), self.end_time());
        let slack = 1e-12 * (end - start).abs().max(1.0);
        if t < start - slack || t > end + slack {
            return Err(Error::OutOfSpan { t, start, end });
        }
        let idx = self.samples.partition_point(|s| s.t < t);
        if let Some(s) = self.samples.get(idx).filter(|s| (s.t - t).abs() <= slack) {
            return Ok(s.point.z());
        }
        if idx > 0 && (self.samples[idx - 1].t - t).abs() <= slack {
            return Ok(self.samples[idx - 1].point.z());
        }
        let (a, b) = (&self.samples[idx - 1], &self.samples[idx]);
        let h = b.t - a.t;
        let s = (t - a.t) / h;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        Ok(a.point.z() * h00 + a.velocity * (h10 * h) + b.point.z() * h01 + b.velocity * (h11 * h))
    }

    /// The same loop traversed backwards in time over the same interval.
    pub fn reversed(&self) -> Result<Trajectory> {
        let (start, end) = (self.start_time(), self.end_time());
        let samples = self
            .samples
            .iter()
            .rev()
            .map(|s| Sample {
                t: start + end - s.t,
                point: s.point,
                velocity: -s.velocity,
            })
            .collect();
        Ok(Trajectory { samples, ..self.clone() })
    }

    /// Relabels sample i with parameter `new_times[i]`, where the old time is
    /// a smooth monotone function of the new parameter with derivative `rates[i]`.
    pub fn reparametrized(&self, new_times: &[f64], rates: &[f64]) -> Result<Trajectory> {
        if new_times.len() != self.samples.len() || rates.len() != self.samples.len() {
            return Err(Error::Domain("reparametrization must supply one time and rate per sample".into()));
        }
        if new_times.windows(2).any(|w| w[1] <= w[0]) || rates.iter().any(|&r| r <= 0.0) {
            return Err(Error::Domain("reparametrization must be strictly increasing".into()));
        }
        let samples = self
            .samples
            .iter()
            .zip(new_times.iter().zip(rates))
            .map(|(s, (&t, &rate))| Sample {
                t,
                point: s.point,
                velocity: s.velocity * rate,
            })
            .collect();
        let period = new_times[new_times.len() - 1] - new_times[0];
        Ok(Trajectory { samples, period, ..self.clone() })
    }
}

/// Chart distance between the state at the start of `traj` and the state a time `period` later.
pub fn loop_closure(traj: &Trajectory, period: f64) -> Result<f64> {
    let start = traj.start_time();
    let z_end = traj.state_at(start + period)?;
    Ok(chart_distance(traj.manifold, traj.samples[0].point.z(), z_end))
}

/// A classical spin vector, |S| = J.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinVector(pub [f64; 3]);

impl SpinVector {
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Polar angle θ in the convention S = J(sin θ cos φ, sin θ sin φ, −cos θ).
    pub fn theta(&self) -> f64 {
        let [x, y, z] = self.0;
        x.hypot(y).atan2(-z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatingFrameState {
    pub lab: SpinVector,
    pub rotating: SpinVector,
    pub effective_field: [f64; 3],
}

/// B'' = (B0, 0, B + ℏω/μ), the static field seen in the frame co-rotating with the drive.
pub fn effective_field(d: &Su2Drive, hbar: f64) -> [f64; 3] {
    [d.b0, 0.0, d.b + hbar * d.omega / d.mu]
}

/// Solves dS′/dt = (μ/ℏ) S′ × B'' in the rotating frame and rotates back by ωt about ẑ.
pub fn rotating_frame_solution(
    d: &Su2Drive,
    hbar: f64,
    s0: SpinVector,
    t: f64,
) -> RotatingFrameState {
    let field = effective_field(d, hbar);
    let strength = field.iter().map(|c| c * c).sum::<f64>().sqrt();
    let rotating = if strength == 0.0 {
        s0
    } else {
        let n = field.map(|c| c / strength);
        // precession about n with angular velocity −(μ/ℏ)|B''|
        let angle = -(d.mu / hbar) * strength * t;
        SpinVector(rotate(s0.0, n, angle))
    };
    let lab = SpinVector(rotate(rotating.0, [0.0, 0.0, 1.0], d.omega * t));
    RotatingFrameState {
        lab,
        rotating,
        effective_field: field,
    }
}

fn rotate(v: [f64; 3], n: [f64; 3], angle: f64) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    let dot = n[0] * v[0] + n[1] * v[1] + n[2] * v[2];
    let cross = [
        n[1] * v[2] - n[2] * v[1],
        n[2] * v[0] - n[0] * v[2],
        n[0] * v[1] - n[1] * v[0],
    ];
    std::array::from_fn(|i| v[i] * c + cross[i] * s + n[i] * dot * (1.0 - c))
}

/// A sample of an angle-chart trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartSample {
    pub t: f64,
    pub chart: Chart,
    pub velocity: ChartVelocity,
}

/// Integrates the angle-chart equations directly. Only usable away from
/// singular poles; the angle is carried unwrapped and wrapped on output.
pub fn integrate_chart(
    chart0: Chart,
    p: &DriveParams,
    times: &[f64],
    tol: f64,
) -> Result<Vec<ChartSample>> {
    let make = |r: f64, a: f64| match chart0 {
        Chart::Sphere { .. } => Chart::Sphere { theta: r, phi: a.rem_euclid(TAU) },
        Chart::PseudoSphere { .. } => Chart::PseudoSphere { tau: r, phi: a.rem_euclid(TAU) },
        Chart::Plane { .. } => Chart::Plane { r, angle: a.rem_euclid(TAU) },
    };
    eom_rhs_chart(chart0, times[0], p)?;
    let mut failure = None;
    let rhs = |t: f64, y: &[f64; 2]| match eom_rhs_chart(make(y[0], y[1]), t, p) {
        Ok(v) => [v.radial, v.angular],
        Err(e) => {
            failure.get_or_insert(e);
            [f64::NAN, f64::NAN]
        }
    };
    let result = integrator::integrate(
        rhs,
        times[0],
        [chart0.radius(), chart0.angle()],
        times,
        Tolerance::uniform(tol),
        |y| y[0].is_finite(),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let (states, _) = result?;
    times
        .iter()
        .zip(states)
        .map(|(&t, y)| {
            let chart = make(y[0], y[1]);
            Ok(ChartSample { t, chart, velocity: eom_rhs_chart(chart, t, p)? })
        })
        .collect()
}
