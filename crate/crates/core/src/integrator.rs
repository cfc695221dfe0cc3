//! Adaptive Dormand–Prince 5(4) integrator with steps clipped to land on
//! requested output times.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepStats {
    pub steps: usize,
    pub rejected: usize,
    /// Largest max-norm local error estimate over accepted steps.
    pub max_local_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
}

impl Tolerance {
    pub fn uniform(tol: f64) -> Self {
        Tolerance { rtol: tol, atol: tol }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const MAX_STEPS: usize = 10_000_000;

/// Integrates y' = f(t, y) from `t0` and returns the state at each of `times`
/// (ascending, all ≥ t0). Candidate states for which `admissible` is false are
/// rejected and the step is halved.
pub fn integrate<const N: usize, F, G>(
    mut f: F,
    t0: f64,
    y0: [f64; N],
    times: &[f64],
    tol: Tolerance,
    admissible: G,
) -> Result<(Vec<[f64; N]>, StepStats)>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
    G: Fn(&[f64; N]) -> bool,
{
    let mut out = Vec::with_capacity(times.len());
    let mut stats = StepStats::default();
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let span = times.last().map_or(0.0, |&tf| tf - t0);
    let mut h = initial_step(&k1, &y, span, tol);

    for &target in times {
        if target < t {
            return Err(Error::IntegrationFailure {
                t,
                reason: format!("output time {target} precedes current time"),
            });
        }
        while t < target {
            if stats.steps + stats.rejected > MAX_STEPS {
                return Err(Error::IntegrationFailure {
                    t,
                    reason: "step budget exhausted".into(),
                });
            }
            let remaining = target - t;
            let last = h >= remaining;
            let step = if last { remaining } else { h };
            if step < 1e-14 * t.abs().max(1.0) && !last {
                return Err(Error::IntegrationFailure {
                    t,
                    reason: format!("step size underflow (h = {step:e})"),
                });
            }

            let mut k = [[0.0; N]; 7];
            k[0] = k1;
            let mut stage = [0.0; N];
            for s in 1..7 {
                for i in 0..N {
                    let mut acc = 0.0;
                    for (j, kj) in k.iter().enumerate().take(s) {
                        acc += A[s][j] * kj[i];
                    }
                    stage[i] = y[i] + step * acc;
                }
                k[s] = f(t + C[s] * step, &stage);
            }
            // the last stage is evaluated at the fifth-order solution
            let y_new = stage;

            let mut err_norm = 0.0;
            let mut err_max: f64 = 0.0;
            for i in 0..N {
                let mut e = 0.0;
                for (s, ks) in k.iter().enumerate() {
                    e += E[s] * ks[i];
                }
                e *= step;
                err_max = err_max.max(e.abs());
                let scale = tol.atol + tol.rtol * y[i].abs().max(y_new[i].abs());
                err_norm += (e / scale).powi(2);
            }
            err_norm = (err_norm / N as f64).sqrt();

            if !err_norm.is_finite() {
                stats.rejected += 1;
                h = step * 0.25;
                continue;
            }
            if err_norm <= 1.0 && admissible(&y_new) {
                t = if last { target } else { t + step };
                y = y_new;
                k1 = k[6];
                stats.steps += 1;
                stats.max_local_error = stats.max_local_error.max(err_max);
                let factor = if err_norm == 0.0 {
                    5.0
                } else {
                    (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
                };
                // a clipped final step says nothing about the natural step size
                if !last || factor < 1.0 {
                    h = step * factor;
                }
            } else {
                stats.rejected += 1;
                h = if err_norm <= 1.0 {
                    step * 0.5
                } else {
                    step * (0.9 * err_norm.powf(-0.2)).clamp(0.1, 0.9)
                };
            }
        }
        out.push(y);
    }
    Ok((out, stats))
}

fn initial_step<const N: usize>(dy: &[f64; N], y: &[f64; N], span: f64, tol: Tolerance) -> f64 {
    let mut d0: f64 = 0.0;
    let mut d1: f64 = 0.0;
    for i in 0..N {
        let scale = tol.atol + tol.rtol * y[i].abs();
        d0 = d0.max(y[i].abs() / scale);
        d1 = d1.max(dy[i].abs() / scale);
    }
    let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let cap = if span > 0.0 { span / 8.0 } else { 1.0 };
    h.min(cap).max(1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_hits_output_times() {
        let times: Vec<f64> = (0..=10).map(|i| i as f64 * 0.3).collect();
        let (ys, stats) = integrate(
            |_, y: &[f64; 1]| [-y[0]],
            0.0,
            [1.0],
            &times,
            Tolerance::uniform(1e-12),
            |_| true,
        )
        .unwrap();
        for (t, y) in times.iter().zip(&ys) {
            assert!((y[0] - (-t).exp()).abs() < 1e-11, "t={t}");
        }
        assert!(stats.steps >= 10);
    }

    #[test]
    fn harmonic_oscillator_one_period() {
        let tf = std::f64::consts::TAU;
        let (ys, _) = integrate(
            |_, y: &[f64; 2]| [y[1], -y[0]],
            0.0,
            [1.0, 0.0],
            &[tf],
            Tolerance::uniform(1e-12),
            |_| true,
        )
        .unwrap();
        assert!((ys[0][0] - 1.0).abs() < 1e-10 && ys[0][1].abs() < 1e-10);
    }

    #[test]
    fn admissibility_rejects_steps() {
        // y' = 1 with a cap of y < 0.5 can never reach t = 1
        let r = integrate(
            |_, _: &[f64; 1]| [1.0],
            0.0,
            [0.0],
            &[1.0],
            Tolerance::uniform(1e-10),
            |y| y[0] < 0.5,
        );
        assert!(matches!(r, Err(Error::IntegrationFailure { .. })));
    }

    #[test]
    fn output_at_start_time() {
        let (ys, stats) =
            integrate(|_, y: &[f64; 1]| [y[0]], 0.0, [2.0], &[0.0], Tolerance::uniform(1e-9), |_| true)
                .unwrap();
        assert_eq!(ys, vec![[2.0]]);
        assert_eq!(stats.steps, 0);
    }
}
