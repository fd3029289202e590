//! Dormand–Prince 5(4) embedded Runge–Kutta pair with PI step-size control.
//!
//! The integrator works on fixed-size states `[f64; N]` and advances over a
//! single smooth interval. Callers that know where the right-hand side is
//! discontinuous split the integration at those points themselves.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// Difference between the 5th- and embedded 4th-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

// PI controller constants (Hairer, Nørsett & Wanner).
const SAFETY: f64 = 0.9;
const BETA: f64 = 0.04;
const EXPO1: f64 = 0.2 - BETA * 0.75;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

/// Accumulated integrator diagnostics.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
    /// Sum over accepted steps of the largest absolute local error estimate.
    pub local_error: f64,
    /// Step size proposed after the last accepted step.
    pub next_step: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Dopri5 {
    pub fn new(tol: f64) -> Self {
        Self {
            rtol: tol,
            atol: tol,
            max_steps: 5_000_000,
        }
    }

    /// Advances `y` from `x0` to `x1` (`x1 > x0`). `stats.next_step`, when
    /// set, is used as the first trial step.
    pub fn integrate<const N: usize, F>(
        &self,
        mut f: F,
        x0: f64,
        x1: f64,
        y: &mut [f64; N],
        stats: &mut OdeStats,
    ) -> Result<()>
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        if !(x1 > x0) {
            return Ok(());
        }
        let span = x1 - x0;
        let mut x = x0;
        let mut k1 = f(x, y);
        let mut h = match stats.next_step {
            Some(h) if h.is_finite() && h > 0.0 => h.min(span),
            _ => self.initial_step(&mut f, x, y, &k1, span),
        };
        let mut fac_old = 1e-4_f64;
        let mut last_rejected = false;
        let mut steps = 0usize;

        loop {
            if steps >= self.max_steps {
                return Err(Error::Integration {
                    x,
                    reason: format!("step budget of {} exhausted", self.max_steps),
                });
            }
            steps += 1;

            let remaining = x1 - x;
            let last = h >= remaining * 0.999_999;
            if last {
                h = remaining;
            }
            if h <= 16.0 * f64::EPSILON * x.abs().max(span) {
                return Err(Error::Integration {
                    x,
                    reason: format!("step size underflow (h = {h:e})"),
                });
            }

            let (y_new, k7, err_vec) = self.step(&mut f, x, y, &k1, h);

            let mut norm = 0.0;
            let mut max_abs = 0.0_f64;
            for i in 0..N {
                let scale = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
                norm += (err_vec[i] / scale).powi(2);
                max_abs = max_abs.max(err_vec[i].abs());
            }
            let err = (norm / N as f64).sqrt();
            if !err.is_finite() {
                return Err(Error::Integration {
                    x,
                    reason: "non-finite error estimate".into(),
                });
            }

            let fac11 = err.powf(EXPO1);
            if err <= 1.0 {
                let mut fac = fac11 / fac_old.powf(BETA);
                fac = (fac / SAFETY).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
                let mut h_new = h / fac;
                if last_rejected {
                    h_new = h_new.min(h);
                }
                fac_old = err.max(1e-4);
                stats.accepted += 1;
                stats.local_error += max_abs;
                *y = y_new;
                k1 = k7;
                last_rejected = false;
                if last {
                    stats.next_step = Some(h_new);
                    return Ok(());
                }
                x += h;
                h = h_new;
            } else {
                stats.rejected += 1;
                last_rejected = true;
                h /= (fac11 / SAFETY).min(1.0 / FAC_MIN);
            }
        }
    }

    fn step<const N: usize, F>(
        &self,
        f: &mut F,
        x: f64,
        y: &[f64; N],
        k1: &[f64; N],
        h: f64,
    ) -> ([f64; N], [f64; N], [f64; N])
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        let mut tmp = [0.0; N];

        for i in 0..N {
            tmp[i] = y[i] + h * A21 * k1[i];
        }
        let k2 = f(x + C2 * h, &tmp);
        for i in 0..N {
            tmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        }
        let k3 = f(x + C3 * h, &tmp);
        for i in 0..N {
            tmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        let k4 = f(x + C4 * h, &tmp);
        for i in 0..N {
            tmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        let k5 = f(x + C5 * h, &tmp);
        for i in 0..N {
            tmp[i] = y[i]
                + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        let k6 = f(x + h, &tmp);
        let mut y_new = [0.0; N];
        for i in 0..N {
            y_new[i] = y[i]
                + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
        }
        let k7 = f(x + h, &y_new);
        let mut err = [0.0; N];
        for i in 0..N {
            err[i] = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        }
        (y_new, k7, err)
    }

    fn initial_step<const N: usize, F>(
        &self,
        f: &mut F,
        x: f64,
        y: &[f64; N],
        f0: &[f64; N],
        span: f64,
    ) -> f64
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        let scale = |i: usize| self.atol + self.rtol * y[i].abs();
        let rms = |v: &dyn Fn(usize) -> f64| {
            ((0..N).map(|i| v(i).powi(2)).sum::<f64>() / N as f64).sqrt()
        };
        let d0 = rms(&|i| y[i] / scale(i));
        let d1 = rms(&|i| f0[i] / scale(i));
        let h0 = if d0 < 1e-10 || d1 < 1e-10 {
            1e-6
        } else {
            0.01 * d0 / d1
        }
        .min(span);

        let mut y1 = [0.0; N];
        for i in 0..N {
            y1[i] = y[i] + h0 * f0[i];
        }
        let f1 = f(x + h0, &y1);
        let d2 = rms(&|i| (f1[i] - f0[i]) / scale(i)) / h0;
        let dmax = d1.max(d2);
        let h1 = if dmax <= 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / dmax).powf(0.2)
        };
        (100.0 * h0).min(h1).min(span)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_matches_closed_form() {
        let solver = Dopri5::new(1e-12);
        let mut y = [1.0];
        let mut stats = OdeStats::default();
        solver
            .integrate(|_, y: &[f64; 1]| [-y[0]], 0.0, 5.0, &mut y, &mut stats)
            .unwrap();
        assert!((y[0] - (-5.0f64).exp()).abs() < 1e-11);
        assert!(stats.accepted > 5);
    }

    #[test]
    fn harmonic_oscillator_conserves_phase() {
        let solver = Dopri5::new(1e-11);
        let mut y = [0.0, 1.0];
        let mut stats = OdeStats::default();
        let t = 20.0;
        solver
            .integrate(|_, y: &[f64; 2]| [y[1], -y[0]], 0.0, t, &mut y, &mut stats)
            .unwrap();
        assert!((y[0] - t.sin()).abs() < 1e-9);
        assert!((y[1] - t.cos()).abs() < 1e-9);
    }

    #[test]
    fn constant_rhs_is_exact() {
        let solver = Dopri5::new(1e-10);
        let mut y = [0.0];
        let mut stats = OdeStats::default();
        solver
            .integrate(|_, _: &[f64; 1]| [3.0], 0.0, 2.0, &mut y, &mut stats)
            .unwrap();
        assert!((y[0] - 6.0).abs() < 1e-13);
    }

    #[test]
    fn empty_interval_is_a_no_op() {
        let solver = Dopri5::new(1e-10);
        let mut y = [4.0];
        let mut stats = OdeStats::default();
        solver
            .integrate(|_, _: &[f64; 1]| [1.0], 1.0, 1.0, &mut y, &mut stats)
            .unwrap();
        assert_eq!(y[0], 4.0);
        assert_eq!(stats.accepted, 0);
    }

    #[test]
    fn budget_exhaustion_reports_position() {
        let solver = Dopri5 {
            max_steps: 3,
            ..Dopri5::new(1e-12)
        };
        let mut y = [0.0, 1.0];
        let mut stats = OdeStats::default();
        let err = solver
            .integrate(|_, y: &[f64; 2]| [y[1], -y[0]], 0.0, 100.0, &mut y, &mut stats)
            .unwrap_err();
        assert!(matches!(err, Error::Integration { .. }));
    }
}
