//! Riemann-sum versus integral residuals for a small catalog of test
//! functions, with and without the first Euler–Maclaurin correction.

use std::str::FromStr;

use crate::closed_form::square_well_phase_shift;
use crate::error::{Error, Result};
use crate::numerics::{integrate, KahanSum};

/// Test functions with known `∫f` on `[0, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EmFunction {
    /// `x^p`
    Monomial(u32),
    /// `sin(ωx)`
    Sine { omega: f64 },
    /// `x δ(x)` for the square barrier `height`, `width`; the integral is
    /// computed by adaptive quadrature.
    PhaseProduct { height: f64, width: f64 },
}

impl EmFunction {
    pub fn value(&self, x: f64) -> f64 {
        match *self {
            EmFunction::Monomial(p) => x.powi(p as i32),
            EmFunction::Sine { omega } => (omega * x).sin(),
            EmFunction::PhaseProduct { height, width } => {
                if x <= 0.0 {
                    0.0
                } else {
                    x * square_well_phase_shift(height, width, x)
                }
            }
        }
    }

    /// `∫₀ᵇ f`.
    pub fn integral(&self, b: f64) -> Result<f64> {
        Ok(match *self {
            EmFunction::Monomial(p) => b.powi(p as i32 + 1) / (p + 1) as f64,
            EmFunction::Sine { omega } => (1.0 - (omega * b).cos()) / omega,
            EmFunction::PhaseProduct { .. } => {
                integrate(|x| Ok(self.value(x)), 0.0, b, 1e-14)?.value
            }
        })
    }
}

impl FromStr for EmFunction {
    type Err = Error;

    /// Accepts `1`, `x`, `x^p`, `sin:<omega>` and `phase:<height>:<width>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("unknown test function descriptor `{s}`"));
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let s = s.trim();
        match s {
            "1" => return Ok(EmFunction::Monomial(0)),
            "x" => return Ok(EmFunction::Monomial(1)),
            _ => {}
        }
        if let Some(p) = s.strip_prefix("x^") {
            return p.trim().parse().map(EmFunction::Monomial).map_err(|_| bad());
        }
        if let Some(w) = s.strip_prefix("sin:") {
            let omega = num(w)?;
            if omega == 0.0 {
                return Err(bad());
            }
            return Ok(EmFunction::Sine { omega });
        }
        if let Some(rest) = s.strip_prefix("phase:") {
            let (h, w) = rest.split_once(':').ok_or_else(bad)?;
            return Ok(EmFunction::PhaseProduct {
                height: num(h)?,
                width: num(w)?,
            });
        }
        Err(bad())
    }
}

/// `(1/L) Σₙ₌₁ᴺ f(n/L) - ∫₀^{N/L} f`, minus `(1/2L) ∫₀^{N/L} f'` as well
/// when `order == 2`.
pub fn euler_maclaurin_residual(f: &EmFunction, n: usize, length: f64, order: u8) -> Result<f64> {
    if !(order == 1 || order == 2) {
        return Err(Error::Input(format!("order must be 1 or 2; got {order}")));
    }
    if n == 0 || !(length > 0.0) {
        return Err(Error::Domain(format!("need N >= 1 and L > 0; got N = {n}, L = {length}")));
    }
    let upper = n as f64 / length;
    let sum: KahanSum = (1..=n).map(|i| f.value(i as f64 / length)).collect();
    let mut residual = sum.total() / length - f.integral(upper)?;
    if order == 2 {
        residual -= (f.value(upper) - f.value(0.0)) / (2.0 * length);
    }
    Ok(residual)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_linear_are_exact_at_order_two() {
        for (n, l) in [(10, 7.0), (1000, 313.0), (5, 100.0)] {
            let r0 = euler_maclaurin_residual(&EmFunction::Monomial(0), n, l, 2).unwrap();
            let r1 = euler_maclaurin_residual(&EmFunction::Monomial(1), n, l, 2).unwrap();
            assert!(r0.abs() < 1e-13, "{r0}");
            assert!(r1.abs() < 1e-13, "{r1}");
        }
        let r = euler_maclaurin_residual(&EmFunction::Monomial(0), 17, 3.0, 1).unwrap();
        assert!(r.abs() < 1e-13);
    }

    #[test]
    fn square_residuals_match_exact_algebra() {
        // Σ n² = N(N+1)(2N+1)/6
        let (n, l) = (200usize, 100.0);
        let nf = n as f64;
        let r1 = euler_maclaurin_residual(&EmFunction::Monomial(2), n, l, 1).unwrap();
        let expected1 = (nf * nf / 2.0 + nf / 6.0) / l.powi(3);
        assert!((r1 - expected1).abs() < 1e-14);
        let r2 = euler_maclaurin_residual(&EmFunction::Monomial(2), n, l, 2).unwrap();
        assert!((r2 - nf / 6.0 / l.powi(3)).abs() < 1e-14);
    }

    #[test]
    fn descriptors() {
        assert_eq!("x^3".parse::<EmFunction>().unwrap(), EmFunction::Monomial(3));
        assert_eq!(
            "sin:2.5".parse::<EmFunction>().unwrap(),
            EmFunction::Sine { omega: 2.5 }
        );
        assert_eq!(
            "phase:1:1".parse::<EmFunction>().unwrap(),
            EmFunction::PhaseProduct {
                height: 1.0,
                width: 1.0
            }
        );
        assert!(matches!("cosh".parse::<EmFunction>(), Err(Error::Input(_))));
        assert!(euler_maclaurin_residual(&EmFunction::Monomial(1), 3, 1.0, 3).is_err());
    }

    #[test]
    fn phase_product_obeys_second_order_rate() {
        let f = EmFunction::PhaseProduct {
            height: 1.0,
            width: 1.0,
        };
        let r_a = euler_maclaurin_residual(&f, 100, 100.0, 2).unwrap().abs();
        let r_b = euler_maclaurin_residual(&f, 200, 200.0, 2).unwrap().abs();
        let slope = (r_b / r_a).log2();
        assert!((slope + 2.0).abs() < 0.2, "slope {slope}");
    }
}
