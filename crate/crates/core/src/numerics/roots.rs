//! Bracketed root finding for monotone functions: Illinois-modified regula
//! falsi with a bisection fallback whenever the bracket stops shrinking.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

const MAX_ITERATIONS: usize = 400;

/// Finds a root of `f` in `[lo, hi]` given `f(lo) <= 0 <= f(hi)` (or the
/// reverse). Stops once the bracket is narrower than `x_tol` and returns
/// the endpoint with the smaller residual.
pub fn find_root<F>(mut f: F, mut lo: f64, mut hi: f64, x_tol: f64) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut f_lo = f(lo)?;
    if f_lo == 0.0 {
        return Ok(Root {
            x: lo,
            fx: 0.0,
            iterations: 0,
        });
    }
    let mut f_hi = f(hi)?;
    if f_hi == 0.0 {
        return Ok(Root {
            x: hi,
            fx: 0.0,
            iterations: 0,
        });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Input(format!(
            "no sign change on [{lo}, {hi}]: f = ({f_lo:e}, {f_hi:e})"
        )));
    }

    // Illinois weights applied to the retained endpoint.
    let mut w_lo = 1.0;
    let mut w_hi = 1.0;
    let mut last_side = 0i8;
    let mut width_two_ago = f64::INFINITY;
    let mut width_prev = hi - lo;

    for iteration in 1..=MAX_ITERATIONS {
        if hi - lo <= x_tol {
            let (x, fx) = if f_lo.abs() <= f_hi.abs() {
                (lo, f_lo)
            } else {
                (hi, f_hi)
            };
            return Ok(Root {
                x,
                fx,
                iterations: iteration - 1,
            });
        }

        let a = w_lo * f_lo;
        let b = w_hi * f_hi;
        let mut x = (lo * b - hi * a) / (b - a);
        let stalled = hi - lo > 0.5 * width_two_ago;
        if !(x > lo && x < hi) || stalled {
            x = 0.5 * (lo + hi);
        }
        if x <= lo || x >= hi {
            // Bracket is at floating-point resolution.
            let (x, fx) = if f_lo.abs() <= f_hi.abs() {
                (lo, f_lo)
            } else {
                (hi, f_hi)
            };
            return Ok(Root { x, fx, iterations: iteration });
        }

        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(Root {
                x,
                fx,
                iterations: iteration,
            });
        }

        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
            w_lo = 1.0;
            if last_side == 1 {
                w_hi *= 0.5;
            }
            last_side = 1;
        } else {
            hi = x;
            f_hi = fx;
            w_hi = 1.0;
            if last_side == -1 {
                w_lo *= 0.5;
            }
            last_side = -1;
        }
        width_two_ago = width_prev;
        width_prev = hi - lo;
    }

    Err(Error::RootNotConverged {
        lo,
        hi,
        iterations: MAX_ITERATIONS,
    })
}
