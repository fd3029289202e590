//! Neumann reference versus Dirichlet perturbation on the free half line.
//!
//! The eigenvalues are known exactly, `λₙ = ((n - 1/2)π/L)²` and
//! `μₙ = (nπ/L)²`, so no ODE is involved. The finite sums give
//! `x = (N(1/4 - a) - a²/2)/(N + a)`, whose limit is `1/4 - a`. Reading the
//! `a`-dependence as `-2a|ξ|` and the `a = 0` value as `ζ` gives `|ξ| = 1/2`
//! and `ζ = 1/4`. The Neumann reference levels sit at half-integers, so the
//! boundary term of the Dirichlet Riemann sum is absent and the `a = 0` value
//! is `ζ` rather than `ξ + ζ`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::KahanSum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NeumannDirichlet {
    pub n: usize,
    pub length: f64,
    pub delta_e_exact: f64,
    pub x_corollary: f64,
}

/// Exact `Σ (μₙ - λₙ)` and finite-size energy on the family `L = (N + a)π/√E`.
pub fn neumann_dirichlet_closed_form(energy: f64, a: f64, n: usize) -> Result<NeumannDirichlet> {
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::Domain(format!("Fermi energy must be positive; got {energy}")));
    }
    if n == 0 || !(n as f64 + a > 0.0) {
        return Err(Error::Domain(format!("need N >= 1 and N + a > 0; got N = {n}, a = {a}")));
    }
    let length = (n as f64 + a) * PI / energy.sqrt();
    let unit = (PI / length).powi(2);
    // n² - (n - 1/2)² is exact in binary floating point for n < 2^25
    let levels: KahanSum = (1..=n)
        .map(|i| {
            let i = i as f64;
            i * i - (i - 0.5) * (i - 0.5)
        })
        .collect();
    let delta_e_exact = unit * levels.total();
    let x_corollary = length / (energy.sqrt() * PI) * (delta_e_exact - energy / 2.0);
    Ok(NeumannDirichlet {
        n,
        length,
        delta_e_exact,
        x_corollary,
    })
}

/// `lim_{N→∞} x_corollary = 1/4 - a`.
pub fn neumann_dirichlet_limit(a: f64) -> f64 {
    0.25 - a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_case_by_hand() {
        let r = neumann_dirichlet_closed_form(1.0, 0.0, 10).unwrap();
        let l = 10.0 * PI;
        assert!((r.length - l).abs() < 1e-14);
        let expected = (PI / l).powi(2) * (55.0 - 2.5);
        assert!((r.delta_e_exact - expected).abs() < 1e-16);
    }

    #[test]
    fn finite_sum_formula() {
        for (e, a, n) in [(1.0, 0.0, 37), (4.0, 0.5, 200), (2.0, 1.0, 999)] {
            let r = neumann_dirichlet_closed_form(e, a, n).unwrap();
            let nf = n as f64;
            let x = (nf * (0.25 - a) - a * a / 2.0) / (nf + a);
            assert!((r.x_corollary - x).abs() < 1e-11, "{} vs {}", r.x_corollary, x);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(neumann_dirichlet_closed_form(0.0, 0.0, 1).is_err());
        assert!(neumann_dirichlet_closed_form(1.0, -2.0, 1).is_err());
        assert!(neumann_dirichlet_closed_form(1.0, 0.0, 0).is_err());
    }
}
