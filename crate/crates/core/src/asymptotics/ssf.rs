//! Finite-volume spectral shift function `ξ_L(E) = #{λₙ ≤ E} - #{μₙ ≤ E}`.

use rayon::prelude::*;

use crate::eigensolver::{free_eigenvalue, free_wavenumber, perturbed_eigenvalue_quantized};
use crate::error::{Error, Result};
use crate::numerics::KahanSum;
use crate::variable_phase::PhaseShifter;

fn free_levels_below(length: f64, energy: f64) -> usize {
    let mut n = (length * energy.sqrt() / std::f64::consts::PI).floor() as usize;
    while n > 0 && free_wavenumber(n, length).powi(2) > energy {
        n -= 1;
    }
    while free_wavenumber(n + 1, length).powi(2) <= energy {
        n += 1;
    }
    n
}

fn perturbed_levels(shifter: &PhaseShifter<'_>, length: f64, count: usize, k_tol: f64) -> Result<Vec<f64>> {
    (1..=count)
        .into_par_iter()
        .map(|n| perturbed_eigenvalue_quantized(shifter, n, length, k_tol).map(|e| e.mu))
        .collect()
}

fn check(length: f64, energy: f64) -> Result<()> {
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::Domain(format!("energy must be positive; got {energy}")));
    }
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::Domain(format!("length must be positive; got {length}")));
    }
    Ok(())
}

/// `ξ_L(E)`. Since `μₙ >= λₙ`, only levels with `λₙ <= E` can contribute.
pub fn finite_volume_ssf(shifter: &PhaseShifter<'_>, length: f64, energy: f64, k_tol: f64) -> Result<i64> {
    check(length, energy)?;
    let count = free_levels_below(length, energy);
    let mus = perturbed_levels(shifter, length, count, k_tol)?;
    let below = mus.iter().filter(|&&m| m <= energy).count();
    Ok(count as i64 - below as i64)
}

/// `∫₀^E ξ_L = Σₙ (min(μₙ, E) - λₙ)` over the levels with `λₙ <= E`.
pub fn integrated_finite_volume_ssf(
    shifter: &PhaseShifter<'_>,
    length: f64,
    energy: f64,
    k_tol: f64,
) -> Result<f64> {
    check(length, energy)?;
    let count = free_levels_below(length, energy);
    let mus = perturbed_levels(shifter, length, count, k_tol)?;
    let mut total = KahanSum::new();
    for (i, mu) in mus.into_iter().enumerate() {
        total.add(mu.min(energy) - free_eigenvalue(i + 1, length)?);
    }
    Ok(total.total())
}
