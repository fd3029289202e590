//! Dirichlet eigenvalues on `(0, L)` for the free and perturbed operators.
//!
//! The n-th perturbed eigenvalue `μₙ = k²` is the unique `k > 0` with
//! `θ_k(L) = nπ`; `k ↦ θ_k(L)` is strictly increasing, so a bracketed root
//! finder always converges. Once `L` covers the support of the potential the
//! condition collapses to `kL + δ(k) = nπ`, whose cost does not grow with `L`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{find_root, Root};
use crate::potentials::Potential;
use crate::variable_phase::{check_tolerance, integrate_prufer, PhaseShifter};
use crate::Tolerances;

const MAX_DOUBLINGS: u32 = 64;

/// A perturbed eigenvalue with its quantization residual in angle units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub n: usize,
    pub mu: f64,
    pub k: f64,
    /// `θ_k(L) - nπ` at the returned `k`.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub n: usize,
    pub lambda: f64,
    pub mu: f64,
    pub k_mu: f64,
    pub residual: f64,
}

/// Aligned free and perturbed spectra on one interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumPair {
    pub length: f64,
    pub entries: Vec<SpectrumEntry>,
}

fn check_index_and_length(n: usize, length: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("eigenvalue index starts at 1".into()));
    }
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::Domain(format!("interval length must be positive; got {length}")));
    }
    Ok(())
}

/// `k_n = nπ/L`, the free Dirichlet wavenumber.
#[inline]
pub fn free_wavenumber(n: usize, length: f64) -> f64 {
    n as f64 * PI / length
}

/// `λₙ = (nπ/L)²`.
pub fn free_eigenvalue(n: usize, length: f64) -> Result<f64> {
    check_index_and_length(n, length)?;
    let k = free_wavenumber(n, length);
    Ok(k * k)
}

/// Brackets the root of the increasing function `f` starting from
/// `[nπ/L, nπ/L + m0/(nπ) + π/L]` and solves it.
fn solve_quantization<F>(pot: &Potential, n: usize, length: f64, k_tol: f64, mut f: F) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    let lo = free_wavenumber(n, length);
    // δ ≤ 0 puts the root at or above nπ/L; a non-negative value there is
    // round-off around an unshifted level.
    let f_lo = f(lo)?;
    if f_lo >= 0.0 {
        return Ok(Root {
            x: lo,
            fx: f_lo,
            iterations: 0,
        });
    }
    let mut width = pot.moments().m0 / (n as f64 * PI) + PI / length;
    let mut hi = lo + width;
    let mut doublings = 0;
    while f(hi)? < 0.0 {
        if doublings == MAX_DOUBLINGS {
            return Err(Error::Bracket {
                lo,
                hi,
                doublings,
            });
        }
        width *= 2.0;
        hi = lo + width;
        doublings += 1;
    }
    find_root(&mut f, lo, hi, k_tol)
}

/// Shooting: re-integrates the Prüfer system over `[0, L]` at every iterate.
pub fn perturbed_eigenvalue(
    pot: &Potential,
    n: usize,
    length: f64,
    tol: &Tolerances,
) -> Result<Eigenvalue> {
    check_index_and_length(n, length)?;
    tol.validate()?;
    let target = n as f64 * PI;
    let root = solve_quantization(pot, n, length, tol.k, |k| {
        Ok(integrate_prufer(pot, k, length, tol.ode)?.theta - target)
    })?;
    Ok(Eigenvalue {
        n,
        mu: root.x * root.x,
        k: root.x,
        residual: root.fx,
    })
}

/// Solves `kL + δ(k) = nπ`; requires `L >= support_radius`.
pub fn perturbed_eigenvalue_quantized(
    shifter: &PhaseShifter<'_>,
    n: usize,
    length: f64,
    k_tol: f64,
) -> Result<Eigenvalue> {
    check_index_and_length(n, length)?;
    check_tolerance("k_tol", k_tol)?;
    let pot = shifter.potential();
    if length < pot.support_radius() {
        return Err(Error::Precondition(format!(
            "quantized eigenvalues need L >= support radius {}; got L = {length}",
            pot.support_radius()
        )));
    }
    let target = n as f64 * PI;
    let root = solve_quantization(pot, n, length, k_tol, |k| {
        Ok(k * length + shifter.delta(k)? - target)
    })?;
    Ok(Eigenvalue {
        n,
        mu: root.x * root.x,
        k: root.x,
        residual: root.fx,
    })
}

/// One-shot wrapper around [`perturbed_eigenvalue_quantized`].
pub fn quantized_eigenvalue(
    pot: &Potential,
    n: usize,
    length: f64,
    tol: &Tolerances,
) -> Result<Eigenvalue> {
    tol.validate()?;
    let shifter = PhaseShifter::new(pot, tol.ode)?;
    perturbed_eigenvalue_quantized(&shifter, n, length, tol.k)
}

/// `λₙ` and `μₙ` for `n = 1..=n_max`, using the quantized path whenever
/// `L` covers the support.
pub fn spectrum(pot: &Potential, length: f64, n_max: usize, tol: &Tolerances) -> Result<SpectrumPair> {
    check_index_and_length(n_max, length)?;
    tol.validate()?;
    let shifter = PhaseShifter::new(pot, tol.ode)?;
    let quantized = length >= pot.support_radius();
    let entries = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let ev = if quantized {
                perturbed_eigenvalue_quantized(&shifter, n, length, tol.k)?
            } else {
                perturbed_eigenvalue(pot, n, length, tol)?
            };
            Ok(SpectrumEntry {
                n,
                lambda: free_eigenvalue(n, length)?,
                mu: ev.mu,
                k_mu: ev.k,
                residual: ev.residual,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumPair { length, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_eigenvalue_examples() {
        assert!((free_eigenvalue(1, PI).unwrap() - 1.0).abs() < 1e-15);
        assert!((free_eigenvalue(3, PI).unwrap() - 9.0).abs() < 1e-14);
        assert!((free_eigenvalue(2, 2.0 * PI).unwrap() - 1.0).abs() < 1e-15);
        assert!(free_eigenvalue(0, 1.0).is_err());
        assert!(free_eigenvalue(1, 0.0).is_err());
    }

    #[test]
    fn zero_potential_reproduces_free_spectrum() {
        let tol = Tolerances::default();
        let ev = perturbed_eigenvalue(&Potential::zero(), 5, 10.0, &tol).unwrap();
        assert!((ev.mu - (PI / 2.0).powi(2)).abs() < 1e-14);
        let q = quantized_eigenvalue(&Potential::zero(), 7, 100.0, &tol).unwrap();
        assert_eq!(q.mu, free_eigenvalue(7, 100.0).unwrap());
        let s = spectrum(&Potential::zero(), PI, 3, &tol).unwrap();
        let mus: Vec<f64> = s.entries.iter().map(|e| e.mu).collect();
        for (m, e) in mus.iter().zip([1.0, 4.0, 9.0]) {
            assert!((m - e).abs() < 1e-13);
        }
    }

    #[test]
    fn quantized_path_requires_covered_support() {
        let w = Potential::square_well(1.0, 2.0).unwrap();
        let err = quantized_eigenvalue(&w, 1, 1.5, &Tolerances::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn short_interval_uses_shooting() {
        let w = Potential::square_well(1.0, 2.0).unwrap();
        let tol = Tolerances::default();
        let s = spectrum(&w, 1.5, 3, &tol).unwrap();
        // the whole interval sits inside the barrier: μ = λ + 1
        for e in &s.entries {
            assert!((e.mu - e.lambda - 1.0).abs() < 1e-8, "{e:?}");
        }
    }

    #[test]
    fn scaling_covariance_for_free_spectrum() {
        let tol = Tolerances::default();
        let a = spectrum(&Potential::zero(), 3.0, 10, &tol).unwrap();
        let b = spectrum(&Potential::zero(), 6.0, 10, &tol).unwrap();
        for (x, y) in a.entries.iter().zip(&b.entries) {
            assert_eq!(y.mu, x.mu / 4.0);
        }
    }
}
