//! Ground-state energy differences of the non-interacting Fermi gases and
//! their large-`L` expansion.
//!
//! For `N` fermions on `(0, L)` the energy difference is `Σₙ₌₁ᴺ (μₙ - λₙ)`.
//! Along a family `(N + a)/L = √E/π` it behaves as
//! `∫₀^E ξ + (√E π / L) x_FS + o(1/L)` with `x_FS = (1 - 2a) ξ(E) + ζ(E)`;
//! measured against the moving upper limit `(Nπ/L)²` the coefficient is
//! `ξ(E) + ζ(E)` for every `a`.

mod euler_maclaurin;
mod extrapolate;
mod neumann_dirichlet;
mod ssf;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

pub use euler_maclaurin::{euler_maclaurin_residual, EmFunction};
pub use extrapolate::{extrapolate_limit, Extrapolation, LimitModel};
pub use neumann_dirichlet::{neumann_dirichlet_closed_form, neumann_dirichlet_limit, NeumannDirichlet};
pub use ssf::{finite_volume_ssf, integrated_finite_volume_ssf};

use crate::eigensolver::{free_wavenumber, perturbed_eigenvalue_quantized};
use crate::error::{Error, Result};
use crate::numerics::KahanSum;
use crate::potentials::Potential;
use crate::scattering::{fermi_point_with, fumi_integral_with, FermiPoint};
use crate::variable_phase::PhaseShifter;
use crate::Tolerances;

/// One `(N, L)` point; `offset` is `a = L√E/π - N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyPoint {
    pub n: usize,
    pub length: f64,
    pub offset: f64,
}

/// A sequence of `(N, L)` at fixed Fermi energy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThermoFamily {
    pub energy: f64,
    pub points: Vec<FamilyPoint>,
    /// `Some(a)` for a family with `(N + a)/L = √E/π` exactly; `None` when
    /// the lengths were supplied explicitly.
    pub offset: Option<f64>,
}

impl ThermoFamily {
    /// `L = (N + a)π/√E` for each `N`, which must be strictly increasing.
    pub fn new(energy: f64, a: f64, counts: &[usize]) -> Result<Self> {
        check_energy(energy)?;
        if !a.is_finite() {
            return Err(Error::Config(format!("offset a must be finite; got {a}")));
        }
        check_counts(counts)?;
        let points = counts
            .iter()
            .map(|&n| {
                let shifted = n as f64 + a;
                if !(shifted > 0.0) {
                    return Err(Error::Config(format!("N + a must be positive; got N = {n}, a = {a}")));
                }
                Ok(FamilyPoint {
                    n,
                    length: shifted * PI / energy.sqrt(),
                    offset: a,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ThermoFamily {
            energy,
            points,
            offset: Some(a),
        })
    }

    /// Explicit `(N, L)` pairs, e.g. lengths moved off a family.
    pub fn with_lengths(energy: f64, pairs: &[(usize, f64)]) -> Result<Self> {
        check_energy(energy)?;
        let counts: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        check_counts(&counts)?;
        let points = pairs
            .iter()
            .map(|&(n, length)| {
                if !(length > 0.0 && length.is_finite()) {
                    return Err(Error::Config(format!("L must be positive; got {length}")));
                }
                Ok(FamilyPoint {
                    n,
                    length,
                    offset: length * energy.sqrt() / PI - n as f64,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ThermoFamily {
            energy,
            points,
            offset: None,
        })
    }
}

fn check_energy(energy: f64) -> Result<()> {
    if energy > 0.0 && energy.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("Fermi energy must be positive; got {energy}")))
    }
}

fn check_counts(counts: &[usize]) -> Result<()> {
    if counts.is_empty() {
        return Err(Error::Config("particle-count list is empty".into()));
    }
    if counts[0] == 0 {
        return Err(Error::Config("particle counts start at 1".into()));
    }
    if let Some(w) = counts.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::Config(format!(
            "particle counts must be strictly increasing; {} is followed by {}",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// `Σₙ₌₁ᴺ (μₙ - λₙ)` with compensated summation, via the quantized solver.
pub fn energy_difference_with(shifter: &PhaseShifter<'_>, n: usize, length: f64, k_tol: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("particle count starts at 1".into()));
    }
    let gaps = (1..=n)
        .into_par_iter()
        .map(|i| {
            let ev = perturbed_eigenvalue_quantized(shifter, i, length, k_tol)?;
            let k0 = free_wavenumber(i, length);
            Ok((ev.k - k0) * (ev.k + k0))
        })
        .collect::<Result<Vec<f64>>>()?;
    let sum: KahanSum = gaps.into_iter().collect();
    Ok(sum.total())
}

pub fn energy_difference(pot: &Potential, n: usize, length: f64, tol: &Tolerances) -> Result<f64> {
    tol.validate()?;
    let shifter = PhaseShifter::new(pot, tol.ode)?;
    energy_difference_with(&shifter, n, length, tol.k)
}

/// Terms of the large-`L` expansion at one `(N, L)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoremExpansion {
    /// `-(1/π) ∫₀^{(Nπ/L)²} δ(√x) dx`
    pub leading_moving: f64,
    /// `∫₀^E ξ`
    pub leading_fumi: f64,
    /// `(√E/L)(-δ(√E) + δ(√E)²/π)`
    pub correction: f64,
}

pub fn theorem_expansion_with(
    shifter: &PhaseShifter<'_>,
    n: usize,
    length: f64,
    energy: f64,
    quad_tol: f64,
) -> Result<TheoremExpansion> {
    let moving = free_wavenumber(n, length).powi(2);
    let fermi = fermi_point_with(shifter, energy)?;
    Ok(TheoremExpansion {
        leading_moving: fumi_integral_with(shifter, moving, quad_tol)?,
        leading_fumi: fumi_integral_with(shifter, energy, quad_tol)?,
        correction: energy.sqrt() / length * (-fermi.delta + fermi.delta * fermi.delta / PI),
    })
}

pub fn theorem_expansion(
    pot: &Potential,
    n: usize,
    length: f64,
    energy: f64,
    tol: &Tolerances,
) -> Result<TheoremExpansion> {
    tol.validate()?;
    let shifter = PhaseShifter::new(pot, tol.ode)?;
    theorem_expansion_with(&shifter, n, length, energy, tol.quad)
}

/// One data point of a finite-size scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiniteSizeRecord {
    pub n: usize,
    pub length: f64,
    pub a: f64,
    pub energy: f64,
    pub delta_e_exact: f64,
    pub leading_moving: f64,
    pub leading_fumi: f64,
    /// `(L/(√E π)) (ΔE - leading_moving)`, tends to `ξ + ζ`.
    pub x_theorem: f64,
    /// `(L/(√E π)) (ΔE - leading_fumi)`, tends to `(1 - 2a) ξ + ζ`.
    pub x_corollary: f64,
}

fn record(
    shifter: &PhaseShifter<'_>,
    point: &FamilyPoint,
    energy: f64,
    leading_fumi: f64,
    tol: &Tolerances,
) -> Result<FiniteSizeRecord> {
    let delta_e_exact = energy_difference_with(shifter, point.n, point.length, tol.k)?;
    let moving = free_wavenumber(point.n, point.length).powi(2);
    let leading_moving = fumi_integral_with(shifter, moving, tol.quad)?;
    let scale = point.length / (energy.sqrt() * PI);
    Ok(FiniteSizeRecord {
        n: point.n,
        length: point.length,
        a: point.offset,
        energy,
        delta_e_exact,
        leading_moving,
        leading_fumi,
        x_theorem: scale * (delta_e_exact - leading_moving),
        x_corollary: scale * (delta_e_exact - leading_fumi),
    })
}

pub fn finite_size_scan_with(
    shifter: &PhaseShifter<'_>,
    family: &ThermoFamily,
    tol: &Tolerances,
) -> Result<Vec<FiniteSizeRecord>> {
    tol.validate()?;
    let leading_fumi = fumi_integral_with(shifter, family.energy, tol.quad)?;
    family
        .points
        .iter()
        .map(|p| record(shifter, p, family.energy, leading_fumi, tol))
        .collect()
}

/// Evaluates every point of `family`; results are ordered by `N`.
pub fn finite_size_scan(pot: &Potential, family: &ThermoFamily, tol: &Tolerances) -> Result<Vec<FiniteSizeRecord>> {
    tol.validate()?;
    let shifter = PhaseShifter::new(pot, tol.ode)?;
    finite_size_scan_with(&shifter, family, tol)
}

/// Which finite-size coefficient to extrapolate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    Theorem,
    Corollary,
}

impl Observable {
    pub fn value(&self, r: &FiniteSizeRecord) -> f64 {
        match self {
            Observable::Theorem => r.x_theorem,
            Observable::Corollary => r.x_corollary,
        }
    }

    /// Predicted limit: `ξ + ζ`, or `(1 - 2a) ξ + ζ`.
    pub fn target(&self, fermi: &FermiPoint, a: f64) -> f64 {
        match self {
            Observable::Theorem => fermi.xi + fermi.zeta,
            Observable::Corollary => (1.0 - 2.0 * a) * fermi.xi + fermi.zeta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitAssessment {
    pub target: f64,
    pub limit: f64,
    pub error: f64,
    pub model: LimitModel,
    pub pass: bool,
}

/// Absolute slack added to every relative limit check.
pub const LIMIT_ABS_FLOOR: f64 = 1e-10;

/// Richardson limit of `observable` along `family`, compared to its target
/// within `rel_tol`. If the fit's own error estimate exceeds the tolerance,
/// one more point at twice the largest `N` is computed and the plain
/// last-point estimate is used instead.
pub fn assess_limit(
    shifter: &PhaseShifter<'_>,
    family: &ThermoFamily,
    records: &[FiniteSizeRecord],
    observable: Observable,
    tol: &Tolerances,
    rel_tol: f64,
) -> Result<LimitAssessment> {
    let a = family.offset.ok_or_else(|| {
        Error::Input("limits are only defined along a family with fixed offset a".into())
    })?;
    let fermi = fermi_point_with(shifter, family.energy)?;
    let target = observable.target(&fermi, a);
    let allowed = rel_tol * target.abs() + LIMIT_ABS_FLOOR;

    let series: Vec<(f64, f64)> = records.iter().map(|r| (r.length, observable.value(r))).collect();
    let rich = extrapolate_limit(&series, LimitModel::Richardson)?;
    let (est, model) = if rich.error <= allowed {
        (rich, LimitModel::Richardson)
    } else {
        let n_max = records.last().map(|r| r.n).unwrap_or(1);
        let extra = ThermoFamily::new(family.energy, a, &[2 * n_max])?;
        let leading_fumi = records[0].leading_fumi;
        let r = record(shifter, &extra.points[0], family.energy, leading_fumi, tol)?;
        let mut extended = series;
        extended.push((r.length, observable.value(&r)));
        (extrapolate_limit(&extended, LimitModel::Plain)?, LimitModel::Plain)
    };
    Ok(LimitAssessment {
        target,
        limit: est.limit,
        error: est.error,
        model,
        pass: (est.limit - target).abs() <= allowed,
    })
}

/// Second-order remainder of `δ(√μₙ) ≈ δ(√λₙ) - δ'(√λₙ)δ(√λₙ)/L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionResidual {
    pub n: usize,
    pub k_free: f64,
    pub residual: f64,
    /// `|residual| L² / (1/√λₙ + 1)`, bounded by a constant.
    pub scaled: f64,
}

pub fn expansion_residuals(
    pot: &Potential,
    length: f64,
    n_max: usize,
    tol: &Tolerances,
) -> Result<Vec<ExpansionResidual>> {
    tol.validate()?;
    let shifter = PhaseShifter::new(pot, tol.ode)?;
    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let ev = perturbed_eigenvalue_quantized(&shifter, n, length, tol.k)?;
            let k0 = free_wavenumber(n, length);
            let free = shifter.eval(k0)?;
            let pert = shifter.delta(ev.k)?;
            let residual = pert - free.delta + free.delta_prime * free.delta / length;
            Ok(ExpansionResidual {
                n,
                k_free: k0,
                residual,
                scaled: residual.abs() * length * length / (1.0 / k0 + 1.0),
            })
        })
        .collect()
}
