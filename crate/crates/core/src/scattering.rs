//! Scattering data as functions of the Fermi energy: the spectral shift
//! function `ξ(E) = -δ(√E)/π`, the exponent `ζ(E) = δ(√E)²/π²`, the
//! S-matrix and the integrated spectral shift (Fumi term).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::integrate;
use crate::potentials::Potential;
use crate::variable_phase::{check_tolerance, PhaseShifter};

/// Scattering data at a single Fermi energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FermiPoint {
    pub energy: f64,
    pub k_fermi: f64,
    pub delta: f64,
    pub xi: f64,
    pub zeta: f64,
}

impl FermiPoint {
    /// Assembles the record from `δ(√E)`.
    pub fn from_delta(energy: f64, delta: f64) -> Self {
        FermiPoint {
            energy,
            k_fermi: energy.sqrt(),
            delta,
            xi: 0.0 - delta / PI,
            zeta: delta * delta / (PI * PI),
        }
    }

    /// `ρ(E) = √E/π`, the integrated density of states of the free operator.
    pub fn density(&self) -> f64 {
        self.k_fermi / PI
    }
}

fn check_energy(energy: f64) -> Result<()> {
    if energy > 0.0 && energy.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("Fermi energy must be positive; got E = {energy}")))
    }
}

pub fn fermi_point_with(shifter: &PhaseShifter<'_>, energy: f64) -> Result<FermiPoint> {
    check_energy(energy)?;
    let delta = shifter.delta(energy.sqrt())?;
    Ok(FermiPoint::from_delta(energy, delta))
}

pub fn fermi_point(pot: &Potential, energy: f64, tol: f64) -> Result<FermiPoint> {
    fermi_point_with(&PhaseShifter::new(pot, tol)?, energy)
}

/// `S(E) = exp(2iδ(√E))`.
pub fn s_matrix(point: &FermiPoint) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * point.delta)
}

/// `-(1/π) ∫₀^E δ(√x) dx`, evaluated as `-(2/π) ∫₀^{√E} s δ(s) ds`.
pub fn fumi_integral_with(shifter: &PhaseShifter<'_>, e_upper: f64, quad_tol: f64) -> Result<f64> {
    check_energy(e_upper)?;
    check_tolerance("quad_tol", quad_tol)?;
    if shifter.potential().is_trivial() {
        return Ok(0.0);
    }
    let integral = integrate(
        |s| {
            if s <= 0.0 {
                Ok(0.0)
            } else {
                Ok(s * shifter.delta(s)?)
            }
        },
        0.0,
        e_upper.sqrt(),
        quad_tol,
    )?;
    Ok(-2.0 / PI * integral.value)
}

pub fn fumi_integral(pot: &Potential, e_upper: f64, ode_tol: f64, quad_tol: f64) -> Result<f64> {
    fumi_integral_with(&PhaseShifter::new(pot, ode_tol)?, e_upper, quad_tol)
}
