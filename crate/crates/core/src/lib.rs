//! Finite-size energies of one-dimensional Fermi gases perturbed by a
//! compactly supported non-negative potential, computed from Prüfer
//! variables.
//!
//! The crate evaluates scattering phase shifts `δ(k)`, free and perturbed
//! Dirichlet spectra on `(0, L)`, exact ground-state energy differences and
//! the coefficients of their `1/L` expansion along thermodynamic families.
//!
//! ```
//! use prufer_core::{phase_shift, Potential};
//!
//! let well = Potential::square_well(1.0, 1.0)?;
//! let shift = phase_shift(&well, 1.0, 1e-10)?;
//! assert!(shift.delta < 0.0);
//! # Ok::<(), prufer_core::Error>(())
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod closed_form;
pub mod eigensolver;
mod error;
pub mod harness;
pub mod numerics;
pub mod potentials;
pub mod scattering;
pub mod variable_phase;

use serde::Serialize;

pub use asymptotics::{
    energy_difference, finite_size_scan, FiniteSizeRecord, Observable, ThermoFamily,
};
pub use eigensolver::{
    free_eigenvalue, perturbed_eigenvalue, quantized_eigenvalue, spectrum, Eigenvalue,
    SpectrumEntry, SpectrumPair,
};
pub use error::{Error, Result};
pub use potentials::{Moments, Potential, PotentialKind};
pub use scattering::{fermi_point, fumi_integral, s_matrix, FermiPoint};
pub use variable_phase::{
    integrate_prufer, phase_shift, phase_shift_grid, PhaseShift, PhaseShifter, PruferTrajectory,
};

/// Numeric tolerances shared by every solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative and absolute tolerance of the Prüfer integration.
    pub ode: f64,
    /// Absolute tolerance on eigen-wavenumbers.
    pub k: f64,
    /// Relative tolerance of the Fumi quadrature.
    pub quad: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            ode: 1e-10,
            k: 1e-12,
            quad: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        variable_phase::check_tolerance("ode_tol", self.ode)?;
        variable_phase::check_tolerance("k_tol", self.k)?;
        variable_phase::check_tolerance("quad_tol", self.quad)
    }
}
