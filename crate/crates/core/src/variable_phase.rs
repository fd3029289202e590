//! Variable-phase (Prüfer) integration and scattering phase shifts.
//!
//! A solution of `-u'' + V u = k² u`, `u(0) = 0` is written as
//! `u = ρ sin θ`, `u' = k ρ cos θ`. The angle obeys
//! `θ' = k - (V/k) sin²θ`, the amplitude `(ln ρ)' = V sin 2θ / (2k)`, and
//! the variational quantity `w = ∂θ/∂k` obeys
//! `w' = 1 + (V/k²) sin²θ - (V/k) sin 2θ · w`.
//!
//! Internally the solver carries the phase function `δ_k(x) = θ(x) - kx`
//! and `η = w - x` instead of `θ` and `w`. Both are constant wherever `V`
//! vanishes, so free stretches are propagated exactly and the adaptive
//! error control acts on the quantities the phase shift is read from.
//! `θ` is never reduced modulo π.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::RwLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{Dopri5, OdeStats};
use crate::potentials::{Law, Potential};

pub const DEFAULT_ODE_TOL: f64 = 1e-10;
pub const MIN_TOL: f64 = 1e-14;
pub const MAX_TOL: f64 = 1e-2;

/// Rejects tolerances outside `[1e-14, 1e-2]`.
pub fn check_tolerance(name: &str, tol: f64) -> Result<()> {
    if (MIN_TOL..=MAX_TOL).contains(&tol) {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "{name} = {tol:e} outside [{MIN_TOL:e}, {MAX_TOL:e}]"
        )))
    }
}

fn check_wavenumber(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("wavenumber must be positive and finite; got k = {k}")))
    }
}

/// State of the Prüfer system at `x_end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PruferTrajectory {
    pub k: f64,
    pub x_end: f64,
    /// Unwound Prüfer angle `θ_k(x_end)`.
    pub theta: f64,
    /// `ln ρ(x_end)` with `ρ(0) = 1`.
    pub log_rho: f64,
    pub dtheta_dk: f64,
    /// `θ_k(x_end) - k x_end`, carried without cancellation.
    pub phase_function: f64,
    pub step_count: usize,
    pub est_local_error: f64,
}

/// Scattering phase shift at one wavenumber.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseShift {
    pub k: f64,
    pub delta: f64,
    pub delta_prime: f64,
    /// Bound on `|δ(k) - δ_k(x_end)|`; zero once the support is covered.
    pub tail_bound: f64,
}

impl PhaseShift {
    fn zero(k: f64) -> Self {
        PhaseShift {
            k,
            delta: 0.0,
            delta_prime: 0.0,
            tail_bound: 0.0,
        }
    }
}

/// `[δ_k, ln ρ, η]`
type State = [f64; 3];

/// Applies the matching conditions across `c δ(x - p)`:
/// `u` continuous and `u'(p+) - u'(p-) = c u(p)`, i.e.
/// `cot θ⁺ = cot θ⁻ + c/k` on the π-branch of `θ⁻`.
fn cross_point_mass(y: &mut State, k: f64, position: f64, strength: f64) {
    let theta = k * position + y[0];
    let branch = (theta / PI).floor();
    let phi = theta - branch * PI;
    let (s, c) = phi.sin_cos();
    let shifted = c + strength / k * s;
    let r2 = s * s + shifted * shifted;
    let phi_plus = s.atan2(shifted);
    let s_plus = phi_plus.sin();
    let w_minus = position + y[2];
    let w_plus = w_minus / r2 + strength / (k * k) * s_plus * s_plus;

    y[0] += phi_plus - phi;
    y[1] += 0.5 * r2.ln();
    y[2] = w_plus - position;
}

fn integrate_state(pot: &Potential, k: f64, x_end: f64, tol: f64) -> Result<(State, OdeStats)> {
    let solver = Dopri5::new(tol);
    let mut stats = OdeStats::default();
    let mut y: State = [0.0; 3];

    let mut masses = pot.point_masses();
    masses.retain(|&(p, _)| p <= x_end);
    masses.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut next_mass = 0;

    for piece in pot.pieces(x_end) {
        let mut cuts = vec![piece.lo];
        cuts.extend(
            masses
                .iter()
                .map(|&(p, _)| p)
                .filter(|&p| p > piece.lo && p < piece.hi),
        );
        cuts.push(piece.hi);

        for seg in cuts.windows(2) {
            let (lo, hi) = (seg[0], seg[1]);
            while next_mass < masses.len() && masses[next_mass].0 <= lo {
                let (p, c) = masses[next_mass];
                cross_point_mass(&mut y, k, p, c);
                next_mass += 1;
            }
            if piece.law.is_zero() {
                continue;
            }
            let law: Law = piece.law;
            let rhs = |x: f64, s: &State| -> State {
                let v = law.value(x);
                let (sin, cos) = (k * x + s[0]).sin_cos();
                let sin2 = sin * sin;
                let sc = sin * cos;
                [
                    -v * sin2 / k,
                    v * sc / k,
                    v * sin2 / (k * k) - 2.0 * v * sc / k * (x + s[2]),
                ]
            };
            solver.integrate(rhs, lo, hi, &mut y, &mut stats)?;
        }
    }
    while next_mass < masses.len() {
        let (p, c) = masses[next_mass];
        cross_point_mass(&mut y, k, p, c);
        next_mass += 1;
    }
    Ok((y, stats))
}

/// Integrates the Prüfer system from `θ(0) = 0`, `ρ(0) = 1`, `∂θ/∂k(0) = 0`
/// up to `x_end`. Point masses at positions `<= x_end` are crossed, so the
/// returned angle is the right limit.
pub fn integrate_prufer(pot: &Potential, k: f64, x_end: f64, tol: f64) -> Result<PruferTrajectory> {
    check_wavenumber(k)?;
    check_tolerance("ode_tol", tol)?;
    if !(x_end > 0.0 && x_end.is_finite()) {
        return Err(Error::Domain(format!("x_end must be positive and finite; got {x_end}")));
    }
    let (y, stats) = integrate_state(pot, k, x_end, tol)?;
    Ok(PruferTrajectory {
        k,
        x_end,
        theta: k * x_end + y[0],
        log_rho: y[1],
        dtheta_dk: x_end + y[2],
        phase_function: y[0],
        step_count: stats.accepted,
        est_local_error: stats.local_error,
    })
}

/// `δ(k)` and `δ'(k)` by integrating across the support of the potential.
pub fn phase_shift(pot: &Potential, k: f64, tol: f64) -> Result<PhaseShift> {
    check_wavenumber(k)?;
    check_tolerance("ode_tol", tol)?;
    let x_end = pot.support_radius();
    if x_end == 0.0 {
        return Ok(PhaseShift::zero(k));
    }
    let (y, _) = integrate_state(pot, k, x_end, tol)?;
    Ok(PhaseShift {
        k,
        delta: y[0],
        delta_prime: y[2],
        tail_bound: pot.tail_mass(x_end) / k,
    })
}

/// Geometrically spaced wavenumbers from `k_min` to `k_max` inclusive.
pub fn geometric_grid(k_min: f64, k_max: f64, count: usize) -> Result<Vec<f64>> {
    if !(k_min > 0.0 && k_max > k_min && k_max.is_finite()) {
        return Err(Error::Config(format!(
            "need 0 < k_min < k_max; got [{k_min}, {k_max}]"
        )));
    }
    if count < 2 {
        return Err(Error::Config(format!("grid needs at least 2 points; got {count}")));
    }
    let ratio = (k_max / k_min).ln();
    let last = count - 1;
    Ok((0..count)
        .map(|i| match i {
            0 => k_min,
            i if i == last => k_max,
            i => k_min * (ratio * i as f64 / last as f64).exp(),
        })
        .collect())
}

/// Phase shifts on a geometric grid; evaluated in parallel, returned in order.
pub fn phase_shift_grid(
    pot: &Potential,
    k_min: f64,
    k_max: f64,
    count: usize,
    tol: f64,
) -> Result<Vec<PhaseShift>> {
    check_tolerance("ode_tol", tol)?;
    geometric_grid(k_min, k_max, count)?
        .into_par_iter()
        .map(|k| phase_shift(pot, k, tol))
        .collect()
}

/// Memoizing phase-shift evaluator bound to one potential and tolerance.
///
/// Keys are the exact bit patterns of `k`, so a cached answer is always the
/// answer a fresh evaluation would give.
#[derive(Debug)]
pub struct PhaseShifter<'p> {
    pot: &'p Potential,
    tol: f64,
    memo: RwLock<HashMap<u64, PhaseShift>>,
}

impl<'p> PhaseShifter<'p> {
    pub fn new(pot: &'p Potential, tol: f64) -> Result<Self> {
        check_tolerance("ode_tol", tol)?;
        Ok(PhaseShifter {
            pot,
            tol,
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn potential(&self) -> &'p Potential {
        self.pot
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn eval(&self, k: f64) -> Result<PhaseShift> {
        let key = k.to_bits();
        if let Some(hit) = self.memo.read().expect("memo lock poisoned").get(&key) {
            return Ok(*hit);
        }
        let value = phase_shift(self.pot, k, self.tol)?;
        self.memo
            .write()
            .expect("memo lock poisoned")
            .insert(key, value);
        Ok(value)
    }

    pub fn delta(&self, k: f64) -> Result<f64> {
        self.eval(k).map(|p| p.delta)
    }

    pub fn cached(&self) -> usize {
        self.memo.read().expect("memo lock poisoned").len()
    }
}
