//! Self-checks behind `prufer verify`: each check reruns one of the
//! numerical claims at its stated tolerance and reports pass or fail.
//!
//! Reference values come from [`crate::closed_form`]; the integration
//! tests check the same claims against separate oracles.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::{
    assess_limit, energy_difference_with, euler_maclaurin_residual, finite_size_scan_with,
    integrated_finite_volume_ssf, neumann_dirichlet_closed_form,
    neumann_dirichlet_limit, EmFunction, Observable, ThermoFamily,
};
use crate::closed_form;
use crate::eigensolver::{
    free_eigenvalue, free_wavenumber, perturbed_eigenvalue, perturbed_eigenvalue_quantized,
};
use crate::error::Result;
use crate::potentials::Potential;
use crate::scattering::{fermi_point_with, fumi_integral_with};
use crate::variable_phase::{integrate_prufer, phase_shift_grid, PhaseShifter};
use crate::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, pass: bool, detail: String) -> Self {
        CheckResult { name, pass, detail }
    }

    fn failed(name: &'static str, err: crate::Error) -> Self {
        CheckResult::new(name, false, format!("error: {err}"))
    }
}

type Check = fn(&Tolerances) -> Result<(bool, String)>;

const CHECKS: [(&str, Check); 12] = [
    ("free-theory", free_theory),
    ("closed-form-phase", closed_form_phase),
    ("exact-quantization", exact_quantization),
    ("solver-agreement", solver_agreement),
    ("theorem-limit", theorem_limit),
    ("offset-sweep", offset_sweep),
    ("off-family-drift", off_family_drift),
    ("neumann-dirichlet", neumann_dirichlet),
    ("prufer-bounds", prufer_bounds),
    ("phase-rates", phase_rates),
    ("euler-maclaurin", euler_maclaurin),
    ("finite-volume-ssf", finite_volume_ssf),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

/// Runs every check in order.
pub fn run_all(tol: &Tolerances) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|&(name, check)| match check(tol) {
            Ok((pass, detail)) => CheckResult::new(name, pass, detail),
            Err(e) => CheckResult::failed(name, e),
        })
        .collect()
}

fn unit_well() -> Potential {
    Potential::square_well(1.0, 1.0).expect("valid well")
}

fn unit_delta() -> Potential {
    Potential::dirac_delta(1.0, 1.0).expect("valid delta")
}

fn free_theory(tol: &Tolerances) -> Result<(bool, String)> {
    let zero = Potential::zero();
    let deltas = phase_shift_grid(&zero, 0.1, 20.0, 64, tol.ode)?;
    let max_delta = deltas.iter().map(|p| p.delta.abs()).fold(0.0, f64::max);
    let shifter = PhaseShifter::new(&zero, tol.ode)?;
    let length = 50.0;
    let mut max_rel = 0.0f64;
    for n in 1..=100 {
        let mu = perturbed_eigenvalue_quantized(&shifter, n, length, tol.k)?.mu;
        let lambda = free_eigenvalue(n, length)?;
        max_rel = max_rel.max((mu - lambda).abs() / lambda);
    }
    let de = energy_difference_with(&shifter, 100, 200.0, tol.k)?;
    let family = ThermoFamily::new(1.0, 0.0, &[100, 200, 400])?;
    let max_x = finite_size_scan_with(&shifter, &family, tol)?
        .iter()
        .map(|r| r.x_theorem.abs().max(r.x_corollary.abs()))
        .fold(0.0, f64::max);
    let pass = max_delta < 1e-12 && max_rel < 1e-12 && de == 0.0 && max_x < 1e-10;
    Ok((
        pass,
        format!("max|δ| {max_delta:.1e}, max rel μ error {max_rel:.1e}, ΔE {de:.1e}, max|x| {max_x:.1e}"),
    ))
}

fn closed_form_phase(tol: &Tolerances) -> Result<(bool, String)> {
    let mut worst = [0.0f64; 2];
    for (slot, pot) in [unit_well(), unit_delta()].iter().enumerate() {
        for p in phase_shift_grid(pot, 0.1, 20.0, 64, tol.ode)? {
            let exact = closed_form::phase_shift(pot, p.k).expect("closed form exists");
            worst[slot] = worst[slot].max((p.delta - exact).abs());
        }
    }
    Ok((
        worst[0] < 1e-8 && worst[1] < 1e-8,
        format!("max error well {:.1e}, delta {:.1e}", worst[0], worst[1]),
    ))
}

fn exact_quantization(tol: &Tolerances) -> Result<(bool, String)> {
    let well = unit_well();
    let shifter = PhaseShifter::new(&well, tol.ode)?;
    let length = 50.0;
    let residuals = (1..=100usize)
        .into_par_iter()
        .map(|n| {
            let k = perturbed_eigenvalue_quantized(&shifter, n, length, tol.k)?.k;
            let delta = closed_form::square_well_phase_shift(1.0, 1.0, k);
            Ok((k * length + delta - n as f64 * PI).abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    let worst = residuals.into_iter().fold(0.0, f64::max);
    Ok((worst < 1e-9, format!("max |kL + δ(k) - nπ| {worst:.1e} over n ≤ 100")))
}

fn solver_agreement(tol: &Tolerances) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let pots = [unit_well(), unit_delta()];
    let cases: Vec<(usize, usize, f64)> = (0..50)
        .map(|i| (i % 2, rng.gen_range(1..=60), rng.gen_range(1.5..40.0)))
        .collect();
    let gaps = cases
        .par_iter()
        .map(|&(which, n, length)| {
            let pot = &pots[which];
            let shot = perturbed_eigenvalue(pot, n, length, tol)?.k;
            let shifter = PhaseShifter::new(pot, tol.ode)?;
            let quant = perturbed_eigenvalue_quantized(&shifter, n, length, tol.k)?.k;
            Ok((shot - quant).abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    let worst = gaps.into_iter().fold(0.0, f64::max);
    Ok((worst < 1e-10, format!("max |k_shoot - k_quant| {worst:.1e} over 50 cases")))
}

const FAMILY: [usize; 4] = [100, 200, 400, 800];

fn theorem_limit(tol: &Tolerances) -> Result<(bool, String)> {
    let well = unit_well();
    let shifter = PhaseShifter::new(&well, tol.ode)?;
    let family = ThermoFamily::new(1.0, 0.0, &FAMILY)?;
    let records = finite_size_scan_with(&shifter, &family, tol)?;
    let a = assess_limit(&shifter, &family, &records, Observable::Theorem, tol, 0.01)?;
    Ok((
        a.pass,
        format!("limit {:.6} vs ξ + ζ = {:.6} ({:?})", a.limit, a.target, a.model),
    ))
}

fn offset_sweep(tol: &Tolerances) -> Result<(bool, String)> {
    let well = unit_well();
    let shifter = PhaseShifter::new(&well, tol.ode)?;
    let fermi = fermi_point_with(&shifter, 1.0)?;
    let mut limits = Vec::new();
    let mut pass = true;
    for a in [0.0, 0.5, 1.0] {
        let family = ThermoFamily::new(1.0, a, &FAMILY)?;
        let records = finite_size_scan_with(&shifter, &family, tol)?;
        let r = assess_limit(&shifter, &family, &records, Observable::Corollary, tol, 0.01)?;
        pass &= r.pass;
        limits.push(r.limit);
    }
    let half_vs_zeta = (limits[1] - fermi.zeta).abs() <= 0.01 * fermi.zeta;
    let gap = limits[0] - limits[1];
    let gap_ok = (gap - fermi.xi).abs() <= 0.015 * fermi.xi.abs();
    Ok((
        pass && half_vs_zeta && gap_ok,
        format!(
            "limits {:.5}/{:.5}/{:.5} for a = 0/0.5/1; ζ {:.5}, ξ {:.5}, gap {:.5}",
            limits[0], limits[1], limits[2], fermi.zeta, fermi.xi, gap
        ),
    ))
}

/// Offsets of `L` off the `a = 0` family used for the drift fit.
const DRIFTS: [f64; 4] = [-0.3, -0.15, 0.15, 0.3];

fn off_family_drift(tol: &Tolerances) -> Result<(bool, String)> {
    let well = unit_well();
    let shifter = PhaseShifter::new(&well, tol.ode)?;
    let energy = 1.0f64;
    let xi = fermi_point_with(&shifter, energy)?.xi;
    let on = finite_size_scan_with(&shifter, &ThermoFamily::new(energy, 0.0, &FAMILY)?, tol)?;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    let mut nonzero = true;
    for eps in DRIFTS {
        let pairs: Vec<(usize, f64)> = on.iter().map(|r| (r.n, r.length + eps)).collect();
        let off = finite_size_scan_with(&shifter, &ThermoFamily::with_lengths(energy, &pairs)?, tol)?;
        for (base, moved) in on.iter().zip(&off) {
            let k_moved = free_wavenumber(moved.n, moved.length);
            let k_base = free_wavenumber(base.n, base.length);
            let predicted =
                moved.length / (energy.sqrt() * PI) * (k_moved * k_moved - k_base * k_base) * xi;
            let measured = moved.x_corollary - base.x_corollary;
            nonzero &= measured.abs() > 1e-6;
            sxy += predicted * measured;
            sxx += predicted * predicted;
        }
    }
    let slope = sxy / sxx;
    Ok((
        nonzero && (slope - 1.0).abs() <= 0.1,
        format!("fitted shift / predicted shift = {slope:.4}"),
    ))
}

fn neumann_dirichlet(_tol: &Tolerances) -> Result<(bool, String)> {
    let mut worst_rel = 0.0f64;
    for n in [1usize, 2, 10, 100, 1000, 10_000] {
        for a in [0.0, 0.5, 1.0] {
            let nd = neumann_dirichlet_closed_form(1.0, a, n)?;
            let nf = n as f64;
            let formula = (PI / nd.length).powi(2) * (nf * (nf + 1.0) / 2.0 - nf / 4.0);
            worst_rel = worst_rel.max((nd.delta_e_exact - formula).abs() / formula);
        }
    }
    let mut worst_limit = 0.0f64;
    for a in [0.0, 0.5, 1.0] {
        let x = neumann_dirichlet_closed_form(1.0, a, 10_000)?.x_corollary;
        worst_limit = worst_limit.max((x - neumann_dirichlet_limit(a)).abs());
    }
    // ζ = 1/4 at a = 0 and a slope of 2|ξ| = 1 in a
    let x0 = neumann_dirichlet_closed_form(1.0, 0.0, 10_000)?.x_corollary;
    let x1 = neumann_dirichlet_closed_form(1.0, 1.0, 10_000)?.x_corollary;
    let magnitudes = (x0 - 0.25).abs() < 1e-3 && ((x0 - x1).abs() - 1.0).abs() < 1e-3;
    Ok((
        worst_rel < 1e-12 && worst_limit < 1e-3 && magnitudes,
        format!("sum identity rel error {worst_rel:.1e}, limit error {worst_limit:.1e} at N = 10⁴"),
    ))
}

fn random_potential(rng: &mut ChaCha8Rng) -> Potential {
    match rng.gen_range(0..3) {
        0 => Potential::square_well(rng.gen_range(0.0..20.0), rng.gen_range(0.1..3.0)),
        1 => Potential::dirac_delta(rng.gen_range(0.0..20.0), rng.gen_range(0.05..3.0)),
        _ => {
            let count = rng.gen_range(2..8);
            let mut grid = vec![0.0];
            for _ in 1..count {
                let last = *grid.last().expect("non-empty");
                grid.push(last + rng.gen_range(0.05..0.8));
            }
            let values = (0..count).map(|_| rng.gen_range(0.0..10.0)).collect();
            Potential::tabulated(grid, values)
        }
    }
    .expect("valid random potential")
}

fn prufer_bounds(tol: &Tolerances) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa1);
    let mut violations = 0usize;
    for _ in 0..200 {
        let pot = random_potential(&mut rng);
        let k = rng.gen_range(0.01..30.0);
        let x = rng.gen_range(0.01..5.0);
        let t = integrate_prufer(&pot, k, x, tol.ode)?;
        let t_up = integrate_prufer(&pot, k * 1.01, x, tol.ode)?;
        let ok = t.theta >= -1e-12
            && t.theta <= k * x + 1e-8
            && t.phase_function <= 1e-12
            && t.dtheta_dk >= 0.0
            && t_up.theta > t.theta;
        violations += usize::from(!ok);
    }
    Ok((violations == 0, format!("{violations} violations in 200 cases")))
}

fn log_slope(pot: &Potential, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let points = phase_shift_grid(pot, lo, hi, 16, tol)?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|p| (p.k.ln(), p.delta.abs().ln())).unzip();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(cov / var)
}

fn phase_rates(tol: &Tolerances) -> Result<(bool, String)> {
    let well = unit_well();
    let low = log_slope(&well, 1e-3, 1e-2, tol.ode)?;
    let high = log_slope(&well, 1e2, 1e3, tol.ode)?;
    let max_prime = |count| -> Result<f64> {
        Ok(phase_shift_grid(&well, 1e-3, 1e3, count, tol.ode)?
            .iter()
            .map(|p| p.delta_prime.abs())
            .fold(0.0, f64::max))
    };
    let coarse = max_prime(64)?;
    let fine = max_prime(127)?;
    let stable = coarse.is_finite() && fine.is_finite() && (fine - coarse).abs() <= 0.05 * fine;
    Ok((
        low >= 0.9 && high <= -0.9 && stable,
        format!("slopes {low:.3} (small k), {high:.3} (large k); max|δ'| {coarse:.4} / {fine:.4}"),
    ))
}

fn fitted_exponent(f: &EmFunction, order: u8) -> Result<f64> {
    let lengths = [100.0, 200.0, 400.0, 800.0];
    let mut pts = Vec::new();
    for l in lengths {
        let r = euler_maclaurin_residual(f, l as usize, l, order)?;
        pts.push((l.ln(), r.abs().ln()));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let cov: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let var: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(cov / var)
}

fn euler_maclaurin(_tol: &Tolerances) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for (n, l) in [(10usize, 7.0), (1000, 313.0), (64, 64.0)] {
        for f in [EmFunction::Monomial(0), EmFunction::Monomial(1)] {
            worst = worst.max(euler_maclaurin_residual(&f, n, l, 2)?.abs());
        }
    }
    let square = EmFunction::Monomial(2);
    let first = fitted_exponent(&square, 1)?;
    let second = fitted_exponent(&square, 2)?;
    Ok((
        worst < 1e-12 && (first + 1.0).abs() <= 0.15 && (second + 2.0).abs() <= 0.15,
        format!("degree ≤ 1 residual {worst:.1e}; x² exponents {first:.3} / {second:.3}"),
    ))
}

fn finite_volume_ssf(tol: &Tolerances) -> Result<(bool, String)> {
    let well = unit_well();
    let shifter = PhaseShifter::new(&well, tol.ode)?;
    let fumi = fumi_integral_with(&shifter, 1.0, tol.quad)?;
    let mut values = Vec::new();
    for l in [250.0, 500.0, 1000.0] {
        values.push(integrated_finite_volume_ssf(&shifter, l, 1.0, tol.k)?);
    }
    let rel = (values[2] - fumi).abs() / fumi;
    Ok((
        rel <= 0.02,
        format!(
            "∫ξ_L = {:.5}/{:.5}/{:.5} at L = 250/500/1000 vs {fumi:.5} (rel {rel:.1e})",
            values[0], values[1], values[2]
        ),
    ))
}
