use std::f64::consts::PI;
use std::path::PathBuf;

use serde::Serialize;

use prufer_core::asymptotics::{
    assess_limit, energy_difference_with, finite_size_scan_with, LimitModel, Observable,
    ThermoFamily,
};
use prufer_core::harness;
use prufer_core::scattering::fermi_point_with;
use prufer_core::variable_phase::PhaseShifter;
use prufer_core::{phase_shift_grid, FiniteSizeRecord};

use crate::output::{emit, Cell, Table};
use crate::{CliError, Context, Format};

pub fn phase_shift(ctx: &Context, kmin: f64, kmax: f64, count: usize) -> Result<(), CliError> {
    let pot = ctx.potential()?;
    let mut table = Table::new(&["k", "delta", "delta_prime", "xi_at_k2", "zeta_at_k2"]);
    for p in phase_shift_grid(&pot, kmin, kmax, count, ctx.tol.ode)? {
        table.push(vec![
            Cell::Float(p.k),
            Cell::Float(p.delta),
            Cell::Float(p.delta_prime),
            Cell::Float(0.0 - p.delta / PI),
            Cell::Float(p.delta * p.delta / (PI * PI)),
        ]);
    }
    emit(ctx.out.as_deref(), &table.render(ctx.format))
}

pub fn spectrum(ctx: &Context, length: f64, n_max: usize) -> Result<(), CliError> {
    let pot = ctx.potential()?;
    let mut table = Table::new(&["n", "lambda", "mu", "k_mu", "residual"]);
    for e in prufer_core::spectrum(&pot, length, n_max, &ctx.tol)?.entries {
        table.push(vec![
            Cell::Int(e.n as u64),
            Cell::Float(e.lambda),
            Cell::Float(e.mu),
            Cell::Float(e.k_mu),
            Cell::Float(e.residual),
        ]);
    }
    emit(ctx.out.as_deref(), &table.render(ctx.format))
}

/// Pairs each count with its length; a single length is shared.
fn pair_lengths(counts: &[usize], lengths: &[f64]) -> Result<Vec<(usize, f64)>, CliError> {
    match lengths.len() {
        1 => Ok(counts.iter().map(|&n| (n, lengths[0])).collect()),
        m if m == counts.len() => Ok(counts.iter().copied().zip(lengths.iter().copied()).collect()),
        m => Err(CliError::Usage(format!(
            "expected 1 or {} lengths for {} particle counts; got {m}",
            counts.len(),
            counts.len()
        ))),
    }
}

pub fn energy_diff(ctx: &Context, counts: &[usize], lengths: &[f64]) -> Result<(), CliError> {
    let pot = ctx.potential()?;
    let shifter = PhaseShifter::new(&pot, ctx.tol.ode)?;
    let mut table = Table::new(&["N", "L", "delta_E_exact"]);
    for (n, length) in pair_lengths(counts, lengths)? {
        let de = energy_difference_with(&shifter, n, length, ctx.tol.k)?;
        table.push(vec![Cell::Int(n as u64), Cell::Float(length), Cell::Float(de)]);
    }
    emit(ctx.out.as_deref(), &table.render(ctx.format))
}

#[derive(Debug, Serialize)]
struct Summary {
    /// `null` for explicit lengths.
    a: Option<f64>,
    observable: &'static str,
    target_xi: f64,
    target_zeta: f64,
    target: Option<f64>,
    limit_estimate: Option<f64>,
    error_estimate: Option<f64>,
    model: Option<LimitModel>,
    pass: Option<bool>,
}

const SCAN_HEADER: &[&str] = &[
    "N",
    "L",
    "a",
    "E",
    "delta_E_exact",
    "leading_moving",
    "leading_fumi",
    "x_theorem",
    "x_corollary",
];

fn scan_row(r: &FiniteSizeRecord) -> Vec<Cell> {
    vec![
        Cell::Int(r.n as u64),
        Cell::Float(r.length),
        Cell::Float(r.a),
        Cell::Float(r.energy),
        Cell::Float(r.delta_e_exact),
        Cell::Float(r.leading_moving),
        Cell::Float(r.leading_fumi),
        Cell::Float(r.x_theorem),
        Cell::Float(r.x_corollary),
    ]
}

pub fn finite_size(
    ctx: &Context,
    energy: f64,
    offsets: &[f64],
    counts: &[usize],
    free_lengths: Option<&[f64]>,
) -> Result<(), CliError> {
    let pot = ctx.potential()?;
    let shifter = PhaseShifter::new(&pot, ctx.tol.ode)?;
    let fermi = fermi_point_with(&shifter, energy)?;
    let mut table = Table::new(SCAN_HEADER);
    let mut summaries = Vec::new();

    if let Some(lengths) = free_lengths {
        if lengths.len() != counts.len() {
            return Err(CliError::Usage(format!(
                "--free-L needs one length per N: {} counts, {} lengths",
                counts.len(),
                lengths.len()
            )));
        }
        let pairs: Vec<(usize, f64)> = counts.iter().copied().zip(lengths.iter().copied()).collect();
        let family = ThermoFamily::with_lengths(energy, &pairs)?;
        for r in finite_size_scan_with(&shifter, &family, &ctx.tol)? {
            table.push(scan_row(&r));
        }
        summaries.push(Summary {
            a: None,
            observable: "x_corollary",
            target_xi: fermi.xi,
            target_zeta: fermi.zeta,
            target: None,
            limit_estimate: None,
            error_estimate: None,
            model: None,
            pass: None,
        });
    } else {
        for &a in offsets {
            let family = ThermoFamily::new(energy, a, counts)?;
            let records = finite_size_scan_with(&shifter, &family, &ctx.tol)?;
            let fit = assess_limit(&shifter, &family, &records, Observable::Corollary, &ctx.tol, 0.01)?;
            for r in &records {
                table.push(scan_row(r));
            }
            summaries.push(Summary {
                a: Some(a),
                observable: "x_corollary",
                target_xi: fermi.xi,
                target_zeta: fermi.zeta,
                target: Some(fit.target),
                limit_estimate: Some(fit.limit),
                error_estimate: Some(fit.error),
                model: Some(fit.model),
                pass: Some(fit.pass),
            });
        }
    }

    emit(ctx.out.as_deref(), &table.render(ctx.format))?;
    let mut summary = if summaries.len() == 1 {
        serde_json::to_string_pretty(&summaries[0])
    } else {
        serde_json::to_string_pretty(&summaries)
    }
    .expect("summaries serialize");
    summary.push('\n');
    match &ctx.out {
        Some(path) => emit(Some(&sidecar(path)), &summary),
        None => {
            eprint!("{summary}");
            Ok(())
        }
    }
}

/// `scan.csv` → `scan.summary.json`.
fn sidecar(path: &std::path::Path) -> PathBuf {
    path.with_extension("summary.json")
}

pub fn verify(ctx: &Context) -> Result<(), CliError> {
    let results = harness::run_all(&ctx.tol);
    let failed = results.iter().filter(|r| !r.pass).count();
    let text = match ctx.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&results).expect("results serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let width = results.iter().map(|r| r.name.len()).max().unwrap_or(5).max(5);
            let mut s = format!("{:<width$}  {:<6}  detail\n", "check", "result");
            for r in &results {
                let verdict = if r.pass { "PASS" } else { "FAIL" };
                s.push_str(&format!("{:<width$}  {verdict:<6}  {}\n", r.name, r.detail));
            }
            s.push_str(&format!("{} passed, {failed} failed\n", results.len() - failed));
            s
        }
    };
    emit(ctx.out.as_deref(), &text)?;
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Verify(failed))
    }
}
