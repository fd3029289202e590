//! Shared fixtures for the criterion benches in `benches/`.

use prufer_core::Potential;

/// Potentials exercised by every bench: one square well, one point
/// mass, one tabulated profile.
pub fn fixtures() -> Vec<(&'static str, Potential)> {
    let grid: Vec<f64> = (0..=16).map(|i| i as f64 * 0.125).collect();
    let values: Vec<f64> = grid.iter().map(|x| 2.0 * (-(x - 1.0) * (x - 1.0)).exp()).collect();
    vec![
        ("square_well", Potential::square_well(1.0, 1.0).expect("valid well")),
        ("dirac_delta", Potential::dirac_delta(2.0, 0.5).expect("valid delta")),
        ("tabulated", Potential::tabulated(grid, values).expect("valid table")),
    ]
}
