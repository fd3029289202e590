//! Closed-form phase shifts for the potentials that admit one.

use std::f64::consts::PI;

use crate::potentials::{Potential, PotentialKind};

/// Unwound Prüfer angle at the edge `x = width` of a square barrier.
pub fn square_well_edge_angle(height: f64, width: f64, k: f64) -> f64 {
    let e = k * k;
    if e > height {
        let q = (e - height).sqrt();
        let qb = q * width;
        let m = (qb / PI).round();
        let r = qb - m * PI;
        m * PI + (k * r.sin()).atan2(q * r.cos())
    } else if e < height {
        let kappa = (height - e).sqrt();
        // tanh form keeps large kappa * width finite
        (k * (kappa * width).tanh()).atan2(kappa)
    } else {
        (k * width).atan()
    }
}

/// `δ(k)` for `V = height` on `[0, width)`.
pub fn square_well_phase_shift(height: f64, width: f64, k: f64) -> f64 {
    if height == 0.0 {
        return 0.0;
    }
    square_well_edge_angle(height, width, k) - k * width
}

/// `δ(k)` for `V = strength · δ(x - position)`, taken on `(-π, 0]`.
pub fn dirac_delta_phase_shift(strength: f64, position: f64, k: f64) -> f64 {
    let theta = k * position;
    let branch = (theta / PI).floor();
    let phi = theta - branch * PI;
    let (s, c) = phi.sin_cos();
    s.atan2(c + strength / k * s) - phi
}

/// Closed-form `δ(k)` when the potential kind has one.
pub fn phase_shift(pot: &Potential, k: f64) -> Option<f64> {
    match *pot.kind() {
        PotentialKind::Zero => Some(0.0),
        PotentialKind::SquareWell { height, width } => {
            Some(square_well_phase_shift(height, width, k))
        }
        PotentialKind::DiracDelta { strength, position } => {
            Some(dirac_delta_phase_shift(strength, position, k))
        }
        PotentialKind::Tabulated { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_value_is_continuous() {
        let at = square_well_phase_shift(1.0, 1.0, 1.0);
        assert!((at - (PI / 4.0 - 1.0)).abs() < 1e-15);
        for eps in [1e-6, 1e-8] {
            assert!((square_well_phase_shift(1.0, 1.0, 1.0 + eps) - at).abs() < 1e-5);
            assert!((square_well_phase_shift(1.0, 1.0, 1.0 - eps) - at).abs() < 1e-5);
        }
    }

    #[test]
    fn hard_wall_limit_of_the_delta() {
        // c -> ∞ pins u(p) = 0: δ -> -(kp mod π)
        let k = 1.3;
        let p = 2.0;
        let d = dirac_delta_phase_shift(1e12, p, k);
        let expected = -(k * p - PI * (k * p / PI).floor());
        assert!((d - expected).abs() < 1e-9);
    }

    #[test]
    fn phase_shifts_are_non_positive() {
        for i in 1..200 {
            let k = 0.05 * i as f64;
            assert!(square_well_phase_shift(3.0, 1.2, k) <= 0.0);
            assert!(dirac_delta_phase_shift(2.0, 0.7, k) <= 0.0);
        }
    }
}
