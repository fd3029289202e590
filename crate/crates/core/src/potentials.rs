//! Non-negative, compactly supported scattering potentials on the half line.
//!
//! A [`Potential`] can only be obtained through validation, so every value in
//! circulation satisfies `V >= 0`, has finite moments and a finite support
//! radius. The JSON form is the serde representation of [`PotentialKind`]:
//!
//! ```json
//! {"kind": "square_well", "height": 1.0, "width": 1.0}
//! {"kind": "dirac_delta", "strength": 2.0, "position": 0.5}
//! {"kind": "tabulated", "grid": [0.0, 1.0], "values": [1.0, 1.0]}
//! {"kind": "zero"}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const NEGATIVE: &str = "potential must be non-negative (V >= 0 is required; bound states are excluded)";

/// Raw, unvalidated description of a potential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialKind {
    Zero,
    /// `V = height` on `[0, width)`.
    SquareWell { height: f64, width: f64 },
    /// `V = strength * delta(x - position)`.
    DiracDelta { strength: f64, position: f64 },
    /// Piecewise-linear interpolation of `values` on `grid`, zero outside.
    Tabulated { grid: Vec<f64>, values: Vec<f64> },
}

/// `(m0, m1, m2) = (∫V, ∫xV, ∫x²V)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Moments {
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
}

/// Functional form of the potential on one smooth piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Law {
    Constant(f64),
    /// `v0 + slope * (x - x0)`.
    Linear { x0: f64, v0: f64, slope: f64 },
}

impl Law {
    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        match *self {
            Law::Constant(v) => v,
            Law::Linear { x0, v0, slope } => (v0 + slope * (x - x0)).max(0.0),
        }
    }

    pub fn is_zero(&self) -> bool {
        match *self {
            Law::Constant(v) => v == 0.0,
            Law::Linear { v0, slope, .. } => v0 == 0.0 && slope == 0.0,
        }
    }
}

/// Interval `[lo, hi]` on which the potential is given by a single smooth law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub law: Law,
}

/// A validated potential with cached support radius and moments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PotentialKind", into = "PotentialKind")]
pub struct Potential {
    kind: PotentialKind,
    support_radius: f64,
    moments: Moments,
}

impl TryFrom<PotentialKind> for Potential {
    type Error = Error;

    fn try_from(kind: PotentialKind) -> Result<Self> {
        Potential::new(kind)
    }
}

impl From<Potential> for PotentialKind {
    fn from(p: Potential) -> Self {
        p.kind
    }
}

fn check_finite(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Potential {
            field,
            reason: format!("value {v} is not finite"),
        })
    }
}

fn check_non_negative(field: &'static str, v: f64) -> Result<()> {
    check_finite(field, v)?;
    if v < 0.0 {
        return Err(Error::Potential {
            field,
            reason: format!("{NEGATIVE}; got {v}"),
        });
    }
    Ok(())
}

impl Potential {
    pub fn zero() -> Self {
        Potential {
            kind: PotentialKind::Zero,
            support_radius: 0.0,
            moments: Moments::default(),
        }
    }

    pub fn square_well(height: f64, width: f64) -> Result<Self> {
        Self::new(PotentialKind::SquareWell { height, width })
    }

    pub fn dirac_delta(strength: f64, position: f64) -> Result<Self> {
        Self::new(PotentialKind::DiracDelta { strength, position })
    }

    pub fn tabulated(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::new(PotentialKind::Tabulated { grid, values })
    }

    /// Validates `kind` and caches its moments and support radius.
    pub fn new(kind: PotentialKind) -> Result<Self> {
        let (support_radius, moments) = match &kind {
            PotentialKind::Zero => (0.0, Moments::default()),
            &PotentialKind::SquareWell { height, width } => {
                check_non_negative("height", height)?;
                check_finite("width", width)?;
                if width <= 0.0 {
                    return Err(Error::Potential {
                        field: "width",
                        reason: format!("width must be positive; got {width}"),
                    });
                }
                let support = if height == 0.0 { 0.0 } else { width };
                let m = Moments {
                    m0: height * width,
                    m1: height * width * width / 2.0,
                    m2: height * width * width * width / 3.0,
                };
                (support, m)
            }
            &PotentialKind::DiracDelta { strength, position } => {
                check_non_negative("strength", strength)?;
                check_finite("position", position)?;
                if position <= 0.0 {
                    return Err(Error::Potential {
                        field: "position",
                        reason: format!("position must be positive; got {position}"),
                    });
                }
                let support = if strength == 0.0 { 0.0 } else { position };
                let m = Moments {
                    m0: strength,
                    m1: strength * position,
                    m2: strength * position * position,
                };
                (support, m)
            }
            PotentialKind::Tabulated { grid, values } => validate_tabulated(grid, values)?,
        };
        for (field, v) in [("m0", moments.m0), ("m1", moments.m1), ("m2", moments.m2)] {
            if !v.is_finite() {
                return Err(Error::Potential {
                    field,
                    reason: "moment is not finite".into(),
                });
            }
        }
        Ok(Potential {
            kind,
            support_radius,
            moments,
        })
    }

    /// Re-runs validation. Idempotent on any validated potential.
    pub fn validate(&self) -> Result<Self> {
        Self::new(self.kind.clone())
    }

    /// Parses the JSON description.
    pub fn from_json(text: &str) -> Result<Self> {
        let kind: PotentialKind = serde_json::from_str(text).map_err(|e| Error::Potential {
            field: "json",
            reason: e.to_string(),
        })?;
        Self::new(kind)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.kind).expect("potential kinds always serialize")
    }

    pub fn kind(&self) -> &PotentialKind {
        &self.kind
    }

    /// Smallest `x0` with `V ≡ 0` on `(x0, ∞)`.
    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn moments(&self) -> Moments {
        self.moments
    }

    /// True when the potential vanishes identically.
    pub fn is_trivial(&self) -> bool {
        self.support_radius == 0.0
    }

    /// `V(x)`. Distributional potentials have no pointwise values.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::Domain(format!("potential evaluated at x = {x} < 0")));
        }
        match &self.kind {
            PotentialKind::DiracDelta { .. } => Err(Error::Domain(
                "distributional potential has no pointwise values".into(),
            )),
            _ if x >= self.support_radius => Ok(0.0),
            PotentialKind::Zero => Ok(0.0),
            &PotentialKind::SquareWell { height, .. } => Ok(height),
            PotentialKind::Tabulated { grid, values } => {
                if x < grid[0] {
                    return Ok(0.0);
                }
                let i = grid.partition_point(|&g| g <= x).min(grid.len() - 1);
                let (x0, x1) = (grid[i - 1], grid[i]);
                let (v0, v1) = (values[i - 1], values[i]);
                Ok(v0 + (v1 - v0) * (x - x0) / (x1 - x0))
            }
        }
    }

    /// `T(x) = ∫ₓ^∞ V`.
    pub fn tail_mass(&self, x: f64) -> f64 {
        if x >= self.support_radius {
            return 0.0;
        }
        let x = x.max(0.0);
        match &self.kind {
            PotentialKind::Zero => 0.0,
            &PotentialKind::SquareWell { height, width } => height * (width - x),
            &PotentialKind::DiracDelta { strength, .. } => strength,
            PotentialKind::Tabulated { grid, values } => {
                let mut total = 0.0;
                for i in 1..grid.len() {
                    let (a, b) = (grid[i - 1], grid[i]);
                    if b <= x {
                        continue;
                    }
                    let lo = a.max(x);
                    let va = values[i - 1] + (values[i] - values[i - 1]) * (lo - a) / (b - a);
                    total += 0.5 * (va + values[i]) * (b - lo);
                }
                total
            }
        }
    }

    /// Smooth pieces covering `[0, x_end]`; the potential is given by a
    /// single law on each closed piece (one-sided at the ends).
    pub fn pieces(&self, x_end: f64) -> Vec<Piece> {
        let mut out = Vec::new();
        let mut push = |lo: f64, hi: f64, law: Law| {
            let hi = hi.min(x_end);
            if hi > lo {
                out.push(Piece { lo, hi, law });
            }
        };
        match &self.kind {
            PotentialKind::Zero | PotentialKind::DiracDelta { .. } => {
                push(0.0, x_end, Law::Constant(0.0))
            }
            &PotentialKind::SquareWell { height, width } => {
                push(0.0, width, Law::Constant(height));
                push(width, x_end, Law::Constant(0.0));
            }
            PotentialKind::Tabulated { grid, values } => {
                push(0.0, grid[0], Law::Constant(0.0));
                for i in 1..grid.len() {
                    if grid[i - 1] >= x_end {
                        break;
                    }
                    let slope = (values[i] - values[i - 1]) / (grid[i] - grid[i - 1]);
                    let law = if slope == 0.0 {
                        Law::Constant(values[i - 1])
                    } else {
                        Law::Linear {
                            x0: grid[i - 1],
                            v0: values[i - 1],
                            slope,
                        }
                    };
                    push(grid[i - 1], grid[i], law);
                }
                push(grid[grid.len() - 1], x_end, Law::Constant(0.0));
            }
        }
        out
    }

    /// Point masses `(position, strength)` with positive strength.
    pub fn point_masses(&self) -> Vec<(f64, f64)> {
        match self.kind {
            PotentialKind::DiracDelta { strength, position } if strength > 0.0 => {
                vec![(position, strength)]
            }
            _ => Vec::new(),
        }
    }

    /// Multiplies the potential by `s >= 0`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        let kind = match &self.kind {
            PotentialKind::Zero => PotentialKind::Zero,
            &PotentialKind::SquareWell { height, width } => PotentialKind::SquareWell {
                height: height * s,
                width,
            },
            &PotentialKind::DiracDelta { strength, position } => PotentialKind::DiracDelta {
                strength: strength * s,
                position,
            },
            PotentialKind::Tabulated { grid, values } => PotentialKind::Tabulated {
                grid: grid.clone(),
                values: values.iter().map(|v| v * s).collect(),
            },
        };
        Self::new(kind)
    }
}

fn validate_tabulated(grid: &[f64], values: &[f64]) -> Result<(f64, Moments)> {
    if grid.len() < 2 {
        return Err(Error::Potential {
            field: "grid",
            reason: format!("at least two grid points are required; got {}", grid.len()),
        });
    }
    if values.len() != grid.len() {
        return Err(Error::Potential {
            field: "values",
            reason: format!(
                "expected {} values to match the grid, got {}",
                grid.len(),
                values.len()
            ),
        });
    }
    for &g in grid {
        check_finite("grid", g)?;
    }
    if grid[0] < 0.0 {
        return Err(Error::Potential {
            field: "grid",
            reason: format!("grid must start at x >= 0; got {}", grid[0]),
        });
    }
    if let Some(w) = grid.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::Potential {
            field: "grid",
            reason: format!("grid must be strictly increasing; {} is followed by {}", w[0], w[1]),
        });
    }
    for &v in values {
        check_non_negative("values", v)?;
    }

    let support = match values.iter().rposition(|&v| v > 0.0) {
        None => 0.0,
        Some(i) if i + 1 < grid.len() => grid[i + 1],
        Some(i) => grid[i],
    };

    let mut m = Moments::default();
    for i in 1..grid.len() {
        let (a, b) = (grid[i - 1], grid[i]);
        let (va, vb) = (values[i - 1], values[i]);
        let h = 0.5 * (b - a);
        m.m0 += h * (va + vb);
        m.m1 += h * (a * va + b * vb);
        m.m2 += h * (a * a * va + b * b * vb);
    }
    Ok((support, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn well() -> Potential {
        Potential::square_well(1.0, 1.0).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(Potential::zero().evaluate(1.0).unwrap(), 0.0);
        assert_eq!(well().evaluate(0.5).unwrap(), 1.0);
        assert_eq!(well().evaluate(2.0).unwrap(), 0.0);
    }

    #[test]
    fn evaluate_rejects_delta_and_negative_x() {
        let d = Potential::dirac_delta(1.0, 1.0).unwrap();
        let err = d.evaluate(0.5).unwrap_err();
        assert!(err.to_string().contains("distributional potential has no pointwise values"));
        assert!(matches!(well().evaluate(-0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn moments_examples() {
        assert_eq!(Potential::zero().moments(), Moments::default());
        let m = well().moments();
        assert_eq!((m.m0, m.m1), (1.0, 0.5));
        assert!((m.m2 - 1.0 / 3.0).abs() < 1e-16);
        let d = Potential::dirac_delta(2.0, 0.5).unwrap().moments();
        assert_eq!((d.m0, d.m1, d.m2), (2.0, 1.0, 0.5));
    }

    #[test]
    fn validate_examples() {
        let err = Potential::square_well(-1.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::Potential { field: "height", .. }));
        assert!(err.to_string().contains("non-negative"));

        let t = Potential::tabulated(vec![0.0, 1.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(t.moments().m0, 1.0);
        assert_eq!(t.support_radius(), 1.0);

        let d = Potential::dirac_delta(0.0, 1.0).unwrap();
        assert!(d.is_trivial());
        assert!(d.point_masses().is_empty());
    }

    #[test]
    fn tabulated_grid_must_increase() {
        let err = Potential::tabulated(vec![0.0, 1.0, 1.0], vec![1.0, 1.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::Potential { field: "grid", .. }));
        let err = Potential::tabulated(vec![0.0, 1.0], vec![1.0]).unwrap_err();
        assert!(matches!(err, Error::Potential { field: "values", .. }));
        let err = Potential::tabulated(vec![0.0, 1.0], vec![1.0, -2.0]).unwrap_err();
        assert!(matches!(err, Error::Potential { field: "values", .. }));
    }

    #[test]
    fn tabulated_support_ends_after_last_nonzero_sample() {
        let t = Potential::tabulated(vec![0.0, 1.0, 2.0, 3.0], vec![0.0, 2.0, 0.0, 0.0]).unwrap();
        assert_eq!(t.support_radius(), 2.0);
        assert_eq!(t.evaluate(0.5).unwrap(), 1.0);
        assert_eq!(t.evaluate(1.5).unwrap(), 1.0);
        assert_eq!(t.evaluate(2.5).unwrap(), 0.0);
        assert!((t.tail_mass(0.0) - 2.0).abs() < 1e-15);
        assert!((t.tail_mass(1.5) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn support_invariant_holds_for_every_kind() {
        let pots = [
            Potential::zero(),
            well(),
            Potential::dirac_delta(3.0, 0.7).unwrap(),
            Potential::tabulated(vec![0.5, 1.0, 1.7], vec![1.0, 3.0, 2.0]).unwrap(),
        ];
        for p in &pots {
            let r = p.support_radius();
            for x in [r, r + 0.1, r + 10.0] {
                assert_eq!(p.tail_mass(x), 0.0);
                if !matches!(p.kind(), PotentialKind::DiracDelta { .. }) {
                    assert_eq!(p.evaluate(x).unwrap(), 0.0);
                }
            }
            assert_eq!(p.validate().unwrap(), *p);
        }
    }

    #[test]
    fn scaling_scales_moments() {
        let m = well().scaled(2.5).unwrap().moments();
        assert_eq!((m.m0, m.m1), (2.5, 1.25));
        let d = Potential::dirac_delta(2.0, 0.5).unwrap().scaled(3.0).unwrap().moments();
        assert_eq!((d.m0, d.m1, d.m2), (6.0, 3.0, 1.5));
    }

    #[test]
    fn json_round_trip_and_field_errors() {
        let p = Potential::from_json(r#"{"kind": "square_well", "height": 1.0, "width": 1.0}"#)
            .unwrap();
        assert_eq!(p, well());
        assert_eq!(Potential::from_json(&p.to_json()).unwrap(), p);
        assert!(Potential::from_json(r#"{"kind":"zero"}"#).unwrap().is_trivial());

        let err = Potential::from_json(r#"{"kind": "square_well", "height": 1.0}"#).unwrap_err();
        assert!(err.to_string().contains("width"), "{err}");
        let err = Potential::from_json(r#"{"kind": "dirac_delta", "strength": -1, "position": 1}"#)
            .unwrap_err();
        assert!(err.to_string().contains("strength"), "{err}");
        let err = Potential::from_json(r#"{"kind": "coulomb"}"#).unwrap_err();
        assert!(err.to_string().contains("coulomb"), "{err}");
    }

    #[test]
    fn pieces_split_at_discontinuities() {
        let p = well().pieces(3.0);
        assert_eq!(p.len(), 2);
        assert_eq!((p[0].lo, p[0].hi, p[0].law), (0.0, 1.0, Law::Constant(1.0)));
        assert_eq!((p[1].lo, p[1].hi), (1.0, 3.0));
        assert!(p[1].law.is_zero());

        let short = well().pieces(0.5);
        assert_eq!(short.len(), 1);
        assert_eq!(short[0].hi, 0.5);
    }
}
