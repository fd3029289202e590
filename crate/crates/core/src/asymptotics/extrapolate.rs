use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitModel {
    /// Last value; error is the spread of the last two.
    Plain,
    /// Least-squares fit of `x(L) = x∞ + c/L` on the last three points.
    Richardson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extrapolation {
    pub limit: f64,
    pub error: f64,
}

/// Estimates `lim_{L→∞} x(L)` from `(L, x)` samples with increasing `L`.
pub fn extrapolate_limit(values: &[(f64, f64)], model: LimitModel) -> Result<Extrapolation> {
    if values.len() < 3 {
        return Err(Error::Input(format!(
            "extrapolation needs at least 3 points; got {}",
            values.len()
        )));
    }
    if let Some(w) = values.windows(2).find(|w| !(w[1].0 > w[0].0)) {
        return Err(Error::Input(format!(
            "L must be strictly increasing; {} is followed by {}",
            w[0].0, w[1].0
        )));
    }
    let n = values.len();
    match model {
        LimitModel::Plain => Ok(Extrapolation {
            limit: values[n - 1].1,
            error: (values[n - 1].1 - values[n - 2].1).abs(),
        }),
        LimitModel::Richardson => {
            let tail = &values[n - 3..];
            let (limit, slope) = fit_inverse_length(tail);
            let residual = tail
                .iter()
                .map(|&(l, x)| (x - limit - slope / l).abs())
                .fold(0.0, f64::max);
            // exact two-point elimination on the last pair
            let (l1, x1) = tail[1];
            let (l2, x2) = tail[2];
            let two_point = (l2 * x2 - l1 * x1) / (l2 - l1);
            Ok(Extrapolation {
                limit,
                error: residual.max((two_point - limit).abs()),
            })
        }
    }
}

/// Least squares for `x = a + b/L`.
fn fit_inverse_length(points: &[(f64, f64)]) -> (f64, f64) {
    let m = points.len() as f64;
    let (mut su, mut suu, mut sx, mut sux) = (0.0, 0.0, 0.0, 0.0);
    for &(l, x) in points {
        let u = 1.0 / l;
        su += u;
        suu += u * u;
        sx += x;
        sux += u * x;
    }
    let det = m * suu - su * su;
    let slope = (m * sux - su * sx) / det;
    let intercept = (sx - slope * su) / m;
    (intercept, slope)
}
