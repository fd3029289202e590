//! Reference values computed without the Prüfer integrator: exact
//! solutions of `-u'' + V u = k² u`, a finite-difference eigensolver and
//! composite Simpson quadrature.

#![allow(dead_code)]

use std::f64::consts::PI;

/// `(θ, ln ρ)` at `x ≥ 0` for the barrier `height` on `[0, width)`, from the
/// explicit solution with `u(0) = 0`, `u'(0) = k`.
pub fn well_state(height: f64, width: f64, k: f64, x: f64) -> (f64, f64) {
    let inside = x.min(width);
    let e = k * k;
    let (theta, u, du) = if e > height {
        // θ = jπ exactly where qx = jπ; within one such cell the angle of
        // (k u, u') equals that of ((k/q) sin r, cos r) with r = qx - jπ
        let q = (e - height).sqrt();
        let phase = q * inside;
        let j = (phase / PI).floor();
        let r = phase - j * PI;
        let theta = j * PI + (k / q * r.sin()).atan2(r.cos());
        (theta, k / q * phase.sin(), k * phase.cos())
    } else if e < height {
        let kappa = (height - e).sqrt();
        let (u, du) = (k / kappa * (kappa * inside).sinh(), k * (kappa * inside).cosh());
        ((k * u).atan2(du), u, du)
    } else {
        let u = k * inside;
        ((k * u).atan2(k), u, k)
    };
    let log_rho = 0.5 * (u * u + (du / k).powi(2)).ln();
    (theta + k * (x - inside), log_rho)
}

/// `δ(k)` of the square barrier.
pub fn well_delta(height: f64, width: f64, k: f64) -> f64 {
    well_state(height, width, k, width).0 - k * width
}

/// `δ(k)` for `c δ(x - p)` from matching `sin(kx)` to `A sin(kx + δ)` with
/// `u'(p⁺) - u'(p⁻) = c u(p)`.
pub fn dirac_delta(c: f64, p: f64, k: f64) -> f64 {
    let (s, co) = (k * p).sin_cos();
    (-(c / k) * s * s).atan2(1.0 + (c / k) * s * co)
}

/// `(θ, ln ρ)` at `x` for `c δ(· - p)` using `cot θ⁺ = cot θ⁻ + c/k` on
/// the branch containing `θ⁻`.
pub fn dirac_state(c: f64, p: f64, k: f64, x: f64) -> (f64, f64) {
    if x <= p {
        return (k * x, 0.0);
    }
    let before = k * p;
    let j = (before / PI).floor();
    let (s, co) = before.sin_cos();
    let after = if s.abs() < 1e-300 {
        before
    } else {
        j * PI + (PI / 2.0 - (co / s + c / k).atan())
    };
    let log_rho = 0.5 * (s * s + (co + c / k * s).powi(2)).ln();
    (after + k * (x - p), log_rho)
}

/// Composite Simpson rule with `panels` (even) subintervals.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels.is_multiple_of(2));
    let h = (b - a) / panels as f64;
    let mut sum = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// `-(2/π) ∫₀^{√E} s δ(s) ds` by Simpson on `10⁴` panels.
pub fn fumi<F: Fn(f64) -> f64>(delta: F, energy: f64) -> f64 {
    let integrand = |s: f64| if s == 0.0 { 0.0 } else { s * delta(s) };
    -2.0 / PI * simpson(integrand, 0.0, energy.sqrt(), 10_000)
}

/// Bisection for an increasing function.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    assert!(f(lo) <= 0.0 && f(hi) >= 0.0, "not bracketed");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `k` with `kL + δ(k) = nπ` for a phase shift in `(-π, 0]`.
pub fn quantized_root<F: Fn(f64) -> f64>(delta: F, n: usize, length: f64) -> f64 {
    let target = n as f64 * PI;
    let lo = target / length;
    bisect(|k| k * length + delta(k) - target, lo, lo + PI / length)
}

/// Lowest `count` Dirichlet eigenvalues of `-d²/dx² + V` on `(0, L)` by
/// second-order central differences with `per_unit` nodes per unit length.
/// `diag(x)` returns the potential contribution at node `x`; point masses
/// enter as `c / h` at their node.
pub fn fd_eigenvalues<F: Fn(f64, f64) -> f64>(diag: &F, length: f64, per_unit: usize, count: usize) -> Vec<f64> {
    let steps = (length * per_unit as f64).round() as usize;
    let h = length / steps as f64;
    let inv = 1.0 / (h * h);
    let d: Vec<f64> = (1..steps)
        .map(|i| 2.0 * inv + diag(i as f64 * h, h))
        .collect();
    // eigenvalues below λ via the LDLᵀ inertia
    let below = |lambda: f64| -> usize {
        let mut neg = 0;
        let mut pivot = 1.0;
        for (i, &di) in d.iter().enumerate() {
            pivot = if i == 0 { di - lambda } else { di - lambda - inv * inv / pivot };
            if pivot == 0.0 {
                pivot = -1e-300;
            }
            if pivot < 0.0 {
                neg += 1;
            }
        }
        neg
    };
    let upper = d.iter().fold(0.0f64, |m, &x| m.max(x)) + 2.0 * inv;
    (1..=count)
        .map(|n| {
            let (mut lo, mut hi) = (0.0, upper);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if below(mid) >= n {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Richardson combination of grids `per_unit` and `2 per_unit`.
pub fn fd_eigenvalues_extrapolated<F: Fn(f64, f64) -> f64>(
    diag: &F,
    length: f64,
    per_unit: usize,
    count: usize,
) -> Vec<f64> {
    let coarse = fd_eigenvalues(diag, length, per_unit, count);
    let fine = fd_eigenvalues(diag, length, 2 * per_unit, count);
    coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect()
}

/// Diagonal term of the barrier; the node on the jump gets the mean value.
pub fn well_diag(height: f64, width: f64) -> impl Fn(f64, f64) -> f64 {
    move |x, _h| {
        if (x - width).abs() < 1e-12 {
            0.5 * height
        } else if x < width {
            height
        } else {
            0.0
        }
    }
}

pub fn dirac_diag(c: f64, p: f64) -> impl Fn(f64, f64) -> f64 {
    move |x, h| if (x - p).abs() < 1e-12 { c / h } else { 0.0 }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.abs().ln()).collect();
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}
