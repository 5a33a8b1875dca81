//! Scalar maximization on an interval.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of a unimodal `f` on `[a, b]`.
/// Returns `(x, f(x))` once the bracket is narrower than `tol`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Evaluates `f` on `scan_points` equally spaced points of `[a, b]`, then
/// refines around the best interior point with [`golden_section_max`].
///
/// Fails if the best scan point is an endpoint.
pub fn scan_then_golden(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    scan_points: usize,
    tol: f64,
) -> Result<(f64, f64)> {
    if scan_points < 3 {
        return Err(Error::InvalidArgument(
            "scan needs at least 3 points".into(),
        ));
    }
    let step = (b - a) / (scan_points - 1) as f64;
    let values: Vec<f64> = (0..scan_points).map(|i| f(a + step * i as f64)).collect();
    let best = values
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    if best == 0 || best == scan_points - 1 {
        return Err(Error::BracketFailure { lo: a, hi: b });
    }
    let lo = a + step * (best - 1) as f64;
    let hi = a + step * (best + 1) as f64;
    Ok(golden_section_max(f, lo, hi, tol))
}
