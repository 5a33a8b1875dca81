//! Bessel `J0`, `J1` and the first positive zero of `J0`.

use crate::error::{Error, Result};

/// First positive zero of `J0`; [`bessel_j0_first_zero`] recomputes it.
pub(crate) const J0_FIRST_ZERO: f64 = 2.404_825_557_695_773;

const SERIES_LIMIT: f64 = 8.0;

/// `J0(x)`. Power series for `|x| <= 8`, Hankel asymptotic expansion beyond.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= SERIES_LIMIT {
        series(x, 0)
    } else {
        hankel(x, 0)
    }
}

/// `J1(x)`, same regimes as [`bessel_j0`].
pub fn bessel_j1(x: f64) -> f64 {
    let sign = x.signum();
    let x = x.abs();
    sign * if x <= SERIES_LIMIT {
        series(x, 1)
    } else {
        hankel(x, 1)
    }
}

fn series(x: f64, order: u32) -> f64 {
    let q = -0.25 * x * x;
    let mut term = if order == 0 { 1.0 } else { 0.5 * x };
    let mut sum = term;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * (kf + order as f64));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn hankel(x: f64, order: u32) -> f64 {
    let mu = 4.0 * (order * order) as f64;
    let z8 = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        let next = term * (mu - (2.0 * kf - 1.0).powi(2)) / (kf * z8);
        // Asymptotic series: stop at the smallest term.
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        if k % 2 == 1 {
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            q += sign * term;
        } else {
            let sign = if (k / 2) % 2 == 1 { -1.0 } else { 1.0 };
            p += sign * term;
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (0.5 * order as f64 + 0.25) * std::f64::consts::PI;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// First positive zero of `J0`, by Newton iteration (`J0' = -J1`) from 2.4.
pub fn bessel_j0_first_zero() -> Result<f64> {
    let mut x = 2.4;
    for _ in 0..50 {
        let step = bessel_j0(x) / bessel_j1(x);
        x += step;
        if step.abs() < 1e-15 * x {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence {
        what: "J0 first zero",
        iterations: 50,
    })
}
