//! Legendre `P_l` and Jacobi `P_l^(0,1)` polynomials and their largest zeros.

use crate::error::{Error, Result};

use super::bessel::J0_FIRST_ZERO;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyKind {
    Legendre,
    /// Jacobi polynomials with `alpha = 0`, `beta = 1`.
    Jacobi01,
}

impl PolyKind {
    pub fn eval(self, l: usize, x: f64) -> f64 {
        match self {
            PolyKind::Legendre => legendre_eval(l, x),
            PolyKind::Jacobi01 => jacobi01_eval(l, x),
        }
    }

    fn eval_with_derivative(self, l: usize, x: f64) -> (f64, f64) {
        match self {
            PolyKind::Legendre => legendre_with_derivative(l, x),
            PolyKind::Jacobi01 => jacobi01_with_derivative(l, x),
        }
    }

    /// Shift `rho` in the Bessel-type estimate `theta_1 ~ j_{0,1} / (l + rho)`.
    fn angle_shift(self) -> f64 {
        match self {
            PolyKind::Legendre => 0.5,
            PolyKind::Jacobi01 => 1.0,
        }
    }
}

/// `P_l(x)` by the Bonnet recursion.
pub fn legendre_eval(l: usize, x: f64) -> f64 {
    legendre_pair(l, x).0
}

/// Returns `(P_l(x), P_{l-1}(x))`, with `P_{-1} := 0`.
fn legendre_pair(l: usize, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 1..=l {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * cur - (kf - 1.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

pub(crate) fn legendre_with_derivative(l: usize, x: f64) -> (f64, f64) {
    let (p, pm1) = legendre_pair(l, x);
    let lf = l as f64;
    let one_minus_x2 = 1.0 - x * x;
    let d = if one_minus_x2.abs() < 1e-300 {
        let edge = 0.5 * lf * (lf + 1.0);
        if x > 0.0 || l % 2 == 1 {
            edge
        } else {
            -edge
        }
    } else {
        lf * (pm1 - x * p) / one_minus_x2
    };
    (p, d)
}

/// `P_l^(0,1)(x)` by the three-term recursion
/// `(n+1)(2n-1) P_n = ((4n^2-1) x - 1) P_{n-1} - (n-1)(2n+1) P_{n-2}`.
pub fn jacobi01_eval(l: usize, x: f64) -> f64 {
    jacobi01_pair(l, x).0
}

fn jacobi01_pair(l: usize, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for n in 1..=l {
        let nf = n as f64;
        let next = (((4.0 * nf * nf - 1.0) * x - 1.0) * cur - (nf - 1.0) * (2.0 * nf + 1.0) * prev)
            / ((nf + 1.0) * (2.0 * nf - 1.0));
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

fn jacobi01_with_derivative(l: usize, x: f64) -> (f64, f64) {
    let (p, pm1) = jacobi01_pair(l, x);
    let n = l as f64;
    let one_minus_x2 = 1.0 - x * x;
    let d = if l == 0 {
        0.0
    } else if one_minus_x2.abs() < 1e-300 {
        // (n+2)/2 * P_{n-1}^(1,2)(±1)
        if x > 0.0 {
            0.5 * (n + 2.0) * n
        } else {
            let sign = if l % 2 == 1 { 1.0 } else { -1.0 };
            sign * 0.25 * (n + 2.0) * n * (n + 1.0)
        }
    } else {
        (n * (-1.0 - (2.0 * n + 1.0) * x) * p + 2.0 * n * (n + 1.0) * pm1)
            / ((2.0 * n + 1.0) * one_minus_x2)
    };
    (p, d)
}

/// General Jacobi `P_n^(a,b)(x)` for integer `a, b >= 0`, by the standard
/// three-term recursion.
pub(crate) fn jacobi_eval(n: usize, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let next = ((s - 1.0) * (s * (s - 2.0) * x + a * a - b * b) * cur
            - 2.0 * (k + a - 1.0) * (k + b - 1.0) * s * prev)
            / (2.0 * k * (k + a + b) * (s - 2.0));
        prev = cur;
        cur = next;
    }
    cur
}

const MAX_NEWTON_ITERATIONS: usize = 200;

/// Largest zero of `P_l` or `P_l^(0,1)`, `l >= 1`.
///
/// Newton iteration started to the right of the root, where a real-rooted
/// polynomial is convex and the iterates decrease monotonically. The start is
/// `cos(0.9 * j_{0,1} / (l + rho))`, which lies above the root because the
/// largest zero's angle exceeds `j_{0,1} / sqrt((l + rho)^2 + 1/4)`. Any
/// iterate that lands on the wrong side of the root shrinks a bracket and the
/// step falls back to bisection.
pub fn largest_zero(kind: PolyKind, l: usize) -> Result<f64> {
    if l == 0 {
        return Err(Error::InvalidArgument(
            "polynomial degree must be at least 1".into(),
        ));
    }
    let angle = 0.9 * J0_FIRST_ZERO / (l as f64 + kind.angle_shift());
    let mut hi = angle.min(std::f64::consts::FRAC_PI_2).cos();
    // Both families are positive at x = 1; walk up until we are right of the root.
    while kind.eval(l, hi) <= 0.0 {
        hi = 0.5 * (hi + 1.0);
    }
    let mut lo: f64 = -1.0;
    let mut x = hi;
    for _ in 0..MAX_NEWTON_ITERATIONS {
        let (p, dp) = kind.eval_with_derivative(l, x);
        if p == 0.0 {
            return Ok(x);
        }
        if p > 0.0 {
            hi = hi.min(x);
        } else {
            lo = lo.max(x);
        }
        let newton = x - p / dp;
        let tol = 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE);
        if newton.is_finite() && (newton - x).abs() <= tol {
            return Ok(newton);
        }
        let next = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= tol {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NoConvergence {
        what: "largest polynomial zero",
        iterations: MAX_NEWTON_ITERATIONS,
    })
}
