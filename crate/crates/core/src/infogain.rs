//! Average information gain of continuous decoding measurements.
//!
//! With the outcome density `p(n) = d |<A(n)|B(z)>|^2` (which averages to 1
//! over the sphere), the regularized gain is `int dn p log2 p`.

use std::f64::consts::{FRAC_PI_2, LOG2_E};

use crate::codes::{AlphaFamily, Encoding, SphereGrid};
use crate::error::{Error, Result};
use crate::numerics::scan_then_golden;
use crate::su2::Direction;
use crate::Ket;

const NORMALIZATION_TOL: f64 = 1e-8;
const AGREEMENT_TOL: f64 = 1e-8;
const BASE_ORDER: usize = 64;
const MAX_ORDER: usize = 8192;
const ALPHA_SCAN_POINTS: usize = 64;

/// `log2 d - (1 - 1/d) log2 e` for the optimal `d`-dimensional code.
pub fn info_gain_closed_dim(d: f64) -> f64 {
    d.log2() - (1.0 - 1.0 / d) * LOG2_E
}

/// Gain of the optimal code on `N` qubits: `N - (1 - 2^-N) log2 e`.
pub fn info_gain_closed(nspins: usize) -> f64 {
    nspins as f64 - (1.0 - (-(nspins as f64)).exp2()) * LOG2_E
}

/// `int dn p log2 p` with `theta_order` Gauss-Legendre nodes.
///
/// Fails if `int dn p` differs from 1 by more than `1e-8`.
pub fn info_gain_quadrature(
    code: &dyn Encoding,
    decoder_z: &Ket,
    theta_order: usize,
) -> Result<f64> {
    let space = code.space();
    if decoder_z.len() != space.dim() {
        return Err(Error::InvalidArgument(
            "decoder and code dimensions differ".into(),
        ));
    }
    let phi_count = space.max_spin().twice() as usize + 2;
    let grid = SphereGrid::new(theta_order, phi_count)?;
    let d = space.dim() as f64;
    let mut mass = 0.0;
    let mut gain = 0.0;
    for (n, w) in grid.points() {
        let p = d * code.encode(n).dotc(decoder_z).norm_sqr();
        mass += w * p;
        // p ln p - p + 1 integrates to the same value once int p = 1, and is
        // nonnegative pointwise, so rounding cannot push the gain below zero.
        let u = p - 1.0;
        let excess = if p <= 0.0 {
            1.0
        } else if p < 0.5 {
            p * p.ln() - u
        } else {
            p * u.ln_1p() - u
        };
        gain += w * excess.max(0.0);
    }
    if (mass - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::Normalization {
            what: "outcome density",
            deviation: mass - 1.0,
        });
    }
    Ok(gain * LOG2_E)
}

/// [`info_gain_quadrature`] at order 64 confirmed against order 96; both
/// orders double until the two agree within `1e-8`.
pub fn info_gain_adaptive(code: &dyn Encoding, decoder_z: &Ket) -> Result<f64> {
    let mut order = BASE_ORDER;
    while order <= MAX_ORDER {
        let coarse = info_gain_quadrature(code, decoder_z, order)?;
        let fine = info_gain_quadrature(code, decoder_z, order + order / 2)?;
        if (fine - coarse).abs() <= AGREEMENT_TOL {
            return Ok(fine);
        }
        order *= 2;
    }
    Err(Error::NoConvergence {
        what: "information gain quadrature",
        iterations: MAX_ORDER,
    })
}

/// Gain of the code itself with its matched decoder along `z`.
pub fn info_gain_matched(code: &dyn Encoding) -> Result<f64> {
    info_gain_adaptive(code, &code.decoder(&Direction::z()))
}

/// Gain of the two-qubit family at `(alpha, beta)` with its matched decoder.
pub fn info_gain_alpha(alpha: f64, beta: f64) -> Result<f64> {
    info_gain_matched(&AlphaFamily::new(alpha, beta)?.to_state())
}

/// Maximizes the two-qubit family's gain over `alpha` in `[0, pi/2]` at
/// `beta = 0`: a 64-point scan, then golden-section refinement to `tol`.
/// Returns `(alpha, gain)`.
pub fn maximize_alpha(tol: f64) -> Result<(f64, f64)> {
    if !(tol > 0.0 && tol <= 1e-4) {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tol} must be in (0, 1e-4]"
        )));
    }
    let eval =
        |alpha: f64| info_gain_alpha(alpha.clamp(0.0, FRAC_PI_2), 0.0).unwrap_or(f64::NEG_INFINITY);
    scan_then_golden(eval, 0.0, FRAC_PI_2, ALPHA_SCAN_POINTS, tol)
}

/// `(alpha / pi, gain)` on `points` evenly spaced values of `alpha` in `[0, pi/2]`.
pub fn alpha_scan(points: usize) -> Result<Vec<(f64, f64)>> {
    if points < 2 {
        return Err(Error::InvalidArgument(
            "scan needs at least 2 points".into(),
        ));
    }
    (0..points)
        .map(|i| {
            let alpha = FRAC_PI_2 * i as f64 / (points - 1) as f64;
            Ok((alpha / std::f64::consts::PI, info_gain_alpha(alpha, 0.0)?))
        })
        .collect()
}
