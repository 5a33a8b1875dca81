//! Maximal fidelities.
//!
//! For codes restricted to rotations of one state, the fidelity with the
//! generalized decoder is `F = 1/2 + 1/2 A^T M A` with `M` the tridiagonal
//! matrix from [`build_m`], so the optimum is `(1 + x_l)/2` where `x_l` is
//! the top eigenvalue of `M`. That eigenvalue is also the largest zero of
//! `P_l` (even `N`) or `P_l^(0,1)` (odd `N`), giving a second route.

use crate::codes::{Encoding, MultiRepState, SphereGrid};
use crate::error::{Error, Result};
use crate::numerics::{largest_zero, tridiag_max_eigenpair, PolyKind, Tridiag};
use crate::su2::Direction;
use crate::{Ket, C64};

/// `l = N/2 + 1 - S_n`, the number of irreps in the truncated code space.
pub fn matrix_size(nspins: usize) -> usize {
    nspins / 2 + 1
}

/// Tridiagonal `M` for `N` spins. Row 0 belongs to `S = N/2` (index `k = l`),
/// the last row to `S = S_n` (`k = 1`).
///
/// Even `N`: `d_k = 0`, `c_k = k / sqrt(4k^2 - 1)`.
/// Odd `N`: `d_k = 1/(4k^2 - 1)`, `c_k = sqrt(k(k+1)) / (2k + 1)`.
pub fn build_m(nspins: usize) -> Result<Tridiag> {
    if nspins == 0 {
        return Err(Error::InvalidArgument("need at least one spin".into()));
    }
    let l = matrix_size(nspins);
    let even = nspins.is_multiple_of(2);
    let d = |k: usize| {
        let k = k as f64;
        if even {
            0.0
        } else {
            1.0 / (4.0 * k * k - 1.0)
        }
    };
    let c = |k: usize| {
        let k = k as f64;
        if even {
            k / (4.0 * k * k - 1.0).sqrt()
        } else {
            (k * (k + 1.0)).sqrt() / (2.0 * k + 1.0)
        }
    };
    let diag = (0..l).map(|r| d(l - r)).collect();
    let offdiag = (0..l - 1).map(|r| c(l - 1 - r)).collect();
    Tridiag::new(diag, offdiag)
}

/// Optimal restricted fidelity from a given `M`, with the maximizing code.
/// Eigenvector entries (nonnegative) become `A_S`, top row first.
pub fn fidelity_from_matrix(m: &Tridiag, nspins: usize) -> Result<(f64, MultiRepState)> {
    let (top, vector) = tridiag_max_eigenpair(m)?;
    let coeffs = vector
        .iter()
        .map(|&a| C64::new(a.max(0.0), 0.0))
        .collect::<Vec<_>>();
    let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let coeffs = coeffs.into_iter().map(|c| c / norm).collect();
    Ok((0.5 * (1.0 + top), MultiRepState::new(nspins, coeffs)?))
}

/// Maximal fidelity of rotation-only encodings of `N` spins, and the optimal code.
pub fn max_fidelity_rotation(nspins: usize) -> Result<(f64, MultiRepState)> {
    fidelity_from_matrix(&build_m(nspins)?, nspins)
}

/// Same optimum through the largest zero of the Legendre (even `N`) or
/// Jacobi `(0,1)` (odd `N`) polynomial of degree `l`.
pub fn max_fidelity_polynomial(nspins: usize) -> Result<f64> {
    if nspins == 0 {
        return Err(Error::InvalidArgument("need at least one spin".into()));
    }
    let kind = if nspins.is_multiple_of(2) {
        PolyKind::Legendre
    } else {
        PolyKind::Jacobi01
    };
    Ok(0.5 * (1.0 + largest_zero(kind, matrix_size(nspins))?))
}

/// `d / (d + 1)`, the best fidelity of any `d`-dimensional encoding.
pub fn fidelity_optimal(d: u64) -> f64 {
    assert!(d >= 2, "channel dimension must be at least 2");
    d as f64 / (d as f64 + 1.0)
}

/// [`fidelity_optimal`] at `d = 2^N`, written as `1/(1 + 2^-N)` so large `N` stays finite.
pub fn fidelity_optimal_qubits(nspins: usize) -> f64 {
    1.0 / (1.0 + (-(nspins as f64)).exp2())
}

/// `(N + 1)/(N + 2)` for `N` parallel spins.
pub fn fidelity_parallel(nspins: usize) -> f64 {
    (nspins as f64 + 1.0) / (nspins as f64 + 2.0)
}

/// `D int dn (1 + n.z)/2 |<A(n)|B(z)>|^2` on a product grid.
///
/// Rotational covariance of code and decoder makes the single decoder
/// direction `z` stand for the full continuous POVM. The grid must have at
/// least `2 S_max + 2` nodes in each angle, which makes the result exact.
pub fn fidelity_quadrature(code: &dyn Encoding, decoder_z: &Ket, grid: &SphereGrid) -> Result<f64> {
    let space = code.space();
    let need = space.max_spin().twice() as usize + 2;
    grid.require(need, need, "fidelity quadrature")?;
    if decoder_z.len() != space.dim() {
        return Err(Error::InvalidArgument(
            "decoder and code dimensions differ".into(),
        ));
    }
    let d = space.dim() as f64;
    let total: f64 = grid
        .points()
        .iter()
        .map(|(n, w)| {
            let overlap = code.encode(n).dotc(decoder_z).norm_sqr();
            w * 0.5 * (1.0 + n.to_cartesian()[2]) * overlap
        })
        .sum();
    Ok(d * total)
}

/// [`fidelity_quadrature`] with the code's own matched decoder on the smallest exact grid.
pub fn fidelity_matched(code: &dyn Encoding) -> Result<f64> {
    let grid = SphereGrid::exact_for(code.space().max_spin());
    fidelity_quadrature(code, &code.decoder(&Direction::z()), &grid)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticRow {
    pub nspins: usize,
    pub fidelity: f64,
    /// `N^2 (1 - F)`, which tends to the square of the first zero of `J0`.
    pub scaled_gap: f64,
}

/// Polynomial-route fidelities for `N = 1..=max_n`.
pub fn asymptotic_table(max_n: usize) -> Result<Vec<AsymptoticRow>> {
    if max_n < 10 {
        return Err(Error::InvalidArgument(format!("max_n = {max_n} < 10")));
    }
    (1..=max_n)
        .map(|n| {
            let f = max_fidelity_polynomial(n)?;
            let nf = n as f64;
            Ok(AsymptoticRow {
                nspins: n,
                fidelity: f,
                scaled_gap: nf * nf * (1.0 - f),
            })
        })
        .collect()
}
