//! Double-precision kernels shared by the physics modules.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod hermitian;
mod optimize;
mod poly;
mod quadrature;
mod tridiag;

pub use bessel::{bessel_j0, bessel_j0_first_zero, bessel_j1};
pub use hermitian::{hermitian_eigensystem, unitary_exp, HermitianEigen};
pub use optimize::{golden_section_max, scan_then_golden};
pub(crate) use poly::jacobi_eval;
pub use poly::{jacobi01_eval, largest_zero, legendre_eval, PolyKind};
pub use quadrature::{gauss_legendre, Quadrature1D};
pub use tridiag::{tridiag_max_eigenpair, tridiag_max_eigenvalue, Tridiag};

/// Shannon entropy in bits of a spectrum; entries at or below zero contribute nothing.
pub fn entropy_bits(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}
