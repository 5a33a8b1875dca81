//! Numerics for encoding a direction in the state of N spin-1/2 systems.
//!
//! The crate computes the optimal fidelity `d/(d+1)` of a `d`-dimensional
//! spin channel, the best fidelity reachable when the sender may only apply
//! spatial rotations (largest eigenvalue of a tridiagonal matrix, equivalently
//! the largest zero of a Legendre or Jacobi polynomial), the decoding POVMs
//! that attain them, and the information gain of those strategies.
//!
//! Modules, bottom-up:
//!
//! - [`numerics`]: quadrature, orthogonal polynomials, eigensolvers, Bessel `J0`.
//! - [`su2`]: half-integer spins, Wigner `d`, spin operators, rotated states.
//! - [`codes`]: encodings, decoder states, source density matrices.
//! - [`fidelity`]: restricted and unrestricted maximal fidelities.
//! - [`povm`]: finite POVMs, identity checks, Monte Carlo simulation.
//! - [`infogain`]: average information gain and its maximization.

#![forbid(unsafe_code)]

pub mod codes;
pub mod error;
pub mod fidelity;
pub mod infogain;
pub mod numerics;
pub mod povm;
pub mod su2;

pub use nalgebra::Complex;

pub use codes::{
    AlphaFamily, CodeSpace, CoherentCode, DensityMatrix, Encoding, MultiRepState, SphereGrid,
};
pub use error::{Error, Result};
pub use numerics::{Quadrature1D, Tridiag};
pub use povm::{FinitePovm, PovmElement};
pub use su2::{Direction, HalfInt, SpinKet};

/// Complex double used for every amplitude in the crate.
pub type C64 = Complex<f64>;
/// Dense complex column vector (a ket in some code space).
pub type Ket = nalgebra::DVector<C64>;
/// Dense complex square matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
