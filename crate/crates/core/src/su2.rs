//! SU(2) representation kernels.
//!
//! Conventions used throughout the crate:
//!
//! - Basis vectors of spin `S` are ordered by descending projection,
//!   `m = S, S-1, ..., -S`, so the highest-weight state is amplitude 0.
//! - A direction `n = (theta, phi)` is reached by the active rotation
//!   `R(n) = exp(-i phi S_z) exp(-i theta S_y)`, and
//!   `|S, m n> := R(n) |S, m z>`. Hence `<S, m n | S, m z> = e^{i m phi} d^S_{mm}(theta)`.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numerics::{entropy_bits, hermitian_eigensystem, jacobi_eval};
use crate::{CMatrix, Ket, C64};

/// Half-integer quantum number, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };
    pub const THREE_HALVES: HalfInt = HalfInt { twice: 3 };

    pub const fn from_twice(twice: i32) -> Self {
        Self { twice }
    }

    pub const fn from_int(value: i32) -> Self {
        Self { twice: 2 * value }
    }

    pub const fn twice(self) -> i32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        0.5 * self.twice as f64
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// `2S + 1` for a spin magnitude.
    pub fn multiplicity(self) -> usize {
        debug_assert!(self.twice >= 0);
        (self.twice + 1) as usize
    }

    /// Projections `S, S-1, ..., -S` in basis order.
    pub fn projections(self) -> impl Iterator<Item = HalfInt> {
        let s = self.twice;
        (0..=s).map(move |k| HalfInt::from_twice(s - 2 * k))
    }

    /// Basis index of projection `m` within spin `self`.
    pub fn index_of(self, m: HalfInt) -> usize {
        debug_assert!(m.twice.abs() <= self.twice && (self.twice - m.twice) % 2 == 0);
        ((self.twice - m.twice) / 2) as usize
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Unit vector on the sphere in polar angles (radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    /// `theta` must lie in `[0, pi]`; `phi` is wrapped into `[0, 2 pi)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) || !phi.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "bad polar angles ({theta}, {phi})"
            )));
        }
        Ok(Self {
            theta,
            phi: phi.rem_euclid(std::f64::consts::TAU),
        })
    }

    pub fn from_cartesian(x: f64, y: f64, z: f64) -> Result<Self> {
        let r = (x * x + y * y + z * z).sqrt();
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidArgument("zero or non-finite vector".into()));
        }
        let theta = (z / r).clamp(-1.0, 1.0).acos();
        let phi = if x == 0.0 && y == 0.0 {
            0.0
        } else {
            y.atan2(x)
        };
        Self::new(theta, phi)
    }

    pub fn z() -> Self {
        Self {
            theta: 0.0,
            phi: 0.0,
        }
    }

    pub fn x() -> Self {
        Self {
            theta: std::f64::consts::FRAC_PI_2,
            phi: 0.0,
        }
    }

    pub fn y() -> Self {
        Self {
            theta: std::f64::consts::FRAC_PI_2,
            phi: std::f64::consts::FRAC_PI_2,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn to_cartesian(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        let a = self.to_cartesian();
        let b = other.to_cartesian();
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    pub fn antipode(&self) -> Self {
        let [x, y, z] = self.to_cartesian();
        Self::from_cartesian(-x, -y, -z).expect("unit vector")
    }
}

/// Normalized state of a single irrep, amplitudes in descending-`m` order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinKet {
    pub spin: HalfInt,
    pub amps: Ket,
}

const MAX_TWICE_SPIN: i32 = 100;

fn ln_factorial(n: i32) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(2 * MAX_TWICE_SPIN as usize + 2);
        let mut acc = 0.0;
        t.push(0.0);
        for k in 1..=(2 * MAX_TWICE_SPIN + 1) {
            acc += (k as f64).ln();
            t.push(acc);
        }
        t
    });
    table[n as usize]
}

/// Wigner small-d element `d^S_{m,mp}(theta) = <S m| exp(-i theta S_y) |S mp>`.
///
/// Evaluated as `sin^a(theta/2) cos^b(theta/2) P_k^(a,b)(cos theta)` times a
/// binomial normalization, with the Jacobi polynomial from its three-term
/// recursion. The plain factorial sum cancels badly from `S ~ 10` on; this
/// form keeps unitarity to ~1e-13 through `S = 50`.
///
/// # Panics
///
/// If `|m|` or `|mp|` exceeds `S`, the parities disagree, or `S > 50`.
pub fn wigner_small_d(s: HalfInt, m: HalfInt, mp: HalfInt, theta: f64) -> f64 {
    let (j2, m2, mp2) = (s.twice(), m.twice(), mp.twice());
    assert!(
        (0..=MAX_TWICE_SPIN).contains(&j2),
        "spin {s} outside supported range"
    );
    assert!(
        m2.abs() <= j2 && mp2.abs() <= j2 && (j2 - m2) % 2 == 0 && (j2 - mp2) % 2 == 0,
        "invalid projections m={m}, m'={mp} for S={s}"
    );
    // Row projection `m`, column projection `mp`; all quantities below are integers.
    let row_plus = (j2 + m2) / 2;
    let row_minus = (j2 - m2) / 2;
    let col_plus = (j2 + mp2) / 2;
    let col_minus = (j2 - mp2) / 2;
    let row_minus_col = (m2 - mp2) / 2;

    let k = row_plus.min(row_minus).min(col_plus).min(col_minus);
    // Minimum at j-mp or j+m flips the order of the projections.
    let flipped = k != col_plus && (k == col_minus || k == row_plus);
    let (a, sign_power) = if flipped {
        (-row_minus_col, 0)
    } else {
        (row_minus_col, row_minus_col)
    };
    let b = j2 - 2 * k - a;
    let ln_binom = |n: i32, r: i32| ln_factorial(n) - ln_factorial(r) - ln_factorial(n - r);
    let norm = (0.5 * (ln_binom(j2 - k, k + a) - ln_binom(k + b, b))).exp();
    let sign = if sign_power.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let (sn, cs): (f64, f64) = (0.5 * theta).sin_cos();
    sign * norm * sn.powi(a) * cs.powi(b) * jacobi_eval(k as usize, a as f64, b as f64, theta.cos())
}

/// `|S, m n> = exp(-i phi S_z) exp(-i theta S_y) |S, m>`.
pub fn rotate_to(s: HalfInt, m: HalfInt, n: &Direction) -> SpinKet {
    let amps = Ket::from_iterator(
        s.multiplicity(),
        s.projections().map(|k| {
            let d = wigner_small_d(s, k, m, n.theta());
            C64::from_polar(d, -k.value() * n.phi())
        }),
    );
    SpinKet { spin: s, amps }
}

/// Full rotation matrix `D^S(phi, theta, 0)`; column `j` is `rotate_to(S, m_j, n)`.
pub fn rotation_matrix(s: HalfInt, n: &Direction) -> CMatrix {
    let dim = s.multiplicity();
    let mut out = CMatrix::zeros(dim, dim);
    for (j, m) in s.projections().enumerate() {
        out.set_column(j, &rotate_to(s, m, n).amps);
    }
    out
}

/// `[S_x, S_y, S_z]` for spin `S` in the descending-`m` basis.
pub fn spin_operators(s: HalfInt) -> [CMatrix; 3] {
    let dim = s.multiplicity();
    let sv = s.value();
    let mut raise = CMatrix::zeros(dim, dim);
    let mut sz = CMatrix::zeros(dim, dim);
    for (i, m) in s.projections().enumerate() {
        let mv = m.value();
        sz[(i, i)] = C64::new(mv, 0.0);
        // S_+ |m> = sqrt(S(S+1) - m(m+1)) |m+1>, and m+1 sits at index i-1.
        if i > 0 {
            raise[(i - 1, i)] = C64::new((sv * (sv + 1.0) - mv * (mv + 1.0)).sqrt(), 0.0);
        }
    }
    let lower = raise.adjoint();
    let sx = (&raise + &lower).scale(0.5);
    let sy = (&raise - &lower) * C64::new(0.0, -0.5);
    [sx, sy, sz]
}

fn pauli() -> [CMatrix; 3] {
    let o = C64::new(0.0, 0.0);
    let r = C64::new(1.0, 0.0);
    let i = C64::i();
    [
        CMatrix::from_row_slice(2, 2, &[o, r, r, o]),
        CMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
        CMatrix::from_row_slice(2, 2, &[r, o, o, -r]),
    ]
}

/// Non-local spin-3/2 generators on two qubits (first tensor factor = first qubit):
///
/// ```text
/// S_x = (sqrt3/2) I(x)sx + (sx(x)sx + sy(x)sy)/2
/// S_y = (sqrt3/2) I(x)sy + (sy(x)sx - sx(x)sy)/2
/// S_z = (1/2)     I(x)sz + sz(x)I
/// ```
pub fn peres_generators() -> [CMatrix; 3] {
    let [sx, sy, sz] = pauli();
    let id = CMatrix::identity(2, 2);
    let h3 = 0.5 * 3f64.sqrt();
    let gx = id.kronecker(&sx).scale(h3) + (sx.kronecker(&sx) + sy.kronecker(&sy)).scale(0.5);
    let gy = id.kronecker(&sy).scale(h3) + (sy.kronecker(&sx) - sx.kronecker(&sy)).scale(0.5);
    let gz = id.kronecker(&sz).scale(0.5) + sz.kronecker(&id);
    [gx, gy, gz]
}

/// Von Neumann entropy (bits) of the first qubit's reduced state of a two-qubit ket.
pub fn entanglement_entropy(state: &Ket) -> Result<f64> {
    if state.len() != 4 {
        return Err(Error::InvalidArgument(format!(
            "expected a 4-component state, got {}",
            state.len()
        )));
    }
    let norm = state.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Normalization {
            what: "two-qubit state",
            deviation: norm - 1.0,
        });
    }
    let psi = CMatrix::from_row_slice(2, 2, state.as_slice());
    let reduced = &psi * psi.adjoint();
    let eig = hermitian_eigensystem(&reduced)?;
    Ok(entropy_bits(&eig.eigenvalues).clamp(0.0, 1.0))
}

/// Closed-form `|<3/2, sn n | 3/2, sn m>|^2` as a function of `c = n . m`,
/// for `sn` = 3/2 or 1/2.
pub fn overlap_sq_32(c: f64, sn: HalfInt) -> Result<f64> {
    if !(-1.0..=1.0).contains(&c) {
        return Err(Error::InvalidArgument(format!(
            "cosine {c} outside [-1, 1]"
        )));
    }
    match sn.twice() {
        3 => Ok(((1.0 + c) / 2.0).powi(3)),
        1 => Ok((1.0 + c) * (1.0 - 3.0 * c).powi(2) / 8.0),
        _ => Err(Error::InvalidArgument(format!(
            "projection {sn} is not 3/2 or 1/2"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
        a * b - b * a
    }

    #[test]
    fn half_int_basics() {
        assert_eq!(HalfInt::THREE_HALVES.to_string(), "3/2");
        assert_eq!(HalfInt::from_int(2).to_string(), "2");
        let ms: Vec<i32> = HalfInt::THREE_HALVES
            .projections()
            .map(|m| m.twice())
            .collect();
        assert_eq!(ms, vec![3, 1, -1, -3]);
        assert_eq!(HalfInt::THREE_HALVES.index_of(HalfInt::from_twice(-1)), 2);
    }

    #[test]
    fn direction_round_trip() {
        let d = Direction::new(1.1, -0.4).unwrap();
        assert!(d.phi() >= 0.0 && d.phi() < 2.0 * PI);
        let [x, y, z] = d.to_cartesian();
        assert!(((x * x + y * y + z * z).sqrt() - 1.0).abs() < 1e-14);
        let back = Direction::from_cartesian(x, y, z).unwrap();
        assert!((back.dot(&d) - 1.0).abs() < 1e-14);
        assert!((d.antipode().dot(&d) + 1.0).abs() < 1e-14);
        assert!(Direction::new(4.0, 0.0).is_err());
        assert!(Direction::from_cartesian(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn small_d_spin_half() {
        let t = PI / 3.0;
        let h = HalfInt::HALF;
        assert!((wigner_small_d(h, h, h, t) - (PI / 6.0).cos()).abs() < 1e-15);
        assert!((wigner_small_d(h, h, -h, t) + (PI / 6.0).sin()).abs() < 1e-15);
        assert!((wigner_small_d(h, -h, h, t) - (PI / 6.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn small_d_highest_weight_three_halves() {
        let s = HalfInt::THREE_HALVES;
        let d = wigner_small_d(s, s, s, PI / 2.0);
        assert!((d * d - 0.125).abs() < 1e-15);
    }

    #[test]
    fn small_d_identity_at_zero_angle() {
        for twice in 0..=30 {
            let s = HalfInt::from_twice(twice);
            for m in s.projections() {
                for mp in s.projections() {
                    let expect = if m == mp { 1.0 } else { 0.0 };
                    assert!((wigner_small_d(s, m, mp, 0.0) - expect).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "invalid projections")]
    fn small_d_rejects_bad_projection() {
        wigner_small_d(HalfInt::HALF, HalfInt::THREE_HALVES, HalfInt::HALF, 0.1);
    }

    #[test]
    fn small_d_matches_matrix_exponential() {
        // d^S(theta) = exp(-i theta S_y), computed by diagonalizing S_y.
        for twice in [1, 2, 3, 4, 7] {
            let s = HalfInt::from_twice(twice);
            let [_, sy, _] = spin_operators(s);
            let u = crate::numerics::unitary_exp(&sy, -0.83).unwrap();
            for (i, m) in s.projections().enumerate() {
                for (j, mp) in s.projections().enumerate() {
                    let d = wigner_small_d(s, m, mp, 0.83);
                    assert!(
                        (u[(i, j)] - C64::new(d, 0.0)).norm() < 1e-12,
                        "S={s} m={m} mp={mp}"
                    );
                }
            }
        }
    }

    #[test]
    fn rotate_to_examples() {
        let h = HalfInt::HALF;
        let up = rotate_to(h, h, &Direction::z());
        assert!((up.amps[0] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(up.amps[1].norm() < 1e-15);
        let x = rotate_to(h, h, &Direction::x());
        assert!((x.amps[0] - C64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((x.amps[1] - C64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn spin_half_operators_are_half_paulis() {
        let ops = spin_operators(HalfInt::HALF);
        for (op, p) in ops.iter().zip(pauli()) {
            assert!((op - p.scale(0.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn peres_spectrum_and_algebra() {
        let [gx, gy, gz] = peres_generators();
        let eig = hermitian_eigensystem(&gz).unwrap();
        let expected = [-1.5, -0.5, 0.5, 1.5];
        for (a, b) in eig.eigenvalues.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((commutator(&gx, &gy) - gz.clone() * C64::i()).norm() < 1e-14);
        let casimir = &gx * &gx + &gy * &gy + &gz * &gz;
        assert!((casimir - CMatrix::identity(4, 4).scale(3.75)).norm() < 1e-13);
    }

    #[test]
    fn entanglement_examples() {
        let mut up_up = Ket::zeros(4);
        up_up[0] = C64::new(1.0, 0.0);
        assert!(entanglement_entropy(&up_up).unwrap().abs() < 1e-15);
        let mut singlet = Ket::zeros(4);
        singlet[1] = C64::new(FRAC_1_SQRT_2, 0.0);
        singlet[2] = C64::new(-FRAC_1_SQRT_2, 0.0);
        assert!((entanglement_entropy(&singlet).unwrap() - 1.0).abs() < 1e-12);
        assert!(entanglement_entropy(&Ket::zeros(3)).is_err());
        assert!(entanglement_entropy(&Ket::zeros(4)).is_err());
    }

    #[test]
    fn overlap_closed_forms() {
        let s32 = HalfInt::THREE_HALVES;
        let s12 = HalfInt::HALF;
        assert_eq!(overlap_sq_32(1.0, s32).unwrap(), 1.0);
        assert_eq!(overlap_sq_32(-1.0, s32).unwrap(), 0.0);
        assert_eq!(overlap_sq_32(-1.0, s12).unwrap(), 0.0);
        assert!(overlap_sq_32(1.0 / 3.0, s12).unwrap().abs() < 1e-15);
        assert!(overlap_sq_32(0.5, HalfInt::ONE).is_err());
        assert!(overlap_sq_32(1.5, s32).is_err());
    }
}
