//! Encodings `|A(n)>`, decoder states `|B(m)>`, and source density matrices.
//!
//! A code space is a direct sum of single copies of irreps `S`, each block
//! laid out in the descending-`m` order of [`crate::su2`], blocks ordered by
//! descending `S`. Every state in a given code space has the same projection
//! `S_n` along its own direction.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{Error, Result};
use crate::numerics::{entropy_bits, gauss_legendre, hermitian_eigensystem};
use crate::su2::{rotate_to, Direction, HalfInt};
use crate::{CMatrix, Ket, C64};

const NORM_TOL: f64 = 1e-12;
const DENSITY_TOL: f64 = 1e-10;

/// Truncated direct sum of irreps sharing the projection `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpace {
    sn: HalfInt,
    irreps: Vec<HalfInt>,
}

impl CodeSpace {
    /// Irreps must be distinct, descending, and each at least `sn`, with
    /// matching parity.
    pub fn new(sn: HalfInt, irreps: Vec<HalfInt>) -> Result<Self> {
        if irreps.is_empty() || sn.twice() < 0 {
            return Err(Error::InvalidArgument(
                "code space needs at least one irrep".into(),
            ));
        }
        let ok = irreps.windows(2).all(|w| w[0] > w[1])
            && irreps
                .iter()
                .all(|s| *s >= sn && (s.twice() - sn.twice()) % 2 == 0);
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "irreps {irreps:?} incompatible with S_n={sn}"
            )));
        }
        Ok(Self { sn, irreps })
    }

    /// `N/2 (+) (N/2 - 1) (+) ... (+) S_n` for `N` qubits with the minimal
    /// `S_n` (0 for even `N`, 1/2 for odd).
    pub fn truncated(nspins: usize) -> Result<Self> {
        if nspins == 0 {
            return Err(Error::InvalidArgument("need at least one spin".into()));
        }
        let top = nspins as i32;
        let sn = HalfInt::from_twice(top % 2);
        let irreps = (sn.twice()..=top)
            .rev()
            .step_by(2)
            .map(HalfInt::from_twice)
            .collect();
        Self::new(sn, irreps)
    }

    /// The single irrep `S` with `S_n = S`.
    pub fn highest_weight(spin: HalfInt) -> Result<Self> {
        Self::new(spin, vec![spin])
    }

    pub fn sn(&self) -> HalfInt {
        self.sn
    }

    /// Irreps, largest first.
    pub fn irreps(&self) -> &[HalfInt] {
        &self.irreps
    }

    pub fn max_spin(&self) -> HalfInt {
        self.irreps[0]
    }

    /// Total dimension `D = sum (2S + 1)`.
    pub fn dim(&self) -> usize {
        self.irreps.iter().map(|s| s.multiplicity()).sum()
    }

    /// Start offset of every block.
    pub fn offsets(&self) -> Vec<usize> {
        self.irreps
            .iter()
            .scan(0, |acc, s| {
                let start = *acc;
                *acc += s.multiplicity();
                Some(start)
            })
            .collect()
    }

    /// `sum_S c_S |S, S_n n>` for per-irrep coefficients `c_S`.
    pub fn superpose(&self, coeffs: &[C64], n: &Direction) -> Ket {
        assert_eq!(coeffs.len(), self.irreps.len());
        let mut out = Ket::zeros(self.dim());
        for ((s, &c), start) in self.irreps.iter().zip(coeffs).zip(self.offsets()) {
            if c == C64::new(0.0, 0.0) {
                continue;
            }
            let block = rotate_to(*s, self.sn, n);
            out.rows_mut(start, s.multiplicity())
                .copy_from(&(block.amps * c));
        }
        out
    }
}

/// Generalized decoder `b_S = sqrt((2S + 1) / D)` in every irrep, rotated to `m`.
pub fn decoder_state(space: &CodeSpace, m: &Direction) -> Ket {
    decoder_state_with_phases(space, &vec![C64::new(1.0, 0.0); space.irreps().len()], m)
}

/// [`decoder_state`] with each irrep's amplitude multiplied by a unit phase.
pub fn decoder_state_with_phases(space: &CodeSpace, phases: &[C64], m: &Direction) -> Ket {
    let d = space.dim() as f64;
    let coeffs: Vec<C64> = space
        .irreps()
        .iter()
        .zip(phases)
        .map(|(s, p)| p * (s.multiplicity() as f64 / d).sqrt())
        .collect();
    space.superpose(&coeffs, m)
}

/// A direction-to-state map covariant under rotations.
pub trait Encoding: Send + Sync {
    fn space(&self) -> &CodeSpace;

    fn encode(&self, n: &Direction) -> Ket;

    /// Unit phase of each irrep's coefficient (1 where the coefficient vanishes).
    fn phases(&self) -> Vec<C64>;

    /// Decoder state along `m` whose per-irrep phases follow the code's.
    fn decoder(&self, m: &Direction) -> Ket {
        decoder_state_with_phases(self.space(), &self.phases(), m)
    }
}

/// Code state `sum_S A_S |S, S_n n>` over the truncated space of `N` spins.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiRepState {
    space: CodeSpace,
    nspins: usize,
    coeffs: Vec<C64>,
}

impl MultiRepState {
    /// `coeffs` are `A_S` for `S = N/2` down to `S_n`; they must have unit norm.
    pub fn new(nspins: usize, coeffs: Vec<C64>) -> Result<Self> {
        let space = CodeSpace::truncated(nspins)?;
        if coeffs.len() != space.irreps().len() {
            return Err(Error::InvalidArgument(format!(
                "{} spins need {} coefficients, got {}",
                nspins,
                space.irreps().len(),
                coeffs.len()
            )));
        }
        let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization {
                what: "code coefficients",
                deviation: norm - 1.0,
            });
        }
        Ok(Self {
            space,
            nspins,
            coeffs,
        })
    }

    /// All weight on the top irrep `S = N/2`, in its `|N/2, S_n>` component.
    /// Mostly useful for tests.
    pub fn top_only(nspins: usize) -> Result<Self> {
        let space = CodeSpace::truncated(nspins)?;
        let mut coeffs = vec![C64::new(0.0, 0.0); space.irreps().len()];
        coeffs[0] = C64::new(1.0, 0.0);
        Self::new(nspins, coeffs)
    }

    pub fn nspins(&self) -> usize {
        self.nspins
    }

    pub fn sn(&self) -> HalfInt {
        self.space.sn()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }
}

impl Encoding for MultiRepState {
    fn space(&self) -> &CodeSpace {
        &self.space
    }

    fn encode(&self, n: &Direction) -> Ket {
        self.space.superpose(&self.coeffs, n)
    }

    fn phases(&self) -> Vec<C64> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.norm() > 0.0 {
                    c / c.norm()
                } else {
                    C64::new(1.0, 0.0)
                }
            })
            .collect()
    }
}

/// Block-structured code state of `a` pointing along `n`.
pub fn code_state(a: &MultiRepState, n: &Direction) -> Ket {
    a.encode(n)
}

/// Highest-weight state `|S, S n>` of a single irrep: the optimal code of
/// dimension `2S + 1`, and also the state of `2S` parallel spins.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentCode {
    space: CodeSpace,
}

impl CoherentCode {
    pub fn new(spin: HalfInt) -> Result<Self> {
        Ok(Self {
            space: CodeSpace::highest_weight(spin)?,
        })
    }

    /// Optimal code of dimension `d >= 2`.
    pub fn with_dimension(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!("code dimension {d} < 2")));
        }
        Self::new(HalfInt::from_twice(d as i32 - 1))
    }

    pub fn spin(&self) -> HalfInt {
        self.space.max_spin()
    }
}

impl Encoding for CoherentCode {
    fn space(&self) -> &CodeSpace {
        &self.space
    }

    fn encode(&self, n: &Direction) -> Ket {
        let s = self.spin();
        rotate_to(s, s, n).amps
    }

    fn phases(&self) -> Vec<C64> {
        vec![C64::new(1.0, 0.0)]
    }
}

/// Two-qubit family `cos(alpha) |1,0 n> + sin(alpha) e^{i beta} |0,0>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaFamily {
    alpha: f64,
    beta: f64,
}

impl AlphaFamily {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&alpha) || !beta.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "alpha {alpha} outside [0, pi/2]"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn to_state(&self) -> MultiRepState {
        let coeffs = vec![
            C64::new(self.alpha.cos(), 0.0),
            C64::from_polar(self.alpha.sin(), self.beta),
        ];
        MultiRepState::new(2, coeffs).expect("unit-norm by construction")
    }
}

/// The `AlphaFamily` state along `n`, as a 4-component block ket (`S=1` then `S=0`).
pub fn alpha_state(f: &AlphaFamily, n: &Direction) -> Ket {
    f.to_state().encode(n)
}

/// Product grid on the sphere: Gauss-Legendre in `cos(theta)` times a uniform
/// trapezoid in `phi`. Weights are normalized to total 1.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    theta_order: usize,
    phi_count: usize,
    points: Vec<(Direction, f64)>,
}

impl SphereGrid {
    pub fn new(theta_order: usize, phi_count: usize) -> Result<Self> {
        if theta_order == 0 || phi_count == 0 {
            return Err(Error::GridTooCoarse("empty sphere grid".into()));
        }
        let quad = gauss_legendre(theta_order);
        let mut points = Vec::with_capacity(theta_order * phi_count);
        for (x, w) in quad.iter() {
            let theta = x.clamp(-1.0, 1.0).acos();
            for j in 0..phi_count {
                let phi = TAU * j as f64 / phi_count as f64;
                points.push((Direction::new(theta, phi)?, 0.5 * w / phi_count as f64));
            }
        }
        Ok(Self {
            theta_order,
            phi_count,
            points,
        })
    }

    /// Smallest grid that integrates every bilinear in spin-`max_spin`
    /// states times a degree-1 harmonic exactly.
    pub fn exact_for(max_spin: HalfInt) -> Self {
        let n = max_spin.twice() as usize + 2;
        Self::new(n, n).expect("nonzero orders")
    }

    pub fn theta_order(&self) -> usize {
        self.theta_order
    }

    pub fn phi_count(&self) -> usize {
        self.phi_count
    }

    pub fn points(&self) -> &[(Direction, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub(crate) fn require(&self, min_theta: usize, min_phi: usize, what: &str) -> Result<()> {
        if self.theta_order < min_theta || self.phi_count < min_phi {
            return Err(Error::GridTooCoarse(format!(
                "{what} needs at least {min_theta}x{min_phi} nodes, got {}x{}",
                self.theta_order, self.phi_count
            )));
        }
        Ok(())
    }
}

/// Validated density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    /// Accepts Hermitian, unit-trace, positive semidefinite matrices (tolerance `1e-10`).
    pub fn new(entries: CMatrix) -> Result<Self> {
        let eig = hermitian_eigensystem(&entries)?;
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > DENSITY_TOL || trace.im.abs() > DENSITY_TOL {
            return Err(Error::Normalization {
                what: "density matrix trace",
                deviation: trace.re - 1.0,
            });
        }
        if let Some(&low) = eig.eigenvalues.first() {
            if low < -DENSITY_TOL {
                return Err(Error::InvalidArgument(format!(
                    "negative eigenvalue {low:e}"
                )));
            }
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigensystem(&self.entries)
            .expect("validated Hermitian")
            .eigenvalues
    }

    /// Largest entry magnitude outside the diagonal irrep blocks of `space`.
    pub fn off_block_norm(&self, space: &CodeSpace) -> f64 {
        let mut owner = Vec::with_capacity(space.dim());
        for (i, s) in space.irreps().iter().enumerate() {
            owner.extend(std::iter::repeat_n(i, s.multiplicity()));
        }
        let mut worst: f64 = 0.0;
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                if owner[r] != owner[c] {
                    worst = worst.max(self.entries[(r, c)].norm());
                }
            }
        }
        worst
    }
}

/// `rho = int dn |A(n)><A(n)|` on a product grid.
///
/// The grid must have `theta_order >= 2 S_max + 2` and `phi_count >= 2 S_max + 1`.
pub fn source_density(encoding: &dyn Encoding, grid: &SphereGrid) -> Result<DensityMatrix> {
    let smax = encoding.space().max_spin().twice() as usize;
    grid.require(smax + 2, smax + 1, "source density")?;
    let d = encoding.space().dim();
    let mut rho = CMatrix::zeros(d, d);
    for (n, w) in grid.points() {
        let a = encoding.encode(n);
        rho += (&a * a.adjoint()).scale(*w);
    }
    DensityMatrix::new(rho)
}

/// `-tr rho log2 rho`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_bits(&rho.eigenvalues())
}
