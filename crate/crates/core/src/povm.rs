//! Finite POVMs with rank-one elements, identity checks, exact fidelities and
//! Monte Carlo simulation of the encode, measure, guess protocol.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codes::{CodeSpace, Encoding, SphereGrid};
use crate::error::{Error, Result};
use crate::numerics::hermitian_eigensystem;
use crate::su2::{rotate_to, Direction, HalfInt};
use crate::{CMatrix, Ket};

/// Identity deviation above which a POVM is refused for fidelity work.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Per-shot tolerance on the outcome distribution's total probability.
pub const PROBABILITY_TOL: f64 = 1e-8;
/// Shots per independent random substream.
const SHARD_SHOTS: u64 = 1 << 16;

/// One outcome: the operator `weight |state><state|` and the direction guessed on it.
#[derive(Debug, Clone, PartialEq)]
pub struct PovmElement {
    pub weight: f64,
    pub state: Ket,
    pub guess: Direction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FinitePovm {
    dim: usize,
    elements: Vec<PovmElement>,
}

impl FinitePovm {
    pub fn new(dim: usize, elements: Vec<PovmElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidArgument("POVM has no elements".into()));
        }
        for e in &elements {
            if e.state.len() != dim {
                return Err(Error::InvalidArgument(format!(
                    "element of dimension {} in a {dim}-dimensional POVM",
                    e.state.len()
                )));
            }
            if !(e.weight > 0.0 && e.weight.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "non-positive weight {}",
                    e.weight
                )));
            }
        }
        Ok(Self { dim, elements })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[PovmElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.elements.iter().map(|e| e.weight).sum()
    }

    /// Copy with element `index` removed.
    pub fn without(&self, index: usize) -> Result<Self> {
        let mut elements = self.elements.clone();
        elements.remove(index);
        Self::new(self.dim, elements)
    }

    /// `w_i |<psi|s_i>|^2` for every element.
    pub fn probabilities(&self, psi: &Ket) -> Vec<f64> {
        self.elements
            .iter()
            .map(|e| e.weight * psi.dotc(&e.state).norm_sqr())
            .collect()
    }
}

/// Von Neumann spin measurement along `m` as a two-outcome POVM on a qubit,
/// guessing `+m` or `-m`.
pub fn von_neumann_pair(m: &Direction) -> FinitePovm {
    let h = HalfInt::HALF;
    let anti = m.antipode();
    let elements = vec![
        PovmElement {
            weight: 1.0,
            state: rotate_to(h, h, m).amps,
            guess: *m,
        },
        PovmElement {
            weight: 1.0,
            state: rotate_to(h, h, &anti).amps,
            guess: anti,
        },
    ];
    FinitePovm::new(2, elements).expect("well-formed")
}

/// Continuous POVM `D int dm |B(m)><B(m)|` discretized on a product grid,
/// with per-irrep decoder phases. Exact when the grid has at least
/// `2 S_max + 2` nodes in each angle.
pub fn grid_povm(code: &dyn Encoding, grid: &SphereGrid) -> Result<FinitePovm> {
    let space = code.space();
    let need = space.max_spin().twice() as usize + 2;
    grid.require(need, need, "quadrature POVM")?;
    let d = space.dim() as f64;
    let elements = grid
        .points()
        .iter()
        .map(|(m, w)| PovmElement {
            weight: d * w,
            state: code.decoder(m),
            guess: *m,
        })
        .collect();
    FinitePovm::new(space.dim(), elements)
}

/// [`grid_povm`] for the real generalized decoder of `N` spins, needs
/// `theta_order >= N + 2` and `phi_count >= N + 2`.
pub fn quadrature_povm(nspins: usize, theta_order: usize, phi_count: usize) -> Result<FinitePovm> {
    let space = CodeSpace::truncated(nspins)?;
    let unit = RealDecoder { space };
    grid_povm(&unit, &SphereGrid::new(theta_order, phi_count)?)
}

/// Code with every `A_S` real and positive; only its decoder is used.
struct RealDecoder {
    space: CodeSpace,
}

impl Encoding for RealDecoder {
    fn space(&self) -> &CodeSpace {
        &self.space
    }

    fn encode(&self, n: &Direction) -> Ket {
        self.decoder(n)
    }

    fn phases(&self) -> Vec<crate::C64> {
        vec![crate::C64::new(1.0, 0.0); self.space.irreps().len()]
    }
}

/// Six projectors `(2/3) |3/2,3/2 v><3/2,3/2 v|` for `v` in `{±x, ±y, ±z}`.
pub fn octahedron_povm() -> FinitePovm {
    let s = HalfInt::THREE_HALVES;
    let z = Direction::z();
    let x = Direction::x();
    let y = Direction::y();
    let vertices = [x, x.antipode(), y, y.antipode(), z, z.antipode()];
    let elements = vertices
        .iter()
        .map(|v| PovmElement {
            weight: 2.0 / 3.0,
            state: rotate_to(s, s, v).amps,
            guess: *v,
        })
        .collect();
    FinitePovm::new(4, elements).expect("well-formed")
}

/// Operator-norm distance `|| sum w_i |s_i><s_i| - I ||`.
pub fn check_identity(p: &FinitePovm, dim: usize) -> Result<f64> {
    if p.dim() != dim {
        return Err(Error::InvalidArgument(format!(
            "POVM acts on {} dimensions, not {dim}",
            p.dim()
        )));
    }
    let mut acc = -CMatrix::identity(dim, dim);
    for e in p.elements() {
        acc += (&e.state * e.state.adjoint()).scale(e.weight);
    }
    Ok(hermitian_eigensystem(&acc)?.max_abs_eigenvalue())
}

fn require_resolution(code: &dyn Encoding, p: &FinitePovm) -> Result<()> {
    let deviation = check_identity(p, code.space().dim())?;
    if deviation >= IDENTITY_TOL {
        return Err(Error::Normalization {
            what: "POVM identity resolution",
            deviation,
        });
    }
    Ok(())
}

/// `sum_i w_i int dn |<A(n)|s_i>|^2 (1 + n.g_i)/2`.
pub fn povm_fidelity_exact(code: &dyn Encoding, p: &FinitePovm, grid: &SphereGrid) -> Result<f64> {
    require_resolution(code, p)?;
    let need = code.space().max_spin().twice() as usize + 2;
    grid.require(need, need, "POVM fidelity")?;
    let encoded: Vec<(Ket, [f64; 3], f64)> = grid
        .points()
        .iter()
        .map(|(n, w)| (code.encode(n), n.to_cartesian(), *w))
        .collect();
    let total = p
        .elements()
        .iter()
        .map(|e| {
            let g = e.guess.to_cartesian();
            let inner: f64 = encoded
                .iter()
                .map(|(a, n, w)| {
                    let cos = n[0] * g[0] + n[1] * g[1] + n[2] * g[2];
                    w * a.dotc(&e.state).norm_sqr() * 0.5 * (1.0 + cos)
                })
                .sum();
            e.weight * inner
        })
        .sum();
    Ok(total)
}

/// Monte Carlo fidelity estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    /// Standard error of the mean; infinite for a single shot.
    pub stderr: f64,
    pub shots: u64,
}

impl Estimate {
    /// `(mean - reference) / stderr`, zero when the error is infinite.
    pub fn z_score(&self, reference: f64) -> f64 {
        if self.stderr.is_finite() && self.stderr > 0.0 {
            (self.mean - reference) / self.stderr
        } else {
            0.0
        }
    }
}

/// Simulates `shots` rounds: draw `n` uniformly on the sphere, sample an
/// outcome with probability `w_i |<A(n)|s_i>|^2`, score `(1 + n.g_i)/2`.
///
/// Shots are split into fixed-size shards; shard `k` draws from the ChaCha8
/// stream `k` of `seed` and shard sums are reduced in index order, so the
/// result depends only on `(seed, shots)` and not on the thread count.
pub fn simulate(code: &dyn Encoding, p: &FinitePovm, shots: u64, seed: u64) -> Result<Estimate> {
    if shots == 0 {
        return Err(Error::InvalidArgument("need at least one shot".into()));
    }
    require_resolution(code, p)?;
    let guesses: Vec<[f64; 3]> = p
        .elements()
        .iter()
        .map(|e| e.guess.to_cartesian())
        .collect();
    let shards = shots.div_ceil(SHARD_SHOTS);

    let partials: Vec<Result<(f64, f64)>> = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let count = SHARD_SHOTS.min(shots - shard * SHARD_SHOTS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            let mut probs = Vec::with_capacity(p.len());
            for _ in 0..count {
                let cos_theta: f64 = 1.0 - 2.0 * rng.random::<f64>();
                let phi = std::f64::consts::TAU * rng.random::<f64>();
                let n = Direction::new(cos_theta.acos(), phi)?;
                let a = code.encode(&n);
                probs.clear();
                probs.extend(
                    p.elements()
                        .iter()
                        .map(|e| e.weight * a.dotc(&e.state).norm_sqr()),
                );
                let total: f64 = probs.iter().sum();
                if (total - 1.0).abs() > PROBABILITY_TOL {
                    return Err(Error::Normalization {
                        what: "outcome probabilities",
                        deviation: total - 1.0,
                    });
                }
                let mut r = rng.random::<f64>() * total;
                let mut outcome = probs.len() - 1;
                for (i, &pi) in probs.iter().enumerate() {
                    if r < pi {
                        outcome = i;
                        break;
                    }
                    r -= pi;
                }
                let nv = n.to_cartesian();
                let g = guesses[outcome];
                let score = 0.5 * (1.0 + nv[0] * g[0] + nv[1] * g[1] + nv[2] * g[2]);
                sum += score;
                sum_sq += score * score;
            }
            Ok((sum, sum_sq))
        })
        .collect();

    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for part in partials {
        let (s, q) = part?;
        sum += s;
        sum_sq += q;
    }
    let nf = shots as f64;
    let mean = sum / nf;
    let stderr = if shots > 1 {
        let var = ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0);
        (var / nf).sqrt()
    } else {
        f64::INFINITY
    };
    Ok(Estimate {
        mean,
        stderr,
        shots,
    })
}
