//! Dense Hermitian eigenproblems by cyclic complex Jacobi rotations.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::{CMatrix, C64};

const HERMITIAN_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unit eigenvectors as columns, in the order of `eigenvalues`.
    pub eigenvectors: CMatrix,
}

impl HermitianEigen {
    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Full spectrum of a Hermitian matrix.
///
/// Each sweep visits every off-diagonal pair `(p, q)` and applies the
/// unitary that diagonalizes the 2x2 block; sweeps continue until the
/// off-diagonal mass is at rounding level.
pub fn hermitian_eigensystem(h: &CMatrix) -> Result<HermitianEigen> {
    let n = h.nrows();
    if n != h.ncols() {
        return Err(Error::InvalidArgument(format!(
            "matrix is {}x{}, not square",
            n,
            h.ncols()
        )));
    }
    let asym = (h - h.adjoint())
        .iter()
        .fold(0.0f64, |m, z| m.max(z.norm()));
    if asym > HERMITIAN_TOL {
        return Err(Error::NotHermitian(asym));
    }

    let mut a = (h + h.adjoint()).scale(0.5);
    let mut v = CMatrix::identity(n, n);
    let scale = a
        .iter()
        .fold(0.0f64, |m, z| m.max(z.norm()))
        .max(f64::MIN_POSITIVE);

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "Jacobi eigensolver",
            iterations: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let n = a.nrows();
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let t = 0.5 * (2.0 * r).atan2(app - aqq);
    let (s, c) = t.sin_cos();
    // Columns of G: (c, e^{-i phi} s) and (-e^{i phi} s, c).
    let g_pp = C64::new(c, 0.0);
    let g_qp = phase.conj() * s;
    let g_pq = -phase * s;
    let g_qq = C64::new(c, 0.0);

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// `exp(i * theta * h)` for Hermitian `h`, through its eigendecomposition.
pub fn unitary_exp(h: &CMatrix, theta: f64) -> Result<CMatrix> {
    let eig = hermitian_eigensystem(h)?;
    let phases = DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues
            .iter()
            .map(|&l| C64::from_polar(1.0, theta * l)),
    );
    let vecs = &eig.eigenvectors;
    Ok(vecs * DMatrix::from_diagonal(&phases) * vecs.adjoint())
}
