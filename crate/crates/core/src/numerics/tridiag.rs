//! Symmetric tridiagonal matrices: Sturm-sequence bisection for the top
//! eigenvalue and inverse iteration for its eigenvector.

use crate::error::{Error, Result};

/// Top eigenvalues closer than this are reported as degenerate.
const DEGENERACY_GAP: f64 = 1e-10;
const MAX_BISECTIONS: usize = 200;

/// Symmetric tridiagonal matrix, stored top-left to bottom-right.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiag {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl Tridiag {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidArgument(
                "tridiagonal matrix must be at least 1x1".into(),
            ));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidArgument(format!(
                "off-diagonal has length {}, expected {}",
                offdiag.len(),
                diag.len() - 1
            )));
        }
        if !diag.iter().chain(&offdiag).all(|v| v.is_finite()) {
            return Err(Error::InvalidArgument(
                "non-finite tridiagonal entry".into(),
            ));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// `v^T M v`.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        assert_eq!(v.len(), self.len());
        let mut acc: f64 = self.diag.iter().zip(v).map(|(d, x)| d * x * x).sum();
        for (i, c) in self.offdiag.iter().enumerate() {
            acc += 2.0 * c * v[i] * v[i + 1];
        }
        acc
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiag[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let n = self.len();
        nalgebra::DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.diag[i]
            } else if i + 1 == j {
                self.offdiag[i]
            } else if j + 1 == i {
                self.offdiag[j]
            } else {
                0.0
            }
        })
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.offdiag[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.offdiag[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (negative LDL^T pivots of `M - x`).
    pub fn sturm_count(&self, x: f64) -> usize {
        let guard = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..self.len() {
            if i > 0 {
                let c = self.offdiag[i - 1];
                q = (self.diag[i] - x) - c * c / q;
            }
            if q == 0.0 {
                q = -guard;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Eigenvalue with ascending index `k` (0 = smallest) by bisection.
    fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        let pad = 1e-12 * lo.abs().max(hi.abs()).max(1.0);
        lo -= pad;
        hi += pad;
        for _ in 0..MAX_BISECTIONS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Largest eigenvalue, without any eigenvector work or degeneracy check.
pub fn tridiag_max_eigenvalue(m: &Tridiag) -> f64 {
    m.eigenvalue(m.len() - 1)
}

/// Largest eigenvalue and its unit eigenvector, first nonzero entry positive.
///
/// Fails with [`Error::DegenerateEigenvalue`] when the two largest
/// eigenvalues are within `1e-10`, since the eigenvector is then arbitrary.
pub fn tridiag_max_eigenpair(m: &Tridiag) -> Result<(f64, Vec<f64>)> {
    let n = m.len();
    let top = m.eigenvalue(n - 1);
    if n == 1 {
        return Ok((top, vec![1.0]));
    }
    let second = m.eigenvalue(n - 2);
    if top - second < DEGENERACY_GAP {
        return Err(Error::DegenerateEigenvalue { gap: top - second });
    }

    // M - shift is negative definite, so the elimination below never pivots.
    let scale = m.gershgorin().1.abs().max(m.gershgorin().0.abs()).max(1.0);
    let shift = top + 8.0 * f64::EPSILON * scale;
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..3 {
        v = solve_shifted(m, shift, &v);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    }
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-300) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    Ok((top, v))
}

/// Solves `(M - shift) y = b` by the Thomas algorithm.
fn solve_shifted(m: &Tridiag, shift: f64, b: &[f64]) -> Vec<f64> {
    let n = m.len();
    let tiny = f64::MIN_POSITIVE.sqrt();
    let mut pivots = vec![0.0; n];
    let mut y = b.to_vec();
    pivots[0] = m.diag[0] - shift;
    for i in 1..n {
        let prev = if pivots[i - 1] == 0.0 {
            -tiny
        } else {
            pivots[i - 1]
        };
        let factor = m.offdiag[i - 1] / prev;
        pivots[i] = m.diag[i] - shift - factor * m.offdiag[i - 1];
        y[i] -= factor * y[i - 1];
    }
    for i in (0..n).rev() {
        let p = if pivots[i] == 0.0 { -tiny } else { pivots[i] };
        let upper = if i + 1 < n {
            m.offdiag[i] * y[i + 1]
        } else {
            0.0
        };
        y[i] = (y[i] - upper) / p;
    }
    y
}
