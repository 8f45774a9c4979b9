//! Small real-matrix helpers shared by the solvers: Gaussian elimination,
//! symmetric eigendecomposition (through the complex Jacobi kernel), and a
//! pseudoinverse applier for the projection steps of the reference solvers.

use crate::linalg::{eig_hermitian, C64, ComplexMatrix, HermitianOperator};

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot falls below `1e-14` times the matrix scale.
#[cfg(test)]
pub(crate) fn solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1.0);
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut rhs = b.to_vec();
    for k in 0..n {
        let mut piv = k;
        for r in (k + 1)..n {
            if m[r][k].abs() > m[piv][k].abs() {
                piv = r;
            }
        }
        if m[piv][k].abs() < 1e-14 * scale {
            return None;
        }
        m.swap(k, piv);
        rhs.swap(k, piv);
        for r in (k + 1)..n {
            let f = m[r][k] / m[k][k];
            if f == 0.0 {
                continue;
            }
            for c in k..n {
                m[r][c] -= f * m[k][c];
            }
            rhs[r] -= f * rhs[k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let mut acc = rhs[k];
        for c in (k + 1)..n {
            acc -= m[k][c] * x[c];
        }
        x[k] = acc / m[k][k];
    }
    Some(x)
}

/// Eigendecomposition of a real symmetric matrix: ascending eigenvalues and
/// the matching eigenvectors as columns. Input asymmetry is averaged away.
pub(crate) fn sym_eig(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut m = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            m.set(r, c, C64::new(0.5 * (a[r][c] + a[c][r]), 0.0));
        }
    }
    let h = HermitianOperator::symmetrized(&m).expect("square by construction");
    let eig = eig_hermitian(&h).expect("symmetric eigensolve");
    let mut vectors = vec![vec![0.0; n]; n];
    for r in 0..n {
        for c in 0..n {
            vectors[r][c] = eig.eigenvectors.get(r, c).re;
        }
    }
    (eig.eigenvalues, vectors)
}

/// Smallest eigenvalue of a real symmetric matrix.
#[cfg(test)]
pub(crate) fn min_eigenvalue(a: &[Vec<f64>]) -> f64 {
    sym_eig(a).0[0]
}

/// Pseudoinverse applier for a real symmetric positive semidefinite matrix,
/// built once from its eigendecomposition.
pub(crate) struct PsdPinv {
    eigenvalues: Vec<f64>,
    vectors: Vec<Vec<f64>>,
    cutoff: f64,
}

impl PsdPinv {
    /// `rel_tol` is relative to the largest eigenvalue.
    pub(crate) fn new(a: &[Vec<f64>], rel_tol: f64) -> Self {
        let (eigenvalues, vectors) = sym_eig(a);
        let max = eigenvalues.iter().copied().fold(0.0f64, f64::max);
        Self { eigenvalues, vectors, cutoff: rel_tol * max.max(1e-300) }
    }

    /// Applies `A^+ v`.
    pub(crate) fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = v.len();
        let mut out = vec![0.0; n];
        for (k, &d) in self.eigenvalues.iter().enumerate() {
            if d <= self.cutoff {
                continue;
            }
            let mut proj = 0.0;
            for r in 0..n {
                proj += self.vectors[r][k] * v[r];
            }
            let w = proj / d;
            for r in 0..n {
                out[r] += w * self.vectors[r][k];
            }
        }
        out
    }
}
