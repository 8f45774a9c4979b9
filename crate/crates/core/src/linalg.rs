//! Dense complex matrices, Hermitian operators, and the two spectral kernels
//! (cyclic Jacobi eigensolver, spectral matrix exponential) the solvers are
//! built on.
//!
//! Matrices are stored row-major. Dimensions here are small (two-digit), so
//! everything is written for clarity and strict determinism rather than cache
//! blocking: identical inputs produce bit-identical outputs, including
//! eigenvector phases.

use crate::error::{Error, Result};
use std::fmt;

pub type C64 = num_complex::Complex64;

/// Convergence threshold for off-diagonal Jacobi elements, relative to the
/// largest input magnitude.
const JACOBI_OFFDIAG_TOL: f64 = 1e-13;
/// Sweep cap for the cyclic Jacobi iteration.
const JACOBI_MAX_SWEEPS: usize = 100;
/// Hermiticity tolerance, relative to `1 + max |entry|`.
const HERMITICITY_TOL: f64 = 1e-12;
/// Largest exponent the spectral exponential accepts.
const EXPM_MAX_EXPONENT: f64 = 700.0;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data. All entries must be finite.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension { expected: rows * cols, got: data.len() });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            m.set(j, j, C64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Domain("rows have unequal lengths".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a square matrix with the given real diagonal.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (j, d) in diag.iter().enumerate() {
            m.set(j, j, C64::new(*d, 0.0));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn scaled(&self, s: C64) -> Self {
        let data = self.data.iter().map(|a| a * s).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(Error::Domain("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).map(|j| self.get(j, j)).sum())
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry magnitude of the difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self.get(r, c);
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A validated Hermitian matrix.
///
/// Construction checks `max |a_jk - conj(a_kj)| <= 1e-12 * (1 + max |entry|)`;
/// everything downstream (eigensolver, Gibbs states, constraint compilation)
/// relies on that invariant instead of re-checking.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    mat: ComplexMatrix,
}

impl HermitianOperator {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() || mat.rows() == 0 {
            return Err(Error::Domain("Hermitian operator must be square and non-empty".into()));
        }
        let tol = HERMITICITY_TOL * (1.0 + mat.max_abs());
        let mut worst = 0.0f64;
        for r in 0..mat.rows() {
            for c in r..mat.cols() {
                let asym = (mat.get(r, c) - mat.get(c, r).conj()).norm();
                worst = worst.max(asym);
            }
        }
        if worst > tol {
            return Err(Error::Domain(format!(
                "matrix is not Hermitian: asymmetry {worst:.3e} exceeds {tol:.3e}"
            )));
        }
        Ok(Self { mat })
    }

    /// Wraps `(a + a^dagger) / 2`. For matrices that are Hermitian by
    /// construction this only scrubs rounding noise off the result.
    pub fn symmetrized(a: &ComplexMatrix) -> Result<Self> {
        if !a.is_square() || a.rows() == 0 {
            return Err(Error::Domain("Hermitian operator must be square and non-empty".into()));
        }
        let sym = a.add(&a.adjoint())?.scaled(C64::new(0.5, 0.0));
        Ok(Self { mat: sym })
    }

    pub fn from_diag(diag: &[f64]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Domain("Hermitian operator must be square and non-empty".into()));
        }
        Ok(Self { mat: ComplexMatrix::from_real_diag(diag) })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_diag(&vec![1.0; n])
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Scaling by a real factor preserves Hermiticity.
    pub fn scaled(&self, s: f64) -> Self {
        Self { mat: self.mat.scaled(C64::new(s, 0.0)) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self { mat: self.mat.add(&other.mat)? })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self { mat: self.mat.sub(&other.mat)? })
    }

    /// Hilbert-Schmidt norm `sqrt(Tr(A^2))`.
    pub fn hs_norm(&self) -> f64 {
        hs_inner(self, self).expect("dimensions match").max(0.0).sqrt()
    }
}

/// Eigendecomposition of a Hermitian operator: `A = U diag(d) U^dagger`.
///
/// Eigenvalues are ascending; eigenvectors are the columns of `eigenvectors`
/// with each column's largest-magnitude component made real positive.
#[derive(Clone, Debug)]
pub struct Eigendecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Eigendecomposition {
    /// Reassembles `U f(diag) U^dagger` for an entrywise function of the
    /// eigenvalues.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let u = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for (k, d) in self.eigenvalues.iter().enumerate() {
                    acc += u.get(r, k) * f(*d) * u.get(c, k).conj();
                }
                out.set(r, c, acc);
            }
        }
        out
    }
}

/// Hilbert-Schmidt inner product `Tr(A B)` of two Hermitian operators (real).
pub fn hs_inner(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension { expected: a.dim(), got: b.dim() });
    }
    let (am, bm) = (a.matrix(), b.matrix());
    let n = a.dim();
    let mut acc = 0.0;
    for j in 0..n {
        for k in 0..n {
            let z = am.get(j, k) * bm.get(k, j);
            acc += z.re;
        }
    }
    Ok(acc)
}

/// Matrix commutator `[a, b] = ab - ba`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::Dimension { expected: a.rows(), got: b.rows() });
    }
    a.matmul(b)?.sub(&b.matmul(a)?)
}

/// Kronecker product.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for ar in 0..a.rows() {
        for ac in 0..a.cols() {
            let av = a.get(ar, ac);
            if av == C64::new(0.0, 0.0) {
                continue;
            }
            for br in 0..b.rows() {
                for bc in 0..b.cols() {
                    out.set(ar * b.rows() + br, ac * b.cols() + bc, av * b.get(br, bc));
                }
            }
        }
    }
    out
}

/// Full eigendecomposition of a Hermitian operator by cyclic Jacobi rotations.
///
/// Each rotation zeroes one off-diagonal pair through a complex Givens
/// rotation; sweeps repeat in a fixed row-major order until every off-diagonal
/// magnitude falls below `1e-13 * max(1, |A|_max)`. The fixed sweep order and
/// the deterministic phase convention make the output reproducible down to the
/// last bit for identical inputs.
pub fn eig_hermitian(h: &HermitianOperator) -> Result<Eigendecomposition> {
    let n = h.dim();
    let mut a = h.matrix().clone();
    let mut u = ComplexMatrix::identity(n);
    let tol = JACOBI_OFFDIAG_TOL * a.max_abs().max(1.0);

    let mut converged = false;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a.get(p, q).norm());
            }
        }
        if off <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut u, p, q, tol);
            }
        }
    }
    if !converged {
        // One final check: the last sweep may have finished the job.
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a.get(p, q).norm());
            }
        }
        if off > tol {
            return Err(Error::Numerical(format!(
                "Jacobi eigensolver missed the off-diagonal threshold after {JACOBI_MAX_SWEEPS} sweeps (residual {off:.3e})"
            )));
        }
    }

    // Sort ascending, carrying eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|j| a.get(j, j).re).collect();
    if diag.iter().any(|d| !d.is_finite()) {
        return Err(Error::Numerical("non-finite eigenvalue".into()));
    }
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));

    let eigenvalues: Vec<f64> = order.iter().map(|&j| diag[j]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        // Deterministic phase: largest-magnitude component real positive.
        let mut kmax = 0;
        let mut best = 0.0f64;
        for k in 0..n {
            let mag = u.get(k, src).norm();
            if mag > best {
                best = mag;
                kmax = k;
            }
        }
        let pivot = u.get(kmax, src);
        let phase = if best > 0.0 { pivot.conj() / best } else { C64::new(1.0, 0.0) };
        for k in 0..n {
            vectors.set(k, dst, u.get(k, src) * phase);
        }
    }

    Ok(Eigendecomposition { eigenvalues, eigenvectors: vectors })
}

/// Applies one Jacobi rotation annihilating the `(p, q)` element of `a`,
/// accumulating the rotation into `u`.
fn jacobi_rotate(a: &mut ComplexMatrix, u: &mut ComplexMatrix, p: usize, q: usize, tol: f64) {
    let b = a.get(p, q);
    let absb = b.norm();
    if absb <= tol {
        return;
    }
    let phase = b.conj() / absb; // e^{-i arg(b)}
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * absb);
    // Smaller-magnitude root of t^2 - 2 tau t - 1 = 0 for this rotation shape.
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // V = [[c, -s], [phase*s, phase*c]] acting on columns (p, q); a <- V^H a V.
    let n = a.rows();
    let (cs, ss) = (C64::new(c, 0.0), C64::new(s, 0.0));
    let ps = phase * s;
    let pc = phase * c;

    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * cs + akq * ps);
        a.set(k, q, -akp * ss + akq * pc);
    }
    let phc = phase.conj();
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, apk * cs + aqk * phc * s);
        a.set(q, k, -apk * ss + aqk * phc * c);
    }
    // Scrub the rounding residue the rotation is meant to annihilate.
    a.set(p, q, C64::new(0.0, 0.0));
    a.set(q, p, C64::new(0.0, 0.0));
    let dpp = a.get(p, p);
    let dqq = a.get(q, q);
    a.set(p, p, C64::new(dpp.re, 0.0));
    a.set(q, q, C64::new(dqq.re, 0.0));

    for k in 0..n {
        let ukp = u.get(k, p);
        let ukq = u.get(k, q);
        u.set(k, p, ukp * cs + ukq * ps);
        u.set(k, q, -ukp * ss + ukq * pc);
    }
}

/// Matrix exponential of a Hermitian operator through its spectrum:
/// `exp(A) = U diag(e^{d_j}) U^dagger`.
///
/// Exponents above 700 would overflow double precision and are rejected;
/// callers that only need the normalized `exp(A)/Tr exp(A)` should shift the
/// spectrum first (see `quantum::gibbs_state`).
pub fn expm_hermitian(h: &HermitianOperator) -> Result<HermitianOperator> {
    let eig = eig_hermitian(h)?;
    let max = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max > EXPM_MAX_EXPONENT {
        return Err(Error::Overflow(max));
    }
    HermitianOperator::symmetrized(&eig.apply(f64::exp))
}
