//! Slow primal reference solvers used by the test suite.
//!
//! These deliberately take a different route from the main solvers — direct
//! entropy ascent over the feasible set by alternating projections, instead
//! of exponential-family duals — so that agreement between the two is
//! evidence of correctness rather than a shared-code tautology. Symmetry
//! enters as raw entrywise invariance equations (`p_j = p_{g(j)}`,
//! `[X, Q] = 0`, `U X U^dagger = X`) rather than through the compiled
//! constraint sets. Small dimensions only; performance is a non-goal.

use crate::classical::ClassicalProblem;
use crate::error::{Error, Result};
use crate::linalg::{commutator, eig_hermitian, hs_inner, C64, ComplexMatrix, HermitianOperator};
use crate::linreal::PsdPinv;
use crate::quantum::{entropy_vn, DensityMatrix, QuantumProblem};
use crate::symmetry::{hermitian_coord_basis, SymmetrySpec};

/// Feasibility demanded of classical oracle output.
const CLASSICAL_FEAS_TOL: f64 = 1e-9;
/// Feasibility demanded of quantum oracle output.
const QUANTUM_FEAS_TOL: f64 = 1e-7;
/// Pseudo-inverse cutoff for affine projections.
const PINV_TOL: f64 = 1e-12;

/// A reference solution: the state, its entropy, and how badly it violates
/// the constraints (worst absolute deviation).
#[derive(Clone, Debug)]
pub struct OracleResult<S> {
    pub state: S,
    pub entropy: f64,
    pub max_violation: f64,
}

/// Bisection for a root of a sign-changing function; the bracket is shrunk
/// to width 1e-14 and the midpoint returned.
pub fn scalar_root(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Domain(format!("invalid bracket [{lo}, {hi}]")));
    }
    let (mut lo, mut hi) = (lo, hi);
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Domain(format!(
            "no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}"
        )));
    }
    let mut sign_lo = flo.signum();
    for _ in 0..200 {
        if hi - lo <= 1e-14 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        sign_lo = f(lo).signum();
    }
    Ok(0.5 * (lo + hi))
}

/// Affine constraint system `M x = b` with a least-squares projector
/// `x -> x + M^T (M M^T)^+ (b - M x)`.
struct AffineSystem {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    pinv: PsdPinv,
}

impl AffineSystem {
    fn new(rows: Vec<Vec<f64>>, rhs: Vec<f64>) -> Self {
        let k = rows.len();
        let mut gram = vec![vec![0.0; k]; k];
        for i in 0..k {
            for j in i..k {
                let dot: f64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
                gram[i][j] = dot;
                gram[j][i] = dot;
            }
        }
        let pinv = PsdPinv::new(&gram, PINV_TOL);
        Self { rows, rhs, pinv }
    }

    fn residual(&self, x: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, &b)| b - row.iter().zip(x).map(|(r, v)| r * v).sum::<f64>())
            .collect()
    }

    fn max_violation(&self, x: &[f64]) -> f64 {
        self.residual(x).iter().fold(0.0f64, |m, r| m.max(r.abs()))
    }

    fn project(&self, x: &[f64]) -> Vec<f64> {
        let mut out = x.to_vec();
        // The second pass is iterative refinement: one solve leaves a
        // residual of order cond(G) * eps * |displacement|, which the
        // entropy ascent would otherwise exploit as slack.
        for _ in 0..2 {
            let r = self.residual(&out);
            let w = self.pinv.apply(&r);
            for (i, row) in self.rows.iter().enumerate() {
                for (o, &coeff) in out.iter_mut().zip(row) {
                    *o += w[i] * coeff;
                }
            }
        }
        out
    }
}

fn classical_system(p: &ClassicalProblem) -> AffineSystem {
    let m = p.outcome_count();
    let mut rows = vec![vec![1.0; m]];
    let mut rhs = vec![1.0];
    for (row, &a) in p.observables().iter().zip(p.targets()) {
        rows.push(row.clone());
        rhs.push(a);
    }
    for g in p.symmetry() {
        for j in 0..m {
            let img = g.apply(j);
            if img != j {
                let mut row = vec![0.0; m];
                row[j] = 1.0;
                row[img] = -1.0;
                rows.push(row);
                rhs.push(0.0);
            }
        }
    }
    AffineSystem::new(rows, rhs)
}

/// Projects onto the affine set, then repairs negativity by clipping and
/// re-projecting. Returns the final point (which may still be infeasible if
/// the sets do not intersect).
fn toward_feasible(system: &AffineSystem, start: &[f64], rounds: usize) -> Vec<f64> {
    let mut x = system.project(start);
    for _ in 0..rounds {
        let worst = x.iter().copied().fold(0.0f64, f64::min);
        if worst >= -1e-13 && system.max_violation(&x) <= 1e-12 {
            break;
        }
        for v in &mut x {
            *v = v.max(0.0);
        }
        x = system.project(&x);
    }
    x
}

/// A feasible distribution for `p` near `start`, or `None` when the
/// alternating projections fail to land in the simplex. Test plumbing for
/// sampling the feasible region.
#[cfg(test)]
pub(crate) fn feasible_sample(p: &ClassicalProblem, start: &[f64]) -> Option<Vec<f64>> {
    let system = classical_system(p);
    let mut x = toward_feasible(&system, start, 200);
    if system.max_violation(&x) > CLASSICAL_FEAS_TOL {
        return None;
    }
    if x.iter().any(|&v| v < -1e-12) {
        return None;
    }
    for v in &mut x {
        *v = v.max(0.0);
    }
    Some(x)
}

fn shannon(x: &[f64]) -> f64 {
    -x.iter()
        .map(|&v| if v > 0.0 { v * v.ln() } else { 0.0 })
        .sum::<f64>()
}

/// Primal maximum-entropy reference for classical problems: projected
/// entropy ascent on the simplex intersected with the affine constraints
/// (observable rows plus explicit `p_j = p_{g(j)}` equalities).
pub fn primal_classical(p: &ClassicalProblem) -> Result<OracleResult<Vec<f64>>> {
    let m = p.outcome_count();
    if m > 12 {
        return Err(Error::Domain(format!("oracle handles at most 12 outcomes, got {m}")));
    }
    if p.observables().len() > 3 {
        return Err(Error::Domain(format!(
            "oracle handles at most 3 observables, got {}",
            p.observables().len()
        )));
    }
    let system = classical_system(p);
    let uniform = vec![1.0 / m as f64; m];
    let mut x = toward_feasible(&system, &uniform, 200);
    if system.max_violation(&x) > CLASSICAL_FEAS_TOL || x.iter().any(|&v| v < -1e-12) {
        return Err(Error::Infeasible(
            "constraints and simplex do not intersect".into(),
        ));
    }
    for v in &mut x {
        *v = v.max(0.0);
    }

    let mut entropy = shannon(&x);
    let mut step = 0.1;
    for _ in 0..10_000 {
        let grad: Vec<f64> = x.iter().map(|&v| -(v.max(1e-18).ln() + 1.0)).collect();
        let moved: Vec<f64> = x.iter().zip(&grad).map(|(v, g)| v + step * g).collect();
        let cand = toward_feasible(&system, &moved, 50);
        let ok = system.max_violation(&cand) <= CLASSICAL_FEAS_TOL
            && cand.iter().all(|&v| v >= -1e-12);
        let cand_entropy = shannon(&cand.iter().map(|&v| v.max(0.0)).collect::<Vec<_>>());
        if ok && cand_entropy > entropy {
            let movement = x
                .iter()
                .zip(&cand)
                .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
            x = cand.iter().map(|&v| v.max(0.0)).collect();
            entropy = cand_entropy;
            step = (step * 1.25).min(10.0);
            if movement < 1e-14 {
                break;
            }
        } else {
            step *= 0.5;
            if step < 1e-16 {
                break;
            }
        }
    }

    let max_violation = system.max_violation(&x);
    if max_violation > CLASSICAL_FEAS_TOL {
        return Err(Error::Infeasible(
            "projected ascent failed to stay feasible".into(),
        ));
    }
    Ok(OracleResult { entropy: shannon(&x), state: x, max_violation })
}

/// Real coordinates of a Hermitian matrix in the orthonormal coordinate
/// basis.
fn coords_of(a: &HermitianOperator, basis: &[HermitianOperator]) -> Vec<f64> {
    basis
        .iter()
        .map(|b| hs_inner(b, a).expect("same dimension"))
        .collect()
}

fn matrix_of(x: &[f64], basis: &[HermitianOperator], m: usize) -> HermitianOperator {
    let mut acc = ComplexMatrix::zeros(m, m);
    for (b, &w) in basis.iter().zip(x) {
        if w != 0.0 {
            acc = acc.add(&b.matrix().scaled(C64::new(w, 0.0))).expect("same dim");
        }
    }
    HermitianOperator::symmetrized(&acc).expect("real combination of Hermitian basis")
}

fn quantum_system(p: &QuantumProblem, basis: &[HermitianOperator]) -> Result<AffineSystem> {
    let m = p.dim();
    let nb = basis.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    // Unit trace: the first m coordinate elements are the diagonal units.
    let mut trace_row = vec![0.0; nb];
    for v in trace_row.iter_mut().take(m) {
        *v = 1.0;
    }
    rows.push(trace_row);
    rhs.push(1.0);
    for (obs, &a) in p.observables().iter().zip(p.targets()) {
        rows.push(coords_of(obs, basis));
        rhs.push(a);
    }
    // Raw entrywise invariance equations, independent of the compiled
    // constraint sets.
    let mut push_image_rows = |images: Vec<ComplexMatrix>| {
        for r in 0..m {
            for c in 0..m {
                let re: Vec<f64> = images.iter().map(|y| y.get(r, c).re).collect();
                let im: Vec<f64> = images.iter().map(|y| y.get(r, c).im).collect();
                rows.push(re);
                rhs.push(0.0);
                rows.push(im);
                rhs.push(0.0);
            }
        }
    };
    match p.symmetry() {
        None => {}
        Some(SymmetrySpec::LieGenerators(gens)) => {
            for q in gens {
                let images: Vec<ComplexMatrix> = basis
                    .iter()
                    .map(|b| commutator(b.matrix(), q.matrix()))
                    .collect::<Result<_>>()?;
                push_image_rows(images);
            }
        }
        Some(SymmetrySpec::FiniteGroupGenerators(us)) => {
            for u in us {
                let udag = u.adjoint();
                let images: Vec<ComplexMatrix> = basis
                    .iter()
                    .map(|b| {
                        u.matmul(b.matrix())
                            .and_then(|t| t.matmul(&udag))
                            .and_then(|t| t.sub(b.matrix()))
                    })
                    .collect::<Result<_>>()?;
                push_image_rows(images);
            }
        }
        Some(SymmetrySpec::ClassicalPermutations(_)) => {
            return Err(Error::Domain(
                "permutation symmetry applies to classical problems".into(),
            ))
        }
    }
    Ok(AffineSystem::new(rows, rhs))
}

/// Clips the spectrum to the PSD cone (no renormalization; the affine
/// projection restores the trace).
fn psd_clip(op: &HermitianOperator) -> Result<HermitianOperator> {
    let eig = eig_hermitian(op)?;
    if eig.eigenvalues[0] >= 0.0 {
        return Ok(op.clone());
    }
    let mat = eig.apply(|w| w.max(0.0));
    HermitianOperator::symmetrized(&mat)
}

fn quantum_toward_feasible(
    system: &AffineSystem,
    basis: &[HermitianOperator],
    m: usize,
    start: &[f64],
    rounds: usize,
) -> Result<Vec<f64>> {
    let mut x = system.project(start);
    for _ in 0..rounds {
        let op = matrix_of(&x, basis, m);
        let eig_min = eig_hermitian(&op)?.eigenvalues[0];
        if eig_min >= -1e-12 && system.max_violation(&x) <= 1e-12 {
            break;
        }
        x = coords_of(&psd_clip(&op)?, basis);
        x = system.project(&x);
    }
    Ok(x)
}

/// Primal maximum-entropy reference for quantum problems: entropy ascent
/// alternating Euclidean projection onto the affine constraint rows with
/// projection onto the PSD unit-trace cone.
pub fn primal_quantum(p: &QuantumProblem) -> Result<OracleResult<DensityMatrix>> {
    let m = p.dim();
    if m > 4 {
        return Err(Error::Domain(format!("oracle handles dimension at most 4, got {m}")));
    }
    let basis = hermitian_coord_basis(m);
    let system = quantum_system(p, &basis)?;
    let mixed = HermitianOperator::from_diag(&vec![1.0 / m as f64; m])?;
    let mut x = quantum_toward_feasible(&system, &basis, m, &coords_of(&mixed, &basis), 500)?;
    if system.max_violation(&x) > QUANTUM_FEAS_TOL {
        return Err(Error::Infeasible(
            "constraints and state space do not intersect".into(),
        ));
    }

    let entropy_of = |x: &[f64]| -> Result<f64> {
        let eig = eig_hermitian(&matrix_of(x, basis.as_slice(), m))?;
        Ok(-eig
            .eigenvalues
            .iter()
            .map(|&w| if w > 0.0 { w * w.ln() } else { 0.0 })
            .sum::<f64>())
    };

    let mut entropy = entropy_of(&x)?;
    let mut step = 0.1;
    for _ in 0..20_000 {
        // Entropy gradient -(ln rho + I), with the spectrum floored for the
        // logarithm.
        let eig = eig_hermitian(&matrix_of(&x, &basis, m))?;
        let grad_mat = eig.apply(|w| -(w.max(1e-15).ln() + 1.0));
        let grad = coords_of(&HermitianOperator::symmetrized(&grad_mat)?, &basis);
        let moved: Vec<f64> = x.iter().zip(&grad).map(|(v, g)| v + step * g).collect();
        let cand = quantum_toward_feasible(&system, &basis, m, &moved, 50)?;
        let cand_min = eig_hermitian(&matrix_of(&cand, &basis, m))?.eigenvalues[0];
        let ok = system.max_violation(&cand) <= QUANTUM_FEAS_TOL && cand_min >= -1e-9;
        let cand_entropy = entropy_of(&cand)?;
        if ok && cand_entropy > entropy {
            let movement = x
                .iter()
                .zip(&cand)
                .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
            x = cand;
            entropy = cand_entropy;
            step = (step * 1.25).min(10.0);
            if movement < 1e-13 {
                break;
            }
        } else {
            step *= 0.5;
            if step < 1e-14 {
                break;
            }
        }
    }

    let max_violation = system.max_violation(&x);
    if max_violation > QUANTUM_FEAS_TOL {
        return Err(Error::Infeasible(
            "projected ascent failed to stay feasible".into(),
        ));
    }
    // Final repair into an exactly valid density matrix.
    let op = matrix_of(&x, &basis, m);
    let eig = eig_hermitian(&op)?;
    let clipped: Vec<f64> = eig.eigenvalues.iter().map(|&w| w.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    let mat = eig.apply(|w| w.max(0.0) / total);
    let state = DensityMatrix::new(HermitianOperator::symmetrized(&mat)?.into_matrix())?;
    Ok(OracleResult { entropy: entropy_vn(&state), state, max_violation })
}
