//! Gibbs states and the two quantum maximum-entropy solvers.
//!
//! Every solution has exponential-family form `rho = exp(M)/Tr exp(M)` with
//! `M = sum_i lambda_i A_i + sum_c gamma_c C_c`, where the `A_i` are the
//! constrained observables and the `C_c` are the compiled symmetry
//! constraints. The primary solver minimizes the convex dual
//! `D(theta) = ln Z(theta) - theta . t`, whose exact gradient is
//! `Tr(rho(theta) C_c) - t_c`; the alternative solver minimizes the squared
//! constraint deficit `Delta(theta)` directly with numerical gradients and
//! seeded random restarts.

use crate::basis::{gell_mann_basis, OperatorBasis};
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, hs_inner, C64, ComplexMatrix, HermitianOperator};
use crate::linreal;
use crate::opts::{SolverOptions, Status};
use crate::par;
use crate::symmetry::{
    commutant_project, compile_finite_group_constraints, compile_lie_constraints,
    invariance_residual, ConstraintSet, SymmetrySpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Permitted negative slack on density-matrix eigenvalues.
const EIGENVALUE_FLOOR: f64 = -1e-10;
/// Unit-trace tolerance.
const TRACE_TOL: f64 = 1e-12;
/// Slack for deciding that a target sits exactly on the spectral edge of the
/// (commutant-projected) observable.
const BOUNDARY_EDGE_TOL: f64 = 1e-9;
/// Armijo sufficient-decrease constant.
const ARMIJO_C1: f64 = 1e-4;
/// Relative eigenvalue cutoff for the pseudo-inverse Newton step.
const HESSIAN_PINV_TOL: f64 = 1e-12;
/// Central-difference step for the delta solver's numerical gradient.
const DELTA_FD_STEP: f64 = 1e-6;

/// A quantum state: Hermitian, positive semidefinite (to `-1e-10`), unit
/// trace (to `1e-12`). The spectrum is computed once at construction.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    op: HermitianOperator,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let op = HermitianOperator::new(mat)?;
        let trace = op.matrix().trace()?.re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::Domain(format!("trace must be 1, got {trace}")));
        }
        let eig = eig_hermitian(&op)?;
        if eig.eigenvalues[0] < EIGENVALUE_FLOOR {
            return Err(Error::Domain(format!(
                "not positive semidefinite: eigenvalue {}",
                eig.eigenvalues[0]
            )));
        }
        Ok(Self { op, eigenvalues: eig.eigenvalues })
    }

    /// Construction bypass for states already known valid by construction
    /// (spectral form with a softmax spectrum).
    pub(crate) fn from_spectrum(op: HermitianOperator, eigenvalues: Vec<f64>) -> Self {
        Self { op, eigenvalues }
    }

    pub fn maximally_mixed(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("dimension must be positive".into()));
        }
        let w = 1.0 / m as f64;
        Ok(Self {
            op: HermitianOperator::from_diag(&vec![w; m])?,
            eigenvalues: vec![w; m],
        })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.op.matrix()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    /// Spectrum in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `Tr(rho A)`, real by Hermiticity of both factors.
    pub fn expectation(&self, observable: &HermitianOperator) -> Result<f64> {
        hs_inner(&self.op, observable)
    }
}

/// Von Neumann entropy `-sum w ln w` in nats, with `0 ln 0 = 0`.
pub fn entropy_vn(rho: &DensityMatrix) -> f64 {
    -rho.eigenvalues()
        .iter()
        .map(|&w| if w > 0.0 { w * w.ln() } else { 0.0 })
        .sum::<f64>()
}

/// Mean-value problem on an `m`-dimensional Hilbert space with optional
/// operator symmetry. The basis is used to compile the symmetry into
/// constraints and defaults to the generalized Gell-Mann basis.
#[derive(Clone, Debug)]
pub struct QuantumProblem {
    dim: usize,
    observables: Vec<HermitianOperator>,
    targets: Vec<f64>,
    symmetry: Option<SymmetrySpec>,
    basis: OperatorBasis,
}

impl QuantumProblem {
    pub fn new(
        dim: usize,
        observables: Vec<HermitianOperator>,
        targets: Vec<f64>,
        symmetry: Option<SymmetrySpec>,
        basis: Option<OperatorBasis>,
    ) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Domain("dimension must be at least 2".into()));
        }
        if observables.len() != targets.len() {
            return Err(Error::Dimension {
                expected: observables.len(),
                got: targets.len(),
            });
        }
        for (i, (obs, &a)) in observables.iter().zip(&targets).enumerate() {
            if obs.dim() != dim {
                return Err(Error::Dimension { expected: dim, got: obs.dim() });
            }
            if !a.is_finite() {
                return Err(Error::Domain(format!("target {} is not finite", i + 1)));
            }
            let eig = eig_hermitian(obs)?;
            let lo = eig.eigenvalues[0];
            let hi = *eig.eigenvalues.last().expect("non-empty spectrum");
            let slack = BOUNDARY_EDGE_TOL * (1.0 + lo.abs().max(hi.abs()));
            if a < lo - slack || a > hi + slack {
                return Err(Error::Infeasible(format!(
                    "target {a} for observable {} outside its spectrum [{lo}, {hi}]",
                    i + 1
                )));
            }
        }
        if let Some(spec) = &symmetry {
            if matches!(spec, SymmetrySpec::ClassicalPermutations(_)) {
                return Err(Error::Domain(
                    "permutation symmetry applies to classical problems".into(),
                ));
            }
            let sdim = spec.validate()?;
            if sdim != dim {
                return Err(Error::Dimension { expected: dim, got: sdim });
            }
        }
        let basis = match basis {
            Some(b) => b,
            None => gell_mann_basis(dim)?,
        };
        if basis.dim() != dim {
            return Err(Error::Dimension { expected: dim, got: basis.dim() });
        }
        if basis.len() != dim * dim {
            return Err(Error::Domain(format!(
                "need a complete operator basis ({} elements), got {}",
                dim * dim,
                basis.len()
            )));
        }
        Ok(Self { dim, observables, targets, symmetry, basis })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn observables(&self) -> &[HermitianOperator] {
        &self.observables
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn symmetry(&self) -> Option<&SymmetrySpec> {
        self.symmetry.as_ref()
    }

    pub fn basis(&self) -> &OperatorBasis {
        &self.basis
    }
}

/// Everything a solve returns: the state, the multiplier blocks, and
/// diagnostics. `lambda` pairs with the observables, `gamma` with the
/// compiled symmetry constraints (labels in `constraint_labels`); `residuals`
/// covers observables first, then symmetry constraints.
#[derive(Clone, Debug)]
pub struct SolverReport {
    pub state: DensityMatrix,
    pub lambda: Vec<f64>,
    pub gamma: Vec<f64>,
    pub constraint_labels: Vec<String>,
    pub log_partition: f64,
    pub entropy: f64,
    pub residuals: Vec<f64>,
    pub invariance: f64,
    pub iterations: usize,
    pub status: Status,
}

/// `rho = exp(sum_c theta_c C_c)/Z` and `ln Z`, computed spectrally. The
/// exponent spectrum is shifted by its maximum before exponentiation, so the
/// construction cannot overflow for any finite multipliers.
pub fn gibbs_state(
    operators: &[HermitianOperator],
    multipliers: &[f64],
) -> Result<(DensityMatrix, f64)> {
    if operators.len() != multipliers.len() {
        return Err(Error::Dimension {
            expected: operators.len(),
            got: multipliers.len(),
        });
    }
    if operators.is_empty() {
        return Err(Error::Domain("need at least one operator".into()));
    }
    if multipliers.iter().any(|t| !t.is_finite()) {
        return Err(Error::Domain("multipliers must be finite".into()));
    }
    let m = operators[0].dim();
    let mut acc = ComplexMatrix::zeros(m, m);
    for (op, &theta) in operators.iter().zip(multipliers) {
        if op.dim() != m {
            return Err(Error::Dimension { expected: m, got: op.dim() });
        }
        acc = acc.add(&op.matrix().scaled(C64::new(theta, 0.0)))?;
    }
    let exponent = HermitianOperator::symmetrized(&acc)?;
    let eig = eig_hermitian(&exponent)?;
    let shift = *eig.eigenvalues.last().expect("non-empty spectrum");
    let weights: Vec<f64> = eig.eigenvalues.iter().map(|s| (s - shift).exp()).collect();
    let z: f64 = weights.iter().sum();
    let log_z = shift + z.ln();
    let mat = eig.apply(|s| (s - shift).exp() / z);
    let op = HermitianOperator::symmetrized(&mat)?;
    let spectrum = weights.iter().map(|w| w / z).collect();
    Ok((DensityMatrix::from_spectrum(op, spectrum), log_z))
}

/// `ln Z(theta)` and its exact gradient `Tr(rho(theta) C_c)`. The formula
/// holds despite non-commuting operators because every operator enters the
/// single exponent linearly and the trace is cyclic.
pub fn log_partition_gradient(
    operators: &[HermitianOperator],
    multipliers: &[f64],
) -> Result<(f64, Vec<f64>)> {
    let (rho, log_z) = gibbs_state(operators, multipliers)?;
    let gradient = operators
        .iter()
        .map(|c| rho.expectation(c))
        .collect::<Result<Vec<f64>>>()?;
    Ok((log_z, gradient))
}

/// `sinh(d)/d`, series-expanded near zero.
fn sinhc(d: f64) -> f64 {
    if d.abs() < 1e-5 {
        1.0 + d * d / 6.0
    } else {
        d.sinh() / d
    }
}

/// Exact Hessian of `ln Z` at `theta`. Because the operators need not
/// commute, the entry is not the naive covariance: differentiating the
/// exponential brings in the divided difference of `exp` across eigenvalue
/// pairs,
///
/// `H_cd = sum_{k,l} (e^{s_k} - e^{s_l}) / ((s_k - s_l) Z) (C_c)_{kl}
/// (C_d)_{lk} - <C_c><C_d>`,
///
/// in the eigenbasis of the exponent (diagonal pairs reduce to `e^{s_k}/Z`,
/// and when everything commutes the whole form collapses to the covariance).
fn dual_curvature(operators: &[HermitianOperator], theta: &[f64]) -> Result<Vec<Vec<f64>>> {
    let n = operators.len();
    let m = operators[0].dim();
    let mut acc = ComplexMatrix::zeros(m, m);
    for (op, &t) in operators.iter().zip(theta) {
        if t != 0.0 {
            acc = acc.add(&op.matrix().scaled(C64::new(t, 0.0)))?;
        }
    }
    let eig = eig_hermitian(&HermitianOperator::symmetrized(&acc)?)?;
    let shift = eig.eigenvalues[m - 1];
    let t_k: Vec<f64> = eig.eigenvalues.iter().map(|s| s - shift).collect();
    let z: f64 = t_k.iter().map(|t| t.exp()).sum();

    // phi[k][l] = (e^{t_k} - e^{t_l}) / ((t_k - t_l) z), continuous across
    // coincident eigenvalues.
    let mut phi = vec![vec![0.0; m]; m];
    for k in 0..m {
        for l in 0..m {
            let half = 0.5 * (t_k[k] - t_k[l]);
            phi[k][l] = (0.5 * (t_k[k] + t_k[l])).exp() * sinhc(half) / z;
        }
    }

    let v = &eig.eigenvectors;
    let vd = v.adjoint();
    let hats: Vec<ComplexMatrix> = operators
        .iter()
        .map(|c| vd.matmul(c.matrix())?.matmul(v))
        .collect::<Result<_>>()?;
    let expect: Vec<f64> = hats
        .iter()
        .map(|hat| (0..m).map(|k| hat.get(k, k).re * t_k[k].exp() / z).sum())
        .collect();

    let mut h = vec![vec![0.0; n]; n];
    for c in 0..n {
        for d in c..n {
            let mut acc = 0.0;
            for k in 0..m {
                for l in 0..m {
                    acc += phi[k][l] * (hats[c].get(k, l) * hats[d].get(l, k)).re;
                }
            }
            let entry = acc - expect[c] * expect[d];
            h[c][d] = entry;
            h[d][c] = entry;
        }
    }
    Ok(h)
}

/// Observable and symmetry constraints merged into one list: observables
/// first (lambda block), then the compiled symmetry constraints in
/// compilation order (gamma block).
struct MergedConstraints {
    operators: Vec<HermitianOperator>,
    targets: Vec<f64>,
    n_obs: usize,
    labels: Vec<String>,
}

fn merge_constraints(p: &QuantumProblem) -> Result<MergedConstraints> {
    let set = match p.symmetry() {
        None => ConstraintSet::empty(p.dim()),
        Some(SymmetrySpec::LieGenerators(gens)) => {
            compile_lie_constraints(gens, p.basis())?
        }
        Some(SymmetrySpec::FiniteGroupGenerators(us)) => {
            compile_finite_group_constraints(us, p.basis())?
        }
        Some(SymmetrySpec::ClassicalPermutations(_)) => {
            return Err(Error::Domain(
                "permutation symmetry applies to classical problems".into(),
            ))
        }
    };
    let mut operators = p.observables().to_vec();
    let mut targets = p.targets().to_vec();
    operators.extend_from_slice(set.operators());
    targets.extend_from_slice(set.targets());
    Ok(MergedConstraints {
        operators,
        targets,
        n_obs: p.observables().len(),
        labels: set.labels().to_vec(),
    })
}

/// Feasibility pre-check: each target must lie within the spectral range of
/// its observable projected onto the commutant of the symmetry — `None` when
/// one falls strictly outside. Otherwise `Some(edge)`, with `edge` true when
/// a target sits exactly on that range's edge (a boundary target, solvable
/// only as a diverging-multiplier limit).
pub fn check_feasible(p: &QuantumProblem) -> Result<Option<bool>> {
    let mut edge = false;
    for (obs, &a) in p.observables().iter().zip(p.targets()) {
        let projected = match p.symmetry() {
            Some(spec) => commutant_project(obs, spec)?,
            None => obs.clone(),
        };
        let eig = eig_hermitian(&projected)?;
        let lo = eig.eigenvalues[0];
        let hi = *eig.eigenvalues.last().expect("non-empty spectrum");
        let slack = BOUNDARY_EDGE_TOL * (1.0 + lo.abs().max(hi.abs()));
        if a < lo - slack || a > hi + slack {
            return Ok(None);
        }
        if (a - lo).abs() <= slack || (a - hi).abs() <= slack {
            edge = true;
        }
    }
    Ok(Some(edge))
}

fn build_report(
    p: &QuantumProblem,
    merged: &MergedConstraints,
    theta: &[f64],
    state: DensityMatrix,
    log_partition: f64,
    iterations: usize,
    status: Status,
) -> Result<SolverReport> {
    let residuals = merged
        .operators
        .iter()
        .zip(&merged.targets)
        .map(|(c, &t)| Ok((state.expectation(c)? - t).abs()))
        .collect::<Result<Vec<f64>>>()?;
    let invariance = match p.symmetry() {
        Some(spec) => invariance_residual(&state, spec)?,
        None => 0.0,
    };
    let entropy = entropy_vn(&state);
    Ok(SolverReport {
        lambda: theta[..merged.n_obs].to_vec(),
        gamma: theta[merged.n_obs..].to_vec(),
        constraint_labels: merged.labels.clone(),
        log_partition,
        entropy,
        residuals,
        invariance,
        iterations,
        status,
        state,
    })
}

/// Report for the degenerate cases that never iterate: an infeasible target
/// or an empty constraint list, both answered by the maximally mixed state.
fn mixed_state_report(
    p: &QuantumProblem,
    merged: &MergedConstraints,
    status: Status,
) -> Result<SolverReport> {
    let state = DensityMatrix::maximally_mixed(p.dim())?;
    let log_partition = (p.dim() as f64).ln();
    let theta = vec![0.0; merged.operators.len()];
    build_report(p, merged, &theta, state, log_partition, 0, status)
}

/// Dual descent: minimizes `D(theta) = ln Z - theta . t` by damped Newton
/// steps with the exact divided-difference curvature, pseudo-inverting the
/// Hessian so that directions degenerate after constraint merging do not
/// disturb the step.
///
/// Statuses: `Converged` at `||grad||_inf <= tol`; `Boundary` when a target
/// sits on the projected spectral edge or the multiplier cap is hit;
/// `Infeasible` when a target is outside the projected spectral range;
/// `MaxIterations` otherwise.
pub fn solve_dual(p: &QuantumProblem, opts: &SolverOptions) -> Result<SolverReport> {
    opts.validate()?;
    let merged = merge_constraints(p)?;
    let Some(edge_target) = check_feasible(p)? else {
        return mixed_state_report(p, &merged, Status::Infeasible);
    };
    if merged.operators.is_empty() {
        return mixed_state_report(p, &merged, Status::Converged);
    }

    let n = merged.operators.len();
    let eval = |theta: &[f64]| -> Result<(DensityMatrix, f64, f64, Vec<f64>)> {
        let (rho, log_z) = gibbs_state(&merged.operators, theta)?;
        let value = log_z
            - theta.iter().zip(&merged.targets).map(|(t, a)| t * a).sum::<f64>();
        let grad = merged
            .operators
            .iter()
            .zip(&merged.targets)
            .map(|(c, &a)| Ok(rho.expectation(c)? - a))
            .collect::<Result<Vec<f64>>>()?;
        Ok((rho, log_z, value, grad))
    };

    let mut theta = vec![0.0; n];
    let (mut rho, mut log_z, mut value, mut grad) = eval(&theta)?;
    let mut status = Status::MaxIterations;
    let mut iterations = 0;

    for iter in 0..opts.max_iter {
        iterations = iter + 1;
        if grad.iter().all(|g| g.abs() <= opts.tol) {
            status = Status::Converged;
            iterations = iter;
            break;
        }

        // Newton through the pseudo-inverse of the exact curvature;
        // rank-deficient directions (constraint combinations proportional to
        // the identity) carry no gradient on feasible problems, so cutting
        // them is harmless.
        let hessian = dual_curvature(&merged.operators, &theta)?;
        let pinv = linreal::PsdPinv::new(&hessian, HESSIAN_PINV_TOL);
        let mut direction: Vec<f64> = pinv.apply(&grad).iter().map(|d| -d).collect();
        let mut slope: f64 = grad.iter().zip(&direction).map(|(g, d)| g * d).sum();
        if slope >= 0.0 {
            direction = grad.iter().map(|g| -g).collect();
            slope = grad.iter().zip(&direction).map(|(g, d)| g * d).sum();
        }

        let mut step = 1.0;
        let mut accepted = None;
        while step > 1e-20 {
            let trial: Vec<f64> = theta
                .iter()
                .zip(&direction)
                .map(|(t, d)| t + step * d)
                .collect();
            let candidate = eval(&trial)?;
            if candidate.2 <= value + ARMIJO_C1 * step * slope {
                accepted = Some((trial, candidate));
                break;
            }
            step *= 0.5;
        }
        let Some((new_theta, (new_rho, new_log_z, new_value, new_grad))) = accepted else {
            break; // line-search stall; classified below
        };

        theta = new_theta;
        rho = new_rho;
        log_z = new_log_z;
        value = new_value;
        grad = new_grad;

        if theta.iter().any(|t| t.abs() > opts.multiplier_cap) {
            for t in &mut theta {
                *t = t.clamp(-opts.multiplier_cap, opts.multiplier_cap);
            }
            let capped = eval(&theta)?;
            rho = capped.0;
            log_z = capped.1;
            grad = capped.3;
            status = Status::Boundary;
            break;
        }
    }

    if status == Status::MaxIterations && grad.iter().all(|g| g.abs() <= opts.tol) {
        status = Status::Converged;
    }
    if status == Status::Converged && edge_target {
        // The true optimum is a diverging-multiplier limit; the state is the
        // limit point but no finite multiplier certifies interior optimality.
        status = Status::Boundary;
    }
    build_report(p, &merged, &theta, rho, log_z, iterations, status)
}

/// Outcome of one delta-solver restart.
struct RestartOutcome {
    theta: Vec<f64>,
    deficit: f64,
    iterations: usize,
    capped: bool,
}

/// Constraint-deficit minimization: minimizes
/// `Delta(theta) = sum_c (Tr(rho(theta) C_c) - t_c)^2` by gradient descent
/// with central-difference gradients and seeded random restarts. Restart 0
/// starts from zero; restart `r` draws its start from a generator seeded with
/// `opts.seed + r`, so runs are reproducible and parallel execution returns
/// exactly the sequential result (best deficit, ties to the lowest restart).
pub fn solve_delta(p: &QuantumProblem, opts: &SolverOptions) -> Result<SolverReport> {
    opts.validate()?;
    let merged = merge_constraints(p)?;
    let Some(edge_target) = check_feasible(p)? else {
        return mixed_state_report(p, &merged, Status::Infeasible);
    };
    if merged.operators.is_empty() {
        return mixed_state_report(p, &merged, Status::Converged);
    }

    let n = merged.operators.len();
    let deficit = |theta: &[f64]| -> Result<f64> {
        let (rho, _) = gibbs_state(&merged.operators, theta)?;
        let mut total = 0.0;
        for (c, &t) in merged.operators.iter().zip(&merged.targets) {
            let r = rho.expectation(c)? - t;
            total += r * r;
        }
        Ok(total)
    };

    let outcomes: Vec<Result<RestartOutcome>> = par::map_indexed(opts.restarts, |restart| {
        let mut theta = if restart == 0 {
            vec![0.0; n]
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed + restart as u64);
            (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
        };
        let mut value = deficit(&theta)?;
        let mut iterations = 0;
        let mut capped = false;
        for iter in 0..opts.max_iter {
            iterations = iter + 1;
            if value <= opts.delta_tol {
                iterations = iter;
                break;
            }
            let mut grad = vec![0.0; n];
            for c in 0..n {
                let mut plus = theta.clone();
                plus[c] += DELTA_FD_STEP;
                let mut minus = theta.clone();
                minus[c] -= DELTA_FD_STEP;
                grad[c] = (deficit(&plus)? - deficit(&minus)?) / (2.0 * DELTA_FD_STEP);
            }
            let gg: f64 = grad.iter().map(|g| g * g).sum();
            if gg == 0.0 {
                break;
            }
            let mut step = 1.0;
            let mut moved = false;
            while step > 1e-20 {
                let trial: Vec<f64> = theta
                    .iter()
                    .zip(&grad)
                    .map(|(t, g)| t - step * g)
                    .collect();
                let trial_value = deficit(&trial)?;
                if trial_value <= value - ARMIJO_C1 * step * gg {
                    theta = trial;
                    value = trial_value;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if !moved {
                break;
            }
            if theta.iter().any(|t| t.abs() > opts.multiplier_cap) {
                for t in &mut theta {
                    *t = t.clamp(-opts.multiplier_cap, opts.multiplier_cap);
                }
                value = deficit(&theta)?;
                capped = true;
                break;
            }
        }
        Ok(RestartOutcome { theta, deficit: value, iterations, capped })
    });

    let mut best: Option<RestartOutcome> = None;
    for outcome in outcomes {
        let outcome = outcome?;
        let better = match &best {
            None => true,
            Some(b) => outcome.deficit < b.deficit,
        };
        if better {
            best = Some(outcome);
        }
    }
    let best = best.expect("at least one restart");

    let (rho, log_z) = gibbs_state(&merged.operators, &best.theta)?;
    let mut status = if best.deficit <= opts.delta_tol {
        Status::Converged
    } else if best.capped {
        Status::Boundary
    } else {
        Status::MaxIterations
    };
    if status == Status::Converged && edge_target {
        status = Status::Boundary;
    }
    build_report(p, &merged, &best.theta, rho, log_z, best.iterations, status)
}
