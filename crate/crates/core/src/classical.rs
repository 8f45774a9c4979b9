//! Maximum-entropy distributions over finite outcome spaces with mean-value
//! and permutation-symmetry constraints.
//!
//! A permutation symmetry collapses the problem onto orbit representatives:
//! a symmetric distribution is constant on each orbit, so only the orbit
//! probabilities `q_l` remain free and each observable enters through its
//! orbit average. The solution has exponential-family form
//! `q_l = exp(sum_i lambda_i Atilde_i(l)) / Z`, and the multipliers are found
//! by minimizing the convex dual `ln Z(lambda) - lambda . a`.

use crate::error::{Error, Result};
use crate::linreal;
use crate::opts::{SolverOptions, Status};
use crate::symmetry::{orbits, OrbitPartition, Permutation};

/// Slack for deciding that a target sits exactly on the achievable boundary.
const BOUNDARY_EDGE_TOL: f64 = 1e-9;
/// Relative eigenvalue cutoff for the pseudo-inverse Newton step.
const HESSIAN_PINV_TOL: f64 = 1e-12;
/// Armijo sufficient-decrease constant.
const ARMIJO_C1: f64 = 1e-4;

/// Mean-value problem over `m` outcomes with optional permutation symmetry.
#[derive(Clone, Debug)]
pub struct ClassicalProblem {
    m: usize,
    observables: Vec<Vec<f64>>,
    targets: Vec<f64>,
    symmetry: Vec<Permutation>,
}

impl ClassicalProblem {
    /// Validates shapes, finiteness, and the necessary per-observable range
    /// condition `min_j A_i(j) <= a_i <= max_j A_i(j)`; a target outside the
    /// raw range admits no distribution at all.
    pub fn new(
        m: usize,
        observables: Vec<Vec<f64>>,
        targets: Vec<f64>,
        symmetry: Option<Vec<Permutation>>,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("need at least one outcome".into()));
        }
        if observables.len() != targets.len() {
            return Err(Error::Dimension {
                expected: observables.len(),
                got: targets.len(),
            });
        }
        for row in &observables {
            if row.len() != m {
                return Err(Error::Dimension { expected: m, got: row.len() });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Domain("observable entries must be finite".into()));
            }
        }
        for (i, &a) in targets.iter().enumerate() {
            if !a.is_finite() {
                return Err(Error::Domain(format!("target {} is not finite", i + 1)));
            }
            let lo = observables[i].iter().copied().fold(f64::INFINITY, f64::min);
            let hi = observables[i].iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if a < lo - BOUNDARY_EDGE_TOL || a > hi + BOUNDARY_EDGE_TOL {
                return Err(Error::Infeasible(format!(
                    "target {a} for observable {} outside its range [{lo}, {hi}]",
                    i + 1
                )));
            }
        }
        let symmetry = symmetry.unwrap_or_default();
        for p in &symmetry {
            if p.len() != m {
                return Err(Error::Dimension { expected: m, got: p.len() });
            }
        }
        Ok(Self { m, observables, targets, symmetry })
    }

    pub fn outcome_count(&self) -> usize {
        self.m
    }

    pub fn observables(&self) -> &[Vec<f64>] {
        &self.observables
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn symmetry(&self) -> &[Permutation] {
        &self.symmetry
    }
}

/// The orbit-collapsed problem: degeneracies and orbit-averaged observables.
#[derive(Clone, Debug)]
pub struct ReducedProblem {
    partition: OrbitPartition,
    reduced_observables: Vec<Vec<f64>>,
    targets: Vec<f64>,
}

impl ReducedProblem {
    pub fn partition(&self) -> &OrbitPartition {
        &self.partition
    }

    /// One row per observable, one entry per orbit.
    pub fn reduced_observables(&self) -> &[Vec<f64>] {
        &self.reduced_observables
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    /// Expands per-outcome orbit probabilities back to the full distribution
    /// (`p_j = q_l` for every `j` in orbit `l`).
    pub fn expand(&self, q: &[f64]) -> Vec<f64> {
        let mut p = vec![0.0; self.partition.outcome_count()];
        for (l, orbit) in self.partition.orbits().iter().enumerate() {
            for &j in orbit {
                p[j] = q[l];
            }
        }
        p
    }
}

/// Collapses a problem onto its orbits. Only the orbit average of each
/// observable is visible to a symmetric distribution, so
/// `Atilde_i(l) = (1/d_l) sum_{j in orbit l} A_i(j)`.
pub fn reduce_problem(p: &ClassicalProblem) -> Result<ReducedProblem> {
    let partition = orbits(p.symmetry(), p.outcome_count())?;
    let reduced_observables = p
        .observables()
        .iter()
        .map(|row| {
            partition
                .orbits()
                .iter()
                .map(|orbit| orbit.iter().map(|&j| row[j]).sum::<f64>() / orbit.len() as f64)
                .collect()
        })
        .collect();
    Ok(ReducedProblem {
        partition,
        reduced_observables,
        targets: p.targets().to_vec(),
    })
}

/// Solution bundle: the full distribution, its orbit representatives, the
/// multipliers, and diagnostics.
#[derive(Clone, Debug)]
pub struct ClassicalSolution {
    pub probabilities: Vec<f64>,
    pub orbit_probabilities: Vec<f64>,
    pub multipliers: Vec<f64>,
    pub log_partition: f64,
    pub entropy: f64,
    pub residuals: Vec<f64>,
    pub status: Status,
    pub iterations: usize,
}

/// Dual state at a multiplier vector: per-outcome orbit probabilities `q`,
/// `ln Z`, and the orbit means of each reduced observable.
#[derive(Clone, Debug)]
pub struct DualPoint {
    pub q: Vec<f64>,
    pub log_z: f64,
    pub means: Vec<f64>,
}

/// Evaluates the exponential family at `lambda` (log-sum-exp shifted). The
/// means are the analytic gradient of `log_z`.
///
/// Panics if `lambda` does not have one entry per observable.
pub fn eval_dual(reduced: &ReducedProblem, lambda: &[f64]) -> DualPoint {
    assert_eq!(
        lambda.len(),
        reduced.reduced_observables().len(),
        "one multiplier per observable"
    );
    let d = reduced.partition().degeneracies();
    let r = d.len();
    let mut scores = vec![0.0; r];
    for (i, row) in reduced.reduced_observables().iter().enumerate() {
        for l in 0..r {
            scores[l] += lambda[i] * row[l];
        }
    }
    let shift = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = scores.iter().map(|s| (s - shift).exp()).collect();
    let z: f64 = weights.iter().zip(d).map(|(w, &dl)| dl as f64 * w).sum();
    let q: Vec<f64> = weights.iter().map(|w| w / z).collect();
    let means = reduced
        .reduced_observables()
        .iter()
        .map(|row| {
            row.iter()
                .zip(&q)
                .zip(d)
                .map(|((&al, &ql), &dl)| dl as f64 * ql * al)
                .sum()
        })
        .collect();
    DualPoint { q, log_z: shift + z.ln(), means }
}

fn dual_value(point: &DualPoint, targets: &[f64], lambda: &[f64]) -> f64 {
    point.log_z - lambda.iter().zip(targets).map(|(l, a)| l * a).sum::<f64>()
}

/// Covariance matrix of the reduced observables under `q` — the dual Hessian.
fn dual_hessian(reduced: &ReducedProblem, point: &DualPoint) -> Vec<Vec<f64>> {
    let rows = reduced.reduced_observables();
    let d = reduced.partition().degeneracies();
    let n = rows.len();
    let mut h = vec![vec![0.0; n]; n];
    for i in 0..n {
        for ip in i..n {
            let mut second = 0.0;
            for l in 0..rows[i].len() {
                second += d[l] as f64 * point.q[l] * rows[i][l] * rows[ip][l];
            }
            let cov = second - point.means[i] * point.means[ip];
            h[i][ip] = cov;
            h[ip][i] = cov;
        }
    }
    h
}

/// Feasibility pre-check against the reduced (orbit-averaged) observable
/// ranges: `None` when some target lies strictly outside its range, otherwise
/// `Some(edge)` with `edge` true when a target sits exactly on a range edge —
/// a boundary target, reachable only as a diverging-multiplier limit.
pub fn check_feasible(p: &ClassicalProblem) -> Result<Option<bool>> {
    Ok(reduced_feasible(&reduce_problem(p)?))
}

fn reduced_feasible(reduced: &ReducedProblem) -> Option<bool> {
    let mut edge = false;
    for (i, &a) in reduced.targets().iter().enumerate() {
        let row = &reduced.reduced_observables()[i];
        let lo = row.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let slack = BOUNDARY_EDGE_TOL * (1.0 + lo.abs().max(hi.abs()));
        if a < lo - slack || a > hi + slack {
            return None;
        }
        if (a - lo).abs() <= slack || (a - hi).abs() <= slack {
            edge = true;
        }
    }
    Some(edge)
}

/// Finds the maximum-entropy distribution matching the targets.
///
/// Damped Newton on the dual with a gradient fallback when the covariance is
/// singular. Statuses: `Converged` on an interior optimum; `Boundary` when a
/// target sits on the edge of the reduced achievable range or the multiplier
/// cap is hit; `Infeasible` when a target falls strictly outside the reduced
/// range; `MaxIterations` otherwise.
pub fn solve_classical(p: &ClassicalProblem, opts: &SolverOptions) -> Result<ClassicalSolution> {
    opts.validate()?;
    let reduced = reduce_problem(p)?;
    let n = p.targets().len();
    let r = reduced.partition().len();

    let Some(edge_target) = reduced_feasible(&reduced) else {
        // No symmetric distribution can reach some target.
        let point = eval_dual(&reduced, &vec![0.0; n]);
        return Ok(finish(p, &reduced, vec![0.0; n], &point, Status::Infeasible, 0));
    };

    let mut lambda = vec![0.0; n];
    let mut point = eval_dual(&reduced, &lambda);
    let mut status = Status::MaxIterations;
    let mut iterations = 0;

    for iter in 0..opts.max_iter {
        iterations = iter;
        let grad: Vec<f64> = point
            .means
            .iter()
            .zip(reduced.targets())
            .map(|(m, a)| m - a)
            .collect();
        if grad.iter().all(|g| g.abs() <= opts.tol) {
            status = Status::Converged;
            break;
        }

        // Newton through the pseudo-inverse: observables that are dependent
        // after reduction (covariance rank < n) leave a gradient-free null
        // direction, and the range-restricted step still converges
        // quadratically there.
        let direction: Vec<f64> = if r > 1 {
            let hessian = dual_hessian(&reduced, &point);
            let pinv = linreal::PsdPinv::new(&hessian, HESSIAN_PINV_TOL);
            pinv.apply(&grad).iter().map(|d| -d).collect()
        } else {
            grad.iter().map(|g| -g).collect()
        };
        let slope: f64 = grad.iter().zip(&direction).map(|(g, d)| g * d).sum();
        let direction = if slope < 0.0 {
            direction
        } else {
            grad.iter().map(|g| -g).collect()
        };
        let slope: f64 = grad.iter().zip(&direction).map(|(g, d)| g * d).sum();

        let d0 = dual_value(&point, reduced.targets(), &lambda);
        let mut step = 1.0;
        let mut moved = false;
        while step > 1e-18 {
            let trial: Vec<f64> = lambda
                .iter()
                .zip(&direction)
                .map(|(l, d)| l + step * d)
                .collect();
            let trial_point = eval_dual(&reduced, &trial);
            if dual_value(&trial_point, reduced.targets(), &trial)
                <= d0 + ARMIJO_C1 * step * slope
            {
                lambda = trial;
                point = trial_point;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if !moved {
            // Line search cannot improve the dual any further; classify below.
            break;
        }
        if lambda.iter().any(|l| l.abs() > opts.multiplier_cap) {
            for l in &mut lambda {
                *l = l.clamp(-opts.multiplier_cap, opts.multiplier_cap);
            }
            point = eval_dual(&reduced, &lambda);
            status = Status::Boundary;
            break;
        }
    }

    if status == Status::MaxIterations {
        // A stalled line search at a satisfied gradient still counts.
        let converged = point
            .means
            .iter()
            .zip(reduced.targets())
            .all(|(m, a)| (m - a).abs() <= opts.tol);
        if converged {
            status = Status::Converged;
        }
    }
    if status == Status::Converged && edge_target {
        // The optimum exists only as a diverging-multiplier limit; the state
        // is the limiting point but no finite multiplier certifies it.
        status = Status::Boundary;
    }
    Ok(finish(p, &reduced, lambda, &point, status, iterations + 1))
}

fn finish(
    p: &ClassicalProblem,
    reduced: &ReducedProblem,
    lambda: Vec<f64>,
    point: &DualPoint,
    status: Status,
    iterations: usize,
) -> ClassicalSolution {
    let probabilities = reduced.expand(&point.q);
    let residuals = p
        .observables()
        .iter()
        .zip(p.targets())
        .map(|(row, &a)| {
            (row.iter().zip(&probabilities).map(|(x, pj)| x * pj).sum::<f64>() - a).abs()
        })
        .collect();
    let entropy = -point
        .q
        .iter()
        .zip(reduced.partition().degeneracies())
        .map(|(&q, &d)| if q > 0.0 { d as f64 * q * q.ln() } else { 0.0 })
        .sum::<f64>();
    ClassicalSolution {
        probabilities,
        orbit_probabilities: point.q.clone(),
        multipliers: lambda,
        log_partition: point.log_z,
        entropy,
        residuals,
        status,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dice_problem(a: f64) -> ClassicalProblem {
        let sym = vec![
            Permutation::from_cycles(6, &[vec![1, 2]]).unwrap(),
            Permutation::from_cycles(6, &[vec![2, 3]]).unwrap(),
            Permutation::from_cycles(6, &[vec![3, 4]]).unwrap(),
        ];
        ClassicalProblem::new(
            6,
            vec![(1..=6).map(|j| j as f64).collect()],
            vec![a],
            Some(sym),
        )
        .unwrap()
    }

    // --- reduce_problem ----------------------------------------------------

    #[test]
    fn dice_reduction() {
        let reduced = reduce_problem(&dice_problem(3.5)).unwrap();
        assert_eq!(reduced.partition().degeneracies(), &[1, 4, 1]);
        assert_eq!(reduced.reduced_observables(), &[vec![1.0, 3.5, 6.0]]);
        let total: usize = reduced.partition().degeneracies().iter().sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn no_symmetry_is_identity_reduction() {
        let p = ClassicalProblem::new(4, vec![vec![0., 1., 2., 3.]], vec![1.5], None).unwrap();
        let reduced = reduce_problem(&p).unwrap();
        assert_eq!(reduced.partition().len(), 4);
        assert_eq!(reduced.reduced_observables(), &[vec![0., 1., 2., 3.]]);
    }

    #[test]
    fn full_symmetric_group_averages_everything() {
        let sym = vec![
            Permutation::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap(),
            Permutation::from_cycles(6, &[vec![0, 1]]).unwrap(),
        ];
        let p = ClassicalProblem::new(
            6,
            vec![(1..=6).map(|j| j as f64).collect()],
            vec![3.5],
            Some(sym),
        )
        .unwrap();
        let reduced = reduce_problem(&p).unwrap();
        assert_eq!(reduced.partition().len(), 1);
        assert!((reduced.reduced_observables()[0][0] - 3.5).abs() < 1e-12);
    }

    // --- construction ------------------------------------------------------

    #[test]
    fn rejects_bad_shapes_and_targets() {
        assert!(matches!(
            ClassicalProblem::new(0, vec![], vec![], None),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ClassicalProblem::new(3, vec![vec![1., 2.]], vec![1.5], None),
            Err(Error::Dimension { .. })
        ));
        assert!(matches!(
            ClassicalProblem::new(2, vec![vec![0., 1.]], vec![], None),
            Err(Error::Dimension { .. })
        ));
        assert!(matches!(
            ClassicalProblem::new(2, vec![vec![0., f64::NAN]], vec![0.5], None),
            Err(Error::Domain(_))
        ));
        // Target outside the raw observable range: no distribution exists.
        assert!(matches!(
            ClassicalProblem::new(6, vec![(1..=6).map(|j| j as f64).collect()], vec![7.0], None),
            Err(Error::Infeasible(_))
        ));
    }

    // --- solve_classical ---------------------------------------------------

    #[test]
    fn fair_dice_is_uniform() {
        let sol = solve_classical(&dice_problem(3.5), &SolverOptions::default()).unwrap();
        assert_eq!(sol.status, Status::Converged);
        for &p in &sol.probabilities {
            assert!((p - 1.0 / 6.0).abs() < 1e-10);
        }
        assert!(sol.multipliers[0].abs() < 1e-8);
        assert!((sol.entropy - 6.0f64.ln()).abs() < 1e-9);
        assert!((sol.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn loaded_dice_matches_scalar_oracle() {
        let sol = solve_classical(&dice_problem(4.5), &SolverOptions::default()).unwrap();
        assert_eq!(sol.status, Status::Converged);
        // Independent route: bisection on the one-dimensional multiplier
        // equation (e^l + 14 e^{3.5 l} + 6 e^{6 l}) / Z = 4.5 with
        // Z = e^l + 4 e^{3.5 l} + e^{6 l}.
        let f = |l: f64| {
            let z = l.exp() + 4.0 * (3.5 * l).exp() + (6.0 * l).exp();
            (l.exp() + 14.0 * (3.5 * l).exp() + 6.0 * (6.0 * l).exp()) / z - 4.5
        };
        let lam = oracle::scalar_root(f, 0.0, 2.0).unwrap();
        let z = lam.exp() + 4.0 * (3.5 * lam).exp() + (6.0 * lam).exp();
        let expect = [
            lam.exp() / z,
            (3.5 * lam).exp() / z,
            (3.5 * lam).exp() / z,
            (3.5 * lam).exp() / z,
            (3.5 * lam).exp() / z,
            (6.0 * lam).exp() / z,
        ];
        for (got, want) in sol.probabilities.iter().zip(expect) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
        // Exact equality inside the orbit, by construction.
        assert_eq!(sol.probabilities[1], sol.probabilities[2]);
        assert_eq!(sol.probabilities[2], sol.probabilities[3]);
        assert_eq!(sol.probabilities[3], sol.probabilities[4]);
        assert!(sol.residuals[0] < 1e-8);
    }

    #[test]
    fn hull_vertex_target_reports_boundary() {
        let p = ClassicalProblem::new(2, vec![vec![0.0, 1.0]], vec![1.0], None).unwrap();
        let sol = solve_classical(&p, &SolverOptions::default()).unwrap();
        assert_eq!(sol.status, Status::Boundary);
        assert!(sol.probabilities[1] > 1.0 - 1e-8);
        assert!(sol.probabilities[0] >= 0.0);
        assert!((sol.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reduced_range_infeasibility() {
        // Raw range allows 4.5 but full symmetry collapses the observable to
        // its mean 3.5, so no symmetric distribution reaches 4.5.
        let sym = vec![
            Permutation::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap(),
            Permutation::from_cycles(6, &[vec![0, 1]]).unwrap(),
        ];
        let p = ClassicalProblem::new(
            6,
            vec![(1..=6).map(|j| j as f64).collect()],
            vec![4.5],
            Some(sym),
        )
        .unwrap();
        let sol = solve_classical(&p, &SolverOptions::default()).unwrap();
        assert_eq!(sol.status, Status::Infeasible);
    }

    #[test]
    fn output_is_exactly_symmetric() {
        let p = dice_problem(4.5);
        let sol = solve_classical(&p, &SolverOptions::default()).unwrap();
        for g in p.symmetry() {
            for j in 0..6 {
                assert_eq!(sol.probabilities[j], sol.probabilities[g.apply(j)]);
            }
        }
    }

    #[test]
    fn two_constraint_problem_converges() {
        let p = ClassicalProblem::new(
            5,
            vec![
                vec![1., 2., 3., 4., 5.],
                vec![1., 0., 1., 0., 1.],
            ],
            vec![2.7, 0.55],
            None,
        )
        .unwrap();
        let sol = solve_classical(&p, &SolverOptions::default()).unwrap();
        assert_eq!(sol.status, Status::Converged);
        for r in &sol.residuals {
            assert!(*r < 1e-8);
        }
        assert!((sol.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(sol.probabilities.iter().all(|&pj| pj > 0.0));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for case in 0..20 {
            let m = rng.gen_range(3..9);
            let n = rng.gen_range(1..3);
            let observables: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect())
                .collect();
            let p = ClassicalProblem::new(
                m,
                observables.clone(),
                observables
                    .iter()
                    .map(|row| row.iter().sum::<f64>() / m as f64)
                    .collect(),
                None,
            )
            .unwrap();
            let reduced = reduce_problem(&p).unwrap();
            let lambda: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let point = eval_dual(&reduced, &lambda);
            for i in 0..n {
                let h = 1e-5;
                let mut plus = lambda.clone();
                plus[i] += h;
                let mut minus = lambda.clone();
                minus[i] -= h;
                let fd = (eval_dual(&reduced, &plus).log_z
                    - eval_dual(&reduced, &minus).log_z)
                    / (2.0 * h);
                let scale = fd.abs().max(1.0);
                assert!(
                    (point.means[i] - fd).abs() / scale < 1e-6,
                    "case {case} coord {i}: {} vs {}",
                    point.means[i],
                    fd
                );
            }
        }
    }

    #[test]
    fn reduction_agrees_with_explicit_equalities() {
        // Solving through the orbit collapse must equal the primal oracle on
        // the unreduced problem with explicit p_j = p_{g(j)} rows.
        for a in [3.2, 3.5, 4.1, 4.5] {
            let p = dice_problem(a);
            let sol = solve_classical(&p, &SolverOptions::default()).unwrap();
            assert_eq!(sol.status, Status::Converged);
            let orc = oracle::primal_classical(&p).unwrap();
            for (ps, po) in sol.probabilities.iter().zip(&orc.state) {
                assert!((ps - po).abs() < 1e-8, "a={a}: {ps} vs {po}");
            }
        }
    }

    #[test]
    fn entropy_beats_sampled_feasible_distributions() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut built = 0;
        while built < 50 {
            let m = rng.gen_range(3..9);
            let n = rng.gen_range(1..3);
            // Draw targets from an actual distribution so the problem is
            // feasible by construction.
            let mut base: Vec<f64> = (0..m).map(|_| rng.gen_range(0.05..1.0)).collect();
            let total: f64 = base.iter().sum();
            for b in &mut base {
                *b /= total;
            }
            let observables: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect())
                .collect();
            let targets: Vec<f64> = observables
                .iter()
                .map(|row| row.iter().zip(&base).map(|(x, p)| x * p).sum())
                .collect();
            let Ok(p) = ClassicalProblem::new(m, observables, targets, None) else {
                continue;
            };
            let sol = solve_classical(&p, &SolverOptions::default()).unwrap();
            if sol.status != Status::Converged {
                continue;
            }
            built += 1;
            for _ in 0..100 {
                let start: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..1.0)).collect();
                let Some(feasible) = oracle::feasible_sample(&p, &start) else {
                    continue;
                };
                let h = -feasible
                    .iter()
                    .map(|&q| if q > 0.0 { q * q.ln() } else { 0.0 })
                    .sum::<f64>();
                assert!(
                    sol.entropy >= h - 1e-9,
                    "sampled distribution beat the solver: {h} > {}",
                    sol.entropy
                );
            }
        }
    }
}
