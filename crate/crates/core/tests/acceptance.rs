//! End-to-end acceptance checks. Each numbered criterion prints one
//! PASS/FAIL line; the test fails if any criterion fails. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines on success.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symmax_core::basis::{gell_mann_basis, named_operator, two_qubit_paper_basis};
use symmax_core::classical::{eval_dual, reduce_problem, solve_classical, ClassicalProblem};
use symmax_core::linalg::{
    eig_hermitian, expm_hermitian, kron, C64, ComplexMatrix, HermitianOperator,
};
use symmax_core::oracle;
use symmax_core::quantum::{
    gibbs_state, log_partition_gradient, solve_delta, solve_dual, DensityMatrix, QuantumProblem,
};
use symmax_core::symmetry::{
    commutant_project, compile_finite_group_constraints, compile_lie_constraints,
    invariance_residual, orbits, ConstraintSet, Permutation, SymmetrySpec,
};
use symmax_core::{SolverOptions, Status};

// --- shared helpers ---------------------------------------------------------

fn random_hermitian(rng: &mut ChaCha8Rng, m: usize) -> HermitianOperator {
    let mut mat = ComplexMatrix::zeros(m, m);
    for r in 0..m {
        for c in 0..m {
            mat.set(
                r,
                c,
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            );
        }
    }
    HermitianOperator::symmetrized(&mat).unwrap()
}

/// Full-rank random state: `W W^dagger` plus a small identity floor.
fn random_density(rng: &mut ChaCha8Rng, m: usize) -> DensityMatrix {
    let mut w = ComplexMatrix::zeros(m, m);
    for r in 0..m {
        for c in 0..m {
            w.set(
                r,
                c,
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            );
        }
    }
    let mut mat = w.matmul(&w.adjoint()).unwrap();
    mat = mat
        .add(&ComplexMatrix::identity(m).scaled(C64::new(0.05, 0.0)))
        .unwrap();
    let tr = mat.trace().unwrap().re;
    DensityMatrix::new(mat.scaled(C64::new(1.0 / tr, 0.0))).unwrap()
}

/// Unitary with a random eigenframe and random non-trivial phases.
fn random_unitary(rng: &mut ChaCha8Rng, m: usize) -> ComplexMatrix {
    let frame = eig_hermitian(&random_hermitian(rng, m)).unwrap().eigenvectors;
    let mut d = ComplexMatrix::zeros(m, m);
    for k in 0..m {
        let phi: f64 = rng.gen_range(0.5..3.0);
        d.set(k, k, C64::new(phi.cos(), phi.sin()));
    }
    frame.matmul(&d).unwrap().matmul(&frame.adjoint()).unwrap()
}

fn normalized_state(mat: &ComplexMatrix) -> DensityMatrix {
    let tr = mat.trace().unwrap().re;
    DensityMatrix::new(mat.scaled(C64::new(1.0 / tr, 0.0))).unwrap()
}

/// A random state invariant under the symmetry, built as `exp` of a two-term
/// polynomial in the generator (so it commutes exactly in exact arithmetic).
fn symmetric_state(rng: &mut ChaCha8Rng, spec: &SymmetrySpec) -> DensityMatrix {
    let c1 = rng.gen_range(-0.8..0.8);
    let c2 = rng.gen_range(-0.5..0.5);
    let exponent = match spec {
        SymmetrySpec::LieGenerators(gens) => {
            let q = &gens[0];
            let q2 = HermitianOperator::new(q.matrix().matmul(q.matrix()).unwrap()).unwrap();
            q.scaled(c1).add(&q2.scaled(c2)).unwrap()
        }
        SymmetrySpec::FiniteGroupGenerators(us) => {
            let u = &us[0];
            let re = u.add(&u.adjoint()).unwrap().scaled(C64::new(0.5, 0.0));
            let im = u.sub(&u.adjoint()).unwrap().scaled(C64::new(0.0, -0.5));
            let a = HermitianOperator::symmetrized(&re).unwrap();
            let b = HermitianOperator::symmetrized(&im).unwrap();
            a.scaled(c1).add(&b.scaled(c2)).unwrap()
        }
        SymmetrySpec::ClassicalPermutations(_) => unreachable!("quantum specs only"),
    };
    normalized_state(expm_hermitian(&exponent).unwrap().matrix())
}

fn random_transposition(rng: &mut ChaCha8Rng, m: usize) -> Permutation {
    let a = rng.gen_range(0..m);
    let mut b = rng.gen_range(0..m);
    while b == a {
        b = rng.gen_range(0..m);
    }
    Permutation::from_cycles(m, &[vec![a, b]]).unwrap()
}

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

fn two_qubit_problem(a: f64) -> QuantumProblem {
    let sx = named_operator("sigma_x", 2).unwrap();
    let sz = named_operator("sigma_z", 2).unwrap();
    let id2 = ComplexMatrix::identity(2);
    let obs = HermitianOperator::new(
        kron(sx.matrix(), &id2)
            .add(&kron(&id2, sx.matrix()))
            .unwrap(),
    )
    .unwrap();
    let gen = HermitianOperator::new(kron(sz.matrix(), &id2)).unwrap();
    QuantumProblem::new(
        4,
        vec![obs],
        vec![a],
        Some(SymmetrySpec::LieGenerators(vec![gen])),
        Some(two_qubit_paper_basis()),
    )
    .unwrap()
}

fn off_diagonal_max(rho: &DensityMatrix) -> f64 {
    let m = rho.dim();
    let mut worst = 0.0f64;
    for r in 0..m {
        for c in 0..m {
            if r != c {
                worst = worst.max(rho.matrix().get(r, c).norm());
            }
        }
    }
    worst
}

// --- criteria ---------------------------------------------------------------

fn qubit_no_observables() {
    let gen = named_operator("sigma_z", 2).unwrap();
    let p = QuantumProblem::new(
        2,
        vec![],
        vec![],
        Some(SymmetrySpec::LieGenerators(vec![gen])),
        None,
    )
    .unwrap();
    let r = solve_dual(&p, &SolverOptions::default()).unwrap();
    assert_eq!(r.status, Status::Converged);
    let half = ComplexMatrix::from_real_diag(&[0.5, 0.5]);
    assert!(r.state.matrix().max_abs_diff(&half) <= 1e-9);
    assert!((r.entropy - 2.0f64.ln()).abs() <= 1e-9);
}

fn qubit_sigma_z_family() {
    let sz = named_operator("sigma_z", 2).unwrap();
    for a in [-0.9, -0.5, 0.0, 0.5, 0.9] {
        let p = QuantumProblem::new(
            2,
            vec![sz.clone()],
            vec![a],
            Some(SymmetrySpec::LieGenerators(vec![sz.clone()])),
            None,
        )
        .unwrap();
        let r = solve_dual(&p, &SolverOptions::default()).unwrap();
        assert_eq!(r.status, Status::Converged, "a = {a}");
        let expect = ComplexMatrix::from_real_diag(&[(1.0 + a) / 2.0, (1.0 - a) / 2.0]);
        assert!(r.state.matrix().max_abs_diff(&expect) <= 1e-8, "a = {a}");
    }
}

fn qutrit_both_solvers() {
    let jz = named_operator("J_z", 3).unwrap();
    let mut delta_opts = SolverOptions::default();
    delta_opts.delta_tol = 1e-20;
    for (target, printed) in [(0.5, [0.616, 0.268, 0.116]), (-0.5, [0.116, 0.268, 0.616])] {
        let p = QuantumProblem::new(
            3,
            vec![jz.clone()],
            vec![target],
            Some(SymmetrySpec::LieGenerators(vec![jz.clone()])),
            None,
        )
        .unwrap();
        let reports = [
            solve_dual(&p, &SolverOptions::default()).unwrap(),
            solve_delta(&p, &delta_opts).unwrap(),
        ];
        for r in &reports {
            assert_eq!(r.status, Status::Converged, "target = {target}");
            for (j, want) in printed.iter().enumerate() {
                let got = r.state.matrix().get(j, j).re;
                assert!((got - want).abs() <= 1e-3, "target {target} diag {j}: {got}");
            }
            assert!(off_diagonal_max(&r.state) <= 1e-9, "target = {target}");
        }
    }
}

fn two_qubit_interior() {
    let r = solve_dual(&two_qubit_problem(0.0), &SolverOptions::default()).unwrap();
    assert_eq!(r.status, Status::Converged);
    let quarter = ComplexMatrix::from_real_diag(&[0.25; 4]);
    assert!(r.state.matrix().max_abs_diff(&quarter) <= 1e-8);
}

fn two_qubit_boundary() {
    for a in [1.0, -1.0] {
        let r = solve_dual(&two_qubit_problem(a), &SolverOptions::default()).unwrap();
        assert_eq!(r.status, Status::Boundary, "a = {a}");
        // Limit state: maximally mixed first qubit, pure x-eigenstate second.
        let mut block = ComplexMatrix::zeros(2, 2);
        block.set(0, 0, C64::new(0.5, 0.0));
        block.set(1, 1, C64::new(0.5, 0.0));
        block.set(0, 1, C64::new(0.5 * a, 0.0));
        block.set(1, 0, C64::new(0.5 * a, 0.0));
        let half = ComplexMatrix::identity(2).scaled(C64::new(0.5, 0.0));
        let limit = kron(&half, &block);
        assert!(r.state.matrix().max_abs_diff(&limit) <= 2e-2, "a = {a}");
    }
}

fn loaded_dice() {
    let fair = solve_classical(&dice_problem(3.5), &SolverOptions::default()).unwrap();
    assert_eq!(fair.status, Status::Converged);
    for &p in &fair.probabilities {
        assert!((p - 1.0 / 6.0).abs() <= 1e-10);
    }

    let loaded = solve_classical(&dice_problem(4.5), &SolverOptions::default()).unwrap();
    assert_eq!(loaded.status, Status::Converged);
    // Orbit means are 1, 3.5, 6 with degeneracies 1, 4, 1; the multiplier
    // solves the stationarity equation for the mean.
    let lam = oracle::scalar_root(
        |l| {
            let z = l.exp() + 4.0 * (3.5 * l).exp() + (6.0 * l).exp();
            (l.exp() + 14.0 * (3.5 * l).exp() + 6.0 * (6.0 * l).exp()) / z - 4.5
        },
        0.0,
        2.0,
    )
    .unwrap();
    let z = lam.exp() + 4.0 * (3.5 * lam).exp() + (6.0 * lam).exp();
    let mid = (3.5 * lam).exp() / z;
    let expect = [lam.exp() / z, mid, mid, mid, mid, (6.0 * lam).exp() / z];
    for (got, want) in loaded.probabilities.iter().zip(&expect) {
        assert!((got - want).abs() <= 1e-10, "{got} vs {want}");
    }
    assert!(loaded.probabilities[1..5]
        .iter()
        .all(|&p| p == loaded.probabilities[1]));
}

fn compiled_set(
    rng: &mut ChaCha8Rng,
    dim: usize,
    lie: bool,
) -> (ConstraintSet, SymmetrySpec) {
    let basis = gell_mann_basis(dim).unwrap();
    if lie {
        let q = random_hermitian(rng, dim);
        let set = compile_lie_constraints(std::slice::from_ref(&q), &basis).unwrap();
        (set, SymmetrySpec::LieGenerators(vec![q]))
    } else {
        let u = random_unitary(rng, dim);
        let set = compile_finite_group_constraints(std::slice::from_ref(&u), &basis).unwrap();
        (set, SymmetrySpec::FiniteGroupGenerators(vec![u]))
    }
}

fn compilation_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    for i in 0..200 {
        let dim = 2 + i % 3;
        let (set, spec) = compiled_set(&mut rng, dim, i % 2 == 0);
        assert!(!set.is_empty());
        let rho = symmetric_state(&mut rng, &spec);
        assert!(invariance_residual(&rho, &spec).unwrap() <= 1e-10);
        for op in set.operators() {
            assert!(rho.expectation(op).unwrap().abs() <= 1e-9, "case {i}");
        }
    }
    for i in 0..200 {
        let dim = 2 + i % 3;
        let (set, spec) = compiled_set(&mut rng, dim, i % 2 == 0);
        let rho = loop {
            let cand = random_density(&mut rng, dim);
            if invariance_residual(&cand, &spec).unwrap() > 1e-3 {
                break cand;
            }
        };
        let worst = set
            .operators()
            .iter()
            .map(|op| rho.expectation(op).unwrap().abs())
            .fold(0.0f64, f64::max);
        assert!(worst > 1e-6, "case {i}: worst violation {worst}");
    }
}

fn gradient_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let h = 1e-5;
    for case in 0..20 {
        let dim = 2 + case % 3;
        let k = 1 + case % 6;
        let ops: Vec<HermitianOperator> =
            (0..k).map(|_| random_hermitian(&mut rng, dim)).collect();
        let theta: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let (_, grad) = log_partition_gradient(&ops, &theta).unwrap();
        for i in 0..k {
            let mut plus = theta.clone();
            plus[i] += h;
            let mut minus = theta.clone();
            minus[i] -= h;
            let fd =
                (gibbs_state(&ops, &plus).unwrap().1 - gibbs_state(&ops, &minus).unwrap().1)
                    / (2.0 * h);
            let scale = fd.abs().max(1.0);
            assert!(
                (grad[i] - fd).abs() / scale <= 1e-6,
                "case {case} coord {i}: {} vs {fd}",
                grad[i]
            );
        }
    }
    for case in 0..20 {
        let m = 3 + case % 6;
        let n = 1 + case % 3;
        let observables: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect())
            .collect();
        let targets: Vec<f64> = observables
            .iter()
            .map(|row| {
                let lo = row.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                lo + rng.gen_range(0.2..0.8) * (hi - lo)
            })
            .collect();
        let symmetry = if case % 2 == 0 {
            None
        } else {
            Some(vec![random_transposition(&mut rng, m)])
        };
        let p = ClassicalProblem::new(m, observables, targets, symmetry).unwrap();
        let reduced = reduce_problem(&p).unwrap();
        let lambda: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let point = eval_dual(&reduced, &lambda);
        for i in 0..n {
            let mut plus = lambda.clone();
            plus[i] += h;
            let mut minus = lambda.clone();
            minus[i] -= h;
            let fd = (eval_dual(&reduced, &plus).log_z - eval_dual(&reduced, &minus).log_z)
                / (2.0 * h);
            let scale = fd.abs().max(1.0);
            assert!(
                (point.means[i] - fd).abs() / scale <= 1e-6,
                "case {case} coord {i}"
            );
        }
    }
}

fn oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    for case in 0..15 {
        let m = 3 + case % 6;
        let perms = if case % 2 == 0 {
            Vec::new()
        } else {
            vec![
                random_transposition(&mut rng, m),
                random_transposition(&mut rng, m),
            ]
        };
        // Feasible by construction: targets are means of an actual symmetric
        // distribution.
        let part = orbits(&perms, m).unwrap();
        let mut base: Vec<f64> = (0..m).map(|_| rng.gen_range(0.2..1.0)).collect();
        let total: f64 = base.iter().sum();
        for b in &mut base {
            *b /= total;
        }
        let mut p0 = vec![0.0; m];
        for orbit in part.orbits() {
            let avg = orbit.iter().map(|&j| base[j]).sum::<f64>() / orbit.len() as f64;
            for &j in orbit {
                p0[j] = avg;
            }
        }
        let n = 1 + case % 2;
        let observables: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect())
            .collect();
        let targets: Vec<f64> = observables
            .iter()
            .map(|row| row.iter().zip(&p0).map(|(a, p)| a * p).sum())
            .collect();
        let symmetry = if perms.is_empty() { None } else { Some(perms) };
        let problem = ClassicalProblem::new(m, observables, targets, symmetry).unwrap();
        let sol = solve_classical(&problem, &SolverOptions::default()).unwrap();
        assert_eq!(sol.status, Status::Converged, "classical case {case}");
        let orc = oracle::primal_classical(&problem).unwrap();
        assert!(sol.entropy >= orc.entropy - 1e-6, "classical case {case}");
        for (s, o) in sol.probabilities.iter().zip(&orc.state) {
            assert!((s - o).abs() <= 1e-4, "classical case {case}: {s} vs {o}");
        }
    }
    for case in 0..15 {
        let dim = 2 + case % 3;
        let rho0 = random_density(&mut rng, dim);
        let obs = random_hermitian(&mut rng, dim);
        let (target, spec) = if case % 2 == 0 {
            let q = random_hermitian(&mut rng, dim);
            let spec = SymmetrySpec::LieGenerators(vec![q]);
            let projected = commutant_project(&obs, &spec).unwrap();
            (rho0.expectation(&projected).unwrap(), Some(spec))
        } else {
            (rho0.expectation(&obs).unwrap(), None)
        };
        let problem = QuantumProblem::new(dim, vec![obs], vec![target], spec, None).unwrap();
        let r = solve_dual(&problem, &SolverOptions::default()).unwrap();
        assert_eq!(r.status, Status::Converged, "quantum case {case}");
        let orc = oracle::primal_quantum(&problem).unwrap();
        assert!(r.entropy >= orc.entropy - 1e-6, "quantum case {case}");
        assert!(
            r.state.matrix().max_abs_diff(orc.state.matrix()) <= 1e-4,
            "quantum case {case}"
        );
    }
}

fn expm_closed_form() {
    let sx = named_operator("sigma_x", 2).unwrap();
    let sy = named_operator("sigma_y", 2).unwrap();
    let grid = [-2.0, -1.0, 0.0, 1.0, 2.0];
    for gx in grid {
        for gy in grid {
            let exponent = sx.scaled(gx).add(&sy.scaled(gy)).unwrap();
            let got = expm_hermitian(&exponent).unwrap();
            let g = (gx * gx + gy * gy).sqrt();
            let tangential = if g > 0.0 { g.sinh() / g } else { 1.0 };
            let expect = ComplexMatrix::identity(2)
                .scaled(C64::new(g.cosh(), 0.0))
                .add(&exponent.matrix().scaled(C64::new(tangential, 0.0)))
                .unwrap();
            assert!(
                got.matrix().max_abs_diff(&expect) <= 1e-12,
                "gx={gx} gy={gy}"
            );
        }
    }
}

// --- harness ----------------------------------------------------------------

fn run(num: usize, name: &str, body: impl FnOnce()) -> bool {
    let pass = catch_unwind(AssertUnwindSafe(body)).is_ok();
    println!(
        "criterion {num:02} ({name}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

#[test]
fn acceptance() {
    let results = [
        run(1, "qubit z-rotation, no observables", qubit_no_observables),
        run(2, "qubit z-rotation, sigma_z targets", qubit_sigma_z_family),
        run(3, "qutrit J_z targets, both solvers", qutrit_both_solvers),
        run(4, "two-qubit transverse target 0", two_qubit_interior),
        run(5, "two-qubit boundary targets", two_qubit_boundary),
        run(6, "loaded dice", loaded_dice),
        run(7, "constraint compilation equivalence", compilation_equivalence),
        run(8, "dual gradient vs finite differences", gradient_finite_differences),
        run(9, "solver vs primal oracle", oracle_equivalence),
        run(10, "matrix exponential closed form", expm_closed_form),
    ];
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, &pass)| !pass)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
