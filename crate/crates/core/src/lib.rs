//! Maximum-entropy state estimation under symmetry constraints.
//!
//! Given mean values `⟨A_i⟩ = a_i` of a set of observables, the maximum-entropy
//! estimate of a state is the exponential-family (Gibbs) solution
//!
//! * classical: `p_j ∝ exp(Σ_i λ_i A_i(j))` over `m` outcomes,
//! * quantum: `ρ ∝ exp(Σ_i λ_i Â_i + Σ_c γ_c Ĉ_c)` on an `m`-dimensional Hilbert space,
//!
//! with the multipliers fixed by the constraints. This crate adds symmetry to
//! that picture: a symmetry declared as Lie-algebra generators, finite-group
//! unitaries, or outcome permutations is compiled into *linear* expectation
//! constraints (`Tr(ρ Ĉ_c) = 0`, or an orbit reduction in the classical case),
//! so the symmetric maximum-entropy problem stays inside the same
//! exponential family and is solved by the same dual machinery.
//!
//! Modules:
//!
//! * [`linalg`]: dense complex matrices, Hermitian operators, a cyclic Jacobi
//!   eigensolver and a spectral matrix exponential,
//! * [`basis`]: Hermitian operator bases (generalized Gell-Mann, a fixed
//!   two-qubit elementary basis) and named operator presets,
//! * [`symmetry`]: compilation of symmetry specifications into constraint
//!   sets, orbit partitions, commutant projection, invariance residuals,
//! * [`classical`]: orbit reduction and the damped-Newton dual solver for
//!   discrete distributions,
//! * [`quantum`]: Gibbs states, the dual descent solver and the
//!   constraint-deficit (delta) solver for density matrices,
//! * [`oracle`]: slow primal reference solvers used by the test suite.
//!
//! ```
//! use symmax_core::basis::named_operator;
//! use symmax_core::quantum::{solve_dual, QuantumProblem};
//! use symmax_core::{SolverOptions, Status};
//!
//! // A qubit with <sigma_z> = 0.5 and no symmetry.
//! let sz = named_operator("sigma_z", 2).unwrap();
//! let problem = QuantumProblem::new(2, vec![sz], vec![0.5], None, None).unwrap();
//! let report = solve_dual(&problem, &SolverOptions::default()).unwrap();
//! assert_eq!(report.status, Status::Converged);
//! assert!((report.state.matrix().get(0, 0).re - 0.75).abs() < 1e-9);
//! ```

pub mod basis;
pub mod classical;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod quantum;
pub mod symmetry;

mod linreal;
mod opts;
mod par;

pub use error::{Error, Result};
pub use opts::{SolverOptions, Status};
