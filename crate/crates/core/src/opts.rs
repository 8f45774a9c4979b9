//! Options and termination status shared by the classical and quantum solvers.

use crate::error::{Error, Result};

/// Knobs shared by `classical::solve_classical`, `quantum::solve_dual`, and
/// `quantum::solve_delta`. The defaults match the command-line defaults.
#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Convergence threshold on the infinity norm of the dual gradient.
    pub tol: f64,
    /// Iteration cap per solve (per restart for the delta solver).
    pub max_iter: usize,
    /// Infinity-norm cap on the multiplier vector. Crossing it means the
    /// target sits on the boundary of the feasible set and the exact optimum
    /// is a limit point; the solver stops and reports the capped state.
    pub multiplier_cap: f64,
    /// Base seed for the delta solver's random restarts.
    pub seed: u64,
    /// Number of delta-solver restarts (the first starts from zero, the rest
    /// from seeded random points).
    pub restarts: usize,
    /// Convergence threshold on the squared constraint deficit of the delta
    /// solver.
    pub delta_tol: f64,
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::Domain(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::Domain("max_iter must be at least 1".into()));
        }
        if !(self.multiplier_cap.is_finite() && self.multiplier_cap > 0.0) {
            return Err(Error::Domain(format!(
                "multiplier cap must be positive, got {}",
                self.multiplier_cap
            )));
        }
        if self.restarts == 0 {
            return Err(Error::Domain("restarts must be at least 1".into()));
        }
        if !(self.delta_tol.is_finite() && self.delta_tol > 0.0) {
            return Err(Error::Domain(format!(
                "delta_tol must be positive, got {}",
                self.delta_tol
            )));
        }
        Ok(())
    }
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 10_000,
            multiplier_cap: 1e3,
            seed: 0,
            restarts: 8,
            delta_tol: 1e-16,
        }
    }
}

/// Termination status of a solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Gradient (or deficit) threshold reached; the reported state satisfies
    /// the constraints to solver tolerance.
    Converged,
    /// The target sits on the boundary of the feasible region and is only
    /// reachable as a diverging-multiplier limit — detected either by the
    /// multiplier cap or by the target matching the spectral edge of the
    /// (projected) observable. The reported state is the best approximation
    /// found.
    Boundary,
    /// The constraints admit no state; the reported state is the symmetric
    /// maximally mixed one and the residuals show the deficit.
    Infeasible,
    /// Iteration cap hit before any of the above.
    MaxIterations,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::Boundary => "boundary",
            Status::Infeasible => "infeasible",
            Status::MaxIterations => "max-iterations",
        }
    }
}
