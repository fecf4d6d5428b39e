//! Solver strategies behind a common trait, registered by name so the route
//! can be picked at runtime (`--solver` on the CLI).

use super::{solve_dense_oracle, solve_recursive, DirichletProblem, SolutionCoefficients,
            SolveError};

/// A strategy that turns a Dirichlet problem into solution coefficients.
pub trait DirichletSolver: Sync {
    /// Registry name of the strategy.
    fn name(&self) -> &'static str;

    /// One-line description for `--help`-style listings.
    fn describe(&self) -> &'static str;

    fn solve(&self, problem: &DirichletProblem) -> Result<SolutionCoefficients, SolveError>;
}

/// The recursive kernel-update route: one rank-one downdate per constraint.
pub struct RecursiveChainSolver;

impl DirichletSolver for RecursiveChainSolver {
    fn name(&self) -> &'static str {
        "recursive"
    }

    fn describe(&self) -> &'static str {
        "fold constraints in one at a time via rank-one kernel downdates"
    }

    fn solve(&self, problem: &DirichletProblem) -> Result<SolutionCoefficients, SolveError> {
        solve_recursive(problem)
    }
}

/// The closed-form route: factor the N×N regularized normal system.
pub struct DenseFactorSolver;

impl DirichletSolver for DenseFactorSolver {
    fn name(&self) -> &'static str {
        "dense"
    }

    fn describe(&self) -> &'static str {
        "assemble and LU-factor the regularized normal system in one shot"
    }

    fn solve(&self, problem: &DirichletProblem) -> Result<SolutionCoefficients, SolveError> {
        solve_dense_oracle(problem)
    }
}

static REGISTRY: [&dyn DirichletSolver; 2] = [&RecursiveChainSolver, &DenseFactorSolver];

/// All registered solver strategies, default first.
pub fn solver_registry() -> &'static [&'static dyn DirichletSolver] {
    &REGISTRY
}

/// Looks a strategy up by its registry name.
pub fn solver_by_name(name: &str) -> Option<&'static dyn DirichletSolver> {
    REGISTRY.iter().copied().find(|s| s.name() == name)
}
