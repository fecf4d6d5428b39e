//! Tikhonov-regularized Dirichlet solves on scattered boundary samples.
//!
//! A problem is a finite list of constraints `(z_j, A_j, λ_j)` plus a global
//! regularization parameter `λ > 0`; the minimizer of
//! `λ‖F‖² + Σ_j λ_j |Re F(z_j) − A_j|²` over the Hardy space lies in
//! `span{Re K(·, z_j)}`, so a solve produces a coefficient vector `c` with
//! `u(z) = Σ_j c_j Re K(z, z_j)`.
//!
//! Two interchangeable routes produce `c`. [`solve_recursive`] folds the
//! constraints in one at a time through rank-one kernel downdates and reads
//! the coefficients off the accumulated chain matrix. [`solve_dense_oracle`]
//! assembles and factors the equivalent normal system `(λI + ΛM)c = ΛA` in
//! one shot. The routes coincide in exact arithmetic and are cross-checked
//! against each other in the tests; both are registered behind the
//! [`DirichletSolver`] trait for runtime selection by name.

mod io;
mod strategy;

pub use io::{continuation_csv, problem_from_json, solution_csv, ProblemIoError};
pub use strategy::{
    solver_by_name, solver_registry, DenseFactorSolver, DirichletSolver, RecursiveChainSolver,
};

pub use crate::linalg::SquareMatrix;

use crate::halfplane::{szego_re, szego_re_grad, PointError, UpperHalfPoint};
use crate::linalg::lu_solve;
use thiserror::Error;

/// Denominators of the chain update are ≥ 1 in exact arithmetic; anything
/// this small signals a corrupted state rather than a hard problem.
const DENOMINATOR_FLOOR: f64 = 1e-14;

/// Rejections raised while assembling a problem.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("lambda must be a finite positive number, got {0}")]
    BadLambda(f64),
    #[error("a Dirichlet problem needs at least one boundary sample")]
    Empty,
    #[error("sample value must be finite, got {0}")]
    BadValue(f64),
    #[error("sample weight must be finite and nonnegative, got {0}")]
    BadWeight(f64),
    #[error("lambda schedule must be nonempty, positive and strictly decreasing")]
    BadSchedule,
    #[error("coefficient vector length {coeffs} does not match sample count {samples}")]
    LengthMismatch { coeffs: usize, samples: usize },
    #[error(transparent)]
    Point(#[from] PointError),
}

/// Failures of a solve itself (as opposed to malformed input).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("conditioning failure at chain step {step}: denominator {denominator:e} below floor")]
    IllConditioned { step: usize, denominator: f64 },
    #[error("non-finite intermediate value at chain step {step}")]
    NonFinite { step: usize },
    #[error("regularized system is singular to working precision")]
    SingularSystem,
}

/// One boundary constraint `(z_j, A_j, λ_j)`.
///
/// Weights are nonnegative; a zero-weight sample is inert (it contributes
/// nothing to the fit and receives a zero coefficient), which keeps
/// degenerate inputs well defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample {
    point: UpperHalfPoint,
    value: f64,
    weight: f64,
}

impl BoundarySample {
    pub fn new(point: UpperHalfPoint, value: f64, weight: f64) -> Result<Self, ProblemError> {
        if !value.is_finite() {
            return Err(ProblemError::BadValue(value));
        }
        if !weight.is_finite() || weight < 0.0 {
            return Err(ProblemError::BadWeight(weight));
        }
        Ok(Self {
            point,
            value,
            weight,
        })
    }

    pub fn point(&self) -> UpperHalfPoint {
        self.point
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }
}

/// A discrete Dirichlet problem: the sample list plus the global λ.
///
/// Duplicate points are permitted; the regularization keeps the system
/// nonsingular and conflicting duplicates are reconciled by the least-squares
/// objective itself.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletProblem {
    samples: Vec<BoundarySample>,
    lambda: f64,
}

impl DirichletProblem {
    pub fn new(samples: Vec<BoundarySample>, lambda: f64) -> Result<Self, ProblemError> {
        if samples.is_empty() {
            return Err(ProblemError::Empty);
        }
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(ProblemError::BadLambda(lambda));
        }
        Ok(Self { samples, lambda })
    }

    /// Same samples under a different regularization parameter.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self, ProblemError> {
        Self::new(self.samples.clone(), lambda)
    }

    pub fn samples(&self) -> &[BoundarySample] {
        &self.samples
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Coefficients `c` of `u(z) = Σ_j c_j Re K(z, z_j)`, together with the
/// sample list whose points define the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionCoefficients {
    coeffs: Vec<f64>,
    samples: Vec<BoundarySample>,
}

impl SolutionCoefficients {
    pub fn new(coeffs: Vec<f64>, samples: Vec<BoundarySample>) -> Result<Self, ProblemError> {
        if coeffs.len() != samples.len() {
            return Err(ProblemError::LengthMismatch {
                coeffs: coeffs.len(),
                samples: samples.len(),
            });
        }
        if let Some(&bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(ProblemError::BadValue(bad));
        }
        Ok(Self { coeffs, samples })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn samples(&self) -> &[BoundarySample] {
        &self.samples
    }
}

/// Max and RMS of the residuals `u(z_j) − A_j` at the samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualSummary {
    pub max: f64,
    pub rms: f64,
}

/// Running state of the recursive kernel build.
///
/// `restriction` holds the current regularized kernel on the sample set and
/// `chain` the accumulated product matrix relating it back to the plain
/// Szegő kernel vector. After `step` updates the identities
/// `restriction = (λI + MΛ_step)⁻¹ M` and `chain = (λI + MΛ_step)⁻¹` hold,
/// where `Λ_step` carries the first `step` weights; `restriction` therefore
/// stays symmetric at every step.
#[derive(Debug, Clone)]
pub struct KernelChainState {
    step: usize,
    restriction: SquareMatrix,
    chain: SquareMatrix,
}

impl KernelChainState {
    /// Step-0 state: restriction `M/λ` and chain `(1/λ)·I`, i.e. the kernel
    /// of the λ-scaled Hardy norm before any constraint is folded in.
    pub fn base(problem: &DirichletProblem) -> Self {
        let n = problem.len();
        let inv_lambda = 1.0 / problem.lambda();
        let gram = gram_matrix(problem);
        let mut restriction = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                restriction.set(i, j, gram.get(i, j) * inv_lambda);
            }
        }
        let mut chain = SquareMatrix::zeros(n);
        for i in 0..n {
            chain.set(i, i, inv_lambda);
        }
        Self {
            step: 0,
            restriction,
            chain,
        }
    }

    /// Folds the next sample's constraint into the kernel: a rank-one
    /// downdate of the restriction and the matching update of the chain.
    pub fn advance(&mut self, problem: &DirichletProblem) -> Result<(), SolveError> {
        let n = problem.len();
        assert!(self.step < n, "chain already consumed all samples");
        let idx = self.step;
        let weight = problem.samples()[idx].weight();
        let step = idx + 1;

        let denominator = weight * self.restriction.get(idx, idx) + 1.0;
        if !denominator.is_finite() {
            return Err(SolveError::NonFinite { step });
        }
        if denominator < DENOMINATOR_FLOOR {
            return Err(SolveError::IllConditioned { step, denominator });
        }
        let beta = weight / denominator;

        // row idx of the symmetric restriction doubles as its column idx
        let u: Vec<f64> = self.restriction.row(idx).to_vec();
        for (i, &ui) in u.iter().enumerate() {
            let step_i = beta * ui;
            for (j, &uj) in u.iter().enumerate() {
                let v = self.restriction.get(i, j) - step_i * uj;
                self.restriction.set(i, j, v);
            }
        }
        let chain_row: Vec<f64> = self.chain.row(idx).to_vec();
        for (i, &ui) in u.iter().enumerate() {
            let step_i = beta * ui;
            for (j, &cj) in chain_row.iter().enumerate() {
                let v = self.chain.get(i, j) - step_i * cj;
                self.chain.set(i, j, v);
            }
        }
        self.step = step;
        Ok(())
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn restriction(&self) -> &SquareMatrix {
        &self.restriction
    }

    pub fn chain(&self) -> &SquareMatrix {
        &self.chain
    }
}

/// Gram matrix `M_ij = Re K(z_i, z_j)` of the plain Szegő kernel on the
/// problem's sample points.
pub fn gram_matrix(problem: &DirichletProblem) -> SquareMatrix {
    let pts: Vec<UpperHalfPoint> = problem.samples().iter().map(|s| s.point()).collect();
    let n = pts.len();
    let mut m = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = szego_re(pts[i], pts[j]);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

/// Runs the full recursion: base kernel, then one downdate per sample.
pub fn kernel_chain(problem: &DirichletProblem) -> Result<KernelChainState, SolveError> {
    let mut state = KernelChainState::base(problem);
    for _ in 0..problem.len() {
        state.advance(problem)?;
    }
    if !state.restriction.is_finite() || !state.chain.is_finite() {
        return Err(SolveError::NonFinite { step: state.step });
    }
    Ok(state)
}

/// Solves the problem by the recursive kernel chain.
///
/// The coefficients are `c = Âᵀ Λ A` where `Â` is the accumulated chain
/// matrix, so the represented function is `u(z) = Σ_j c_j Re K(z, z_j)`.
pub fn solve_recursive(problem: &DirichletProblem) -> Result<SolutionCoefficients, SolveError> {
    let state = kernel_chain(problem)?;
    let n = problem.len();
    let mut coeffs = vec![0.0; n];
    for (k, sample) in problem.samples().iter().enumerate() {
        let wk_ak = sample.weight() * sample.value();
        if wk_ak == 0.0 {
            continue;
        }
        let row = state.chain().row(k);
        for (j, c) in coeffs.iter_mut().enumerate() {
            *c += row[j] * wk_ak;
        }
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(SolveError::NonFinite { step: n });
    }
    Ok(SolutionCoefficients {
        coeffs,
        samples: problem.samples().to_vec(),
    })
}

/// Solves the problem in closed form: factor `(λI + ΛM) c = ΛA`.
///
/// This is the exact minimizer of `λcᵀMc + (Mc − A)ᵀΛ(Mc − A)`, kept as an
/// independent route against which the recursion is checked. The system is
/// nonsingular for λ > 0 because `ΛM` is similar to a positive semidefinite
/// matrix.
pub fn solve_dense_oracle(problem: &DirichletProblem) -> Result<SolutionCoefficients, SolveError> {
    let gram = gram_matrix(problem);
    dense_solve_with_gram(problem, &gram)
}

fn dense_solve_with_gram(
    problem: &DirichletProblem,
    gram: &SquareMatrix,
) -> Result<SolutionCoefficients, SolveError> {
    let n = problem.len();
    let lambda = problem.lambda();
    let mut system = SquareMatrix::zeros(n);
    let mut rhs = vec![0.0; n];
    for (i, sample) in problem.samples().iter().enumerate() {
        let w = sample.weight();
        for j in 0..n {
            system.set(i, j, w * gram.get(i, j));
        }
        system.set(i, i, system.get(i, i) + lambda);
        rhs[i] = w * sample.value();
    }
    let coeffs = lu_solve(&system, &rhs).ok_or(SolveError::SingularSystem)?;
    Ok(SolutionCoefficients {
        coeffs,
        samples: problem.samples().to_vec(),
    })
}

/// Evaluates `u(z) = Σ_j c_j Re K(z, z_j)`; harmonic on ℂ⁺ by construction.
pub fn evaluate(solution: &SolutionCoefficients, z: UpperHalfPoint) -> f64 {
    solution
        .coeffs
        .iter()
        .zip(&solution.samples)
        .map(|(c, s)| c * szego_re(z, s.point()))
        .sum()
}

/// Exact analytic gradient `(∂u/∂x, ∂u/∂y)` at `z`.
pub fn evaluate_grad(solution: &SolutionCoefficients, z: UpperHalfPoint) -> (f64, f64) {
    let mut gx = 0.0;
    let mut gy = 0.0;
    for (c, s) in solution.coeffs.iter().zip(&solution.samples) {
        let (dx, dy) = szego_re_grad(z, s.point());
        gx += c * dx;
        gy += c * dy;
    }
    (gx, gy)
}

/// Max and RMS residual of the solution over the problem's samples.
pub fn boundary_residual(
    problem: &DirichletProblem,
    solution: &SolutionCoefficients,
) -> ResidualSummary {
    let mut max = 0.0f64;
    let mut sum_sq = 0.0;
    for sample in problem.samples() {
        let r = evaluate(solution, sample.point()) - sample.value();
        max = max.max(r.abs());
        sum_sq += r * r;
    }
    ResidualSummary {
        max,
        rms: (sum_sq / problem.len() as f64).sqrt(),
    }
}

/// One entry of a [`continuation`] run.
#[derive(Debug, Clone)]
pub struct ContinuationStep {
    pub lambda: f64,
    pub outcome: Result<(SolutionCoefficients, ResidualSummary), SolveError>,
}

/// Re-solves the problem along a strictly decreasing λ schedule and reports
/// the boundary residual per step.
///
/// A diagnostic for the λ → 0 limit, not an extrapolator: no λ = 0 solve is
/// attempted, and a conditioning failure at a tiny λ is recorded in its step
/// without discarding the earlier ones.
pub fn continuation(
    problem: &DirichletProblem,
    schedule: &[f64],
) -> Result<Vec<ContinuationStep>, ProblemError> {
    continuation_with(problem, schedule, &RecursiveChainSolver)
}

/// [`continuation`] with an explicit solver strategy.
pub fn continuation_with(
    problem: &DirichletProblem,
    schedule: &[f64],
    solver: &dyn DirichletSolver,
) -> Result<Vec<ContinuationStep>, ProblemError> {
    if schedule.is_empty()
        || schedule.iter().any(|l| !l.is_finite() || *l <= 0.0)
        || schedule.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(ProblemError::BadSchedule);
    }
    let mut steps = Vec::with_capacity(schedule.len());
    for &lambda in schedule {
        let scaled = problem.with_lambda(lambda)?;
        let outcome = solver.solve(&scaled).map(|sol| {
            let residual = boundary_residual(&scaled, &sol);
            (sol, residual)
        });
        steps.push(ContinuationStep { lambda, outcome });
    }
    Ok(steps)
}

/// Default weights when the discretization supplies none: each sample's
/// share of the closed boundary polyline through the points, falling back to
/// uniform `1/N` when the polyline has no length.
pub fn arc_length_weights(points: &[UpperHalfPoint]) -> Vec<f64> {
    let n = points.len();
    if n == 0 {
        return Vec::new();
    }
    let seg = |a: UpperHalfPoint, b: UpperHalfPoint| {
        let dx = a.x() - b.x();
        let dy = a.y() - b.y();
        (dx * dx + dy * dy).sqrt()
    };
    let mut lengths = vec![0.0; n]; // lengths[j] = |z_j − z_{j−1}| cyclically
    for j in 0..n {
        let prev = points[(j + n - 1) % n];
        lengths[j] = seg(points[j], prev);
    }
    let perimeter: f64 = lengths.iter().sum();
    if perimeter <= 0.0 {
        return vec![1.0 / n as f64; n];
    }
    (0..n)
        .map(|j| (lengths[j] + lengths[(j + 1) % n]) / (2.0 * perimeter))
        .collect()
}
