//! Mesh-free solver for discrete Dirichlet problems on the upper half-plane,
//! plus a harmonic-mapping engine for modelling and undoing planar shape
//! distortion of raster images.
//!
//! The solver represents a harmonic function as a finite linear combination of
//! real parts of the Szegő kernel of `H²(ℂ⁺)` anchored at the constraint
//! points, with Tikhonov regularization keeping the fit well posed for any
//! scattered sample geometry. No grid or mesh is ever built.
//!
//! Crate layout:
//!
//! - [`halfplane`] — the Szegő kernel, its real part and derivatives.
//! - [`solver`] — regularized Dirichlet solves (recursive kernel-update chain
//!   and a dense closed-form route), evaluation, residuals, continuation.
//! - [`warp`] — harmonic maps fitted from boundary correspondences, their
//!   Jacobians, Newton inversion, and raster warping/recovery.
//! - [`raster`] — greyscale images, PGM codec, test-pattern generators,
//!   metrics, CSV/SVG report emitters.

pub mod halfplane;
pub mod raster;
pub mod solver;
pub mod warp;

mod linalg;

pub use halfplane::{szego, szego_re, szego_re_grad, ComplexValue, UpperHalfPoint};
pub use solver::{
    solve_dense_oracle, solve_recursive, solver_by_name, solver_registry, BoundarySample,
    DirichletProblem, DirichletSolver, SolutionCoefficients,
};
pub use warp::{fit_map, BoundaryCorrespondence, HarmonicMap};
