//! Harmonic maps between planar regions, fitted from boundary data.
//!
//! A distortion `T: (ξ,η) ∈ Ω → (x,y) ∈ Γ` is modelled by requiring both
//! coordinate functions to be harmonic with the given boundary values
//! (`Δx = 0, x|∂Ω = f` and `Δy = 0, y|∂Ω = g`). Fitting embeds the source
//! region into the upper half-plane by a similarity and runs one Dirichlet
//! solve per coordinate; the result can be evaluated anywhere, differentiated
//! exactly, inverted pointwise by damped Newton iteration, and used to warp
//! or recover raster images by inverse resampling with piecewise-constant
//! lookup.

use crate::halfplane::UpperHalfPoint;
use crate::raster::GreyImage;
use crate::solver::{
    arc_length_weights, boundary_residual, evaluate, evaluate_grad, BoundarySample,
    DirichletProblem, DirichletSolver, ProblemError, RecursiveChainSolver, ResidualSummary,
    SolutionCoefficients, SolveError,
};
use rayon::prelude::*;
use serde::Deserialize;
use std::fmt::Write as _;
use thiserror::Error;

/// A point of the user's plane, `(ξ, η)` on the source side or `(x, y)` on
/// the target side.
pub type PlanarPoint = (f64, f64);

/// Default regularization for map fitting: small enough that the boundary
/// residual is sub-pixel on 256×256 rasters (the arc-length weights sum to
/// one, so the penalty term needs a tiny λ before the data term dominates),
/// while the chain denominators stay ≥ 1 and conditioning holds through a
/// few hundred samples.
pub const DEFAULT_LAMBDA: f64 = 1e-9;

/// Default height at which the bottom edge of the source region lands in ℂ⁺.
pub const DEFAULT_Y_MIN: f64 = 0.5;

const NEWTON_TOLERANCE: f64 = 1e-9;
const NEWTON_MAX_ITERATIONS: usize = 50;
const NEWTON_MAX_HALVINGS: usize = 20;
const DET_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WarpError {
    #[error("source and target lists differ in length ({source_len} vs {target_len})")]
    LengthMismatch {
        source_len: usize,
        target_len: usize,
    },
    #[error("a boundary correspondence needs at least 3 samples, got {0}")]
    TooFewSamples(usize),
    #[error("source points must be pairwise distinct (indices {0} and {1} coincide)")]
    DuplicateSource(usize, usize),
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("degenerate source region: all points identical")]
    DegenerateRegion,
    #[error("y_min must be a finite positive number, got {0}")]
    BadYMin(f64),
    #[error("point ({x}, {y}) embeds at or below the real axis")]
    OutsideDomain { x: f64, y: f64 },
    #[error("singular Jacobian (det {det:e}) near ({x}, {y})")]
    SingularJacobian { x: f64, y: f64, det: f64 },
    #[error("Newton inversion stalled at ({x}, {y}) with residual {residual:e}")]
    NoConvergence { x: f64, y: f64, residual: f64 },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

/// Paired boundary samples of the distortion: `source[j] ∈ ∂Ω` is carried to
/// `target[j] ∈ ∂Γ`. Ordered along the boundary; the ordering feeds the
/// arc-length weight rule.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCorrespondence {
    source: Vec<PlanarPoint>,
    target: Vec<PlanarPoint>,
}

impl BoundaryCorrespondence {
    pub fn new(source: Vec<PlanarPoint>, target: Vec<PlanarPoint>) -> Result<Self, WarpError> {
        if source.len() != target.len() {
            return Err(WarpError::LengthMismatch {
                source_len: source.len(),
                target_len: target.len(),
            });
        }
        if source.len() < 3 {
            return Err(WarpError::TooFewSamples(source.len()));
        }
        if source
            .iter()
            .chain(&target)
            .any(|p| !p.0.is_finite() || !p.1.is_finite())
        {
            return Err(WarpError::NonFinite);
        }
        for i in 0..source.len() {
            for j in (i + 1)..source.len() {
                if source[i] == source[j] {
                    return Err(WarpError::DuplicateSource(i, j));
                }
            }
        }
        Ok(Self { source, target })
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn source(&self) -> &[PlanarPoint] {
        &self.source
    }

    pub fn target(&self) -> &[PlanarPoint] {
        &self.target
    }
}

/// Similarity `p ↦ scale·p + offset` carrying the source region into ℂ⁺.
///
/// Uniform scaling and translation only, so harmonicity is preserved and
/// Laplacians transform by `scale²`. The source bounding box is kept so
/// results can be pulled back and grids rendered.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineEmbedding {
    scale: f64,
    offset_x: f64,
    offset_y: f64,
    min: PlanarPoint,
    max: PlanarPoint,
}

/// Builds the canonical embedding: the bounding box of `points`, scaled by
/// the reciprocal of its larger side, translated so its bottom edge sits at
/// height `y_min`. The policy always normalizes, even for regions already in
/// ℂ⁺, keeping the solver's conditioning independent of user coordinates.
pub fn embed_to_halfplane(
    points: &[PlanarPoint],
    y_min: f64,
) -> Result<AffineEmbedding, WarpError> {
    if !y_min.is_finite() || y_min <= 0.0 {
        return Err(WarpError::BadYMin(y_min));
    }
    if points.is_empty() || points.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
        return Err(WarpError::NonFinite);
    }
    let mut min = points[0];
    let mut max = points[0];
    for p in points {
        min.0 = min.0.min(p.0);
        min.1 = min.1.min(p.1);
        max.0 = max.0.max(p.0);
        max.1 = max.1.max(p.1);
    }
    let side = (max.0 - min.0).max(max.1 - min.1);
    if side <= 0.0 {
        return Err(WarpError::DegenerateRegion);
    }
    let scale = 1.0 / side;
    Ok(AffineEmbedding {
        scale,
        offset_x: -min.0 * scale,
        offset_y: -min.1 * scale + y_min,
        min,
        max,
    })
}

impl AffineEmbedding {
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Source-region bounding box recorded at construction.
    pub fn source_bounds(&self) -> (PlanarPoint, PlanarPoint) {
        (self.min, self.max)
    }

    pub fn source_centroid(&self) -> PlanarPoint {
        (
            (self.min.0 + self.max.0) / 2.0,
            (self.min.1 + self.max.1) / 2.0,
        )
    }

    pub fn forward(&self, p: PlanarPoint) -> Result<UpperHalfPoint, WarpError> {
        let x = self.scale * p.0 + self.offset_x;
        let y = self.scale * p.1 + self.offset_y;
        if !x.is_finite() || !y.is_finite() {
            return Err(WarpError::NonFinite);
        }
        if y <= 0.0 {
            return Err(WarpError::OutsideDomain { x: p.0, y: p.1 });
        }
        Ok(UpperHalfPoint::new(x, y).expect("checked above"))
    }

    pub fn inverse(&self, x: f64, y: f64) -> PlanarPoint {
        (
            (x - self.offset_x) / self.scale,
            (y - self.offset_y) / self.scale,
        )
    }
}

/// A fitted harmonic distortion: the source embedding plus one coefficient
/// set per coordinate function, both anchored at the same embedded samples.
#[derive(Debug, Clone)]
pub struct HarmonicMap {
    embed: AffineEmbedding,
    x_solution: SolutionCoefficients,
    y_solution: SolutionCoefficients,
    lambda: f64,
    x_residual: ResidualSummary,
    y_residual: ResidualSummary,
}

impl HarmonicMap {
    pub fn embed(&self) -> &AffineEmbedding {
        &self.embed
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn x_solution(&self) -> &SolutionCoefficients {
        &self.x_solution
    }

    pub fn y_solution(&self) -> &SolutionCoefficients {
        &self.y_solution
    }

    /// Worst boundary residual across the two coordinate solves.
    pub fn fit_residual(&self) -> f64 {
        self.x_residual.max.max(self.y_residual.max)
    }

    pub fn x_residual(&self) -> ResidualSummary {
        self.x_residual
    }

    pub fn y_residual(&self) -> ResidualSummary {
        self.y_residual
    }
}

/// First derivatives and determinant of the map at a point, rows ordered as
/// `(∂/∂ξ, ∂/∂η)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianValue {
    pub dx_dxi: f64,
    pub dy_dxi: f64,
    pub dx_deta: f64,
    pub dy_deta: f64,
    pub det: f64,
}

/// Fits the harmonic model with the default solver strategy.
pub fn fit_map(corr: &BoundaryCorrespondence, lambda: f64) -> Result<HarmonicMap, WarpError> {
    fit_map_with(corr, lambda, &RecursiveChainSolver)
}

/// Fits the harmonic model: embeds the source samples, builds the two
/// Dirichlet problems sharing those points (values = target x respectively
/// target y, weights by arc length) and solves both.
pub fn fit_map_with(
    corr: &BoundaryCorrespondence,
    lambda: f64,
    solver: &dyn DirichletSolver,
) -> Result<HarmonicMap, WarpError> {
    let embed = embed_to_halfplane(corr.source(), DEFAULT_Y_MIN)?;
    let points: Vec<UpperHalfPoint> = corr
        .source()
        .iter()
        .map(|&p| embed.forward(p))
        .collect::<Result<_, _>>()?;
    let weights = arc_length_weights(&points);

    let build = |values: Vec<f64>| -> Result<DirichletProblem, WarpError> {
        let samples = points
            .iter()
            .zip(&values)
            .zip(&weights)
            .map(|((&p, &v), &w)| BoundarySample::new(p, v, w))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DirichletProblem::new(samples, lambda)?)
    };
    let x_problem = build(corr.target().iter().map(|t| t.0).collect())?;
    let y_problem = build(corr.target().iter().map(|t| t.1).collect())?;

    let x_solution = solver.solve(&x_problem)?;
    let y_solution = solver.solve(&y_problem)?;
    let x_residual = boundary_residual(&x_problem, &x_solution);
    let y_residual = boundary_residual(&y_problem, &y_solution);
    Ok(HarmonicMap {
        embed,
        x_solution,
        y_solution,
        lambda,
        x_residual,
        y_residual,
    })
}

/// Evaluates `T(p)`; errors if `p` embeds at or below the real axis.
pub fn apply(map: &HarmonicMap, p: PlanarPoint) -> Result<PlanarPoint, WarpError> {
    let z = map.embed.forward(p)?;
    Ok((evaluate(&map.x_solution, z), evaluate(&map.y_solution, z)))
}

/// Exact Jacobian of `T` at `p`, via the solver gradients and the embedding
/// chain rule (a similarity contributes one uniform factor `scale`).
pub fn jacobian(map: &HarmonicMap, p: PlanarPoint) -> Result<JacobianValue, WarpError> {
    let z = map.embed.forward(p)?;
    let s = map.embed.scale();
    let (gx_x, gx_y) = evaluate_grad(&map.x_solution, z);
    let (gy_x, gy_y) = evaluate_grad(&map.y_solution, z);
    let dx_dxi = s * gx_x;
    let dx_deta = s * gx_y;
    let dy_dxi = s * gy_x;
    let dy_deta = s * gy_y;
    Ok(JacobianValue {
        dx_dxi,
        dy_dxi,
        dx_deta,
        dy_deta,
        det: dx_dxi * dy_deta - dx_deta * dy_dxi,
    })
}

/// Inverts `T` at `target` by damped Newton iteration from `guess`.
///
/// Succeeds when `|T(p) − target| ≤ 1e-9`; raises `SingularJacobian` when
/// the determinant collapses along the way and `NoConvergence` (best iterate
/// attached) when 50 iterations or the step damping are exhausted.
pub fn invert_point(
    map: &HarmonicMap,
    target: PlanarPoint,
    guess: PlanarPoint,
) -> Result<PlanarPoint, WarpError> {
    let mut p = guess;
    let mut image = apply(map, p)?;
    let mut residual = norm2(image.0 - target.0, image.1 - target.1);

    for _ in 0..NEWTON_MAX_ITERATIONS {
        if residual <= NEWTON_TOLERANCE {
            return Ok(p);
        }
        let jac = jacobian(map, p)?;
        if jac.det.abs() < DET_FLOOR {
            return Err(WarpError::SingularJacobian {
                x: p.0,
                y: p.1,
                det: jac.det,
            });
        }
        // full Newton step for [dx_dxi dx_deta; dy_dxi dy_deta] δ = target − T(p)
        let rx = target.0 - image.0;
        let ry = target.1 - image.1;
        let step_xi = (jac.dy_deta * rx - jac.dx_deta * ry) / jac.det;
        let step_eta = (-jac.dy_dxi * rx + jac.dx_dxi * ry) / jac.det;

        // halve the step until the residual actually decreases
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=NEWTON_MAX_HALVINGS {
            let candidate = (p.0 + t * step_xi, p.1 + t * step_eta);
            if let Ok(cand_image) = apply(map, candidate) {
                let cand_residual = norm2(cand_image.0 - target.0, cand_image.1 - target.1);
                if cand_residual < residual {
                    accepted = Some((candidate, cand_image, cand_residual));
                    break;
                }
            }
            t *= 0.5;
        }
        match accepted {
            Some((next, next_image, next_residual)) => {
                p = next;
                image = next_image;
                residual = next_residual;
            }
            None => {
                return Err(WarpError::NoConvergence {
                    x: p.0,
                    y: p.1,
                    residual,
                })
            }
        }
    }
    if residual <= NEWTON_TOLERANCE {
        Ok(p)
    } else {
        Err(WarpError::NoConvergence {
            x: p.0,
            y: p.1,
            residual,
        })
    }
}

fn norm2(x: f64, y: f64) -> f64 {
    (x * x + y * y).sqrt()
}

enum PixelOutcome {
    Mapped { value: u8, at: PlanarPoint },
    OutOfRange,
    Failed,
}

/// Pulls one output pixel back through the map and classifies the result.
///
/// Seeds Newton from the scanline warm start, then the source centroid, then
/// the target itself (an identity-like seed that avoids walking across folds
/// for mild distortions). A fitted map's harmonic extension can fold outside
/// the source region and hand Newton a far preimage there, so in-source
/// preimages are preferred over far ones, and a stall that ends within a
/// quarter pixel of the target keeps its best iterate — the
/// piecewise-constant lookup cannot tell the difference. Everything else is
/// out-of-domain coverage; only singular Jacobians and pathological stalls
/// count as failures.
fn resolve_pixel(
    map: &HarmonicMap,
    source_view: &Viewport,
    source: &GreyImage,
    q: PlanarPoint,
    warm: PlanarPoint,
    stall_accept: f64,
    centroid: PlanarPoint,
) -> PixelOutcome {
    let mut far_preimage = false;
    let mut best_stall: Option<(PlanarPoint, f64)> = None;

    let mut seeds = [Some(warm), Some(centroid), Some(q)];
    // dedup while preserving order
    if seeds[1] == seeds[0] {
        seeds[1] = None;
    }
    if seeds[2] == seeds[0] || seeds[2] == seeds[1] {
        seeds[2] = None;
    }
    for seed in seeds.into_iter().flatten() {
        match invert_point(map, q, seed) {
            Ok(p) => match source_view.locate(source.width(), source.height(), p) {
                Some((c, r)) => {
                    return PixelOutcome::Mapped {
                        value: source.get(c, r),
                        at: p,
                    }
                }
                None => far_preimage = true,
            },
            Err(WarpError::NoConvergence { x, y, residual }) => {
                if best_stall.is_none_or(|(_, r)| residual < r) {
                    best_stall = Some(((x, y), residual));
                }
            }
            Err(_) => {}
        }
    }
    if let Some((p, residual)) = best_stall {
        if residual <= stall_accept {
            if let Some((c, r)) = source_view.locate(source.width(), source.height(), p) {
                return PixelOutcome::Mapped {
                    value: source.get(c, r),
                    at: p,
                };
            }
            return PixelOutcome::OutOfRange;
        }
    }
    if far_preimage || best_stall.is_some() {
        // a genuine preimage exists only outside the source, or the target
        // is beyond the reachable region: coverage, not failure
        PixelOutcome::OutOfRange
    } else {
        PixelOutcome::Failed
    }
}

/// Axis-aligned world rectangle an image is pinned to. Row 0 of the raster
/// is the top of the rectangle (`y1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Viewport {
    pub fn unit() -> Self {
        Self {
            x0: 0.0,
            y0: 0.0,
            x1: 1.0,
            y1: 1.0,
        }
    }

    /// World coordinates of the center of pixel `(col, row)`.
    pub fn pixel_center(&self, width: usize, height: usize, col: usize, row: usize) -> PlanarPoint {
        let dx = (self.x1 - self.x0) / width as f64;
        let dy = (self.y1 - self.y0) / height as f64;
        (
            self.x0 + (col as f64 + 0.5) * dx,
            self.y1 - (row as f64 + 0.5) * dy,
        )
    }

    /// Pixel containing a world point, if any.
    pub fn locate(&self, width: usize, height: usize, p: PlanarPoint) -> Option<(usize, usize)> {
        let fx = (p.0 - self.x0) / (self.x1 - self.x0);
        let fy = (self.y1 - p.1) / (self.y1 - self.y0);
        if !(0.0..1.0).contains(&fx) || !(0.0..1.0).contains(&fy) {
            return None;
        }
        let col = (fx * width as f64) as usize;
        let row = (fy * height as f64) as usize;
        Some((col.min(width - 1), row.min(height - 1)))
    }
}

/// Raster geometry of a resampling output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputGeometry {
    pub width: usize,
    pub height: usize,
    pub viewport: Viewport,
}

/// Per-run resampling summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WarpReport {
    pub pixels: usize,
    pub mapped: usize,
    pub failed: usize,
    pub out_of_range: usize,
    pub min_det: f64,
    pub max_det: f64,
    pub greyness_in: u64,
    pub greyness_out: u64,
}

impl WarpReport {
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("pixels,mapped,failed,out_of_range,min_det,max_det,greyness_in,greyness_out\n");
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            self.pixels,
            self.mapped,
            self.failed,
            self.out_of_range,
            self.min_det,
            self.max_det,
            self.greyness_in,
            self.greyness_out
        );
        out
    }
}

const BACKGROUND: u8 = 0;

struct RowOutcome {
    values: Vec<u8>,
    failed: usize,
    out_of_range: usize,
    min_det: f64,
    max_det: f64,
}

/// Warps an image under `T` by inverse resampling: each output pixel center
/// `q` is pulled back through `invert_point` and copies the source pixel
/// containing `T⁻¹(q)` (piecewise-constant lookup).
///
/// Newton is warm-started along each scanline with fallback seeds (the seed
/// ladder and the coverage-vs-failure classification live in
/// `resolve_pixel`). Rows carry no cross-row state, so the output does not
/// depend on thread count. Failed or out-of-source pixels become background
/// level 0 and are counted in the report.
pub fn warp_image(
    map: &HarmonicMap,
    source: &GreyImage,
    source_view: &Viewport,
    out: &OutputGeometry,
) -> (GreyImage, WarpReport) {
    let centroid = map.embed.source_centroid();
    // a stall this close to the target still lands on the right pixel
    let stall_accept = 0.25
        * ((out.viewport.x1 - out.viewport.x0) / out.width as f64)
            .hypot((out.viewport.y1 - out.viewport.y0) / out.height as f64);
    let rows: Vec<RowOutcome> = (0..out.height)
        .into_par_iter()
        .map(|row| {
            let mut outcome = RowOutcome {
                values: vec![BACKGROUND; out.width],
                failed: 0,
                out_of_range: 0,
                min_det: f64::INFINITY,
                max_det: f64::NEG_INFINITY,
            };
            let mut guess = centroid;
            for col in 0..out.width {
                let q = out.viewport.pixel_center(out.width, out.height, col, row);
                match resolve_pixel(map, source_view, source, q, guess, stall_accept, centroid) {
                    PixelOutcome::Mapped { value, at } => {
                        outcome.values[col] = value;
                        guess = at;
                        if let Ok(j) = jacobian(map, at) {
                            outcome.min_det = outcome.min_det.min(j.det);
                            outcome.max_det = outcome.max_det.max(j.det);
                        }
                    }
                    PixelOutcome::OutOfRange => {
                        outcome.out_of_range += 1;
                        guess = centroid;
                    }
                    PixelOutcome::Failed => {
                        outcome.failed += 1;
                        guess = centroid;
                    }
                }
            }
            outcome
        })
        .collect();
    assemble(rows, source, out)
}

/// Recovers the source-side image from a distorted one: every output pixel
/// center `p` (source coordinates) simply looks up the distorted image at
/// `T(p)` — recovery needs the forward map only, no Newton iteration.
pub fn recover_image(
    map: &HarmonicMap,
    distorted: &GreyImage,
    distorted_view: &Viewport,
    out: &OutputGeometry,
) -> (GreyImage, WarpReport) {
    let rows: Vec<RowOutcome> = (0..out.height)
        .into_par_iter()
        .map(|row| {
            let mut outcome = RowOutcome {
                values: vec![BACKGROUND; out.width],
                failed: 0,
                out_of_range: 0,
                min_det: f64::INFINITY,
                max_det: f64::NEG_INFINITY,
            };
            for col in 0..out.width {
                let p = out.viewport.pixel_center(out.width, out.height, col, row);
                match apply(map, p) {
                    Ok(q) => {
                        if let Ok(j) = jacobian(map, p) {
                            outcome.min_det = outcome.min_det.min(j.det);
                            outcome.max_det = outcome.max_det.max(j.det);
                        }
                        match distorted_view.locate(distorted.width(), distorted.height(), q) {
                            Some((c, r)) => outcome.values[col] = distorted.get(c, r),
                            None => outcome.out_of_range += 1,
                        }
                    }
                    Err(_) => outcome.failed += 1,
                }
            }
            outcome
        })
        .collect();
    assemble(rows, distorted, out)
}

fn assemble(rows: Vec<RowOutcome>, input: &GreyImage, out: &OutputGeometry) -> (GreyImage, WarpReport) {
    let mut pixels = Vec::with_capacity(out.width * out.height);
    let mut failed = 0;
    let mut out_of_range = 0;
    let mut min_det = f64::INFINITY;
    let mut max_det = f64::NEG_INFINITY;
    for row in rows {
        pixels.extend_from_slice(&row.values);
        failed += row.failed;
        out_of_range += row.out_of_range;
        min_det = min_det.min(row.min_det);
        max_det = max_det.max(row.max_det);
    }
    let image = GreyImage::new(out.width, out.height, input.levels(), pixels)
        .expect("resampled pixels stay within the input's level range");
    let pixels_total = out.width * out.height;
    let report = WarpReport {
        pixels: pixels_total,
        mapped: pixels_total - failed - out_of_range,
        failed,
        out_of_range,
        min_det,
        max_det,
        greyness_in: input.total_greyness(),
        greyness_out: image.total_greyness(),
    };
    (image, report)
}

#[derive(Debug, Error)]
pub enum CorrespondenceIoError {
    #[error("correspondence JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Warp(#[from] WarpError),
}

#[derive(Deserialize)]
struct CorrespondenceFile {
    source: Vec<[f64; 2]>,
    target: Vec<[f64; 2]>,
    #[serde(default)]
    lambda: Option<f64>,
}

/// Parses `{ "source": [[ξ,η],…], "target": [[x,y],…], "lambda": optional }`.
pub fn correspondence_from_json(
    text: &str,
) -> Result<(BoundaryCorrespondence, Option<f64>), CorrespondenceIoError> {
    let file: CorrespondenceFile = serde_json::from_str(text)?;
    let corr = BoundaryCorrespondence::new(
        file.source.iter().map(|p| (p[0], p[1])).collect(),
        file.target.iter().map(|p| (p[0], p[1])).collect(),
    )?;
    Ok((corr, file.lambda))
}
