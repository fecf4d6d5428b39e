//! Problem files and solution dumps.
//!
//! Problems arrive as JSON `{ "lambda": number, "samples": [ { "x", "y",
//! "value", "weight"? } ] }`; omitted weights trigger the arc-length default.
//! Solutions are dumped as CSV with one row per sample and full round-trip
//! decimal precision, so downstream comparisons can be exact.

use super::{
    arc_length_weights, evaluate, BoundarySample, DirichletProblem, ProblemError,
    SolutionCoefficients,
};
use crate::halfplane::UpperHalfPoint;
use serde::Deserialize;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProblemIoError {
    #[error("problem JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("problem field `samples` is empty")]
    EmptySamples,
    #[error("samples mix explicit and missing `weight` fields; supply all weights or none")]
    MixedWeights,
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

#[derive(Deserialize)]
struct ProblemFile {
    lambda: f64,
    samples: Vec<SampleRecord>,
}

#[derive(Deserialize)]
struct SampleRecord {
    x: f64,
    y: f64,
    value: f64,
    #[serde(default)]
    weight: Option<f64>,
}

/// Parses a problem file. All-or-nothing on weights: either every sample
/// carries one, or none does and the arc-length default over the ordered
/// sample polyline is applied.
pub fn problem_from_json(text: &str) -> Result<DirichletProblem, ProblemIoError> {
    let file: ProblemFile = serde_json::from_str(text)?;
    if file.samples.is_empty() {
        return Err(ProblemIoError::EmptySamples);
    }
    let explicit = file.samples.iter().filter(|s| s.weight.is_some()).count();
    if explicit != 0 && explicit != file.samples.len() {
        return Err(ProblemIoError::MixedWeights);
    }

    let points: Vec<UpperHalfPoint> = file
        .samples
        .iter()
        .map(|s| UpperHalfPoint::new(s.x, s.y))
        .collect::<Result<_, _>>()
        .map_err(ProblemError::from)?;
    let weights: Vec<f64> = if explicit == 0 {
        arc_length_weights(&points)
    } else {
        file.samples.iter().map(|s| s.weight.unwrap()).collect()
    };

    let samples = points
        .into_iter()
        .zip(&file.samples)
        .zip(weights)
        .map(|((point, rec), weight)| BoundarySample::new(point, rec.value, weight))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DirichletProblem::new(samples, file.lambda)?)
}

/// Renders the solution as CSV: `j,x_j,y_j,A_j,lambda_j,c_j,residual_j`.
pub fn solution_csv(problem: &DirichletProblem, solution: &SolutionCoefficients) -> String {
    let mut out = String::from("j,x_j,y_j,A_j,lambda_j,c_j,residual_j\n");
    for (j, (sample, c)) in problem
        .samples()
        .iter()
        .zip(solution.coeffs())
        .enumerate()
    {
        let residual = evaluate(solution, sample.point()) - sample.value();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            j + 1,
            sample.point().x(),
            sample.point().y(),
            sample.value(),
            sample.weight(),
            c,
            residual
        );
    }
    out
}

/// Renders a continuation report as CSV: `lambda,max_residual,rms_residual,status`.
pub fn continuation_csv(steps: &[super::ContinuationStep]) -> String {
    let mut out = String::from("lambda,max_residual,rms_residual,status\n");
    for step in steps {
        match &step.outcome {
            Ok((_, residual)) => {
                let _ = writeln!(out, "{},{},{},ok", step.lambda, residual.max, residual.rms);
            }
            Err(e) => {
                let _ = writeln!(out, "{},,,error: {e}", step.lambda);
            }
        }
    }
    out
}
