//! Vector-format views of a fitted map: a probe-grid CSV of the forward
//! field and an SVG rendering of the deformed grid.

use crate::warp::{apply, jacobian, HarmonicMap, PlanarPoint, WarpError};
use std::fmt::Write as _;

/// Rectangular lattice of probe points, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeGrid {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
    pub nx: usize,
    pub ny: usize,
}

impl ProbeGrid {
    /// Lattice over the map's source bounding box.
    pub fn over_source(map: &HarmonicMap, nx: usize, ny: usize) -> Self {
        let (min, max) = map.embed().source_bounds();
        Self {
            x0: min.0,
            y0: min.1,
            x1: max.0,
            y1: max.1,
            nx: nx.max(1),
            ny: ny.max(1),
        }
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<PlanarPoint> {
        let coord = |lo: f64, hi: f64, i: usize, n: usize| {
            if n == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        };
        let mut pts = Vec::with_capacity(self.len());
        for j in 0..self.ny {
            for i in 0..self.nx {
                pts.push((
                    coord(self.x0, self.x1, i, self.nx),
                    coord(self.y0, self.y1, j, self.ny),
                ));
            }
        }
        pts
    }
}

/// Samples the map over the probe grid as CSV `xi,eta,x,y,det_j`, one row
/// per probe, full round-trip precision.
pub fn export_field_csv(map: &HarmonicMap, grid: &ProbeGrid) -> Result<String, WarpError> {
    let mut out = String::from("xi,eta,x,y,det_j\n");
    for p in grid.points() {
        let q = apply(map, p)?;
        let j = jacobian(map, p)?;
        let _ = writeln!(out, "{},{},{},{},{}", p.0, p.1, q.0, q.1, j.det);
    }
    Ok(out)
}

/// Renders the image of an `n × n` source grid under the map as SVG 1.1,
/// one polyline per grid line, y-axis flipped into screen orientation.
pub fn export_svg_grid(
    map: &HarmonicMap,
    n: usize,
    samples_per_edge: usize,
) -> Result<String, WarpError> {
    let n = n.max(1);
    let samples = samples_per_edge.max(2);
    let (min, max) = map.embed().source_bounds();

    let mut polylines: Vec<Vec<PlanarPoint>> = Vec::with_capacity(2 * (n + 1));
    let line_coord = |k: usize| k as f64 / n as f64;
    let sample_coord = |k: usize| k as f64 / (samples - 1) as f64;
    // horizontal source lines, then vertical ones
    for k in 0..=n {
        let eta = min.1 + (max.1 - min.1) * line_coord(k);
        let mut line = Vec::with_capacity(samples);
        for s in 0..samples {
            let xi = min.0 + (max.0 - min.0) * sample_coord(s);
            line.push(apply(map, (xi, eta))?);
        }
        polylines.push(line);
    }
    for k in 0..=n {
        let xi = min.0 + (max.0 - min.0) * line_coord(k);
        let mut line = Vec::with_capacity(samples);
        for s in 0..samples {
            let eta = min.1 + (max.1 - min.1) * sample_coord(s);
            line.push(apply(map, (xi, eta))?);
        }
        polylines.push(line);
    }

    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in polylines.iter().flatten() {
        lo.0 = lo.0.min(p.0);
        lo.1 = lo.1.min(p.1);
        hi.0 = hi.0.max(p.0);
        hi.1 = hi.1.max(p.1);
    }
    let width = (hi.0 - lo.0).max(f64::MIN_POSITIVE);
    let height = (hi.1 - lo.1).max(f64::MIN_POSITIVE);
    let margin = 0.02 * width.max(height);
    let flip = lo.1 + hi.1; // y_svg = flip − y keeps the view inside the box

    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        lo.0 - margin,
        lo.1 - margin,
        width + 2.0 * margin,
        height + 2.0 * margin
    );
    let stroke = width.max(height) / 512.0;
    for line in &polylines {
        let mut points = String::new();
        for (i, p) in line.iter().enumerate() {
            if i > 0 {
                points.push(' ');
            }
            let _ = write!(points, "{},{}", p.0, flip - p.1);
        }
        let _ = writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\" points=\"{points}\"/>"
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
