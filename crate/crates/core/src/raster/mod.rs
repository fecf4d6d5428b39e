//! Greyscale rasters: codec, synthetic test patterns, distortion generators
//! and comparison metrics for the warp experiments.

mod pgm;
mod report;

pub use pgm::{read_pgm, write_pgm, PgmError};
pub use report::{export_field_csv, export_svg_grid, ProbeGrid};

use crate::warp::BoundaryCorrespondence;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RasterError {
    #[error("image dimensions must be positive")]
    ZeroDimension,
    #[error("pixel buffer holds {got} values, expected {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("grey value {value} out of range for {levels} levels")]
    ValueOutOfRange { value: u8, levels: u16 },
    #[error("levels must lie in 2..=256, got {0}")]
    BadLevels(u16),
    #[error("grid must satisfy 1 <= n <= size, got n={n} size={size}")]
    BadGrid { n: usize, size: usize },
    #[error("press strength alpha must lie in [0, 1), got {0}")]
    BadAlpha(f64),
    #[error("metrics need images of identical geometry")]
    GeometryMismatch,
    #[error("mask rectangle exceeds the image bounds")]
    BadMask,
}

/// A greyscale raster: `width × height` values in `[0, levels)`, row-major
/// with row 0 at the top.
#[derive(Debug, Clone, PartialEq)]
pub struct GreyImage {
    width: usize,
    height: usize,
    levels: u16,
    pixels: Vec<u8>,
}

impl GreyImage {
    pub fn new(
        width: usize,
        height: usize,
        levels: u16,
        pixels: Vec<u8>,
    ) -> Result<Self, RasterError> {
        if width == 0 || height == 0 {
            return Err(RasterError::ZeroDimension);
        }
        if !(2..=256).contains(&levels) {
            return Err(RasterError::BadLevels(levels));
        }
        if pixels.len() != width * height {
            return Err(RasterError::SizeMismatch {
                expected: width * height,
                got: pixels.len(),
            });
        }
        if let Some(&value) = pixels.iter().find(|&&v| u16::from(v) >= levels) {
            return Err(RasterError::ValueOutOfRange { value, levels });
        }
        Ok(Self {
            width,
            height,
            levels,
            pixels,
        })
    }

    pub fn filled(
        width: usize,
        height: usize,
        levels: u16,
        value: u8,
    ) -> Result<Self, RasterError> {
        Self::new(width, height, levels, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn levels(&self) -> u16 {
        self.levels
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, col: usize, row: usize) -> u8 {
        assert!(col < self.width && row < self.height, "pixel out of range");
        self.pixels[row * self.width + col]
    }

    pub fn set(&mut self, col: usize, row: usize, value: u8) {
        assert!(col < self.width && row < self.height, "pixel out of range");
        assert!(u16::from(value) < self.levels, "grey value out of range");
        self.pixels[row * self.width + col] = value;
    }

    pub fn total_greyness(&self) -> u64 {
        self.pixels.iter().map(|&v| u64::from(v)).sum()
    }
}

/// Half-open pixel rectangle `[x0, x1) × [y0, y1)` used to mask metrics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PixelRect {
    pub x0: usize,
    pub y0: usize,
    pub x1: usize,
    pub y1: usize,
}

impl PixelRect {
    /// Central window covering `fraction` of each dimension.
    pub fn central(width: usize, height: usize, fraction: f64) -> Self {
        let f = fraction.clamp(0.0, 1.0);
        let mx = ((width as f64) * (1.0 - f) / 2.0).round() as usize;
        let my = ((height as f64) * (1.0 - f) / 2.0).round() as usize;
        Self {
            x0: mx,
            y0: my,
            x1: width - mx,
            y1: height - my,
        }
    }
}

/// Comparison metrics between two equally sized images.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub mae: f64,
    /// `f64::INFINITY` when the images agree exactly.
    pub psnr: f64,
    pub exact_match_fraction: f64,
    pub total_greyness_a: u64,
    pub total_greyness_b: u64,
}

/// Standard image-difference metrics, optionally restricted to a mask.
pub fn metrics(
    a: &GreyImage,
    b: &GreyImage,
    mask: Option<PixelRect>,
) -> Result<Metrics, RasterError> {
    if a.width != b.width || a.height != b.height || a.levels != b.levels {
        return Err(RasterError::GeometryMismatch);
    }
    let rect = mask.unwrap_or(PixelRect {
        x0: 0,
        y0: 0,
        x1: a.width,
        y1: a.height,
    });
    if rect.x1 > a.width || rect.y1 > a.height || rect.x0 >= rect.x1 || rect.y0 >= rect.y1 {
        return Err(RasterError::BadMask);
    }
    let mut abs_sum = 0u64;
    let mut sq_sum = 0u64;
    let mut exact = 0usize;
    let mut total_a = 0u64;
    let mut total_b = 0u64;
    for row in rect.y0..rect.y1 {
        for col in rect.x0..rect.x1 {
            let va = a.get(col, row);
            let vb = b.get(col, row);
            let d = u64::from(va.abs_diff(vb));
            abs_sum += d;
            sq_sum += d * d;
            if d == 0 {
                exact += 1;
            }
            total_a += u64::from(va);
            total_b += u64::from(vb);
        }
    }
    let count = ((rect.x1 - rect.x0) * (rect.y1 - rect.y0)) as f64;
    let mse = sq_sum as f64 / count;
    let peak = f64::from(a.levels - 1);
    let psnr = if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (peak * peak / mse).log10()
    };
    Ok(Metrics {
        mae: abs_sum as f64 / count,
        psnr,
        exact_match_fraction: exact as f64 / count,
        total_greyness_a: total_a,
        total_greyness_b: total_b,
    })
}

const WHITE: u8 = 255;
const BLACK: u8 = 0;

/// White image partitioned into `n × n` cells by one-pixel black lines.
///
/// Lines sit at integer multiples of `size/n`, the last one clamped onto the
/// final row/column, which yields `n+1` lines per direction.
pub fn make_grid_image(n: usize, size: usize) -> Result<GreyImage, RasterError> {
    if n < 1 || size < n {
        return Err(RasterError::BadGrid { n, size });
    }
    let positions = grid_line_positions(n, size);
    let mut img = GreyImage::filled(size, size, 256, WHITE)?;
    for &p in &positions {
        for k in 0..size {
            img.set(k, p, BLACK);
            img.set(p, k, BLACK);
        }
    }
    Ok(img)
}

/// Distinct pixel rows/columns carrying the grid lines of [`make_grid_image`].
pub fn grid_line_positions(n: usize, size: usize) -> Vec<usize> {
    let mut positions: Vec<usize> = (0..=n).map(|k| (k * size / n).min(size - 1)).collect();
    positions.dedup();
    positions
}

/// Boundary correspondence of a quadratic press of the unit square:
/// `(ξ, η) ↦ (ξ, η·(1 − α·4ξ(1−ξ)))`, sampled 16 points per side.
///
/// The bottom edge and all four corners are fixed for every `alpha`; the top
/// edge sags quadratically with maximum depression `alpha` at `ξ = 1/2`.
pub fn quadratic_press(alpha: f64) -> Result<BoundaryCorrespondence, RasterError> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(RasterError::BadAlpha(alpha));
    }
    const PER_SIDE: usize = 16;
    let mut source = Vec::with_capacity(4 * PER_SIDE);
    for k in 0..PER_SIDE {
        let t = k as f64 / PER_SIDE as f64;
        source.push((t, 0.0)); // bottom, left to right
    }
    for k in 0..PER_SIDE {
        let t = k as f64 / PER_SIDE as f64;
        source.push((1.0, t)); // right, upward
    }
    for k in 0..PER_SIDE {
        let t = k as f64 / PER_SIDE as f64;
        source.push((1.0 - t, 1.0)); // top, right to left
    }
    for k in 0..PER_SIDE {
        let t = k as f64 / PER_SIDE as f64;
        source.push((0.0, 1.0 - t)); // left, downward
    }
    let target: Vec<(f64, f64)> = source
        .iter()
        .map(|&(xi, eta)| (xi, eta * (1.0 - alpha * 4.0 * xi * (1.0 - xi))))
        .collect();
    Ok(BoundaryCorrespondence::new(source, target)
        .expect("press correspondence is valid by construction"))
}

/// Deterministic 256-level stand-in for a photographic test subject:
/// smooth gradients, a few soft-edged elliptic features and gentle sinusoid
/// texture. `seed` varies the texture phases.
pub fn make_synthetic_portrait(size: usize, seed: u64) -> GreyImage {
    let size = size.max(8);
    let n = size as f64;
    let phase_a = splitmix(seed) * std::f64::consts::TAU;
    let phase_b = splitmix(seed.wrapping_add(1)) * std::f64::consts::TAU;

    // soft indicator of an axis-aligned ellipse, ramping over `edge` pixels
    let ellipse = |x: f64, y: f64, cx: f64, cy: f64, rx: f64, ry: f64, edge: f64| -> f64 {
        let d = ((x - cx) / rx).powi(2) + ((y - cy) / ry).powi(2);
        let r = d.sqrt();
        smoothstep((1.0 + edge) - r, 0.0, 2.0 * edge)
    };

    let mut pixels = Vec::with_capacity(size * size);
    for row in 0..size {
        for col in 0..size {
            let x = col as f64 / n;
            let y = row as f64 / n;
            // backdrop: diagonal gradient plus low-frequency weave
            let mut v = 120.0 + 70.0 * y - 30.0 * x;
            v += 18.0 * (std::f64::consts::TAU * (3.0 * x) + phase_a).sin();
            v += 12.0 * (std::f64::consts::TAU * (2.0 * y) + phase_b).sin();
            // head
            let head = ellipse(x, y, 0.5, 0.45, 0.28, 0.36, 0.12);
            v = v * (1.0 - head) + head * (205.0 - 35.0 * y);
            // eyes and mouth, softly darker
            let eye_l = ellipse(x, y, 0.40, 0.38, 0.045, 0.03, 0.5);
            let eye_r = ellipse(x, y, 0.60, 0.38, 0.045, 0.03, 0.5);
            let mouth = ellipse(x, y, 0.5, 0.60, 0.09, 0.025, 0.5);
            v -= 90.0 * (eye_l + eye_r) + 60.0 * mouth;
            pixels.push(v.clamp(0.0, 255.0).round() as u8);
        }
    }
    GreyImage::new(size, size, 256, pixels).expect("generator stays in range")
}

fn smoothstep(x: f64, lo: f64, width: f64) -> f64 {
    if width <= 0.0 {
        return if x >= lo { 1.0 } else { 0.0 };
    }
    let t = ((x - lo) / width).clamp(0.0, 1.0);
    t * t * (3.0 - 2.0 * t)
}

fn splitmix(seed: u64) -> f64 {
    let mut z = seed.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z = z ^ (z >> 31);
    (z >> 11) as f64 / (1u64 << 53) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_validation() {
        assert!(matches!(
            GreyImage::new(0, 4, 256, vec![]),
            Err(RasterError::ZeroDimension)
        ));
        assert!(matches!(
            GreyImage::new(2, 2, 256, vec![0; 3]),
            Err(RasterError::SizeMismatch { .. })
        ));
        assert!(matches!(
            GreyImage::new(2, 2, 16, vec![0, 3, 15, 16]),
            Err(RasterError::ValueOutOfRange { value: 16, .. })
        ));
        assert!(matches!(
            GreyImage::new(2, 2, 1, vec![0; 4]),
            Err(RasterError::BadLevels(1))
        ));
        assert!(GreyImage::new(2, 2, 16, vec![0, 3, 15, 1]).is_ok());
    }

    #[test]
    fn grid_image_n1_is_border_only() {
        let img = make_grid_image(1, 8).unwrap();
        for k in 0..8 {
            assert_eq!(img.get(k, 0), BLACK);
            assert_eq!(img.get(k, 7), BLACK);
            assert_eq!(img.get(0, k), BLACK);
            assert_eq!(img.get(7, k), BLACK);
        }
        assert_eq!(img.get(3, 4), WHITE);
    }

    #[test]
    fn grid_image_8x256_line_layout() {
        let img = make_grid_image(8, 256).unwrap();
        let positions = grid_line_positions(8, 256);
        assert_eq!(positions, vec![0, 32, 64, 96, 128, 160, 192, 224, 255]);
        for &p in &positions {
            for k in 0..256 {
                assert_eq!(img.get(k, p), BLACK);
                assert_eq!(img.get(p, k), BLACK);
            }
        }
        assert_eq!(img.get(16, 16), WHITE);
    }

    #[test]
    fn grid_image_dark_pixel_count_matches_coverage_formula() {
        for &(n, size) in &[(8usize, 256usize), (3, 10), (1, 5), (5, 5)] {
            let img = make_grid_image(n, size).unwrap();
            let lines = grid_line_positions(n, size).len();
            // lines × length per direction, minus the double-counted crossings
            let expected = 2 * lines * size - lines * lines;
            let dark = img.pixels().iter().filter(|&&v| v == BLACK).count();
            assert_eq!(dark, expected, "n={n} size={size}");
        }
    }

    #[test]
    fn quadratic_press_identity_at_zero() {
        let corr = quadratic_press(0.0).unwrap();
        assert_eq!(corr.len(), 64);
        for (s, t) in corr.source().iter().zip(corr.target()) {
            assert_eq!(s, t);
        }
    }

    #[test]
    fn quadratic_press_known_point_and_corners() {
        let corr = quadratic_press(0.25).unwrap();
        // (0.5, 1) is a sample on the top edge and maps to (0.5, 0.75)
        let idx = corr
            .source()
            .iter()
            .position(|&p| p == (0.5, 1.0))
            .expect("midpoint of top edge is sampled");
        assert_eq!(corr.target()[idx], (0.5, 0.75));
        for corner in [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)] {
            let idx = corr.source().iter().position(|&p| p == corner).unwrap();
            assert_eq!(corr.target()[idx], corner, "corner {corner:?} must be fixed");
        }
    }

    #[test]
    fn quadratic_press_rejects_bad_alpha() {
        assert!(matches!(quadratic_press(1.0), Err(RasterError::BadAlpha(_))));
        assert!(matches!(
            quadratic_press(-0.1),
            Err(RasterError::BadAlpha(_))
        ));
    }

    #[test]
    fn metrics_identical_images() {
        let img = make_synthetic_portrait(64, 7);
        let m = metrics(&img, &img, None).unwrap();
        assert_eq!(m.mae, 0.0);
        assert_eq!(m.exact_match_fraction, 1.0);
        assert!(m.psnr.is_infinite());
        assert_eq!(m.total_greyness_a, m.total_greyness_b);
    }

    #[test]
    fn metrics_single_pixel_difference() {
        let a = GreyImage::filled(256, 256, 256, 0).unwrap();
        let mut b = a.clone();
        b.set(10, 20, 255);
        let m = metrics(&a, &b, None).unwrap();
        assert!((m.mae - 255.0 / 65536.0).abs() < 1e-12);
        assert!((m.exact_match_fraction - 65535.0 / 65536.0).abs() < 1e-12);
    }

    #[test]
    fn metrics_symmetric_in_mae_and_exact() {
        let a = make_synthetic_portrait(32, 1);
        let b = make_synthetic_portrait(32, 2);
        let ab = metrics(&a, &b, None).unwrap();
        let ba = metrics(&b, &a, None).unwrap();
        assert_eq!(ab.mae, ba.mae);
        assert_eq!(ab.exact_match_fraction, ba.exact_match_fraction);
    }

    #[test]
    fn metrics_mask_restricts_the_window() {
        let a = GreyImage::filled(10, 10, 256, 100).unwrap();
        let mut b = a.clone();
        b.set(0, 0, 0); // corner damage outside the central window
        let full = metrics(&a, &b, None).unwrap();
        assert!(full.mae > 0.0);
        let inner = metrics(&a, &b, Some(PixelRect::central(10, 10, 0.6))).unwrap();
        assert_eq!(inner.mae, 0.0);
        assert_eq!(inner.exact_match_fraction, 1.0);
    }

    #[test]
    fn metrics_geometry_mismatch() {
        let a = GreyImage::filled(4, 4, 256, 0).unwrap();
        let b = GreyImage::filled(4, 5, 256, 0).unwrap();
        assert!(matches!(
            metrics(&a, &b, None),
            Err(RasterError::GeometryMismatch)
        ));
    }

    #[test]
    fn synthetic_portrait_is_deterministic() {
        let a = make_synthetic_portrait(64, 9);
        let b = make_synthetic_portrait(64, 9);
        assert_eq!(a, b);
        let c = make_synthetic_portrait(64, 10);
        assert_ne!(a, c);
    }
}
