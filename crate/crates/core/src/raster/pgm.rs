//! Minimal netpbm greymap codec: reads P2 (ASCII) and P5 (binary), always
//! writes P5. Round-tripping an image through `write_pgm ∘ read_pgm` is the
//! identity for every valid image with up to 256 levels.

use super::{GreyImage, RasterError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PgmError {
    #[error("not a PGM stream: magic must be P2 or P5")]
    BadMagic,
    #[error("malformed header: {0}")]
    BadHeader(&'static str),
    #[error("maxval must lie in 1..=255, got {0}")]
    BadMaxval(u32),
    #[error("payload truncated: expected {expected} pixels, found {got}")]
    Truncated { expected: usize, got: usize },
    #[error("pixel value {value} exceeds declared maxval {maxval}")]
    ValueAboveMaxval { value: u32, maxval: u32 },
    #[error("trailing data after the pixel payload")]
    TrailingData,
    #[error(transparent)]
    Image(#[from] RasterError),
}

/// Serializes as binary PGM: `P5 <w> <h> <maxval>\n` followed by one byte
/// per pixel.
pub fn write_pgm(img: &GreyImage) -> Vec<u8> {
    let header = format!(
        "P5 {} {} {}\n",
        img.width(),
        img.height(),
        img.levels() - 1
    );
    let mut out = Vec::with_capacity(header.len() + img.pixels().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.pixels());
    out
}

/// Parses a P2 or P5 greymap. The image's level count is `maxval + 1`.
pub fn read_pgm(bytes: &[u8]) -> Result<GreyImage, PgmError> {
    let mut cur = Cursor { bytes, pos: 0 };
    let magic = cur.token().ok_or(PgmError::BadMagic)?;
    let binary = match magic.as_slice() {
        b"P5" => true,
        b"P2" => false,
        _ => return Err(PgmError::BadMagic),
    };
    let width = cur.number().ok_or(PgmError::BadHeader("width"))? as usize;
    let height = cur.number().ok_or(PgmError::BadHeader("height"))? as usize;
    let maxval = cur.number().ok_or(PgmError::BadHeader("maxval"))?;
    if !(1..=255).contains(&maxval) {
        return Err(PgmError::BadMaxval(maxval));
    }
    let expected = width
        .checked_mul(height)
        .ok_or(PgmError::BadHeader("dimensions overflow"))?;

    let pixels = if binary {
        // exactly one whitespace byte separates the header from the payload
        if !cur.bump_single_whitespace() {
            return Err(PgmError::BadHeader("missing payload separator"));
        }
        let payload = &cur.bytes[cur.pos..];
        if payload.len() < expected {
            return Err(PgmError::Truncated {
                expected,
                got: payload.len(),
            });
        }
        if payload.len() > expected {
            return Err(PgmError::TrailingData);
        }
        for &b in payload {
            if u32::from(b) > maxval {
                return Err(PgmError::ValueAboveMaxval {
                    value: u32::from(b),
                    maxval,
                });
            }
        }
        payload.to_vec()
    } else {
        let mut values = Vec::with_capacity(expected);
        while values.len() < expected {
            match cur.number() {
                Some(v) if v > maxval => {
                    return Err(PgmError::ValueAboveMaxval { value: v, maxval })
                }
                Some(v) => values.push(v as u8),
                None => {
                    return Err(PgmError::Truncated {
                        expected,
                        got: values.len(),
                    })
                }
            }
        }
        if cur.token().is_some() {
            return Err(PgmError::TrailingData);
        }
        values
    };

    Ok(GreyImage::new(width, height, (maxval + 1) as u16, pixels)?)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    /// Next whitespace-delimited token, skipping `#` comments.
    fn token(&mut self) -> Option<Vec<u8>> {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
                continue;
            }
            break;
        }
        if self.pos >= self.bytes.len() {
            return None;
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        Some(self.bytes[start..self.pos].to_vec())
    }

    fn number(&mut self) -> Option<u32> {
        let tok = self.token()?;
        std::str::from_utf8(&tok).ok()?.parse().ok()
    }

    fn bump_single_whitespace(&mut self) -> bool {
        if self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
            true
        } else {
            false
        }
    }
}
