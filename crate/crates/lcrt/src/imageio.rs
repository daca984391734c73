//! Raster file I/O.
//!
//! Reading sniffs the payload magic: binary PGM ("P5", one channel) and
//! PPM ("P6", three channels) with maxval 255, plus a lossless float
//! container ("LCRTF1") holding little-endian f64 samples. Writing
//! dispatches on the file extension: `.pgm` and `.ppm` quantize to 8
//! bits, anything else writes the float container.
//!
//! Float container layout: `LCRTF1\n`, an ASCII line
//! `width height channels\n`, then width*height*channels little-endian
//! f64 values in row-major channel-interleaved order.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::raster::RealRaster;

const FLOAT_MAGIC: &[u8] = b"LCRTF1\n";

#[derive(Debug, Error)]
pub enum ImageIoError {
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("corrupt header: {0}")]
    CorruptHeader(String),
    #[error("payload truncated: expected {expected} bytes, got {got}")]
    PayloadTruncated { expected: usize, got: usize },
    #[error("format holds {expected} channel(s), raster has {got}")]
    ChannelMismatch { expected: usize, got: usize },
    #[error(transparent)]
    IoFailure(#[from] std::io::Error),
}

struct Tokens<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn skip_separators(&mut self) {
        loop {
            while self.pos < self.data.len() && self.data[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < self.data.len() && self.data[self.pos] == b'#' {
                while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                return;
            }
        }
    }

    fn next_usize(&mut self) -> Result<usize, ImageIoError> {
        self.skip_separators();
        let start = self.pos;
        while self.pos < self.data.len() && self.data[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ImageIoError::CorruptHeader(
                "expected a decimal header field".into(),
            ));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .expect("digits are valid UTF-8")
            .parse()
            .map_err(|e| ImageIoError::CorruptHeader(format!("header field: {e}")))
    }
}

fn read_pnm(data: &[u8], channels: usize) -> Result<RealRaster, ImageIoError> {
    let mut t = Tokens { data, pos: 2 };
    let width = t.next_usize()?;
    let height = t.next_usize()?;
    let maxval = t.next_usize()?;
    if maxval != 255 {
        return Err(ImageIoError::UnsupportedFormat(format!(
            "only maxval 255 is handled, file declares {maxval}"
        )));
    }
    // Exactly one separator byte between the header and the payload.
    if t.pos >= data.len() || !data[t.pos].is_ascii_whitespace() {
        return Err(ImageIoError::CorruptHeader(
            "missing separator before payload".into(),
        ));
    }
    let payload = &data[t.pos + 1..];
    let expected = width * height * channels;
    if payload.len() < expected {
        return Err(ImageIoError::PayloadTruncated {
            expected,
            got: payload.len(),
        });
    }
    let samples = payload[..expected]
        .iter()
        .map(|&b| b as f64 / 255.0)
        .collect();
    RealRaster::new(width, height, channels, samples)
        .map_err(|e| ImageIoError::CorruptHeader(e.to_string()))
}

fn read_float(data: &[u8]) -> Result<RealRaster, ImageIoError> {
    let body = &data[FLOAT_MAGIC.len()..];
    let line_end = body
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| ImageIoError::CorruptHeader("missing dimension line".into()))?;
    let mut t = Tokens {
        data: &body[..line_end],
        pos: 0,
    };
    let (width, height, channels) = (t.next_usize()?, t.next_usize()?, t.next_usize()?);
    let payload = &body[line_end + 1..];
    let expected = width * height * channels * 8;
    if payload.len() < expected {
        return Err(ImageIoError::PayloadTruncated {
            expected,
            got: payload.len(),
        });
    }
    if payload.len() > expected {
        return Err(ImageIoError::CorruptHeader(format!(
            "{} trailing bytes after the payload",
            payload.len() - expected
        )));
    }
    let samples = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect();
    RealRaster::new(width, height, channels, samples)
        .map_err(|e| ImageIoError::CorruptHeader(e.to_string()))
}

/// Load a raster, sniffing the format from the payload magic.
pub fn read_image(path: &Path) -> Result<RealRaster, ImageIoError> {
    let data = fs::read(path)?;
    if data.starts_with(b"P5") {
        read_pnm(&data, 1)
    } else if data.starts_with(b"P6") {
        read_pnm(&data, 3)
    } else if data.starts_with(FLOAT_MAGIC) {
        read_float(&data)
    } else {
        Err(ImageIoError::UnsupportedFormat(
            "unrecognized magic; expected P5, P6, or LCRTF1".into(),
        ))
    }
}

/// Quantize a unit-range value to 8 bits, ties to even; out-of-range
/// values clamp.
fn quantize(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0).round_ties_even() as u8
}

fn write_pnm(path: &Path, r: &RealRaster, channels: usize) -> Result<(), ImageIoError> {
    if r.channels() != channels {
        return Err(ImageIoError::ChannelMismatch {
            expected: channels,
            got: r.channels(),
        });
    }
    let tag = if channels == 1 { "P5" } else { "P6" };
    let mut out = format!("{tag}\n{} {}\n255\n", r.width(), r.height()).into_bytes();
    out.extend(r.samples().iter().map(|&v| quantize(v)));
    fs::write(path, out)?;
    Ok(())
}

fn write_float(path: &Path, r: &RealRaster) -> Result<(), ImageIoError> {
    let mut out = FLOAT_MAGIC.to_vec();
    out.extend(format!("{} {} {}\n", r.width(), r.height(), r.channels()).into_bytes());
    for v in r.samples() {
        out.extend(v.to_le_bytes());
    }
    fs::write(path, out)?;
    Ok(())
}

/// Write a raster; `.pgm` and `.ppm` extensions quantize to 8 bits, any
/// other name gets the lossless float container.
pub fn write_image(path: &Path, r: &RealRaster) -> Result<(), ImageIoError> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase());
    match ext.as_deref() {
        Some("pgm") => write_pnm(path, r, 1),
        Some("ppm") => write_pnm(path, r, 3),
        _ => write_float(path, r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern(w: usize, h: usize, c: usize) -> RealRaster {
        let samples = (0..w * h * c)
            .map(|i| ((i * 37 + 11) % 256) as f64 / 255.0)
            .collect();
        RealRaster::new(w, h, c, samples).unwrap()
    }

    #[test]
    fn float_container_round_trips_bitwise() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("field.lcrtf");
        let mut r = pattern(7, 5, 3);
        r.samples_mut()[3] = -1234.5678e-9; // negatives and tiny values survive
        write_image(&path, &r).unwrap();
        let back = read_image(&path).unwrap();
        assert_eq!(back.width(), 7);
        assert_eq!(back.height(), 5);
        assert_eq!(back.channels(), 3);
        assert_eq!(back.samples(), r.samples());
    }

    #[test]
    fn eight_bit_round_trip_stays_within_half_step() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("img.pgm");
        let samples = (0..64 * 64).map(|i| i as f64 / (64.0 * 64.0)).collect();
        let r = RealRaster::new(64, 64, 1, samples).unwrap();
        write_image(&path, &r).unwrap();
        let back = read_image(&path).unwrap();
        for (a, b) in r.samples().iter().zip(back.samples()) {
            assert!((a - b).abs() <= 1.0 / 510.0 + 1e-12);
        }
    }

    #[test]
    fn color_round_trip_via_ppm() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("img.ppm");
        let r = pattern(9, 4, 3);
        write_image(&path, &r).unwrap();
        let back = read_image(&path).unwrap();
        assert_eq!(back.channels(), 3);
        // Samples are exact 8-bit fractions, so the trip is lossless here.
        assert_eq!(back.samples(), r.samples());
    }

    #[test]
    fn channel_extension_mismatch_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let gray = pattern(4, 4, 1);
        let rgb = pattern(4, 4, 3);
        assert!(matches!(
            write_image(&dir.path().join("x.pgm"), &rgb),
            Err(ImageIoError::ChannelMismatch {
                expected: 1,
                got: 3
            })
        ));
        assert!(matches!(
            write_image(&dir.path().join("x.ppm"), &gray),
            Err(ImageIoError::ChannelMismatch {
                expected: 3,
                got: 1
            })
        ));
    }

    #[test]
    fn header_comments_and_whitespace_are_tolerated() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("weird.pgm");
        let mut bytes = b"P5 # format tag\n# a comment line\n  2\t3 # dims\n255\n".to_vec();
        bytes.extend([0u8, 51, 102, 153, 204, 255]);
        fs::write(&path, bytes).unwrap();
        let r = read_image(&path).unwrap();
        assert_eq!((r.width(), r.height()), (2, 3));
        assert_eq!(r.at(1, 0, 0), 0.2);
        assert_eq!(r.at(1, 2, 0), 1.0);
    }

    #[test]
    fn wide_maxval_is_unsupported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("deep.pgm");
        fs::write(&path, b"P5\n2 2\n65535\n\0\0\0\0\0\0\0\0").unwrap();
        assert!(matches!(
            read_image(&path),
            Err(ImageIoError::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn short_payloads_are_reported_with_sizes() {
        let dir = tempfile::tempdir().unwrap();
        let pnm = dir.path().join("short.pgm");
        fs::write(&pnm, b"P5\n4 4\n255\n\x01\x02").unwrap();
        assert!(matches!(
            read_image(&pnm),
            Err(ImageIoError::PayloadTruncated {
                expected: 16,
                got: 2
            })
        ));
        let float = dir.path().join("short.lcrtf");
        let mut bytes = FLOAT_MAGIC.to_vec();
        bytes.extend(b"2 2 1\n");
        bytes.extend([0u8; 24]); // needs 32
        fs::write(&float, bytes).unwrap();
        assert!(matches!(
            read_image(&float),
            Err(ImageIoError::PayloadTruncated {
                expected: 32,
                got: 24
            })
        ));
    }

    #[test]
    fn unknown_magic_is_unsupported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mystery.bin");
        fs::write(&path, b"GIF89a.....").unwrap();
        assert!(matches!(
            read_image(&path),
            Err(ImageIoError::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn quantization_rounds_ties_to_even() {
        assert_eq!(quantize(0.0), 0);
        assert_eq!(quantize(1.0), 255);
        assert_eq!(quantize(-0.3), 0);
        assert_eq!(quantize(2.0), 255);
        // 127.5 is an exact tie and must go to the even neighbor.
        assert_eq!(quantize(127.5 / 255.0), 128);
        assert_eq!(quantize(0.5 / 255.0), 0);
    }
}
