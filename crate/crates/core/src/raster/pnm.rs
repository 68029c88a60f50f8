//! Binary PGM (P5) and PPM (P6) with maxval 255.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::RasterImage;

#[derive(Debug, Error)]
pub enum PnmError {
    #[error("file not found: {0}")]
    NotFound(PathBuf),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("unsupported bit depth: maxval {0} (only 255 is supported)")]
    UnsupportedBitDepth(u32),
    #[error("truncated pixel data: expected {expected} bytes, found {actual}")]
    Truncated { expected: usize, actual: usize },
}

pub fn load_image(path: impl AsRef<Path>) -> Result<RasterImage, PnmError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => PnmError::NotFound(path.to_path_buf()),
        _ => PnmError::Io {
            path: path.to_path_buf(),
            source: e,
        },
    })?;
    decode_pnm(&bytes)
}

pub fn save_image(img: &RasterImage, path: impl AsRef<Path>) -> Result<(), PnmError> {
    let path = path.as_ref();
    fs::write(path, encode_pnm(img)).map_err(|source| PnmError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Serializes as `P5`/`P6`, single spaces/newline between header tokens, then raw samples.
pub fn encode_pnm(img: &RasterImage) -> Vec<u8> {
    let magic = if img.is_rgb() { "P6" } else { "P5" };
    let header = format!("{magic}\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.pixels().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.pixels());
    out
}

struct HeaderReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderReader<'_> {
    fn skip_whitespace_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                b if b.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32, PnmError> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PnmError::MalformedHeader(format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| PnmError::MalformedHeader(format!("{what} out of range")))
    }
}

pub fn decode_pnm(bytes: &[u8]) -> Result<RasterImage, PnmError> {
    let channels = match bytes.get(..2) {
        Some(b"P5") => 1,
        Some(b"P6") => 3,
        _ => return Err(PnmError::MalformedHeader("expected magic P5 or P6".into())),
    };
    let mut reader = HeaderReader { bytes, pos: 2 };
    let width = reader.number("width")? as usize;
    let height = reader.number("height")? as usize;
    let maxval = reader.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(PnmError::MalformedHeader(format!("zero dimension {width}x{height}")));
    }
    if maxval != 255 {
        return Err(PnmError::UnsupportedBitDepth(maxval));
    }
    // exactly one whitespace byte separates maxval from the raster
    match bytes.get(reader.pos) {
        Some(b) if b.is_ascii_whitespace() => reader.pos += 1,
        _ => return Err(PnmError::MalformedHeader("missing whitespace after maxval".into())),
    }
    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| PnmError::MalformedHeader("dimensions overflow".into()))?;
    let data = &bytes[reader.pos..];
    if data.len() < expected {
        return Err(PnmError::Truncated {
            expected,
            actual: data.len(),
        });
    }
    RasterImage::new(width, height, channels, data[..expected].to_vec())
        .map_err(|e| PnmError::MalformedHeader(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_p5() {
        let mut bytes = b"P5 2 2 255\n".to_vec();
        bytes.extend_from_slice(&[0, 255, 128, 64]);
        let img = decode_pnm(&bytes).unwrap();
        assert_eq!(img, RasterImage::new(2, 2, 1, vec![0, 255, 128, 64]).unwrap());
    }

    #[test]
    fn decodes_p6() {
        let mut bytes = b"P6 1 1 255\n".to_vec();
        bytes.extend_from_slice(&[10, 20, 30]);
        let img = decode_pnm(&bytes).unwrap();
        assert_eq!(img, RasterImage::new(1, 1, 3, vec![10, 20, 30]).unwrap());
    }

    #[test]
    fn header_comments_are_skipped() {
        let mut bytes = b"P5\n# made by hand\n1 1\n255\n".to_vec();
        bytes.push(7);
        assert_eq!(decode_pnm(&bytes).unwrap().pixels(), &[7]);
    }

    #[test]
    fn pixel_value_matching_whitespace_is_not_skipped() {
        // first sample is 0x0A ('\n'); only one whitespace byte is consumed after maxval
        let mut bytes = b"P5 2 1 255\n".to_vec();
        bytes.extend_from_slice(b"\n ");
        assert_eq!(decode_pnm(&bytes).unwrap().pixels(), b"\n ");
    }

    #[test]
    fn rejects_sixteen_bit() {
        let bytes = b"P5 1 1 65535\n\0\0".to_vec();
        assert!(matches!(decode_pnm(&bytes), Err(PnmError::UnsupportedBitDepth(65535))));
        assert_eq!(
            decode_pnm(&bytes).unwrap_err().to_string(),
            "unsupported bit depth: maxval 65535 (only 255 is supported)"
        );
    }

    #[test]
    fn rejects_truncated_and_malformed() {
        assert!(matches!(
            decode_pnm(b"P6 2 2 255\n\0\0\0"),
            Err(PnmError::Truncated {
                expected: 12,
                actual: 3
            })
        ));
        assert!(matches!(
            decode_pnm(b"P3 1 1 255\n0"),
            Err(PnmError::MalformedHeader(_))
        ));
        assert!(matches!(
            decode_pnm(b"P5 x 1 255\n0"),
            Err(PnmError::MalformedHeader(_))
        ));
        assert!(matches!(decode_pnm(b"P5 0 1 255\n"), Err(PnmError::MalformedHeader(_))));
    }

    #[test]
    fn encode_layout() {
        let gray = RasterImage::new(1, 1, 1, vec![0]).unwrap();
        let enc = encode_pnm(&gray);
        assert_eq!(enc, b"P5\n1 1\n255\n\0");

        let rgb = RasterImage::new(2, 1, 3, vec![1, 2, 3, 4, 5, 6]).unwrap();
        let enc = encode_pnm(&rgb);
        assert!(enc.starts_with(b"P6\n2 1\n255\n"));
        assert_eq!(&enc[enc.len() - 6..], &[1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn missing_file_is_distinct() {
        let err = load_image("/definitely/not/here.pgm").unwrap_err();
        assert!(matches!(err, PnmError::NotFound(_)));
    }
}
