//! The four perceptual hash families and the [`HashVector`] they produce.

mod block;
mod cslbp;
mod phash;
mod ring;

pub use block::{block_structure_hash, BLOCK_COUNT, BLOCK_SELECTED};
pub use cslbp::{cslbp_code, cslbp_hash, CSLBP_THRESHOLD};
pub use phash::phash;
pub use ring::{ring_hash, RingPartition};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::raster::RasterImage;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Phash,
    Ring,
    Block,
    Cslbp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Phash, Algorithm::Ring, Algorithm::Block, Algorithm::Cslbp];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Phash => "phash",
            Algorithm::Ring => "ring",
            Algorithm::Block => "block",
            Algorithm::Cslbp => "cslbp",
        }
    }

    /// Fixed hash length produced by this algorithm.
    pub fn hash_len(self) -> usize {
        match self {
            Algorithm::Phash => 63,
            Algorithm::Ring => 32,
            Algorithm::Block => 80,
            Algorithm::Cslbp => 256,
        }
    }

    pub fn hash(self, img: &RasterImage) -> HashVector {
        match self {
            Algorithm::Phash => phash(img),
            Algorithm::Ring => ring_hash(img),
            Algorithm::Block => block_structure_hash(img),
            Algorithm::Cslbp => cslbp_hash(img),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown algorithm `{0}` (expected phash, ring, block or cslbp)")]
pub struct UnknownAlgorithm(pub String);

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum HashError {
    #[error("{algorithm} hashes have length {expected}, got {actual}")]
    Length {
        algorithm: Algorithm,
        expected: usize,
        actual: usize,
    },
    #[error("hash contains a non-finite value")]
    NonFinite,
    #[error("malformed hash line: {0}")]
    Malformed(String),
    #[error(transparent)]
    Algorithm(#[from] UnknownAlgorithm),
    #[error("hex form is only defined for binary hashes")]
    NotBinary,
}

/// Algorithm-tagged, fixed-length hash. Binary hashes hold 0.0/1.0 values.
#[derive(Clone, Debug, PartialEq)]
pub struct HashVector {
    algorithm: Algorithm,
    values: Vec<f64>,
}

impl HashVector {
    pub fn new(algorithm: Algorithm, values: Vec<f64>) -> Result<Self, HashError> {
        if values.len() != algorithm.hash_len() {
            return Err(HashError::Length {
                algorithm,
                expected: algorithm.hash_len(),
                actual: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(HashError::NonFinite);
        }
        Ok(Self { algorithm, values })
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when every component is exactly 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    /// Big-endian hex of the bit string, first component most significant.
    /// The string is left-padded with zero bits to a whole number of nibbles.
    pub fn to_hex(&self) -> Result<String, HashError> {
        if !self.is_binary() {
            return Err(HashError::NotBinary);
        }
        let pad = (4 - self.values.len() % 4) % 4;
        let bits: Vec<bool> = std::iter::repeat_n(false, pad)
            .chain(self.values.iter().map(|&v| v == 1.0))
            .collect();
        Ok(bits
            .chunks(4)
            .map(|nib| {
                let d = nib.iter().fold(0u32, |acc, &b| (acc << 1) | u32::from(b));
                char::from_digit(d, 16).expect("nibble")
            })
            .collect())
    }

    pub fn from_hex(algorithm: Algorithm, hex: &str) -> Result<Self, HashError> {
        let len = algorithm.hash_len();
        let pad = (4 - len % 4) % 4;
        if hex.len() * 4 != len + pad {
            return Err(HashError::Malformed(format!(
                "expected {} hex digits for {algorithm}",
                (len + pad) / 4
            )));
        }
        let mut bits = Vec::with_capacity(len + pad);
        for ch in hex.chars() {
            let d = ch
                .to_digit(16)
                .ok_or_else(|| HashError::Malformed(format!("bad hex digit `{ch}`")))?;
            bits.extend((0..4).rev().map(|i| f64::from((d >> i) & 1)));
        }
        if bits[..pad].iter().any(|&b| b != 0.0) {
            return Err(HashError::Malformed("non-zero padding bits".into()));
        }
        HashVector::new(algorithm, bits.split_off(pad))
    }
}

/// `algorithm:length:v1,v2,...` with shortest round-trip decimals.
impl fmt::Display for HashVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:", self.algorithm, self.values.len())?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for HashVector {
    type Err = HashError;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let mut parts = line.trim().splitn(3, ':');
        let (Some(alg), Some(len), Some(body)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(HashError::Malformed("expected algorithm:length:values".into()));
        };
        let algorithm: Algorithm = alg.parse()?;
        let len: usize = len
            .parse()
            .map_err(|_| HashError::Malformed(format!("bad length `{len}`")))?;
        let values = body
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| HashError::Malformed(format!("bad value `{v}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != len {
            return Err(HashError::Malformed(format!(
                "header says {len} values, found {}",
                values.len()
            )));
        }
        HashVector::new(algorithm, values)
    }
}

/// Zeroes transform coefficients that are pure floating-point residue.
pub(crate) fn snap_residue(v: f64) -> f64 {
    if v.abs() < 1e-9 {
        0.0
    } else {
        v
    }
}
