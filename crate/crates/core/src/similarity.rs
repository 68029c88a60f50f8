//! Correlation-coefficient similarity between hashes and the threshold decision.

use std::fmt;

use thiserror::Error;

use crate::hashes::{Algorithm, HashVector};

/// Guard constant added to the denominator of the correlation coefficient.
pub const XI: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum SimilarityError {
    #[error("hash lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("cannot compare a {0} hash with a {1} hash")]
    AlgorithmMismatch(Algorithm, Algorithm),
    #[error("hashes need at least 2 components, got {0}")]
    TooShort(usize),
    #[error("hamming distance needs binary hashes")]
    NotBinary,
    #[error("threshold {0} is outside (-1, 1)")]
    ThresholdOutOfRange(f64),
}

/// Correlation score S in [-1, 1]; higher means more similar.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct SimilarityScore(f64);

impl SimilarityScore {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for SimilarityScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4}", self.0)
    }
}

/// Decision threshold T in the open interval (-1, 1).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct DecisionThreshold(f64);

impl DecisionThreshold {
    pub fn new(t: f64) -> Result<Self, SimilarityError> {
        if t > -1.0 && t < 1.0 {
            Ok(Self(t))
        } else {
            Err(SimilarityError::ThresholdOutOfRange(t))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Correlation coefficient of two raw vectors with the `XI` guard.
///
/// Constant vectors have a zero numerator and therefore score 0.
pub fn correlation_values(h1: &[f64], h2: &[f64]) -> Result<f64, SimilarityError> {
    if h1.len() != h2.len() {
        return Err(SimilarityError::LengthMismatch(h1.len(), h2.len()));
    }
    if h1.len() < 2 {
        return Err(SimilarityError::TooShort(h1.len()));
    }
    let n = h1.len() as f64;
    let mu1 = h1.iter().sum::<f64>() / n;
    let mu2 = h2.iter().sum::<f64>() / n;
    let (mut cross, mut ss1, mut ss2) = (0.0, 0.0, 0.0);
    for (a, b) in h1.iter().zip(h2) {
        let (da, db) = (a - mu1, b - mu2);
        cross += da * db;
        ss1 += da * da;
        ss2 += db * db;
    }
    Ok(cross / (ss1.sqrt() * ss2.sqrt() + XI))
}

fn check_pair(h1: &HashVector, h2: &HashVector) -> Result<(), SimilarityError> {
    if h1.algorithm() != h2.algorithm() {
        return Err(SimilarityError::AlgorithmMismatch(h1.algorithm(), h2.algorithm()));
    }
    Ok(())
}

pub fn correlation(h1: &HashVector, h2: &HashVector) -> Result<SimilarityScore, SimilarityError> {
    check_pair(h1, h2)?;
    correlation_values(h1.values(), h2.values()).map(SimilarityScore)
}

/// True when S is strictly greater than T.
pub fn is_similar(h1: &HashVector, h2: &HashVector, threshold: DecisionThreshold) -> Result<bool, SimilarityError> {
    Ok(correlation(h1, h2)?.value() > threshold.value())
}

pub fn hamming(h1: &HashVector, h2: &HashVector) -> Result<usize, SimilarityError> {
    check_pair(h1, h2)?;
    if !h1.is_binary() || !h2.is_binary() {
        return Err(SimilarityError::NotBinary);
    }
    Ok(h1.values().iter().zip(h2.values()).filter(|(a, b)| a != b).count())
}
