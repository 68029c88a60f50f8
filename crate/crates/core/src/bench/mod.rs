//! Robustness (intra) and discrimination (inter) tests over an image corpus,
//! threshold sweeps, and per-operation report tables.

mod manifest;
mod report;
mod roc;
mod synthetic;

pub use manifest::DatasetManifest;
pub use report::{emit_report, render_csv, render_markdown, render_roc_csv, ReportFormat};
pub use roc::{default_thresholds, estimate_threshold, roc, RocPoint};
pub use synthetic::{synthetic_corpus, SYNTHETIC_SIZE};

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::attacks::{apply_attack, derive_seed, AttackError, AttackKind, AttackSpec};
use crate::hashes::{Algorithm, HashVector};
use crate::raster::{load_image, RasterImage};
use crate::similarity::correlation;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("nothing to evaluate: {0}")]
    EmptyInput(&'static str),
    #[error(transparent)]
    Attack(#[from] AttackError),
    #[error("thresholds must be non-empty and strictly increasing")]
    Thresholds,
}

/// Loaded originals plus the entries that could not be read.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub images: Vec<(String, RasterImage)>,
    pub failures: Vec<(String, String)>,
}

impl Corpus {
    pub fn from_images(images: Vec<(String, RasterImage)>) -> Self {
        Self {
            images,
            failures: Vec::new(),
        }
    }

    /// Loads every manifest entry; unreadable files are recorded, not fatal.
    pub fn from_manifest(manifest: &DatasetManifest) -> Self {
        let mut corpus = Corpus::default();
        for (id, path) in &manifest.entries {
            match load_image(manifest.resolve(path)) {
                Ok(img) => corpus.images.push((id.clone(), img)),
                Err(e) => corpus.failures.push((id.clone(), e.to_string())),
            }
        }
        corpus
    }

    pub fn synthetic(count: usize, seed: u64) -> Self {
        Self::from_images(synthetic_corpus(count, seed))
    }
}

/// One original-vs-attacked comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub image: String,
    pub attack: String,
    pub operation: AttackKind,
    pub algorithm: Algorithm,
    pub score: f64,
}

/// Per-(operation, algorithm) summary of the scores.
#[derive(Clone, Debug, PartialEq)]
pub struct Aggregate {
    pub operation: AttackKind,
    pub algorithm: Algorithm,
    pub mean: f64,
    pub min: f64,
    pub std: f64,
    pub n: usize,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    /// Sorted by operation name, then algorithm name.
    pub aggregates: Vec<Aggregate>,
    pub seed: u64,
    /// Labels of the grid the report was produced from.
    pub grid: Vec<String>,
    pub failures: Vec<(String, String)>,
}

impl BenchReport {
    pub fn aggregate(&self, operation: AttackKind, algorithm: Algorithm) -> Option<&Aggregate> {
        self.aggregates
            .iter()
            .find(|a| a.operation == operation && a.algorithm == algorithm)
    }

    /// Scores of one algorithm, optionally skipping some operation kinds.
    pub fn scores(&self, algorithm: Algorithm, exclude: &[AttackKind]) -> Vec<f64> {
        self.records
            .iter()
            .filter(|r| r.algorithm == algorithm && !exclude.contains(&r.operation))
            .map(|r| r.score)
            .collect()
    }
}

/// Mean, minimum and population standard deviation per group, in canonical order.
pub fn aggregate(records: &[BenchRecord]) -> Vec<Aggregate> {
    let mut groups: BTreeMap<(&str, &str), (AttackKind, Algorithm, Vec<f64>)> = BTreeMap::new();
    for r in records {
        groups
            .entry((r.operation.name(), r.algorithm.name()))
            .or_insert_with(|| (r.operation, r.algorithm, Vec::new()))
            .2
            .push(r.score);
    }
    groups
        .into_values()
        .map(|(operation, algorithm, scores)| {
            let n = scores.len();
            let mean = scores.iter().sum::<f64>() / n as f64;
            let var = scores.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n as f64;
            Aggregate {
                operation,
                algorithm,
                mean,
                min: scores.iter().copied().fold(f64::INFINITY, f64::min),
                std: var.sqrt(),
                n,
            }
        })
        .collect()
}

fn hash_all(img: &RasterImage, algorithms: &[Algorithm]) -> Vec<HashVector> {
    algorithms.iter().map(|a| a.hash(img)).collect()
}

/// Seed for one (image, attack) pair, independent of corpus order and size.
pub fn record_seed(run_seed: u64, image_id: &str, attack_label: &str) -> u64 {
    derive_seed(&[&run_seed.to_le_bytes(), image_id.as_bytes(), attack_label.as_bytes()])
}

/// Compares every original with each of its attacked versions under every algorithm.
pub fn intra_test(
    corpus: &Corpus,
    algorithms: &[Algorithm],
    grid: &[AttackSpec],
    seed: u64,
) -> Result<BenchReport, BenchError> {
    if corpus.images.is_empty() {
        return Err(BenchError::EmptyInput("no readable images"));
    }
    if algorithms.is_empty() {
        return Err(BenchError::EmptyInput("no algorithms"));
    }
    if grid.is_empty() {
        return Err(BenchError::EmptyInput("empty attack grid"));
    }
    for spec in grid {
        spec.validate()?;
    }
    let labels: Vec<String> = grid.iter().map(AttackSpec::label).collect();

    let originals: Vec<Vec<HashVector>> = corpus
        .images
        .par_iter()
        .map(|(_, img)| hash_all(img, algorithms))
        .collect();

    let jobs: Vec<(usize, usize)> = (0..corpus.images.len())
        .flat_map(|i| (0..grid.len()).map(move |g| (i, g)))
        .collect();
    let records: Vec<BenchRecord> = jobs
        .par_iter()
        .map(|&(i, g)| -> Result<Vec<BenchRecord>, BenchError> {
            let (id, img) = &corpus.images[i];
            let attacked = apply_attack(img, &grid[g], record_seed(seed, id, &labels[g]))?;
            let hashes = hash_all(&attacked, algorithms);
            Ok(algorithms
                .iter()
                .zip(originals[i].iter().zip(&hashes))
                .map(|(&algorithm, (orig, att))| BenchRecord {
                    image: id.clone(),
                    attack: labels[g].clone(),
                    operation: grid[g].kind(),
                    algorithm,
                    score: correlation(orig, att).expect("same algorithm and length").value(),
                })
                .collect())
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();

    Ok(BenchReport {
        aggregates: aggregate(&records),
        records,
        seed,
        grid: labels,
        failures: corpus.failures.clone(),
    })
}

/// Score of one pair of distinct originals.
#[derive(Clone, Debug, PartialEq)]
pub struct InterRecord {
    pub first: String,
    pub second: String,
    pub algorithm: Algorithm,
    pub score: f64,
}

#[derive(Clone, Debug, Default)]
pub struct InterReport {
    pub records: Vec<InterRecord>,
}

impl InterReport {
    pub fn scores(&self, algorithm: Algorithm) -> Vec<f64> {
        self.records
            .iter()
            .filter(|r| r.algorithm == algorithm)
            .map(|r| r.score)
            .collect()
    }
}

/// Scores every unordered pair of distinct corpus entries.
pub fn inter_test(corpus: &Corpus, algorithms: &[Algorithm]) -> Result<InterReport, BenchError> {
    if corpus.images.len() < 2 {
        return Err(BenchError::EmptyInput("inter test needs at least two images"));
    }
    if algorithms.is_empty() {
        return Err(BenchError::EmptyInput("no algorithms"));
    }
    let hashes: Vec<Vec<HashVector>> = corpus
        .images
        .par_iter()
        .map(|(_, img)| hash_all(img, algorithms))
        .collect();
    let n = corpus.images.len();
    let mut records = Vec::with_capacity(n * (n - 1) / 2 * algorithms.len());
    for i in 0..n {
        for j in i + 1..n {
            for (k, &algorithm) in algorithms.iter().enumerate() {
                records.push(InterRecord {
                    first: corpus.images[i].0.clone(),
                    second: corpus.images[j].0.clone(),
                    algorithm,
                    score: correlation(&hashes[i][k], &hashes[j][k])
                        .expect("same algorithm and length")
                        .value(),
                });
            }
        }
    }
    Ok(InterReport { records })
}
