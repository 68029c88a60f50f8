use super::BenchError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RocPoint {
    pub threshold: f64,
    pub true_positive_rate: f64,
    pub false_positive_rate: f64,
}

/// -1.00, -0.99, ..., 1.00.
pub fn default_thresholds() -> Vec<f64> {
    (-100..=100).map(|k| f64::from(k) / 100.0).collect()
}

/// Rates of `S > T` among same-content (`intra`) and distinct-content (`inter`) scores.
pub fn roc(intra: &[f64], inter: &[f64], thresholds: &[f64]) -> Result<Vec<RocPoint>, BenchError> {
    if intra.is_empty() || inter.is_empty() {
        return Err(BenchError::EmptyInput("roc needs intra and inter scores"));
    }
    if thresholds.is_empty()
        || thresholds
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
    {
        return Err(BenchError::Thresholds);
    }
    let rate = |scores: &[f64], t: f64| scores.iter().filter(|&&s| s > t).count() as f64 / scores.len() as f64;
    Ok(thresholds
        .iter()
        .map(|&t| RocPoint {
            threshold: t,
            true_positive_rate: rate(intra, t),
            false_positive_rate: rate(inter, t),
        })
        .collect())
}

/// Point with the largest TPR - FPR; the lowest such threshold wins ties.
pub fn estimate_threshold(points: &[RocPoint]) -> Option<RocPoint> {
    points
        .iter()
        .copied()
        .fold(None, |best: Option<RocPoint>, p| match best {
            Some(b) if b.true_positive_rate - b.false_positive_rate >= p.true_positive_rate - p.false_positive_rate => {
                Some(b)
            }
            _ => Some(p),
        })
}
