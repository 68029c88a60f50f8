use crate::raster::{dct2, resize_bilinear, to_grayscale, RasterImage};

use super::{snap_residue, Algorithm, HashVector};

const WORK_SIZE: usize = 32;
const LOW_FREQ: usize = 8;

/// DCT hash: luminance at 32x32, the 8x8 low-frequency block minus DC,
/// thresholded at its median.
pub fn phash(img: &RasterImage) -> HashVector {
    let small = resize_bilinear(&to_grayscale(img), WORK_SIZE, WORK_SIZE);
    let coeffs = dct2(&small.to_plane());
    let low: Vec<f64> = (0..LOW_FREQ)
        .flat_map(|v| (0..LOW_FREQ).map(move |u| (u, v)))
        .skip(1)
        .map(|(u, v)| snap_residue(coeffs.get(u, v)))
        .collect();
    let median = median(&low);
    let bits = low.iter().map(|&c| if c > median { 1.0 } else { 0.0 }).collect();
    HashVector::new(Algorithm::Phash, bits).expect("63 finite values")
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}
