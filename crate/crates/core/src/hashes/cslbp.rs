use crate::raster::{resize_bilinear, to_grayscale, RasterImage};

use super::{Algorithm, HashVector};

const WORK_SIZE: usize = 64;
const BLOCK_SIZE: usize = 16;
const BLOCKS_PER_SIDE: usize = WORK_SIZE / BLOCK_SIZE;
const BINS: usize = 16;
/// Minimum grey-level difference for a centre-symmetric pair to set its bit.
pub const CSLBP_THRESHOLD: i16 = 3;

/// 4-bit CS-LBP code of the pixel at (x, y); the caller keeps (x, y) off the border.
///
/// Bit j compares neighbour j with neighbour j + 4, neighbours counted
/// anticlockwise from east: E/W, NE/SW, N/S, NW/SE.
pub fn cslbp_code(img: &RasterImage, x: usize, y: usize, threshold: i16) -> u8 {
    let g = |dx: isize, dy: isize| i16::from(img.get((x as isize + dx) as usize, (y as isize + dy) as usize, 0));
    let pairs = [
        (g(1, 0), g(-1, 0)),
        (g(1, -1), g(-1, 1)),
        (g(0, -1), g(0, 1)),
        (g(-1, -1), g(1, 1)),
    ];
    pairs
        .iter()
        .enumerate()
        .fold(0, |code, (j, &(a, b))| code | (u8::from(a - b > threshold) << j))
}

/// Texture hash: 16-bin CS-LBP histograms of a 4x4 block grid over a 64x64 luminance image.
pub fn cslbp_hash(img: &RasterImage) -> HashVector {
    let gray = resize_bilinear(&to_grayscale(img), WORK_SIZE, WORK_SIZE);
    let mut hist = vec![[0usize; BINS]; BLOCKS_PER_SIDE * BLOCKS_PER_SIDE];
    for y in 1..WORK_SIZE - 1 {
        for x in 1..WORK_SIZE - 1 {
            let code = cslbp_code(&gray, x, y, CSLBP_THRESHOLD);
            hist[(y / BLOCK_SIZE) * BLOCKS_PER_SIDE + x / BLOCK_SIZE][code as usize] += 1;
        }
    }
    let values = hist
        .iter()
        .flat_map(|h| {
            let total: usize = h.iter().sum();
            h.iter().map(move |&c| c as f64 / total as f64)
        })
        .collect();
    HashVector::new(Algorithm::Cslbp, values).expect("256 finite values")
}
