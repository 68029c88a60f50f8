use crate::raster::{dct2, resize_bilinear, to_grayscale, FloatPlane, RasterImage};

use super::{snap_residue, Algorithm, HashVector};

const WORK_SIZE: usize = 256;
const BLOCK_SIZE: usize = 16;
const BLOCKS_PER_SIDE: usize = WORK_SIZE / BLOCK_SIZE;
/// Number of 16x16 blocks in the working image.
pub const BLOCK_COUNT: usize = BLOCKS_PER_SIDE * BLOCKS_PER_SIDE;
/// Number of most-structured blocks kept in the hash.
pub const BLOCK_SELECTED: usize = 16;
/// First four AC positions of the zigzag scan, as (column u, row v).
const ZIGZAG_AC: [(usize, usize); 4] = [(1, 0), (0, 1), (0, 2), (1, 1)];

fn sobel_magnitude(plane: &FloatPlane) -> Vec<f64> {
    let (w, h) = (plane.width(), plane.height());
    let at = |x: isize, y: isize| plane.get(x.clamp(0, w as isize - 1) as usize, y.clamp(0, h as isize - 1) as usize);
    let mut mag = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            let gx = at(x + 1, y - 1) + 2.0 * at(x + 1, y) + at(x + 1, y + 1)
                - at(x - 1, y - 1)
                - 2.0 * at(x - 1, y)
                - at(x - 1, y + 1);
            let gy = at(x - 1, y + 1) + 2.0 * at(x, y + 1) + at(x + 1, y + 1)
                - at(x - 1, y - 1)
                - 2.0 * at(x, y - 1)
                - at(x + 1, y - 1);
            mag.push((gx * gx + gy * gy).sqrt());
        }
    }
    mag
}

/// Edge-pixel count per block, row-major block order.
fn edge_counts(plane: &FloatPlane) -> Vec<usize> {
    let mag = sobel_magnitude(plane);
    let n = mag.len() as f64;
    let mean = mag.iter().sum::<f64>() / n;
    let std = (mag.iter().map(|m| (m - mean) * (m - mean)).sum::<f64>() / n).sqrt();
    let threshold = mean + std;
    let mut counts = vec![0; BLOCK_COUNT];
    for (i, &m) in mag.iter().enumerate() {
        if m > threshold {
            let (x, y) = (i % WORK_SIZE, i / WORK_SIZE);
            counts[(y / BLOCK_SIZE) * BLOCKS_PER_SIDE + x / BLOCK_SIZE] += 1;
        }
    }
    counts
}

/// Indices of the blocks with the most edge pixels, ties to the lower index.
pub(crate) fn select_blocks(counts: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));
    order.truncate(BLOCK_SELECTED);
    order
}

/// Salient-structure hash: the 16 blocks richest in Sobel edges, each
/// contributing its normalized position and four low-order AC coefficients.
pub fn block_structure_hash(img: &RasterImage) -> HashVector {
    let plane = resize_bilinear(&to_grayscale(img), WORK_SIZE, WORK_SIZE).to_plane();
    let selected = select_blocks(&edge_counts(&plane));
    let mut values = Vec::with_capacity(BLOCK_SELECTED * 5);
    for index in selected {
        let (bx, by) = (index % BLOCKS_PER_SIDE, index / BLOCKS_PER_SIDE);
        let block = plane.crop(bx * BLOCK_SIZE, by * BLOCK_SIZE, BLOCK_SIZE, BLOCK_SIZE);
        let coeffs = dct2(&block);
        values.push(index as f64 / 255.0);
        values.extend(ZIGZAG_AC.iter().map(|&(u, v)| snap_residue(coeffs.get(u, v))));
    }
    HashVector::new(Algorithm::Block, values).expect("80 finite values")
}
