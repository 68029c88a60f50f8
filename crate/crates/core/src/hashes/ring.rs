use std::sync::OnceLock;

use crate::raster::{resize_bilinear, rgb_to_lab, RasterImage};

use super::{Algorithm, HashVector};

const WORK_SIZE: usize = 512;
const RING_COUNT: usize = 32;

/// Equal-area concentric rings over the disc inscribed in the working image.
#[derive(Clone, Debug, PartialEq)]
pub struct RingPartition {
    ring_count: usize,
    max_radius: f64,
}

impl Default for RingPartition {
    fn default() -> Self {
        Self::new(RING_COUNT, WORK_SIZE as f64 / 2.0)
    }
}

impl RingPartition {
    pub fn new(ring_count: usize, max_radius: f64) -> Self {
        assert!(ring_count >= 1 && max_radius > 0.0);
        Self { ring_count, max_radius }
    }

    pub fn ring_count(&self) -> usize {
        self.ring_count
    }

    /// Boundaries `r_0 = 0 < r_1 < ... < r_R = max_radius`, `r_k = max_radius * sqrt(k / R)`.
    pub fn radii(&self) -> Vec<f64> {
        (0..=self.ring_count)
            .map(|k| self.max_radius * (k as f64 / self.ring_count as f64).sqrt())
            .collect()
    }

    /// Ring holding a point at squared distance `dist_sq` from the centre, or
    /// `None` outside the disc. Ring k covers `r_k <= d < r_{k+1}`.
    pub fn ring_of(&self, dist_sq: f64) -> Option<usize> {
        let r2 = self.max_radius * self.max_radius;
        if dist_sq >= r2 {
            return None;
        }
        Some(((self.ring_count as f64 * dist_sq / r2).floor() as usize).min(self.ring_count - 1))
    }
}

#[derive(Clone, Copy, Default)]
struct RingStats {
    n: f64,
    l: f64,
    l_dev_sq: f64,
    a: f64,
    b: f64,
}

/// Ring index of every working-grid pixel, row-major; `u8::MAX` outside the disc.
fn ring_map() -> &'static [u8] {
    static MAP: OnceLock<Vec<u8>> = OnceLock::new();
    MAP.get_or_init(|| {
        let partition = RingPartition::default();
        let centre = (WORK_SIZE as f64 - 1.0) / 2.0;
        let mut map = Vec::with_capacity(WORK_SIZE * WORK_SIZE);
        for y in 0..WORK_SIZE {
            let dy = y as f64 - centre;
            for x in 0..WORK_SIZE {
                let dx = x as f64 - centre;
                map.push(partition.ring_of(dx * dx + dy * dy).map_or(u8::MAX, |k| k as u8));
            }
        }
        map
    })
}

/// Rotation-invariant colour hash: per-ring Lab statistics, each ring scored
/// by its Euclidean distance to the mean ring feature vector.
pub fn ring_hash(img: &RasterImage) -> HashVector {
    let rgb = resize_bilinear(&img.to_rgb(), WORK_SIZE, WORK_SIZE);
    let lab = rgb_to_lab(&rgb).expect("rgb input");
    let map = ring_map();
    let (l, a, b) = (lab.l.values(), lab.a.values(), lab.b.values());

    let mut stats = vec![RingStats::default(); RING_COUNT];
    for (i, &k) in map.iter().enumerate() {
        if k == u8::MAX {
            continue;
        }
        let s = &mut stats[k as usize];
        s.n += 1.0;
        s.l += l[i];
        s.a += a[i];
        s.b += b[i];
    }
    // second pass so a flat ring has exactly zero spread
    for (i, &k) in map.iter().enumerate() {
        if k == u8::MAX {
            continue;
        }
        let s = &mut stats[k as usize];
        let d = l[i] - s.l / s.n;
        s.l_dev_sq += d * d;
    }

    let features: Vec<[f64; 4]> = stats
        .iter()
        .map(|s| [s.l / s.n, (s.l_dev_sq / s.n).sqrt(), s.a / s.n, s.b / s.n])
        .collect();
    let mut centroid = [0.0; 4];
    for f in &features {
        for (c, v) in centroid.iter_mut().zip(f) {
            *c += v / features.len() as f64;
        }
    }
    let values = features
        .iter()
        .map(|f| {
            f.iter()
                .zip(&centroid)
                .map(|(v, c)| (v - c) * (v - c))
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    HashVector::new(Algorithm::Ring, values).expect("32 finite values")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radii_are_equal_area() {
        let p = RingPartition::default();
        let r = p.radii();
        assert_eq!(r.len(), 33);
        assert_eq!(r[0], 0.0);
        assert_eq!(r[32], 256.0);
        for k in 0..32 {
            assert!(r[k + 1] > r[k]);
            let area = r[k + 1] * r[k + 1] - r[k] * r[k];
            assert!((area - 256.0 * 256.0 / 32.0).abs() < 1e-6);
        }
    }

    #[test]
    fn ring_membership_boundaries() {
        let p = RingPartition::default();
        assert_eq!(p.ring_of(0.0), Some(0));
        assert_eq!(p.ring_of(2048.0 - 1e-9), Some(0));
        assert_eq!(p.ring_of(2048.0), Some(1));
        assert_eq!(p.ring_of(65535.9), Some(31));
        assert_eq!(p.ring_of(65536.0), None);
    }

    #[test]
    fn every_ring_is_populated() {
        let p = RingPartition::default();
        let mut counts = [0usize; 32];
        for y in 0..512 {
            for x in 0..512 {
                let (dx, dy) = (x as f64 - 255.5, y as f64 - 255.5);
                if let Some(k) = p.ring_of(dx * dx + dy * dy) {
                    counts[k] += 1;
                }
            }
        }
        assert!(counts.iter().all(|&c| c > 6000), "{counts:?}");
    }

    #[test]
    fn constant_colour_gives_zero_hash() {
        let img = RasterImage::from_fn(30, 20, 3, |_, _, c| [200, 40, 90][c]).unwrap();
        let h = ring_hash(&img);
        assert!(h.values().iter().all(|&v| v.abs() < 1e-9), "{h}");
    }

    #[test]
    fn quarter_turns_preserve_hash() {
        let img = RasterImage::from_fn(48, 48, 3, |x, y, c| ((x * 5 + y * y + c * 70) % 256) as u8).unwrap();
        let base = ring_hash(&img);
        let mut rotated = img.clone();
        for _ in 0..3 {
            rotated = rotated.rotate90();
            let h = ring_hash(&rotated);
            for (a, b) in base.values().iter().zip(h.values()) {
                assert!((a - b).abs() <= 1e-9);
            }
        }
    }
}
