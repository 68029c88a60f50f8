//! Hermetic test corpus: gradient skies over a ridge line, checkerboards,
//! Gaussian blobs, smoothed value noise and ring bands, each overlaid with
//! low-amplitude shading and a handful of opaque shapes, drawn from a seeded
//! stream.

use crate::attacks::{derive_seed, SeededRng};
use crate::raster::{clamp_u8, RasterImage};

/// Edge length of generated images.
pub const SYNTHETIC_SIZE: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pattern {
    Gradient,
    Checker,
    Blobs,
    Noise,
    Rings,
}

const PATTERNS: [Pattern; 5] = [
    Pattern::Gradient,
    Pattern::Checker,
    Pattern::Blobs,
    Pattern::Noise,
    Pattern::Rings,
];

fn colour(rng: &mut SeededRng) -> [f64; 3] {
    [0; 3].map(|_| 30.0 + 195.0 * rng.next_f64())
}

fn lerp(a: [f64; 3], b: [f64; 3], t: f64) -> [f64; 3] {
    [0, 1, 2].map(|c| a[c] + (b[c] - a[c]) * t)
}

/// Lattice noise with smoothstep interpolation, summed over octaves, in roughly [0, 1].
struct ValueNoise {
    cells: usize,
    lattice: Vec<f64>,
}

impl ValueNoise {
    fn new(cells: usize, rng: &mut SeededRng) -> Self {
        let lattice = (0..(cells + 1) * (cells + 1)).map(|_| rng.next_f64()).collect();
        Self { cells, lattice }
    }

    fn sample(&self, u: f64, v: f64) -> f64 {
        let (gx, gy) = (u * self.cells as f64, v * self.cells as f64);
        let (x0, y0) = (
            (gx.floor() as usize).min(self.cells - 1),
            (gy.floor() as usize).min(self.cells - 1),
        );
        let smooth = |t: f64| t * t * (3.0 - 2.0 * t);
        let (tx, ty) = (smooth(gx - x0 as f64), smooth(gy - y0 as f64));
        let at = |x: usize, y: usize| self.lattice[y * (self.cells + 1) + x];
        let top = at(x0, y0) + (at(x0 + 1, y0) - at(x0, y0)) * tx;
        let bottom = at(x0, y0 + 1) + (at(x0 + 1, y0 + 1) - at(x0, y0 + 1)) * tx;
        top + (bottom - top) * ty
    }
}

/// Detail shared by every pattern: 1/f value-noise shading and a few
/// hard-edged, mostly opaque shapes.
struct Detail {
    octaves: Vec<(ValueNoise, f64)>,
    shapes: Vec<Shape>,
}

enum Shape {
    Disc {
        centre: (f64, f64),
        radius: f64,
        colour: [f64; 3],
        alpha: f64,
    },
    Rect {
        min: (f64, f64),
        max: (f64, f64),
        colour: [f64; 3],
        alpha: f64,
    },
}

impl Detail {
    fn new(rng: &mut SeededRng) -> Self {
        let octaves = [4, 8, 16, 32]
            .into_iter()
            .zip([1.0, 0.5, 0.25, 0.125])
            .map(|(cells, amp)| (ValueNoise::new(cells, rng), amp))
            .collect();
        let shapes = (0..4 + (rng.next_f64() * 4.0) as usize)
            .map(|_| {
                let colour = colour(rng);
                let alpha = 0.8 + 0.2 * rng.next_f64();
                let (x, y) = (0.1 + 0.8 * rng.next_f64(), 0.1 + 0.8 * rng.next_f64());
                if rng.next_f64() < 0.5 {
                    Shape::Disc {
                        centre: (x, y),
                        radius: 0.05 + 0.12 * rng.next_f64(),
                        colour,
                        alpha,
                    }
                } else {
                    let (w, h) = (0.08 + 0.2 * rng.next_f64(), 0.08 + 0.2 * rng.next_f64());
                    Shape::Rect {
                        min: (x - w / 2.0, y - h / 2.0),
                        max: (x + w / 2.0, y + h / 2.0),
                        colour,
                        alpha,
                    }
                }
            })
            .collect();
        Self { octaves, shapes }
    }

    fn apply(&self, u: f64, v: f64, mut px: [f64; 3]) -> [f64; 3] {
        for shape in &self.shapes {
            let (inside, colour, alpha) = match *shape {
                Shape::Disc {
                    centre,
                    radius,
                    colour,
                    alpha,
                } => (
                    (u - centre.0).powi(2) + (v - centre.1).powi(2) < radius * radius,
                    colour,
                    alpha,
                ),
                Shape::Rect {
                    min,
                    max,
                    colour,
                    alpha,
                } => (u >= min.0 && u < max.0 && v >= min.1 && v < max.1, colour, alpha),
            };
            if inside {
                px = lerp(px, colour, alpha);
            }
        }
        let total: f64 = self.octaves.iter().map(|(_, a)| a).sum();
        let n = self.octaves.iter().map(|(o, a)| a * o.sample(u, v)).sum::<f64>() / total;
        let shade = 24.0 * (n - 0.5);
        px.map(|c| (c + shade).clamp(20.0, 235.0))
    }
}

fn render(size: usize, detail: &Detail, mut f: impl FnMut(f64, f64) -> [f64; 3]) -> RasterImage {
    let mut px = Vec::with_capacity(size * size * 3);
    for y in 0..size {
        for x in 0..size {
            let (u, v) = ((x as f64 + 0.5) / size as f64, (y as f64 + 0.5) / size as f64);
            px.extend(detail.apply(u, v, f(u, v)).map(clamp_u8));
        }
    }
    RasterImage::new(size, size, 3, px).expect("square rgb")
}

fn generate(pattern: Pattern, rng: &mut SeededRng) -> RasterImage {
    let size = SYNTHETIC_SIZE;
    let detail = Detail::new(rng);
    match pattern {
        Pattern::Gradient => {
            let (c0, c1) = (colour(rng), colour(rng));
            let angle = std::f64::consts::TAU * rng.next_f64();
            let (dx, dy) = (angle.cos(), angle.sin());
            let ground = colour(rng);
            let level = 0.45 + 0.3 * rng.next_f64();
            let ridge = ValueNoise::new(6, rng);
            render(size, &detail, |u, v| {
                let t = (((u - 0.5) * dx + (v - 0.5) * dy) / std::f64::consts::SQRT_2 + 0.5).clamp(0.0, 1.0);
                let sky = lerp(c0, c1, t);
                if v > level + 0.25 * (ridge.sample(u, 0.5) - 0.5) {
                    lerp(ground, sky, 0.3 * (1.0 - v))
                } else {
                    sky
                }
            })
        }
        Pattern::Checker => {
            let (c0, c1) = (colour(rng), colour(rng));
            let checks = 2 + (rng.next_f64() * 3.0) as usize;
            let shade = colour(rng);
            render(size, &detail, |u, v| {
                let odd = ((u * checks as f64) as usize + (v * checks as f64) as usize) % 2 == 1;
                lerp(if odd { c1 } else { c0 }, shade, 0.4 * u * v)
            })
        }
        Pattern::Blobs => {
            let background = colour(rng);
            let blobs: Vec<_> = (0..3 + (rng.next_f64() * 3.0) as usize)
                .map(|_| {
                    let centre = (0.1 + 0.8 * rng.next_f64(), 0.1 + 0.8 * rng.next_f64());
                    let radius = 0.06 + 0.14 * rng.next_f64();
                    (centre, radius, colour(rng))
                })
                .collect();
            render(size, &detail, |u, v| {
                blobs.iter().fold(background, |acc, &((bx, by), r, c)| {
                    let d2 = (u - bx).powi(2) + (v - by).powi(2);
                    lerp(acc, c, (-d2 / (2.0 * r * r)).exp())
                })
            })
        }
        Pattern::Noise => {
            let octaves: Vec<_> = [3, 6, 12].map(|cells| ValueNoise::new(cells, rng)).into();
            let tint = [ValueNoise::new(2, rng), ValueNoise::new(2, rng)];
            let (c0, c1) = (colour(rng), colour(rng));
            render(size, &detail, |u, v| {
                let n = octaves
                    .iter()
                    .zip([0.6, 0.3, 0.1])
                    .map(|(o, w)| w * o.sample(u, v))
                    .sum::<f64>();
                let base = lerp(c0, c1, tint[0].sample(u, v));
                let shade = 0.4 + 1.2 * n;
                let warm = 40.0 * (tint[1].sample(u, v) - 0.5);
                [base[0] * shade + warm, base[1] * shade, base[2] * shade - warm]
            })
        }
        Pattern::Rings => {
            let (c0, c1) = (colour(rng), colour(rng));
            let (cx, cy) = (0.3 + 0.4 * rng.next_f64(), 0.3 + 0.4 * rng.next_f64());
            let freq = 3.0 + 5.0 * rng.next_f64();
            let tilt = colour(rng);
            render(size, &detail, |u, v| {
                let r = ((u - cx).powi(2) + (v - cy).powi(2)).sqrt();
                let band = (std::f64::consts::TAU * freq * r).cos() > 0.0;
                lerp(if band { c1 } else { c0 }, tilt, 0.5 * v)
            })
        }
    }
}

/// `count` RGB images with ids `synth-00`, `synth-01`, ...; patterns cycle and
/// each image draws from its own stream derived from `seed` and its index.
pub fn synthetic_corpus(count: usize, seed: u64) -> Vec<(String, RasterImage)> {
    (0..count)
        .map(|i| {
            let mut rng = SeededRng::new(derive_seed(&[
                b"synthetic",
                &seed.to_le_bytes(),
                &(i as u64).to_le_bytes(),
            ]));
            (
                format!("synth-{i:02}"),
                generate(PATTERNS[i % PATTERNS.len()], &mut rng),
            )
        })
        .collect()
}
