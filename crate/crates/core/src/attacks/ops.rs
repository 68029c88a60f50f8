use crate::raster::{clamp_u8, convolve3x3, dct2, idct2, resize_bilinear, FloatPlane, RasterImage};

use super::rng::{derive_seed, SeededRng};
use super::spec::{AttackSpec, Corner};
use super::AttackError;

/// Side length of the built-in checkerboard watermark.
pub const LOGO_SIZE: usize = 32;
const LOGO_CHECK: usize = 8;

/// Baseline JPEG luminance quantization table, row-major by vertical frequency.
#[rustfmt::skip]
pub const JPEG_LUMA_TABLE: [u16; 64] = [
    16, 11, 10, 16, 24, 40, 51, 61,
    12, 12, 14, 19, 26, 58, 60, 55,
    14, 13, 16, 24, 40, 57, 69, 56,
    14, 17, 22, 29, 51, 87, 80, 62,
    18, 22, 37, 56, 68, 109, 103, 77,
    24, 35, 55, 64, 81, 104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101,
    72, 92, 95, 98, 112, 100, 103, 99,
];

/// Applies one operation. Only the noise attacks read `seed`; their stream is
/// derived from the seed, the image dimensions and the operation label.
pub fn apply_attack(img: &RasterImage, spec: &AttackSpec, seed: u64) -> Result<RasterImage, AttackError> {
    spec.validate()?;
    let out = match *spec {
        AttackSpec::Brightness { offset } => map_samples(img, |p| p + offset),
        AttackSpec::Contrast { gain } => map_samples(img, |p| (p - 128.0) * gain + 128.0),
        AttackSpec::Gamma { gamma } => map_samples(img, |p| 255.0 * (p / 255.0).powf(gamma)),
        AttackSpec::Gaussian3x3 { sigma } => convolve3x3(img, &gaussian_kernel(sigma)),
        AttackSpec::SaltPepper { density } => {
            let plan = salt_pepper_plan(img.width(), img.height(), density, stream_seed(img, spec, seed));
            let ch = img.channels();
            let mut px = img.pixels().to_vec();
            for (i, v) in plan.iter().enumerate() {
                if let Some(v) = v {
                    px[i * ch..(i + 1) * ch].fill(*v);
                }
            }
            rebuild(img, px)
        }
        AttackSpec::Multiplicative { variance } => {
            let noise = multiplicative_noise(img.pixels().len(), variance, stream_seed(img, spec, seed));
            let px = img
                .pixels()
                .iter()
                .zip(&noise)
                .map(|(&p, n)| clamp_u8(f64::from(p) * (1.0 + n)))
                .collect();
            rebuild(img, px)
        }
        AttackSpec::Jpeg { quality } => jpeg_round_trip(img, quality),
        AttackSpec::Rotation { degrees } => rotate(img, degrees),
        AttackSpec::Scaling { ratio } => {
            let w = ((img.width() as f64 * ratio).round() as usize).max(1);
            let h = ((img.height() as f64 * ratio).round() as usize).max(1);
            resize_bilinear(img, w, h)
        }
        AttackSpec::Watermark { opacity, corner } => watermark(img, opacity, corner),
    };
    Ok(out)
}

fn stream_seed(img: &RasterImage, spec: &AttackSpec, seed: u64) -> u64 {
    let dims = [img.width() as u64, img.height() as u64, img.channels() as u64]
        .map(u64::to_le_bytes)
        .concat();
    derive_seed(&[&seed.to_le_bytes(), &dims, spec.label().as_bytes()])
}

fn rebuild(img: &RasterImage, px: Vec<u8>) -> RasterImage {
    RasterImage::new(img.width(), img.height(), img.channels(), px).expect("same shape")
}

/// Point operation through a 256-entry lookup table.
fn map_samples(img: &RasterImage, f: impl Fn(f64) -> f64) -> RasterImage {
    let lut: Vec<u8> = (0..=255u8).map(|p| clamp_u8(f(f64::from(p)))).collect();
    rebuild(img, img.pixels().iter().map(|&p| lut[p as usize]).collect())
}

/// Normalized 3x3 Gaussian, row-major.
pub fn gaussian_kernel(sigma: f64) -> [f64; 9] {
    let mut k = [0.0; 9];
    for (i, w) in k.iter_mut().enumerate() {
        let (x, y) = ((i % 3) as f64 - 1.0, (i / 3) as f64 - 1.0);
        *w = (-(x * x + y * y) / (2.0 * sigma * sigma)).exp();
    }
    let sum: f64 = k.iter().sum();
    k.map(|w| w / sum)
}

/// Per-pixel replacement values: `Some(0 | 255)` where the pixel is hit.
///
/// Each pixel draws one uniform for the hit test and, when hit, a second for
/// the colour.
pub fn salt_pepper_plan(width: usize, height: usize, density: f64, seed: u64) -> Vec<Option<u8>> {
    let mut rng = SeededRng::new(seed);
    (0..width * height)
        .map(|_| {
            if rng.next_f64() < density {
                Some(if rng.next_f64() < 0.5 { 0 } else { 255 })
            } else {
                None
            }
        })
        .collect()
}

/// `count` draws of `n ~ N(0, variance)`.
pub fn multiplicative_noise(count: usize, variance: f64, seed: u64) -> Vec<f64> {
    let mut rng = SeededRng::new(seed);
    let sd = variance.sqrt();
    (0..count).map(|_| sd * rng.next_normal()).collect()
}

/// Luminance table at `quality` using the libjpeg scaling convention.
pub fn jpeg_quant_table(quality: u8) -> [f64; 64] {
    let q = u32::from(quality.clamp(1, 100));
    let scale = if q < 50 { 5000 / q } else { 200 - 2 * q };
    JPEG_LUMA_TABLE.map(|base| f64::from(((u32::from(base) * scale + 50) / 100).clamp(1, 255)))
}

/// Block-DCT quantization round trip of every channel (no entropy coding).
fn jpeg_round_trip(img: &RasterImage, quality: u8) -> RasterImage {
    let table = jpeg_quant_table(quality);
    let (w, h) = (img.width(), img.height());
    let (pw, ph) = (w.div_ceil(8) * 8, h.div_ceil(8) * 8);
    let mut planes = Vec::with_capacity(img.channels());
    for c in 0..img.channels() {
        let mut out = vec![0u8; w * h];
        let mut block = FloatPlane::zeros(8, 8);
        for by in (0..ph).step_by(8) {
            for bx in (0..pw).step_by(8) {
                for y in 0..8 {
                    for x in 0..8 {
                        let p = img.get((bx + x).min(w - 1), (by + y).min(h - 1), c);
                        block.set(x, y, f64::from(p) - 128.0);
                    }
                }
                let mut coeffs = dct2(&block);
                for (v, q) in coeffs.values_mut().iter_mut().zip(&table) {
                    *v = (*v / q).round() * q;
                }
                let rec = idct2(&coeffs);
                for y in 0..8 {
                    for x in 0..8 {
                        if bx + x < w && by + y < h {
                            out[(by + y) * w + bx + x] = clamp_u8(rec.get(x, y) + 128.0);
                        }
                    }
                }
            }
        }
        planes.push(RasterImage::new(w, h, 1, out).expect("plane shape"));
    }
    RasterImage::from_channels(&planes).expect("channel count preserved")
}

/// (cos, sin) with exact values at quarter turns.
fn cos_sin(degrees: f64) -> (f64, f64) {
    let turns = degrees / 90.0;
    if turns.fract() == 0.0 {
        return match (turns as i64).rem_euclid(4) {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        };
    }
    let r = degrees.to_radians();
    (r.cos(), r.sin())
}

/// Rotation about the image centre, same canvas, bilinear, black outside the source.
fn rotate(img: &RasterImage, degrees: f64) -> RasterImage {
    let (w, h, ch) = (img.width(), img.height(), img.channels());
    let (cos, sin) = cos_sin(degrees);
    let (cx, cy) = ((w as f64 - 1.0) / 2.0, (h as f64 - 1.0) / 2.0);
    let mut px = Vec::with_capacity(w * h * ch);
    for y in 0..h {
        let dy = y as f64 - cy;
        for x in 0..w {
            let dx = x as f64 - cx;
            // inverse map of a counter-clockwise turn in y-down coordinates
            let sx = cx + cos * dx - sin * dy;
            let sy = cy + sin * dx + cos * dy;
            if sx < -0.5 || sy < -0.5 || sx > w as f64 - 0.5 || sy > h as f64 - 0.5 {
                px.extend(std::iter::repeat_n(0, ch));
                continue;
            }
            let sx = sx.clamp(0.0, (w - 1) as f64);
            let sy = sy.clamp(0.0, (h - 1) as f64);
            let (x0, y0) = (sx.floor() as usize, sy.floor() as usize);
            let (x1, y1) = ((x0 + 1).min(w - 1), (y0 + 1).min(h - 1));
            let (fx, fy) = (sx - x0 as f64, sy - y0 as f64);
            for c in 0..ch {
                let p = |xx, yy| f64::from(img.get(xx, yy, c));
                let top = p(x0, y0) * (1.0 - fx) + p(x1, y0) * fx;
                let bottom = p(x0, y1) * (1.0 - fx) + p(x1, y1) * fx;
                px.push(clamp_u8(top * (1.0 - fy) + bottom * fy));
            }
        }
    }
    rebuild(img, px)
}

/// Checkerboard mark, white in the top-left check.
pub fn watermark_logo(x: usize, y: usize) -> u8 {
    if (x / LOGO_CHECK + y / LOGO_CHECK).is_multiple_of(2) {
        255
    } else {
        0
    }
}

fn watermark(img: &RasterImage, opacity: f64, corner: Corner) -> RasterImage {
    let (w, h, ch) = (img.width(), img.height(), img.channels());
    let (x0, y0) = match corner {
        Corner::TopLeft => (0, 0),
        Corner::BottomRight => (w.saturating_sub(LOGO_SIZE), h.saturating_sub(LOGO_SIZE)),
    };
    let mut px = img.pixels().to_vec();
    for ly in 0..LOGO_SIZE.min(h - y0) {
        for lx in 0..LOGO_SIZE.min(w - x0) {
            let mark = f64::from(watermark_logo(lx, ly));
            let base = ((y0 + ly) * w + x0 + lx) * ch;
            for p in &mut px[base..base + ch] {
                *p = clamp_u8((1.0 - opacity) * f64::from(*p) + opacity * mark);
            }
        }
    }
    rebuild(img, px)
}

/// Peak signal-to-noise ratio in dB for equally shaped images; infinite when identical.
pub fn psnr(a: &RasterImage, b: &RasterImage) -> f64 {
    assert_eq!(
        (a.width(), a.height(), a.channels()),
        (b.width(), b.height(), b.channels()),
        "psnr needs equally shaped images"
    );
    let mse = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| (f64::from(x) - f64::from(y)).powi(2))
        .sum::<f64>()
        / a.pixels().len() as f64;
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (255.0 * 255.0 / mse).log10()
    }
}
