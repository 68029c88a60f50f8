use std::sync::OnceLock;

use super::{FloatPlane, LabImage, RasterError, RasterImage};

/// BT.601 luma, `round(0.299 R + 0.587 G + 0.114 B)` evaluated in exact integer arithmetic.
pub fn to_grayscale(img: &RasterImage) -> RasterImage {
    if !img.is_rgb() {
        return img.clone();
    }
    let pixels = img
        .pixels()
        .chunks_exact(3)
        .map(|p| {
            let weighted = 299 * u32::from(p[0]) + 587 * u32::from(p[1]) + 114 * u32::from(p[2]);
            ((weighted + 500) / 1000) as u8
        })
        .collect();
    RasterImage::new(img.width(), img.height(), 1, pixels).expect("same dimensions")
}

// D65 reference white, Y normalized to 1.
const WHITE_X: f64 = 0.950_47;
const WHITE_Y: f64 = 1.0;
const WHITE_Z: f64 = 1.088_83;

fn srgb_linear_table() -> &'static [f64; 256] {
    static TABLE: OnceLock<[f64; 256]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; 256];
        for (i, v) in t.iter_mut().enumerate() {
            let c = i as f64 / 255.0;
            *v = if c <= 0.040_45 {
                c / 12.92
            } else {
                ((c + 0.055) / 1.055).powf(2.4)
            };
        }
        t
    })
}

fn lab_f(t: f64) -> f64 {
    const DELTA: f64 = 6.0 / 29.0;
    if t > DELTA * DELTA * DELTA {
        t.cbrt()
    } else {
        t / (3.0 * DELTA * DELTA) + 4.0 / 29.0
    }
}

/// Converts one 8-bit sRGB triple to (L*, a*, b*) under D65.
pub fn srgb_pixel_to_lab(r: u8, g: u8, b: u8) -> (f64, f64, f64) {
    let lin = srgb_linear_table();
    let (r, g, b) = (lin[r as usize], lin[g as usize], lin[b as usize]);
    let x = 0.412_456_4 * r + 0.357_576_1 * g + 0.180_437_5 * b;
    let y = 0.212_672_9 * r + 0.715_152_2 * g + 0.072_175_0 * b;
    let z = 0.019_333_9 * r + 0.119_192_0 * g + 0.950_304_1 * b;
    let fx = lab_f(x / WHITE_X);
    let fy = lab_f(y / WHITE_Y);
    let fz = lab_f(z / WHITE_Z);
    let l = (116.0 * fy - 16.0).clamp(0.0, 100.0);
    (l, 500.0 * (fx - fy), 200.0 * (fy - fz))
}

/// sRGB to CIE L*a*b*. Grayscale input is rejected; replicate channels with
/// [`RasterImage::to_rgb`] first.
pub fn rgb_to_lab(img: &RasterImage) -> Result<LabImage, RasterError> {
    if !img.is_rgb() {
        return Err(RasterError::NotRgb);
    }
    let n = img.width() * img.height();
    let (mut l, mut a, mut b) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for p in img.pixels().chunks_exact(3) {
        let (pl, pa, pb) = srgb_pixel_to_lab(p[0], p[1], p[2]);
        l.push(pl);
        a.push(pa);
        b.push(pb);
    }
    let (w, h) = (img.width(), img.height());
    Ok(LabImage {
        l: FloatPlane::new(w, h, l)?,
        a: FloatPlane::new(w, h, a)?,
        b: FloatPlane::new(w, h, b)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Straight-line evaluation of the sRGB -> XYZ -> Lab chain with no lookup tables.
    fn reference_lab(r: u8, g: u8, b: u8) -> (f64, f64, f64) {
        fn lin(v: u8) -> f64 {
            let c = f64::from(v) / 255.0;
            if c <= 0.04045 {
                c / 12.92
            } else {
                ((c + 0.055) / 1.055).powf(2.4)
            }
        }
        fn f(t: f64) -> f64 {
            if t > 216.0 / 24389.0 {
                t.powf(1.0 / 3.0)
            } else {
                (24389.0 / 27.0 * t + 16.0) / 116.0
            }
        }
        let (r, g, b) = (lin(r), lin(g), lin(b));
        let x = (0.4124564 * r + 0.3575761 * g + 0.1804375 * b) / 0.95047;
        let y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
        let z = (0.0193339 * r + 0.1191920 * g + 0.9503041 * b) / 1.08883;
        (116.0 * f(y) - 16.0, 500.0 * (f(x) - f(y)), 200.0 * (f(y) - f(z)))
    }

    #[test]
    fn luma_examples() {
        let img = RasterImage::new(3, 1, 3, vec![255, 255, 255, 255, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(to_grayscale(&img).pixels(), &[255, 76, 0]);
    }

    #[test]
    fn grayscale_input_is_unchanged() {
        let img = RasterImage::new(2, 1, 1, vec![3, 200]).unwrap();
        assert_eq!(to_grayscale(&img), img);
    }

    #[test]
    fn lab_white_black_red() {
        let (l, a, b) = srgb_pixel_to_lab(255, 255, 255);
        assert!((l - 100.0).abs() < 1e-6 && a.abs() < 0.01 && b.abs() < 0.01);
        assert_eq!(srgb_pixel_to_lab(0, 0, 0), (0.0, 0.0, 0.0));
        let (l, a, b) = srgb_pixel_to_lab(255, 0, 0);
        assert!((l - 53.24).abs() < 0.1, "{l}");
        assert!((a - 80.09).abs() < 0.1, "{a}");
        assert!((b - 67.20).abs() < 0.1, "{b}");
    }

    #[test]
    fn lab_matches_reference_chain() {
        for &(r, g, b) in &[(255, 0, 0), (12, 200, 77), (1, 2, 3), (128, 128, 128), (250, 40, 190)] {
            let got = srgb_pixel_to_lab(r, g, b);
            let want = reference_lab(r, g, b);
            assert!((got.0 - want.0).abs() < 1e-9);
            assert!((got.1 - want.1).abs() < 1e-9);
            assert!((got.2 - want.2).abs() < 1e-9);
        }
    }

    #[test]
    fn gray_ramp_is_neutral_and_monotone() {
        let mut last = -1.0;
        for step in 0..16u32 {
            let v = (step * 17) as u8;
            let (l, a, b) = srgb_pixel_to_lab(v, v, v);
            assert!(a.abs() < 0.05 && b.abs() < 0.05, "step {step}: a={a} b={b}");
            assert!(l > last);
            last = l;
        }
    }

    #[test]
    fn lab_rejects_grayscale() {
        let img = RasterImage::filled(2, 2, 1, 9).unwrap();
        assert_eq!(rgb_to_lab(&img), Err(RasterError::NotRgb));
        assert!(rgb_to_lab(&img.to_rgb()).is_ok());
    }
}
