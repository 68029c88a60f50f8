use super::{clamp_u8, RasterImage};

/// 3x3 convolution (kernel given row-major, top-left first) with border
/// replication, applied to each channel; results are rounded and clamped.
pub fn convolve3x3(img: &RasterImage, kernel: &[f64; 9]) -> RasterImage {
    let (w, h, ch) = (img.width(), img.height(), img.channels());
    let mut out = Vec::with_capacity(img.pixels().len());
    for y in 0..h {
        for x in 0..w {
            for c in 0..ch {
                let mut acc = 0.0;
                for (k, weight) in kernel.iter().enumerate() {
                    let sx = (x as isize + (k % 3) as isize - 1).clamp(0, w as isize - 1) as usize;
                    let sy = (y as isize + (k / 3) as isize - 1).clamp(0, h as isize - 1) as usize;
                    acc += weight * f64::from(img.get(sx, sy, c));
                }
                out.push(clamp_u8(acc));
            }
        }
    }
    RasterImage::new(w, h, ch, out).expect("same shape as input")
}
