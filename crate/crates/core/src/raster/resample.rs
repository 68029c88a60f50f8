use super::RasterImage;

/// Two source taps and their integer weights out of `den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Taps {
    i0: usize,
    i1: usize,
    w0: u64,
    w1: u64,
}

/// Pixel-center aligned sampling positions along one axis.
///
/// The source coordinate `(j + 0.5) * src / dst - 0.5` is kept as the exact
/// rational `((2j + 1) * src - dst) / (2 * dst)`, so weights carry no rounding
/// error and mirrored destination pixels get mirrored weights.
fn axis_taps(src: usize, dst: usize) -> (Vec<Taps>, u64) {
    let den = 2 * dst as i64;
    let taps = (0..dst)
        .map(|j| {
            let num = (2 * j as i64 + 1) * src as i64 - dst as i64;
            if num <= 0 {
                return Taps {
                    i0: 0,
                    i1: 0,
                    w0: den as u64,
                    w1: 0,
                };
            }
            let i0 = (num / den) as usize;
            let r = (num % den) as u64;
            if i0 >= src - 1 {
                Taps {
                    i0: src - 1,
                    i1: src - 1,
                    w0: den as u64,
                    w1: 0,
                }
            } else {
                Taps {
                    i0,
                    i1: i0 + 1,
                    w0: den as u64 - r,
                    w1: r,
                }
            }
        })
        .collect();
    (taps, den as u64)
}

/// Bilinear resize with pixel-center alignment and edge clamping; each channel
/// is interpolated independently and rounded half-up.
pub fn resize_bilinear(img: &RasterImage, width: usize, height: usize) -> RasterImage {
    assert!(width >= 1 && height >= 1, "target dimensions must be >= 1");
    if width == img.width() && height == img.height() {
        return img.clone();
    }
    let ch = img.channels();
    let (xs, den_x) = axis_taps(img.width(), width);
    let (ys, den_y) = axis_taps(img.height(), height);
    let den = den_x * den_y;
    let src = img.pixels();
    let stride = img.width() * ch;
    let mut out = Vec::with_capacity(width * height * ch);
    for ty in &ys {
        let row0 = &src[ty.i0 * stride..(ty.i0 + 1) * stride];
        let row1 = &src[ty.i1 * stride..(ty.i1 + 1) * stride];
        for tx in &xs {
            for c in 0..ch {
                let top = u64::from(row0[tx.i0 * ch + c]) * tx.w0 + u64::from(row0[tx.i1 * ch + c]) * tx.w1;
                let bottom = u64::from(row1[tx.i0 * ch + c]) * tx.w0 + u64::from(row1[tx.i1 * ch + c]) * tx.w1;
                let acc = top * ty.w0 + bottom * ty.w1;
                out.push(((acc + den / 2) / den) as u8);
            }
        }
    }
    RasterImage::new(width, height, ch, out).expect("resize output is well formed")
}
