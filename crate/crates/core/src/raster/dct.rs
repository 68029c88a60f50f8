//! Orthonormal separable 2D DCT-II and its inverse.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::rc::Rc;

use super::FloatPlane;

thread_local! {
    static BASIS: RefCell<HashMap<usize, Rc<Vec<f64>>>> = RefCell::new(HashMap::new());
}

/// Row-major `n x n` matrix with `m[k][i] = a_k cos(pi (2i + 1) k / 2n)`.
fn basis(n: usize) -> Rc<Vec<f64>> {
    BASIS.with(|cache| {
        cache
            .borrow_mut()
            .entry(n)
            .or_insert_with(|| {
                let nf = n as f64;
                let mut m = Vec::with_capacity(n * n);
                for k in 0..n {
                    let scale = if k == 0 { (1.0 / nf).sqrt() } else { (2.0 / nf).sqrt() };
                    for i in 0..n {
                        m.push(scale * (PI * (2 * i + 1) as f64 * k as f64 / (2.0 * nf)).cos());
                    }
                }
                Rc::new(m)
            })
            .clone()
    })
}

/// Applies `m` (or its transpose) along rows, then along columns.
fn separable(plane: &FloatPlane, inverse: bool) -> FloatPlane {
    let (w, h) = (plane.width(), plane.height());
    let bw = basis(w);
    let bh = basis(h);
    let src = plane.values();

    let mut rows = vec![0.0; w * h];
    for y in 0..h {
        let line = &src[y * w..(y + 1) * w];
        for k in 0..w {
            let mut acc = 0.0;
            for (i, v) in line.iter().enumerate() {
                let c = if inverse { bw[i * w + k] } else { bw[k * w + i] };
                acc += c * v;
            }
            rows[y * w + k] = acc;
        }
    }

    let mut out = vec![0.0; w * h];
    for x in 0..w {
        for k in 0..h {
            let mut acc = 0.0;
            for i in 0..h {
                let c = if inverse { bh[i * h + k] } else { bh[k * h + i] };
                acc += c * rows[i * w + x];
            }
            out[k * w + x] = acc;
        }
    }
    FloatPlane::new(w, h, out).expect("transform of a finite plane is finite")
}

/// Forward transform; output (0, 0) is the DC term, u indexes columns and v rows.
pub fn dct2(plane: &FloatPlane) -> FloatPlane {
    separable(plane, false)
}

pub fn idct2(plane: &FloatPlane) -> FloatPlane {
    separable(plane, true)
}
