//! Raster image model and the pixel-level kernels shared by the hashes and attacks.

mod color;
mod dct;
mod filter;
mod pnm;
mod resample;

pub use color::{rgb_to_lab, srgb_pixel_to_lab, to_grayscale};
pub use dct::{dct2, idct2};
pub use filter::convolve3x3;
pub use pnm::{decode_pnm, encode_pnm, load_image, save_image, PnmError};
pub use resample::resize_bilinear;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RasterError {
    #[error("image dimensions must be at least 1x1, got {width}x{height}")]
    EmptyDimensions { width: usize, height: usize },
    #[error("unsupported channel count {0} (expected 1 or 3)")]
    UnsupportedChannels(usize),
    #[error("pixel buffer holds {actual} samples, expected {expected}")]
    BufferSize { expected: usize, actual: usize },
    #[error("plane holds {actual} values, expected {expected}")]
    PlaneSize { expected: usize, actual: usize },
    #[error("plane contains a non-finite value")]
    NonFinite,
    #[error("operation requires a 3-channel image")]
    NotRgb,
}

/// An 8-bit raster, grayscale or sRGB, stored row-major with interleaved channels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RasterImage {
    width: usize,
    height: usize,
    channels: usize,
    pixels: Vec<u8>,
}

impl RasterImage {
    pub fn new(width: usize, height: usize, channels: usize, pixels: Vec<u8>) -> Result<Self, RasterError> {
        if width == 0 || height == 0 {
            return Err(RasterError::EmptyDimensions { width, height });
        }
        if channels != 1 && channels != 3 {
            return Err(RasterError::UnsupportedChannels(channels));
        }
        let expected = width * height * channels;
        if pixels.len() != expected {
            return Err(RasterError::BufferSize {
                expected,
                actual: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            channels,
            pixels,
        })
    }

    /// Image with every sample set to `value`.
    pub fn filled(width: usize, height: usize, channels: usize, value: u8) -> Result<Self, RasterError> {
        Self::new(width, height, channels, vec![value; width * height * channels])
    }

    /// Builds an image by evaluating `f(x, y, channel)` for every sample.
    pub fn from_fn(
        width: usize,
        height: usize,
        channels: usize,
        mut f: impl FnMut(usize, usize, usize) -> u8,
    ) -> Result<Self, RasterError> {
        let mut pixels = Vec::with_capacity(width * height * channels);
        for y in 0..height {
            for x in 0..width {
                for c in 0..channels {
                    pixels.push(f(x, y, c));
                }
            }
        }
        Self::new(width, height, channels, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn is_rgb(&self) -> bool {
        self.channels == 3
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, channel: usize) -> u8 {
        self.pixels[(y * self.width + x) * self.channels + channel]
    }

    /// Copies a grayscale image into all three channels; RGB images are cloned.
    pub fn to_rgb(&self) -> RasterImage {
        if self.is_rgb() {
            return self.clone();
        }
        let pixels = self.pixels.iter().flat_map(|&v| [v, v, v]).collect();
        RasterImage {
            width: self.width,
            height: self.height,
            channels: 3,
            pixels,
        }
    }

    /// Extracts one channel as a grayscale image.
    pub fn channel(&self, channel: usize) -> RasterImage {
        assert!(channel < self.channels, "channel index out of range");
        let pixels = self
            .pixels
            .iter()
            .skip(channel)
            .step_by(self.channels)
            .copied()
            .collect();
        RasterImage {
            width: self.width,
            height: self.height,
            channels: 1,
            pixels,
        }
    }

    /// Interleaves single-channel planes of equal size back into one image.
    pub fn from_channels(planes: &[RasterImage]) -> Result<RasterImage, RasterError> {
        let first = planes.first().ok_or(RasterError::UnsupportedChannels(0))?;
        if planes.len() != 1 && planes.len() != 3 {
            return Err(RasterError::UnsupportedChannels(planes.len()));
        }
        let (w, h) = (first.width, first.height);
        let mut pixels = Vec::with_capacity(w * h * planes.len());
        for i in 0..w * h {
            for p in planes {
                debug_assert!(p.width == w && p.height == h && p.channels == 1);
                pixels.push(p.pixels[i]);
            }
        }
        RasterImage::new(w, h, planes.len(), pixels)
    }

    /// Exact 90 degree clockwise rotation (pixel permutation, no resampling).
    pub fn rotate90(&self) -> RasterImage {
        let (w, h, ch) = (self.width, self.height, self.channels);
        // Output is h wide and w tall; output (x, y) takes input (y, h - 1 - x).
        let mut pixels = Vec::with_capacity(self.pixels.len());
        for y in 0..w {
            for x in 0..h {
                let (sx, sy) = (y, h - 1 - x);
                let base = (sy * w + sx) * ch;
                pixels.extend_from_slice(&self.pixels[base..base + ch]);
            }
        }
        RasterImage {
            width: h,
            height: w,
            channels: ch,
            pixels,
        }
    }

    /// Luminance-domain pixel values of a grayscale image as a float plane.
    pub fn to_plane(&self) -> FloatPlane {
        let gray = if self.is_rgb() {
            to_grayscale(self)
        } else {
            self.clone()
        };
        FloatPlane {
            width: gray.width,
            height: gray.height,
            values: gray.pixels.iter().map(|&v| f64::from(v)).collect(),
        }
    }
}

/// Rounds and clamps a real sample to the 8-bit range.
#[inline]
pub fn clamp_u8(v: f64) -> u8 {
    if v.is_nan() {
        0
    } else {
        v.round().clamp(0.0, 255.0) as u8
    }
}

/// Real-valued working buffer, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPlane {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl FloatPlane {
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self, RasterError> {
        if width == 0 || height == 0 {
            return Err(RasterError::EmptyDimensions { width, height });
        }
        if values.len() != width * height {
            return Err(RasterError::PlaneSize {
                expected: width * height,
                actual: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(RasterError::NonFinite);
        }
        Ok(Self { width, height, values })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            values: vec![0.0; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: f64) {
        self.values[y * self.width + x] = v;
    }

    /// Copies the `w`x`h` window whose top-left corner is (`x0`, `y0`).
    pub fn crop(&self, x0: usize, y0: usize, w: usize, h: usize) -> FloatPlane {
        let mut values = Vec::with_capacity(w * h);
        for y in y0..y0 + h {
            values.extend_from_slice(&self.values[y * self.width + x0..y * self.width + x0 + w]);
        }
        FloatPlane {
            width: w,
            height: h,
            values,
        }
    }
}

/// CIE L*a*b* planes of equal size.
#[derive(Clone, Debug, PartialEq)]
pub struct LabImage {
    pub l: FloatPlane,
    pub a: FloatPlane,
    pub b: FloatPlane,
}

impl LabImage {
    pub fn width(&self) -> usize {
        self.l.width
    }

    pub fn height(&self) -> usize {
        self.l.height
    }
}
