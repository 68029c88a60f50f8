//! Perceptual image hashing with a robustness benchmark harness.
//!
//! Four hash families ([`hashes`]) map an 8-bit raster ([`raster`]) to a
//! fixed-length vector. Hashes are compared with a guarded correlation
//! coefficient ([`similarity`]); [`attacks`] produces content-preserving
//! variants of an image and [`bench`] measures how well each hash survives
//! them.
//!
//! ```
//! use percepthash::attacks::{apply_attack, AttackSpec};
//! use percepthash::hashes::Algorithm;
//! use percepthash::raster::RasterImage;
//! use percepthash::similarity::correlation;
//!
//! let img = RasterImage::from_fn(64, 64, 3, |x, y, c| (x * 3 + y * 2 + c * 40) as u8).unwrap();
//! let darker = apply_attack(&img, &AttackSpec::Brightness { offset: -10.0 }, 0).unwrap();
//! let s = correlation(&Algorithm::Ring.hash(&img), &Algorithm::Ring.hash(&darker)).unwrap();
//! assert!(s.value() > 0.9);
//! ```

pub mod attacks;
pub mod bench;
pub mod cli;
pub mod hashes;
pub mod raster;
pub mod similarity;

pub use hashes::{Algorithm, HashVector};
pub use raster::RasterImage;
pub use similarity::{correlation, is_similar, SimilarityScore};
