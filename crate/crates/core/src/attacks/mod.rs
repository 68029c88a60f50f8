//! Content-preserving operations ("attacks") used to probe hash robustness.

mod ops;
mod rng;
mod spec;

pub use ops::{
    apply_attack, gaussian_kernel, jpeg_quant_table, multiplicative_noise, psnr, salt_pepper_plan, watermark_logo,
    JPEG_LUMA_TABLE, LOGO_SIZE,
};
pub use rng::{derive_seed, mix64, SeededRng};
pub use spec::{default_grid, format_grid, parse_grid, AttackKind, AttackSpec, Corner};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AttackError {
    #[error("cannot parse attack spec: {0}")]
    Parse(String),
    #[error("attack parameter out of range: {0}")]
    OutOfRange(String),
}
