//! Quantum LDPC decoding: GF(2) algebra, CSS code construction, a
//! syndrome-based scaled min-sum decoder with float and saturating integer
//! arithmetic, Monte Carlo noise simulation and a latency benchmark.

pub mod bench;
pub mod code;
pub mod decoder;
mod error;
pub mod gf2;
pub mod noise;

pub use code::{CssCode, TannerGraph};
pub use decoder::{DecodeOutcome, DecoderConfig, MinSumDecoder};
pub use error::{Error, Result};
pub use gf2::{Gf2Vector, SparseGf2Matrix};
