//! Flicker-free forward error correction for visible light links.
//!
//! Polar coding concatenated with Knuth balancing and a protected balancing
//! prefix, the 1b2b and 4b6b run-length-limited baselines, a deterministic
//! Monte-Carlo simulator and the accompanying analytics.
//!
//! LLR-domain code is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar for the common cases.

pub mod analysis;
pub mod balancing;
pub mod channel;
pub mod error;
pub mod polar;
pub mod rll;
pub mod rng;
pub mod scalar;
pub mod scheme;
pub mod sim;
pub mod soft;

pub use error::{Error, Result};
pub use scalar::Real;
pub use soft::SoftVector;

pub type Llrs = SoftVector<f64>;
pub type Llrs32 = SoftVector<f32>;
pub type ScDecoder64 = polar::ScDecoder<f64>;
pub type ScDecoder32 = polar::ScDecoder<f32>;
