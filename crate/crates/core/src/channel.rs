//! BPSK over AWGN.
//!
//! BPSK maps bit 0 to +1 and bit 1 to -1, so the channel LLR `2y/σ²` is
//! positive for bit 0. The noise level follows from Eb/N0 and the overall
//! information rate `R` of the transmitted stream:
//! `σ = sqrt(1 / (2·R·10^(Eb/N0 / 10)))`.

use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::rng::{stream_rng, Stream};
use crate::scalar::Real;
use crate::soft::SoftVector;

pub fn noise_sigma(ebno_db: f64, rate: f64) -> f64 {
    (1.0 / (2.0 * rate * 10f64.powf(ebno_db / 10.0))).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    pub ebno_db: f64,
    /// Information bits per transmitted symbol.
    pub overall_rate: f64,
    pub seed: u64,
}

impl ChannelConfig {
    pub fn new(ebno_db: f64, overall_rate: f64, seed: u64) -> Result<Self> {
        if !(overall_rate > 0.0 && overall_rate <= 1.0) {
            return Err(Error::param(format!(
                "overall rate {overall_rate} must be in (0, 1]"
            )));
        }
        if !ebno_db.is_finite() {
            return Err(Error::param("Eb/N0 must be finite"));
        }
        Ok(ChannelConfig {
            ebno_db,
            overall_rate,
            seed,
        })
    }

    pub fn noise_sigma(&self) -> f64 {
        noise_sigma(self.ebno_db, self.overall_rate)
    }
}

pub fn modulate_bpsk<T: Real>(bits: &[u8]) -> Vec<T> {
    bits.iter()
        .map(|&b| if b & 1 == 0 { T::one() } else { -T::one() })
        .collect()
}

/// Adds i.i.d. `N(0, σ²)` noise drawn from the `(seed, frame_index)` stream.
pub fn add_awgn<T: Real>(symbols: &[T], config: &ChannelConfig, frame_index: u64) -> Vec<T> {
    let sigma = config.noise_sigma();
    let mut rng = stream_rng(config.seed, frame_index, Stream::Noise);
    symbols
        .iter()
        .map(|&s| {
            let z: f64 = StandardNormal.sample(&mut rng);
            s + T::of(sigma * z)
        })
        .collect()
}

/// `LLR_i = 2·y_i / σ²`.
pub fn demodulate_llr<T: Real>(received: &[T], sigma: f64) -> Result<SoftVector<T>> {
    if sigma <= 0.0 || !sigma.is_finite() {
        return Err(Error::param(format!(
            "noise sigma {sigma} must be positive"
        )));
    }
    let scale = T::of(2.0 / (sigma * sigma));
    Ok(received.iter().map(|&y| y * scale).collect())
}
