//! Deterministic, order-independent random streams.
//!
//! Every stream is keyed by a path of integers (master seed, point index,
//! frame index, purpose), so any frame can be regenerated on its own and
//! results do not depend on how work is scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Purpose tag separating the independent streams of one frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Message = 1,
    Noise = 2,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed `hash(parent, index)`.
pub fn derive_seed(parent: u64, index: u64) -> u64 {
    splitmix64(splitmix64(parent) ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

pub fn stream_rng(seed: u64, frame_index: u64, stream: Stream) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(derive_seed(seed, frame_index), stream as u64))
}
