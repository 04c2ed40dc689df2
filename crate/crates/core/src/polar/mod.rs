//! Polar codes: Gaussian-approximation construction, encoding with
//! `G = F2^{⊗n}` in natural index order, successive-cancellation decoding in
//! the LLR domain, and shortening to lengths that are not powers of two.
//!
//! Shortening removes the highest coded indices. Because `G` is lower
//! triangular with `G[i][j] = 1` iff `j ⊆ i` bitwise, freezing the input bits
//! with the same indices forces those coded bits to zero for every message,
//! so the receiver can treat them as perfectly known.

mod code;
mod decode;
mod encode;
mod ga;

pub use code::{Design, PolarCodeSpec};
pub use decode::{decode_sc, CheckNode, ScDecoder, ScOutput, SATURATION_LLR};
pub use encode::{encode, encode_input, polar_transform};
pub use ga::{
    channel_llr_mean, check_node_mean, construct_ga, construct_shortened, ga_means, ln_phi, phi,
    phi_inverse, shorten, ReliabilityProfile,
};
