//! Operation counts for the soft-output inner decoding stage.
//!
//! Every 2-input operation (add, multiply, exp, log, compare, …) counts as 1.
//!
//! - 1b2b: one subtraction per code bit, `N`.
//! - proposed: `p'` subtractions for the soft Manchester combine, an SC
//!   decode of the prefix code costing `M·log2 M` with `M = 2^⌈log2 p'⌉`, and
//!   `N` comparisons to restore LLR signs.
//! - 4b6b, per 6-bit block: 16 codeword probabilities, each 6 exponentials
//!   and 5 multiplications; then per source bit two 8-term sums (7 additions
//!   each), one ratio and one logarithm.

use crate::error::{Error, Result};
use crate::rll::RedundancyScheme;

pub const APP_4B6B_OPS_PER_BLOCK: u64 = 16 * (6 + 5) + 4 * (2 * 7 + 1 + 1);

/// Inner-decoding operations for a main code of length `n` (`prefix_length`
/// is `p'`, used by the proposed scheme only).
pub fn op_count(scheme: RedundancyScheme, n: usize, prefix_length: usize) -> Result<u64> {
    match scheme {
        RedundancyScheme::Manchester => Ok(n as u64),
        RedundancyScheme::FourBSixB => {
            if !n.is_multiple_of(4) {
                return Err(Error::param(format!(
                    "4b6b needs a code length divisible by 4, got {n}"
                )));
            }
            Ok((n / 4) as u64 * APP_4B6B_OPS_PER_BLOCK)
        }
        RedundancyScheme::Proposed => {
            if prefix_length == 0 {
                return Err(Error::param("the proposed scheme needs a prefix length"));
            }
            let m = prefix_length.next_power_of_two() as u64;
            Ok(prefix_length as u64 + m * u64::from(m.trailing_zeros()) + n as u64)
        }
        RedundancyScheme::EightBTenB => Err(Error::param("no decoding model for 8b10b")),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityRow {
    pub scheme: RedundancyScheme,
    pub rate: f64,
    /// Polar code length fed to the line decoder.
    pub n: usize,
    pub prefix_length: usize,
    pub ops: u64,
}

/// Operation counts at information length `k` and overall transmitted rate
/// `rate`, choosing each scheme's code length so that `K / S = rate`:
///
/// - 1b2b: `N = K / (2R)`
/// - 4b6b: `N = K / (1.5R)`, rounded up to a multiple of 4
/// - proposed: `N = K/R - 2p'` with `p' = prefix_length`
pub fn table1_mapping(k: usize, rate: f64, prefix_length: usize) -> Result<Vec<ComplexityRow>> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::param(format!("rate {rate} must be in (0, 1]")));
    }
    let s = k as f64 / rate;
    let manchester = (s / 2.0).round() as usize;
    let four_six = ((s / 1.5 / 4.0).ceil() as usize) * 4;
    let proposed = (s.round() as usize)
        .checked_sub(2 * prefix_length)
        .filter(|&n| n >= k)
        .ok_or_else(|| Error::param("prefix too long for this rate"))?;
    [
        (RedundancyScheme::Manchester, manchester, 0),
        (RedundancyScheme::FourBSixB, four_six, 0),
        (RedundancyScheme::Proposed, proposed, prefix_length),
    ]
    .into_iter()
    .map(|(scheme, n, p)| {
        Ok(ComplexityRow {
            scheme,
            rate,
            n,
            prefix_length: p,
            ops: op_count(scheme, n, p)?,
        })
    })
    .collect()
}
