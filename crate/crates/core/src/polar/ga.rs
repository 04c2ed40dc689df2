//! Gaussian-approximation (GA) density evolution.
//!
//! Each synthetic channel's LLR is modeled as `N(m, 2m)`, tracked by its mean
//! `m` alone. A variable-node combine adds means; a check-node combine uses
//! `φ^{-1}(1 - (1 - φ(a))(1 - φ(b)))` with the two-regime approximation
//!
//! ```text
//! φ(x) = exp(-0.4527·x^0.86 + 0.0218)                    0 < x < 10
//! φ(x) = sqrt(π/x)·exp(-x/4)·(1 - 10/(7x))               x >= 10
//! ```
//!
//! All φ arithmetic is carried out on `ln φ` so that means in the thousands
//! (long codes at high SNR) do not underflow.

use std::f64::consts::PI;

use super::code::{Design, PolarCodeSpec};
use crate::channel::noise_sigma;
use crate::error::{Error, Result};

const ALPHA: f64 = 0.4527;
const BETA: f64 = 0.86;
const GAMMA: f64 = 0.0218;
const SWITCH: f64 = 10.0;

fn ln_phi_large(x: f64) -> f64 {
    0.5 * (PI / x).ln() - x / 4.0 + (1.0 - 10.0 / (7.0 * x)).ln()
}

/// `ln φ(x)`, clamped to `<= 0`.
pub fn ln_phi(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x.is_infinite() {
        f64::NEG_INFINITY
    } else if x < SWITCH {
        (GAMMA - ALPHA * x.powf(BETA)).min(0.0)
    } else {
        ln_phi_large(x)
    }
}

pub fn phi(x: f64) -> f64 {
    ln_phi(x).exp()
}

/// Inverse of [`ln_phi`]. Monotone non-increasing in `ln_y`.
fn inverse_ln_phi(ln_y: f64) -> f64 {
    if ln_y >= 0.0 {
        return 0.0;
    }
    if ln_y == f64::NEG_INFINITY {
        return f64::INFINITY;
    }
    let small_floor = GAMMA - ALPHA * SWITCH.powf(BETA);
    if ln_y >= small_floor {
        return ((GAMMA - ln_y) / ALPHA).powf(1.0 / BETA);
    }
    // ln_phi_large(x) < -x/4 for x > π, so the root lies below -4·ln_y + SWITCH.
    let (mut lo, mut hi) = (SWITCH, SWITCH - 4.0 * ln_y);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ln_phi_large(mid) > ln_y {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

pub fn phi_inverse(y: f64) -> f64 {
    inverse_ln_phi(y.ln())
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let hi = a.max(b);
    hi + (-(a - b).abs()).exp().ln_1p()
}

/// Mean of the check-node combination of two channels with means `a`, `b`.
pub fn check_node_mean(a: f64, b: f64) -> f64 {
    if a.is_infinite() {
        return b;
    }
    if b.is_infinite() {
        return a;
    }
    let (la, lb) = (ln_phi(a), ln_phi(b));
    // 1 - (1 - φa)(1 - φb) = φa + φb·(1 - φa)
    let ln_one_minus_a = (-la.exp()).ln_1p();
    inverse_ln_phi(log_add_exp(la, lb + ln_one_minus_a))
}

/// Synthetic-channel means for per-position channel means (length `2^n`).
///
/// Index `i` refers to input bit `u_i` of `x = u·F2^{⊗n}`. An infinite
/// channel mean marks a coded bit known to the receiver.
pub fn ga_means(channel_means: &[f64]) -> Vec<f64> {
    let n = channel_means.len();
    assert!(n.is_power_of_two(), "GA length must be a power of two");
    if n == 1 {
        return channel_means.to_vec();
    }
    let h = n / 2;
    let (a, b) = channel_means.split_at(h);
    let upper: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| check_node_mean(x, y))
        .collect();
    let lower: Vec<f64> = a.iter().zip(b).map(|(&x, &y)| x + y).collect();
    let mut out = ga_means(&upper);
    out.extend(ga_means(&lower));
    out
}

/// BPSK-AWGN channel LLR mean `2/σ²` at the given Eb/N0 and rate.
pub fn channel_llr_mean(ebno_db: f64, rate: f64) -> f64 {
    let sigma = noise_sigma(ebno_db, rate);
    2.0 / (sigma * sigma)
}

/// Per-synthetic-channel GA means `c_i` and error probabilities
/// `Q_i = ½·erfc(√c_i / 2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityProfile {
    means: Vec<f64>,
    q_values: Vec<f64>,
}

impl ReliabilityProfile {
    pub fn from_means(means: Vec<f64>) -> Self {
        let q_values = means.iter().map(|&c| q_of_mean(c)).collect();
        ReliabilityProfile { means, q_values }
    }

    /// GA profile of a mother code of `mother_length` whose coded positions
    /// `code_length..` are shortened, at the given operating point.
    pub fn evaluate(mother_length: usize, code_length: usize, ebno_db: f64, rate: f64) -> Self {
        let m = channel_llr_mean(ebno_db, rate);
        let channel: Vec<f64> = (0..mother_length)
            .map(|i| if i < code_length { m } else { f64::INFINITY })
            .collect();
        Self::from_means(ga_means(&channel))
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn q_values(&self) -> &[f64] {
        &self.q_values
    }

    pub fn len(&self) -> usize {
        self.means.len()
    }

    pub fn is_empty(&self) -> bool {
        self.means.is_empty()
    }
}

fn q_of_mean(c: f64) -> f64 {
    if c.is_infinite() {
        0.0
    } else {
        0.5 * libm::erfc(c.max(0.0).sqrt() / 2.0)
    }
}

fn check_rate(rate: f64) -> Result<()> {
    if rate.is_finite() && rate > 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("rate {rate} must be positive")))
    }
}

fn build_from_profile(
    mother_length: usize,
    code_length: usize,
    info_count: usize,
    design: Design,
    profile: &ReliabilityProfile,
) -> Result<PolarCodeSpec> {
    let means = profile.means();
    let mut order: Vec<usize> = (0..mother_length).collect();
    // Shortened inputs are frozen regardless of their mean; among the rest,
    // larger mean first and the lower index wins ties.
    order.sort_by(|&a, &b| {
        (a >= code_length)
            .cmp(&(b >= code_length))
            .then(means[b].total_cmp(&means[a]))
            .then(a.cmp(&b))
    });
    let info = order[..info_count.min(mother_length)].to_vec();
    PolarCodeSpec::build(mother_length, code_length, info, order, Some(design))
}

fn construct_with_length(
    mother_length: usize,
    code_length: usize,
    info_count: usize,
    design: Design,
) -> Result<(PolarCodeSpec, ReliabilityProfile)> {
    check_rate(design.rate)?;
    if info_count == 0 || info_count > code_length {
        return Err(Error::param(format!(
            "info count {info_count} must be in 1..={code_length}"
        )));
    }
    let profile =
        ReliabilityProfile::evaluate(mother_length, code_length, design.snr_db, design.rate);
    let spec = build_from_profile(mother_length, code_length, info_count, design, &profile)?;
    Ok((spec, profile))
}

/// GA construction of `PC(mother_length, info_count)`.
///
/// The channel LLR mean is `2/σ²` with `σ` derived from `design_snr_db`
/// (Eb/N0) and `rate_for_noise`.
pub fn construct_ga(
    mother_length: usize,
    info_count: usize,
    design_snr_db: f64,
    rate_for_noise: f64,
) -> Result<(PolarCodeSpec, ReliabilityProfile)> {
    if mother_length == 0 || !mother_length.is_power_of_two() {
        return Err(Error::param(format!(
            "mother length {mother_length} is not a power of two"
        )));
    }
    construct_with_length(
        mother_length,
        mother_length,
        info_count,
        Design {
            snr_db: design_snr_db,
            rate: rate_for_noise,
        },
    )
}

/// GA construction of a code of any length: the mother code is the next
/// power of two and the excess is shortened.
pub fn construct_shortened(
    code_length: usize,
    info_count: usize,
    design_snr_db: f64,
    rate_for_noise: f64,
) -> Result<(PolarCodeSpec, ReliabilityProfile)> {
    if code_length == 0 {
        return Err(Error::param("code length must be positive"));
    }
    let mother = code_length.next_power_of_two();
    if code_length < mother && !code_length.is_multiple_of(2) {
        return Err(Error::param(format!(
            "shortened length {code_length} must be even"
        )));
    }
    construct_with_length(
        mother,
        code_length,
        info_count,
        Design {
            snr_db: design_snr_db,
            rate: rate_for_noise,
        },
    )
}

/// Shortens `spec` to `target_length` transmitted bits.
///
/// Coded indices `target_length..N_mother` are never sent and the matching
/// input bits are frozen. Information positions are re-selected: with the
/// GA (shortened bits seen as perfectly known) when `spec` carries a design
/// point, otherwise from its reliability order.
pub fn shorten(spec: &PolarCodeSpec, target_length: usize) -> Result<PolarCodeSpec> {
    let mother = spec.mother_length();
    if target_length == 0 || target_length > mother {
        return Err(Error::param(format!(
            "target length {target_length} must be in 1..={mother}"
        )));
    }
    if target_length < mother && !target_length.is_multiple_of(2) {
        return Err(Error::param(format!(
            "shortened length {target_length} must be even"
        )));
    }
    let k = spec.info_count();
    if k > target_length {
        return Err(Error::param(format!(
            "cannot fit {k} info bits into {target_length} positions"
        )));
    }
    match spec.design() {
        Some(design) => construct_with_length(mother, target_length, k, design).map(|(s, _)| s),
        None => {
            let mut order: Vec<usize> = spec.reliability_order().to_vec();
            order.sort_by_key(|&i| i >= target_length);
            let info = order[..k].to_vec();
            PolarCodeSpec::build(mother, target_length, info, order, None)
        }
    }
}
