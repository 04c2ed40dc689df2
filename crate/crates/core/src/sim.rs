//! Deterministic Monte-Carlo BER/FER simulation.
//!
//! Point `i` of a curve uses seed `derive_seed(master, i)`; frame `j` of a
//! point draws its message and its noise from streams keyed by
//! `(point seed, j)`. Frames are decoded in parallel batches but tallied in
//! index order, and a point stops exactly at the frame that reaches the
//! error target, so results do not depend on the number of workers.

use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;

use crate::channel::{add_awgn, demodulate_llr, modulate_bpsk, ChannelConfig};
use crate::error::{Error, Result};
use crate::polar::{CheckNode, ScDecoder};
use crate::rng::{derive_seed, stream_rng, Stream};
use crate::scalar::Real;
use crate::scheme::Scheme;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    pub min_frame_errors: u64,
    pub max_frames: u64,
}

impl StopRule {
    pub fn new(min_frame_errors: u64, max_frames: u64) -> Result<Self> {
        if min_frame_errors == 0 || max_frames == 0 {
            return Err(Error::param(
                "min frame errors and max frames must both be at least 1",
            ));
        }
        Ok(StopRule {
            min_frame_errors,
            max_frames,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub ebno_db: f64,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
    /// The error target was reached before the frame cap.
    pub saturated: bool,
}

/// Uniformly random `k`-bit message of frame `frame_index`.
pub fn random_message(k: usize, seed: u64, frame_index: u64) -> Vec<u8> {
    let mut rng = stream_rng(seed, frame_index, Stream::Message);
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let word: u64 = rng.gen();
        out.extend((0..64.min(k - out.len())).map(|b| ((word >> b) & 1) as u8));
    }
    out
}

/// Transmitted bits of frame `i` for random messages under `seed`, usable as
/// a frame source for the run-length analytics.
pub fn transmitted_frames(
    scheme: &Scheme,
    seed: u64,
) -> impl Fn(u64) -> Result<Vec<u8>> + Sync + '_ {
    move |i| scheme.transmit(&random_message(scheme.info_count(), seed, i))
}

/// Transmits, corrupts and decodes one frame; returns the info-bit errors.
pub fn simulate_frame<T: Real>(
    scheme: &Scheme,
    channel: &ChannelConfig,
    frame_index: u64,
    decoder: &mut ScDecoder<T>,
) -> Result<u64> {
    let message = random_message(scheme.info_count(), channel.seed, frame_index);
    let bits = scheme.transmit(&message)?;
    let received = add_awgn(&modulate_bpsk::<T>(&bits), channel, frame_index);
    let llrs = demodulate_llr(&received, channel.noise_sigma())?;
    let estimate = scheme.receive_with(&llrs, decoder)?;
    Ok(estimate
        .message
        .iter()
        .zip(&message)
        .filter(|(a, b)| a != b)
        .count() as u64)
}

/// Simulation of one scheme with a chosen check-node rule.
#[derive(Debug, Clone)]
pub struct Simulator {
    scheme: Scheme,
    check: CheckNode,
}

impl Simulator {
    pub fn new(scheme: Scheme) -> Self {
        Simulator {
            scheme,
            check: CheckNode::Exact,
        }
    }

    pub fn with_check_node(mut self, check: CheckNode) -> Self {
        self.check = check;
        self
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    fn point<T: Real>(&self, ebno_db: f64, stop: StopRule, point_seed: u64) -> Result<CurvePoint> {
        let channel = ChannelConfig::new(ebno_db, self.scheme.overall_rate(), point_seed)?;
        let k = self.scheme.info_count() as u64;
        let batch = 64 * rayon::current_num_threads() as u64;
        let (mut frames, mut bit_errors, mut frame_errors) = (0u64, 0u64, 0u64);

        'outer: while frames < stop.max_frames {
            let end = (frames + batch).min(stop.max_frames);
            let errors: Vec<u64> = (frames..end)
                .into_par_iter()
                .map_init(
                    || ScDecoder::<T>::new(self.check),
                    |decoder, i| simulate_frame(&self.scheme, &channel, i, decoder),
                )
                .collect::<Result<_>>()?;
            for e in errors {
                frames += 1;
                bit_errors += e;
                if e > 0 {
                    frame_errors += 1;
                    if frame_errors >= stop.min_frame_errors {
                        break 'outer;
                    }
                }
            }
        }
        Ok(CurvePoint {
            ebno_db,
            frames,
            bit_errors,
            frame_errors,
            ber: bit_errors as f64 / (frames * k) as f64,
            fer: frame_errors as f64 / frames as f64,
            saturated: frame_errors >= stop.min_frame_errors,
        })
    }

    /// Simulates one operating point (the first point of a curve with this seed).
    pub fn run_point<T: Real>(
        &self,
        ebno_db: f64,
        stop: StopRule,
        seed: u64,
    ) -> Result<CurvePoint> {
        self.point::<T>(ebno_db, stop, derive_seed(seed, 0))
    }

    pub fn run_curve<T: Real>(
        &self,
        ebnos: &[f64],
        stop: StopRule,
        seed: u64,
    ) -> Result<Vec<CurvePoint>> {
        if ebnos.is_empty() {
            return Err(Error::param("empty Eb/N0 list"));
        }
        ebnos
            .iter()
            .enumerate()
            .map(|(i, &ebno)| self.point::<T>(ebno, stop, derive_seed(seed, i as u64)))
            .collect()
    }
}

pub fn run_point<T: Real>(
    scheme: &Scheme,
    ebno_db: f64,
    stop: StopRule,
    seed: u64,
) -> Result<CurvePoint> {
    Simulator::new(scheme.clone()).run_point::<T>(ebno_db, stop, seed)
}

pub fn run_curve<T: Real>(
    scheme: &Scheme,
    ebnos: &[f64],
    stop: StopRule,
    seed: u64,
) -> Result<Vec<CurvePoint>> {
    Simulator::new(scheme.clone()).run_curve::<T>(ebnos, stop, seed)
}

pub const CURVE_CSV_HEADER: &str =
    "variant,N,K,p_prime,ebno_db,frames,bit_errors,frame_errors,ber,fer,saturated";

/// One CSV row per point under [`CURVE_CSV_HEADER`].
pub fn curve_to_csv(scheme: &Scheme, points: &[CurvePoint]) -> String {
    let mut out = String::from(CURVE_CSV_HEADER);
    out.push('\n');
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            scheme.variant(),
            scheme.main_code().code_length(),
            scheme.info_count(),
            scheme.prefix_length(),
            format_sig(p.ebno_db),
            p.frames,
            p.bit_errors,
            p.frame_errors,
            format_sig(p.ber),
            format_sig(p.fer),
            p.saturated
        );
    }
    out
}

/// Shortest `%g`-style rendering with 6 significant digits.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..6).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
