use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sim::format_sig;

/// Lengths of the maximal runs of identical symbols, in order.
pub fn run_lengths(frame: &[u8]) -> impl Iterator<Item = usize> + '_ {
    frame.chunk_by(|a, b| a == b).map(<[u8]>::len)
}

pub fn max_run(frame: &[u8]) -> usize {
    run_lengths(frame).max().unwrap_or(0)
}

/// Counts of run lengths over many frames, runs of ones and zeros pooled.
/// Runs never cross frame boundaries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunLengthHistogram {
    counts: BTreeMap<usize, u64>,
    frames_processed: u64,
    bits_processed: u64,
}

impl RunLengthHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_frame(&mut self, frame: &[u8]) {
        for l in run_lengths(frame) {
            *self.counts.entry(l).or_default() += 1;
        }
        self.frames_processed += 1;
        self.bits_processed += frame.len() as u64;
    }

    pub fn merge(&mut self, other: &RunLengthHistogram) {
        for (&l, &c) in &other.counts {
            *self.counts.entry(l).or_default() += c;
        }
        self.frames_processed += other.frames_processed;
        self.bits_processed += other.bits_processed;
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn count(&self, l: usize) -> u64 {
        self.counts.get(&l).copied().unwrap_or(0)
    }

    pub fn frames_processed(&self) -> u64 {
        self.frames_processed
    }

    pub fn bits_processed(&self) -> u64 {
        self.bits_processed
    }

    pub fn total_runs(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn max_run(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// Fraction of runs strictly shorter than `l`.
    pub fn fraction_of_runs_below(&self, l: usize) -> f64 {
        let below: u64 = self.counts.range(..l).map(|(_, &c)| c).sum();
        below as f64 / self.total_runs().max(1) as f64
    }

    /// Fraction of bits lying in runs strictly shorter than `l`.
    pub fn fraction_of_bits_below(&self, l: usize) -> f64 {
        let below: u64 = self.counts.range(..l).map(|(&k, &c)| k as u64 * c).sum();
        below as f64 / self.bits_processed.max(1) as f64
    }

    /// CSV with columns `l,count`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("l,count\n");
        for (l, c) in &self.counts {
            let _ = writeln!(out, "{l},{c}");
        }
        out
    }
}

/// Histogram over frames `0..frame_count` of `frame_source`.
pub fn run_length_histogram<F>(frame_source: F, frame_count: u64) -> Result<RunLengthHistogram>
where
    F: Fn(u64) -> Result<Vec<u8>> + Sync,
{
    if frame_count == 0 {
        return Err(Error::param("frame count must be at least 1"));
    }
    (0..frame_count)
        .into_par_iter()
        .try_fold(RunLengthHistogram::new, |mut h, i| {
            h.add_frame(&frame_source(i)?);
            Ok(h)
        })
        .try_reduce(RunLengthHistogram::new, |mut a, b| {
            a.merge(&b);
            Ok(a)
        })
}

/// Fraction of frames holding a run longer than `l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FailureRate {
    pub l: usize,
    pub failing_frames: u64,
    pub frames: u64,
    pub rate: f64,
    /// `failing_frames` reached the requested minimum before the frame cap.
    pub saturated: bool,
}

/// Failure rates for every `l` in `0..=max_l` from one shared frame stream.
///
/// Frames are consumed in index order; the estimate for `l` stops at the
/// frame that brings its failure count to `min_failures`, or at
/// `max_frames`. A frame failing `l + 1` also fails `l`, so on the shared
/// stream the rates are non-increasing in `l`.
pub fn rll_failure_curve<F>(
    frame_source: F,
    max_l: usize,
    min_failures: u64,
    max_frames: u64,
) -> Result<Vec<FailureRate>>
where
    F: Fn(u64) -> Result<Vec<u8>> + Sync,
{
    if min_failures == 0 || max_frames == 0 {
        return Err(Error::param(
            "min failures and max frames must be at least 1",
        ));
    }
    let mut curve: Vec<FailureRate> = (0..=max_l)
        .map(|l| FailureRate {
            l,
            failing_frames: 0,
            frames: 0,
            rate: 0.0,
            saturated: false,
        })
        .collect();
    let batch = 256 * rayon::current_num_threads() as u64;
    let mut next = 0u64;
    while next < max_frames && curve.iter().any(|c| !c.saturated) {
        let end = (next + batch).min(max_frames);
        let runs: Vec<usize> = (next..end)
            .into_par_iter()
            .map(|i| frame_source(i).map(|f| max_run(&f)))
            .collect::<Result<_>>()?;
        for longest in runs {
            for c in curve.iter_mut().filter(|c| !c.saturated) {
                c.frames += 1;
                if longest > c.l {
                    c.failing_frames += 1;
                    c.saturated = c.failing_frames >= min_failures;
                }
            }
        }
        next = end;
    }
    for c in &mut curve {
        c.rate = c.failing_frames as f64 / c.frames as f64;
    }
    Ok(curve)
}

pub fn rll_failure_rate<F>(
    frame_source: F,
    l: usize,
    min_failures: u64,
    max_frames: u64,
) -> Result<FailureRate>
where
    F: Fn(u64) -> Result<Vec<u8>> + Sync,
{
    let curve = rll_failure_curve(frame_source, l, min_failures, max_frames)?;
    Ok(curve[l])
}

/// CSV with columns `l,failure_rate,failing_frames,frames,saturated`.
pub fn failure_curve_to_csv(curve: &[FailureRate]) -> String {
    let mut out = String::from("l,failure_rate,failing_frames,frames,saturated\n");
    for c in curve {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            c.l,
            format_sig(c.rate),
            c.failing_frames,
            c.frames,
            c.saturated
        );
    }
    out
}
