//! Knuth's balancing algorithm.
//!
//! Flipping the first `e` bits of a word `x` changes its disparity from
//! `d(x)` to `d(x) - 2·d_e(x)`, and the running digital sum moves in steps of
//! ±1, so for even length some `e` in `1..=N` always yields disparity zero.
//! The receiver needs `e`, which travels as a `⌈log2 N⌉`-bit index.
//!
//! Disparity uses the bipolar map `1 → +1`, `0 → -1`. This is unrelated to the
//! channel's BPSK mapping (`0 → +1`).

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedFrame {
    pub balanced_word: Vec<u8>,
    /// Number of leading bits that were inverted, in `1..=N`.
    pub flip_index: usize,
    /// `flip_index mod N`, most significant bit first.
    pub index_bits: Vec<u8>,
}

#[inline]
fn bipolar(bit: u8) -> i64 {
    if bit & 1 == 1 {
        1
    } else {
        -1
    }
}

pub fn disparity(word: &[u8]) -> i64 {
    word.iter().map(|&b| bipolar(b)).sum()
}

/// Disparity `d(x)` and the running digital sums `d_1(x), …, d_N(x)`.
pub fn disparity_profile(word: &[u8]) -> (i64, Vec<i64>) {
    let rds: Vec<i64> = word
        .iter()
        .scan(0i64, |acc, &b| {
            *acc += bipolar(b);
            Some(*acc)
        })
        .collect();
    (rds.last().copied().unwrap_or(0), rds)
}

/// `⌈log2 N⌉`, the width of the transmitted flip index.
pub fn index_width(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

pub fn encode_index(flip_index: usize, n: usize) -> Vec<u8> {
    let value = flip_index % n;
    let width = index_width(n);
    (0..width).rev().map(|b| ((value >> b) & 1) as u8).collect()
}

/// Inverse of [`encode_index`]: zero means `N`.
///
/// When `N` is not a power of two some patterns exceed `N`; they are mapped
/// to `N` (a mis-decoded prefix cannot be detected either way).
pub fn decode_index(index_bits: &[u8], n: usize) -> Result<usize> {
    Error::check_len("index bits", index_width(n), index_bits.len())?;
    let value = index_bits
        .iter()
        .fold(0usize, |acc, &b| (acc << 1) | (b & 1) as usize);
    Ok(if value == 0 || value > n { n } else { value })
}

/// Balances `word` by inverting its shortest balancing prefix.
pub fn balance(word: &[u8]) -> Result<BalancedFrame> {
    let n = word.len();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::param(format!(
            "word length {n} must be even and positive"
        )));
    }
    let target = disparity(word) / 2;
    let mut rds = 0i64;
    let mut flip_index = n;
    for (j, &b) in word.iter().enumerate() {
        rds += bipolar(b);
        if rds == target {
            flip_index = j + 1;
            break;
        }
    }
    let mut balanced_word = word.to_vec();
    for b in &mut balanced_word[..flip_index] {
        *b ^= 1;
    }
    Ok(BalancedFrame {
        balanced_word,
        flip_index,
        index_bits: encode_index(flip_index, n),
    })
}

/// Re-inverts the first `flip_index` bits.
pub fn unbalance(balanced_word: &[u8], flip_index: usize) -> Result<Vec<u8>> {
    if flip_index == 0 || flip_index > balanced_word.len() {
        return Err(Error::param(format!(
            "flip index {flip_index} outside 1..={}",
            balanced_word.len()
        )));
    }
    let mut word = balanced_word.to_vec();
    for b in &mut word[..flip_index] {
        *b ^= 1;
    }
    Ok(word)
}

/// Redundancy of the full set of balanced words, `N - log2 C(N, N/2)`.
pub fn min_balanced_redundancy(n: usize) -> Result<f64> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::param(format!(
            "length {n} must be even and positive"
        )));
    }
    let half = n / 2;
    let log2_binomial: f64 = (1..=half)
        .map(|i| ((half + i) as f64 / i as f64).log2())
        .sum();
    Ok(n as f64 - log2_binomial)
}
