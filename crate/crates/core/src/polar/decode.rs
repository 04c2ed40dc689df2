use super::code::PolarCodeSpec;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::soft::hard_bit;

/// LLR magnitude standing in for certainty (shortened, known-zero bits).
pub const SATURATION_LLR: f64 = 1.0e3;

/// Check-node update used by the decoder.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum CheckNode {
    /// `2·atanh(tanh(a/2)·tanh(b/2))`, evaluated in a form that stays finite
    /// for large magnitudes.
    #[default]
    Exact,
    /// `sign(a)·sign(b)·min(|a|, |b|)`.
    MinSum,
}

impl CheckNode {
    #[inline]
    pub fn combine<T: Real>(self, a: T, b: T) -> T {
        let mag = a.abs().min(b.abs());
        let signed = if (a < T::zero()) != (b < T::zero()) {
            -mag
        } else {
            mag
        };
        match self {
            CheckNode::MinSum => signed,
            CheckNode::Exact => {
                signed + (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p()
            }
        }
    }
}

/// `g(a, b, û) = b + (1 - 2û)·a`.
#[inline]
fn variable_node<T: Real>(a: T, b: T, partial: u8) -> T {
    if partial == 0 {
        b + a
    } else {
        b - a
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScOutput {
    pub message: Vec<u8>,
    /// Re-encoded estimate of the `N` transmitted code bits.
    pub codeword: Vec<u8>,
    /// Number of f and g evaluations: `N_mother·log2(N_mother)`.
    pub ops: u64,
}

/// Successive-cancellation decoder with reusable working memory.
///
/// One decoder per worker thread; the code spec is passed per call.
#[derive(Debug, Clone, Default)]
pub struct ScDecoder<T> {
    check: CheckNode,
    llr: Vec<T>,
    scratch: Vec<T>,
    u_hat: Vec<u8>,
    x_hat: Vec<u8>,
}

impl<T: Real> ScDecoder<T> {
    pub fn new(check: CheckNode) -> Self {
        ScDecoder {
            check,
            llr: Vec::new(),
            scratch: Vec::new(),
            u_hat: Vec::new(),
            x_hat: Vec::new(),
        }
    }

    pub fn decode(&mut self, spec: &PolarCodeSpec, channel_llrs: &[T]) -> Result<ScOutput> {
        let n = spec.code_length();
        Error::check_len("channel LLRs", n, channel_llrs.len())?;
        let mother = spec.mother_length();

        self.llr.clear();
        self.llr.extend_from_slice(channel_llrs);
        self.llr.resize(mother, T::of(SATURATION_LLR));
        self.scratch
            .resize(mother.saturating_sub(1).max(1), T::zero());
        self.u_hat.resize(mother, 0);
        self.x_hat.resize(mother, 0);

        let mut ops = 0u64;
        sc_node(
            self.check,
            &self.llr,
            &mut self.scratch,
            spec.frozen_mask(),
            &mut self.u_hat,
            &mut self.x_hat,
            &mut ops,
        );

        Ok(ScOutput {
            message: spec.info_set().iter().map(|&i| self.u_hat[i]).collect(),
            codeword: self.x_hat[..n].to_vec(),
            ops,
        })
    }
}

/// Decodes the subtree whose channel LLRs are `llr`; writes input decisions
/// to `u_hat` and the subtree's re-encoded bits to `x_hat`.
fn sc_node<T: Real>(
    check: CheckNode,
    llr: &[T],
    scratch: &mut [T],
    frozen: &[bool],
    u_hat: &mut [u8],
    x_hat: &mut [u8],
    ops: &mut u64,
) {
    let len = llr.len();
    if len == 1 {
        let bit = if frozen[0] { 0 } else { hard_bit(llr[0]) };
        u_hat[0] = bit;
        x_hat[0] = bit;
        return;
    }
    let h = len / 2;
    let (child, rest) = scratch.split_at_mut(h);
    let (top, bottom) = llr.split_at(h);

    for ((c, &a), &b) in child.iter_mut().zip(top).zip(bottom) {
        *c = check.combine(a, b);
    }
    *ops += h as u64;
    sc_node(
        check,
        child,
        rest,
        &frozen[..h],
        &mut u_hat[..h],
        &mut x_hat[..h],
        ops,
    );

    for (((c, &a), &b), &x) in child.iter_mut().zip(top).zip(bottom).zip(&x_hat[..h]) {
        *c = variable_node(a, b, x);
    }
    *ops += h as u64;
    let (x_top, x_bottom) = x_hat.split_at_mut(h);
    sc_node(
        check,
        child,
        rest,
        &frozen[h..],
        &mut u_hat[h..],
        x_bottom,
        ops,
    );

    for (a, &b) in x_top.iter_mut().zip(x_bottom.iter()) {
        *a ^= b;
    }
}

/// One-shot SC decode with the exact check-node update.
pub fn decode_sc<T: Real>(spec: &PolarCodeSpec, channel_llrs: &[T]) -> Result<ScOutput> {
    ScDecoder::new(CheckNode::Exact).decode(spec, channel_llrs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::{construct_ga, encode, encode_input, polar_transform, shorten};
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn noiseless(bits: &[u8], mag: f64) -> Vec<f64> {
        bits.iter()
            .map(|&b| if b == 0 { mag } else { -mag })
            .collect()
    }

    #[test]
    fn exact_check_node_matches_tanh_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let a: f64 = rng.gen_range(-12.0..12.0);
            let b: f64 = rng.gen_range(-12.0..12.0);
            let tanh_rule = 2.0 * ((a / 2.0).tanh() * (b / 2.0).tanh()).atanh();
            assert_relative_eq!(
                CheckNode::Exact.combine(a, b),
                tanh_rule,
                epsilon = 1e-9,
                max_relative = 1e-9
            );
        }
        assert!(CheckNode::Exact.combine(900.0f32, -1000.0).is_finite());
        assert_eq!(CheckNode::MinSum.combine(-3.0f64, 2.0), -2.0);
    }

    #[test]
    fn length_two_worked_example() {
        let spec = PolarCodeSpec::from_info_set(2, 2, &[1]).unwrap();
        let out = decode_sc(&spec, &[1.0f64, -2.0]).unwrap();
        assert_eq!(out.message, vec![1]);
        assert_eq!(out.codeword, vec![1, 1]);
        // ML over {00, 11}: correlation +1 - 2 = -1 for 00, +1 for 11.
    }

    #[test]
    fn length_mismatch() {
        let spec = PolarCodeSpec::from_info_set(4, 4, &[3]).unwrap();
        assert!(decode_sc(&spec, &[1.0f64; 3]).is_err());
    }

    #[test]
    fn noiseless_round_trip_all_messages() {
        let (spec, _) = construct_ga(16, 8, 2.0, 0.5).unwrap();
        for m in 0u32..256 {
            let msg: Vec<u8> = (0..8).map(|i| (m >> i & 1) as u8).collect();
            let x = encode(&spec, &msg).unwrap();
            let out = decode_sc(&spec, &noiseless(&x, 20.0)).unwrap();
            assert_eq!(out.message, msg);
            assert_eq!(out.codeword, x);
            let out32 = ScDecoder::<f32>::new(CheckNode::MinSum)
                .decode(
                    &spec,
                    &noiseless(&x, 20.0)
                        .iter()
                        .map(|&v| v as f32)
                        .collect::<Vec<_>>(),
                )
                .unwrap();
            assert_eq!(out32.message, msg);
        }
    }

    #[test]
    fn op_count_is_n_log_n() {
        for n in 0..=10 {
            let len = 1usize << n;
            let (spec, _) = construct_ga(len, (len / 2).max(1), 1.0, 0.5).unwrap();
            let out = decode_sc(&spec, &vec![0.5f64; len]).unwrap();
            assert_eq!(out.ops, (len * n) as u64);
        }
    }

    /// Exact bit-channel LLR of `u_i` given `u_0..u_{i-1}`, marginalizing the
    /// later inputs (frozen or not) uniformly, by enumeration of all inputs.
    fn brute_force_sc(spec: &PolarCodeSpec, llrs: &[f64]) -> Vec<u8> {
        let n = spec.mother_length();
        let log_lik = |u: &[u8]| -> f64 {
            let mut x = u.to_vec();
            polar_transform(&mut x);
            x.iter()
                .zip(llrs)
                .map(|(&b, &l)| if b == 0 { l / 2.0 } else { -l / 2.0 })
                .sum()
        };
        let mut decided: Vec<u8> = Vec::new();
        for i in 0..n {
            let bit = if spec.frozen_mask()[i] {
                0
            } else {
                let mut sums = [0.0f64; 2];
                let free = n - i - 1;
                for v in 0..2u8 {
                    for tail in 0u32..(1 << free) {
                        let mut u = decided.clone();
                        u.push(v);
                        u.extend((0..free).map(|t| (tail >> t & 1) as u8));
                        sums[v as usize] += log_lik(&u).exp();
                    }
                }
                if sums[0] >= sums[1] {
                    0
                } else {
                    1
                }
            };
            decided.push(bit);
        }
        spec.info_set().iter().map(|&i| decided[i]).collect()
    }

    #[test]
    fn matches_exhaustive_successive_marginalization() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (n, k) in [(4usize, 2usize), (8, 4), (8, 5)] {
            let (spec, _) = construct_ga(n, k, 1.0, 0.5).unwrap();
            for _ in 0..1000 {
                let llrs: Vec<f64> = (0..n).map(|_| rng.gen_range(-4.0..4.0)).collect();
                let out = decode_sc(&spec, &llrs).unwrap();
                assert_eq!(out.message, brute_force_sc(&spec, &llrs), "llrs {llrs:?}");
                let mut u = encode_input(&spec, &out.message).unwrap();
                polar_transform(&mut u);
                assert_eq!(out.codeword, u);
            }
        }
    }

    #[test]
    fn shortened_decode_equals_saturated_mother_decode() {
        let (mother, _) = construct_ga(16, 7, 1.0, 0.5).unwrap();
        let short = shorten(&mother, 12).unwrap();
        let as_mother = PolarCodeSpec::from_info_set(16, 16, short.info_set()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let llrs: Vec<f64> = (0..12).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let mut padded = llrs.clone();
            padded.resize(16, SATURATION_LLR);
            let a = decode_sc(&short, &llrs).unwrap();
            let b = decode_sc(&as_mother, &padded).unwrap();
            assert_eq!(a.message, b.message);
            assert_eq!(a.codeword, b.codeword[..12]);
        }
    }

    #[test]
    fn shortened_noiseless_round_trip() {
        let (mother, _) = construct_ga(32, 10, 1.0, 0.5).unwrap();
        let spec = shorten(&mother, 22).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let msg: Vec<u8> = (0..10).map(|_| rng.gen_range(0..2)).collect();
            let x = encode(&spec, &msg).unwrap();
            assert_eq!(decode_sc(&spec, &noiseless(&x, 8.0)).unwrap().message, msg);
        }
    }
}
