use super::code::PolarCodeSpec;
use crate::error::{Error, Result};

/// In-place `x = u·F2^{⊗n}` over GF(2), natural index order.
pub fn polar_transform(bits: &mut [u8]) {
    let n = bits.len();
    debug_assert!(n.is_power_of_two());
    let mut half = 1;
    while half < n {
        for block in bits.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, &b) in lo.iter_mut().zip(hi.iter()) {
                *a ^= b;
            }
        }
        half *= 2;
    }
}

/// Scatters `message` into a mother-length input vector `u`, zeros elsewhere.
pub fn encode_input(spec: &PolarCodeSpec, message: &[u8]) -> Result<Vec<u8>> {
    Error::check_len("message", spec.info_count(), message.len())?;
    let mut u = vec![0u8; spec.mother_length()];
    for (&pos, &bit) in spec.info_set().iter().zip(message) {
        u[pos] = bit & 1;
    }
    Ok(u)
}

/// Encodes `K` message bits into the `N` transmitted code bits.
pub fn encode(spec: &PolarCodeSpec, message: &[u8]) -> Result<Vec<u8>> {
    let mut x = encode_input(spec, message)?;
    polar_transform(&mut x);
    debug_assert!(x[spec.code_length()..].iter().all(|&b| b == 0));
    x.truncate(spec.code_length());
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::{construct_ga, shorten};
    use proptest::prelude::*;

    /// Explicit Kronecker power of F2 = [[1,0],[1,1]].
    fn generator(n: usize) -> Vec<Vec<u8>> {
        let mut g = vec![vec![1u8]];
        while g.len() < n {
            let m = g.len();
            let mut next = vec![vec![0u8; 2 * m]; 2 * m];
            for i in 0..m {
                for j in 0..m {
                    next[i][j] = g[i][j];
                    next[i + m][j] = g[i][j];
                    next[i + m][j + m] = g[i][j];
                }
            }
            g = next;
        }
        g
    }

    fn matmul(u: &[u8], g: &[Vec<u8>]) -> Vec<u8> {
        (0..g.len())
            .map(|j| {
                u.iter()
                    .zip(g)
                    .fold(0, |acc, (&ui, row)| acc ^ (ui & row[j]))
            })
            .collect()
    }

    #[test]
    fn length_two_bottom_row() {
        let spec = PolarCodeSpec::from_info_set(2, 2, &[1]).unwrap();
        assert_eq!(encode(&spec, &[1]).unwrap(), vec![1, 1]);
    }

    #[test]
    fn single_info_bit_on_last_row_is_all_ones() {
        let spec = PolarCodeSpec::from_info_set(4, 4, &[3]).unwrap();
        assert_eq!(encode(&spec, &[1]).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn matches_explicit_matrix_multiply() {
        let mut u = vec![0, 1, 0, 1];
        let expected = matmul(&u, &generator(4));
        assert_eq!(expected, vec![0, 0, 1, 1]);
        polar_transform(&mut u);
        assert_eq!(u, expected);

        for n in [8usize, 16, 32] {
            let g = generator(n);
            for seed in 0..64u64 {
                let mut u: Vec<u8> = (0..n)
                    .map(|i| ((seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> (i % 64)) & 1) as u8)
                    .collect();
                let expected = matmul(&u, &g);
                polar_transform(&mut u);
                assert_eq!(u, expected);
            }
        }
    }

    #[test]
    fn wrong_message_length() {
        let spec = PolarCodeSpec::from_info_set(4, 4, &[2, 3]).unwrap();
        assert!(matches!(
            encode(&spec, &[1]),
            Err(Error::LengthMismatch {
                expected: 2,
                actual: 1,
                ..
            })
        ));
    }

    #[test]
    fn shortened_positions_are_always_zero() {
        // Exhaustive over all 2^K messages of PC(6, K) from an 8-bit mother.
        for k in 1..=4 {
            let (mother, _) = construct_ga(8, k, 1.0, 0.5).unwrap();
            let spec = shorten(&mother, 6).unwrap();
            for m in 0u32..(1 << k) {
                let msg: Vec<u8> = (0..k).map(|i| (m >> i & 1) as u8).collect();
                let mut full = encode_input(&spec, &msg).unwrap();
                polar_transform(&mut full);
                assert_eq!(&full[6..], &[0, 0]);
                assert_eq!(encode(&spec, &msg).unwrap(), full[..6]);
            }
        }
    }

    #[test]
    fn linear_exhaustive_small() {
        let (spec, _) = construct_ga(16, 6, 2.0, 0.5).unwrap();
        let all: Vec<Vec<u8>> = (0u32..64)
            .map(|m| (0..6).map(|i| (m >> i & 1) as u8).collect())
            .collect();
        let code: Vec<Vec<u8>> = all.iter().map(|m| encode(&spec, m).unwrap()).collect();
        for a in 0..64 {
            for b in 0..64 {
                let sum: Vec<u8> = all[a].iter().zip(&all[b]).map(|(x, y)| x ^ y).collect();
                let xor: Vec<u8> = code[a].iter().zip(&code[b]).map(|(x, y)| x ^ y).collect();
                assert_eq!(code[a ^ b], xor);
                assert_eq!(encode(&spec, &sum).unwrap(), xor);
            }
        }
    }

    proptest! {
        #[test]
        fn linear_over_random_pairs(a in prop::collection::vec(0u8..2, 8), b in prop::collection::vec(0u8..2, 8)) {
            let (mother, _) = construct_ga(32, 8, 1.0, 0.5).unwrap();
            for spec in [mother.clone(), shorten(&mother, 26).unwrap()] {
                let sum: Vec<u8> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
                let ea = encode(&spec, &a).unwrap();
                let eb = encode(&spec, &b).unwrap();
                let xor: Vec<u8> = ea.iter().zip(&eb).map(|(x, y)| x ^ y).collect();
                prop_assert_eq!(encode(&spec, &sum).unwrap(), xor);
            }
        }
    }
}
