//! Transmitter and receiver pipelines.
//!
//! Proposed scheme: polar-encode the message (`x`), balance it with Knuth's
//! algorithm (`x'`, flip index `e`), polar-encode the `⌈log2 N⌉`-bit index
//! with a second code (`p'`) and append its complement (`p''`). The wire
//! word is `s = x'·p'·p''` of length `S = N + 2p'`, balanced by construction.
//!
//! At the receiver the prefix pairs are combined positionally as
//! `l'_i - l''_i` (soft Manchester), the prefix is SC-decoded to `ê`, the first
//! `ê` main LLRs are negated, and the main code is SC-decoded.
//!
//! The baselines concatenate the main polar code with a 1b2b or 4b6b line
//! code whose soft outputs feed the SC decoder. `Plain` sends the polar
//! codeword alone.

use std::fmt;
use std::str::FromStr;

use crate::balancing::{balance, decode_index, index_width};
use crate::error::{Error, Result};
use crate::polar::{construct_shortened, encode, PolarCodeSpec, ScDecoder};
use crate::rll::{decode_1b2b_soft, decode_4b6b_app, encode_1b2b, encode_4b6b};
use crate::scalar::Real;
use crate::soft::SoftVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Proposed,
    Manchester,
    FourBSixB,
    Plain,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Proposed => "proposed",
            Variant::Manchester => "1b2b",
            Variant::FourBSixB => "4b6b",
            Variant::Plain => "polar",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proposed" => Ok(Variant::Proposed),
            "1b2b" | "manchester" => Ok(Variant::Manchester),
            "4b6b" => Ok(Variant::FourBSixB),
            "polar" | "plain" => Ok(Variant::Plain),
            other => Err(Error::param(format!("unknown variant `{other}`"))),
        }
    }
}

/// A configured transmission scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct Scheme {
    variant: Variant,
    main: PolarCodeSpec,
    prefix: Option<PolarCodeSpec>,
}

/// Everything the transmitter produced for one message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransmitFrame {
    pub bits: Vec<u8>,
    /// Balancing metadata, proposed scheme only.
    pub flip_index: Option<usize>,
    pub index_bits: Vec<u8>,
    pub prefix_codeword: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Received {
    pub message: Vec<u8>,
    /// Decoded flip index `ê`, proposed scheme only.
    pub flip_index: Option<usize>,
}

impl Scheme {
    pub fn proposed(main: PolarCodeSpec, prefix: PolarCodeSpec) -> Result<Self> {
        let n = main.code_length();
        if !n.is_multiple_of(2) {
            return Err(Error::param(format!("main code length {n} must be even")));
        }
        let p = index_width(n);
        if prefix.info_count() != p {
            return Err(Error::param(format!(
                "prefix code carries {} bits but a flip index for N = {n} needs {p}",
                prefix.info_count()
            )));
        }
        Ok(Scheme {
            variant: Variant::Proposed,
            main,
            prefix: Some(prefix),
        })
    }

    pub fn baseline(variant: Variant, main: PolarCodeSpec) -> Result<Self> {
        match variant {
            Variant::Proposed => Err(Error::param("the proposed scheme needs a prefix code")),
            Variant::FourBSixB if !main.code_length().is_multiple_of(4) => Err(Error::param(format!(
                "4b6b needs a code length divisible by 4, got {}",
                main.code_length()
            ))),
            _ => Ok(Scheme {
                variant,
                main,
                prefix: None,
            }),
        }
    }

    /// Builds the codes by GA at `design_snr_db` (Eb/N0).
    ///
    /// Each code is designed for the noise it actually sees: the symbol-level
    /// noise of the overall rate, doubled mean for the soft-Manchester prefix
    /// and 1b2b, and 1.5× for 4b6b (a Gaussian stand-in for its APP output).
    pub fn design(
        variant: Variant,
        n: usize,
        k: usize,
        prefix_n: Option<usize>,
        design_snr_db: f64,
    ) -> Result<Self> {
        let transmitted = match (variant, prefix_n) {
            (Variant::Proposed, Some(pn)) => n + 2 * pn,
            (Variant::Proposed, None) => {
                return Err(Error::param(
                    "the proposed scheme needs a prefix code length",
                ))
            }
            (_, Some(_)) => {
                return Err(Error::param(format!(
                    "a prefix code is meaningless for the {variant} variant"
                )))
            }
            (Variant::Manchester, None) => 2 * n,
            (Variant::FourBSixB, None) => n / 4 * 6,
            (Variant::Plain, None) => n,
        };
        if k == 0 || k > n {
            return Err(Error::param(format!("info count {k} must be in 1..={n}")));
        }
        let rate = k as f64 / transmitted as f64;
        let main_rate = match variant {
            Variant::Proposed | Variant::Plain => rate,
            Variant::Manchester => 2.0 * rate,
            Variant::FourBSixB => 1.5 * rate,
        };
        let (main, _) = construct_shortened(n, k, design_snr_db, main_rate)?;
        match (variant, prefix_n) {
            (Variant::Proposed, Some(pn)) => {
                let p = index_width(n);
                if pn < p {
                    return Err(Error::param(format!(
                        "prefix code length {pn} cannot carry {p} index bits"
                    )));
                }
                let (prefix, _) = construct_shortened(pn, p, design_snr_db, 2.0 * rate)?;
                Scheme::proposed(main, prefix)
            }
            _ => Scheme::baseline(variant, main),
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn main_code(&self) -> &PolarCodeSpec {
        &self.main
    }

    pub fn prefix_code(&self) -> Option<&PolarCodeSpec> {
        self.prefix.as_ref()
    }

    /// `p'`, or 0 without a prefix code.
    pub fn prefix_length(&self) -> usize {
        self.prefix.as_ref().map_or(0, PolarCodeSpec::code_length)
    }

    pub fn info_count(&self) -> usize {
        self.main.info_count()
    }

    /// Transmitted word length `S`.
    pub fn transmitted_len(&self) -> usize {
        let n = self.main.code_length();
        match self.variant {
            Variant::Proposed => n + 2 * self.prefix_length(),
            Variant::Manchester => 2 * n,
            Variant::FourBSixB => n / 4 * 6,
            Variant::Plain => n,
        }
    }

    /// `K / S`.
    pub fn overall_rate(&self) -> f64 {
        self.info_count() as f64 / self.transmitted_len() as f64
    }

    pub fn transmit(&self, message: &[u8]) -> Result<Vec<u8>> {
        self.transmit_frame(message).map(|f| f.bits)
    }

    pub fn transmit_frame(&self, message: &[u8]) -> Result<TransmitFrame> {
        let x = encode(&self.main, message)?;
        let mut frame = TransmitFrame {
            bits: Vec::new(),
            flip_index: None,
            index_bits: Vec::new(),
            prefix_codeword: Vec::new(),
        };
        match (self.variant, &self.prefix) {
            (Variant::Proposed, Some(prefix)) => {
                let balanced = balance(&x)?;
                let p_prime = encode(prefix, &balanced.index_bits)?;
                let mut bits = balanced.balanced_word;
                bits.reserve(2 * p_prime.len());
                bits.extend_from_slice(&p_prime);
                bits.extend(p_prime.iter().map(|&b| b ^ 1));
                frame.bits = bits;
                frame.flip_index = Some(balanced.flip_index);
                frame.index_bits = balanced.index_bits;
                frame.prefix_codeword = p_prime;
            }
            (Variant::Manchester, _) => frame.bits = encode_1b2b(&x),
            (Variant::FourBSixB, _) => frame.bits = encode_4b6b(&x)?,
            _ => frame.bits = x,
        }
        Ok(frame)
    }

    pub fn receive<T: Real>(&self, llrs: &[T]) -> Result<Received> {
        self.receive_with(llrs, &mut ScDecoder::default())
    }

    /// Receiver using caller-owned decoder memory.
    pub fn receive_with<T: Real>(
        &self,
        llrs: &[T],
        decoder: &mut ScDecoder<T>,
    ) -> Result<Received> {
        Error::check_len("received LLRs", self.transmitted_len(), llrs.len())?;
        let n = self.main.code_length();
        let (main_llrs, flip_index) = match (self.variant, &self.prefix) {
            (Variant::Proposed, Some(prefix)) => {
                let (main, pairs) = llrs.split_at(n);
                let (first, second) = pairs.split_at(prefix.code_length());
                let combined: Vec<T> = first.iter().zip(second).map(|(&a, &b)| a - b).collect();
                let index_bits = decoder.decode(prefix, &combined)?.message;
                let e = decode_index(&index_bits, n)?;
                let mut soft = SoftVector::new(main.to_vec());
                soft.negate_prefix(e);
                (soft, Some(e))
            }
            (Variant::Manchester, _) => (decode_1b2b_soft(llrs)?, None),
            (Variant::FourBSixB, _) => (decode_4b6b_app(llrs)?, None),
            _ => (SoftVector::new(llrs.to_vec()), None),
        };
        let out = decoder.decode(&self.main, &main_llrs)?;
        Ok(Received {
            message: out.message,
            flip_index,
        })
    }
}
