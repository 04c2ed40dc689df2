use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Channel condition a code was constructed for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Design {
    pub snr_db: f64,
    /// Rate used to convert `snr_db` (an Eb/N0) into a noise variance.
    pub rate: f64,
}

/// A (possibly shortened) polar code: `PC(N, K)` built on a mother code of
/// length `N_mother = 2^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarCodeSpec {
    mother_length: usize,
    code_length: usize,
    info_set: Vec<usize>,
    frozen_set: Vec<usize>,
    shortened_set: Vec<usize>,
    frozen_mask: Vec<bool>,
    /// Permutation of `0..N_mother`, most reliable synthetic channel first.
    reliability_order: Vec<usize>,
    design: Option<Design>,
}

impl PolarCodeSpec {
    /// Builds a code from an explicit information set.
    ///
    /// Indices `code_length..mother_length` are shortened and may not carry
    /// information.
    pub fn from_info_set(
        mother_length: usize,
        code_length: usize,
        info_set: &[usize],
    ) -> Result<Self> {
        let mut order: Vec<usize> = info_set.to_vec();
        let mut seen = vec![false; mother_length];
        for &i in info_set {
            if i < mother_length {
                seen[i] = true;
            }
        }
        order.extend((0..mother_length).filter(|&i| !seen[i]));
        Self::build(mother_length, code_length, info_set.to_vec(), order, None)
    }

    pub(crate) fn build(
        mother_length: usize,
        code_length: usize,
        mut info_set: Vec<usize>,
        reliability_order: Vec<usize>,
        design: Option<Design>,
    ) -> Result<Self> {
        if mother_length == 0 || !mother_length.is_power_of_two() {
            return Err(Error::param(format!(
                "mother length {mother_length} is not a power of two"
            )));
        }
        if code_length == 0 || code_length > mother_length {
            return Err(Error::param(format!(
                "code length {code_length} must be in 1..={mother_length}"
            )));
        }
        let k = info_set.len();
        if k == 0 || k > code_length {
            return Err(Error::param(format!(
                "info count {k} must be in 1..={code_length}"
            )));
        }
        info_set.sort_unstable();
        if info_set.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::param("duplicate index in info set"));
        }
        if let Some(&bad) = info_set.iter().find(|&&i| i >= code_length) {
            return Err(Error::param(format!(
                "info index {bad} is outside the transmitted length {code_length}"
            )));
        }
        debug_assert_eq!(reliability_order.len(), mother_length);

        let mut frozen_mask = vec![true; mother_length];
        for &i in &info_set {
            frozen_mask[i] = false;
        }
        let frozen_set = (0..mother_length).filter(|&i| frozen_mask[i]).collect();
        Ok(PolarCodeSpec {
            mother_length,
            code_length,
            info_set,
            frozen_set,
            shortened_set: (code_length..mother_length).collect(),
            frozen_mask,
            reliability_order,
            design,
        })
    }

    pub fn mother_length(&self) -> usize {
        self.mother_length
    }

    /// Transmitted length `N`.
    pub fn code_length(&self) -> usize {
        self.code_length
    }

    pub fn info_count(&self) -> usize {
        self.info_set.len()
    }

    /// `K / N`.
    pub fn rate(&self) -> f64 {
        self.info_count() as f64 / self.code_length as f64
    }

    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    /// Frozen input indices, shortened ones included.
    pub fn frozen_set(&self) -> &[usize] {
        &self.frozen_set
    }

    pub fn shortened_set(&self) -> &[usize] {
        &self.shortened_set
    }

    pub fn is_shortened(&self) -> bool {
        self.code_length < self.mother_length
    }

    /// `true` at frozen input positions, indexed over the mother length.
    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen_mask
    }

    pub fn reliability_order(&self) -> &[usize] {
        &self.reliability_order
    }

    pub fn design(&self) -> Option<Design> {
        self.design
    }

    /// Plain-text form: `N_mother K N`, then the sorted info set, then the
    /// shortened set, one line each with space-separated indices.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} {} {}",
            self.mother_length,
            self.info_count(),
            self.code_length
        );
        out.push_str(&join(&self.info_set));
        out.push('\n');
        out.push_str(&join(&self.shortened_set));
        out.push('\n');
        out
    }

    /// Parses the format written by [`PolarCodeSpec::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = parse_indices(lines.next().unwrap_or(""))?;
        let [mother, k, n] = header[..] else {
            return Err(Error::Parse("header must be `N_mother K N`".into()));
        };
        let info = parse_indices(lines.next().unwrap_or(""))?;
        let shortened = parse_indices(lines.next().unwrap_or(""))?;
        if info.len() != k {
            return Err(Error::Parse(format!(
                "header announces K = {k} but {} info indices follow",
                info.len()
            )));
        }
        if shortened != (n..mother).collect::<Vec<_>>() {
            return Err(Error::Parse(format!(
                "shortened set must be the indices {n}..{mother}"
            )));
        }
        Self::from_info_set(mother, n, &info)
    }
}

fn join(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_indices(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad index `{t}`: {e}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_spec_partitions_indices() {
        let spec = PolarCodeSpec::from_info_set(8, 6, &[5, 3, 4]).unwrap();
        assert_eq!(spec.info_set(), &[3, 4, 5]);
        assert_eq!(spec.frozen_set(), &[0, 1, 2, 6, 7]);
        assert_eq!(spec.shortened_set(), &[6, 7]);
        assert_eq!(spec.reliability_order()[..3], [5, 3, 4]);
        let mut order = spec.reliability_order().to_vec();
        order.sort_unstable();
        assert_eq!(order, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(PolarCodeSpec::from_info_set(6, 6, &[1]).is_err());
        assert!(PolarCodeSpec::from_info_set(8, 9, &[1]).is_err());
        assert!(PolarCodeSpec::from_info_set(8, 8, &[]).is_err());
        assert!(PolarCodeSpec::from_info_set(8, 8, &[1, 1]).is_err());
        // Shortened positions cannot carry information.
        assert!(PolarCodeSpec::from_info_set(8, 6, &[6]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let spec = PolarCodeSpec::from_info_set(8, 6, &[3, 4, 5]).unwrap();
        let text = spec.to_text();
        assert_eq!(text, "8 3 6\n3 4 5\n6 7\n");
        let back = PolarCodeSpec::from_text(&text).unwrap();
        assert_eq!(back.info_set(), spec.info_set());
        assert_eq!(back.code_length(), 6);

        let unshortened = PolarCodeSpec::from_info_set(4, 4, &[3]).unwrap();
        assert_eq!(unshortened.to_text(), "4 1 4\n3\n\n");
        assert!(PolarCodeSpec::from_text(&unshortened.to_text()).is_ok());
    }

    #[test]
    fn rejects_malformed_text() {
        assert!(PolarCodeSpec::from_text("8 3\n1 2 3\n\n").is_err());
        assert!(PolarCodeSpec::from_text("8 2 8\n1 2 3\n\n").is_err());
        assert!(PolarCodeSpec::from_text("8 1 6\n3\n7\n").is_err());
        assert!(PolarCodeSpec::from_text("8 1 8\nx\n\n").is_err());
    }
}
