use std::ops::{Deref, DerefMut};

use crate::scalar::Real;

/// A sequence of log-likelihood ratios.
///
/// Sign convention, fixed across the crate: `LLR = ln P(bit = 0) / P(bit = 1)`,
/// so a positive value favors bit 0.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SoftVector<T>(Vec<T>);

impl<T: Real> SoftVector<T> {
    pub fn new(values: Vec<T>) -> Self {
        SoftVector(values)
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    /// Hard decision: non-negative LLR decides 0.
    pub fn hard_decision(&self) -> Vec<u8> {
        self.0.iter().map(|&l| hard_bit(l)).collect()
    }

    /// Negates the first `count` entries (the soft counterpart of flipping bits).
    pub fn negate_prefix(&mut self, count: usize) {
        for l in self.0.iter_mut().take(count) {
            *l = -*l;
        }
    }
}

impl<T> Deref for SoftVector<T> {
    type Target = [T];

    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> DerefMut for SoftVector<T> {
    fn deref_mut(&mut self) -> &mut [T] {
        &mut self.0
    }
}

impl<T> From<Vec<T>> for SoftVector<T> {
    fn from(values: Vec<T>) -> Self {
        SoftVector(values)
    }
}

impl<T> FromIterator<T> for SoftVector<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        SoftVector(iter.into_iter().collect())
    }
}

#[inline]
pub fn hard_bit<T: Real>(llr: T) -> u8 {
    if llr >= T::zero() {
        0
    } else {
        1
    }
}
