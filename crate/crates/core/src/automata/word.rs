use alloc::vec::Vec;

use crate::alphabet::Letter;
use crate::error::{Error, Result};

/// The infinite word `u·v^ω` with `v` nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UltimatelyPeriodicWord {
    prefix: Vec<Letter>,
    period: Vec<Letter>,
}

impl UltimatelyPeriodicWord {
    pub fn new(prefix: Vec<Letter>, period: Vec<Letter>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Letter("lasso period must be nonempty".into()));
        }
        Ok(Self { prefix, period })
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    /// `|u| + |v|`.
    pub fn lasso_len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    /// Index into `u·v` of position `t` of the infinite word.
    pub fn lasso_position(&self, t: usize) -> usize {
        if t < self.prefix.len() {
            t
        } else {
            self.prefix.len() + (t - self.prefix.len()) % self.period.len()
        }
    }

    pub fn letter_at(&self, t: usize) -> &Letter {
        let p = self.lasso_position(t);
        if p < self.prefix.len() {
            &self.prefix[p]
        } else {
            &self.period[p - self.prefix.len()]
        }
    }

    /// The first `n` letters.
    pub fn take(&self, n: usize) -> Vec<Letter> {
        (0..n).map(|t| self.letter_at(t).clone()).collect()
    }

    /// Same infinite word with one period appended to the prefix.
    pub fn unrolled(&self) -> Self {
        let mut prefix = self.prefix.clone();
        prefix.extend(self.period.iter().cloned());
        Self {
            prefix,
            period: self.period.clone(),
        }
    }
}
