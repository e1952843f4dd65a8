//! Product alphabets, letters, channel masks, and agent sets.
//!
//! The global alphabet is the Cartesian product of one channel per agent. It
//! is never materialized: letters are tuples of symbol indices and are ranked
//! in mixed radix with channel 0 as the most significant digit, so iteration
//! order is lexicographic over the picks.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::error::{Error, Result};

/// Ordered list of per-agent symbol lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductAlphabet {
    channels: Vec<Vec<String>>,
}

impl ProductAlphabet {
    pub fn new(channels: Vec<Vec<String>>) -> Result<Self> {
        if channels.is_empty() {
            return Err(Error::Alphabet("at least one channel is required".into()));
        }
        for (i, ch) in channels.iter().enumerate() {
            if ch.is_empty() {
                return Err(Error::Alphabet(format!("channel {i} is empty")));
            }
            for (a, s) in ch.iter().enumerate() {
                if ch[..a].contains(s) {
                    return Err(Error::Alphabet(format!(
                        "symbol `{s}` repeated in channel {i}"
                    )));
                }
            }
        }
        Ok(Self { channels })
    }

    /// Convenience constructor from string slices.
    pub fn from_symbols(channels: &[&[&str]]) -> Result<Self> {
        Self::new(
            channels
                .iter()
                .map(|ch| ch.iter().map(|s| s.to_string()).collect())
                .collect(),
        )
    }

    pub fn num_channels(&self) -> usize {
        self.channels.len()
    }

    pub fn channel(&self, i: usize) -> &[String] {
        &self.channels[i]
    }

    pub fn channels(&self) -> &[Vec<String>] {
        &self.channels
    }

    pub fn channel_size(&self, i: usize) -> usize {
        self.channels[i].len()
    }

    pub fn symbol_index(&self, channel: usize, symbol: &str) -> Option<usize> {
        self.channels.get(channel)?.iter().position(|s| s == symbol)
    }

    /// Number of letters, `|Σ|`. Saturates instead of overflowing.
    pub fn size(&self) -> usize {
        self.channels
            .iter()
            .fold(1usize, |acc, ch| acc.saturating_mul(ch.len()))
    }

    /// Size of the alphabet restricted to `mask`.
    pub fn restricted_size(&self, mask: &ChannelMask) -> usize {
        mask.iter()
            .fold(1usize, |acc, i| acc.saturating_mul(self.channels[i].len()))
    }

    pub fn check_mask(&self, mask: &ChannelMask) -> Result<()> {
        match mask.iter().find(|&c| c >= self.num_channels()) {
            Some(channel) => Err(Error::UnknownChannel {
                channel,
                channels: self.num_channels(),
            }),
            None => Ok(()),
        }
    }

    pub fn check_letter(&self, letter: &Letter) -> Result<()> {
        if letter.len() != self.num_channels() {
            return Err(Error::Letter(format!(
                "letter has {} picks, alphabet has {} channels",
                letter.len(),
                self.num_channels()
            )));
        }
        for (i, &p) in letter.picks().iter().enumerate() {
            if p >= self.channels[i].len() {
                return Err(Error::Letter(format!(
                    "pick {p} out of range for channel {i}"
                )));
            }
        }
        Ok(())
    }

    /// All letters in lexicographic order, generated lazily.
    pub fn letters(&self) -> Letters {
        Letters {
            inner: RestrictedLetters::new(self.channels.iter().map(Vec::len).collect()),
        }
    }

    /// All letters over the channels of `mask`, in lexicographic order.
    pub fn restricted_letters(&self, mask: &ChannelMask) -> RestrictedLetters {
        RestrictedLetters::new(mask.iter().map(|i| self.channels[i].len()).collect())
    }

    /// Rank of a full letter.
    pub fn letter_index(&self, letter: &Letter) -> usize {
        letter
            .picks()
            .iter()
            .zip(&self.channels)
            .fold(0, |acc, (&p, ch)| acc * ch.len() + p)
    }

    pub fn letter_at(&self, mut index: usize) -> Letter {
        let mut picks = vec![0; self.channels.len()];
        for (i, ch) in self.channels.iter().enumerate().rev() {
            picks[i] = index % ch.len();
            index /= ch.len();
        }
        Letter(picks)
    }

    /// Rank of `letter` projected onto `mask`, without allocating.
    pub fn project_index(&self, letter: &Letter, mask: &ChannelMask) -> usize {
        mask.iter()
            .fold(0, |acc, i| acc * self.channels[i].len() + letter.0[i])
    }

    /// Rank of a restricted letter over `mask`.
    pub fn restricted_index(&self, mask: &ChannelMask, letter: &RestrictedLetter) -> usize {
        mask.iter()
            .zip(letter.picks())
            .fold(0, |acc, (i, &p)| acc * self.channels[i].len() + p)
    }

    pub fn restricted_at(&self, mask: &ChannelMask, mut index: usize) -> RestrictedLetter {
        let chans: Vec<usize> = mask.iter().collect();
        let mut picks = vec![0; chans.len()];
        for (slot, &c) in chans.iter().enumerate().rev() {
            let n = self.channels[c].len();
            picks[slot] = index % n;
            index /= n;
        }
        RestrictedLetter(picks)
    }

    /// Renders a full letter as `(a,c)`.
    pub fn display_letter(&self, letter: &Letter) -> String {
        let parts: Vec<&str> = letter
            .picks()
            .iter()
            .enumerate()
            .map(|(i, &p)| self.channels[i][p].as_str())
            .collect();
        format!("({})", parts.join(","))
    }

    pub fn letter_symbols(&self, letter: &Letter) -> Vec<String> {
        letter
            .picks()
            .iter()
            .enumerate()
            .map(|(i, &p)| self.channels[i][p].clone())
            .collect()
    }

    /// Builds a full letter from symbol names, one per channel.
    pub fn letter_from_symbols(&self, symbols: &[&str]) -> Result<Letter> {
        if symbols.len() != self.num_channels() {
            return Err(Error::Letter(format!(
                "expected {} symbols, got {}",
                self.num_channels(),
                symbols.len()
            )));
        }
        symbols
            .iter()
            .enumerate()
            .map(|(i, s)| {
                self.symbol_index(i, s)
                    .ok_or_else(|| Error::Letter(format!("unknown symbol `{s}` in channel {i}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Letter)
    }
}

/// One symbol index per channel.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(Vec<usize>);

impl Letter {
    pub fn new(picks: Vec<usize>) -> Self {
        Self(picks)
    }

    pub fn picks(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pick(&self, channel: usize) -> usize {
        self.0[channel]
    }

    /// Copy of this letter with `channel` replaced by `symbol`.
    pub fn with_pick(&self, channel: usize, symbol: usize) -> Letter {
        let mut picks = self.0.clone();
        picks[channel] = symbol;
        Letter(picks)
    }

    /// Sub-tuple of picks on the channels of `mask`, ascending.
    pub fn project(&self, mask: &ChannelMask) -> Result<RestrictedLetter> {
        if let Some(channel) = mask.iter().find(|&c| c >= self.0.len()) {
            return Err(Error::UnknownChannel {
                channel,
                channels: self.0.len(),
            });
        }
        Ok(RestrictedLetter(mask.iter().map(|c| self.0[c]).collect()))
    }

    /// `α[-j] = β[-j]`: the letters agree on every channel but `j`.
    pub fn agrees_except(&self, other: &Letter, j: usize) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .all(|(c, (a, b))| c == j || a == b)
    }

    /// Channels on which the two letters differ.
    pub fn differing_channels(&self, other: &Letter) -> Vec<usize> {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(c, _)| c)
            .collect()
    }
}

impl From<Vec<usize>> for Letter {
    fn from(picks: Vec<usize>) -> Self {
        Letter(picks)
    }
}

/// A letter over a channel mask: the picks of the masked channels, ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RestrictedLetter(Vec<usize>);

impl RestrictedLetter {
    pub fn new(picks: Vec<usize>) -> Self {
        Self(picks)
    }

    pub fn picks(&self) -> &[usize] {
        &self.0
    }

    /// Projects this letter (over `own`) further onto `mask`, which must be a
    /// subset of `own`.
    pub fn project(&self, own: &ChannelMask, mask: &ChannelMask) -> Result<RestrictedLetter> {
        mask.iter()
            .map(|c| {
                own.position(c)
                    .map(|slot| self.0[slot])
                    .ok_or(Error::UnknownChannel {
                        channel: c,
                        channels: own.len(),
                    })
            })
            .collect::<Result<Vec<_>>>()
            .map(RestrictedLetter)
    }
}

/// Sorted, duplicate-free set of agent indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChannelMask(Vec<usize>);

impl ChannelMask {
    pub fn new(mut channels: Vec<usize>) -> Self {
        channels.sort_unstable();
        channels.dedup();
        Self(channels)
    }

    pub fn full(k: usize) -> Self {
        Self((0..k).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn channels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, channel: usize) -> bool {
        self.0.binary_search(&channel).is_ok()
    }

    pub fn position(&self, channel: usize) -> Option<usize> {
        self.0.binary_search(&channel).ok()
    }

    pub fn is_full(&self, k: usize) -> bool {
        self.0.len() == k && self.0.iter().enumerate().all(|(i, &c)| i == c)
    }

    pub fn with(&self, channel: usize) -> ChannelMask {
        let mut v = self.0.clone();
        v.push(channel);
        ChannelMask::new(v)
    }
}

/// Lazy lexicographic enumeration of the full alphabet.
pub struct Letters {
    inner: RestrictedLetters,
}

impl Iterator for Letters {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        self.inner.next().map(|r| Letter(r.0))
    }
}

/// Lazy lexicographic enumeration of tuples under fixed radices.
pub struct RestrictedLetters {
    radices: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl RestrictedLetters {
    fn new(radices: Vec<usize>) -> Self {
        let next = if radices.contains(&0) {
            None
        } else {
            Some(vec![0; radices.len()])
        };
        Self { radices, next }
    }
}

impl Iterator for RestrictedLetters {
    type Item = RestrictedLetter;

    fn next(&mut self) -> Option<RestrictedLetter> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        let mut carried = true;
        while i > 0 && carried {
            i -= 1;
            succ[i] += 1;
            if succ[i] == self.radices[i] {
                succ[i] = 0;
            } else {
                carried = false;
            }
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(RestrictedLetter(current))
    }
}

/// Set of agents, stored as a bitset (at most 64 agents).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AgentSet(u64);

impl AgentSet {
    pub const MAX_AGENTS: usize = 64;

    pub fn empty() -> Self {
        Self(0)
    }

    pub fn all(k: usize) -> Self {
        if k >= 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << k) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, agent: usize) -> bool {
        agent < 64 && self.0 & (1 << agent) != 0
    }

    pub fn insert(&mut self, agent: usize) {
        self.0 |= 1 << agent;
    }

    pub fn remove(&mut self, agent: usize) {
        self.0 &= !(1 << agent);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.0 & (1 << i) != 0)
    }

    pub fn max_agent(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Every subset of `{0..k-1}`, ordered by bit pattern.
    pub fn subsets(k: usize) -> impl Iterator<Item = AgentSet> {
        (0..(1u64 << k)).map(AgentSet)
    }
}

impl FromIterator<usize> for AgentSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = AgentSet::empty();
        for a in iter {
            s.insert(a);
        }
        s
    }
}

impl fmt::Display for AgentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, a) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}
