//! Finite-word goal automata and ultimately periodic words.
//!
//! All three automaton kinds key their transitions on letters restricted to a
//! [`ChannelMask`], so a bounded-channel automaton only stores
//! `|Q| x |Σ_I|` entries. Accepting states are kept as given; they are not
//! made absorbing.

mod afa;
mod convert;
mod dfa;
mod nfa;
mod word;

pub use afa::{Afa, PosFormula};
pub use convert::{afa_to_dfa, afa_to_nfa, determinize};
pub use dfa::Dfa;
pub use nfa::Nfa;
pub use word::UltimatelyPeriodicWord;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::alphabet::{ChannelMask, Letter, ProductAlphabet};
use crate::error::{Error, Result};

/// Index of an automaton state.
pub type StateId = usize;

/// An agent's goal in any of the supported representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Goal {
    Dfa(Dfa),
    Nfa(Nfa),
    Afa(Afa),
}

impl Goal {
    pub fn alphabet(&self) -> &ProductAlphabet {
        match self {
            Goal::Dfa(a) => a.alphabet(),
            Goal::Nfa(a) => a.alphabet(),
            Goal::Afa(a) => a.alphabet(),
        }
    }

    pub fn mask(&self) -> &ChannelMask {
        match self {
            Goal::Dfa(a) => a.mask(),
            Goal::Nfa(a) => a.mask(),
            Goal::Afa(a) => a.mask(),
        }
    }

    pub fn num_states(&self) -> usize {
        match self {
            Goal::Dfa(a) => a.num_states(),
            Goal::Nfa(a) => a.num_states(),
            Goal::Afa(a) => a.num_states(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Goal::Dfa(_) => "dfa",
            Goal::Nfa(_) => "nfa",
            Goal::Afa(_) => "afa",
        }
    }

    /// Finite-word membership.
    pub fn accepts(&self, word: &[Letter]) -> bool {
        match self {
            Goal::Dfa(a) => a.accepts(word),
            Goal::Nfa(a) => a.accepts(word),
            Goal::Afa(a) => a.accepts(word),
        }
    }

    /// Whether some finite prefix of `word` is in the goal's language.
    pub fn accepts_prefix(&self, word: &UltimatelyPeriodicWord) -> Result<bool> {
        check_word(self.alphabet(), word)?;
        Ok(match self {
            Goal::Dfa(a) => prefix_accepts(a, word),
            Goal::Nfa(a) => prefix_accepts(a, word),
            Goal::Afa(a) => prefix_accepts(a, word),
        })
    }

    /// Deterministic form: identity, subset construction, or AFA-to-NFA
    /// followed by subset construction.
    pub fn to_dfa(&self) -> Dfa {
        match self {
            Goal::Dfa(a) => a.clone(),
            Goal::Nfa(a) => determinize(a),
            Goal::Afa(a) => afa_to_dfa(a),
        }
    }

    /// Whether the initial state accepts, i.e. the empty word is in the
    /// language.
    pub fn accepts_empty(&self) -> bool {
        self.accepts(&[])
    }
}

fn check_word(alphabet: &ProductAlphabet, word: &UltimatelyPeriodicWord) -> Result<()> {
    for l in word.prefix().iter().chain(word.period()) {
        alphabet
            .check_letter(l)
            .map_err(|e| Error::AlphabetMismatch(format!("{e}")))?;
    }
    Ok(())
}

/// Forward simulation interface shared by the three automaton kinds.
pub(crate) trait Configurable {
    type Config: Ord + Clone;

    fn start(&self) -> Self::Config;
    fn advance(&self, config: &Self::Config, letter: &Letter) -> Self::Config;
    fn config_accepts(&self, config: &Self::Config) -> bool;
}

/// Runs `automaton` along `u·v^ω` until it accepts or a
/// (configuration, lasso position) pair repeats.
pub(crate) fn prefix_accepts<A: Configurable>(automaton: &A, word: &UltimatelyPeriodicWord) -> bool {
    let mut seen = BTreeSet::new();
    let mut config = automaton.start();
    let mut t = 0usize;
    loop {
        if automaton.config_accepts(&config) {
            return true;
        }
        if !seen.insert((config.clone(), word.lasso_position(t))) {
            return false;
        }
        config = automaton.advance(&config, word.letter_at(t));
        t += 1;
    }
}

pub(crate) fn check_common(
    alphabet: &ProductAlphabet,
    mask: &ChannelMask,
    names: &[String],
    initial: StateId,
    accepting: &[StateId],
) -> Result<Vec<bool>> {
    alphabet.check_mask(mask)?;
    let n = names.len();
    if n == 0 {
        return Err(Error::Automaton("automaton has no states".into()));
    }
    for (i, name) in names.iter().enumerate() {
        if names[..i].contains(name) {
            return Err(Error::Automaton(format!("state name `{name}` repeated")));
        }
    }
    if initial >= n {
        return Err(Error::Automaton(format!("initial state {initial} out of range")));
    }
    let mut acc = alloc::vec![false; n];
    for &f in accepting {
        if f >= n {
            return Err(Error::Automaton(format!("accepting state {f} out of range")));
        }
        acc[f] = true;
    }
    Ok(acc)
}

/// `{a,b}`-style name for a set of states.
pub(crate) fn set_name(names: &[String], set: &[StateId]) -> String {
    let parts: Vec<&str> = set.iter().map(|&q| names[q].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use alloc::vec;

    pub fn ab_cd() -> ProductAlphabet {
        ProductAlphabet::from_symbols(&[&["a", "b"], &["c", "d"]]).unwrap()
    }

    pub fn letter(sigma: &ProductAlphabet, s: &[&str]) -> Letter {
        sigma.letter_from_symbols(s).unwrap()
    }

    pub fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| String::from(*s)).collect()
    }

    /// "First letter is (a,c) or (b,d)": q0, qacc, qrej.
    pub fn matching_dfa() -> Dfa {
        let sigma = ab_cd();
        // restricted index = 2*p0 + p1: (a,c)=0 (a,d)=1 (b,c)=2 (b,d)=3
        Dfa::new(
            sigma,
            ChannelMask::full(2),
            names(&["q0", "qacc", "qrej"]),
            0,
            vec![1],
            vec![vec![1, 2, 2, 1], vec![1; 4], vec![2; 4]],
        )
        .unwrap()
    }

    /// "Contains (a,c)": self-loop on q0, q0 -(a,c)-> q1, q1 accepting sink.
    pub fn contains_ac_nfa() -> Nfa {
        let sigma = ab_cd();
        let mut triples = Vec::new();
        for l in sigma.letters() {
            let r = l.project(&ChannelMask::full(2)).unwrap();
            triples.push((0, r.clone(), 0));
            triples.push((1, r.clone(), 1));
            if l.picks() == [0, 0] {
                triples.push((0, r, 1));
            }
        }
        Nfa::from_triples(
            sigma,
            ChannelMask::full(2),
            names(&["q0", "q1"]),
            0,
            vec![1],
            triples,
        )
        .unwrap()
    }
}
