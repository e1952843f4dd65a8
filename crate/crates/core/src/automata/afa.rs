use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{check_common, Configurable, Dfa, Nfa, StateId};
use crate::alphabet::{ChannelMask, Letter, ProductAlphabet};
use crate::error::{Error, Result};

/// Positive Boolean formula over automaton states.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PosFormula {
    True,
    False,
    State(StateId),
    And(Vec<PosFormula>),
    Or(Vec<PosFormula>),
}

impl PosFormula {
    pub fn and(a: PosFormula, b: PosFormula) -> PosFormula {
        match (a, b) {
            (PosFormula::False, _) | (_, PosFormula::False) => PosFormula::False,
            (PosFormula::True, x) | (x, PosFormula::True) => x,
            (PosFormula::And(mut xs), PosFormula::And(ys)) => {
                xs.extend(ys);
                PosFormula::And(xs)
            }
            (PosFormula::And(mut xs), y) | (y, PosFormula::And(mut xs)) => {
                xs.push(y);
                PosFormula::And(xs)
            }
            (x, y) => PosFormula::And(vec![x, y]),
        }
    }

    pub fn or(a: PosFormula, b: PosFormula) -> PosFormula {
        match (a, b) {
            (PosFormula::True, _) | (_, PosFormula::True) => PosFormula::True,
            (PosFormula::False, x) | (x, PosFormula::False) => x,
            (PosFormula::Or(mut xs), PosFormula::Or(ys)) => {
                xs.extend(ys);
                PosFormula::Or(xs)
            }
            (PosFormula::Or(mut xs), y) | (y, PosFormula::Or(mut xs)) => {
                xs.push(y);
                PosFormula::Or(xs)
            }
            (x, y) => PosFormula::Or(vec![x, y]),
        }
    }

    /// Truth value when exactly the states satisfying `holds` are true.
    pub fn eval(&self, holds: &dyn Fn(StateId) -> bool) -> bool {
        match self {
            PosFormula::True => true,
            PosFormula::False => false,
            PosFormula::State(q) => holds(*q),
            PosFormula::And(xs) => xs.iter().all(|x| x.eval(holds)),
            PosFormula::Or(xs) => xs.iter().any(|x| x.eval(holds)),
        }
    }

    pub fn max_state(&self) -> Option<StateId> {
        match self {
            PosFormula::True | PosFormula::False => None,
            PosFormula::State(q) => Some(*q),
            PosFormula::And(xs) | PosFormula::Or(xs) => xs.iter().filter_map(Self::max_state).max(),
        }
    }

    /// Antichain of minimal satisfying state sets, each sorted; the whole
    /// list is sorted too. `True` yields `[[]]`, `False` yields `[]`.
    pub fn minimal_models(&self) -> Vec<Vec<StateId>> {
        match self {
            PosFormula::True => vec![Vec::new()],
            PosFormula::False => Vec::new(),
            PosFormula::State(q) => vec![vec![*q]],
            PosFormula::Or(xs) => minimize(xs.iter().flat_map(Self::minimal_models).collect()),
            PosFormula::And(xs) => xs
                .iter()
                .fold(vec![Vec::new()], |acc, x| conjoin(&acc, &x.minimal_models())),
        }
    }
}

fn union_sorted(a: &[StateId], b: &[StateId]) -> Vec<StateId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub(crate) fn is_subset(a: &[StateId], b: &[StateId]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

/// Pairwise unions of two model sets, minimized.
pub(crate) fn conjoin(a: &[Vec<StateId>], b: &[Vec<StateId>]) -> Vec<Vec<StateId>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(union_sorted(x, y));
        }
    }
    minimize(out)
}

/// Discards every set that is a superset of another; result sorted.
pub(crate) fn minimize(mut sets: Vec<Vec<StateId>>) -> Vec<Vec<StateId>> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Vec<StateId>> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| is_subset(k, &s)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Alternating finite automaton: `delta[q][r]` is a positive Boolean formula
/// over states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Afa {
    alphabet: ProductAlphabet,
    mask: ChannelMask,
    names: Vec<String>,
    initial: StateId,
    accepting: Vec<bool>,
    delta: Vec<Vec<PosFormula>>,
}

impl Afa {
    pub fn new(
        alphabet: ProductAlphabet,
        mask: ChannelMask,
        names: Vec<String>,
        initial: StateId,
        accepting: Vec<StateId>,
        delta: Vec<Vec<PosFormula>>,
    ) -> Result<Self> {
        let accepting = check_common(&alphabet, &mask, &names, initial, &accepting)?;
        let n = names.len();
        let width = alphabet.restricted_size(&mask);
        if delta.len() != n || delta.iter().any(|row| row.len() != width) {
            return Err(Error::Automaton(format!(
                "AFA transition table must be {n} x {width}"
            )));
        }
        if let Some(bad) = delta.iter().flatten().filter_map(PosFormula::max_state).find(|&q| q >= n) {
            return Err(Error::Automaton(format!("formula names missing state {bad}")));
        }
        Ok(Self {
            alphabet,
            mask,
            names,
            initial,
            accepting,
            delta,
        })
    }

    pub fn alphabet(&self) -> &ProductAlphabet {
        &self.alphabet
    }

    pub fn mask(&self) -> &ChannelMask {
        &self.mask
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states()).filter(|&q| self.accepting[q])
    }

    pub fn delta(&self) -> &[Vec<PosFormula>] {
        &self.delta
    }

    pub fn formula(&self, q: StateId, letter: &Letter) -> &PosFormula {
        &self.delta[q][self.alphabet.project_index(letter, &self.mask)]
    }

    /// Membership by backward evaluation: the set of states accepting the
    /// suffix is recomputed from the end of the word.
    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut good = self.accepting.clone();
        for l in word.iter().rev() {
            let r = self.alphabet.project_index(l, &self.mask);
            good = (0..self.num_states())
                .map(|q| self.delta[q][r].eval(&|s| good[s]))
                .collect();
        }
        good[self.initial]
    }

    /// Minimal obligation sets satisfying every `δ(q, r)` for `q` in `set`.
    pub fn obligation_successors(&self, set: &[StateId], rank: usize) -> Vec<Vec<StateId>> {
        set.iter().fold(vec![Vec::new()], |acc, &q| {
            if acc.is_empty() {
                acc
            } else {
                conjoin(&acc, &self.delta[q][rank].minimal_models())
            }
        })
    }

    pub fn obligation_accepts(&self, set: &[StateId]) -> bool {
        set.iter().all(|&q| self.accepting[q])
    }
}

impl From<&Nfa> for Afa {
    /// Disjunction-only AFA with the same states.
    fn from(nfa: &Nfa) -> Self {
        let width = nfa.alphabet().restricted_size(nfa.mask());
        let delta = (0..nfa.num_states())
            .map(|q| {
                (0..width)
                    .map(|r| {
                        nfa.successors_restricted(q, r)
                            .iter()
                            .fold(PosFormula::False, |f, &t| {
                                PosFormula::or(f, PosFormula::State(t))
                            })
                    })
                    .collect()
            })
            .collect();
        Afa::new(
            nfa.alphabet().clone(),
            nfa.mask().clone(),
            nfa.names().to_vec(),
            nfa.initial(),
            nfa.accepting_states().collect(),
            delta,
        )
        .expect("an NFA is a well-formed AFA")
    }
}

impl From<&Dfa> for Afa {
    fn from(dfa: &Dfa) -> Self {
        Afa::from(&Nfa::from(dfa))
    }
}

impl Configurable for Afa {
    /// Antichain of obligation sets.
    type Config = Vec<Vec<StateId>>;

    fn start(&self) -> Self::Config {
        vec![vec![self.initial]]
    }

    fn advance(&self, config: &Self::Config, letter: &Letter) -> Self::Config {
        let r = self.alphabet.project_index(letter, &self.mask);
        minimize(
            config
                .iter()
                .flat_map(|set| self.obligation_successors(set, r))
                .collect(),
        )
    }

    fn config_accepts(&self, config: &Self::Config) -> bool {
        config.iter().any(|set| self.obligation_accepts(set))
    }
}
