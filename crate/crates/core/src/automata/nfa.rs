use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{check_common, Configurable, Dfa, StateId};
use crate::alphabet::{ChannelMask, Letter, ProductAlphabet, RestrictedLetter};
use crate::error::{Error, Result};

/// Nondeterministic finite automaton. Transitions may be missing; a run
/// with no successor dies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: ProductAlphabet,
    mask: ChannelMask,
    names: Vec<String>,
    initial: StateId,
    accepting: Vec<bool>,
    /// `delta[q][r]`: sorted, duplicate-free successors.
    delta: Vec<Vec<Vec<StateId>>>,
}

impl Nfa {
    /// Builds an NFA from `⟨q, restricted letter, q'⟩` triples.
    pub fn from_triples(
        alphabet: ProductAlphabet,
        mask: ChannelMask,
        names: Vec<String>,
        initial: StateId,
        accepting: Vec<StateId>,
        triples: impl IntoIterator<Item = (StateId, RestrictedLetter, StateId)>,
    ) -> Result<Self> {
        let accepting = check_common(&alphabet, &mask, &names, initial, &accepting)?;
        let n = names.len();
        let width = alphabet.restricted_size(&mask);
        let mut delta = vec![vec![Vec::new(); width]; n];
        for (q, letter, t) in triples {
            if q >= n || t >= n {
                return Err(Error::Automaton(format!(
                    "transition ⟨{q},{t}⟩ names a missing state"
                )));
            }
            if letter.picks().len() != mask.len()
                || mask
                    .iter()
                    .zip(letter.picks())
                    .any(|(c, &p)| p >= alphabet.channel_size(c))
            {
                return Err(Error::Automaton(format!(
                    "transition letter {:?} does not fit the mask",
                    letter.picks()
                )));
            }
            delta[q][alphabet.restricted_index(&mask, &letter)].push(t);
        }
        Self::from_table(alphabet, mask, names, initial, accepting, delta)
    }

    fn from_table(
        alphabet: ProductAlphabet,
        mask: ChannelMask,
        names: Vec<String>,
        initial: StateId,
        accepting: Vec<bool>,
        mut delta: Vec<Vec<Vec<StateId>>>,
    ) -> Result<Self> {
        for row in &mut delta {
            for succ in row.iter_mut() {
                succ.sort_unstable();
                succ.dedup();
            }
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

    /// Builds directly from a successor table `delta[q][rank]`.
    pub fn from_successors(
        alphabet: ProductAlphabet,
        mask: ChannelMask,
        names: Vec<String>,
        initial: StateId,
        accepting: Vec<StateId>,
        delta: Vec<Vec<Vec<StateId>>>,
    ) -> Result<Self> {
        let accepting = check_common(&alphabet, &mask, &names, initial, &accepting)?;
        let n = names.len();
        let width = alphabet.restricted_size(&mask);
        if delta.len() != n || delta.iter().any(|row| row.len() != width) {
            return Err(Error::Automaton("successor table has the wrong shape".into()));
        }
        if delta.iter().flatten().flatten().any(|&t| t >= n) {
            return Err(Error::Automaton("successor out of range".into()));
        }
        Self::from_table(alphabet, mask, names, initial, accepting, delta)
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

    pub fn successors(&self, q: StateId, letter: &Letter) -> &[StateId] {
        &self.delta[q][self.alphabet.project_index(letter, &self.mask)]
    }

    pub fn successors_restricted(&self, q: StateId, rank: usize) -> &[StateId] {
        &self.delta[q][rank]
    }

    /// All `⟨q, r, q'⟩` with `r` a restricted-letter rank.
    pub fn triples(&self) -> impl Iterator<Item = (StateId, usize, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(r, succ)| succ.iter().map(move |&t| (q, r, t)))
        })
    }

    /// Sorted set of states reachable from `set` on `letter`.
    pub fn post(&self, set: &[StateId], letter: &Letter) -> Vec<StateId> {
        self.post_restricted(set, self.alphabet.project_index(letter, &self.mask))
    }

    pub fn post_restricted(&self, set: &[StateId], rank: usize) -> Vec<StateId> {
        let mut out: Vec<StateId> = set
            .iter()
            .flat_map(|&q| self.delta[q][rank].iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Reachable-subset simulation.
    pub fn accepts(&self, word: &[Letter]) -> bool {
        let end = word
            .iter()
            .fold(vec![self.initial], |set, l| self.post(&set, l));
        end.iter().any(|&q| self.accepting[q])
    }
}

impl From<&Dfa> for Nfa {
    fn from(dfa: &Dfa) -> Self {
        let delta = dfa
            .table()
            .iter()
            .map(|row| row.iter().map(|&t| vec![t]).collect())
            .collect();
        Nfa::from_successors(
            dfa.alphabet().clone(),
            dfa.mask().clone(),
            dfa.names().to_vec(),
            dfa.initial(),
            dfa.accepting_states().collect(),
            delta,
        )
        .expect("a DFA is a well-formed NFA")
    }
}

impl Configurable for Nfa {
    type Config = Vec<StateId>;

    fn start(&self) -> Vec<StateId> {
        vec![self.initial]
    }

    fn advance(&self, set: &Vec<StateId>, letter: &Letter) -> Vec<StateId> {
        self.post(set, letter)
    }

    fn config_accepts(&self, set: &Vec<StateId>) -> bool {
        set.iter().any(|&q| self.accepting[q])
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn subset_simulation() {
        let sigma = ab_cd();
        let nfa = contains_ac_nfa();
        let ac = letter(&sigma, &["a", "c"]);
        let bd = letter(&sigma, &["b", "d"]);
        assert!(!nfa.accepts(&[]));
        assert!(!nfa.accepts(&[bd.clone(), bd.clone()]));
        assert!(nfa.accepts(&[bd.clone(), ac.clone(), bd.clone()]));
        assert_eq!(nfa.post(&[0], &ac), vec![0, 1]);
    }

    #[test]
    fn rejects_bad_triples() {
        let sigma = ab_cd();
        let r = RestrictedLetter::new(vec![0, 0]);
        assert!(Nfa::from_triples(
            sigma.clone(),
            ChannelMask::full(2),
            names(&["q"]),
            0,
            vec![],
            vec![(0, r, 3)],
        )
        .is_err());
        let wide = RestrictedLetter::new(vec![0, 2]);
        assert!(Nfa::from_triples(
            sigma,
            ChannelMask::full(2),
            names(&["q"]),
            0,
            vec![],
            vec![(0, wide, 0)],
        )
        .is_err());
    }

    #[test]
    fn wrapped_dfa_keeps_language() {
        let sigma = ab_cd();
        let dfa = matching_dfa();
        let nfa = Nfa::from(&dfa);
        for a in sigma.letters() {
            for b in sigma.letters() {
                let w = [a.clone(), b];
                assert_eq!(dfa.accepts(&w), nfa.accepts(&w));
            }
        }
    }
}
