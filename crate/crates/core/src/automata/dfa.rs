use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{check_common, Configurable, StateId};
use crate::alphabet::{ChannelMask, Letter, ProductAlphabet, RestrictedLetter};
use crate::error::{Error, Result};

/// Deterministic finite automaton with a total transition table.
///
/// `table[q][r]` is the successor of `q` on the restricted letter of rank
/// `r` over the automaton's mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: ProductAlphabet,
    mask: ChannelMask,
    names: Vec<String>,
    initial: StateId,
    accepting: Vec<bool>,
    table: Vec<Vec<StateId>>,
}

impl Dfa {
    pub fn new(
        alphabet: ProductAlphabet,
        mask: ChannelMask,
        names: Vec<String>,
        initial: StateId,
        accepting: Vec<StateId>,
        table: Vec<Vec<StateId>>,
    ) -> Result<Self> {
        let accepting = check_common(&alphabet, &mask, &names, initial, &accepting)?;
        let n = names.len();
        let width = alphabet.restricted_size(&mask);
        if table.len() != n {
            return Err(Error::Automaton(format!(
                "transition table has {} rows for {n} states",
                table.len()
            )));
        }
        for (q, row) in table.iter().enumerate() {
            if row.len() != width {
                return Err(Error::Automaton(format!(
                    "state `{}` has {} transitions, expected {width}",
                    names[q],
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&t| t >= n) {
                return Err(Error::Automaton(format!("target state {bad} out of range")));
            }
        }
        Ok(Self {
            alphabet,
            mask,
            names,
            initial,
            accepting,
            table,
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

    pub fn table(&self) -> &[Vec<StateId>] {
        &self.table
    }

    /// `δ(q, project(letter, mask))`.
    pub fn step(&self, q: StateId, letter: &Letter) -> StateId {
        self.table[q][self.alphabet.project_index(letter, &self.mask)]
    }

    pub fn step_restricted(&self, q: StateId, rank: usize) -> StateId {
        self.table[q][rank]
    }

    pub fn step_letter(&self, q: StateId, letter: &RestrictedLetter) -> StateId {
        self.table[q][self.alphabet.restricted_index(&self.mask, letter)]
    }

    pub fn run(&self, word: &[Letter]) -> StateId {
        word.iter().fold(self.initial, |q, l| self.step(q, l))
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.accepting[self.run(word)]
    }

    /// Drops unreachable states and merges every state that cannot reach an
    /// accepting state into a single rejecting sink. The language is
    /// unchanged and the table stays total.
    pub fn trim(&self) -> Dfa {
        let n = self.num_states();
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (q, row) in self.table.iter().enumerate() {
            for &t in row {
                preds[t].push(q);
            }
        }
        let mut live = self.accepting.clone();
        let mut queue: VecDeque<StateId> = self.accepting_states().collect();
        while let Some(q) = queue.pop_front() {
            for &p in &preds[q] {
                if !live[p] {
                    live[p] = true;
                    queue.push_back(p);
                }
            }
        }

        // renumber in BFS order from the initial state
        let mut new_id: Vec<Option<StateId>> = vec![None; n];
        let mut order = Vec::new();
        let mut sink: Option<StateId> = None;
        let mut queue = VecDeque::from([self.initial]);
        let mut seen = vec![false; n];
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            if live[q] {
                new_id[q] = Some(order.len());
                order.push(Some(q));
            } else if sink.is_none() {
                sink = Some(order.len());
                order.push(None);
            }
            if live[q] {
                for &t in &self.table[q] {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        let sink_id = sink.unwrap_or(usize::MAX);
        let width = self.table.first().map_or(0, Vec::len);
        let mut names = Vec::with_capacity(order.len());
        let mut accepting = Vec::new();
        let mut table = Vec::with_capacity(order.len());
        for (i, slot) in order.iter().enumerate() {
            match *slot {
                Some(q) => {
                    names.push(self.names[q].clone());
                    if self.accepting[q] {
                        accepting.push(i);
                    }
                    table.push(
                        self.table[q]
                            .iter()
                            .map(|&t| new_id[t].unwrap_or(sink_id))
                            .collect(),
                    );
                }
                None => {
                    names.push(String::from("dead"));
                    table.push(vec![i; width]);
                }
            }
        }
        // a live state may share the reserved sink name
        if sink.is_some() && names.iter().filter(|s| *s == "dead").count() > 1 {
            names[sink_id] = format!("dead#{sink_id}");
        }
        Dfa::new(
            self.alphabet.clone(),
            self.mask.clone(),
            names,
            new_id[self.initial].unwrap_or(sink_id),
            accepting,
            table,
        )
        .expect("trim preserves well-formedness")
    }
}

impl Configurable for Dfa {
    type Config = StateId;

    fn start(&self) -> StateId {
        self.initial
    }

    fn advance(&self, q: &StateId, letter: &Letter) -> StateId {
        self.step(*q, letter)
    }

    fn config_accepts(&self, q: &StateId) -> bool {
        self.accepting[*q]
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn rejects_partial_tables() {
        let sigma = ab_cd();
        let err = Dfa::new(
            sigma.clone(),
            ChannelMask::full(2),
            names(&["q"]),
            0,
            vec![],
            vec![vec![0; 3]],
        );
        assert!(matches!(err, Err(Error::Automaton(_))));
        let err = Dfa::new(
            sigma,
            ChannelMask::full(2),
            names(&["q"]),
            1,
            vec![],
            vec![vec![0; 4]],
        );
        assert!(err.is_err());
    }

    #[test]
    fn bounded_channel_dfa_ignores_other_channels() {
        let sigma = ab_cd();
        // "channel 1 plays d", mask {1}
        let dfa = Dfa::new(
            sigma.clone(),
            ChannelMask::new(vec![1]),
            names(&["q0", "yes"]),
            0,
            vec![1],
            vec![vec![0, 1], vec![1, 1]],
        )
        .unwrap();
        assert_eq!(dfa.step(0, &letter(&sigma, &["a", "d"])), 1);
        assert_eq!(dfa.step(0, &letter(&sigma, &["b", "d"])), 1);
        assert_eq!(dfa.step(0, &letter(&sigma, &["b", "c"])), 0);
    }

    #[test]
    fn trim_merges_dead_states() {
        let dfa = matching_dfa().trim();
        assert_eq!(dfa.num_states(), 3);
        let sigma = ab_cd();
        let nothing = Dfa::new(
            sigma,
            ChannelMask::full(2),
            names(&["q0", "q1", "q2"]),
            0,
            vec![],
            vec![vec![1; 4], vec![2; 4], vec![0; 4]],
        )
        .unwrap();
        let t = nothing.trim();
        assert_eq!(t.num_states(), 1);
        assert!(!t.is_accepting(0));
    }
}
