//! Subset construction and the obligation-set translation from alternating
//! to nondeterministic automata. Both explore reachable sets only, interning
//! each set as a sorted list of state ids in discovery order.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::{set_name, Afa, Dfa, Nfa, StateId};

struct Interner {
    ids: BTreeMap<Vec<StateId>, StateId>,
    sets: Vec<Vec<StateId>>,
    queue: VecDeque<StateId>,
}

impl Interner {
    fn new(start: Vec<StateId>) -> Self {
        let mut i = Self {
            ids: BTreeMap::new(),
            sets: Vec::new(),
            queue: VecDeque::new(),
        };
        i.intern(start);
        i
    }

    fn intern(&mut self, set: Vec<StateId>) -> StateId {
        if let Some(&id) = self.ids.get(&set) {
            return id;
        }
        let id = self.sets.len();
        self.ids.insert(set.clone(), id);
        self.sets.push(set);
        self.queue.push_back(id);
        id
    }
}

/// Subset construction. The empty subset, when reachable, is an explicit
/// rejecting sink.
pub fn determinize(nfa: &Nfa) -> Dfa {
    let width = nfa.alphabet().restricted_size(nfa.mask());
    let mut interner = Interner::new(alloc::vec![nfa.initial()]);
    let mut table: Vec<Vec<StateId>> = Vec::new();
    while let Some(id) = interner.queue.pop_front() {
        let set = interner.sets[id].clone();
        let row: Vec<StateId> = (0..width)
            .map(|r| interner.intern(nfa.post_restricted(&set, r)))
            .collect();
        if table.len() <= id {
            table.resize(id + 1, Vec::new());
        }
        table[id] = row;
    }
    let names = interner
        .sets
        .iter()
        .map(|s| set_name(nfa.names(), s))
        .collect();
    let accepting = interner
        .sets
        .iter()
        .enumerate()
        .filter(|(_, s)| s.iter().any(|&q| nfa.is_accepting(q)))
        .map(|(i, _)| i)
        .collect();
    Dfa::new(
        nfa.alphabet().clone(),
        nfa.mask().clone(),
        names,
        0,
        accepting,
        table,
    )
    .expect("subset construction yields a total DFA")
}

/// Obligation-set construction: NFA states are the reachable sets `T ⊆ Q`,
/// `T -α-> T'` for every minimal model `T'` of `⋀_{q∈T} δ(q, α)`, and `T`
/// accepts iff `T ⊆ F`.
pub fn afa_to_nfa(afa: &Afa) -> Nfa {
    let width = afa.alphabet().restricted_size(afa.mask());
    let mut interner = Interner::new(alloc::vec![afa.initial()]);
    let mut delta: Vec<Vec<Vec<StateId>>> = Vec::new();
    while let Some(id) = interner.queue.pop_front() {
        let set = interner.sets[id].clone();
        let row: Vec<Vec<StateId>> = (0..width)
            .map(|r| {
                afa.obligation_successors(&set, r)
                    .into_iter()
                    .map(|t| interner.intern(t))
                    .collect()
            })
            .collect();
        if delta.len() <= id {
            delta.resize(id + 1, Vec::new());
        }
        delta[id] = row;
    }
    let names = interner
        .sets
        .iter()
        .map(|s| set_name(afa.names(), s))
        .collect();
    let accepting = interner
        .sets
        .iter()
        .enumerate()
        .filter(|(_, s)| afa.obligation_accepts(s))
        .map(|(i, _)| i)
        .collect();
    Nfa::from_successors(
        afa.alphabet().clone(),
        afa.mask().clone(),
        names,
        0,
        accepting,
        delta,
    )
    .expect("obligation construction yields a well-formed NFA")
}

pub fn afa_to_dfa(afa: &Afa) -> Dfa {
    determinize(&afa_to_nfa(afa))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::PosFormula;
    use super::*;
    use crate::alphabet::{ChannelMask, Letter, ProductAlphabet};
    use alloc::vec;

    fn all_words(sigma: &ProductAlphabet, max_len: usize) -> Vec<Vec<Letter>> {
        let letters: Vec<Letter> = sigma.letters().collect();
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for l in &letters {
                    let mut w2: Vec<Letter> = w.clone();
                    w2.push(l.clone());
                    next.push(w2);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    #[test]
    fn contains_ac_determinizes_to_two_subsets() {
        let nfa = contains_ac_nfa();
        let dfa = determinize(&nfa);
        assert_eq!(dfa.num_states(), 2);
        assert_eq!(dfa.names(), &["{q0}", "{q0,q1}"]);
        assert!(!dfa.is_accepting(0) && dfa.is_accepting(1));
        for w in all_words(nfa.alphabet(), 4) {
            assert_eq!(nfa.accepts(&w), dfa.accepts(&w));
        }
    }

    #[test]
    fn deterministic_nfa_stays_small() {
        let dfa = matching_dfa();
        let back = determinize(&Nfa::from(&dfa));
        assert!(back.num_states() <= dfa.num_states() + 1);
        for w in all_words(dfa.alphabet(), 3) {
            assert_eq!(dfa.accepts(&w), back.accepts(&w));
        }
    }

    #[test]
    fn transitionless_nfa_rejects_everything() {
        let sigma = ab_cd();
        let nfa = Nfa::from_triples(
            sigma.clone(),
            ChannelMask::full(2),
            names(&["q0"]),
            0,
            vec![],
            vec![],
        )
        .unwrap();
        let dfa = determinize(&nfa);
        assert_eq!(dfa.names(), &["{q0}", "{}"]);
        assert!(all_words(&sigma, 3).iter().all(|w| !dfa.accepts(w)));
    }

    #[test]
    fn syntactic_nfa_afa_keeps_singletons() {
        let nfa = contains_ac_nfa();
        let afa = Afa::from(&nfa);
        let back = afa_to_nfa(&afa);
        assert!(back.names().iter().all(|n| n == "{q0}" || n == "{q1}" || n == "{}"));
        for w in all_words(nfa.alphabet(), 4) {
            assert_eq!(nfa.accepts(&w), back.accepts(&w));
        }
    }

    #[test]
    fn conjunction_yields_single_model_edge() {
        use PosFormula::*;
        let sigma = ab_cd();
        // δ(q0,·) = q1 ∧ q2; q1, q2 accepting sinks on true
        let delta = vec![
            vec![And(vec![State(1), State(2)]); 4],
            vec![True; 4],
            vec![True; 4],
        ];
        let afa = Afa::new(
            sigma.clone(),
            ChannelMask::full(2),
            names(&["q0", "q1", "q2"]),
            0,
            vec![1, 2],
            delta,
        )
        .unwrap();
        let nfa = afa_to_nfa(&afa);
        assert_eq!(nfa.names()[1], "{q1,q2}");
        assert!(nfa.is_accepting(1));
        assert_eq!(nfa.successors_restricted(0, 0), &[1]);
        // {q1,q2} discharges into the empty obligation set, which accepts
        assert_eq!(nfa.names()[2], "{}");
        assert!(nfa.is_accepting(2));
        for w in all_words(&sigma, 3) {
            assert_eq!(afa.accepts(&w), nfa.accepts(&w));
        }
    }

    #[test]
    fn false_everywhere_has_no_accepting_state() {
        let sigma = ab_cd();
        let afa = Afa::new(
            sigma,
            ChannelMask::full(2),
            names(&["q0"]),
            0,
            vec![],
            vec![vec![PosFormula::False; 4]],
        )
        .unwrap();
        let nfa = afa_to_nfa(&afa);
        assert_eq!(nfa.accepting_states().count(), 0);
        assert_eq!(afa_to_dfa(&afa).trim().num_states(), 1);
    }

    #[test]
    fn afa_accepting_empty_word() {
        let sigma = ab_cd();
        let afa = Afa::new(
            sigma,
            ChannelMask::full(2),
            names(&["q0"]),
            0,
            vec![0],
            vec![vec![PosFormula::True; 4]],
        )
        .unwrap();
        let dfa = afa_to_dfa(&afa);
        assert!(dfa.is_accepting(dfa.initial()));
    }
}
