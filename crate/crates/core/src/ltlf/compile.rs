//! Formula-as-state translation to an alternating automaton.
//!
//! A state carries a pending obligation on the rest of the word:
//! the root formula itself, `Strong(ψ)` (a next position must exist and
//! satisfy ψ), or `Weak(ψ)` (if a next position exists, it satisfies ψ).
//! `Strong` states reject at the end of the word and `Weak` states accept;
//! the root accepts iff the formula holds on the empty trace.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::Ltlf;
use crate::alphabet::{ChannelMask, ProductAlphabet, RestrictedLetter};
use crate::automata::{Afa, PosFormula, StateId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Root,
    Strong(Ltlf),
    Weak(Ltlf),
}

struct Builder<'a> {
    alphabet: &'a ProductAlphabet,
    mask: &'a ChannelMask,
    ids: BTreeMap<Key, StateId>,
    keys: Vec<Key>,
    queue: VecDeque<StateId>,
}

impl Builder<'_> {
    fn state(&mut self, key: Key) -> PosFormula {
        let id = match self.ids.get(&key) {
            Some(&id) => id,
            None => {
                let id = self.keys.len();
                self.ids.insert(key.clone(), id);
                self.keys.push(key);
                self.queue.push_back(id);
                id
            }
        };
        PosFormula::State(id)
    }

    /// Obligation of `f` at the current position, having read `letter`.
    fn expand(&mut self, f: &Ltlf, letter: &RestrictedLetter) -> PosFormula {
        use Ltlf::*;
        let plays = |channel: usize, symbol: usize| {
            let slot = self.mask.position(channel).expect("atom channel is in the mask");
            letter.picks()[slot] == symbol
        };
        match f {
            True => PosFormula::True,
            False => PosFormula::False,
            &Atom { channel, symbol } => bool_formula(plays(channel, symbol)),
            &NegAtom { channel, symbol } => bool_formula(!plays(channel, symbol)),
            And(a, b) => {
                let a = self.expand(a, letter);
                let b = self.expand(b, letter);
                PosFormula::and(a, b)
            }
            Or(a, b) => {
                let a = self.expand(a, letter);
                let b = self.expand(b, letter);
                PosFormula::or(a, b)
            }
            Next(a) => self.state(Key::Strong((**a).clone())),
            WeakNext(a) => self.state(Key::Weak((**a).clone())),
            Until(a, b) => {
                let now = self.expand(b, letter);
                let hold = self.expand(a, letter);
                let later = self.state(Key::Strong(f.clone()));
                PosFormula::or(now, PosFormula::and(hold, later))
            }
            Release(a, b) => {
                let now = self.expand(b, letter);
                let stop = self.expand(a, letter);
                let later = self.state(Key::Weak(f.clone()));
                PosFormula::and(now, PosFormula::or(stop, later))
            }
            Not(_) | Eventually(_) | Always(_) => unreachable!("formula is normalized"),
        }
    }
}

fn bool_formula(b: bool) -> PosFormula {
    if b {
        PosFormula::True
    } else {
        PosFormula::False
    }
}

/// Compiles `formula` (normalized first) into an AFA over the channels its
/// atoms mention. State count is at most one plus the number of temporal
/// subformulas.
pub fn compile_to_afa(formula: &Ltlf, alphabet: &ProductAlphabet) -> Result<Afa> {
    let root = formula.normalize();
    for f in root.closure() {
        if let Ltlf::Atom { channel, symbol } | Ltlf::NegAtom { channel, symbol } = f {
            if channel >= alphabet.num_channels() || symbol >= alphabet.channel_size(channel) {
                return Err(Error::UnknownAtom(format!(
                    "p{channel}=#{symbol} is not in the alphabet"
                )));
            }
        }
    }
    let mask = root.channels();
    let letters: Vec<RestrictedLetter> = alphabet.restricted_letters(&mask).collect();
    let mut b = Builder {
        alphabet,
        mask: &mask,
        ids: BTreeMap::new(),
        keys: Vec::new(),
        queue: VecDeque::new(),
    };
    b.state(Key::Root);
    let mut delta: Vec<Vec<PosFormula>> = Vec::new();
    while let Some(id) = b.queue.pop_front() {
        let body = match &b.keys[id] {
            Key::Root => root.clone(),
            Key::Strong(f) | Key::Weak(f) => f.clone(),
        };
        let row = letters.iter().map(|l| b.expand(&body, l)).collect();
        if delta.len() <= id {
            delta.resize(id + 1, Vec::new());
        }
        delta[id] = row;
    }
    let names: Vec<String> = b
        .keys
        .iter()
        .map(|k| match k {
            Key::Root => format!("init:{}", root.render(b.alphabet)),
            Key::Strong(f) => format!("now:{}", f.render(b.alphabet)),
            Key::Weak(f) => format!("weak:{}", f.render(b.alphabet)),
        })
        .collect();
    let accepting = b
        .keys
        .iter()
        .enumerate()
        .filter(|(_, k)| match k {
            Key::Root => root.holds_on_empty(),
            Key::Strong(_) => false,
            Key::Weak(_) => true,
        })
        .map(|(i, _)| i)
        .collect();
    Afa::new(alphabet.clone(), mask, names, 0, accepting, delta)
}
