//! LTL over finite traces: parsing, negation normal form, and compilation
//! to alternating automata.
//!
//! Atoms test one channel for one symbol (`p0=a`). On the empty trace, only
//! `true`, weak next, and release (hence `G`) hold; conjunction and
//! disjunction combine as usual.

mod compile;
mod parse;

pub use compile::compile_to_afa;
pub use parse::parse;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;

use crate::alphabet::{ChannelMask, ProductAlphabet};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ltlf {
    True,
    False,
    /// Channel `channel` plays symbol `symbol`.
    Atom { channel: usize, symbol: usize },
    /// Channel `channel` does not play symbol `symbol`.
    NegAtom { channel: usize, symbol: usize },
    Not(Box<Ltlf>),
    And(Box<Ltlf>, Box<Ltlf>),
    Or(Box<Ltlf>, Box<Ltlf>),
    /// Strong next.
    Next(Box<Ltlf>),
    /// Weak next.
    WeakNext(Box<Ltlf>),
    Until(Box<Ltlf>, Box<Ltlf>),
    Release(Box<Ltlf>, Box<Ltlf>),
    Eventually(Box<Ltlf>),
    Always(Box<Ltlf>),
}

impl Ltlf {
    pub fn atom(channel: usize, symbol: usize) -> Ltlf {
        Ltlf::Atom { channel, symbol }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Ltlf) -> Ltlf {
        Ltlf::Not(Box::new(a))
    }

    pub fn and(a: Ltlf, b: Ltlf) -> Ltlf {
        Ltlf::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Ltlf, b: Ltlf) -> Ltlf {
        Ltlf::Or(Box::new(a), Box::new(b))
    }

    pub fn next(a: Ltlf) -> Ltlf {
        Ltlf::Next(Box::new(a))
    }

    pub fn weak_next(a: Ltlf) -> Ltlf {
        Ltlf::WeakNext(Box::new(a))
    }

    pub fn until(a: Ltlf, b: Ltlf) -> Ltlf {
        Ltlf::Until(Box::new(a), Box::new(b))
    }

    pub fn release(a: Ltlf, b: Ltlf) -> Ltlf {
        Ltlf::Release(Box::new(a), Box::new(b))
    }

    pub fn eventually(a: Ltlf) -> Ltlf {
        Ltlf::Eventually(Box::new(a))
    }

    pub fn always(a: Ltlf) -> Ltlf {
        Ltlf::Always(Box::new(a))
    }

    /// Negation normal form with `F φ` as `true U φ` and `G φ` as
    /// `false R φ`. The result contains no `Not`, `Eventually`, or `Always`.
    pub fn normalize(&self) -> Ltlf {
        self.nnf(false)
    }

    fn nnf(&self, negate: bool) -> Ltlf {
        use Ltlf::*;
        match (self, negate) {
            (True, false) | (False, true) => True,
            (False, false) | (True, true) => False,
            (&Atom { channel, symbol }, false) | (&NegAtom { channel, symbol }, true) => {
                Atom { channel, symbol }
            }
            (&Atom { channel, symbol }, true) | (&NegAtom { channel, symbol }, false) => {
                NegAtom { channel, symbol }
            }
            (Not(a), n) => a.nnf(!n),
            (And(a, b), false) | (Or(a, b), true) => Ltlf::and(a.nnf(negate), b.nnf(negate)),
            (Or(a, b), false) | (And(a, b), true) => Ltlf::or(a.nnf(negate), b.nnf(negate)),
            (Next(a), false) | (WeakNext(a), true) => Ltlf::next(a.nnf(negate)),
            (WeakNext(a), false) | (Next(a), true) => Ltlf::weak_next(a.nnf(negate)),
            (Until(a, b), false) | (Release(a, b), true) => {
                Ltlf::until(a.nnf(negate), b.nnf(negate))
            }
            (Release(a, b), false) | (Until(a, b), true) => {
                Ltlf::release(a.nnf(negate), b.nnf(negate))
            }
            (Eventually(a), false) | (Always(a), true) => Ltlf::until(True, a.nnf(negate)),
            (Always(a), false) | (Eventually(a), true) => Ltlf::release(False, a.nnf(negate)),
        }
    }

    /// Truth on the empty trace, for a normalized formula.
    pub fn holds_on_empty(&self) -> bool {
        use Ltlf::*;
        match self {
            True | WeakNext(_) | Release(..) | Always(_) => true,
            False | Atom { .. } | NegAtom { .. } | Next(_) | Until(..) | Eventually(_) => false,
            And(a, b) => a.holds_on_empty() && b.holds_on_empty(),
            Or(a, b) => a.holds_on_empty() || b.holds_on_empty(),
            Not(_) => self.normalize().holds_on_empty(),
        }
    }

    /// Distinct subformulas, including the formula itself.
    pub fn closure(&self) -> BTreeSet<Ltlf> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<Ltlf>) {
        use Ltlf::*;
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            True | False | Atom { .. } | NegAtom { .. } => {}
            Not(a) | Next(a) | WeakNext(a) | Eventually(a) | Always(a) => a.collect(out),
            And(a, b) | Or(a, b) | Until(a, b) | Release(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    /// Channels tested by atoms.
    pub fn channels(&self) -> ChannelMask {
        ChannelMask::new(
            self.closure()
                .iter()
                .filter_map(|f| match f {
                    Ltlf::Atom { channel, .. } | Ltlf::NegAtom { channel, .. } => Some(*channel),
                    _ => None,
                })
                .collect(),
        )
    }

    /// Nesting depth of operators; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        use Ltlf::*;
        match self {
            True | False | Atom { .. } | NegAtom { .. } => 0,
            Not(a) | Next(a) | WeakNext(a) | Eventually(a) | Always(a) => 1 + a.depth(),
            And(a, b) | Or(a, b) | Until(a, b) | Release(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Fully parenthesized text that [`parse`] reads back.
    pub fn render(&self, alphabet: &ProductAlphabet) -> String {
        use Ltlf::*;
        let sym = |c: usize, s: usize| {
            alphabet
                .channels()
                .get(c)
                .and_then(|ch| ch.get(s))
                .cloned()
                .unwrap_or_else(|| format!("#{s}"))
        };
        match self {
            True => "true".into(),
            False => "false".into(),
            Atom { channel, symbol } => format!("p{channel}={}", sym(*channel, *symbol)),
            NegAtom { channel, symbol } => format!("!p{channel}={}", sym(*channel, *symbol)),
            Not(a) => format!("!({})", a.render(alphabet)),
            And(a, b) => format!("({} & {})", a.render(alphabet), b.render(alphabet)),
            Or(a, b) => format!("({} | {})", a.render(alphabet), b.render(alphabet)),
            Next(a) => format!("X({})", a.render(alphabet)),
            WeakNext(a) => format!("N({})", a.render(alphabet)),
            Until(a, b) => format!("({} U {})", a.render(alphabet), b.render(alphabet)),
            Release(a, b) => format!("({} R {})", a.render(alphabet), b.render(alphabet)),
            Eventually(a) => format!("F({})", a.render(alphabet)),
            Always(a) => format!("G({})", a.render(alphabet)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_pushes_negation_to_atoms() {
        let a = Ltlf::atom(0, 0);
        let f = Ltlf::not(Ltlf::eventually(Ltlf::next(a.clone())));
        let n = f.normalize();
        assert_eq!(
            n,
            Ltlf::release(
                Ltlf::False,
                Ltlf::weak_next(Ltlf::NegAtom {
                    channel: 0,
                    symbol: 0
                })
            )
        );
        assert_eq!(Ltlf::not(Ltlf::not(a.clone())).normalize(), a);
    }

    #[test]
    fn empty_trace_convention() {
        let a = Ltlf::atom(0, 0);
        assert!(Ltlf::always(a.clone()).normalize().holds_on_empty());
        assert!(Ltlf::weak_next(a.clone()).holds_on_empty());
        assert!(!Ltlf::eventually(a.clone()).normalize().holds_on_empty());
        assert!(!Ltlf::next(Ltlf::True).holds_on_empty());
        assert!(!a.holds_on_empty());
        assert!(Ltlf::True.holds_on_empty());
        // ¬F a = G ¬a holds on the empty trace; ¬a does not
        assert!(Ltlf::not(Ltlf::eventually(a.clone())).holds_on_empty());
        assert!(!Ltlf::not(a).holds_on_empty());
    }

    #[test]
    fn render_roundtrips_through_parse() {
        let sigma = ProductAlphabet::from_symbols(&[&["a", "b"], &["c", "d"]]).unwrap();
        let f = Ltlf::until(
            Ltlf::not(Ltlf::atom(0, 1)),
            Ltlf::and(Ltlf::always(Ltlf::atom(1, 0)), Ltlf::weak_next(Ltlf::False)),
        );
        assert_eq!(parse(&f.render(&sigma), &sigma).unwrap(), f);
    }
}
