//! Nash-equilibrium analysis for iterated Boolean games whose agents carry
//! finite-word automaton goals.
//!
//! Two questions are answered:
//!
//! * **realizability**: given a game and a set `W` of agents, does a
//!   pure-strategy Nash equilibrium exist whose primary trace satisfies the
//!   goals of exactly the agents in `W`? See [`realizability::realizable`].
//! * **verification**: given a profile of Moore-machine strategies, is it such
//!   an equilibrium? See [`verification::verify`].
//!
//! Goals may be deterministic, nondeterministic, or alternating finite
//! automata (and LTLf formulas, compiled to alternating automata by
//! [`ltlf`]). A brute-force [`oracle`] is provided for differential testing.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod alphabet;
pub mod automata;
mod error;
pub mod game;
pub mod ltlf;
pub mod oracle;
pub mod realizability;
pub mod safety;
pub mod verification;

pub use alphabet::{AgentSet, ChannelMask, Letter, ProductAlphabet, RestrictedLetter};
pub use automata::{Afa, Dfa, Goal, Nfa, PosFormula, StateId, UltimatelyPeriodicWord};
pub use error::{Error, Result};
pub use game::{GlobalMoore, Ibg, MooreMachine, StrategyProfile};
