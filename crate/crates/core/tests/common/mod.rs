#![allow(dead_code)]

use ibg_core::alphabet::ChannelMask;
use ibg_core::automata::{Afa, Dfa, Nfa, PosFormula};
use ibg_core::game::{Ibg, MooreMachine, StrategyProfile};
use ibg_core::{Goal, Letter, ProductAlphabet, RestrictedLetter};
use proptest::prelude::*;

pub fn alphabet(max_agents: usize) -> impl Strategy<Value = ProductAlphabet> {
    prop::collection::vec(1usize..=2, 1..=max_agents).prop_map(|sizes| {
        let channels = sizes
            .iter()
            .enumerate()
            .map(|(i, &n)| (0..n).map(|s| format!("{}{}", (b'a' + s as u8) as char, i)).collect())
            .collect();
        ProductAlphabet::new(channels).unwrap()
    })
}

pub fn mask(k: usize) -> impl Strategy<Value = ChannelMask> {
    prop_oneof![
        Just(ChannelMask::full(k)),
        prop::collection::vec(any::<bool>(), k).prop_map(|bits| {
            ChannelMask::new(bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i).collect())
        }),
    ]
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

fn accepting(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(prop::bool::weighted(0.3), n)
        .prop_map(|bits| bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i).collect())
}

pub fn dfa(sigma: ProductAlphabet, max_states: usize) -> impl Strategy<Value = Dfa> {
    let k = sigma.num_channels();
    (1..=max_states, mask(k)).prop_flat_map(move |(n, m)| {
        let width = sigma.restricted_size(&m);
        let sigma = sigma.clone();
        (
            prop::collection::vec(prop::collection::vec(0..n, width), n),
            accepting(n),
            0..n,
        )
            .prop_map(move |(table, acc, init)| {
                Dfa::new(sigma.clone(), m.clone(), names(n), init, acc, table).unwrap()
            })
    })
}

pub fn nfa(sigma: ProductAlphabet, max_states: usize) -> impl Strategy<Value = Nfa> {
    let k = sigma.num_channels();
    (1..=max_states, mask(k)).prop_flat_map(move |(n, m)| {
        let width = sigma.restricted_size(&m);
        let sigma = sigma.clone();
        (
            prop::collection::vec((0..n, 0..width, 0..n), 0..=(2 * n * width)),
            accepting(n),
        )
            .prop_map(move |(triples, acc)| {
                let triples: Vec<(usize, RestrictedLetter, usize)> = triples
                    .into_iter()
                    .map(|(p, r, q)| (p, sigma.restricted_at(&m, r), q))
                    .collect();
                Nfa::from_triples(sigma.clone(), m.clone(), names(n), 0, acc, triples).unwrap()
            })
    })
}

pub fn pos_formula(n: usize) -> impl Strategy<Value = PosFormula> {
    let leaf = prop_oneof![
        1 => Just(PosFormula::True),
        1 => Just(PosFormula::False),
        6 => (0..n).prop_map(PosFormula::State),
    ];
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..=3).prop_map(PosFormula::And),
            prop::collection::vec(inner, 1..=3).prop_map(PosFormula::Or),
        ]
    })
}

pub fn afa(sigma: ProductAlphabet, max_states: usize) -> impl Strategy<Value = Afa> {
    let k = sigma.num_channels();
    (1..=max_states, mask(k)).prop_flat_map(move |(n, m)| {
        let width = sigma.restricted_size(&m);
        let sigma = sigma.clone();
        (
            prop::collection::vec(prop::collection::vec(pos_formula(n), width), n),
            accepting(n),
        )
            .prop_map(move |(delta, acc)| {
                Afa::new(sigma.clone(), m.clone(), names(n), 0, acc, delta).unwrap()
            })
    })
}

pub fn machine(sigma: ProductAlphabet, owner: usize, max_states: usize) -> impl Strategy<Value = MooreMachine> {
    let k = sigma.num_channels();
    (1..=max_states, mask(k)).prop_flat_map(move |(n, m)| {
        let width = sigma.restricted_size(&m);
        let out = sigma.channel_size(owner);
        let sigma = sigma.clone();
        (
            prop::collection::vec(prop::collection::vec(0..n, width), n),
            prop::collection::vec(0..out, n),
        )
            .prop_map(move |(table, output)| {
                MooreMachine::new(sigma.clone(), owner, m.clone(), names(n), 0, table, output).unwrap()
            })
    })
}

pub fn profile(sigma: ProductAlphabet, max_states: usize) -> impl Strategy<Value = StrategyProfile> {
    let machines: Vec<_> = (0..sigma.num_channels())
        .map(|i| machine(sigma.clone(), i, max_states))
        .collect();
    machines.prop_map(|ms| StrategyProfile::new(ms).unwrap())
}

/// A goal of any kind.
pub fn goal(sigma: ProductAlphabet, max_states: usize) -> impl Strategy<Value = Goal> {
    prop_oneof![
        dfa(sigma.clone(), max_states).prop_map(Goal::Dfa),
        nfa(sigma.clone(), max_states).prop_map(Goal::Nfa),
        afa(sigma, max_states).prop_map(Goal::Afa),
    ]
}

pub fn game_with(
    sigma: ProductAlphabet,
    goal_of: impl Fn(ProductAlphabet) -> BoxedStrategy<Goal>,
) -> impl Strategy<Value = Ibg> {
    let goals: Vec<_> = (0..sigma.num_channels()).map(|_| goal_of(sigma.clone())).collect();
    goals.prop_map(move |gs| Ibg::unnamed(sigma.clone(), gs).unwrap())
}

pub fn dfa_game(max_agents: usize, max_states: usize) -> impl Strategy<Value = Ibg> {
    alphabet(max_agents).prop_flat_map(move |s| {
        game_with(s, move |s| dfa(s, max_states).prop_map(Goal::Dfa).boxed())
    })
}

pub fn mixed_game(max_agents: usize, max_states: usize) -> impl Strategy<Value = Ibg> {
    alphabet(max_agents).prop_flat_map(move |s| game_with(s, move |s| goal(s, max_states).boxed()))
}

/// Every word over `sigma` up to length `max_len`, shortest first.
pub fn words(sigma: &ProductAlphabet, max_len: usize) -> Vec<Vec<Letter>> {
    let letters: Vec<Letter> = sigma.letters().collect();
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for l in &letters {
                let mut w = out[i].clone();
                w.push(l.clone());
                out.push(w);
            }
        }
        start = end;
    }
    out
}

pub fn word(sigma: ProductAlphabet, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    let n = sigma.size();
    prop::collection::vec(0..n, 0..=max_len)
        .prop_map(move |ranks| ranks.into_iter().map(|r| sigma.letter_at(r)).collect())
}
