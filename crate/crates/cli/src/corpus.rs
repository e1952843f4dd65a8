//! Seeded random games, profiles, automata, and arenas.

use ibg_core::alphabet::ChannelMask;
use ibg_core::automata::{Afa, Dfa, Nfa, PosFormula};
use ibg_core::game::{Ibg, MooreMachine, StrategyProfile};
use ibg_core::ltlf::Ltlf;
use ibg_core::safety::{Arena, Player};
use ibg_core::{Goal, Letter, ProductAlphabet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Dfa,
    Nfa,
    Afa,
    Mixed,
}

pub fn alphabet(rng: &mut CorpusRng, max_agents: usize, max_symbols: usize) -> ProductAlphabet {
    let k = rng.gen_range(1..=max_agents);
    let channels = (0..k)
        .map(|i| {
            // single-symbol channels are rare: they make the agent powerless
            let n = if max_symbols > 1 && rng.gen_bool(0.85) {
                rng.gen_range(2..=max_symbols)
            } else {
                1
            };
            (0..n).map(|s| format!("{}{i}", (b'a' + s as u8) as char)).collect()
        })
        .collect();
    ProductAlphabet::new(channels).expect("generated alphabet is valid")
}

pub fn mask(rng: &mut CorpusRng, k: usize) -> ChannelMask {
    if rng.gen_bool(0.5) {
        ChannelMask::full(k)
    } else {
        ChannelMask::new((0..k).filter(|_| rng.gen_bool(0.6)).collect())
    }
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

fn accepting(rng: &mut CorpusRng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.3)).collect()
}

pub fn dfa(rng: &mut CorpusRng, sigma: &ProductAlphabet, max_states: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let m = mask(rng, sigma.num_channels());
    let width = sigma.restricted_size(&m);
    let table = (0..n)
        .map(|_| (0..width).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let acc = accepting(rng, n);
    Dfa::new(sigma.clone(), m, names(n), 0, acc, table).expect("generated DFA is valid")
}

pub fn nfa(rng: &mut CorpusRng, sigma: &ProductAlphabet, max_states: usize) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let m = mask(rng, sigma.num_channels());
    let width = sigma.restricted_size(&m);
    let mut triples = Vec::new();
    for p in 0..n {
        for r in 0..width {
            for q in 0..n {
                if rng.gen_bool(0.7 / n as f64 + 0.1) {
                    triples.push((p, sigma.restricted_at(&m, r), q));
                }
            }
        }
    }
    let acc = accepting(rng, n);
    Nfa::from_triples(sigma.clone(), m, names(n), 0, acc, triples).expect("generated NFA is valid")
}

pub fn pos_formula(rng: &mut CorpusRng, n: usize, depth: usize) -> PosFormula {
    if depth == 0 || rng.gen_bool(0.5) {
        return match rng.gen_range(0..8) {
            0 => PosFormula::True,
            1 => PosFormula::False,
            _ => PosFormula::State(rng.gen_range(0..n)),
        };
    }
    let args = (0..rng.gen_range(1..=3)).map(|_| pos_formula(rng, n, depth - 1)).collect();
    if rng.gen_bool(0.5) {
        PosFormula::And(args)
    } else {
        PosFormula::Or(args)
    }
}

pub fn afa(rng: &mut CorpusRng, sigma: &ProductAlphabet, max_states: usize) -> Afa {
    let n = rng.gen_range(1..=max_states);
    let m = mask(rng, sigma.num_channels());
    let width = sigma.restricted_size(&m);
    let delta = (0..n)
        .map(|_| (0..width).map(|_| pos_formula(rng, n, 2)).collect())
        .collect();
    let acc = accepting(rng, n);
    Afa::new(sigma.clone(), m, names(n), 0, acc, delta).expect("generated AFA is valid")
}

pub fn goal(rng: &mut CorpusRng, sigma: &ProductAlphabet, max_states: usize, kind: Kind) -> Goal {
    let kind = match kind {
        Kind::Mixed => *[Kind::Dfa, Kind::Nfa, Kind::Afa].choose(rng).expect("nonempty"),
        k => k,
    };
    match kind {
        Kind::Dfa => Goal::Dfa(dfa(rng, sigma, max_states)),
        Kind::Nfa => Goal::Nfa(nfa(rng, sigma, max_states)),
        _ => Goal::Afa(afa(rng, sigma, max_states)),
    }
}

pub fn game(rng: &mut CorpusRng, max_agents: usize, max_states: usize, kind: Kind) -> Ibg {
    let sigma = alphabet(rng, max_agents, 2);
    let goals = (0..sigma.num_channels())
        .map(|_| goal(rng, &sigma, max_states, kind))
        .collect();
    Ibg::unnamed(sigma, goals).expect("generated game is valid")
}

pub fn machine(rng: &mut CorpusRng, sigma: &ProductAlphabet, owner: usize, max_states: usize) -> MooreMachine {
    let n = rng.gen_range(1..=max_states);
    let m = mask(rng, sigma.num_channels());
    let width = sigma.restricted_size(&m);
    let table = (0..n)
        .map(|_| (0..width).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let output = (0..n).map(|_| rng.gen_range(0..sigma.channel_size(owner))).collect();
    MooreMachine::new(sigma.clone(), owner, m, names(n), 0, table, output).expect("generated machine is valid")
}

pub fn profile(rng: &mut CorpusRng, sigma: &ProductAlphabet, max_states: usize) -> StrategyProfile {
    let machines = (0..sigma.num_channels())
        .map(|i| machine(rng, sigma, i, max_states))
        .collect();
    StrategyProfile::new(machines).expect("generated profile is valid")
}

/// A random arena with `1..=max_vertices` vertices and its safe set.
pub fn arena(rng: &mut CorpusRng, max_vertices: usize) -> (Arena, Vec<bool>) {
    let n = rng.gen_range(1..=max_vertices);
    let mut a = Arena::new();
    for _ in 0..n {
        a.add_vertex(if rng.gen_bool(0.5) { Player::One } else { Player::Zero });
    }
    let edges = rng.gen_range(0..=3 * n);
    for _ in 0..edges {
        a.add_edge(rng.gen_range(0..n), rng.gen_range(0..n)).expect("vertices exist");
    }
    let safe = (0..n).map(|_| rng.gen_bool(0.8)).collect();
    (a, safe)
}

pub fn word(rng: &mut CorpusRng, sigma: &ProductAlphabet, max_len: usize) -> Vec<Letter> {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| sigma.letter_at(rng.gen_range(0..sigma.size()))).collect()
}

/// Every word of length at most `max_len`, shortest first.
pub fn all_words(sigma: &ProductAlphabet, max_len: usize) -> Vec<Vec<Letter>> {
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

fn unary() -> [fn(Ltlf) -> Ltlf; 5] {
    [Ltlf::not, Ltlf::next, Ltlf::weak_next, Ltlf::eventually, Ltlf::always]
}

fn binary() -> [fn(Ltlf, Ltlf) -> Ltlf; 4] {
    [Ltlf::and, Ltlf::or, Ltlf::until, Ltlf::release]
}

/// Every formula of depth at most `depth` built from `leaves`.
pub fn all_ltlf(leaves: &[Ltlf], depth: usize) -> Vec<Ltlf> {
    let mut all: Vec<Ltlf> = leaves.to_vec();
    for _ in 0..depth {
        let prev = all.clone();
        let mut next = leaves.to_vec();
        for op in unary() {
            next.extend(prev.iter().cloned().map(op));
        }
        for op in binary() {
            for a in &prev {
                for b in &prev {
                    next.push(op(a.clone(), b.clone()));
                }
            }
        }
        all = next;
    }
    all
}

/// A random formula of exactly the given depth.
pub fn ltlf(rng: &mut CorpusRng, leaves: &[Ltlf], depth: usize) -> Ltlf {
    if depth == 0 {
        return leaves.choose(rng).expect("nonempty leaves").clone();
    }
    let sub = |rng: &mut CorpusRng| {
        let d = rng.gen_range(0..depth);
        ltlf(rng, leaves, d)
    };
    if rng.gen_bool(0.4) {
        unary()[rng.gen_range(0..5)](ltlf(rng, leaves, depth - 1))
    } else {
        let (a, b) = if rng.gen_bool(0.5) {
            (ltlf(rng, leaves, depth - 1), sub(rng))
        } else {
            (sub(rng), ltlf(rng, leaves, depth - 1))
        };
        binary()[rng.gen_range(0..4)](a, b)
    }
}

/// Two agents over {a,b} and {c}; agent 0 wants the letter `n - 1` places
/// from the end of the play so far to carry `a`. The goal is an NFA with `n`
/// states whose smallest DFA has `2^(n-1)` states. Agent 1 never wins.
pub fn suffix_game(n: usize) -> Ibg {
    assert!(n >= 2, "the family starts at two states");
    let sigma = ProductAlphabet::from_symbols(&[&["a", "b"], &["c"]]).expect("valid alphabet");
    let m = ChannelMask::new(vec![0]);
    let a = sigma.restricted_at(&m, 0);
    let b = sigma.restricted_at(&m, 1);
    let mut triples = vec![(0, a.clone(), 0), (0, b.clone(), 0), (0, a.clone(), 1)];
    for q in 1..n - 1 {
        triples.push((q, a.clone(), q + 1));
        triples.push((q, b.clone(), q + 1));
    }
    let nfa = Nfa::from_triples(sigma.clone(), m, names(n), 0, vec![n - 1], triples).expect("valid NFA");
    let never = Dfa::new(sigma.clone(), ChannelMask::new(vec![]), names(1), 0, vec![], vec![vec![0]]).expect("valid DFA");
    Ibg::new(
        sigma,
        vec!["watcher".into(), "idle".into()],
        vec![Goal::Nfa(nfa), Goal::Dfa(never)],
    )
    .expect("valid game")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ibg_core::automata::determinize;

    #[test]
    fn seeds_are_reproducible() {
        let a = game(&mut rng(7), 3, 4, Kind::Mixed);
        let b = game(&mut rng(7), 3, 4, Kind::Mixed);
        assert_eq!(a, b);
        let p = profile(&mut rng(9), a.alphabet(), 3);
        assert_eq!(p, profile(&mut rng(9), a.alphabet(), 3));
    }

    #[test]
    fn formula_counts() {
        let leaves = [Ltlf::atom(0, 0), Ltlf::atom(1, 0)];
        assert_eq!(all_ltlf(&leaves, 0).len(), 2);
        assert_eq!(all_ltlf(&leaves, 1).len(), 2 + 5 * 2 + 4 * 4);
        assert_eq!(all_ltlf(&leaves, 2).len(), 2 + 5 * 28 + 4 * 28 * 28);
        let mut r = rng(1);
        for d in 0..4 {
            assert_eq!(ltlf(&mut r, &leaves, d).depth(), d);
        }
    }

    #[test]
    fn suffix_family_blows_up() {
        for n in 2..=5 {
            let g = suffix_game(n);
            let Goal::Nfa(a) = g.goal(0) else { unreachable!() };
            assert_eq!(a.num_states(), n);
            assert_eq!(determinize(a).num_states(), 1 << (n - 1));
        }
    }
}
