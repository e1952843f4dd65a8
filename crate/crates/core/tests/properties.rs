mod common;

use common::*;
use ibg_core::automata::{afa_to_dfa, afa_to_nfa, determinize, Afa, Nfa};
use ibg_core::game::{primary_trace, product_profile, winning_set, MooreMachine};
use ibg_core::ltlf::{compile_to_afa, parse, Ltlf};
use ibg_core::oracle::{ltlf_holds, oracle_verify, OracleConfig};
use ibg_core::realizability::{realizable, DeviationGame, ProductBuchi};
use ibg_core::safety::{solve_safety, Arena, Player};
use ibg_core::verification::{verify, Violation};
use ibg_core::{AgentSet, Goal, Letter, ProductAlphabet, StateId, UltimatelyPeriodicWord};
use proptest::prelude::*;

fn naive_win1(arena: &Arena, safe: &[bool]) -> Vec<bool> {
    let n = arena.num_vertices();
    let mut win1: Vec<bool> = (0..n).map(|v| !safe[v]).collect();
    for _ in 0..=n {
        let next: Vec<bool> = (0..n)
            .map(|v| {
                win1[v]
                    || match arena.owner(v) {
                        Player::One => arena.successors(v).iter().any(|&w| win1[w]),
                        Player::Zero => arena.successors(v).iter().all(|&w| win1[w]),
                    }
            })
            .collect();
        win1 = next;
    }
    win1
}

fn arena() -> impl Strategy<Value = (Arena, Vec<bool>)> {
    (1usize..=50).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec((0..n, 0..n), 0..=3 * n),
            prop::collection::vec(prop::bool::weighted(0.8), n),
        )
            .prop_map(move |(owners, edges, safe)| {
                let mut a = Arena::new();
                for o in owners {
                    a.add_vertex(if o { Player::One } else { Player::Zero });
                }
                for (u, v) in edges {
                    a.add_edge(u, v).unwrap();
                }
                (a, safe)
            })
    })
}

fn lasso(sigma: ProductAlphabet) -> impl Strategy<Value = UltimatelyPeriodicWord> {
    (word(sigma.clone(), 3), word(sigma, 3).prop_filter("nonempty period", |v| !v.is_empty()))
        .prop_map(|(u, v)| UltimatelyPeriodicWord::new(u, v).unwrap())
}

fn ltlf(sigma: ProductAlphabet) -> impl Strategy<Value = Ltlf> {
    let atoms: Vec<Ltlf> = (0..sigma.num_channels())
        .flat_map(|c| (0..sigma.channel_size(c)).map(move |s| Ltlf::atom(c, s)))
        .collect();
    let leaf = prop_oneof![
        1 => Just(Ltlf::True),
        1 => Just(Ltlf::False),
        6 => prop::sample::select(atoms),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Ltlf::not),
            inner.clone().prop_map(Ltlf::next),
            inner.clone().prop_map(Ltlf::weak_next),
            inner.clone().prop_map(Ltlf::eventually),
            inner.clone().prop_map(Ltlf::always),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ltlf::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ltlf::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ltlf::until(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Ltlf::release(a, b)),
        ]
    })
}

fn wrap_nfa(g: &Goal) -> Goal {
    Goal::Nfa(Nfa::from(&g.to_dfa()))
}

fn wrap_afa(g: &Goal) -> Goal {
    Goal::Afa(Afa::from(&g.to_dfa()))
}

/// Replays a deviant-trace violation against the profile: every letter must
/// agree with the profile off channel `j`, and the goal must accept.
fn replay(game: &ibg_core::Ibg, profile: &ibg_core::StrategyProfile, j: usize, path: &[Letter]) -> bool {
    let machines = profile.machines();
    let mut states: Vec<StateId> = machines.iter().map(MooreMachine::initial).collect();
    for l in path {
        for (i, m) in machines.iter().enumerate() {
            if i != j && m.output(states[i]) != l.pick(i) {
                return false;
            }
        }
        states = machines.iter().zip(&states).map(|(m, &s)| m.step(s, l)).collect();
    }
    game.goal(j).accepts(path)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinize_preserves_language(
        (a, ws) in alphabet(3).prop_flat_map(|s| (nfa(s.clone(), 4), prop::collection::vec(word(s, 8), 20)))
    ) {
        let d = determinize(&a);
        for w in &ws {
            prop_assert_eq!(a.accepts(w), d.accepts(w));
        }
    }

    #[test]
    fn afa_conversions_preserve_language(
        (a, ws) in alphabet(3).prop_flat_map(|s| (afa(s.clone(), 4), prop::collection::vec(word(s, 8), 20)))
    ) {
        let n = afa_to_nfa(&a);
        let d = afa_to_dfa(&a);
        for w in &ws {
            prop_assert_eq!(a.accepts(w), n.accepts(w));
            prop_assert_eq!(a.accepts(w), d.accepts(w));
        }
    }

    #[test]
    fn trim_preserves_language(
        (a, ws) in alphabet(2).prop_flat_map(|s| (dfa(s.clone(), 5), prop::collection::vec(word(s, 6), 20)))
    ) {
        let t = a.trim();
        prop_assert!(t.num_states() <= a.num_states() + 1);
        for w in &ws {
            prop_assert_eq!(a.accepts(w), t.accepts(w));
        }
    }

    #[test]
    fn prefix_acceptance_agrees_across_kinds(
        (d, w) in alphabet(3).prop_flat_map(|s| (dfa(s.clone(), 4), lasso(s)))
    ) {
        let g = Goal::Dfa(d);
        let want = g.accepts_prefix(&w).unwrap();
        prop_assert_eq!(wrap_nfa(&g).accepts_prefix(&w).unwrap(), want);
        prop_assert_eq!(wrap_afa(&g).accepts_prefix(&w).unwrap(), want);
        // brute force over a long enough unrolling
        let bound = (g.num_states() + 1) * w.lasso_len() + 1;
        let brute = (0..=bound).any(|n| g.accepts(&w.take(n)));
        prop_assert_eq!(brute, want);
    }

    #[test]
    fn winning_set_ignores_unrolling(
        (game, w) in mixed_game(3, 3).prop_flat_map(|g| { let s = g.alphabet().clone(); (Just(g), lasso(s)) })
    ) {
        prop_assert_eq!(winning_set(&w, &game).unwrap(), winning_set(&w.unrolled(), &game).unwrap());
    }

    #[test]
    fn solver_matches_naive_fixpoint((a, safe) in arena()) {
        let sol = solve_safety(&a, &safe);
        let naive = naive_win1(&a, &safe);
        for (v, &lost) in naive.iter().enumerate() {
            prop_assert_eq!(sol.wins1(v), lost);
            prop_assert_ne!(sol.wins0(v), sol.wins1(v));
            if sol.wins0(v) {
                match a.owner(v) {
                    Player::One => prop_assert!(a.successors(v).iter().all(|&w| sol.wins0(w))),
                    Player::Zero => {
                        let s = sol.strategy(v).expect("strategy on Win0");
                        prop_assert!(a.successors(v).contains(&s) && sol.wins0(s));
                    }
                }
            }
        }
    }

    #[test]
    fn primary_trace_matches_simulation(
        p in alphabet(3).prop_flat_map(|s| profile(s, 3))
    ) {
        let g = product_profile(&p);
        let t = primary_trace(&g);
        prop_assert!(t.lasso_len() <= g.num_states());
        let bound = p.machines().iter().map(|m| m.num_states()).product::<usize>();
        prop_assert!(g.num_states() <= bound);
        let mut states: Vec<usize> = p.machines().iter().map(MooreMachine::initial).collect();
        for i in 0..3 * g.num_states() {
            let l = Letter::new(p.machines().iter().zip(&states).map(|(m, &s)| m.output(s)).collect());
            prop_assert_eq!(t.letter_at(i), &l);
            states = p.machines().iter().zip(&states).map(|(m, &s)| m.step(s, &l)).collect();
        }
    }

    #[test]
    fn bounded_machines_ignore_other_channels(
        (m, a, b) in alphabet(3).prop_flat_map(|s| {
            let n = s.size();
            (machine(s.clone(), 0, 3), 0..n, 0..n).prop_map(move |(m, a, b)| (m, s.letter_at(a), s.letter_at(b)))
        })
    ) {
        let agree = m.mask().iter().all(|c| a.pick(c) == b.pick(c));
        if agree {
            for s in 0..m.num_states() {
                prop_assert_eq!(m.step(s, &a), m.step(s, &b));
            }
        }
    }

    #[test]
    fn ltlf_compilation_matches_evaluator(
        (s, f, ws) in alphabet(2).prop_flat_map(|s| (Just(s.clone()), ltlf(s.clone()), prop::collection::vec(word(s, 6), 16)))
    ) {
        let afa = compile_to_afa(&f, &s).unwrap();
        prop_assert!(afa.num_states() <= f.normalize().closure().len() + 1);
        for w in &ws {
            prop_assert_eq!(afa.accepts(w), ltlf_holds(&f, w), "{:?} on {:?}", f, w);
        }
        prop_assert_eq!(parse(&f.render(&s), &s).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn verify_matches_oracle(
        (game, p, bits) in mixed_game(3, 4).prop_flat_map(|g| {
            let s = g.alphabet().clone();
            let k = g.num_agents();
            (Just(g), profile(s, 3), 0u64..(1 << k))
        })
    ) {
        let w = AgentSet::from_bits(bits);
        let report = verify(&game, w, &p).unwrap();
        let want = oracle_verify(&game, w, &p, &OracleConfig::default()).unwrap();
        prop_assert_eq!(report.is_equilibrium, want);
        prop_assert_eq!(report.is_equilibrium, report.agents.iter().all(|a| a.passed));
        for a in &report.agents {
            if let Some(Violation::DeviantTrace { path, .. }) = &a.violation {
                prop_assert!(replay(&game, &p, a.agent, path));
            }
        }
    }

    #[test]
    fn realizability_is_kind_invariant_and_witnesses_verify(game in dfa_game(3, 3)) {
        let nfa = game.map_goals(wrap_nfa).unwrap();
        let afa = game.map_goals(wrap_afa).unwrap();
        for w in AgentSet::subsets(game.num_agents()) {
            let v = realizable(&game, w).unwrap();
            prop_assert_eq!(realizable(&nfa, w).unwrap().realizable, v.realizable);
            prop_assert_eq!(realizable(&afa, w).unwrap().realizable, v.realizable);
            if let Some(wit) = v.witness {
                prop_assert!(verify(&game, w, &wit.profile).unwrap().is_equilibrium);
                prop_assert!(oracle_verify(&game, w, &wit.profile, &OracleConfig::default()).unwrap());
            }
        }
    }

    #[test]
    fn pending_set_only_shrinks(game in dfa_game(3, 3)) {
        let dfas: Vec<_> = game.goals().iter().map(|g| g.to_dfa()).collect();
        for w in AgentSet::subsets(game.num_agents()) {
            let games: Vec<Option<DeviationGame>> = (0..game.num_agents())
                .map(|j| (!w.contains(j)).then(|| DeviationGame::new(&dfas[j], j).unwrap()))
                .collect();
            for b in [ProductBuchi::build(&dfas, w, None), ProductBuchi::build(&dfas, w, Some(&games))] {
                for s in 0..b.num_states() {
                    let u = b.state(s).pending;
                    for &(_, t) in b.transitions(s) {
                        let v = b.state(t).pending;
                        prop_assert_eq!(v.bits() & !u.bits(), 0);
                    }
                }
            }
        }
    }
}
