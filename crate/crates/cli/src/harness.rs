//! Randomized cross-checks of the engines against the brute-force oracles.

use std::fmt;

use ibg_core::automata::{afa_to_dfa, afa_to_nfa, determinize, Afa, Nfa};
use ibg_core::ltlf::{compile_to_afa, Ltlf};
use ibg_core::oracle::{ltlf_holds, oracle_safety_win1, oracle_table, oracle_verify, OracleConfig};
use ibg_core::realizability::{realizable, Verdict};
use ibg_core::safety::{solve_safety, Player};
use ibg_core::verification::verify;
use ibg_core::{AgentSet, Goal, Ibg, ProductAlphabet};
use rand::Rng;

use crate::corpus::{self, Kind};

/// Outcome of one cross-check: how many cases ran and which disagreed.
#[derive(Debug, Clone, Default)]
pub struct Check {
    pub cases: usize,
    pub failed: usize,
    /// The first few disagreements.
    pub examples: Vec<String>,
    pub note: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn fail(&mut self, msg: impl FnOnce() -> String) {
        self.failed += 1;
        if self.examples.len() < 5 {
            self.examples.push(msg());
        }
    }

    pub fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(msg);
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} cases, {} failed", self.cases, self.failed)?;
        if !self.note.is_empty() {
            write!(f, "; {}", self.note)?;
        }
        for e in &self.examples {
            write!(f, "\n    {e}")?;
        }
        Ok(())
    }
}

/// `verify` against `oracle_verify` on random (game, W, profile) triples:
/// up to three agents with at most two symbols each, goals of every kind
/// with at most four states, profiles with at most three states per machine.
/// Every winning set is tried for each (game, profile) pair.
pub fn verify_vs_oracle(seed: u64, pairs: usize) -> Check {
    let mut rng = corpus::rng(seed);
    let mut check = Check::default();
    let config = OracleConfig::default();
    let mut equilibria = 0;
    for case in 0..pairs {
        let game = corpus::game(&mut rng, 3, 4, Kind::Mixed);
        let profile = corpus::profile(&mut rng, game.alphabet(), 3);
        for w in AgentSet::subsets(game.num_agents()) {
            let got = verify(&game, w, &profile).map(|r| r.is_equilibrium);
            let want = oracle_verify(&game, w, &profile, &config);
            if want == Ok(true) {
                equilibria += 1;
            }
            check.expect(matches!((&got, &want), (Ok(a), Ok(b)) if a == b), || {
                format!("pair {case}, W={:#b}: verify {got:?}, oracle {want:?}", w.bits())
            });
        }
    }
    check.note = format!("{equilibria} equilibria");
    check
}

fn wrapped(game: &Ibg) -> [Ibg; 3] {
    let nfa = game
        .map_goals(|g| Goal::Nfa(Nfa::from(&g.to_dfa())))
        .expect("same alphabet");
    let afa = game
        .map_goals(|g| Goal::Afa(Afa::from(&g.to_dfa())))
        .expect("same alphabet");
    [game.clone(), nfa, afa]
}

/// Random games with DFA goals: up to three agents with at most two symbols
/// each, goals with at most four states.
pub fn dfa_corpus(seed: u64, games: usize) -> Vec<Ibg> {
    let mut rng = corpus::rng(seed);
    (0..games).map(|_| corpus::game(&mut rng, 3, 4, Kind::Dfa)).collect()
}

/// Realizability on `games` and on the same games with every goal rewrapped
/// as an NFA and as an AFA, for every winning set. The first check compares
/// the three verdicts; the second checks every witness with both `verify`
/// and `oracle_verify`.
pub fn realizability_corpus(games: &[Ibg]) -> (Check, Check) {
    let mut same = Check::default();
    let mut witnesses = Check::default();
    let mut positive = 0;
    for (case, game) in games.iter().enumerate() {
        let variants = wrapped(game);
        for w in AgentSet::subsets(game.num_agents()) {
            let verdicts: Vec<_> = variants.iter().map(|g| realizable(g, w)).collect();
            let answers: Vec<Option<bool>> = verdicts
                .iter()
                .map(|v| v.as_ref().ok().map(|v| v.realizable))
                .collect();
            same.expect(answers[0].is_some() && answers.iter().all(|a| *a == answers[0]), || {
                format!("game {case}, W={:#b}: dfa/nfa/afa gave {answers:?}", w.bits())
            });
            if answers[0] == Some(true) {
                positive += 1;
            }
            for (g, v) in variants.iter().zip(&verdicts) {
                if let Ok(v) = v {
                    check_witness(&mut witnesses, g, v, || format!("game {case}, W={:#b}", w.bits()));
                }
            }
        }
    }
    same.note = format!("{positive} realizable");
    witnesses.note = "each checked by verify and oracle_verify".into();
    (same, witnesses)
}

/// A realizable verdict must carry a witness that both checkers accept.
pub fn check_witness(check: &mut Check, game: &Ibg, v: &Verdict, label: impl FnOnce() -> String) {
    match &v.witness {
        Some(wit) => {
            let fast = verify(game, v.winners, &wit.profile).map(|r| r.is_equilibrium);
            let slow = oracle_verify(game, v.winners, &wit.profile, &OracleConfig::default());
            check.expect(fast == Ok(true) && slow == Ok(true), || {
                format!("{}: witness gave verify {fast:?}, oracle {slow:?}", label())
            });
        }
        None if v.realizable => check.expect(false, || format!("{}: realizable without witness", label())),
        None => {}
    }
}

/// Whenever the profile enumeration finds a W-NE, `realizable` must agree.
/// Constants and then memory-1 profiles are enumerated, at most
/// `max_profiles` per game; two-agent games with two symbols each have only
/// 1028 such profiles.
pub fn onesided_vs_realizable(games: &[Ibg], max_profiles: usize) -> Check {
    let mut check = Check::default();
    let config = OracleConfig {
        max_profiles,
        ..OracleConfig::default()
    };
    let mut truncated = 0;
    let mut found = 0;
    for (case, game) in games.iter().enumerate() {
        let table = match oracle_table(game, &config) {
            Ok(t) => t,
            Err(e) => {
                check.expect(false, || format!("game {case}: oracle error {e}"));
                continue;
            }
        };
        truncated += usize::from(table.truncated);
        for (&w, p) in &table.found {
            found += 1;
            let got = realizable(game, w).map(|v| v.realizable);
            check.expect(got == Ok(true), || {
                format!("game {case}, W={:#b}: oracle profile {p:?} is a W-NE but realizable gave {got:?}", w.bits())
            });
        }
    }
    check.note = format!("{found} equilibria found, {truncated} of {} enumerations truncated", games.len());
    check
}

/// Determinization and AFA conversions on random automata, each checked on
/// random words of length at most eight.
pub fn conversions(seed: u64, automata: usize, words_each: usize) -> Check {
    let mut rng = corpus::rng(seed);
    let mut check = Check::default();
    for case in 0..automata {
        let sigma = corpus::alphabet(&mut rng, 3, 2);
        if case % 2 == 0 {
            let a = corpus::nfa(&mut rng, &sigma, 5);
            let d = determinize(&a);
            for _ in 0..words_each {
                let w = corpus::word(&mut rng, &sigma, 8);
                check.expect(a.accepts(&w) == d.accepts(&w), || format!("nfa {case} on {w:?}"));
            }
        } else {
            let a = corpus::afa(&mut rng, &sigma, 4);
            let n = afa_to_nfa(&a);
            let d = afa_to_dfa(&a);
            for _ in 0..words_each {
                let w = corpus::word(&mut rng, &sigma, 8);
                let want = a.accepts(&w);
                check.expect(n.accepts(&w) == want && d.accepts(&w) == want, || format!("afa {case} on {w:?}"));
            }
        }
    }
    check
}

/// The alphabet {a,b} x {c,d} and the leaves `p0=a`, `p1=c`.
pub fn ltlf_alphabet() -> (ProductAlphabet, Vec<Ltlf>) {
    let sigma = ProductAlphabet::from_symbols(&[&["a", "b"], &["c", "d"]]).expect("valid alphabet");
    (sigma, vec![Ltlf::atom(0, 0), Ltlf::atom(1, 0)])
}

/// LTLf compilation against the recursive evaluator: every formula of depth
/// at most `exhaustive_depth` over the two leaves on every word of length at
/// most `max_len`, then `sampled` random formulas of depth `sampled_depth`
/// (leaves also include `true`, `false`, `p0=b`, `p1=d`) on every such word.
pub fn ltlf_compilation(seed: u64, exhaustive_depth: usize, max_len: usize, sampled: usize, sampled_depth: usize) -> Check {
    let (sigma, leaves) = ltlf_alphabet();
    let words = corpus::all_words(&sigma, max_len);
    let mut check = Check::default();
    let run = |f: &Ltlf, check: &mut Check| {
        let afa = match compile_to_afa(f, &sigma) {
            Ok(a) => a,
            Err(e) => return check.expect(false, || format!("{}: {e}", f.render(&sigma))),
        };
        for w in &words {
            let want = ltlf_holds(f, w);
            if afa.accepts(w) != want {
                return check.expect(false, || format!("{} on {}", f.render(&sigma), show(&sigma, w)));
            }
        }
        check.cases += words.len() - 1;
        check.expect(true, String::new);
    };
    let all = corpus::all_ltlf(&leaves, exhaustive_depth);
    for f in &all {
        run(f, &mut check);
    }
    let mut wide = leaves.clone();
    wide.extend([Ltlf::True, Ltlf::False, Ltlf::atom(0, 1), Ltlf::atom(1, 1)]);
    let mut rng = corpus::rng(seed);
    for _ in 0..sampled {
        let f = corpus::ltlf(&mut rng, &wide, sampled_depth);
        run(&f, &mut check);
    }
    check.note = format!(
        "{} formulas of depth <= {exhaustive_depth} and {sampled} of depth {sampled_depth}, {} words of length <= {max_len}",
        all.len(),
        words.len()
    );
    check
}

fn show(sigma: &ProductAlphabet, w: &[ibg_core::Letter]) -> String {
    w.iter().map(|l| sigma.display_letter(l)).collect::<Vec<_>>().join("")
}

/// The attractor solver against naive fixpoint iteration on random arenas,
/// including the partition and the strategy.
pub fn safety_solver(seed: u64, arenas: usize, max_vertices: usize) -> Check {
    let mut rng = corpus::rng(seed);
    let mut check = Check::default();
    for case in 0..arenas {
        let (arena, safe) = corpus::arena(&mut rng, max_vertices);
        let sol = solve_safety(&arena, &safe);
        let win1 = oracle_safety_win1(&arena, &safe);
        let ok = (0..arena.num_vertices()).all(|v| {
            sol.wins1(v) == win1[v]
                && sol.wins0(v) != sol.wins1(v)
                && (!sol.wins0(v)
                    || match arena.owner(v) {
                        Player::One => arena.successors(v).iter().all(|&w| sol.wins0(w)),
                        Player::Zero => sol
                            .strategy(v)
                            .is_some_and(|s| arena.successors(v).contains(&s) && sol.wins0(s)),
                    })
        });
        check.expect(ok, || format!("arena {case} with {} vertices", arena.num_vertices()));
    }
    check
}

/// Goal DFA sizes reported for the suffix-NFA family.
pub fn suffix_blowup(range: std::ops::RangeInclusive<usize>) -> Check {
    let mut check = Check::default();
    let mut sizes = Vec::new();
    for n in range {
        let game = corpus::suffix_game(n);
        let v = realizable(&game, AgentSet::from_bits(1));
        let size = v.as_ref().map(|v| v.stats.goal_dfa_states[0]).unwrap_or(0);
        sizes.push(format!("n={n}: {size}"));
        check.expect(size >= 1 << (n - 1), || format!("n={n}: determinized to {size} states, want >= {}", 1 << (n - 1)));
    }
    check.note = sizes.join(", ");
    check
}

/// A random seed derived from `seed`, for callers that run several checks.
pub fn subseed(seed: u64, index: u64) -> u64 {
    let mut rng = corpus::rng(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.gen()
}
