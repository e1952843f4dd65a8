//! Brute-force reference procedures for small instances.
//!
//! Nothing here shares code with the engines beyond the data types: the
//! primary trace comes from stepping each machine separately, goal automata
//! are run by a standalone forward evaluator, and deviations are explored by
//! plain breadth-first search over concrete states.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::{AgentSet, ChannelMask, Letter};
use crate::automata::{Afa, Goal, StateId};
use crate::error::{Error, Result};
use crate::game::{Ibg, MooreMachine, StrategyProfile};
use crate::ltlf::Ltlf;
use crate::safety::{Arena, Player};

/// Bounds for the brute-force searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Maximum number of search states per `oracle_verify` call.
    pub budget: usize,
    /// Strategy memory for profile enumeration: 0 (constants) or 1.
    pub memory: usize,
    /// Maximum number of profiles drawn from the enumeration.
    pub max_profiles: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            budget: 1_000_000,
            memory: 1,
            max_profiles: 100_000,
        }
    }
}

/// AFAs with more states than this are refused (models are enumerated over
/// all subsets).
const MAX_AFA_STATES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Config {
    Dfa(StateId),
    Nfa(BTreeSet<StateId>),
    /// Every state set that satisfies the pending obligations, as bitmasks.
    Afa(BTreeSet<u32>),
}

fn afa_models(afa: &Afa, set: u32, letter: &Letter) -> Vec<u32> {
    let n = afa.num_states();
    (0..1u32 << n)
        .filter(|&t| {
            (0..n).filter(|q| set >> q & 1 == 1).all(|q| {
                afa.formula(q, letter).eval(&|s| t >> s & 1 == 1)
            })
        })
        .collect()
}

fn start(goal: &Goal) -> Result<Config> {
    Ok(match goal {
        Goal::Dfa(a) => Config::Dfa(a.initial()),
        Goal::Nfa(a) => Config::Nfa([a.initial()].into_iter().collect()),
        Goal::Afa(a) => {
            if a.num_states() > MAX_AFA_STATES {
                return Err(Error::OracleOverflow {
                    budget: MAX_AFA_STATES,
                });
            }
            Config::Afa([1u32 << a.initial()].into_iter().collect())
        }
    })
}

fn advance(goal: &Goal, c: &Config, letter: &Letter) -> Config {
    match (goal, c) {
        (Goal::Dfa(a), Config::Dfa(q)) => Config::Dfa(a.step(*q, letter)),
        (Goal::Nfa(a), Config::Nfa(set)) => Config::Nfa(
            set.iter()
                .flat_map(|&q| a.successors(q, letter).iter().copied())
                .collect(),
        ),
        (Goal::Afa(a), Config::Afa(sets)) => Config::Afa(
            sets.iter()
                .flat_map(|&t| afa_models(a, t, letter))
                .collect(),
        ),
        _ => unreachable!("configuration kind follows the goal"),
    }
}

fn accepting(goal: &Goal, c: &Config) -> bool {
    match (goal, c) {
        (Goal::Dfa(a), Config::Dfa(q)) => a.is_accepting(*q),
        (Goal::Nfa(a), Config::Nfa(set)) => set.iter().any(|&q| a.is_accepting(q)),
        (Goal::Afa(a), Config::Afa(sets)) => sets.iter().any(|&t| {
            (0..a.num_states()).all(|q| t >> q & 1 == 0 || a.is_accepting(q))
        }),
        _ => unreachable!("configuration kind follows the goal"),
    }
}

/// The primary trace by stepping every machine on its own: returns the
/// lasso `(u, v)`.
fn simulate(profile: &StrategyProfile) -> (Vec<Letter>, Vec<Letter>) {
    let machines = profile.machines();
    let mut tuple: Vec<StateId> = machines.iter().map(MooreMachine::initial).collect();
    let mut seen: BTreeMap<Vec<StateId>, usize> = BTreeMap::new();
    let mut word: Vec<Letter> = Vec::new();
    loop {
        if let Some(&at) = seen.get(&tuple) {
            let period = word.split_off(at);
            return (word, period);
        }
        seen.insert(tuple.clone(), word.len());
        let letter = outputs(machines, &tuple);
        tuple = machines
            .iter()
            .zip(&tuple)
            .map(|(m, &s)| m.step(s, &letter))
            .collect();
        word.push(letter);
    }
}

fn outputs(machines: &[MooreMachine], tuple: &[StateId]) -> Letter {
    Letter::new(machines.iter().zip(tuple).map(|(m, &s)| m.output(s)).collect())
}

fn lasso_accepts(goal: &Goal, u: &[Letter], v: &[Letter]) -> Result<bool> {
    let mut seen = BTreeSet::new();
    let mut c = start(goal)?;
    let mut t = 0usize;
    loop {
        if accepting(goal, &c) {
            return Ok(true);
        }
        let pos = if t < u.len() { t } else { u.len() + (t - u.len()) % v.len() };
        if !seen.insert((c.clone(), pos)) {
            return Ok(false);
        }
        let letter = if pos < u.len() { &u[pos] } else { &v[pos - u.len()] };
        c = advance(goal, &c, letter);
        t += 1;
    }
}

/// Whether agent `j` has a unilateral deviation whose trace differs from the
/// primary trace and satisfies its goal.
fn deviation_succeeds(
    game: &Ibg,
    profile: &StrategyProfile,
    j: usize,
    budget: usize,
) -> Result<bool> {
    let goal = game.goal(j);
    let machines = profile.machines();
    let init: Vec<StateId> = machines.iter().map(MooreMachine::initial).collect();
    let start_state = (start(goal)?, init, false);
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start_state.clone());
    queue.push_back(start_state);
    while let Some((c, tuple, deviated)) = queue.pop_front() {
        if deviated && accepting(goal, &c) {
            return Ok(true);
        }
        let planned = outputs(machines, &tuple);
        for x in 0..game.alphabet().channel_size(j) {
            let letter = planned.with_pick(j, x);
            let next = (
                advance(goal, &c, &letter),
                machines
                    .iter()
                    .zip(&tuple)
                    .map(|(m, &s)| m.step(s, &letter))
                    .collect::<Vec<_>>(),
                deviated || x != planned.pick(j),
            );
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return Err(Error::OracleOverflow { budget });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// Decides whether `profile` is a W-NE of `game` by explicit simulation.
pub fn oracle_verify(
    game: &Ibg,
    winners: AgentSet,
    profile: &StrategyProfile,
    config: &OracleConfig,
) -> Result<bool> {
    game.check_agents(winners)?;
    profile.check_game(game)?;
    let (u, v) = simulate(profile);
    for (i, goal) in game.goals().iter().enumerate() {
        if lasso_accepts(goal, &u, &v)? != winners.contains(i) {
            return Ok(false);
        }
    }
    for j in (0..game.num_agents()).filter(|&j| !winners.contains(j)) {
        if deviation_succeeds(game, profile, j, config.budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The set of agents satisfied on the primary trace, by direct simulation.
pub fn oracle_winning_set(game: &Ibg, profile: &StrategyProfile) -> Result<AgentSet> {
    profile.check_game(game)?;
    let (u, v) = simulate(profile);
    let mut w = AgentSet::empty();
    for (i, goal) in game.goals().iter().enumerate() {
        if lasso_accepts(goal, &u, &v)? {
            w.insert(i);
        }
    }
    Ok(w)
}

/// Lexicographic stream of memory-0 or memory-1 profiles.
///
/// A memory-1 machine has one state per full letter plus an initial state
/// and moves to the state of the letter just read; its output table lists
/// the initial state's symbol first, then one symbol per letter in rank
/// order. Profiles vary the last agent fastest.
pub struct ProfileStream {
    game: Ibg,
    memory: usize,
    /// Output-table length per machine.
    width: usize,
    counters: Option<Vec<Vec<usize>>>,
    remaining: usize,
    truncated: bool,
}

impl ProfileStream {
    /// Whether the stream stopped at the profile limit before exhausting
    /// the enumeration.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    fn machine(&self, owner: usize, table: &[usize]) -> MooreMachine {
        let alphabet = self.game.alphabet().clone();
        if self.memory == 0 {
            return MooreMachine::constant(alphabet, owner, table[0])
                .expect("symbol is in range");
        }
        let letters = alphabet.size();
        let mut names = vec![String::from("init")];
        names.extend(alphabet.letters().map(|l| alphabet.display_letter(&l)));
        let row: Vec<StateId> = (1..=letters).collect();
        MooreMachine::new(
            alphabet.clone(),
            owner,
            ChannelMask::full(alphabet.num_channels()),
            names,
            0,
            vec![row; letters + 1],
            table.to_vec(),
        )
        .expect("memory-1 machine is well formed")
    }
}

impl Iterator for ProfileStream {
    type Item = StrategyProfile;

    fn next(&mut self) -> Option<StrategyProfile> {
        let counters = self.counters.as_ref()?;
        if self.remaining == 0 {
            self.truncated = true;
            self.counters = None;
            return None;
        }
        self.remaining -= 1;
        let profile = StrategyProfile::new(
            counters
                .iter()
                .enumerate()
                .map(|(i, t)| self.machine(i, t))
                .collect(),
        )
        .expect("enumerated profile is well formed");
        // odometer: last agent, last table entry fastest
        let mut counters = self.counters.take()?;
        let sizes: Vec<usize> = (0..counters.len())
            .map(|i| self.game.alphabet().channel_size(i))
            .collect();
        let mut done = true;
        'outer: for i in (0..counters.len()).rev() {
            for d in (0..self.width).rev() {
                counters[i][d] += 1;
                if counters[i][d] < sizes[i] {
                    done = false;
                    break 'outer;
                }
                counters[i][d] = 0;
            }
        }
        if !done {
            self.counters = Some(counters);
        }
        Some(profile)
    }
}

/// All profiles whose machines have the given memory, at most `limit` of
/// them.
pub fn enumerate_profiles(game: &Ibg, memory: usize, limit: usize) -> Result<ProfileStream> {
    let width = match memory {
        0 => 1,
        1 => game.alphabet().size() + 1,
        m => return Err(Error::Profile(format!("memory {m} is not supported (use 0 or 1)"))),
    };
    Ok(ProfileStream {
        game: game.clone(),
        memory,
        width,
        counters: Some(vec![vec![0; width]; game.num_agents()]),
        remaining: limit,
        truncated: false,
    })
}

/// Number of profiles of the given memory, if it fits in a `u128`.
pub fn profile_count(game: &Ibg, memory: usize) -> Option<u128> {
    let width = if memory == 0 { 1 } else { game.alphabet().size() as u32 + 1 };
    (0..game.num_agents()).try_fold(1u128, |acc, i| {
        (game.alphabet().channel_size(i) as u128)
            .checked_pow(width)
            .and_then(|m| acc.checked_mul(m))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OneSided {
    Found(StrategyProfile),
    /// No enumerated profile is a W-NE. `truncated` is set when the
    /// enumeration or a search hit its bound.
    Unknown { truncated: bool },
}

/// Searches constants first, then (for memory 1) memory-1 profiles, for a
/// W-NE. Never concludes unrealizability.
pub fn oracle_realizable_onesided(
    game: &Ibg,
    winners: AgentSet,
    config: &OracleConfig,
) -> Result<OneSided> {
    game.check_agents(winners)?;
    let mut truncated = false;
    let mut left = config.max_profiles;
    for memory in 0..=config.memory.min(1) {
        let mut stream = enumerate_profiles(game, memory, left)?;
        for p in stream.by_ref() {
            left -= 1;
            match oracle_verify(game, winners, &p, config) {
                Ok(true) => return Ok(OneSided::Found(p)),
                Ok(false) => {}
                Err(Error::OracleOverflow { .. }) => truncated = true,
                Err(e) => return Err(e),
            }
        }
        truncated |= stream.truncated();
    }
    Ok(OneSided::Unknown { truncated })
}

/// One row per winning set: the first profile found (constants first) that
/// is a W-NE for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleTable {
    pub found: BTreeMap<AgentSet, StrategyProfile>,
    pub profiles_checked: usize,
    pub truncated: bool,
}

/// Like [`oracle_realizable_onesided`] for every W at once: each profile is
/// checked only against its own primary winning set.
pub fn oracle_table(game: &Ibg, config: &OracleConfig) -> Result<OracleTable> {
    let mut table = OracleTable {
        found: BTreeMap::new(),
        profiles_checked: 0,
        truncated: false,
    };
    let total = 1usize << game.num_agents();
    for memory in 0..=config.memory.min(1) {
        let left = config.max_profiles - table.profiles_checked;
        let mut stream = enumerate_profiles(game, memory, left)?;
        for p in stream.by_ref() {
            table.profiles_checked += 1;
            let w = oracle_winning_set(game, &p)?;
            if table.found.contains_key(&w) {
                continue;
            }
            match oracle_verify(game, w, &p, config) {
                Ok(true) => {
                    table.found.insert(w, p);
                    if table.found.len() == total {
                        return Ok(table);
                    }
                }
                Ok(false) => {}
                Err(Error::OracleOverflow { .. }) => table.truncated = true,
                Err(e) => return Err(e),
            }
        }
        table.truncated |= stream.truncated();
    }
    Ok(table)
}

/// Finite-trace semantics of `formula` on `word`, evaluated recursively.
/// On the empty word the negation-normal-form convention applies.
pub fn ltlf_holds(formula: &Ltlf, word: &[Letter]) -> bool {
    if word.is_empty() {
        return formula.normalize().holds_on_empty();
    }
    holds_at(formula, word, 0)
}

fn holds_at(f: &Ltlf, w: &[Letter], i: usize) -> bool {
    use Ltlf::*;
    let n = w.len();
    match f {
        True => true,
        False => false,
        Atom { channel, symbol } => w[i].pick(*channel) == *symbol,
        NegAtom { channel, symbol } => w[i].pick(*channel) != *symbol,
        Not(a) => !holds_at(a, w, i),
        And(a, b) => holds_at(a, w, i) && holds_at(b, w, i),
        Or(a, b) => holds_at(a, w, i) || holds_at(b, w, i),
        Next(a) => i + 1 < n && holds_at(a, w, i + 1),
        WeakNext(a) => i + 1 >= n || holds_at(a, w, i + 1),
        Until(a, b) => (i..n).any(|k| holds_at(b, w, k) && (i..k).all(|m| holds_at(a, w, m))),
        Release(a, b) => (i..n).all(|k| holds_at(b, w, k) || (i..k).any(|m| holds_at(a, w, m))),
        Eventually(a) => (i..n).any(|k| holds_at(a, w, k)),
        Always(a) => (i..n).all(|k| holds_at(a, w, k)),
    }
}

/// Vertices from which player 1 forces a visit outside `safe`, by naive
/// iteration to the fixpoint. Player 0 loses at dead ends, player 1 wins
/// there.
pub fn oracle_safety_win1(arena: &Arena, safe: &[bool]) -> Vec<bool> {
    let n = arena.num_vertices();
    let mut win1: Vec<bool> = (0..n).map(|v| !safe[v]).collect();
    loop {
        let next: Vec<bool> = (0..n)
            .map(|v| {
                win1[v]
                    || match arena.owner(v) {
                        Player::One => arena.successors(v).iter().any(|&w| win1[w]),
                        Player::Zero => arena.successors(v).iter().all(|&w| win1[w]),
                    }
            })
            .collect();
        if next == win1 {
            return win1;
        }
        win1 = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fixtures::{ab_cd, contains_ac_nfa, letter};
    use crate::automata::{Afa, Dfa, Nfa};
    use crate::game::fixtures::*;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    fn set(xs: &[usize]) -> AgentSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn ev_constant_profile() {
        let g = ev_game();
        let p = constant_profile(&[0, 0]);
        assert!(oracle_verify(&g, set(&[0]), &p, &cfg()).unwrap());
        assert!(!oracle_verify(&g, set(&[0, 1]), &p, &cfg()).unwrap());
        assert!(!oracle_verify(&g, set(&[]), &p, &cfg()).unwrap());
        // (a,d) forever: agent 0 alone cannot make (a,c), agent 1 alone
        // cannot make (b,c)
        assert!(oracle_verify(&g, set(&[]), &constant_profile(&[0, 1]), &cfg()).unwrap());
        // (b,d) is not: agent 1 switches to c
        assert!(!oracle_verify(&g, set(&[]), &constant_profile(&[1, 1]), &cfg()).unwrap());
    }

    #[test]
    fn mp_has_no_constant_equilibrium() {
        let g = mp_game();
        for a in 0..2 {
            for b in 0..2 {
                let p = constant_profile(&[a, b]);
                for w in AgentSet::subsets(2) {
                    assert!(!oracle_verify(&g, w, &p, &cfg()).unwrap());
                }
            }
        }
    }

    #[test]
    fn goal_kinds_agree() {
        let g = ev_game();
        let nfa = g.map_goals(|x| match x {
            Goal::Dfa(d) => Goal::Nfa(Nfa::from(d)),
            other => other.clone(),
        });
        let afa = g.map_goals(|x| match x {
            Goal::Dfa(d) => Goal::Afa(Afa::from(d)),
            other => other.clone(),
        });
        let (nfa, afa) = (nfa.unwrap(), afa.unwrap());
        for p in enumerate_profiles(&g, 1, 300).unwrap() {
            for w in AgentSet::subsets(2) {
                let want = oracle_verify(&g, w, &p, &cfg()).unwrap();
                assert_eq!(oracle_verify(&nfa, w, &p, &cfg()).unwrap(), want);
                assert_eq!(oracle_verify(&afa, w, &p, &cfg()).unwrap(), want);
            }
        }
    }

    #[test]
    fn budget_overflow_is_reported() {
        let g = ev_game();
        let p = constant_profile(&[0, 0]);
        assert!(matches!(
            oracle_verify(&g, set(&[0]), &p, &OracleConfig { budget: 1, ..cfg() }),
            Err(Error::OracleOverflow { budget: 1 })
        ));
    }

    #[test]
    fn enumeration_counts_and_order() {
        let g = ev_game();
        assert_eq!(enumerate_profiles(&g, 0, usize::MAX).unwrap().count(), 4);
        assert_eq!(enumerate_profiles(&g, 1, usize::MAX).unwrap().count(), 1024);
        assert_eq!(profile_count(&g, 1), Some(1024));
        let a: Vec<_> = enumerate_profiles(&g, 1, 50).unwrap().collect();
        let b: Vec<_> = enumerate_profiles(&g, 1, 50).unwrap().collect();
        assert_eq!(a, b);
        let mut s = enumerate_profiles(&g, 1, 10).unwrap();
        assert_eq!(s.by_ref().count(), 10);
        assert!(s.truncated());
        let mut s = enumerate_profiles(&g, 0, 4).unwrap();
        assert_eq!(s.by_ref().count(), 4);
        assert!(!s.truncated());
        assert!(enumerate_profiles(&g, 2, 1).is_err());
    }

    #[test]
    fn golden_tables() {
        let t = oracle_table(&mp_game(), &cfg()).unwrap();
        assert!(t.found.is_empty() && !t.truncated);
        let t = oracle_table(&ev_game(), &cfg()).unwrap();
        let rows: Vec<AgentSet> = t.found.keys().copied().collect();
        assert_eq!(rows, vec![set(&[]), set(&[0]), set(&[0, 1])]);
        assert!(matches!(
            oracle_realizable_onesided(&ev_game(), set(&[0]), &cfg()).unwrap(),
            OneSided::Found(_)
        ));
        assert_eq!(
            oracle_realizable_onesided(&mp_game(), set(&[0, 1]), &cfg()).unwrap(),
            OneSided::Unknown { truncated: false }
        );
    }

    #[test]
    fn standalone_evaluator_matches_automata() {
        let sigma = ab_cd();
        let nfa = contains_ac_nfa();
        let goal = Goal::Nfa(nfa.clone());
        let afa_goal = Goal::Afa(Afa::from(&nfa));
        let dfa_goal = Goal::Dfa(Dfa::clone(&crate::automata::determinize(&nfa)));
        let letters: Vec<Letter> = sigma.letters().collect();
        for a in &letters {
            for b in &letters {
                let w = [a.clone(), b.clone()];
                for g in [&goal, &afa_goal, &dfa_goal] {
                    let c = w.iter().fold(start(g).unwrap(), |c, l| advance(g, &c, l));
                    assert_eq!(accepting(g, &c), nfa.accepts(&w));
                }
            }
        }
        let ac = letter(&sigma, &["a", "c"]);
        assert!(lasso_accepts(&goal, &[], &[ac]).unwrap());
    }

    #[test]
    fn evaluator_semantics() {
        let sigma = ab_cd();
        let ac = letter(&sigma, &["a", "c"]);
        let bd = letter(&sigma, &["b", "d"]);
        let a = Ltlf::atom(0, 0);
        assert!(ltlf_holds(&Ltlf::always(a.clone()), &[]));
        assert!(!ltlf_holds(&Ltlf::eventually(a.clone()), &[]));
        assert!(ltlf_holds(&Ltlf::eventually(a.clone()), &[bd.clone(), ac.clone()]));
        assert!(!ltlf_holds(&Ltlf::next(a.clone()), core::slice::from_ref(&ac)));
        assert!(ltlf_holds(&Ltlf::weak_next(Ltlf::False), core::slice::from_ref(&ac)));
        assert!(ltlf_holds(&Ltlf::not(a.clone()), core::slice::from_ref(&bd)));
        assert!(ltlf_holds(
            &Ltlf::until(Ltlf::not(a.clone()), a),
            &[bd.clone(), bd, ac]
        ));
    }
}
