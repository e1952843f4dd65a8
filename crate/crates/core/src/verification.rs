//! Checking a given profile of Moore machines.
//!
//! The profile is multiplied out once into a [`GlobalMoore`]. Each goal is
//! then run alongside it: agents in `W` must reach acceptance on the
//! primary trace (the i-query), and for each agent `j` outside `W` the
//! primary trace must never enter a position from which `j` can reach
//! acceptance by changing its own channel (the j-query, decided by the
//! safety game `G_{π,j}`). Alternating goals are converted to NFAs, never to
//! DFAs.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::{AgentSet, Letter};
use crate::automata::{afa_to_nfa, Dfa, Goal, Nfa, StateId};
use crate::error::Result;
use crate::game::{product_profile, GlobalMoore, Ibg, StrategyProfile};
use crate::safety::{solve_safety, Arena, Player, SafetySolution};

/// A goal in a form the queries can run directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryAutomaton {
    Dfa(Dfa),
    Nfa(Nfa),
}

impl QueryAutomaton {
    /// DFAs and NFAs are kept, AFAs go through the obligation-set NFA.
    pub fn from_goal(goal: &Goal) -> Self {
        match goal {
            Goal::Dfa(a) => QueryAutomaton::Dfa(a.clone()),
            Goal::Nfa(a) => QueryAutomaton::Nfa(a.clone()),
            Goal::Afa(a) => QueryAutomaton::Nfa(afa_to_nfa(a)),
        }
    }

    pub fn num_states(&self) -> usize {
        match self {
            QueryAutomaton::Dfa(a) => a.num_states(),
            QueryAutomaton::Nfa(a) => a.num_states(),
        }
    }

    fn initial(&self) -> StateId {
        match self {
            QueryAutomaton::Dfa(a) => a.initial(),
            QueryAutomaton::Nfa(a) => a.initial(),
        }
    }

    fn is_accepting(&self, q: StateId) -> bool {
        match self {
            QueryAutomaton::Dfa(a) => a.is_accepting(q),
            QueryAutomaton::Nfa(a) => a.is_accepting(q),
        }
    }

    fn successors(&self, q: StateId, letter: &Letter) -> Vec<StateId> {
        match self {
            QueryAutomaton::Dfa(a) => vec![a.step(q, letter)],
            QueryAutomaton::Nfa(a) => a.successors(q, letter).to_vec(),
        }
    }
}

/// Breadth-first search in the goal-times-profile graph, where each edge
/// consumes the profile's own output. Returns the letters of a shortest path
/// to a vertex satisfying `target`, if any.
fn search_primary(
    goal: &QueryAutomaton,
    g: &GlobalMoore,
    target: impl Fn(StateId, usize) -> bool,
) -> Option<(Vec<Letter>, (StateId, usize))> {
    let start = (goal.initial(), g.initial());
    let mut parent: BTreeMap<(StateId, usize), Option<(StateId, usize)>> = BTreeMap::new();
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    while let Some(v @ (q, s)) = queue.pop_front() {
        if target(q, s) {
            let mut path = Vec::new();
            let mut cur = v;
            while let Some(Some(p)) = parent.get(&cur) {
                path.push(g.output(p.1).clone());
                cur = *p;
            }
            path.reverse();
            return Some((path, v));
        }
        let s2 = g.follow(s);
        for q2 in goal.successors(q, g.output(s)) {
            if let alloc::collections::btree_map::Entry::Vacant(e) = parent.entry((q2, s2)) {
                e.insert(Some(v));
                queue.push_back((q2, s2));
            }
        }
    }
    None
}

/// Result of an i-query: the letters of a shortest accepted prefix of the
/// primary trace, if the goal accepts one.
pub fn i_query(goal: &QueryAutomaton, g: &GlobalMoore) -> Option<Vec<Letter>> {
    search_primary(goal, g, |q, _| goal.is_accepting(q)).map(|(p, _)| p)
}

/// The safety game `G_{π,j}`: agent 0 is forced to play the profile's
/// output, agent 1 picks agent `j`'s symbol and, for nondeterministic goals,
/// the successor state. Only vertices reachable from `⟨q₀, s₀⟩` are built.
#[derive(Debug, Clone)]
pub struct ProfileDeviationGame {
    agent: usize,
    arena: Arena,
    /// `(goal state, profile state)` per vertex; agent-1 vertices carry the
    /// same pair as the agent-0 vertex they follow.
    labels: Vec<(StateId, usize)>,
    agent0: BTreeMap<(StateId, usize), usize>,
    /// Letter taken on each agent-1 edge.
    moves: BTreeMap<(usize, usize), Letter>,
    solution: SafetySolution,
}

impl ProfileDeviationGame {
    pub fn new(goal: &QueryAutomaton, g: &GlobalMoore, j: usize) -> Self {
        let alphabet = g.alphabet();
        let mut arena = Arena::new();
        let mut labels = Vec::new();
        let mut agent0: BTreeMap<(StateId, usize), usize> = BTreeMap::new();
        let mut moves = BTreeMap::new();
        let mut safe = Vec::new();
        let mut queue = VecDeque::new();
        let mut vertex = |arena: &mut Arena,
                          labels: &mut Vec<(StateId, usize)>,
                          safe: &mut Vec<bool>,
                          queue: &mut VecDeque<usize>,
                          key: (StateId, usize)| {
            if let Some(&v) = agent0.get(&key) {
                return v;
            }
            let v = arena.add_vertex(Player::Zero);
            labels.push(key);
            safe.push(!goal.is_accepting(key.0));
            agent0.insert(key, v);
            queue.push_back(v);
            v
        };
        vertex(
            &mut arena,
            &mut labels,
            &mut safe,
            &mut queue,
            (goal.initial(), g.initial()),
        );
        while let Some(v) = queue.pop_front() {
            let (q, s) = labels[v];
            if goal.is_accepting(q) {
                continue;
            }
            let w = arena.add_vertex(Player::One);
            labels.push((q, s));
            safe.push(true);
            arena.add_edge(v, w).expect("vertices exist");
            let planned = g.output(s);
            for x in 0..alphabet.channel_size(j) {
                let beta = planned.with_pick(j, x);
                let s2 = g.step(s, &beta);
                for q2 in goal.successors(q, &beta) {
                    let t = vertex(&mut arena, &mut labels, &mut safe, &mut queue, (q2, s2));
                    arena.add_edge(w, t).expect("vertices exist");
                    moves.entry((w, t)).or_insert_with(|| beta.clone());
                }
            }
        }
        let solution = solve_safety(&arena, &safe);
        Self {
            agent: j,
            arena,
            labels,
            agent0,
            moves,
            solution,
        }
    }

    pub fn agent(&self) -> usize {
        self.agent
    }

    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    pub fn solution(&self) -> &SafetySolution {
        &self.solution
    }

    /// `(goal state, profile state)` of vertex `v`.
    pub fn label(&self, v: usize) -> (StateId, usize) {
        self.labels[v]
    }

    /// The agent-0 vertex `⟨q, s⟩`, if reachable.
    pub fn vertex(&self, q: StateId, s: usize) -> Option<usize> {
        self.agent0.get(&(q, s)).copied()
    }

    /// Whether agent `j` can force acceptance from `⟨q, s⟩`.
    pub fn losing(&self, q: StateId, s: usize) -> bool {
        self.vertex(q, s).is_some_and(|v| self.solution.wins1(v))
    }

    /// Letters of a shortest play from agent-0 vertex `v` to an accepting
    /// goal state.
    fn escape(&self, v: usize, goal: &QueryAutomaton) -> Option<Vec<Letter>> {
        let n = self.arena.num_vertices();
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[v] = true;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            if self.arena.owner(x) == Player::Zero && goal.is_accepting(self.labels[x].0) {
                let mut path = Vec::new();
                let mut cur = x;
                while let Some(p) = parent[cur] {
                    if let Some(l) = self.moves.get(&(p, cur)) {
                        path.push(l.clone());
                    }
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for &y in self.arena.successors(x) {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(x);
                    queue.push_back(y);
                }
            }
        }
        None
    }
}

/// Why a j-query failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The goal accepts this prefix of the primary trace.
    PrimaryTrace { path: Vec<Letter> },
    /// Following the primary trace for `deviation_step` letters and then
    /// playing `path[deviation_step..]` (which differs from the profile only
    /// on channel `j`) reaches acceptance.
    DeviantTrace {
        deviation_step: usize,
        path: Vec<Letter>,
    },
}

/// Outcome of the query for one agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentReport {
    pub agent: usize,
    /// Whether the agent is in `W` (i-query) or not (j-query).
    pub winner: bool,
    pub passed: bool,
    /// For a passing i-query: the accepted primary-trace prefix.
    pub accepting_path: Option<Vec<Letter>>,
    /// For a failing j-query.
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationStats {
    /// Reachable states of the product machine.
    pub profile_states: usize,
    /// States of each goal as queried (after AFA-to-NFA conversion).
    pub goal_states: Vec<usize>,
    /// `(agent, vertices, edges)` of each `G_{π,j}`.
    pub deviation_games: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub winners: AgentSet,
    pub is_equilibrium: bool,
    pub agents: Vec<AgentReport>,
    pub stats: VerificationStats,
}

/// The j-query: passes iff no vertex of `Win1(G_{π,j})` lies on the primary
/// trace.
pub fn j_query(goal: &QueryAutomaton, g: &GlobalMoore, j: usize) -> (Option<Violation>, ProfileDeviationGame) {
    let game = ProfileDeviationGame::new(goal, g, j);
    if let Some((path, _)) = search_primary(goal, g, |q, _| goal.is_accepting(q)) {
        return (Some(Violation::PrimaryTrace { path }), game);
    }
    let Some((prefix, (q, s))) = search_primary(goal, g, |q, s| game.losing(q, s)) else {
        return (None, game);
    };
    let v = game.vertex(q, s).expect("primary vertex is in the arena");
    let escape = game.escape(v, goal).expect("Win1 vertices reach acceptance");
    let mut path = prefix;
    path.extend(escape);
    // first letter that departs from the profile's output
    let mut st = g.initial();
    let mut deviation_step = path.len();
    for (t, l) in path.iter().enumerate() {
        if l != g.output(st) {
            deviation_step = t;
            break;
        }
        st = g.step(st, l);
    }
    (
        Some(Violation::DeviantTrace {
            deviation_step,
            path,
        }),
        game,
    )
}

/// Decides whether `profile` is a Nash equilibrium of `game` whose primary
/// trace satisfies exactly the goals of `winners`.
pub fn verify(game: &Ibg, winners: AgentSet, profile: &StrategyProfile) -> Result<VerificationReport> {
    game.check_agents(winners)?;
    profile.check_game(game)?;
    let g = product_profile(profile);
    let mut stats = VerificationStats {
        profile_states: g.num_states(),
        ..Default::default()
    };
    let mut agents = Vec::with_capacity(game.num_agents());
    for (i, goal) in game.goals().iter().enumerate() {
        let a = QueryAutomaton::from_goal(goal);
        stats.goal_states.push(a.num_states());
        let report = if winners.contains(i) {
            let path = i_query(&a, &g);
            AgentReport {
                agent: i,
                winner: true,
                passed: path.is_some(),
                accepting_path: path,
                violation: None,
            }
        } else {
            let (violation, dg) = j_query(&a, &g, i);
            stats
                .deviation_games
                .push((i, dg.arena().num_vertices(), dg.arena().num_edges()));
            AgentReport {
                agent: i,
                winner: false,
                passed: violation.is_none(),
                accepting_path: None,
                violation,
            }
        };
        agents.push(report);
    }
    Ok(VerificationReport {
        winners,
        is_equilibrium: agents.iter().all(|a| a.passed),
        agents,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fixtures::{ab_cd, names};
    use crate::automata::Afa;
    use crate::game::fixtures::*;
    use crate::ChannelMask;

    fn set(xs: &[usize]) -> AgentSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn ev_constant_profile() {
        let g = ev_game();
        let p = constant_profile(&[0, 0]);
        let r = verify(&g, set(&[0]), &p).unwrap();
        assert!(r.is_equilibrium);
        assert_eq!(r.agents[0].accepting_path.as_ref().unwrap().len(), 1);
        let r = verify(&g, set(&[0, 1]), &p).unwrap();
        assert!(!r.is_equilibrium);
        assert!(r.agents[0].passed && !r.agents[1].passed);
    }

    #[test]
    fn mp_deviant_trace_at_step_zero() {
        let g = mp_game();
        let p = constant_profile(&[0, 0]);
        let r = verify(&g, set(&[0]), &p).unwrap();
        assert!(!r.is_equilibrium);
        match &r.agents[1].violation {
            Some(Violation::DeviantTrace {
                deviation_step,
                path,
            }) => {
                assert_eq!(*deviation_step, 0);
                assert_eq!(path, &vec![Letter::new(vec![0, 1])]);
            }
            other => panic!("{other:?}"),
        }
        let gm = product_profile(&p);
        let dg = ProfileDeviationGame::new(&QueryAutomaton::from_goal(g.goal(1)), &gm, 1);
        assert!(dg.losing(0, 0));
    }

    #[test]
    fn ev_agent1_cannot_escape() {
        let g = ev_game();
        let gm = product_profile(&constant_profile(&[0, 0]));
        let dg = ProfileDeviationGame::new(&QueryAutomaton::from_goal(g.goal(1)), &gm, 1);
        assert!(!dg.losing(0, 0));
        assert_eq!(dg.solution().win1().count(), 0);
    }

    #[test]
    fn primary_trace_violation() {
        let g = ev_game();
        let r = verify(&g, set(&[1]), &constant_profile(&[0, 0])).unwrap();
        assert!(matches!(
            r.agents[0].violation,
            Some(Violation::PrimaryTrace { ref path }) if path.len() == 1
        ));
    }

    #[test]
    fn empty_goals_make_any_profile_an_equilibrium() {
        let sigma = ab_cd();
        let empty = Dfa::new(
            sigma.clone(),
            ChannelMask::full(2),
            names(&["q"]),
            0,
            vec![],
            vec![vec![0; 4]],
        )
        .unwrap();
        let g = Ibg::unnamed(sigma, vec![Goal::Dfa(empty.clone()), Goal::Dfa(empty)]).unwrap();
        for picks in [[0, 0], [1, 0], [1, 1]] {
            assert!(verify(&g, set(&[]), &constant_profile(&picks)).unwrap().is_equilibrium);
        }
    }

    #[test]
    fn empty_word_counts_for_i_queries() {
        let sigma = ab_cd();
        let eps = Dfa::new(
            sigma.clone(),
            ChannelMask::full(2),
            names(&["q"]),
            0,
            vec![0],
            vec![vec![0; 4]],
        )
        .unwrap();
        let g = Ibg::unnamed(sigma, vec![Goal::Dfa(eps.clone()), Goal::Dfa(eps)]).unwrap();
        let r = verify(&g, set(&[0, 1]), &constant_profile(&[1, 1])).unwrap();
        assert!(r.is_equilibrium);
        assert_eq!(r.agents[0].accepting_path, Some(vec![]));
    }

    #[test]
    fn afa_goals_go_through_nfa() {
        let g = ev_game()
            .map_goals(|x| Goal::Afa(Afa::from(&x.to_dfa())))
            .unwrap();
        let r = verify(&g, set(&[0]), &constant_profile(&[0, 0])).unwrap();
        assert!(r.is_equilibrium);
    }

    #[test]
    fn mismatched_profile_is_rejected() {
        let g = ev_game();
        let sigma3 = crate::ProductAlphabet::from_symbols(&[&["a", "b"], &["c", "d"], &["e"]]).unwrap();
        let p = StrategyProfile::new(
            (0..3)
                .map(|i| crate::MooreMachine::constant(sigma3.clone(), i, 0).unwrap())
                .collect(),
        )
        .unwrap();
        assert!(verify(&g, set(&[0]), &p).is_err());
    }
}
