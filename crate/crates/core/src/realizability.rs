//! Existence of a Nash equilibrium with a prescribed winning set.
//!
//! Every goal is determinized. For each agent `j` outside `W` a safety game
//! `G_j` asks whether the others can keep `j`'s goal from accepting against
//! any unilateral deviation on channel `j`. A Büchi product over all goal
//! DFAs then searches for a trace that satisfies exactly the goals in `W`
//! while only passing through positions from which every possible deviation
//! can be punished.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::{AgentSet, ChannelMask, Letter, ProductAlphabet, RestrictedLetter};
use crate::automata::{Dfa, StateId, UltimatelyPeriodicWord};
use crate::error::{Error, Result};
use crate::game::{Ibg, MooreMachine, StrategyProfile};
use crate::safety::{solve_safety, Arena, Player, SafetySolution};

/// What a vertex of a deviation game stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Vertex {
    /// Agent 0 to move: the goal automaton is in this state.
    State(StateId),
    /// Agent 1 to move: agent 0 proposed a letter, known on the goal's
    /// channels plus channel `j`.
    Choice(StateId, RestrictedLetter),
}

/// The safety game `G_j` for agent `j` and its solution.
#[derive(Debug, Clone)]
pub struct DeviationGame {
    agent: usize,
    dfa: Dfa,
    /// Goal mask plus channel `j`.
    view: ChannelMask,
    arena: Arena,
    labels: Vec<Vertex>,
    /// `choice[q][r]`: agent-1 vertex for state `q` and view rank `r`.
    choice: Vec<Vec<Option<usize>>>,
    solution: SafetySolution,
}

impl DeviationGame {
    /// Builds and solves `G_j` from agent `j`'s goal DFA. Agent-0 vertices
    /// are the goal states (ids coincide); agent-1 vertices exist only for
    /// non-accepting states.
    pub fn new(dfa: &Dfa, j: usize) -> Result<Self> {
        let alphabet = dfa.alphabet();
        if j >= alphabet.num_channels() {
            return Err(Error::UnknownAgent {
                agent: j,
                agents: alphabet.num_channels(),
            });
        }
        let view = dfa.mask().with(j);
        let slot = view.position(j).expect("view contains j");
        let n = dfa.num_states();
        let width = alphabet.restricted_size(&view);
        let mut arena = Arena::new();
        let mut labels = Vec::new();
        for q in 0..n {
            arena.add_vertex(Player::Zero);
            labels.push(Vertex::State(q));
        }
        let mut choice = vec![vec![None; width]; n];
        let mut safe = vec![true; n];
        for q in 0..n {
            if dfa.is_accepting(q) {
                safe[q] = false;
                continue;
            }
            for (r, slot_r) in choice[q].iter_mut().enumerate() {
                let letter = alphabet.restricted_at(&view, r);
                let v = arena.add_vertex(Player::One);
                safe.push(true);
                arena.add_edge(q, v)?;
                for x in 0..alphabet.channel_size(j) {
                    let mut picks = letter.picks().to_vec();
                    picks[slot] = x;
                    let beta = RestrictedLetter::new(picks).project(&view, dfa.mask())?;
                    arena.add_edge(v, dfa.step_letter(q, &beta))?;
                }
                labels.push(Vertex::Choice(q, letter));
                *slot_r = Some(v);
            }
        }
        let solution = solve_safety(&arena, &safe);
        Ok(Self {
            agent: j,
            dfa: dfa.clone(),
            view,
            arena,
            labels,
            choice,
            solution,
        })
    }

    pub fn agent(&self) -> usize {
        self.agent
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    pub fn solution(&self) -> &SafetySolution {
        &self.solution
    }

    pub fn label(&self, v: usize) -> &Vertex {
        &self.labels[v]
    }

    /// Channels agent 0's letter is known on in agent-1 vertices.
    pub fn view(&self) -> &ChannelMask {
        &self.view
    }

    /// Agent-1 vertex `⟨q, α⟩`, if `q` is not accepting.
    pub fn choice_vertex(&self, q: StateId, letter: &Letter) -> Option<usize> {
        self.choice[q][self.dfa.alphabet().project_index(letter, &self.view)]
    }

    fn choice_by_rank(&self, q: StateId, view_rank: usize) -> Option<usize> {
        self.choice[q][view_rank]
    }

    /// Whether agent 0 wins from goal state `q`.
    pub fn state_safe(&self, q: StateId) -> bool {
        self.solution.wins0(q)
    }

    /// Line-oriented dump: one `v <id> <owner> <label>` line per vertex, then
    /// one `e <from> <to>` line per edge, then `win0 <ids...>`.
    pub fn dump(&self) -> String {
        let alphabet = self.dfa.alphabet();
        let mut out = format!("# deviation game for agent {}\n", self.agent);
        for (v, label) in self.labels.iter().enumerate() {
            let owner = match self.arena.owner(v) {
                Player::Zero => 0,
                Player::One => 1,
            };
            let text = match label {
                Vertex::State(q) => self.dfa.names()[*q].clone(),
                Vertex::Choice(q, r) => {
                    let syms: Vec<&str> = self
                        .view
                        .iter()
                        .zip(r.picks())
                        .map(|(c, &p)| alphabet.channel(c)[p].as_str())
                        .collect();
                    format!("{}|{}", self.dfa.names()[*q], syms.join(","))
                }
            };
            out.push_str(&format!("v {v} {owner} {text}\n"));
        }
        for v in 0..self.arena.num_vertices() {
            for &w in self.arena.successors(v) {
                out.push_str(&format!("e {v} {w}\n"));
            }
        }
        let win0: Vec<String> = self.solution.win0().map(|v| format!("{v}")).collect();
        out.push_str(&format!("win0 {}\n", win0.join(" ")));
        out
    }
}

/// A state of the Büchi product: one state per goal DFA and the agents of
/// `W` still waiting for their goal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProductState {
    pub goals: Vec<StateId>,
    pub pending: AgentSet,
}

/// Reachable part of `A_W`, or of `A'_W` when built with deviation games.
#[derive(Debug, Clone)]
pub struct ProductBuchi {
    alphabet: ProductAlphabet,
    states: Vec<ProductState>,
    /// Outgoing `(letter rank, target)` pairs in letter order.
    edges: Vec<Vec<(usize, usize)>>,
    /// Discovery parent, for shortest paths from the initial state.
    parent: Vec<Option<(usize, usize)>>,
}

/// A lasso through the product with its state sequence: `states[t]` is the
/// state before reading letter `t`; `states[|u|+|v|] == states[|u|]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso {
    pub word: UltimatelyPeriodicWord,
    pub states: Vec<usize>,
}

impl ProductBuchi {
    /// Builds the product reachable from the initial state. Agents of `W`
    /// whose goals accept the empty word start out satisfied; if an agent
    /// outside `W` does, the product is empty. With `refine`, a letter is
    /// kept only if each agent `j ∉ W` loses nothing by it: the agent-1
    /// vertex `⟨q_j, α⟩` of `G_j` is winning for agent 0.
    pub fn build(dfas: &[Dfa], winners: AgentSet, refine: Option<&[Option<DeviationGame>]>) -> Self {
        let alphabet = dfas[0].alphabet().clone();
        let k = dfas.len();
        let letters = alphabet.size();
        let losers: Vec<usize> = (0..k).filter(|&j| !winners.contains(j)).collect();
        // restricted ranks per goal and per deviation view
        let goal_rank: Vec<Vec<usize>> = dfas
            .iter()
            .map(|d| {
                (0..letters)
                    .map(|r| alphabet.project_index(&alphabet.letter_at(r), d.mask()))
                    .collect()
            })
            .collect();
        let view_rank: Vec<Option<Vec<usize>>> = (0..k)
            .map(|j| {
                let g = refine?.get(j)?.as_ref()?;
                Some(
                    (0..letters)
                        .map(|r| alphabet.project_index(&alphabet.letter_at(r), g.view()))
                        .collect(),
                )
            })
            .collect();
        let mut out = Self {
            alphabet: alphabet.clone(),
            states: Vec::new(),
            edges: Vec::new(),
            parent: Vec::new(),
        };
        let init: Vec<StateId> = dfas.iter().map(Dfa::initial).collect();
        if losers.iter().any(|&j| dfas[j].is_accepting(init[j])) {
            return out;
        }
        let mut pending = winners;
        for i in winners.iter() {
            if dfas[i].is_accepting(init[i]) {
                pending.remove(i);
            }
        }
        let mut index = BTreeMap::new();
        let start = ProductState {
            goals: init,
            pending,
        };
        index.insert(start.clone(), 0usize);
        out.states.push(start);
        out.parent.push(None);
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            let cur = out.states[s].clone();
            let mut row = Vec::new();
            'letters: for r in 0..letters {
                if let Some(games) = refine {
                    for &j in &losers {
                        let (Some(g), Some(vr)) = (&games[j], &view_rank[j]) else {
                            continue;
                        };
                        match g.choice_by_rank(cur.goals[j], vr[r]) {
                            Some(v) if g.solution.wins0(v) => {}
                            _ => continue 'letters,
                        }
                    }
                }
                let next: Vec<StateId> = (0..k)
                    .map(|i| dfas[i].step_restricted(cur.goals[i], goal_rank[i][r]))
                    .collect();
                if losers.iter().any(|&j| dfas[j].is_accepting(next[j])) {
                    continue;
                }
                let mut pending = cur.pending;
                for i in cur.pending.iter() {
                    if dfas[i].is_accepting(next[i]) {
                        pending.remove(i);
                    }
                }
                let target = ProductState {
                    goals: next,
                    pending,
                };
                let t = match index.get(&target) {
                    Some(&t) => t,
                    None => {
                        let t = out.states.len();
                        index.insert(target.clone(), t);
                        out.states.push(target);
                        out.parent.push(Some((s, r)));
                        queue.push_back(t);
                        t
                    }
                };
                row.push((r, t));
            }
            out.edges.push(row);
        }
        out
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn state(&self, s: usize) -> &ProductState {
        &self.states[s]
    }

    /// Outgoing `(letter rank, target)` pairs of `s`.
    pub fn transitions(&self, s: usize) -> &[(usize, usize)] {
        &self.edges[s]
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.states[s].pending.is_empty()
    }

    fn step(&self, s: usize, rank: usize) -> Option<usize> {
        self.edges[s].iter().find(|(r, _)| *r == rank).map(|&(_, t)| t)
    }

    /// States lying on a cycle, via Tarjan's algorithm (iterative).
    fn cyclic_states(&self) -> Vec<bool> {
        let n = self.states.len();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut cyclic = vec![false; n];
        let mut counter = 0;
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&(v, i)) = call.last() {
                if i < self.edges[v].len() {
                    let w = self.edges[v][i].1;
                    call.last_mut().expect("nonempty").1 += 1;
                    if index[w] == usize::MAX {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut members = Vec::new();
                    loop {
                        let w = stack.pop().expect("component on stack");
                        on_stack[w] = false;
                        members.push(w);
                        if w == v {
                            break;
                        }
                    }
                    let nontrivial =
                        members.len() > 1 || self.edges[v].iter().any(|&(_, t)| t == v);
                    if nontrivial {
                        for w in members {
                            cyclic[w] = true;
                        }
                    }
                }
            }
        }
        cyclic
    }

    /// An accepting lasso, if any: the accepting cyclic state discovered
    /// first (hence nearest the initial state), reached by its discovery
    /// path and closed by a shortest cycle, lower letters first.
    pub fn find_lasso(&self) -> Option<Lasso> {
        if self.states.is_empty() {
            return None;
        }
        let cyclic = self.cyclic_states();
        let s = (0..self.states.len()).find(|&s| cyclic[s] && self.is_accepting(s))?;
        let mut prefix = Vec::new();
        let mut path = vec![s];
        let mut cur = s;
        while let Some((p, r)) = self.parent[cur] {
            prefix.push(r);
            path.push(p);
            cur = p;
        }
        prefix.reverse();
        path.reverse();
        // shortest cycle through s
        let n = self.states.len();
        let mut back: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut queue = VecDeque::from([s]);
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut closing = None;
        'bfs: while let Some(v) = queue.pop_front() {
            for &(r, w) in &self.edges[v] {
                if w == s {
                    closing = Some((v, r));
                    break 'bfs;
                }
                if !seen[w] {
                    seen[w] = true;
                    back[w] = Some((v, r));
                    queue.push_back(w);
                }
            }
        }
        let (mut v, r) = closing?;
        let mut cycle = vec![r];
        let mut cycle_states = vec![v];
        while v != s {
            let (p, r) = back[v].expect("BFS tree reaches s");
            cycle.push(r);
            cycle_states.push(p);
            v = p;
        }
        cycle.reverse();
        cycle_states.reverse();
        // cycle_states starts at s; drop it since `path` already ends at s
        let mut states = path;
        states.extend(cycle_states.into_iter().skip(1));
        states.push(s);
        let letters = |ranks: Vec<usize>| ranks.into_iter().map(|r| self.alphabet.letter_at(r)).collect();
        let word = UltimatelyPeriodicWord::new(letters(prefix), letters(cycle))
            .expect("cycle is nonempty");
        Some(Lasso { word, states })
    }

    /// Whether `word` runs through the product and visits an accepting state
    /// on its cycle; returns the state sequence over one lasso unrolling.
    pub fn run_lasso(&self, word: &UltimatelyPeriodicWord) -> Option<Vec<usize>> {
        if self.states.is_empty() {
            return None;
        }
        let mut states = vec![0usize];
        let mut s = 0;
        for t in 0..word.lasso_len() {
            s = self.step(s, self.alphabet.letter_index(word.letter_at(t)))?;
            states.push(s);
        }
        let loop_start = states[word.prefix().len()];
        (s == loop_start && self.is_accepting(loop_start)).then_some(states)
    }
}

/// Size counters for one realizability query.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RealizabilityStats {
    /// States of each agent's goal after conversion to a DFA.
    pub goal_dfa_states: Vec<usize>,
    /// `(agent, vertices, edges)` of each `G_j` built.
    pub deviation_games: Vec<(usize, usize, usize)>,
    pub product_states: usize,
    pub product_transitions: usize,
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub lasso: Lasso,
    pub profile: StrategyProfile,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub winners: AgentSet,
    pub realizable: bool,
    pub witness: Option<Witness>,
    pub stats: RealizabilityStats,
}

/// Goal DFAs and deviation games of one game, reusable across winning sets.
#[derive(Debug, Clone)]
pub struct Realizer {
    game: Ibg,
    dfas: Vec<Dfa>,
    games: Vec<Option<DeviationGame>>,
}

impl Realizer {
    pub fn new(game: &Ibg) -> Self {
        Self {
            game: game.clone(),
            dfas: game.goals().iter().map(|g| g.to_dfa()).collect(),
            games: vec![None; game.num_agents()],
        }
    }

    pub fn dfas(&self) -> &[Dfa] {
        &self.dfas
    }

    /// `G_j`, built on first use.
    pub fn deviation_game(&mut self, j: usize) -> Result<&DeviationGame> {
        if self.games[j].is_none() {
            self.games[j] = Some(DeviationGame::new(&self.dfas[j], j)?);
        }
        Ok(self.games[j].as_ref().expect("just built"))
    }

    pub fn solve(&mut self, winners: AgentSet) -> Result<Verdict> {
        self.game.check_agents(winners)?;
        let k = self.game.num_agents();
        let mut stats = RealizabilityStats {
            goal_dfa_states: self.dfas.iter().map(Dfa::num_states).collect(),
            ..Default::default()
        };
        let mut games: Vec<Option<DeviationGame>> = vec![None; k];
        for j in (0..k).filter(|&j| !winners.contains(j)) {
            let g = self.deviation_game(j)?;
            stats
                .deviation_games
                .push((j, g.arena().num_vertices(), g.arena().num_edges()));
            games[j] = Some(g.clone());
        }
        let product = ProductBuchi::build(&self.dfas, winners, Some(&games));
        stats.product_states = product.num_states();
        stats.product_transitions = product.num_transitions();
        let witness = match product.find_lasso() {
            Some(lasso) => Some(extract_witness(&self.game, winners, &product, &games, lasso)?),
            None => None,
        };
        Ok(Verdict {
            winners,
            realizable: witness.is_some(),
            witness,
            stats,
        })
    }
}

/// Decides whether `game` has a Nash equilibrium with winning set exactly
/// `winners`, and builds one if so.
pub fn realizable(game: &Ibg, winners: AgentSet) -> Result<Verdict> {
    Realizer::new(game).solve(winners)
}

/// Turns an accepting lasso of `A'_W` into a profile.
///
/// All agents run copies of one machine and output their own channel of
/// the letter it proposes. While the observed letters follow the lasso the
/// machine replays it. When an agent `j ∉ W` alone departs from it, the
/// machine plays agent 0's positional strategy in `G_j` from the goal state
/// `j` reached. Any other departure leads to a sink playing each agent's
/// first symbol.
pub fn extract_witness(
    game: &Ibg,
    winners: AgentSet,
    product: &ProductBuchi,
    games: &[Option<DeviationGame>],
    lasso: Lasso,
) -> Result<Witness> {
    let states = product
        .run_lasso(&lasso.word)
        .ok_or_else(|| Error::Internal("lasso is not accepted by the product".into()))?;
    if states != lasso.states {
        return Err(Error::Internal("lasso state sequence does not match the product".into()));
    }
    let alphabet = game.alphabet();
    let k = game.num_agents();
    let word = &lasso.word;
    let len = word.lasso_len();
    let loop_start = word.prefix().len();

    // machine state layout: lasso positions, punishment states, sink
    let mut names: Vec<String> = (0..len).map(|t| format!("follow:{t}")).collect();
    let mut proposals: Vec<Letter> = (0..len).map(|t| word.letter_at(t).clone()).collect();
    let mut punish: BTreeMap<(usize, StateId), usize> = BTreeMap::new();
    for j in (0..k).filter(|&j| !winners.contains(j)) {
        let g = games[j].as_ref().ok_or_else(|| Error::Internal(format!("missing G_{j}")))?;
        for q in 0..g.dfa().num_states() {
            if !g.state_safe(q) {
                continue;
            }
            let v = g
                .solution()
                .strategy(q)
                .ok_or_else(|| Error::Internal(format!("no strategy at state {q} of G_{j}")))?;
            let Vertex::Choice(_, r) = g.label(v) else {
                return Err(Error::Internal("strategy leads to an agent-0 vertex".into()));
            };
            let mut picks = vec![0; k];
            for (c, &p) in g.view().iter().zip(r.picks()) {
                picks[c] = p;
            }
            punish.insert((j, q), names.len());
            names.push(format!("punish:{j}:{}", g.dfa().names()[q]));
            proposals.push(Letter::new(picks));
        }
    }
    let sink = names.len();
    names.push(String::from("default"));
    proposals.push(Letter::new(vec![0; k]));

    let letters: Vec<Letter> = alphabet.letters().collect();
    let punish_target = |j: usize, q: StateId, beta: &Letter| -> Result<usize> {
        let g = games[j].as_ref().expect("checked above");
        let next = g.dfa().step(q, beta);
        punish
            .get(&(j, next))
            .copied()
            .ok_or_else(|| Error::Internal(format!("deviation of agent {j} escapes Win0")))
    };
    let mut table: Vec<Vec<StateId>> = Vec::with_capacity(names.len());
    for (t, &state) in states.iter().take(len).enumerate() {
        let alpha = word.letter_at(t);
        let goals = &product.state(state).goals;
        let mut row = Vec::with_capacity(letters.len());
        for beta in &letters {
            let diff = beta.differing_channels(alpha);
            let target = match diff.as_slice() {
                [] => {
                    if t + 1 < len {
                        t + 1
                    } else {
                        loop_start
                    }
                }
                &[j] if !winners.contains(j) => punish_target(j, goals[j], beta)?,
                _ => sink,
            };
            row.push(target);
        }
        table.push(row);
    }
    for (&(j, q), &id) in &punish {
        let proposal = &proposals[id];
        let row = letters
            .iter()
            .map(|beta| {
                if beta.agrees_except(proposal, j) {
                    punish_target(j, q, beta)
                } else {
                    Ok(sink)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        debug_assert_eq!(table.len(), id);
        table.push(row);
    }
    table.push(vec![sink; letters.len()]);

    let machines = (0..k)
        .map(|i| {
            MooreMachine::new(
                alphabet.clone(),
                i,
                ChannelMask::full(k),
                names.clone(),
                0,
                table.clone(),
                proposals.iter().map(|l| l.pick(i)).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Witness {
        lasso,
        profile: StrategyProfile::new(machines)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fixtures::{ab_cd, letter, names};
    use crate::automata::{Afa, Goal, Nfa};
    use crate::game::fixtures::*;
    use crate::game::{primary_trace, product_profile, winning_set};
    use crate::oracle::{oracle_verify, OracleConfig};

    fn set(xs: &[usize]) -> AgentSet {
        xs.iter().copied().collect()
    }

    fn table(game: &Ibg) -> Vec<bool> {
        let mut r = Realizer::new(game);
        AgentSet::subsets(game.num_agents())
            .map(|w| r.solve(w).unwrap().realizable)
            .collect()
    }

    #[test]
    fn golden_tables() {
        // subsets in bit order: {}, {0}, {1}, {0,1}
        assert_eq!(table(&mp_game()), vec![false; 4]);
        assert_eq!(table(&ev_game()), vec![true, true, false, true]);
    }

    #[test]
    fn witnesses_pass_the_oracle() {
        for game in [mp_game(), ev_game()] {
            for w in AgentSet::subsets(2) {
                let v = realizable(&game, w).unwrap();
                if let Some(wit) = v.witness {
                    let trace = primary_trace(&product_profile(&wit.profile));
                    assert_eq!(winning_set(&trace, &game).unwrap(), w);
                    assert!(oracle_verify(&game, w, &wit.profile, &OracleConfig::default()).unwrap());
                }
            }
        }
    }

    #[test]
    fn ev_deviation_game() {
        let g = ev_game();
        let dfa = g.goal(1).to_dfa();
        let dg = DeviationGame::new(&dfa, 1).unwrap();
        let ac = letter(&ab_cd(), &["a", "c"]);
        let v = dg.choice_vertex(0, &ac).unwrap();
        assert!(dg.solution().wins0(v));
        let bc = letter(&ab_cd(), &["b", "c"]);
        assert!(dg.solution().wins1(dg.choice_vertex(0, &bc).unwrap()));
        assert!(dg.choice_vertex(1, &ac).is_none());
        assert!(dg.dump().contains("win0 0"));
    }

    #[test]
    fn mp_deviation_game_is_lost() {
        let g = mp_game();
        let dg = DeviationGame::new(&g.goal(1).to_dfa(), 1).unwrap();
        assert!(dg.solution().wins1(0));
    }

    #[test]
    fn empty_accepting_set_is_always_safe() {
        let sigma = ab_cd();
        let dfa = Dfa::new(
            sigma,
            ChannelMask::full(2),
            names(&["q"]),
            0,
            vec![],
            vec![vec![0; 4]],
        )
        .unwrap();
        let dg = DeviationGame::new(&dfa, 0).unwrap();
        assert_eq!(dg.solution().win0().count(), dg.arena().num_vertices());
    }

    #[test]
    fn ev_lasso_and_witness_shape() {
        let v = realizable(&ev_game(), set(&[0])).unwrap();
        let wit = v.witness.unwrap();
        let ac = letter(&ab_cd(), &["a", "c"]);
        assert!(Goal::Dfa(contains_dfa(0)).accepts_prefix(&wit.lasso.word).unwrap());
        assert!(wit.lasso.word.prefix().iter().chain(wit.lasso.word.period()).all(|l| l.pick(0) == 0));
        // agent 0 outputs a in every state it can reach by following or
        // punishing
        let m = &wit.profile.machines()[0];
        assert!(m.names().iter().zip(0..).all(|(n, s)| n == "default" || m.output(s) == 0));
        assert!(wit.lasso.word.period().contains(&ac) || wit.lasso.word.prefix().contains(&ac));
        assert_eq!(v.stats.goal_dfa_states, vec![2, 2]);
        assert_eq!(v.stats.deviation_games.len(), 1);
    }

    #[test]
    fn everyone_wins_at_once() {
        let sigma = ab_cd();
        let all = Dfa::new(
            sigma.clone(),
            ChannelMask::full(2),
            names(&["q0", "q1"]),
            0,
            vec![1],
            vec![vec![1; 4], vec![1; 4]],
        )
        .unwrap();
        let g = Ibg::unnamed(sigma, vec![Goal::Dfa(all.clone()), Goal::Dfa(all)]).unwrap();
        let v = realizable(&g, set(&[0, 1])).unwrap();
        assert!(v.realizable);
        assert!(v.stats.deviation_games.is_empty());
        assert!(!realizable(&g, set(&[0])).unwrap().realizable);
    }

    #[test]
    fn empty_word_preprocessing() {
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
        let g = Ibg::unnamed(sigma, vec![Goal::Dfa(eps), Goal::Dfa(contains_dfa(3))]).unwrap();
        assert!(!realizable(&g, set(&[])).unwrap().realizable);
        assert!(!realizable(&g, set(&[1])).unwrap().realizable);
        assert!(realizable(&g, set(&[0])).unwrap().realizable);
    }

    #[test]
    fn refinement_only_removes_transitions() {
        let g = ev_game();
        let dfas: Vec<Dfa> = g.goals().iter().map(|x| x.to_dfa()).collect();
        for w in AgentSet::subsets(2) {
            let plain = ProductBuchi::build(&dfas, w, None);
            let games: Vec<Option<DeviationGame>> = (0..2)
                .map(|j| (!w.contains(j)).then(|| DeviationGame::new(&dfas[j], j).unwrap()))
                .collect();
            let refined = ProductBuchi::build(&dfas, w, Some(&games));
            for s in 0..refined.num_states() {
                let p = plain.states.iter().position(|x| x == refined.state(s)).unwrap();
                for &(r, t) in refined.transitions(s) {
                    let t_plain = plain.step(p, r).unwrap();
                    assert_eq!(plain.state(t_plain), refined.state(t));
                }
            }
        }
    }

    #[test]
    fn goal_kind_does_not_matter() {
        for game in [mp_game(), ev_game()] {
            let nfa = game
                .map_goals(|x| Goal::Nfa(Nfa::from(&x.to_dfa())))
                .unwrap();
            let afa = game
                .map_goals(|x| Goal::Afa(Afa::from(&x.to_dfa())))
                .unwrap();
            assert_eq!(table(&game), table(&nfa));
            assert_eq!(table(&game), table(&afa));
        }
    }

    #[test]
    fn unknown_agent_is_rejected() {
        assert!(matches!(
            realizable(&ev_game(), set(&[7])),
            Err(Error::UnknownAgent { agent: 7, .. })
        ));
    }
}
