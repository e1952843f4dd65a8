//! Iterated Boolean games, Moore-machine strategies, and their product.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::alphabet::{AgentSet, ChannelMask, Letter, ProductAlphabet};
use crate::automata::{Goal, StateId, UltimatelyPeriodicWord};
use crate::error::{Error, Result};

/// An iterated Boolean game: one channel and one goal per agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ibg {
    alphabet: ProductAlphabet,
    agent_names: Vec<String>,
    goals: Vec<Goal>,
}

impl Ibg {
    pub fn new(alphabet: ProductAlphabet, agent_names: Vec<String>, goals: Vec<Goal>) -> Result<Self> {
        let k = alphabet.num_channels();
        if k > AgentSet::MAX_AGENTS {
            return Err(Error::Alphabet(format!(
                "at most {} agents are supported",
                AgentSet::MAX_AGENTS
            )));
        }
        if agent_names.len() != k || goals.len() != k {
            return Err(Error::Profile(format!(
                "{k} channels but {} names and {} goals",
                agent_names.len(),
                goals.len()
            )));
        }
        for (i, g) in goals.iter().enumerate() {
            if g.alphabet() != &alphabet {
                return Err(Error::AlphabetMismatch(format!(
                    "goal of agent {i} uses a different alphabet"
                )));
            }
        }
        Ok(Self {
            alphabet,
            agent_names,
            goals,
        })
    }

    /// Agents named `0..k-1`.
    pub fn unnamed(alphabet: ProductAlphabet, goals: Vec<Goal>) -> Result<Self> {
        let names = (0..alphabet.num_channels()).map(|i| format!("{i}")).collect();
        Self::new(alphabet, names, goals)
    }

    pub fn alphabet(&self) -> &ProductAlphabet {
        &self.alphabet
    }

    pub fn num_agents(&self) -> usize {
        self.goals.len()
    }

    pub fn agent_names(&self) -> &[String] {
        &self.agent_names
    }

    pub fn goals(&self) -> &[Goal] {
        &self.goals
    }

    pub fn goal(&self, i: usize) -> &Goal {
        &self.goals[i]
    }

    pub fn all_agents(&self) -> AgentSet {
        AgentSet::all(self.num_agents())
    }

    pub fn check_agents(&self, set: AgentSet) -> Result<()> {
        match set.max_agent() {
            Some(a) if a >= self.num_agents() => Err(Error::UnknownAgent {
                agent: a,
                agents: self.num_agents(),
            }),
            _ => Ok(()),
        }
    }

    /// Same game with every goal replaced by `f(goal)`.
    pub fn map_goals(&self, f: impl Fn(&Goal) -> Goal) -> Result<Ibg> {
        Ibg::new(
            self.alphabet.clone(),
            self.agent_names.clone(),
            self.goals.iter().map(f).collect(),
        )
    }
}

/// A Moore machine strategy for one agent: reads (restricted) letters,
/// outputs a symbol of its owner's channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreMachine {
    alphabet: ProductAlphabet,
    owner: usize,
    mask: ChannelMask,
    names: Vec<String>,
    initial: StateId,
    /// `transitions[s][r]` over restricted-letter ranks.
    transitions: Vec<Vec<StateId>>,
    /// Symbol index in the owner's channel.
    output: Vec<usize>,
}

impl MooreMachine {
    pub fn new(
        alphabet: ProductAlphabet,
        owner: usize,
        mask: ChannelMask,
        names: Vec<String>,
        initial: StateId,
        transitions: Vec<Vec<StateId>>,
        output: Vec<usize>,
    ) -> Result<Self> {
        alphabet.check_mask(&mask)?;
        if owner >= alphabet.num_channels() {
            return Err(Error::UnknownAgent {
                agent: owner,
                agents: alphabet.num_channels(),
            });
        }
        let n = names.len();
        if n == 0 || initial >= n {
            return Err(Error::Machine("machine needs a valid initial state".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::Machine(format!("state name `{name}` repeated")));
            }
        }
        let width = alphabet.restricted_size(&mask);
        if transitions.len() != n || transitions.iter().any(|row| row.len() != width) {
            return Err(Error::Machine(format!(
                "transition function must be total: {n} x {width}"
            )));
        }
        if transitions.iter().flatten().any(|&t| t >= n) {
            return Err(Error::Machine("transition target out of range".into()));
        }
        if output.len() != n {
            return Err(Error::Machine("output function must be total".into()));
        }
        if let Some(&bad) = output.iter().find(|&&o| o >= alphabet.channel_size(owner)) {
            return Err(Error::Machine(format!(
                "output symbol {bad} not in channel {owner}"
            )));
        }
        Ok(Self {
            alphabet,
            owner,
            mask,
            names,
            initial,
            transitions,
            output,
        })
    }

    /// One-state machine that always outputs `symbol`.
    pub fn constant(alphabet: ProductAlphabet, owner: usize, symbol: usize) -> Result<Self> {
        MooreMachine::new(
            alphabet,
            owner,
            ChannelMask::new(Vec::new()),
            alloc::vec![String::from("s0")],
            0,
            alloc::vec![alloc::vec![0]],
            alloc::vec![symbol],
        )
    }

    pub fn alphabet(&self) -> &ProductAlphabet {
        &self.alphabet
    }

    pub fn owner(&self) -> usize {
        self.owner
    }

    pub fn mask(&self) -> &ChannelMask {
        &self.mask
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn transitions(&self) -> &[Vec<StateId>] {
        &self.transitions
    }

    pub fn output(&self, s: StateId) -> usize {
        self.output[s]
    }

    pub fn step(&self, s: StateId, letter: &Letter) -> StateId {
        self.transitions[s][self.alphabet.project_index(letter, &self.mask)]
    }
}

/// One machine per agent, in agent order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyProfile {
    machines: Vec<MooreMachine>,
}

impl StrategyProfile {
    pub fn new(machines: Vec<MooreMachine>) -> Result<Self> {
        let Some(first) = machines.first() else {
            return Err(Error::Profile("profile has no machines".into()));
        };
        let alphabet = first.alphabet().clone();
        if machines.len() != alphabet.num_channels() {
            return Err(Error::Profile(format!(
                "{} machines for {} agents",
                machines.len(),
                alphabet.num_channels()
            )));
        }
        for (i, m) in machines.iter().enumerate() {
            if m.owner() != i {
                return Err(Error::Profile(format!(
                    "machine {i} is owned by agent {}",
                    m.owner()
                )));
            }
            if m.alphabet() != &alphabet {
                return Err(Error::AlphabetMismatch(format!(
                    "machine {i} uses a different alphabet"
                )));
            }
        }
        Ok(Self { machines })
    }

    pub fn machines(&self) -> &[MooreMachine] {
        &self.machines
    }

    pub fn alphabet(&self) -> &ProductAlphabet {
        self.machines[0].alphabet()
    }

    pub fn check_game(&self, game: &Ibg) -> Result<()> {
        if self.machines.len() != game.num_agents() {
            return Err(Error::Profile(format!(
                "{} machines for {} agents",
                self.machines.len(),
                game.num_agents()
            )));
        }
        if self.alphabet() != game.alphabet() {
            return Err(Error::AlphabetMismatch(
                "profile and game alphabets differ".into(),
            ));
        }
        Ok(())
    }
}

/// Reachable part of the component-wise product of a profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalMoore {
    alphabet: ProductAlphabet,
    states: Vec<Vec<StateId>>,
    outputs: Vec<Letter>,
    /// `table[s][letter rank]`.
    table: Vec<Vec<usize>>,
}

impl GlobalMoore {
    pub fn alphabet(&self) -> &ProductAlphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    /// Component machine states of product state `s`.
    pub fn components(&self, s: usize) -> &[StateId] {
        &self.states[s]
    }

    /// `γ(s)`.
    pub fn output(&self, s: usize) -> &Letter {
        &self.outputs[s]
    }

    /// `ρ(s, α)`.
    pub fn step(&self, s: usize, letter: &Letter) -> usize {
        self.table[s][self.alphabet.letter_index(letter)]
    }

    pub fn step_index(&self, s: usize, letter_rank: usize) -> usize {
        self.table[s][letter_rank]
    }

    /// Successor along the profile's own output, `ρ(s, γ(s))`.
    pub fn follow(&self, s: usize) -> usize {
        self.step(s, &self.outputs[s])
    }
}

/// Builds the product machine, materializing only states reachable from the
/// initial tuple under arbitrary input letters.
pub fn product_profile(profile: &StrategyProfile) -> GlobalMoore {
    let alphabet = profile.alphabet().clone();
    let machines = profile.machines();
    let letters: Vec<Letter> = alphabet.letters().collect();
    let start: Vec<StateId> = machines.iter().map(MooreMachine::initial).collect();
    let mut index = BTreeMap::new();
    let mut states = Vec::new();
    let mut queue = VecDeque::new();
    index.insert(start.clone(), 0usize);
    states.push(start);
    queue.push_back(0usize);
    let mut table: Vec<Vec<usize>> = Vec::new();
    while let Some(s) = queue.pop_front() {
        let current = states[s].clone();
        let mut row = Vec::with_capacity(letters.len());
        for l in &letters {
            let next: Vec<StateId> = machines
                .iter()
                .zip(&current)
                .map(|(m, &t)| m.step(t, l))
                .collect();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = states.len();
                    index.insert(next.clone(), id);
                    states.push(next);
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        table.push(row);
    }
    let outputs = states
        .iter()
        .map(|tuple| {
            Letter::new(
                machines
                    .iter()
                    .zip(tuple)
                    .map(|(m, &t)| m.output(t))
                    .collect(),
            )
        })
        .collect();
    GlobalMoore {
        alphabet,
        states,
        outputs,
        table,
    }
}

/// The primary trace as a lasso: follow `s ← ρ(s, γ(s))` until a state
/// repeats.
pub fn primary_trace(g: &GlobalMoore) -> UltimatelyPeriodicWord {
    let mut first_seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut word = Vec::new();
    let mut s = g.initial();
    loop {
        if let Some(&start) = first_seen.get(&s) {
            let period = word.split_off(start);
            return UltimatelyPeriodicWord::new(word, period)
                .expect("a repeated state closes a nonempty cycle");
        }
        first_seen.insert(s, word.len());
        word.push(g.output(s).clone());
        s = g.follow(s);
    }
}

/// Agents whose goals accept some finite prefix of `trace`.
pub fn winning_set(trace: &UltimatelyPeriodicWord, game: &Ibg) -> Result<AgentSet> {
    let mut w = AgentSet::empty();
    for (i, goal) in game.goals().iter().enumerate() {
        if goal.accepts_prefix(trace)? {
            w.insert(i);
        }
    }
    Ok(w)
}
