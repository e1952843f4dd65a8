//! JSON game and profile files.
//!
//! A game file lists the agents in channel order. Each agent names its own
//! symbols and its goal; a goal is an automaton (`dfa`, `nfa`, `afa`) or an
//! LTLf formula (`ltlf`). Automaton transitions name a source state, a
//! letter given as one symbol per channel of the goal's `channels` (all
//! agents when omitted; `"*"` matches any symbol), and a target: a state for
//! DFAs and NFAs, a formula object for AFAs. AFA transitions that are not
//! listed are `false`; DFA transitions must all be listed.

use std::collections::BTreeMap;

use ibg_core::alphabet::ChannelMask;
use ibg_core::automata::{Afa, Dfa, Nfa, PosFormula};
use ibg_core::game::{Ibg, MooreMachine, StrategyProfile};
use ibg_core::ltlf;
use ibg_core::{Goal, ProductAlphabet, RestrictedLetter, StateId};
use serde::{Deserialize, Serialize};

pub const VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl std::fmt::Display) -> FormatError {
    FormatError::Invalid {
        path: path.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub version: u32,
    pub agents: Vec<AgentEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentEntry {
    pub name: String,
    pub alphabet: Vec<String>,
    pub goal: GoalEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GoalEntry {
    Dfa(AutomatonEntry<String>),
    Nfa(AutomatonEntry<String>),
    Afa(AutomatonEntry<FormulaEntry>),
    Ltlf { formula: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonEntry<T> {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub channels: Option<Vec<usize>>,
    pub states: Vec<String>,
    pub initial: String,
    pub accepting: Vec<String>,
    pub transitions: Vec<TransitionEntry<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionEntry<T> {
    pub from: String,
    pub letter: Vec<String>,
    #[serde(alias = "formula")]
    pub to: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum FormulaEntry {
    True,
    False,
    Atom { state: String },
    And { args: Vec<FormulaEntry> },
    Or { args: Vec<FormulaEntry> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    pub version: u32,
    pub machines: Vec<MachineEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub channels: Option<Vec<usize>>,
    pub states: Vec<String>,
    pub initial: String,
    /// Own-channel symbol per state.
    pub output: BTreeMap<String, String>,
    pub transitions: Vec<TransitionEntry<String>>,
}

fn state_index(names: &[String], name: &str, path: &str) -> Result<StateId, FormatError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| invalid(path, format!("unknown state `{name}`")))
}

fn mask_of(channels: &Option<Vec<usize>>, k: usize, path: &str) -> Result<ChannelMask, FormatError> {
    match channels {
        None => Ok(ChannelMask::full(k)),
        Some(cs) => {
            if let Some(c) = cs.iter().find(|&&c| c >= k) {
                return Err(invalid(path, format!("agent {c} does not exist ({k} agents)")));
            }
            Ok(ChannelMask::new(cs.clone()))
        }
    }
}

/// Restricted-letter ranks matched by a letter pattern.
fn expand_letter(
    sigma: &ProductAlphabet,
    mask: &ChannelMask,
    letter: &[String],
    path: &str,
) -> Result<Vec<usize>, FormatError> {
    if letter.len() != mask.len() {
        return Err(invalid(
            path,
            format!("letter has {} symbols, expected {} (one per channel {:?})", letter.len(), mask.len(), mask.channels()),
        ));
    }
    let mut options: Vec<Vec<usize>> = Vec::with_capacity(letter.len());
    for (c, sym) in mask.iter().zip(letter) {
        if sym == "*" {
            options.push((0..sigma.channel_size(c)).collect());
        } else {
            let s = sigma
                .symbol_index(c, sym)
                .ok_or_else(|| invalid(path, format!("`{sym}` is not a symbol of agent {c}")))?;
            options.push(vec![s]);
        }
    }
    let mut out = vec![Vec::new()];
    for opts in options {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                opts.iter().map(move |&s| {
                    let mut p = prefix.clone();
                    p.push(s);
                    p
                })
            })
            .collect();
    }
    Ok(out
        .into_iter()
        .map(|picks| sigma.restricted_index(mask, &RestrictedLetter::new(picks)))
        .collect())
}

fn letter_symbols(sigma: &ProductAlphabet, mask: &ChannelMask, rank: usize) -> Vec<String> {
    let r = sigma.restricted_at(mask, rank);
    mask.iter()
        .zip(r.picks())
        .map(|(c, &p)| sigma.channel(c)[p].clone())
        .collect()
}

struct Header {
    mask: ChannelMask,
    names: Vec<String>,
    initial: StateId,
    accepting: Vec<StateId>,
}

fn header<T>(sigma: &ProductAlphabet, a: &AutomatonEntry<T>, path: &str) -> Result<Header, FormatError> {
    let mask = mask_of(&a.channels, sigma.num_channels(), &format!("{path}.channels"))?;
    if a.states.is_empty() {
        return Err(invalid(format!("{path}.states"), "no states"));
    }
    for (i, n) in a.states.iter().enumerate() {
        if a.states[..i].contains(n) {
            return Err(invalid(format!("{path}.states"), format!("state `{n}` repeated")));
        }
    }
    let initial = state_index(&a.states, &a.initial, &format!("{path}.initial"))?;
    let accepting = a
        .accepting
        .iter()
        .enumerate()
        .map(|(i, n)| state_index(&a.states, n, &format!("{path}.accepting[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Header {
        mask,
        names: a.states.clone(),
        initial,
        accepting,
    })
}

fn formula_from(f: &FormulaEntry, names: &[String], path: &str) -> Result<PosFormula, FormatError> {
    Ok(match f {
        FormulaEntry::True => PosFormula::True,
        FormulaEntry::False => PosFormula::False,
        FormulaEntry::Atom { state } => PosFormula::State(state_index(names, state, path)?),
        FormulaEntry::And { args } => PosFormula::And(
            args.iter()
                .enumerate()
                .map(|(i, a)| formula_from(a, names, &format!("{path}.args[{i}]")))
                .collect::<Result<_, _>>()?,
        ),
        FormulaEntry::Or { args } => PosFormula::Or(
            args.iter()
                .enumerate()
                .map(|(i, a)| formula_from(a, names, &format!("{path}.args[{i}]")))
                .collect::<Result<_, _>>()?,
        ),
    })
}

fn formula_to(f: &PosFormula, names: &[String]) -> FormulaEntry {
    match f {
        PosFormula::True => FormulaEntry::True,
        PosFormula::False => FormulaEntry::False,
        PosFormula::State(q) => FormulaEntry::Atom {
            state: names[*q].clone(),
        },
        PosFormula::And(xs) => FormulaEntry::And {
            args: xs.iter().map(|x| formula_to(x, names)).collect(),
        },
        PosFormula::Or(xs) => FormulaEntry::Or {
            args: xs.iter().map(|x| formula_to(x, names)).collect(),
        },
    }
}

fn core_err(path: &str) -> impl Fn(ibg_core::Error) -> FormatError + '_ {
    move |e| invalid(path, e)
}

pub fn goal_from_entry(sigma: &ProductAlphabet, entry: &GoalEntry, path: &str) -> Result<Goal, FormatError> {
    match entry {
        GoalEntry::Dfa(a) => {
            let h = header(sigma, a, path)?;
            let width = sigma.restricted_size(&h.mask);
            let mut table: Vec<Vec<Option<StateId>>> = vec![vec![None; width]; h.names.len()];
            for (i, t) in a.transitions.iter().enumerate() {
                let tp = format!("{path}.transitions[{i}]");
                let from = state_index(&h.names, &t.from, &format!("{tp}.from"))?;
                let to = state_index(&h.names, &t.to, &format!("{tp}.to"))?;
                for r in expand_letter(sigma, &h.mask, &t.letter, &format!("{tp}.letter"))? {
                    match table[from][r] {
                        Some(old) if old != to => {
                            return Err(invalid(
                                tp,
                                format!(
                                    "conflicting targets `{}` and `{}` for a deterministic transition",
                                    h.names[old], h.names[to]
                                ),
                            ))
                        }
                        _ => table[from][r] = Some(to),
                    }
                }
            }
            let mut full = Vec::with_capacity(table.len());
            for (q, row) in table.iter().enumerate() {
                let mut out = Vec::with_capacity(width);
                for (r, t) in row.iter().enumerate() {
                    out.push(t.ok_or_else(|| {
                        invalid(
                            format!("{path}.transitions"),
                            format!(
                                "no transition from `{}` on ({})",
                                h.names[q],
                                letter_symbols(sigma, &h.mask, r).join(",")
                            ),
                        )
                    })?);
                }
                full.push(out);
            }
            Dfa::new(sigma.clone(), h.mask, h.names, h.initial, h.accepting, full)
                .map(Goal::Dfa)
                .map_err(core_err(path))
        }
        GoalEntry::Nfa(a) => {
            let h = header(sigma, a, path)?;
            let mut triples = Vec::new();
            for (i, t) in a.transitions.iter().enumerate() {
                let tp = format!("{path}.transitions[{i}]");
                let from = state_index(&h.names, &t.from, &format!("{tp}.from"))?;
                let to = state_index(&h.names, &t.to, &format!("{tp}.to"))?;
                for r in expand_letter(sigma, &h.mask, &t.letter, &format!("{tp}.letter"))? {
                    triples.push((from, sigma.restricted_at(&h.mask, r), to));
                }
            }
            Nfa::from_triples(sigma.clone(), h.mask, h.names, h.initial, h.accepting, triples)
                .map(Goal::Nfa)
                .map_err(core_err(path))
        }
        GoalEntry::Afa(a) => {
            let h = header(sigma, a, path)?;
            let width = sigma.restricted_size(&h.mask);
            let mut delta: Vec<Vec<Option<PosFormula>>> = vec![vec![None; width]; h.names.len()];
            for (i, t) in a.transitions.iter().enumerate() {
                let tp = format!("{path}.transitions[{i}]");
                let from = state_index(&h.names, &t.from, &format!("{tp}.from"))?;
                let f = formula_from(&t.to, &h.names, &format!("{tp}.formula"))?;
                for r in expand_letter(sigma, &h.mask, &t.letter, &format!("{tp}.letter"))? {
                    if delta[from][r].is_some() {
                        return Err(invalid(tp, "a transition for this state and letter is already given"));
                    }
                    delta[from][r] = Some(f.clone());
                }
            }
            let delta = delta
                .into_iter()
                .map(|row| row.into_iter().map(|f| f.unwrap_or(PosFormula::False)).collect())
                .collect();
            Afa::new(sigma.clone(), h.mask, h.names, h.initial, h.accepting, delta)
                .map(Goal::Afa)
                .map_err(core_err(path))
        }
        GoalEntry::Ltlf { formula } => {
            let fpath = format!("{path}.formula");
            let f = ltlf::parse(formula, sigma).map_err(core_err(&fpath))?;
            ltlf::compile_to_afa(&f, sigma)
                .map(Goal::Afa)
                .map_err(core_err(&fpath))
        }
    }
}

fn mask_entry(mask: &ChannelMask, k: usize) -> Option<Vec<usize>> {
    (!mask.is_full(k)).then(|| mask.channels().to_vec())
}

pub fn goal_to_entry(goal: &Goal) -> GoalEntry {
    let sigma = goal.alphabet();
    let k = sigma.num_channels();
    let mask = goal.mask();
    let width = sigma.restricted_size(mask);
    match goal {
        Goal::Dfa(a) => GoalEntry::Dfa(AutomatonEntry {
            channels: mask_entry(mask, k),
            states: a.names().to_vec(),
            initial: a.names()[a.initial()].clone(),
            accepting: a.accepting_states().map(|q| a.names()[q].clone()).collect(),
            transitions: (0..a.num_states())
                .flat_map(|q| (0..width).map(move |r| (q, r)))
                .map(|(q, r)| TransitionEntry {
                    from: a.names()[q].clone(),
                    letter: letter_symbols(sigma, mask, r),
                    to: a.names()[a.step_restricted(q, r)].clone(),
                })
                .collect(),
        }),
        Goal::Nfa(a) => GoalEntry::Nfa(AutomatonEntry {
            channels: mask_entry(mask, k),
            states: a.names().to_vec(),
            initial: a.names()[a.initial()].clone(),
            accepting: a.accepting_states().map(|q| a.names()[q].clone()).collect(),
            transitions: a
                .triples()
                .map(|(p, r, q)| TransitionEntry {
                    from: a.names()[p].clone(),
                    letter: letter_symbols(sigma, mask, r),
                    to: a.names()[q].clone(),
                })
                .collect(),
        }),
        Goal::Afa(a) => GoalEntry::Afa(AutomatonEntry {
            channels: mask_entry(mask, k),
            states: a.names().to_vec(),
            initial: a.names()[a.initial()].clone(),
            accepting: a.accepting_states().map(|q| a.names()[q].clone()).collect(),
            transitions: (0..a.num_states())
                .flat_map(|q| (0..width).map(move |r| (q, r)))
                .filter(|&(q, r)| a.delta()[q][r] != PosFormula::False)
                .map(|(q, r)| TransitionEntry {
                    from: a.names()[q].clone(),
                    letter: letter_symbols(sigma, mask, r),
                    to: formula_to(&a.delta()[q][r], a.names()),
                })
                .collect(),
        }),
    }
}

pub fn game_from_file(file: &GameFile) -> Result<Ibg, FormatError> {
    if file.version != VERSION {
        return Err(invalid("version", format!("unsupported version {}, expected {VERSION}", file.version)));
    }
    if file.agents.is_empty() {
        return Err(invalid("agents", "a game needs at least one agent"));
    }
    let sigma = ProductAlphabet::new(file.agents.iter().map(|a| a.alphabet.clone()).collect())
        .map_err(core_err("agents[].alphabet"))?;
    let goals = file
        .agents
        .iter()
        .enumerate()
        .map(|(i, a)| goal_from_entry(&sigma, &a.goal, &format!("agents[{i}].goal")))
        .collect::<Result<Vec<_>, _>>()?;
    let names = file.agents.iter().map(|a| a.name.clone()).collect();
    Ibg::new(sigma, names, goals).map_err(core_err("agents"))
}

pub fn game_to_file(game: &Ibg) -> GameFile {
    GameFile {
        version: VERSION,
        agents: game
            .goals()
            .iter()
            .enumerate()
            .map(|(i, g)| AgentEntry {
                name: game.agent_names()[i].clone(),
                alphabet: game.alphabet().channel(i).to_vec(),
                goal: goal_to_entry(g),
            })
            .collect(),
    }
}

pub fn parse_game(text: &str) -> Result<Ibg, FormatError> {
    game_from_file(&serde_json::from_str(text)?)
}

pub fn render_game(game: &Ibg) -> String {
    let mut s = serde_json::to_string_pretty(&game_to_file(game)).expect("game serializes");
    s.push('\n');
    s
}

pub fn profile_from_file(file: &ProfileFile, sigma: &ProductAlphabet) -> Result<StrategyProfile, FormatError> {
    if file.version != VERSION {
        return Err(invalid("version", format!("unsupported version {}, expected {VERSION}", file.version)));
    }
    let k = sigma.num_channels();
    if file.machines.len() != k {
        return Err(invalid(
            "machines",
            format!("{} machines for a game with {k} agents", file.machines.len()),
        ));
    }
    let mut machines = Vec::with_capacity(k);
    for (i, m) in file.machines.iter().enumerate() {
        let path = format!("machines[{i}]");
        let mask = mask_of(&m.channels, k, &format!("{path}.channels"))?;
        if m.states.is_empty() {
            return Err(invalid(format!("{path}.states"), "no states"));
        }
        let initial = state_index(&m.states, &m.initial, &format!("{path}.initial"))?;
        let mut output = Vec::with_capacity(m.states.len());
        for s in &m.states {
            let sym = m
                .output
                .get(s)
                .ok_or_else(|| invalid(format!("{path}.output"), format!("no output for state `{s}`")))?;
            output.push(sigma.symbol_index(i, sym).ok_or_else(|| {
                invalid(format!("{path}.output.{s}"), format!("`{sym}` is not a symbol of agent {i}"))
            })?);
        }
        if let Some(extra) = m.output.keys().find(|s| !m.states.contains(s)) {
            return Err(invalid(format!("{path}.output"), format!("unknown state `{extra}`")));
        }
        let width = sigma.restricted_size(&mask);
        let mut table: Vec<Vec<Option<StateId>>> = vec![vec![None; width]; m.states.len()];
        for (t_i, t) in m.transitions.iter().enumerate() {
            let tp = format!("{path}.transitions[{t_i}]");
            let from = state_index(&m.states, &t.from, &format!("{tp}.from"))?;
            let to = state_index(&m.states, &t.to, &format!("{tp}.to"))?;
            for r in expand_letter(sigma, &mask, &t.letter, &format!("{tp}.letter"))? {
                match table[from][r] {
                    Some(old) if old != to => {
                        return Err(invalid(tp, format!("conflicting targets `{}` and `{}`", m.states[old], m.states[to])))
                    }
                    _ => table[from][r] = Some(to),
                }
            }
        }
        let mut full = Vec::with_capacity(table.len());
        for (q, row) in table.iter().enumerate() {
            let mut out = Vec::with_capacity(width);
            for (r, t) in row.iter().enumerate() {
                out.push(t.ok_or_else(|| {
                    invalid(
                        format!("{path}.transitions"),
                        format!(
                            "no transition from `{}` on ({})",
                            m.states[q],
                            letter_symbols(sigma, &mask, r).join(",")
                        ),
                    )
                })?);
            }
            full.push(out);
        }
        machines.push(
            MooreMachine::new(sigma.clone(), i, mask, m.states.clone(), initial, full, output)
                .map_err(core_err(&path))?,
        );
    }
    StrategyProfile::new(machines).map_err(core_err("machines"))
}

pub fn profile_to_file(profile: &StrategyProfile) -> ProfileFile {
    let sigma = profile.alphabet();
    let k = sigma.num_channels();
    ProfileFile {
        version: VERSION,
        machines: profile
            .machines()
            .iter()
            .map(|m| {
                let width = sigma.restricted_size(m.mask());
                MachineEntry {
                    channels: mask_entry(m.mask(), k),
                    states: m.names().to_vec(),
                    initial: m.names()[m.initial()].clone(),
                    output: (0..m.num_states())
                        .map(|s| (m.names()[s].clone(), sigma.channel(m.owner())[m.output(s)].clone()))
                        .collect(),
                    transitions: (0..m.num_states())
                        .flat_map(|s| (0..width).map(move |r| (s, r)))
                        .map(|(s, r)| TransitionEntry {
                            from: m.names()[s].clone(),
                            letter: letter_symbols(sigma, m.mask(), r),
                            to: m.names()[m.transitions()[s][r]].clone(),
                        })
                        .collect(),
                }
            })
            .collect(),
    }
}

pub fn parse_profile(text: &str, sigma: &ProductAlphabet) -> Result<StrategyProfile, FormatError> {
    profile_from_file(&serde_json::from_str(text)?, sigma)
}

pub fn render_profile(profile: &StrategyProfile) -> String {
    let mut s = serde_json::to_string_pretty(&profile_to_file(profile)).expect("profile serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const EV: &str = r#"{
      "version": 1,
      "agents": [
        {"name": "row", "alphabet": ["a", "b"], "goal": {"kind": "dfa",
          "states": ["q0", "q1"], "initial": "q0", "accepting": ["q1"],
          "transitions": [
            {"from": "q0", "letter": ["a", "c"], "to": "q1"},
            {"from": "q0", "letter": ["a", "d"], "to": "q0"},
            {"from": "q0", "letter": ["b", "*"], "to": "q0"},
            {"from": "q1", "letter": ["*", "*"], "to": "q1"}]}},
        {"name": "col", "alphabet": ["c", "d"], "goal": {"kind": "ltlf", "formula": "F(p0=b & p1=c)"}}
      ]
    }"#;

    #[test]
    fn loads_and_round_trips() {
        let g = parse_game(EV).unwrap();
        assert_eq!(g.num_agents(), 2);
        assert_eq!(g.goal(0).kind(), "dfa");
        assert_eq!(g.goal(1).kind(), "afa");
        let again = parse_game(&render_game(&g)).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn errors_name_the_field() {
        let bad = EV.replace(r#""to": "q1"}]}}"#, r#""to": "q9"}]}}"#);
        let e = parse_game(&bad).unwrap_err().to_string();
        assert!(e.contains("agents[0].goal.transitions[3].to"), "{e}");
        let missing = EV.replace(r#"{"from": "q0", "letter": ["a", "d"], "to": "q0"},"#, "");
        let e = parse_game(&missing).unwrap_err().to_string();
        assert!(e.contains("no transition from `q0` on (a,d)"), "{e}");
        let unknown = EV.replace(r#""version": 1,"#, r#""version": 1, "extra": true,"#);
        let e = parse_game(&unknown).unwrap_err().to_string();
        assert!(e.contains("unknown field `extra`"), "{e}");
        let sym = EV.replace(r#"["b", "*"]"#, r#"["z", "*"]"#);
        assert!(parse_game(&sym).unwrap_err().to_string().contains("`z` is not a symbol of agent 0"));
        let formula = EV.replace("F(p0=b & p1=c)", "F(p0=b &");
        assert!(parse_game(&formula).unwrap_err().to_string().contains("agents[1].goal.formula"));
    }

    #[test]
    fn profile_round_trip() {
        let g = parse_game(EV).unwrap();
        let text = r#"{"version": 1, "machines": [
            {"channels": [], "states": ["s"], "initial": "s", "output": {"s": "a"},
             "transitions": [{"from": "s", "letter": [], "to": "s"}]},
            {"channels": [0], "states": ["x", "y"], "initial": "x", "output": {"x": "c", "y": "d"},
             "transitions": [{"from": "*", "letter": ["a"], "to": "x"}]}]}"#;
        assert!(parse_profile(text, g.alphabet()).is_err());
        let text = text.replace(
            r#"[{"from": "*", "letter": ["a"], "to": "x"}]"#,
            r#"[{"from": "x", "letter": ["a"], "to": "x"}, {"from": "x", "letter": ["b"], "to": "y"},
                {"from": "y", "letter": ["*"], "to": "y"}]"#,
        );
        let p = parse_profile(&text, g.alphabet()).unwrap();
        assert_eq!(parse_profile(&render_profile(&p), g.alphabet()).unwrap(), p);
    }

    #[test]
    fn afa_formulas() {
        let text = r#"{"version": 1, "agents": [
          {"name": "a", "alphabet": ["x", "y"], "goal": {"kind": "afa",
            "states": ["p", "q", "r"], "initial": "p", "accepting": ["q", "r"],
            "transitions": [
              {"from": "p", "letter": ["x"], "formula": {"op": "and", "args": [{"op": "atom", "state": "q"}, {"op": "atom", "state": "r"}]}},
              {"from": "q", "letter": ["*"], "formula": {"op": "true"}},
              {"from": "r", "letter": ["y"], "formula": {"op": "or", "args": [{"op": "atom", "state": "r"}, {"op": "false"}]}}]}}]}"#;
        let g = parse_game(text).unwrap();
        let Goal::Afa(a) = g.goal(0) else { panic!() };
        assert_eq!(a.delta()[0][1], PosFormula::False);
        assert_eq!(parse_game(&render_game(&g)).unwrap(), g);
    }

    #[test]
    fn random_files_round_trip() {
        use crate::corpus::{self, Kind};
        let mut rng = corpus::rng(11);
        for kind in [Kind::Dfa, Kind::Nfa, Kind::Afa, Kind::Mixed] {
            for _ in 0..100 {
                let g = corpus::game(&mut rng, 3, 4, kind);
                assert_eq!(parse_game(&render_game(&g)).unwrap(), g);
                let p = corpus::profile(&mut rng, g.alphabet(), 3);
                assert_eq!(parse_profile(&render_profile(&p), g.alphabet()).unwrap(), p);
            }
        }
    }
}
