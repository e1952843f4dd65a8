//! The JSON record printed by every command.
//!
//! Field order is fixed by the struct declarations, so two runs on the same
//! input print identical records except for `wall_time_ms`.

use ibg_core::realizability::{RealizabilityStats, Verdict};
use ibg_core::verification::{VerificationReport, Violation};
use ibg_core::{AgentSet, Ibg, Letter, ProductAlphabet};
use serde::{Deserialize, Serialize};

use crate::format::{profile_to_file, ProfileFile};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub command: Vec<String>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winners: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lasso: Option<LassoRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ProfileFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agents: Option<Vec<AgentRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
    pub wall_time_ms: u64,
}

impl ResultRecord {
    pub fn new(command: Vec<String>, verdict: impl Into<String>) -> Self {
        Self {
            command,
            verdict: verdict.into(),
            winners: None,
            lasso: None,
            witness: None,
            agents: None,
            stats: None,
            detail: None,
            wall_time_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LassoRecord {
    pub prefix: Vec<String>,
    pub period: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentRecord {
    pub agent: String,
    pub winner: bool,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub accepting_path: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation_step: Option<usize>,
    pub path: Vec<String>,
}

pub fn agent_names(game: &Ibg, set: AgentSet) -> Vec<String> {
    set.iter().map(|i| game.agent_names()[i].clone()).collect()
}

pub fn letters(sigma: &ProductAlphabet, word: &[Letter]) -> Vec<String> {
    word.iter().map(|l| sigma.display_letter(l)).collect()
}

pub fn realizability_stats(stats: &RealizabilityStats) -> serde_json::Value {
    serde_json::json!({
        "goal_dfa_states": stats.goal_dfa_states,
        "deviation_games": stats.deviation_games.iter().map(|&(agent, vertices, edges)| {
            serde_json::json!({"agent": agent, "vertices": vertices, "edges": edges})
        }).collect::<Vec<_>>(),
        "product_states": stats.product_states,
        "product_transitions": stats.product_transitions,
    })
}

pub fn realizability_record(game: &Ibg, command: Vec<String>, verdict: &Verdict, witness: bool, stats: bool) -> ResultRecord {
    let word = if verdict.realizable { "REALIZABLE" } else { "UNREALIZABLE" };
    let mut r = ResultRecord::new(command, word);
    r.winners = Some(agent_names(game, verdict.winners));
    if let Some(w) = &verdict.witness {
        let sigma = game.alphabet();
        r.lasso = Some(LassoRecord {
            prefix: letters(sigma, w.lasso.word.prefix()),
            period: letters(sigma, w.lasso.word.period()),
        });
        if witness {
            r.witness = Some(profile_to_file(&w.profile));
        }
    }
    if stats {
        r.stats = Some(realizability_stats(&verdict.stats));
    }
    r
}

pub fn verification_record(game: &Ibg, command: Vec<String>, report: &VerificationReport, explain: bool) -> ResultRecord {
    let sigma = game.alphabet();
    let word = if report.is_equilibrium { "EQUILIBRIUM" } else { "NOT-EQUILIBRIUM" };
    let mut r = ResultRecord::new(command, word);
    r.winners = Some(agent_names(game, report.winners));
    r.agents = Some(
        report
            .agents
            .iter()
            .map(|a| AgentRecord {
                agent: game.agent_names()[a.agent].clone(),
                winner: a.winner,
                passed: a.passed,
                accepting_path: a
                    .accepting_path
                    .as_ref()
                    .filter(|_| explain)
                    .map(|p| letters(sigma, p)),
                violation: a.violation.as_ref().filter(|_| explain).map(|v| match v {
                    Violation::PrimaryTrace { path } => ViolationRecord {
                        kind: "primary-trace".into(),
                        deviation_step: None,
                        path: letters(sigma, path),
                    },
                    Violation::DeviantTrace { deviation_step, path } => ViolationRecord {
                        kind: "deviant-trace".into(),
                        deviation_step: Some(*deviation_step),
                        path: letters(sigma, path),
                    },
                }),
            })
            .collect(),
    );
    r.stats = Some(serde_json::json!({
        "profile_states": report.stats.profile_states,
        "goal_states": report.stats.goal_states,
        "deviation_games": report.stats.deviation_games.iter().map(|&(agent, vertices, edges)| {
            serde_json::json!({"agent": agent, "vertices": vertices, "edges": edges})
        }).collect::<Vec<_>>(),
    }));
    r
}
