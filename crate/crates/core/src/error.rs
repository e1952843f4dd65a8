use alloc::string::String;

/// Errors raised while building or querying games, automata, and profiles.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    Alphabet(String),
    #[error("channel {channel} does not exist (alphabet has {channels} channels)")]
    UnknownChannel { channel: usize, channels: usize },
    #[error("letter does not fit the alphabet: {0}")]
    Letter(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("malformed automaton: {0}")]
    Automaton(String),
    #[error("malformed Moore machine: {0}")]
    Machine(String),
    #[error("agent {agent} does not exist (game has {agents} agents)")]
    UnknownAgent { agent: usize, agents: usize },
    #[error("profile does not match game: {0}")]
    Profile(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("oracle state budget of {budget} exceeded")]
    OracleOverflow { budget: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
