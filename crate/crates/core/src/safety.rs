//! Two-player turn-based arenas and safety games.
//!
//! Agent 0 wins a play if it stays inside the safe set forever. A vertex of
//! agent 0 with no outgoing edge is losing for agent 0; a dead vertex of
//! agent 1 is winning for agent 0.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Zero,
    One,
}

/// Vertices `0..n`, each owned by one player, with adjacency lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Arena {
    owner: Vec<Player>,
    succ: Vec<Vec<usize>>,
}

impl Arena {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, owner: Player) -> usize {
        self.owner.push(owner);
        self.succ.push(Vec::new());
        self.owner.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize) -> Result<()> {
        let n = self.owner.len();
        if from >= n || to >= n {
            return Err(Error::Internal(alloc::format!(
                "edge ({from},{to}) leaves the arena"
            )));
        }
        if !self.succ[from].contains(&to) {
            self.succ[from].push(to);
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.owner.len()
    }

    pub fn num_edges(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn vertices_of(&self, p: Player) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_vertices()).filter(move |&v| self.owner[v] == p)
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut preds = vec![Vec::new(); self.num_vertices()];
        for (v, succ) in self.succ.iter().enumerate() {
            for &w in succ {
                preds[w].push(v);
            }
        }
        preds
    }
}

/// Winning regions and a positional agent-0 strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetySolution {
    win1: Vec<bool>,
    /// For agent-0 vertices in Win0: the lowest-id successor in Win0.
    strategy: Vec<Option<usize>>,
}

impl SafetySolution {
    pub fn wins0(&self, v: usize) -> bool {
        !self.win1[v]
    }

    pub fn wins1(&self, v: usize) -> bool {
        self.win1[v]
    }

    pub fn win0(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.win1.len()).filter(move |&v| !self.win1[v])
    }

    pub fn win1(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.win1.len()).filter(move |&v| self.win1[v])
    }

    pub fn strategy(&self, v: usize) -> Option<usize> {
        self.strategy[v]
    }
}

/// Solves the safety game `(arena, safe)` by computing agent 1's attractor
/// to the unsafe vertices and the dead agent-0 vertices.
pub fn solve_safety(arena: &Arena, safe: &[bool]) -> SafetySolution {
    let n = arena.num_vertices();
    assert_eq!(safe.len(), n, "safe set must cover every vertex");
    let preds = arena.predecessors();
    let mut win1 = vec![false; n];
    // agent-0 vertices: successors not yet attracted
    let mut remaining: Vec<usize> = arena.succ.iter().map(Vec::len).collect();
    let mut queue = VecDeque::new();
    for v in 0..n {
        let dead0 = arena.owner[v] == Player::Zero && arena.succ[v].is_empty();
        if !safe[v] || dead0 {
            win1[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &p in &preds[v] {
            if win1[p] {
                continue;
            }
            let joins = match arena.owner[p] {
                Player::One => true,
                Player::Zero => {
                    remaining[p] -= 1;
                    remaining[p] == 0
                }
            };
            if joins {
                win1[p] = true;
                queue.push_back(p);
            }
        }
    }
    let strategy = (0..n)
        .map(|v| {
            if arena.owner[v] == Player::Zero && !win1[v] {
                arena.succ[v].iter().copied().filter(|&w| !win1[w]).min()
            } else {
                None
            }
        })
        .collect();
    SafetySolution { win1, strategy }
}
