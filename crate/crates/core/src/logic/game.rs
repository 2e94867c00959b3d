//! The n-round Ehrenfeucht–Fraïssé game for EF + F⁻¹, solved exactly by
//! memoised search.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::terms::{Forest, MaybeEmptyForest, NodeId, NodeTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    Spoiler,
    Duplicator,
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Player::Spoiler => "Spoiler",
            Player::Duplicator => "Duplicator",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Position {
    /// Spoiler opens by picking a root on either side.
    Introductory,
    Nodes(NodeId, NodeId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameConfig {
    pub rounds_left: usize,
    pub position: Position,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no node at {0} in the {1} forest")]
pub struct GameError(pub NodeId, pub &'static str);

const UNKNOWN: u8 = 0;
const DUP: u8 = 1;
const SPOILER: u8 = 2;

/// Game arena over two fixed forests. The memo table is keyed by
/// `(rounds, x0, x1)` and is local to the arena.
pub struct EfGame<'a> {
    sides: [NodeTable<'a>; 2],
    memo: Vec<u8>,
    memo_rounds: usize,
}

impl<'a> EfGame<'a> {
    pub fn new(left: NodeTable<'a>, right: NodeTable<'a>) -> Self {
        EfGame {
            sides: [left, right],
            memo: Vec::new(),
            memo_rounds: 0,
        }
    }

    pub fn on_forests(left: &'a Forest, right: &'a Forest) -> Self {
        EfGame::new(NodeTable::from_forest(left), NodeTable::from_forest(right))
    }

    pub fn on_one_sorted(left: &'a MaybeEmptyForest, right: &'a MaybeEmptyForest) -> Self {
        EfGame::new(
            NodeTable::from_one_sorted(left),
            NodeTable::from_one_sorted(right),
        )
    }

    fn ensure_memo(&mut self, rounds: usize) {
        if rounds + 1 > self.memo_rounds {
            let cells = self.sides[0].len() * self.sides[1].len();
            self.memo.resize((rounds + 1) * cells, UNKNOWN);
            self.memo_rounds = rounds + 1;
        }
    }

    /// Duplicator wins the `rounds`-round game from nodes `(x0, x1)`
    /// (preorder indices).
    pub fn duplicator_wins_from(&mut self, x0: usize, x1: usize, rounds: usize) -> bool {
        self.ensure_memo(rounds);
        self.solve(x0, x1, rounds)
    }

    /// Duplicator wins the game that starts with the introductory round.
    pub fn duplicator_wins(&mut self, rounds: usize) -> bool {
        self.ensure_memo(rounds);
        let (r0, r1) = (self.sides[0].roots.clone(), self.sides[1].roots.clone());
        if r0.is_empty() || r1.is_empty() {
            return r0.is_empty() && r1.is_empty();
        }
        r0.iter()
            .all(|&x| r1.iter().any(|&y| self.solve(x, y, rounds)))
            && r1
                .iter()
                .all(|&y| r0.iter().any(|&x| self.solve(x, y, rounds)))
    }

    pub fn winner(&mut self, config: &GameConfig) -> Result<Player, GameError> {
        let dup = match &config.position {
            Position::Introductory => self.duplicator_wins(config.rounds_left),
            Position::Nodes(a, b) => {
                let x0 = self.sides[0]
                    .index_of(a)
                    .ok_or_else(|| GameError(a.clone(), "left"))?;
                let x1 = self.sides[1]
                    .index_of(b)
                    .ok_or_else(|| GameError(b.clone(), "right"))?;
                self.duplicator_wins_from(x0, x1, config.rounds_left)
            }
        };
        Ok(if dup {
            Player::Duplicator
        } else {
            Player::Spoiler
        })
    }

    fn solve(&mut self, x0: usize, x1: usize, rounds: usize) -> bool {
        if self.sides[0].labels[x0] != self.sides[1].labels[x1] {
            return false;
        }
        if rounds == 0 {
            return true;
        }
        let key = (rounds * self.sides[0].len() + x0) * self.sides[1].len() + x1;
        match self.memo[key] {
            DUP => return true,
            SPOILER => return false,
            _ => {}
        }
        let won = self.round(x0, x1, rounds);
        self.memo[key] = if won { DUP } else { SPOILER };
        won
    }

    /// One round: every Spoiler move must have a Duplicator answer of the
    /// same kind on the other side. No answer means Spoiler wins.
    fn round(&mut self, x0: usize, x1: usize, rounds: usize) -> bool {
        let pos = [x0, x1];
        for side in 0..2 {
            let other = 1 - side;
            for descending in [true, false] {
                let moves = self.moves(side, pos[side], descending);
                let answers = self.moves(other, pos[other], descending);
                for &y in &moves {
                    let answered = answers.iter().any(|&z| {
                        let (a, b) = if side == 0 { (y, z) } else { (z, y) };
                        self.solve(a, b, rounds - 1)
                    });
                    if !answered {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn moves(&self, side: usize, x: usize, descending: bool) -> Vec<usize> {
        let t = &self.sides[side];
        if descending {
            t.descendants(x).collect()
        } else {
            t.ancestors(x).collect()
        }
    }
}

/// Exact winner of the `n`-round game on one-sorted (possibly empty)
/// forests. Without `start` the introductory round is played first.
pub fn ef_game_winner(
    n: usize,
    s0: &MaybeEmptyForest,
    s1: &MaybeEmptyForest,
    start: Option<(NodeId, NodeId)>,
) -> Result<Player, GameError> {
    let mut game = EfGame::on_one_sorted(s0, s1);
    let position = match start {
        None => Position::Introductory,
        Some((a, b)) => Position::Nodes(a, b),
    };
    game.winner(&GameConfig {
        rounds_left: n,
        position,
    })
}

/// Introductory-round game on two two-sorted forests.
pub fn forest_game_winner(n: usize, s0: &Forest, s1: &Forest) -> Player {
    if EfGame::on_forests(s0, s1).duplicator_wins(n) {
        Player::Duplicator
    } else {
        Player::Spoiler
    }
}
