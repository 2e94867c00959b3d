//! EF + F⁻¹ formulas: syntax, node-selection semantics, antichain
//! substitution and the Ehrenfeucht–Fraïssé game.

mod antichain;
mod eval;
mod formula;
mod game;

pub use antichain::{
    antichain_substitute, check_antichain_on, compose_antichain_formula, xk_formula,
    AntichainError, Classifier,
};
pub use eval::{eval_mask, eval_nodes, forest_accepts, forest_accepts_table, holds_at_root};
pub use formula::{nesting_depth, ForestFormula, Formula, FormulaError};
pub use game::{
    ef_game_winner, forest_game_winner, EfGame, GameConfig, GameError, Player, Position,
};
