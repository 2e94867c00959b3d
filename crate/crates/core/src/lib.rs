//! Definability of regular forest languages in the two-way unary temporal
//! logic EF + F⁻¹.
//!
//! The crate is organised bottom-up:
//!
//! * [`terms`]: forests, trees, contexts and their text syntax;
//! * [`logic`]: formulas, their evaluation, antichain substitution and the
//!   Ehrenfeucht–Fraïssé game;
//! * [`algebra`]: semigroup automata, syntactic forest algebras, the `⊣`
//!   relation, the three identities and the decision procedure;
//! * [`compile`]: forest formulas to semigroup automata;
//! * [`oracle`]: exhaustive enumeration and brute-force cross-checks.

pub mod algebra;
pub mod cli;
pub mod compile;
pub mod logic;
pub mod oracle;
pub mod terms;

pub use algebra::{decide_definable, DecideOptions, SemigroupAutomaton, Verdict};
pub use compile::compile_forest_formula;
pub use logic::{ForestFormula, Formula};
pub use terms::{Alphabet, Context, Forest, NodeId, Tree};
