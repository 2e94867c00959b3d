//! Semigroup automata, forest algebras generated from them, the syntactic
//! algebra of a language, the relation `⊣` and the definability test.

mod automaton;
mod dashv;
mod decide;
mod dump;
pub(crate) mod forest_algebra;
mod generate;
mod identities;
mod syntactic;

use thiserror::Error;

pub use automaton::{load_validate_automaton, AutomatonDocument, Kind, SemigroupAutomaton};
pub use dashv::{DashvRelation, Derivation};
pub use decide::{
    analyze, decide_definable, pump_identity3, separating_witnesses, tree_sub_verdicts, Analysis,
    DecideOptions, Identity, SeparatingPair, Verdict, Violation,
};
pub use dump::AlgebraDump;
pub use forest_algebra::FiniteForestAlgebra;
pub use generate::{generate_algebra, AlgebraMorphism};
pub use identities::{check_identities, omega, IdentityFailure, IdentityReport, Omega};
pub use syntactic::{syntactic_morphism, syntactic_quotient};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("cannot parse automaton: {0}")]
    Parse(String),
    #[error("invalid automaton: {0}")]
    Invalid(String),
    #[error("add is not associative: ({0}+{1})+{2} differs from {0}+({1}+{2})")]
    NonAssociative(String, String, String),
    #[error("dangling reference: {0}")]
    Dangling(String),
    #[error("unknown kind `{0}`")]
    UnknownKind(String),
    #[error("leaf map has no entry for `{0}`")]
    MissingLeaf(String),
    #[error("inner map has no entry for `{0}`")]
    MissingInner(String),
    #[error("label `{0}` is outside the alphabet")]
    UnknownLabel(String),
    #[error("tree automaton applied to the forest {0}")]
    KindViolation(String),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("internal error: {0}")]
    Internal(String),
}
