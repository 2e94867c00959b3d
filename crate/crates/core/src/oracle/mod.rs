//! Brute-force ground truth: exhaustive enumeration of small forests and
//! checks built on it.

mod check;
mod corpus;
mod enumerate;

pub use check::{
    bounded_indefinability_search, cross_check, cross_check_with, dashv_direct_check, CrossCheck,
    DashvCheck,
};
pub use corpus::{random_context, random_forest_formulas, random_label_morphisms};
pub use enumerate::{
    enumerate_contexts, enumerate_forests, forest_counts, forests_of_size, Dedup, EnumerationSpec,
};
