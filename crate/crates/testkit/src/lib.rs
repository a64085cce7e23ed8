//! Reference checkers and corpora for testing `hyperforge`.
//!
//! [`naive`] transcribes each definition directly: explicit loops over all
//! tuples, its own table indexing, no shortcuts. It is slow on purpose and
//! only meant to be compared against the optimized checkers on small
//! structures. [`corpus`] builds the structures those comparisons run on.

pub mod corpus;
pub mod naive;
