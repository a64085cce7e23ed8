//! Finite (m,n)-semihyperrings.
//!
//! A structure is a finite universe `{0, .., k-1}` (k ≤ 64) carrying an
//! m-ary hyperoperation `f` (values are non-empty subsets) and an n-ary
//! operation `g`. This crate decides the axioms of such structures by
//! exhaustive sweeps and explores their hyperideals, congruences,
//! quotients, homomorphisms and fuzzy hyperideals.
//!
//! Checks are organized as named strategies: [`axioms::Axiom`] and
//! [`ideals::IdealPredicate`] implementations are collected in registries
//! and looked up by name at runtime.

pub mod axioms;
pub mod congruence;
pub mod error;
pub mod factory;
pub mod fuzzy;
pub mod ideals;
pub mod io;
pub mod morphisms;
pub mod par;
pub mod structure;
pub mod subset;
pub mod table;
pub mod theorems;

pub use error::{Error, Result};
pub use structure::Structure;
pub use subset::SubsetMask;
pub use table::{Element, HyperOpTable, OpTable, TupleShape};

/// Largest supported universe size; subsets are single machine words.
pub const MAX_UNIVERSE: usize = 64;
