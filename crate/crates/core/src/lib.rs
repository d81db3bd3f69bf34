//! Numerical calculus for weight sequences and weight functions of
//! ultradifferentiable function spaces.
//!
//! The crate computes associated functions and Young conjugates, converts
//! between sequence and weight descriptions, and decides growth conditions
//! on finite grids. Every decision is returned as a [`ConditionVerdict`]
//! carrying its evidence: a witness, a counterexample, or a note on why the
//! tested range was not enough.
//!
//! Large magnitudes (`M_p`, Koethe weights `e^{M(j sqrt k)}`) are always
//! carried as natural logarithms.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod koethe;
pub mod numerics;
pub mod sequences;
pub mod subject;
pub mod verdict;
pub mod weights;

pub use error::{Error, Result};
pub use koethe::{KoetheMatrix, KoetheSource, NuclearityReport, NuclearityStatus};
pub use numerics::{ExtendedReal, LogGrid};
pub use sequences::{AssociatedFunction, SequenceTail, WeightSequence};
pub use verdict::{ConditionVerdict, Counterexample, GridInfo, Status};
pub use weights::{ConjugateTable, Family, GrowthFunction, WeightFunction};
