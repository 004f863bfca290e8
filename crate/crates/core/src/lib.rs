//! Construction, exhaustive verification and size bounds for
//! `(n,d)`-universal sets and `(n,(r,s))`-cover-free families.
//!
//! A binary universal set is assembled as the union of cover-free families
//! `F(n,(i,d-i))`, `i = 0..=d` (see [`universal::build_universal_lemma1`]);
//! any alphabet is also served directly by a derandomized greedy. Every
//! constructor's output can be checked by the exhaustive verifiers in
//! [`verify`], and tiny instances can be solved exactly with [`oracle`].

pub mod bounds;
pub mod cff;
pub mod cli;
pub mod combin;
pub mod error;
pub mod format;
mod greedy;
pub mod matrix;
pub mod oracle;
pub mod universal;
pub mod verify;

pub use error::{Error, Result};
pub use greedy::{GreedyTrace, TraceRow, MAX_CONSTRAINTS};
pub use matrix::{CffSpec, SymbolMatrix, UniversalSpec};
pub use verify::{count_uncovered, verify_cff, verify_universal, Requirement, Verdict, Witness};
