//! All-pairs shortest path solvers over the min-plus engine layer: exact
//! (staged, squaring-based, colored), additive-error approximation,
//! lexicographic two-weight variants, and shortest-path counting in exact,
//! capped, modular and approximate flavors.

pub mod approx;
pub mod counting;
pub mod error;
pub mod exact;
pub mod fixpoint;
pub mod lex2;

pub use error::{Error, Result};
