//! Self-dual sequences over Z_m, complemented cycling registers, difference
//! operators, and single-track Gray codes built from orderings of self-dual
//! sequences.

pub mod arith;
pub mod error;
pub mod format;
pub mod operators;
pub mod registers;
pub mod stgc;
pub mod zmseq;

pub use error::{Error, Result};
pub use registers::{CountReport, CountSource, RegisterSpec};
pub use stgc::{SdsOrdering, Stgc, VerifyReport};
pub use zmseq::{CyclicSeq, Word};
