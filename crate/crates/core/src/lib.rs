//! Energy complexity of Boolean circuits over AND, OR and NOT: constructions,
//! exhaustive measurement and the checks that tie them together.
//!
//! Energy of a circuit on an input is the number of NOT, AND and OR gates that
//! output 1; the energy of the circuit is the maximum over all inputs.

pub mod error;
pub mod fml;
pub mod gen;
pub mod harness;
pub mod ir;
pub mod kw;
pub mod lower;
pub mod semantics;
pub mod synth;

pub use error::{Error, Result};
