//! Circuit constructions: minterms, truth tables, connectors and decision trees.

mod cascade;
mod connector;
mod dt_compile;
mod fanin2;

pub use cascade::{
    compile_truth_table, compile_truth_table_capped, minterm_cascade, minterm_cascade_capped,
    MintermCascade,
};
pub use connector::{connector_merge, ConnectorResult};
pub use dt_compile::{dt_to_circuit, dt_to_circuit_over, DtCompileResult};
pub use fanin2::fanin2_reduce;
