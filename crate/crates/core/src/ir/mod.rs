//! Circuits, formulas, decision trees and truth tables, with their text formats.

mod builder;
mod circuit;
mod dtree;
mod formula;
mod gate;
pub mod netlist;
mod truth_table;

pub use builder::Graph;
pub use circuit::{Circuit, Stats};
pub use dtree::DecisionTree;
pub use formula::Formula;
pub use gate::{FaninMode, Gate, GateId, GateKind};
pub use netlist::{parse_formula, parse_netlist, serialize};
pub use truth_table::{
    format_input, index_of, input_of, parse_input, word_mask, TruthTable, VAR_MASKS,
};
