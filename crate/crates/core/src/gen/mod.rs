//! Seeded random instances and named fixtures.

mod fixtures;
mod spec;

pub use fixtures::{fixture, fixture_by_name, reduced_tree, reduced_tree_count, Fixture};
pub use spec::{generate, nonskew_count, GenSpec, Generated, Shape};
