//! List and proper coloring solvers parameterized by clique-width and modular
//! treewidth, together with the hardness reductions and brute-force oracles.

pub mod colorset;
pub mod dp;
pub mod error;
pub mod expr;
pub mod gadgets;
pub mod graph;
pub mod mtw;
pub mod oracle;
pub mod reductions;

pub use colorset::{ColorSet, MAX_COLORS};
pub use error::{Error, ParseError, Result};
pub use graph::{Graph, ListColoringInstance};
