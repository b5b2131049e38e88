//! Finite preorders, the topologies they induce, and semicontinuous
//! multi-utility representations, with executable checks of the
//! relationships between them.

pub mod cli;
pub mod error;
pub mod harness;
pub mod io;
pub mod order;
pub mod representation;
pub mod set;
pub mod topology;
pub mod verdict;

pub use error::{Error, Result};
pub use order::{ContourKind, PairClass, Preorder, Quotient, SetDirection, SupResult};
pub use representation::{FunctionFamily, LscRpResult, Rational, ValueFunction};
pub use set::ElementSet;
pub use topology::{SubbasisRole, Topology};
pub use verdict::Verdict;
