//! Branching programs, exact minimization oracles and the BPIS reduction
//! to partial-function BP minimization.
//!
//! Variables are 0-based in the API and 1-based in text formats. Truth
//! tables index rows with variable 0 as the most significant bit.

mod bits;
pub mod bp;
pub mod bpis;
pub mod encoders;
pub mod error;
pub mod formula;
pub mod gamma;
pub mod search;
pub mod table;

pub use bp::{Builder, BranchingProgram, ClassReport, Node, Target};
pub use bpis::{BpisInstance, HalfPermutationPair, Vertex};
pub use error::{Error, ParseError};
pub use formula::DeMorganFormula;
pub use table::{PartialAssignment, PartialTruthTable, Value};
