//! Polynomial-size program constructions: a read-twice three-sink program
//! computing γ_G exactly, and the clause-chained program for the negation of
//! a 3-CNF in which every variable occurs in at most four clauses.

mod gamma_2bp;
mod sat;

pub use gamma_2bp::encode_gamma_2bp;
pub use sat::{clause_chain, parse_dimacs, random_cnf34, sat_to_bp, Cnf34, Literal, MAX_OCCURRENCES};
