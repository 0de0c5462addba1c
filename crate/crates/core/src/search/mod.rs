//! Exact oracles: minimum BP size, MBPSP*, oaBP and read-once formula
//! existence, query complexity and OBDD minimization.

mod budget;
mod minimize;
mod oabp;
mod obdd;
mod query;
mod read_once;

pub use budget::{SearchBudget, SearchOutcome, SearchStats, Verdict, Witness};
pub use minimize::{enumerate_bps, mbpsp_star, min_bp_size, BpEnumerator, ENUM_MAX_SIZE, ENUM_MAX_VARS};
pub use oabp::{oabp_enumerate, oabp_search, OabpEnumeration};
pub use obdd::{obdd_minimize, obdd_size_under_order, OBDD_MAX_VARS};
pub use query::{query_complexity, QUERY_MAX_VARS};
pub use read_once::{read_once_formula_search, READ_ONCE_MAX_VARS};
