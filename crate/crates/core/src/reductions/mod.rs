//! Instance generators for the SAT → CSP → list coloring → coloring chain.

mod cnf;
mod csp;
mod cw;
mod encoding;
mod generated;
mod mpw;
mod sat;

pub use cnf::{parse_cnf, CnfFormula};
pub use csp::{parse_csp, Constraint, CspInstance};
pub use cw::{block_count, csp_to_coloring_cw, label_budget};
pub use encoding::{value_encoding, Scheme, TranslationTable};
pub use generated::{sha256_hex, verify_witness, GeneratedInstance, Provenance, Witness};
pub use mpw::{csp_to_coloring_mpw, eth_padded_vars, eth_pipeline};
pub use sat::{sat_to_csp, sat_to_csp_with, GroupingParams, MAX_CLAUSE_GROUPS};
