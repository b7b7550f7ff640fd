//! Generating structures, canonical models and certain answers for Horn KBs.

mod cq;
mod structure;

pub use cq::{certain_answer, certain_answer_in, cq_from, parse_cq, CQ};
pub use structure::{build_generating_structure, build_generating_structure_capped, canonical_for_concept, canonical_for_names, witness_mode, CanonicalPrefix, GeneratingStructure, UNRAVEL_CAP};
