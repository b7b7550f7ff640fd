//! Saturation-based reasoning: EL completion with subsumption and
//! classification, and a Horn-ALCHI type saturation used for consistency,
//! generating structures and Horn subsumption.

mod el;
mod entail;
mod horn;

pub use el::{el_classify, el_subsumes, ElReasoner, Subsumers, SubsumptionMap, DEFAULT_BUDGET};
pub use entail::{entails_at, horn_subsumes, kb_consistent, or_split};
pub use horn::{inv, saturate, DRole, HornTBox, Node, Saturation, WitnessMode, DEFAULT_WITNESS_CAP, H_BOT, H_TOP};
