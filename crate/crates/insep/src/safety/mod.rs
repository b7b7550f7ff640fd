//! Safety of acyclic EL TBoxes for a signature, semantic and syntactic
//! locality, and locality-based module extraction.

mod deps;
mod locality;
mod module;

pub use deps::{direct_dependency, extends_on_point, indirect_dependency, model_insep_empty, SafetyReport};
pub use locality::{
    bot_local_axiom, empty_local_axiom, locality, rewrite_empty, semantic_empty_locality, syntactic_bot_locality,
    syntactic_top_locality, top_local_axiom, LocalityKind, LocalityReport,
};
pub use module::{extract_module, ModuleKind, ModuleResult};
