//! Concepts, axioms, ontologies and signatures, their concrete syntax,
//! fragment checks, EL normalization and dependency relations.

mod ast;
mod depend;
mod fragment;
mod normalize;
mod parse;
pub mod sexpr;

pub use ast::{ABox, Axiom, Concept, FragmentTag, Role, Signature, TBox, KB};
pub use depend::{defined_names, dependencies, lhs_names, DependMode};
pub use fragment::{detect_fragment, fragment_profile, is_horn, validate_fragment, FragmentReport, Offense};
pub use normalize::{is_el_normal, normalize_el, Origin, OriginMap};
pub use parse::{concept_from, parse_axiom, parse_concept, parse_document, parse_signature, parse_signature_inline, role_from, Document};

pub(crate) use fragment::{el_axiom, horn_alchi_axiom, horn_neg, horn_pos};
pub(crate) use normalize::{el_with_bot, fresh_prefix, Normalizer};
