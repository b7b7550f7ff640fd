mod hom;
mod model;
mod sim;

pub use hom::check_homomorphism;
pub use model::{parse_interpretation, parse_interpretation_items, satisfies, Assertion, FiniteInterpretation, Item};
pub use sim::{check_bisimulation, check_simulation, validate_witness, Reason, RelationKind, RelationWitness, SimTable};
