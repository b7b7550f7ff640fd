//! Deciding and witnessing inseparability between description logic
//! ontologies: EL concept difference, safety and locality-based modules,
//! and conjunctive-query inseparability of Horn knowledge bases.

pub mod chase;
pub mod eldiff;
pub mod error;
pub mod interp;
pub mod qgames;
pub mod reasoner;
pub mod safety;
pub mod syntax;

pub use error::{Error, Result};
