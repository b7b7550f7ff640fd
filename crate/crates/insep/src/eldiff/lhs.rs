use std::collections::{BTreeMap, BTreeSet};

use crate::chase::canonical_for_names;
use crate::error::{Error, Result};
use crate::interp::SimTable;
use crate::syntax::{detect_fragment, Concept, FragmentTag, Signature, TBox};

/// Size bound for distinguishing concepts read off simulation failures.
pub const EXAMPLE_CAP: usize = 200;

pub(crate) fn require_el(t: &TBox, which: &str) -> Result<()> {
    match detect_fragment(t) {
        FragmentTag::EL | FragmentTag::AcyclicEL => Ok(()),
        f => Err(Error::fragment(FragmentTag::EL, format!("{which} is {f}, not EL"))),
    }
}

/// Greatest Σ-simulation from the canonical model of `t2` into that of `t1`,
/// with a root per Σ-name on each side.
pub(crate) struct LhsTable {
    table: SimTable,
    roots1: BTreeMap<String, usize>,
    roots2: BTreeMap<String, usize>,
}

impl LhsTable {
    pub(crate) fn new(t1: &TBox, t2: &TBox, sigma: &Signature) -> Result<LhsTable> {
        let (i1, roots1) = canonical_for_names(t1, &sigma.concepts)?;
        let (i2, roots2) = canonical_for_names(t2, &sigma.concepts)?;
        let table = SimTable::compute(&i2, &i1, sigma, false);
        Ok(LhsTable { table, roots1, roots2 })
    }

    pub(crate) fn is_witness(&self, a: &str) -> bool {
        !self.table.alive(self.roots2[a], self.roots1[a])
    }

    /// For `A`, a concept `D` with `T₂ ⊨ A ⊑ D` and `T₁ ⊭ A ⊑ D` if one
    /// exists, plus a truncation flag.
    pub(crate) fn witness(&self, a: &str) -> Option<(Concept, bool)> {
        if !self.is_witness(a) {
            return None;
        }
        self.table.distinguishing(self.roots2[a], self.roots1[a], EXAMPLE_CAP)
    }
}

/// Names `A ∈ Σ` with some `A ⊑ D` entailed by `t2` but not by `t1`.
pub fn cwtn_lhs(t1: &TBox, t2: &TBox, sigma: &Signature) -> Result<BTreeSet<String>> {
    require_el(t1, "t1")?;
    require_el(t2, "t2")?;
    let lhs = LhsTable::new(t1, t2, sigma)?;
    Ok(sigma.concepts.iter().filter(|a| lhs.is_witness(a)).cloned().collect())
}
