use std::collections::BTreeSet;

use super::locality::{bot_local_axiom, empty_local_axiom};
use crate::error::{Error, Result};
use crate::syntax::{Axiom, Signature, TBox};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleKind {
    BotSyntactic,
    EmptySemantic,
}

impl ModuleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModuleKind::BotSyntactic => "bot-syntactic",
            ModuleKind::EmptySemantic => "empty-semantic",
        }
    }

    pub fn parse(s: &str) -> Option<ModuleKind> {
        [ModuleKind::BotSyntactic, ModuleKind::EmptySemantic].into_iter().find(|k| k.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleResult {
    pub kind: ModuleKind,
    pub module: TBox,
    /// Positions of the module axioms in the input, ascending.
    pub indices: Vec<usize>,
    /// Axioms added in each round.
    pub trace: Vec<Vec<usize>>,
    pub iterations: usize,
    /// Axioms decided by the ⊥ grammar because they fall outside Horn.
    pub fallback: BTreeSet<usize>,
}

fn is_local(a: &Axiom, sig: &Signature, kind: ModuleKind, i: usize, fallback: &mut BTreeSet<usize>) -> Result<bool> {
    match kind {
        ModuleKind::BotSyntactic => Ok(bot_local_axiom(a, sig)),
        ModuleKind::EmptySemantic => match empty_local_axiom(a, sig) {
            Err(Error::Unsupported(_)) => {
                fallback.insert(i);
                Ok(bot_local_axiom(a, sig))
            }
            r => r,
        },
    }
}

/// Grows `M` from `∅` by the axioms non-local w.r.t. `Σ ∪ sig(M)` until the
/// remainder is local.
pub fn extract_module(t: &TBox, sigma: &Signature, kind: ModuleKind) -> Result<ModuleResult> {
    let mut sig = sigma.clone();
    let mut inside = vec![false; t.axioms.len()];
    let mut trace = Vec::new();
    let mut fallback = BTreeSet::new();
    loop {
        let mut added = Vec::new();
        for (i, a) in t.axioms.iter().enumerate() {
            if !inside[i] && !is_local(a, &sig, kind, i, &mut fallback)? {
                added.push(i);
            }
        }
        if added.is_empty() {
            break;
        }
        for &i in &added {
            inside[i] = true;
            sig = sig.union(&t.axioms[i].sig());
        }
        trace.push(added);
    }
    let indices: Vec<usize> = (0..t.axioms.len()).filter(|&i| inside[i]).collect();
    let module = TBox::new(indices.iter().map(|&i| t.axioms[i].clone()).collect());
    Ok(ModuleResult { kind, module, indices, iterations: trace.len(), trace, fallback })
}
