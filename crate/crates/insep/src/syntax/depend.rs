use std::collections::{BTreeMap, BTreeSet};

use super::ast::{Axiom, Concept, Signature, TBox};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DependMode {
    All,
    Definitional,
}

/// Axioms that are not `A ⊑ C` / `A ≡ C`, or whose lhs name repeats.
pub(crate) fn acyclic_shape_offenses(tbox: &TBox) -> Vec<(usize, String)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (i, a) in tbox.axioms.iter().enumerate() {
        match a {
            Axiom::Sub(Concept::Name(n), _) | Axiom::Equiv(Concept::Name(n), _) => {
                if !seen.insert(n.clone()) {
                    out.push((i, format!("{n} occurs more than once on a left-hand side")));
                }
            }
            Axiom::RSub(..) => out.push((i, "role inclusion".into())),
            _ => out.push((i, "left-hand side is not a concept name".into())),
        }
    }
    out
}

pub(crate) fn check_acyclic_shape(tbox: &TBox) -> Result<()> {
    match acyclic_shape_offenses(tbox).into_iter().next() {
        None => Ok(()),
        Some((i, reason)) => Err(Error::Unsupported(format!("axiom {} ({}): {reason}", i, tbox.axioms[i]))),
    }
}

/// `A ↦ sig(C)` over the statements `A ⋈ C` selected by `mode`.
fn direct_edges(tbox: &TBox, mode: DependMode) -> BTreeMap<&str, Signature> {
    let mut m: BTreeMap<&str, Signature> = BTreeMap::new();
    for a in &tbox.axioms {
        let (n, c) = match (a, mode) {
            (Axiom::Equiv(Concept::Name(n), c), _) => (n, c),
            (Axiom::Sub(Concept::Name(n), c), DependMode::All) => (n, c),
            _ => continue,
        };
        c.collect_sig(m.entry(n.as_str()).or_default());
    }
    m
}

fn closure(edges: &BTreeMap<&str, Signature>, name: &str) -> Signature {
    let mut out = Signature::default();
    let mut stack = vec![name.to_string()];
    let mut visited = BTreeSet::new();
    while let Some(n) = stack.pop() {
        if !visited.insert(n.clone()) {
            continue;
        }
        if let Some(s) = edges.get(n.as_str()) {
            out.roles.extend(s.roles.iter().cloned());
            for c in &s.concepts {
                out.concepts.insert(c.clone());
                stack.push(c.clone());
            }
        }
    }
    out
}

/// `depend_T(A)` (mode `All`) or `depend^≡_T(A)` (mode `Definitional`).
pub fn dependencies(tbox: &TBox, name: &str, mode: DependMode) -> Result<Signature> {
    check_acyclic_shape(tbox)?;
    Ok(closure(&direct_edges(tbox, mode), name))
}

/// Dependencies of every lhs name at once; skips the shape check.
pub(crate) fn all_dependencies(tbox: &TBox, mode: DependMode) -> BTreeMap<String, Signature> {
    let edges = direct_edges(tbox, mode);
    edges.keys().map(|n| (n.to_string(), closure(&edges, n))).collect()
}

/// Names `A` with `A ∈ depend_T(A)`.
pub(crate) fn cyclic_names(tbox: &TBox) -> BTreeSet<String> {
    all_dependencies(tbox, DependMode::All)
        .into_iter()
        .filter(|(n, s)| s.concepts.contains(n))
        .map(|(n, _)| n)
        .collect()
}

/// Names on the left of some `A ⊑ C` or `A ≡ C`.
pub fn lhs_names(tbox: &TBox) -> BTreeSet<String> {
    tbox.axioms
        .iter()
        .filter_map(|a| match a {
            Axiom::Sub(Concept::Name(n), _) | Axiom::Equiv(Concept::Name(n), _) => Some(n.clone()),
            _ => None,
        })
        .collect()
}

/// Names on the left of some `A ≡ C`.
pub fn defined_names(tbox: &TBox) -> BTreeSet<String> {
    tbox.axioms
        .iter()
        .filter_map(|a| match a {
            Axiom::Equiv(Concept::Name(n), _) => Some(n.clone()),
            _ => None,
        })
        .collect()
}
