use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::interp::FiniteInterpretation;
use crate::syntax::{defined_names, dependencies, detect_fragment, lhs_names, Axiom, Concept, DependMode, FragmentTag, Signature, TBox};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetyReport {
    pub safe: bool,
    pub direct_witnesses: BTreeSet<String>,
    /// Name `A` and the set of names inducing its indirect dependency.
    pub indirect_witnesses: BTreeMap<String, BTreeSet<String>>,
    /// A Σ-interpretation with no extension to a model of the TBox.
    pub countermodel: Option<FiniteInterpretation>,
}

/// Σ-names `A` with `depend_T(A) ∩ Σ ≠ ∅`.
pub fn direct_dependency(t: &TBox, sigma: &Signature) -> Result<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    for a in lhs_names(t).intersection(&sigma.concepts) {
        if !dependencies(t, a, DependMode::All)?.intersect(sigma).is_empty() {
            out.insert(a.clone());
        }
    }
    Ok(out)
}

/// Defined Σ-names whose definitional dependencies outside `def(T)` are
/// covered by the dependencies of `(lhs(T) ∩ Σ) ∖ {A}`.
pub fn indirect_dependency(t: &TBox, sigma: &Signature) -> Result<BTreeMap<String, BTreeSet<String>>> {
    let lhs = lhs_names(t);
    let def = defined_names(t);
    let mut out = BTreeMap::new();
    for a in def.intersection(&sigma.concepts) {
        let mut need = dependencies(t, a, DependMode::Definitional)?;
        need.concepts.retain(|n| !def.contains(n));
        let inducing: BTreeSet<String> = lhs.intersection(&sigma.concepts).filter(|b| *b != a).cloned().collect();
        let mut cover = Signature::default();
        for b in &inducing {
            cover = cover.union(&dependencies(t, b, DependMode::All)?);
        }
        if need.is_subset(&cover) {
            out.insert(a.clone(), inducing);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Sym {
    C(String),
    R(String),
}

fn point_atoms(c: &Concept, out: &mut BTreeSet<Sym>) {
    match c {
        Concept::Name(n) => {
            out.insert(Sym::C(n.clone()));
        }
        Concept::And(xs) => xs.iter().for_each(|x| point_atoms(x, out)),
        Concept::Exists(r, d) => {
            out.insert(Sym::R(r.name.clone()));
            point_atoms(d, out);
        }
        _ => {}
    }
}

/// Whether the one-element Σ-interpretation making exactly `true_concepts`
/// and `true_roles` hold (roles as a self-loop) extends to a model of the
/// EL TBox `t`. Decided by forward chaining over the induced Horn clauses.
pub fn extends_on_point(t: &TBox, sigma: &Signature, true_concepts: &BTreeSet<String>, true_roles: &BTreeSet<String>) -> bool {
    let in_sigma = |s: &Sym| match s {
        Sym::C(n) => sigma.concepts.contains(n),
        Sym::R(n) => sigma.roles.contains(n),
    };
    let mut clauses = Vec::new();
    for a in t.expanded() {
        if let Axiom::Sub(c, d) = a {
            let (mut body, mut head) = (BTreeSet::new(), BTreeSet::new());
            point_atoms(&c, &mut body);
            point_atoms(&d, &mut head);
            clauses.push((body, head));
        }
    }
    let mut truth: BTreeSet<Sym> = true_concepts.iter().map(|n| Sym::C(n.clone())).collect();
    truth.extend(true_roles.iter().map(|n| Sym::R(n.clone())));
    loop {
        let mut changed = false;
        for (body, head) in &clauses {
            if body.is_subset(&truth) {
                for h in head {
                    if truth.contains(h) {
                        continue;
                    }
                    if in_sigma(h) {
                        return false;
                    }
                    truth.insert(h.clone());
                    changed = true;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn point_model(sigma: &Signature, names: &BTreeSet<String>) -> FiniteInterpretation {
    let mut i = FiniteInterpretation::new();
    let d = i.add_elem("d");
    for n in names.intersection(&sigma.concepts) {
        i.add_label(d, n.clone());
    }
    i
}

/// Σ-model inseparability of an acyclic EL TBox from the empty TBox.
pub fn model_insep_empty(t: &TBox, sigma: &Signature) -> Result<SafetyReport> {
    match detect_fragment(t) {
        FragmentTag::AcyclicEL => {}
        f => return Err(Error::fragment(FragmentTag::AcyclicEL, format!("TBox is {f}"))),
    }
    let direct = direct_dependency(t, sigma)?;
    let indirect = indirect_dependency(t, sigma)?;
    let none = BTreeSet::new();
    let candidates = direct
        .iter()
        .map(|a| BTreeSet::from([a.clone()]))
        .chain(indirect.values().cloned());
    let countermodel = candidates
        .filter(|names| !extends_on_point(t, sigma, names, &none))
        .map(|names| point_model(sigma, &names))
        .next();
    Ok(SafetyReport { safe: direct.is_empty() && indirect.is_empty(), direct_witnesses: direct, indirect_witnesses: indirect, countermodel })
}
