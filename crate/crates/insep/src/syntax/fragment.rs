use std::collections::BTreeMap;

use super::ast::{Axiom, Concept, FragmentTag, TBox};
use super::depend::{acyclic_shape_offenses, cyclic_names};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Offense {
    pub index: usize,
    pub axiom: Axiom,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentReport {
    pub tag: FragmentTag,
    pub offenses: Vec<Offense>,
}

impl FragmentReport {
    pub fn is_valid(&self) -> bool {
        self.offenses.is_empty()
    }
}

fn el_concept(c: &Concept) -> Result<(), String> {
    match c {
        Concept::Top | Concept::Name(_) => Ok(()),
        Concept::And(xs) => xs.iter().try_for_each(el_concept),
        Concept::Exists(r, d) if !r.inverted => el_concept(d),
        Concept::Exists(..) => Err("inverse role".into()),
        Concept::Bot => Err("uses Bot".into()),
        Concept::Not(_) => Err("uses not".into()),
        Concept::Or(_) => Err("uses or".into()),
        Concept::Forall(..) => Err("uses all".into()),
    }
}

pub(crate) fn el_axiom(a: &Axiom) -> Result<(), String> {
    match a {
        Axiom::Sub(c, d) | Axiom::Equiv(c, d) => el_concept(c).and_then(|_| el_concept(d)),
        Axiom::RSub(..) => Err("role inclusion".into()),
    }
}

pub(crate) fn is_basic(c: &Concept) -> bool {
    match c {
        Concept::Top | Concept::Bot | Concept::Name(_) => true,
        Concept::Exists(_, d) => **d == Concept::Top,
        _ => false,
    }
}

fn dllite_axiom(a: &Axiom, with_h: bool) -> Result<(), String> {
    match a {
        Axiom::Sub(c, d) | Axiom::Equiv(c, d) if is_basic(c) && is_basic(d) => Ok(()),
        Axiom::Sub(Concept::And(xs), Concept::Bot) if xs.len() == 2 && xs.iter().all(is_basic) => Ok(()),
        Axiom::RSub(..) if with_h => Ok(()),
        Axiom::RSub(..) => Err("role inclusion outside DLLiteCoreH".into()),
        _ => Err("not of the form B1 <= B2 or B1 and B2 <= Bot over basic concepts".into()),
    }
}

/// Positive occurrence check for Horn polarity.
pub(crate) fn horn_pos(c: &Concept) -> bool {
    match c {
        Concept::Top | Concept::Bot | Concept::Name(_) => true,
        Concept::Not(d) => horn_neg(d),
        Concept::And(xs) => xs.iter().all(horn_pos),
        Concept::Or(_) => false,
        Concept::Exists(_, d) | Concept::Forall(_, d) => horn_pos(d),
    }
}

pub(crate) fn horn_neg(c: &Concept) -> bool {
    match c {
        Concept::Top | Concept::Bot | Concept::Name(_) => true,
        Concept::Not(_) | Concept::Forall(..) => false,
        Concept::And(xs) | Concept::Or(xs) => xs.iter().all(horn_neg),
        Concept::Exists(_, d) => horn_neg(d),
    }
}

/// Horn polarity test on any ALCHI axiom, inverse roles and role inclusions allowed.
pub(crate) fn horn_alchi_axiom(a: &Axiom) -> Result<(), String> {
    match a {
        Axiom::Sub(c, d) if horn_neg(c) && horn_pos(d) => Ok(()),
        Axiom::Equiv(c, d) if horn_neg(c) && horn_pos(c) && horn_neg(d) && horn_pos(d) => Ok(()),
        Axiom::RSub(..) => Ok(()),
        _ => Err("not Horn: or in positive position, or not/all in negative position".into()),
    }
}

fn horn_alc_axiom(a: &Axiom) -> Result<(), String> {
    match a {
        Axiom::RSub(..) => Err("role inclusion".into()),
        Axiom::Sub(c, d) | Axiom::Equiv(c, d) if c.has_inverse() || d.has_inverse() => Err("inverse role".into()),
        _ => horn_alchi_axiom(a),
    }
}

pub fn validate_fragment(tbox: &TBox, tag: FragmentTag) -> FragmentReport {
    let mut offenses = Vec::new();
    let push = |offenses: &mut Vec<Offense>, i: usize, a: &Axiom, reason: String| offenses.push(Offense { index: i, axiom: a.clone(), reason });
    for (i, a) in tbox.axioms.iter().enumerate() {
        let res = match tag {
            FragmentTag::EL | FragmentTag::AcyclicEL => el_axiom(a),
            FragmentTag::DLLiteCore => dllite_axiom(a, false),
            FragmentTag::DLLiteCoreH => dllite_axiom(a, true),
            FragmentTag::HornALC => horn_alc_axiom(a),
            FragmentTag::ALCHI => Ok(()),
        };
        if let Err(reason) = res {
            push(&mut offenses, i, a, reason);
        }
    }
    if tag == FragmentTag::AcyclicEL && offenses.is_empty() {
        for (i, reason) in acyclic_shape_offenses(tbox) {
            push(&mut offenses, i, &tbox.axioms[i], reason);
        }
        if offenses.is_empty() {
            let cyclic = cyclic_names(tbox);
            for (i, a) in tbox.axioms.iter().enumerate() {
                if let Axiom::Sub(Concept::Name(n), _) | Axiom::Equiv(Concept::Name(n), _) = a {
                    if cyclic.contains(n) {
                        push(&mut offenses, i, a, format!("cyclic definition: {n} depends on itself"));
                    }
                }
            }
        }
    }
    FragmentReport { tag, offenses }
}

/// Most specific tag the TBox belongs to, in the order EL, AcyclicEL,
/// DLLiteCore, DLLiteCoreH, HornALC, ALCHI.
pub fn detect_fragment(tbox: &TBox) -> FragmentTag {
    if validate_fragment(tbox, FragmentTag::EL).is_valid() {
        if validate_fragment(tbox, FragmentTag::AcyclicEL).is_valid() {
            return FragmentTag::AcyclicEL;
        }
        return FragmentTag::EL;
    }
    for t in [FragmentTag::DLLiteCore, FragmentTag::DLLiteCoreH, FragmentTag::HornALC] {
        if validate_fragment(tbox, t).is_valid() {
            return t;
        }
    }
    FragmentTag::ALCHI
}

/// True iff every axiom is Horn (inverse roles and role inclusions allowed).
pub fn is_horn(tbox: &TBox) -> bool {
    tbox.axioms.iter().all(|a| horn_alchi_axiom(a).is_ok())
}

/// Offense counts per tag, for reports.
pub fn fragment_profile(tbox: &TBox) -> BTreeMap<FragmentTag, usize> {
    FragmentTag::ALL.into_iter().map(|t| (t, validate_fragment(tbox, t).offenses.len())).collect()
}
