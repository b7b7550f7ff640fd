//! EL concept inseparability through left- and right-hand difference
//! witnesses, with example inclusions.

mod lhs;
mod rhs;

use std::collections::BTreeSet;

use crate::error::Result;
use crate::reasoner::ElReasoner;
use crate::syntax::{Axiom, Concept, Signature, TBox};

pub use lhs::{cwtn_lhs, EXAMPLE_CAP};
pub use rhs::{cwtn_rhs, CHOICE_CAP};

/// Deepest unfolding tried when reading a right-hand example off the encoding.
const MAX_UNFOLD: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Lhs,
    Rhs,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Lhs => "lhs",
            Side::Rhs => "rhs",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffExample {
    pub axiom: Axiom,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffReport {
    pub lhs_witnesses: BTreeSet<String>,
    pub rhs_witnesses: BTreeSet<String>,
    pub inseparable: bool,
    /// Right-hand witnesses were not computed (`t1` not acyclic).
    pub partial: bool,
    pub examples: Vec<DiffExample>,
    /// Witnesses for which no example within the size cap was found.
    pub truncated: BTreeSet<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct DiffOptions {
    pub examples: usize,
    pub lhs_only: bool,
}

impl Default for DiffOptions {
    fn default() -> Self {
        DiffOptions { examples: 1, lhs_only: false }
    }
}

/// One-step weakenings: drop a conjunct anywhere in the tree.
fn weakenings(c: &Concept) -> Vec<Concept> {
    let mut out = Vec::new();
    match c {
        Concept::And(xs) => {
            for i in 0..xs.len() {
                let mut ys = xs.clone();
                ys.remove(i);
                out.push(Concept::and(ys));
                for w in weakenings(&xs[i]) {
                    let mut ys = xs.clone();
                    ys[i] = w;
                    out.push(Concept::and(ys));
                }
            }
        }
        Concept::Exists(r, f) => {
            out.push(Concept::Top);
            out.extend(weakenings(f).into_iter().map(|g| Concept::some(r.clone(), g)));
        }
        Concept::Name(_) => out.push(Concept::Top),
        _ => {}
    }
    out
}

/// Greedy weakening while `keep` holds.
fn minimize(mut c: Concept, mut keep: impl FnMut(&Concept) -> Result<bool>) -> Result<Concept> {
    'outer: loop {
        for w in weakenings(&c) {
            if keep(&w)? {
                c = w;
                continue 'outer;
            }
        }
        return Ok(c);
    }
}

struct Checker {
    r1: ElReasoner,
    r2: ElReasoner,
}

impl Checker {
    fn new(t1: &TBox, t2: &TBox) -> Result<Checker> {
        Ok(Checker { r1: ElReasoner::new(t1)?, r2: ElReasoner::new(t2)? })
    }

    /// `t2 ⊨ c ⊑ d` and `t1 ⊭ c ⊑ d`.
    fn differs(&mut self, c: &Concept, d: &Concept) -> Result<bool> {
        Ok(self.r2.subsumes(c, d)? && !self.r1.subsumes(c, d)?)
    }
}

/// The Σ-concept difference summary of `t2` over `t1`.
pub fn el_diff(t1: &TBox, t2: &TBox, sigma: &Signature, opts: DiffOptions) -> Result<DiffReport> {
    lhs::require_el(t1, "t1")?;
    lhs::require_el(t2, "t2")?;
    let mut check = Checker::new(t1, t2)?;
    let mut report = DiffReport {
        lhs_witnesses: BTreeSet::new(),
        rhs_witnesses: BTreeSet::new(),
        inseparable: false,
        partial: opts.lhs_only,
        examples: Vec::new(),
        truncated: BTreeSet::new(),
    };
    let lhs = lhs::LhsTable::new(t1, t2, sigma)?;
    for a in &sigma.concepts {
        let Some((d, _)) = lhs.witness(a) else { continue };
        report.lhs_witnesses.insert(a.clone());
        if opts.examples == 0 {
            continue;
        }
        let name = Concept::name(a.clone());
        let mut found = Vec::new();
        if check.differs(&name, &d)? {
            let small = minimize(d.clone(), |x| check.differs(&name, x))?;
            found.push(small);
            found.push(d);
        }
        found.dedup();
        if found.is_empty() {
            report.truncated.insert(a.clone());
        }
        for d in found.into_iter().take(opts.examples) {
            report.examples.push(DiffExample { axiom: Axiom::sub(name.clone(), d), side: Side::Lhs });
        }
    }
    if !opts.lhs_only {
        let (enc, hits) = rhs::rhs_states(t1, t2, sigma)?;
        for (a, states) in hits {
            report.rhs_witnesses.insert(a.clone());
            if opts.examples == 0 {
                continue;
            }
            let name = Concept::name(a.clone());
            let mut found: Vec<Concept> = Vec::new();
            for s in states {
                for depth in 0..=MAX_UNFOLD {
                    let c = enc.unfold(s, depth);
                    if c.size() > EXAMPLE_CAP {
                        break;
                    }
                    if check.differs(&c, &name)? {
                        let small = minimize(c, |x| check.differs(x, &name))?;
                        if !found.contains(&small) {
                            found.push(small);
                        }
                        break;
                    }
                }
                if found.len() >= opts.examples {
                    break;
                }
            }
            if found.is_empty() {
                report.truncated.insert(a.clone());
            }
            for c in found.into_iter().take(opts.examples) {
                report.examples.push(DiffExample { axiom: Axiom::sub(c, name.clone()), side: Side::Rhs });
            }
        }
    }
    report.inseparable = !report.partial && report.lhs_witnesses.is_empty() && report.rhs_witnesses.is_empty();
    Ok(report)
}

/// `t1` Σ-concept entails `t2` (equivalently rooted-CQ entails, for acyclic EL).
pub fn tbox_rcq_entails_el(t1: &TBox, t2: &TBox, sigma: &Signature) -> Result<bool> {
    Ok(el_diff(t1, t2, sigma, DiffOptions { examples: 0, lhs_only: false })?.inseparable)
}
