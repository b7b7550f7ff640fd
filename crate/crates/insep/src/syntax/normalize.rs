use std::collections::{BTreeMap, HashMap};

use super::ast::{Axiom, Concept, FragmentTag, Role, TBox};
use super::fragment::el_axiom;
use crate::error::{Error, Result};

/// What a fresh name introduced by normalization stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    /// `C ⊑ X`: the name is implied by the concept.
    Lhs(Concept),
    /// `X ⊑ C`: the name implies the concept.
    Rhs(Concept),
}

pub type OriginMap = BTreeMap<String, Origin>;

pub(crate) struct Normalizer {
    prefix: String,
    counter: usize,
    out: Vec<Axiom>,
    origins: OriginMap,
    lhs_memo: HashMap<Concept, Concept>,
    rhs_memo: HashMap<Concept, Concept>,
}

fn atomic(c: &Concept) -> bool {
    matches!(c, Concept::Top | Concept::Bot | Concept::Name(_))
}

impl Normalizer {
    pub(crate) fn new(prefix: String) -> Normalizer {
        Normalizer {
            prefix,
            counter: 0,
            out: Vec::new(),
            origins: OriginMap::new(),
            lhs_memo: HashMap::new(),
            rhs_memo: HashMap::new(),
        }
    }

    fn fresh(&mut self, origin: Origin) -> Concept {
        let n = format!("{}{}", self.prefix, self.counter);
        self.counter += 1;
        self.origins.insert(n.clone(), origin);
        Concept::Name(n)
    }

    fn rhs(&mut self, l: &Concept, d: &Concept) {
        match d {
            Concept::And(xs) => xs.iter().for_each(|x| self.rhs(l, x)),
            Concept::Exists(r, f) => {
                let b = self.rhs_atom(f);
                self.out.push(Axiom::Sub(l.clone(), Concept::some(r.clone(), b)));
            }
            _ => self.out.push(Axiom::Sub(l.clone(), d.clone())),
        }
    }

    fn rhs_atom(&mut self, d: &Concept) -> Concept {
        if atomic(d) {
            return d.clone();
        }
        if let Some(x) = self.rhs_memo.get(d) {
            return x.clone();
        }
        let x = self.fresh(Origin::Rhs(d.clone()));
        self.rhs_memo.insert(d.clone(), x.clone());
        self.rhs(&x, d);
        x
    }

    fn lhs_into(&mut self, c: &Concept, target: &Concept) {
        match c {
            Concept::Bot => {}
            Concept::And(xs) => {
                let atoms: Vec<Concept> = xs.iter().map(|x| self.lhs_atom(x)).collect();
                let mut acc = atoms[0].clone();
                for (i, a) in atoms.iter().enumerate().skip(1) {
                    let conj = Concept::and(vec![acc.clone(), a.clone()]);
                    if i + 1 == atoms.len() {
                        self.out.push(Axiom::Sub(conj, target.clone()));
                    } else {
                        let y = self.lhs_atom_of_pair(conj);
                        acc = y;
                    }
                }
            }
            Concept::Exists(r, f) => {
                let a = self.lhs_atom(f);
                self.out.push(Axiom::Sub(Concept::some(r.clone(), a), target.clone()));
            }
            _ => self.out.push(Axiom::Sub(c.clone(), target.clone())),
        }
    }

    fn lhs_atom_of_pair(&mut self, conj: Concept) -> Concept {
        if let Some(x) = self.lhs_memo.get(&conj) {
            return x.clone();
        }
        let y = self.fresh(Origin::Lhs(conj.clone()));
        self.lhs_memo.insert(conj.clone(), y.clone());
        self.out.push(Axiom::Sub(conj, y.clone()));
        y
    }

    fn lhs_atom(&mut self, c: &Concept) -> Concept {
        if atomic(c) {
            return c.clone();
        }
        if let Some(x) = self.lhs_memo.get(c) {
            return x.clone();
        }
        let x = self.fresh(Origin::Lhs(c.clone()));
        self.lhs_memo.insert(c.clone(), x.clone());
        self.lhs_into(c, &x);
        x
    }

    pub(crate) fn axiom(&mut self, a: &Axiom) {
        for a in a.expand() {
            let Axiom::Sub(c, d) = a else { continue };
            if c == Concept::Bot || d == Concept::Top {
                continue;
            }
            if atomic(&c) {
                self.rhs(&c, &d);
            } else if atomic(&d) {
                self.lhs_into(&c, &d);
            } else {
                let y = self.lhs_atom(&c);
                self.rhs(&y, &d);
            }
        }
    }

    /// `Z ⊑ C` for a fresh `Z`, returned.
    pub(crate) fn query_root(&mut self, c: &Concept) -> Concept {
        let z = self.fresh(Origin::Rhs(c.clone()));
        self.rhs(&z, c);
        z
    }

    pub(crate) fn take(&mut self) -> (Vec<Axiom>, OriginMap) {
        (std::mem::take(&mut self.out), std::mem::take(&mut self.origins))
    }
}

/// A prefix for fresh names that no name of `tbox` starts with.
pub(crate) fn fresh_prefix(names: impl Iterator<Item = String>, base: &str) -> String {
    let names: Vec<String> = names.collect();
    let mut p = base.to_string();
    while names.iter().any(|n| n.starts_with(&p)) {
        p.push('_');
    }
    p
}

/// Flattens an EL TBox into the shapes `A⊑B`, `A₁⊓A₂⊑B`, `A⊑∃r.B`, `∃r.A⊑B`.
/// `Bot` is tolerated so rewritten TBoxes can be normalized too.
pub fn normalize_el(tbox: &TBox) -> Result<(TBox, OriginMap)> {
    for a in &tbox.axioms {
        if let Err(e) = el_axiom(a) {
            if !el_with_bot(a) {
                return Err(Error::fragment(FragmentTag::EL, format!("{a}: {e}")));
            }
        }
    }
    let sig = tbox.sig();
    let mut n = Normalizer::new(fresh_prefix(sig.concepts.into_iter(), "_N"));
    tbox.axioms.iter().for_each(|a| n.axiom(a));
    let (axioms, origins) = n.take();
    Ok((TBox { axioms, fragment: Some(FragmentTag::EL) }, origins))
}

fn el_bot_concept(c: &Concept) -> bool {
    match c {
        Concept::Top | Concept::Bot | Concept::Name(_) => true,
        Concept::And(xs) => xs.iter().all(el_bot_concept),
        Concept::Exists(r, d) => !r.inverted && el_bot_concept(d),
        _ => false,
    }
}

pub(crate) fn el_with_bot(a: &Axiom) -> bool {
    match a {
        Axiom::Sub(c, d) | Axiom::Equiv(c, d) => el_bot_concept(c) && el_bot_concept(d),
        Axiom::RSub(..) => false,
    }
}

/// Shape check for normalized axioms, used by tests.
pub fn is_el_normal(a: &Axiom) -> bool {
    let nm = |c: &Concept| matches!(c, Concept::Top | Concept::Name(_) | Concept::Bot);
    let ex = |c: &Concept| matches!(c, Concept::Exists(Role { inverted: false, .. }, f) if nm(f));
    match a {
        Axiom::Sub(Concept::And(xs), d) => xs.len() == 2 && xs.iter().all(nm) && nm(d),
        Axiom::Sub(c, d) => (nm(c) && (nm(d) || ex(d))) || (ex(c) && nm(d)),
        _ => false,
    }
}
