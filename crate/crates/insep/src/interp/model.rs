use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::sexpr::{read_all, Sexp};
use crate::syntax::{Axiom, Concept, Role, Signature};

/// A finite interpretation with named elements and distinguished individuals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FiniteInterpretation {
    pub elems: Vec<String>,
    pub concept_ext: BTreeMap<String, BTreeSet<usize>>,
    pub role_ext: BTreeMap<String, BTreeSet<(usize, usize)>>,
    pub individuals: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Assertion {
    Concept(String, String),
    Role(String, String, String),
}

impl FiniteInterpretation {
    pub fn new() -> FiniteInterpretation {
        FiniteInterpretation::default()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn add_elem(&mut self, id: impl Into<String>) -> usize {
        self.elems.push(id.into());
        self.elems.len() - 1
    }

    pub fn elem(&self, id: &str) -> Option<usize> {
        self.elems.iter().position(|e| e == id)
    }

    pub fn add_label(&mut self, e: usize, a: impl Into<String>) {
        self.concept_ext.entry(a.into()).or_default().insert(e);
    }

    pub fn add_edge(&mut self, r: impl Into<String>, x: usize, y: usize) {
        self.role_ext.entry(r.into()).or_default().insert((x, y));
    }

    pub fn set_individual(&mut self, a: impl Into<String>, e: usize) {
        self.individuals.insert(a.into(), e);
    }

    pub fn labels(&self, e: usize) -> BTreeSet<&str> {
        self.concept_ext.iter().filter(|(_, s)| s.contains(&e)).map(|(a, _)| a.as_str()).collect()
    }

    pub fn has_label(&self, e: usize, a: &str) -> bool {
        self.concept_ext.get(a).is_some_and(|s| s.contains(&e))
    }

    pub fn has_edge(&self, r: &str, x: usize, y: usize) -> bool {
        self.role_ext.get(r).is_some_and(|s| s.contains(&(x, y)))
    }

    /// Outgoing edges `(role, target)` per element over roles in `roles`.
    pub fn out_edges(&self, roles: Option<&BTreeSet<String>>) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.len()];
        for (ri, (r, pairs)) in self.role_ext.iter().enumerate() {
            if roles.is_some_and(|s| !s.contains(r)) {
                continue;
            }
            for &(x, y) in pairs {
                out[x].push((ri, y));
            }
        }
        out
    }

    pub fn sig(&self) -> Signature {
        Signature {
            concepts: self.concept_ext.keys().cloned().collect(),
            roles: self.role_ext.keys().cloned().collect(),
        }
    }

    /// Restriction to `sig` (elements and individuals kept).
    pub fn reduct(&self, sig: &Signature) -> FiniteInterpretation {
        let mut i = self.clone();
        i.concept_ext.retain(|a, _| sig.has_concept(a));
        i.role_ext.retain(|r, _| sig.has_role(r));
        i
    }

    fn role_pairs(&self, r: &Role) -> Vec<(usize, usize)> {
        let pairs = self.role_ext.get(&r.name).into_iter().flatten();
        if r.inverted {
            pairs.map(|&(x, y)| (y, x)).collect()
        } else {
            pairs.copied().collect()
        }
    }

    /// Extension of a concept as a membership vector.
    pub fn eval(&self, c: &Concept) -> Vec<bool> {
        let n = self.len();
        match c {
            Concept::Top => vec![true; n],
            Concept::Bot => vec![false; n],
            Concept::Name(a) => {
                let mut v = vec![false; n];
                for &e in self.concept_ext.get(a).into_iter().flatten() {
                    v[e] = true;
                }
                v
            }
            Concept::Not(d) => self.eval(d).into_iter().map(|b| !b).collect(),
            Concept::And(xs) => xs.iter().fold(vec![true; n], |acc, x| acc.iter().zip(self.eval(x)).map(|(a, b)| *a && b).collect()),
            Concept::Or(xs) => xs.iter().fold(vec![false; n], |acc, x| acc.iter().zip(self.eval(x)).map(|(a, b)| *a || b).collect()),
            Concept::Exists(r, d) => {
                let inner = self.eval(d);
                let mut v = vec![false; n];
                for (x, y) in self.role_pairs(r) {
                    if inner[y] {
                        v[x] = true;
                    }
                }
                v
            }
            Concept::Forall(r, d) => {
                let inner = self.eval(d);
                let mut v = vec![true; n];
                for (x, y) in self.role_pairs(r) {
                    if !inner[y] {
                        v[x] = false;
                    }
                }
                v
            }
        }
    }

    pub fn satisfies_axiom(&self, a: &Axiom) -> bool {
        match a {
            Axiom::Sub(c, d) => self.eval(c).iter().zip(self.eval(d)).all(|(x, y)| !*x || y),
            Axiom::Equiv(c, d) => self.eval(c) == self.eval(d),
            Axiom::RSub(r, s) => {
                let sup: BTreeSet<(usize, usize)> = self.role_pairs(s).into_iter().collect();
                self.role_pairs(r).iter().all(|p| sup.contains(p))
            }
        }
    }

    pub fn satisfies_assertion(&self, a: &Assertion) -> bool {
        match a {
            Assertion::Concept(c, x) => self.individuals.get(x).is_some_and(|&e| self.has_label(e, c)),
            Assertion::Role(r, x, y) => match (self.individuals.get(x), self.individuals.get(y)) {
                (Some(&ex), Some(&ey)) => self.has_edge(r, ex, ey),
                _ => false,
            },
        }
    }

    /// Checks that ids are in range and individuals are injective.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        let bad = self.concept_ext.values().flatten().any(|&e| e >= n)
            || self.role_ext.values().flatten().any(|&(x, y)| x >= n || y >= n)
            || self.individuals.values().any(|&e| e >= n);
        if bad {
            return Err(Error::Input("element id out of range".into()));
        }
        let distinct: BTreeSet<usize> = self.individuals.values().copied().collect();
        if distinct.len() != self.individuals.len() {
            return Err(Error::Input("two individuals denote the same element".into()));
        }
        Ok(())
    }
}

/// Either kind of item an interpretation can satisfy.
pub enum Item<'a> {
    Axiom(&'a Axiom),
    Assertion(&'a Assertion),
}

pub fn satisfies(i: &FiniteInterpretation, item: Item<'_>) -> bool {
    match item {
        Item::Axiom(a) => i.satisfies_axiom(a),
        Item::Assertion(a) => i.satisfies_assertion(a),
    }
}

impl fmt::Display for FiniteInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.elems {
            writeln!(f, "(elem {e})")?;
        }
        for (a, s) in &self.concept_ext {
            for &e in s {
                writeln!(f, "(in {} {a})", self.elems[e])?;
            }
        }
        for (r, s) in &self.role_ext {
            for &(x, y) in s {
                writeln!(f, "(edge {r} {} {})", self.elems[x], self.elems[y])?;
            }
        }
        for (a, &e) in &self.individuals {
            writeln!(f, "(ind {a} {})", self.elems[e])?;
        }
        Ok(())
    }
}

fn atom(x: &Sexp) -> Result<&str> {
    x.atom().ok_or_else(|| x.err("expected an identifier"))
}

/// Parses `(elem ID)`, `(in ID NAME)`, `(edge NAME ID ID)` and `(ind NAME ID)`
/// items; other items are returned untouched for the caller.
pub fn parse_interpretation_items(text: &str) -> Result<(FiniteInterpretation, Vec<Sexp>)> {
    let mut i = FiniteInterpretation::new();
    let mut ids: BTreeMap<String, usize> = BTreeMap::new();
    let mut rest = Vec::new();
    let items = read_all(text)?;
    for x in &items {
        if let Ok(("elem", args)) = x.head() {
            if args.len() != 1 {
                return Err(x.err("'elem' takes one argument"));
            }
            let id = atom(&args[0])?;
            if ids.contains_key(id) {
                return Err(x.err(format!("duplicate element '{id}'")));
            }
            ids.insert(id.to_string(), i.add_elem(id));
        }
    }
    let look = |x: &Sexp| -> Result<usize> {
        let id = atom(x)?;
        ids.get(id).copied().ok_or_else(|| x.err(format!("undeclared element '{id}'")))
    };
    for x in items {
        let (h, args) = x.head()?;
        match (h, args.len()) {
            ("elem", _) => {}
            ("in", 2) => {
                let e = look(&args[0])?;
                i.add_label(e, atom(&args[1])?);
            }
            ("edge", 3) => {
                let (a, b) = (look(&args[1])?, look(&args[2])?);
                i.add_edge(atom(&args[0])?, a, b);
            }
            ("ind", 2) => {
                let e = look(&args[1])?;
                let name = atom(&args[0])?;
                if i.individuals.insert(name.to_string(), e).is_some() {
                    return Err(x.err(format!("duplicate individual '{name}'")));
                }
            }
            ("in" | "edge" | "ind", n) => return Err(x.err(format!("'{h}' has wrong arity {n}"))),
            _ => rest.push(x),
        }
    }
    i.validate()?;
    Ok((i, rest))
}

pub fn parse_interpretation(text: &str) -> Result<FiniteInterpretation> {
    let (i, rest) = parse_interpretation_items(text)?;
    if let Some(x) = rest.first() {
        let (h, _) = x.head()?;
        return Err(x.err(format!("unknown interpretation item '{h}'")));
    }
    Ok(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_axiom, parse_concept};

    #[test]
    fn vacuous_and_full() {
        let mut i = FiniteInterpretation::new();
        let d = i.add_elem("d");
        assert!(i.satisfies_axiom(&parse_axiom("(sub A (some r Bot))").unwrap()));
        i.add_label(d, "A");
        assert!(i.satisfies_axiom(&parse_axiom("(sub Top A)").unwrap()));
        assert!(!i.satisfies_axiom(&parse_axiom("(sub A (some s Top))").unwrap()));
    }

    #[test]
    fn inverse_and_forall() {
        let i = parse_interpretation("(elem a) (elem b) (edge r a b) (in b B) (ind x a)").unwrap();
        assert_eq!(i.eval(&parse_concept("(some (inv r) Top)").unwrap()), vec![false, true]);
        assert_eq!(i.eval(&parse_concept("(all r B)").unwrap()), vec![true, true]);
        assert!(!i.satisfies_axiom(&parse_axiom("(rsub r (inv s))").unwrap()));
        assert!(!i.satisfies_assertion(&Assertion::Role("r".into(), "x".into(), "x".into())));
    }

    #[test]
    fn round_trip() {
        let text = "(elem a) (elem b) (in a A) (edge r a b) (ind c a)";
        let i = parse_interpretation(text).unwrap();
        assert_eq!(parse_interpretation(&i.to_string()).unwrap(), i);
        assert!(parse_interpretation("(elem a) (in b A)").is_err());
        assert!(parse_interpretation("(elem a) (elem b) (ind c a) (ind d a)").is_err());
    }
}
