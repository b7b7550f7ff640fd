use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::structure::{build_generating_structure, CanonicalPrefix, GeneratingStructure};
use crate::error::{Error, Result};
use crate::interp::{check_homomorphism, FiniteInterpretation};
use crate::syntax::sexpr::{read_all, Sexp};
use crate::syntax::{Concept, Signature, KB};

/// A conjunctive query over concept and role names; `answer` lists the
/// answer variables in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CQ {
    pub vars: Vec<String>,
    pub answer: Vec<usize>,
    pub concept_atoms: BTreeSet<(String, usize)>,
    pub role_atoms: BTreeSet<(String, usize, usize)>,
}

impl CQ {
    pub fn var(&mut self, name: &str) -> usize {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                self.vars.push(name.to_string());
                self.vars.len() - 1
            }
        }
    }

    /// Number of atoms.
    pub fn size(&self) -> usize {
        self.concept_atoms.len() + self.role_atoms.len()
    }

    pub fn is_boolean(&self) -> bool {
        self.answer.is_empty()
    }

    pub fn sig(&self) -> Signature {
        Signature::new(self.concept_atoms.iter().map(|a| a.0.as_str()), self.role_atoms.iter().map(|a| a.0.as_str()))
    }

    /// The tree-shaped query of an `∃`/`⊓` concept, rooted at answer variable `x0`.
    pub fn from_concept(c: &Concept) -> Result<CQ> {
        fn walk(q: &mut CQ, c: &Concept, x: usize) -> Result<()> {
            match c {
                Concept::Top => Ok(()),
                Concept::Name(a) => {
                    q.concept_atoms.insert((a.clone(), x));
                    Ok(())
                }
                Concept::And(xs) => xs.iter().try_for_each(|d| walk(q, d, x)),
                Concept::Exists(r, d) => {
                    let y = q.var(&format!("x{}", q.vars.len()));
                    let (s, t) = if r.inverted { (y, x) } else { (x, y) };
                    q.role_atoms.insert((r.name.clone(), s, t));
                    walk(q, d, y)
                }
                _ => Err(Error::Input(format!("{c} has no conjunctive-query form"))),
            }
        }
        let mut q = CQ::default();
        let x = q.var("x0");
        q.answer.push(x);
        walk(&mut q, c, x)?;
        Ok(q)
    }

    /// Maximal connected sub-queries; isolated answer variables included.
    pub fn components(&self) -> Vec<CQ> {
        let n = self.vars.len();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            if c[x] != x {
                let r = find(c, c[x]);
                c[x] = r;
            }
            c[x]
        }
        for &(_, x, y) in &self.role_atoms {
            let (a, b) = (find(&mut comp, x), find(&mut comp, y));
            comp[a] = b;
        }
        let mut groups: BTreeMap<usize, CQ> = BTreeMap::new();
        for v in 0..n {
            let root = find(&mut comp, v);
            groups.entry(root).or_default().var(&self.vars[v]);
        }
        let mut out: Vec<CQ> = Vec::new();
        for (root, mut q) in groups {
            for &a in &self.answer {
                if find(&mut comp, a) == root {
                    let v = q.var(&self.vars[a]);
                    q.answer.push(v);
                }
            }
            for (a, x) in &self.concept_atoms {
                if find(&mut comp, *x) == root {
                    let v = q.var(&self.vars[*x]);
                    q.concept_atoms.insert((a.clone(), v));
                }
            }
            for (r, x, y) in &self.role_atoms {
                if find(&mut comp, *x) == root {
                    let (u, v) = (q.var(&self.vars[*x]), q.var(&self.vars[*y]));
                    q.role_atoms.insert((r.clone(), u, v));
                }
            }
            out.push(q);
        }
        out
    }

    /// Variables as elements, atoms as extensions.
    pub fn to_interpretation(&self) -> FiniteInterpretation {
        let mut i = FiniteInterpretation::new();
        for v in &self.vars {
            i.add_elem(v.clone());
        }
        for (a, x) in &self.concept_atoms {
            i.add_label(*x, a.clone());
        }
        for (r, x, y) in &self.role_atoms {
            i.add_edge(r.clone(), *x, *y);
        }
        i
    }
}

impl fmt::Display for CQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ans: Vec<&str> = self.answer.iter().map(|&v| self.vars[v].as_str()).collect();
        write!(f, "(cq ({})", ans.join(" "))?;
        for (a, x) in &self.concept_atoms {
            write!(f, " ({a} {})", self.vars[*x])?;
        }
        for (r, x, y) in &self.role_atoms {
            write!(f, " ({r} {} {})", self.vars[*x], self.vars[*y])?;
        }
        write!(f, ")")
    }
}

fn atom(x: &Sexp) -> Result<&str> {
    x.atom().ok_or_else(|| x.err("expected an identifier"))
}

/// Reads `(cq (ANSWER-VARS...) (NAME v) (ROLE v w) ...)`.
pub fn cq_from(x: &Sexp) -> Result<CQ> {
    let (h, args) = x.head()?;
    if h != "cq" || args.is_empty() {
        return Err(x.err("expected (cq (VARS...) ATOMS...)"));
    }
    let mut q = CQ::default();
    let Sexp::List { items: ans, .. } = &args[0] else { return Err(args[0].err("expected the answer-variable list")) };
    for v in ans {
        let i = q.var(atom(v)?);
        if q.answer.contains(&i) {
            return Err(v.err("repeated answer variable"));
        }
        q.answer.push(i);
    }
    for a in &args[1..] {
        let Sexp::List { items, .. } = a else { return Err(a.err("expected an atom")) };
        let names = items.iter().map(atom).collect::<Result<Vec<_>>>()?;
        match names[..] {
            [c, v] => {
                let v = q.var(v);
                q.concept_atoms.insert((c.to_string(), v));
            }
            [r, u, v] => {
                let (u, v) = (q.var(u), q.var(v));
                q.role_atoms.insert((r.to_string(), u, v));
            }
            _ => return Err(a.err("an atom has one or two arguments")),
        }
    }
    Ok(q)
}

pub fn parse_cq(text: &str) -> Result<CQ> {
    let items = read_all(text)?;
    match &items[..] {
        [x] => cq_from(x),
        _ => Err(Error::Input("expected exactly one (cq ...) form".into())),
    }
}

/// `kb ⊨ q(tuple)`; every tuple is certain over an inconsistent KB.
pub fn certain_answer(kb: &KB, q: &CQ, tuple: &[String]) -> Result<bool> {
    match build_generating_structure(kb) {
        Ok(g) => certain_answer_in(&g, q, tuple),
        Err(Error::Inconsistent) => Ok(true),
        Err(e) => Err(e),
    }
}

/// Certain answers over a prebuilt generating structure. Each connected
/// component is matched separately: those with answer variables into the
/// ABox-anchored unraveling, Boolean ones into it or below any witness.
pub fn certain_answer_in(g: &GeneratingStructure, q: &CQ, tuple: &[String]) -> Result<bool> {
    if tuple.len() != q.answer.len() {
        return Err(Error::Input(format!("query has {} answer variables, tuple has {}", q.answer.len(), tuple.len())));
    }
    if tuple.iter().any(|a| !g.base.individuals.contains_key(a)) {
        return Ok(false);
    }
    // Answer variables bound to the same individual are identified.
    let mut rename: Vec<usize> = (0..q.vars.len()).collect();
    let mut first: BTreeMap<&str, usize> = BTreeMap::new();
    for (k, &v) in q.answer.iter().enumerate() {
        rename[v] = *first.entry(tuple[k].as_str()).or_insert(v);
    }
    let mut merged = CQ { vars: q.vars.clone(), ..CQ::default() };
    let mut bind: BTreeMap<usize, &str> = BTreeMap::new();
    for (k, &v) in q.answer.iter().enumerate() {
        if rename[v] == v {
            merged.answer.push(v);
            bind.insert(v, &tuple[k]);
        }
    }
    merged.concept_atoms = q.concept_atoms.iter().map(|(a, x)| (a.clone(), rename[*x])).collect();
    merged.role_atoms = q.role_atoms.iter().map(|(r, x, y)| (r.clone(), rename[*x], rename[*y])).collect();
    let used: BTreeSet<usize> = merged.answer.iter().copied().chain(merged.concept_atoms.iter().map(|a| a.1)).chain(merged.role_atoms.iter().flat_map(|a| [a.1, a.2])).collect();
    let mut q2 = CQ::default();
    let mut map = BTreeMap::new();
    for &v in &used {
        map.insert(v, q2.var(&merged.vars[v]));
    }
    q2.answer = merged.answer.iter().map(|v| map[v]).collect();
    q2.concept_atoms = merged.concept_atoms.iter().map(|(a, x)| (a.clone(), map[x])).collect();
    q2.role_atoms = merged.role_atoms.iter().map(|(r, x, y)| (r.clone(), map[x], map[y])).collect();
    let bind: BTreeMap<String, &str> = bind.into_iter().map(|(v, a)| (merged.vars[v].clone(), a)).collect();

    let mut prefixes: BTreeMap<usize, CanonicalPrefix> = BTreeMap::new();
    for c in q2.components() {
        let depth = c.size();
        let sig = c.sig();
        let mut src = c.to_interpretation();
        for &v in &c.answer {
            src.set_individual(bind[&c.vars[v]], v);
        }
        if let std::collections::btree_map::Entry::Vacant(e) = prefixes.entry(depth) {
            e.insert(g.unravel(depth)?);
        }
        let anchored = !c.answer.is_empty();
        if check_homomorphism(&src, &prefixes[&depth].interpretation, &sig, anchored)?.is_some() {
            continue;
        }
        if anchored {
            return Ok(false);
        }
        let mut found = false;
        for w in g.witnesses() {
            let p = g.unravel_from(w, depth)?;
            if check_homomorphism(&src, &p.interpretation, &sig, false)?.is_some() {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}
