use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::reasoner::ElReasoner;
use crate::syntax::{detect_fragment, Axiom, Concept, FragmentTag, Role, Signature, TBox};

/// Bound on explored choice states per avoidance-set enumeration.
pub const CHOICE_CAP: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Atom {
    Name(String),
    /// `∃r.G`, `None` standing for `⊤`.
    Ex(String, Option<String>),
}

#[derive(Debug, Clone)]
struct Def {
    full: bool,
    conj: Vec<Atom>,
}

/// The definitions of an acyclic EL TBox with every filler a name.
struct Defs {
    defs: BTreeMap<String, Def>,
    /// `B ↦ {N : B is a told conjunct of N}`.
    told_by: BTreeMap<String, Vec<String>>,
    /// `r ↦ [(N, G')]` for told conjuncts `∃r.G'` of `N`.
    told_ex: BTreeMap<String, Vec<(String, Option<String>)>>,
    reasoner: ElReasoner,
}

impl Defs {
    fn new(t1: &TBox) -> Result<Defs> {
        let mut used = t1.sig().concepts;
        let mut fresh = 0usize;
        let mut defs: BTreeMap<String, Def> = BTreeMap::new();
        let mut extra: Vec<Axiom> = Vec::new();
        fn atoms(c: &Concept, used: &mut BTreeSet<String>, fresh: &mut usize, defs: &mut BTreeMap<String, Def>, extra: &mut Vec<Axiom>) -> Vec<Atom> {
            let mut out = Vec::new();
            for x in c.conjuncts() {
                match x {
                    Concept::Top => {}
                    Concept::Name(n) => out.push(Atom::Name(n.clone())),
                    Concept::Exists(r, f) => {
                        let g = match &**f {
                            Concept::Top => None,
                            Concept::Name(n) => Some(n.clone()),
                            f => {
                                let y = loop {
                                    let y = format!("_D{fresh}");
                                    *fresh += 1;
                                    if used.insert(y.clone()) {
                                        break y;
                                    }
                                };
                                let conj = atoms(f, used, fresh, defs, extra);
                                defs.insert(y.clone(), Def { full: true, conj });
                                extra.push(Axiom::Equiv(Concept::name(y.clone()), f.clone()));
                                Some(y)
                            }
                        };
                        out.push(Atom::Ex(r.name.clone(), g));
                    }
                    _ => unreachable!("EL conjunct"),
                }
            }
            out
        }
        for a in &t1.axioms {
            let (n, c, full) = match a {
                Axiom::Equiv(Concept::Name(n), c) => (n, c, true),
                Axiom::Sub(Concept::Name(n), c) => (n, c, false),
                _ => unreachable!("acyclic shape"),
            };
            let conj = atoms(c, &mut used, &mut fresh, &mut defs, &mut extra);
            defs.insert(n.clone(), Def { full, conj });
        }
        let mut told_by: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut told_ex: BTreeMap<String, Vec<(String, Option<String>)>> = BTreeMap::new();
        for (n, d) in &defs {
            for a in &d.conj {
                match a {
                    Atom::Name(b) => told_by.entry(b.clone()).or_default().push(n.clone()),
                    Atom::Ex(r, g) => told_ex.entry(r.clone()).or_default().push((n.clone(), g.clone())),
                }
            }
        }
        let mut full = t1.clone();
        full.axioms.extend(extra);
        let mut reasoner = ElReasoner::new(&full)?;
        reasoner.classify()?;
        Ok(Defs { defs, told_by, told_ex, reasoner })
    }

    fn entails(&mut self, lhs: &Option<String>, rhs: &Option<String>) -> Result<bool> {
        match (lhs, rhs) {
            (_, None) => Ok(true),
            (None, Some(_)) => Ok(false),
            (Some(l), Some(r)) if l == r => Ok(true),
            (Some(l), Some(r)) => self.reasoner.subsumes(&Concept::name(l.clone()), &Concept::name(r.clone())),
        }
    }

    /// Applies the deterministic rules to a fixpoint.
    fn close(&mut self, s: &mut BTreeSet<Atom>) -> Result<()> {
        let mut todo: Vec<Atom> = s.iter().cloned().collect();
        while let Some(a) = todo.pop() {
            let mut add = Vec::new();
            match &a {
                Atom::Name(b) => {
                    for n in self.told_by.get(b).into_iter().flatten() {
                        add.push(Atom::Name(n.clone()));
                    }
                }
                Atom::Ex(r, g) => {
                    for (n, g2) in self.told_ex.get(r).cloned().unwrap_or_default() {
                        if self.entails(&g2, g)? {
                            add.push(Atom::Ex(r.clone(), g2));
                            add.push(Atom::Name(n));
                        }
                    }
                }
            }
            for x in add {
                if s.insert(x.clone()) {
                    todo.push(x);
                }
            }
        }
        Ok(())
    }

    /// Minimal closed avoidance sets containing `init`.
    fn closures(&mut self, init: BTreeSet<Atom>) -> Result<Vec<BTreeSet<Atom>>> {
        let mut budget = CHOICE_CAP;
        let mut found: Vec<BTreeSet<Atom>> = Vec::new();
        let mut stack = vec![init];
        let mut seen = BTreeSet::new();
        while let Some(mut s) = stack.pop() {
            if budget == 0 {
                return Err(Error::Resource { what: "avoidance-set choices".into(), cap: CHOICE_CAP });
            }
            budget -= 1;
            self.close(&mut s)?;
            if found.iter().any(|f| f.is_subset(&s)) || !seen.insert(s.clone()) {
                continue;
            }
            // Branch on the open definition with fewest conjuncts; one with
            // none cannot be avoided.
            let open = s
                .iter()
                .filter_map(|a| match a {
                    Atom::Name(b) => self.defs.get(b).filter(|d| d.full && !d.conj.iter().any(|c| s.contains(c))),
                    _ => None,
                })
                .min_by_key(|d| d.conj.len())
                .cloned();
            match open {
                None => found.push(s),
                Some(d) => {
                    for c in d.conj {
                        let mut t = s.clone();
                        t.insert(c);
                        stack.push(t);
                    }
                }
            }
        }
        let minimal = found.iter().filter(|s| !found.iter().any(|t| t != *s && t.is_subset(s))).cloned().collect::<BTreeSet<_>>();
        Ok(minimal.into_iter().collect())
    }
}

/// The most specific Σ-concepts not entailing a name under `t1`, as a
/// graph of avoidance states: each node carries its Σ-names and its
/// successors.
pub(crate) struct Encoding {
    states: Vec<BTreeSet<Atom>>,
    pub names: Vec<BTreeSet<String>>,
    pub succ: Vec<Vec<(String, usize)>>,
    /// Root states per name.
    pub roots: BTreeMap<String, Vec<usize>>,
    pub xname: Vec<String>,
}

impl Encoding {
    pub fn build(t1: &TBox, sigma: &Signature, avoid_names: &BTreeSet<String>) -> Result<Encoding> {
            let mut defs = Defs::new(t1)?;
        let mut enc = Encoding { states: Vec::new(), names: Vec::new(), succ: Vec::new(), roots: BTreeMap::new(), xname: Vec::new() };
        let mut index: BTreeMap<BTreeSet<Atom>, usize> = BTreeMap::new();
        let mut memo: BTreeMap<BTreeSet<Atom>, Vec<usize>> = BTreeMap::new();
        let mut todo: Vec<usize> = Vec::new();
        let mut intern = |s: BTreeSet<Atom>, enc: &mut Encoding, todo: &mut Vec<usize>| -> usize {
            if let Some(&i) = index.get(&s) {
                return i;
            }
            let i = enc.states.len();
            index.insert(s.clone(), i);
            enc.states.push(s);
            enc.names.push(BTreeSet::new());
            enc.succ.push(Vec::new());
            todo.push(i);
            i
        };
        for a in &sigma.concepts {
            let sets = defs.closures(BTreeSet::from([Atom::Name(a.clone())]))?;
            let ids = sets.into_iter().map(|s| intern(s, &mut enc, &mut todo)).collect();
            enc.roots.insert(a.clone(), ids);
        }
        while let Some(i) = todo.pop() {
            let s = enc.states[i].clone();
            enc.names[i] = sigma.concepts.iter().filter(|n| !s.contains(&Atom::Name((*n).clone()))).cloned().collect();
            for r in &sigma.roles {
                let mut init = BTreeSet::new();
                let mut blocked = false;
                for a in &s {
                    if let Atom::Ex(r2, g) = a {
                        if r2 == r {
                            match g {
                                None => blocked = true,
                                Some(g) => {
                                    init.insert(Atom::Name(g.clone()));
                                }
                            }
                        }
                    }
                }
                if blocked {
                    continue;
                }
                let sets = match memo.get(&init) {
                    Some(v) => v.clone(),
                    None => {
                        let sets = defs.closures(init.clone())?;
                        let ids: Vec<usize> = sets.into_iter().map(|s| intern(s, &mut enc, &mut todo)).collect();
                        memo.insert(init, ids.clone());
                        ids
                    }
                };
                for j in sets {
                    enc.succ[i].push((r.clone(), j));
                }
            }
        }
        let mut k = 0;
        for _ in 0..enc.states.len() {
            let x = loop {
                let x = format!("_X{k}");
                k += 1;
                if !avoid_names.contains(&x) {
                    break x;
                }
            };
            enc.xname.push(x);
        }
        Ok(enc)
    }

    pub fn axioms(&self) -> Vec<Axiom> {
        (0..self.states.len())
            .map(|i| {
                let mut parts: Vec<Concept> = self.names[i].iter().map(|n| Concept::name(n.clone())).collect();
                for (r, j) in &self.succ[i] {
                    parts.push(Concept::some(Role::new(r.clone()), Concept::name(self.xname[*j].clone())));
                }
                Axiom::sub(Concept::name(self.xname[i].clone()), Concept::and(parts))
            })
            .collect()
    }

    /// Finite unfolding of state `i` to the given depth.
    pub fn unfold(&self, i: usize, depth: usize) -> Concept {
        let mut parts: Vec<Concept> = self.names[i].iter().map(|n| Concept::name(n.clone())).collect();
        if depth > 0 {
            for (r, j) in &self.succ[i] {
                parts.push(Concept::some(Role::new(r.clone()), self.unfold(*j, depth - 1)));
            }
        }
        Concept::and(parts)
    }
}

pub(crate) fn require_acyclic(t1: &TBox) -> Result<()> {
    if detect_fragment(t1) != FragmentTag::AcyclicEL {
        return Err(Error::Unsupported("right-hand witnesses need t1 to be an acyclic EL TBox".into()));
    }
    Ok(())
}

/// `t2` extended with the encoding, classified, with the states entailing
/// each root name.
pub(crate) fn rhs_states(t1: &TBox, t2: &TBox, sigma: &Signature) -> Result<(Encoding, BTreeMap<String, Vec<usize>>)> {
    require_acyclic(t1)?;
    super::lhs::require_el(t2, "t2")?;
    let avoid = t1.sig().concepts.union(&t2.sig().concepts).cloned().collect();
    let enc = Encoding::build(t1, sigma, &avoid)?;
    let mut ext = t2.clone();
    ext.axioms.extend(enc.axioms());
    let mut r = ElReasoner::new(&ext)?;
    r.classify()?;
    let mut hits = BTreeMap::new();
    for (a, roots) in &enc.roots {
        let mut good = Vec::new();
        for &i in roots {
            let x = r.name_id(&enc.xname[i]).expect("encoded state");
            if r.holds_at(x, &Concept::name(a.clone())) {
                good.push(i);
            }
        }
        if !good.is_empty() {
            hits.insert(a.clone(), good);
        }
    }
    Ok((enc, hits))
}

/// Names `A ∈ Σ` with some Σ-concept `C`, `t2 ⊨ C ⊑ A` and `t1 ⊭ C ⊑ A`.
pub fn cwtn_rhs(t1: &TBox, t2: &TBox, sigma: &Signature) -> Result<BTreeSet<String>> {
    Ok(rhs_states(t1, t2, sigma)?.1.into_keys().collect())
}
