use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::syntax::{el_with_bot, fresh_prefix, Axiom, Concept, FragmentTag, Normalizer, TBox};

pub const TOP: u32 = 0;
pub const BOT: u32 = 1;
pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, Default)]
pub(crate) struct Ctx {
    pub(crate) set: HashSet<u32>,
    pub(crate) order: Vec<u32>,
    pub(crate) succ: Vec<(u32, u32)>,
    succ_set: HashSet<(u32, u32)>,
    preds: Vec<(u32, u32)>,
}

enum Job {
    Add(u32, u32),
    Edge(u32, u32, u32),
}

/// EL completion over name contexts. Every name gets one context; edges
/// `(role, filler)` point at the filler's context.
#[derive(Debug, Clone)]
pub struct ElReasoner {
    pub(crate) names: Vec<String>,
    name_id: HashMap<String, u32>,
    pub(crate) roles: Vec<String>,
    role_id: HashMap<String, u32>,
    fresh: Vec<bool>,
    told: Vec<Vec<u32>>,
    conj: Vec<Vec<(u32, u32)>>,
    ex_rhs: Vec<Vec<(u32, u32)>>,
    ex_lhs: HashMap<(u32, u32), Vec<u32>>,
    pub(crate) ctx: Vec<Option<Ctx>>,
    frozen: usize,
    frozen_roles: usize,
    query_prefix: String,
    budget: usize,
    steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Subsumers {
    pub supers: BTreeSet<String>,
    pub successors: BTreeSet<(String, String)>,
}

pub type SubsumptionMap = BTreeMap<String, Subsumers>;

impl ElReasoner {
    pub fn new(tbox: &TBox) -> Result<ElReasoner> {
        ElReasoner::with_budget(tbox, DEFAULT_BUDGET)
    }

    pub fn with_budget(tbox: &TBox, budget: usize) -> Result<ElReasoner> {
        for a in &tbox.axioms {
            if !el_with_bot(a) {
                return Err(Error::fragment(FragmentTag::EL, format!("{a}")));
            }
        }
        let sig = tbox.sig();
        let mut r = ElReasoner {
            names: Vec::new(),
            name_id: HashMap::new(),
            roles: Vec::new(),
            role_id: HashMap::new(),
            fresh: Vec::new(),
            told: Vec::new(),
            conj: Vec::new(),
            ex_rhs: Vec::new(),
            ex_lhs: HashMap::new(),
            ctx: Vec::new(),
            frozen: 0,
            frozen_roles: 0,
            query_prefix: fresh_prefix(sig.concepts.iter().cloned(), "_Q"),
            budget,
            steps: 0,
        };
        r.intern("Top", false);
        r.intern("Bot", false);
        for n in &sig.concepts {
            r.intern(n, false);
        }
        let mut norm = Normalizer::new(fresh_prefix(sig.concepts.iter().cloned(), "_N"));
        tbox.axioms.iter().for_each(|a| norm.axiom(a));
        let (axioms, _) = norm.take();
        for a in &axioms {
            r.index(a);
        }
        Ok(r)
    }

    fn intern(&mut self, n: &str, fresh: bool) -> u32 {
        if let Some(&i) = self.name_id.get(n) {
            return i;
        }
        let i = self.names.len() as u32;
        self.names.push(n.to_string());
        self.name_id.insert(n.to_string(), i);
        self.fresh.push(fresh);
        self.told.push(Vec::new());
        self.conj.push(Vec::new());
        self.ex_rhs.push(Vec::new());
        self.ctx.push(None);
        i
    }

    fn atom(&mut self, c: &Concept) -> u32 {
        match c {
            Concept::Top => TOP,
            Concept::Bot => BOT,
            Concept::Name(n) => {
                let fresh = !self.name_id.contains_key(n);
                self.intern(n, fresh)
            }
            _ => unreachable!("normalized axioms only hold atoms here"),
        }
    }

    fn role(&mut self, n: &str) -> u32 {
        if let Some(&i) = self.role_id.get(n) {
            return i;
        }
        let i = self.roles.len() as u32;
        self.roles.push(n.to_string());
        self.role_id.insert(n.to_string(), i);
        i
    }

    fn index(&mut self, a: &Axiom) {
        let Axiom::Sub(c, d) = a else { return };
        match (c, d) {
            (Concept::And(xs), d) => {
                let (x, y) = (self.atom(&xs[0]), self.atom(&xs[1]));
                let b = self.atom(d);
                self.conj[x as usize].push((y, b));
                self.conj[y as usize].push((x, b));
            }
            (Concept::Exists(r, f), d) => {
                let (r, f, b) = (self.role(&r.name), self.atom(f), self.atom(d));
                self.ex_lhs.entry((r, f)).or_default().push(b);
            }
            (c, Concept::Exists(r, f)) => {
                let (a, r, f) = (self.atom(c), self.role(&r.name), self.atom(f));
                self.ex_rhs[a as usize].push((r, f));
            }
            (c, d) => {
                let (a, b) = (self.atom(c), self.atom(d));
                self.told[a as usize].push(b);
            }
        }
    }

    fn init_ctx(&mut self, x: u32, q: &mut VecDeque<Job>) {
        if self.ctx[x as usize].is_none() {
            self.ctx[x as usize] = Some(Ctx::default());
            q.push_back(Job::Add(x, x));
            q.push_back(Job::Add(x, TOP));
        }
    }

    fn run(&mut self, q: &mut VecDeque<Job>) -> Result<()> {
        while let Some(job) = q.pop_front() {
            self.steps += 1;
            if self.steps > self.budget {
                return Err(Error::Resource { what: "EL saturation steps".into(), cap: self.budget });
            }
            match job {
                Job::Add(x, a) => {
                    let c = self.ctx[x as usize].as_mut().unwrap();
                    if !c.set.insert(a) {
                        continue;
                    }
                    c.order.push(a);
                    let c = self.ctx[x as usize].as_ref().unwrap();
                    for &b in &self.told[a as usize] {
                        q.push_back(Job::Add(x, b));
                    }
                    for &(o, b) in &self.conj[a as usize] {
                        if c.set.contains(&o) {
                            q.push_back(Job::Add(x, b));
                        }
                    }
                    for &(r, f) in &self.ex_rhs[a as usize] {
                        q.push_back(Job::Edge(x, r, f));
                    }
                    for &(p, r) in &c.preds {
                        if let Some(bs) = self.ex_lhs.get(&(r, a)) {
                            bs.iter().for_each(|&b| q.push_back(Job::Add(p, b)));
                        }
                        if a == BOT {
                            q.push_back(Job::Add(p, BOT));
                        }
                    }
                }
                Job::Edge(x, r, y) => {
                    let c = self.ctx[x as usize].as_mut().unwrap();
                    if !c.succ_set.insert((r, y)) {
                        continue;
                    }
                    c.succ.push((r, y));
                    self.init_ctx(y, q);
                    let frozen = (y as usize) < self.frozen;
                    let cy = self.ctx[y as usize].as_mut().unwrap();
                    if !frozen {
                        cy.preds.push((x, r));
                    }
                    let cy = self.ctx[y as usize].as_ref().unwrap();
                    for a in &cy.order {
                        if let Some(bs) = self.ex_lhs.get(&(r, *a)) {
                            bs.iter().for_each(|&b| q.push_back(Job::Add(x, b)));
                        }
                    }
                    if cy.set.contains(&BOT) {
                        q.push_back(Job::Add(x, BOT));
                    }
                }
            }
        }
        Ok(())
    }

    /// Saturates the contexts of every name known to the TBox.
    pub fn classify(&mut self) -> Result<()> {
        let mut q = VecDeque::new();
        for x in 0..self.names.len() as u32 {
            self.init_ctx(x, &mut q);
        }
        self.run(&mut q)?;
        if self.frozen == 0 {
            self.frozen = self.names.len();
            self.frozen_roles = self.roles.len();
        }
        Ok(())
    }

    pub fn name_id(&self, n: &str) -> Option<u32> {
        self.name_id.get(n).copied()
    }

    pub fn role_name(&self, r: u32) -> &str {
        &self.roles[r as usize]
    }

    pub fn name(&self, x: u32) -> &str {
        &self.names[x as usize]
    }

    pub(crate) fn is_user_name(&self, x: u32) -> bool {
        x > BOT && !self.fresh[x as usize]
    }

    pub(crate) fn context(&self, x: u32) -> &Ctx {
        self.ctx[x as usize].as_ref().expect("saturated context")
    }

    pub fn is_unsat(&self, x: u32) -> bool {
        self.context(x).set.contains(&BOT)
    }

    /// Whether the saturated element `x` satisfies the EL(⊥) concept `d`.
    pub fn holds_at(&self, x: u32, d: &Concept) -> bool {
        let c = self.context(x);
        if c.set.contains(&BOT) {
            return true;
        }
        match d {
            Concept::Top => true,
            Concept::Bot => false,
            Concept::Name(n) => self.name_id.get(n).is_some_and(|i| c.set.contains(i)),
            Concept::And(xs) => xs.iter().all(|e| self.holds_at(x, e)),
            Concept::Exists(r, f) => match self.role_id.get(&r.name) {
                Some(&ri) if !r.inverted => c.succ.iter().any(|&(s, y)| s == ri && self.holds_at(y, f)),
                _ => false,
            },
            _ => false,
        }
    }

    /// Runs `f` on a temporary context `Z` with `Z ⊑ c`, then discards it.
    pub fn with_query<T>(&mut self, c: &Concept, f: impl FnOnce(&ElReasoner, u32) -> T) -> Result<T> {
        if !crate::syntax::el_with_bot(&Axiom::Sub(Concept::Top, c.clone())) {
            return Err(Error::fragment(FragmentTag::EL, format!("query concept {c}")));
        }
        if self.frozen == 0 {
            self.classify()?;
        }
        for n in &c.sig().concepts {
            self.intern(n, false);
        }
        let mut norm = Normalizer::new(self.query_prefix.clone());
        let z = norm.query_root(c);
        let (axioms, _) = norm.take();
        let z = self.atom(&z);
        for a in &axioms {
            self.index(a);
        }
        let mut q = VecDeque::new();
        self.init_ctx(z, &mut q);
        let steps = self.steps;
        let res = self.run(&mut q);
        let out = res.map(|_| f(self, z));
        self.rollback();
        self.steps = steps;
        out
    }

    fn rollback(&mut self) {
        for n in self.names.drain(self.frozen..) {
            self.name_id.remove(&n);
        }
        self.fresh.truncate(self.frozen);
        self.told.truncate(self.frozen);
        self.conj.truncate(self.frozen);
        self.ex_rhs.truncate(self.frozen);
        self.ctx.truncate(self.frozen);
        for r in self.roles.drain(self.frozen_roles..) {
            self.role_id.remove(&r);
        }
    }

    pub fn subsumes(&mut self, lhs: &Concept, rhs: &Concept) -> Result<bool> {
        if let (Concept::Name(a), Concept::Name(b)) = (lhs, rhs) {
            if self.frozen > 0 {
                if let (Some(&x), Some(&y)) = (self.name_id.get(a), self.name_id.get(b)) {
                    if (x as usize) < self.frozen {
                        let c = self.context(x);
                        return Ok(c.set.contains(&y) || c.set.contains(&BOT));
                    }
                }
            }
        }
        if !crate::syntax::el_with_bot(&Axiom::Sub(Concept::Top, rhs.clone())) {
            return Err(Error::fragment(FragmentTag::EL, format!("query concept {rhs}")));
        }
        self.with_query(lhs, |r, z| r.holds_at(z, rhs))
    }

    /// User names in the saturated set of `x` (no `Top`, no fresh names).
    pub fn labels(&self, x: u32) -> BTreeSet<String> {
        self.context(x).order.iter().filter(|&&a| self.is_user_name(a)).map(|&a| self.names[a as usize].clone()).collect()
    }

    /// Contexts reachable from `root` along completion edges, root first.
    pub fn reachable(&self, root: u32) -> Vec<u32> {
        let mut seen = HashSet::from([root]);
        let mut out = vec![root];
        let mut i = 0;
        while i < out.len() {
            for &(_, y) in &self.context(out[i]).succ {
                if seen.insert(y) {
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    pub fn subsumption_map(&self) -> SubsumptionMap {
        let mut m = SubsumptionMap::new();
        for x in 0..self.frozen as u32 {
            if !self.is_user_name(x) || self.ctx[x as usize].is_none() {
                continue;
            }
            let c = self.context(x);
            let mut supers = self.labels(x);
            supers.insert("Top".into());
            if c.set.contains(&BOT) {
                supers.insert("Bot".into());
            }
            let mut successors = BTreeSet::new();
            for &(r, y) in &c.succ {
                for b in self.labels(y) {
                    successors.insert((self.roles[r as usize].clone(), b));
                }
            }
            m.insert(self.names[x as usize].clone(), Subsumers { supers, successors });
        }
        m
    }
}

/// `T ⊨ lhs ⊑ rhs` for EL (⊥ tolerated).
pub fn el_subsumes(tbox: &TBox, lhs: &Concept, rhs: &Concept) -> Result<bool> {
    ElReasoner::new(tbox)?.subsumes(lhs, rhs)
}

pub fn el_classify(tbox: &TBox) -> Result<SubsumptionMap> {
    let mut r = ElReasoner::new(tbox)?;
    r.classify()?;
    Ok(r.subsumption_map())
}
