use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::model::FiniteInterpretation;
use crate::syntax::{Concept, Role, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    Simulation,
    Bisimulation,
    Homomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationWitness {
    pub pairs: BTreeSet<(usize, usize)>,
    pub kind: RelationKind,
}

/// Why a pair left the relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    Alive,
    /// Left element has the concept, right one lacks it.
    Label(usize),
    /// Right element has the concept, left one lacks it (bisimulation only).
    LabelBack(usize),
    /// Left successor along the role with no surviving match.
    Zig(usize, usize),
    /// Right successor along the role with no surviving match.
    Zag(usize, usize),
}

/// Σ-restricted view of an interpretation: sorted label ids and edges.
pub(crate) struct View {
    pub labels: Vec<Vec<usize>>,
    pub out: Vec<Vec<(usize, usize)>>,
    pub inn: Vec<Vec<(usize, usize)>>,
}

pub(crate) struct Vocab {
    pub concepts: Vec<String>,
    pub roles: Vec<String>,
    cid: HashMap<String, usize>,
    rid: HashMap<String, usize>,
}

impl Vocab {
    pub fn new(sig: &Signature) -> Vocab {
        let concepts: Vec<String> = sig.concepts.iter().cloned().collect();
        let roles: Vec<String> = sig.roles.iter().cloned().collect();
        let cid = concepts.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let rid = roles.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        Vocab { concepts, roles, cid, rid }
    }

    pub fn view(&self, i: &FiniteInterpretation) -> View {
        let n = i.len();
        let mut labels = vec![Vec::new(); n];
        for (a, s) in &i.concept_ext {
            if let Some(&c) = self.cid.get(a) {
                for &e in s {
                    labels[e].push(c);
                }
            }
        }
        labels.iter_mut().for_each(|l| l.sort_unstable());
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (r, s) in &i.role_ext {
            if let Some(&ri) = self.rid.get(r) {
                for &(x, y) in s {
                    out[x].push((ri, y));
                    inn[y].push((ri, x));
                }
            }
        }
        View { labels, out, inn }
    }
}

fn subset(a: &[usize], b: &[usize]) -> Option<usize> {
    a.iter().copied().find(|x| b.binary_search(x).is_err())
}

/// The greatest Σ-(bi)simulation between two interpretations, with the
/// round and reason at which every excluded pair was removed.
pub struct SimTable {
    pub n1: usize,
    pub n2: usize,
    pub bisim: bool,
    alive: Vec<bool>,
    pub rank: Vec<u32>,
    pub reason: Vec<Reason>,
    pub(crate) vocab: Vocab,
    pub(crate) v1: View,
    pub(crate) v2: View,
}

impl SimTable {
    pub fn compute(src: &FiniteInterpretation, dst: &FiniteInterpretation, sig: &Signature, bisim: bool) -> SimTable {
        let vocab = Vocab::new(sig);
        let (v1, v2) = (vocab.view(src), vocab.view(dst));
        let (n1, n2) = (src.len(), dst.len());
        let mut t = SimTable {
            n1,
            n2,
            bisim,
            alive: vec![true; n1 * n2],
            rank: vec![0; n1 * n2],
            reason: vec![Reason::Alive; n1 * n2],
            vocab,
            v1,
            v2,
        };
        let mut frontier = Vec::new();
        for x in 0..n1 {
            for y in 0..n2 {
                let why = match subset(&t.v1.labels[x], &t.v2.labels[y]) {
                    Some(a) => Some(Reason::Label(a)),
                    None if bisim => subset(&t.v2.labels[y], &t.v1.labels[x]).map(Reason::LabelBack),
                    None => None,
                };
                if let Some(why) = why {
                    let k = x * n2 + y;
                    t.alive[k] = false;
                    t.reason[k] = why;
                    frontier.push((x, y));
                }
            }
        }
        let mut candidates: Vec<(usize, usize)> = (0..n1).flat_map(|x| (0..n2).map(move |y| (x, y))).collect();
        let mut round = 1u32;
        loop {
            let mut dead = Vec::new();
            for &(x, y) in &candidates {
                if !t.alive[x * n2 + y] {
                    continue;
                }
                if let Some(why) = t.violation(x, y) {
                    dead.push((x, y, why));
                }
            }
            if dead.is_empty() {
                break;
            }
            let mut next = BTreeSet::new();
            for &(x, y, why) in &dead {
                let k = x * n2 + y;
                t.alive[k] = false;
                t.rank[k] = round;
                t.reason[k] = why;
            }
            for &(x, y, _) in &dead {
                for &(r, p) in &t.v1.inn[x] {
                    for &(s, q) in &t.v2.inn[y] {
                        if r == s && t.alive[p * n2 + q] {
                            next.insert((p, q));
                        }
                    }
                }
            }
            candidates = next.into_iter().collect();
            frontier.clear();
            round += 1;
        }
        t
    }

    fn violation(&self, x: usize, y: usize) -> Option<Reason> {
        let n2 = self.n2;
        for &(r, x2) in &self.v1.out[x] {
            if !self.v2.out[y].iter().any(|&(s, y2)| s == r && self.alive[x2 * n2 + y2]) {
                return Some(Reason::Zig(r, x2));
            }
        }
        if self.bisim {
            for &(s, y2) in &self.v2.out[y] {
                if !self.v1.out[x].iter().any(|&(r, x2)| r == s && self.alive[x2 * n2 + y2]) {
                    return Some(Reason::Zag(s, y2));
                }
            }
        }
        None
    }

    pub fn alive(&self, x: usize, y: usize) -> bool {
        self.alive[x * self.n2 + y]
    }

    pub fn pairs(&self) -> BTreeSet<(usize, usize)> {
        (0..self.n1).flat_map(|x| (0..self.n2).map(move |y| (x, y))).filter(|&(x, y)| self.alive(x, y)).collect()
    }

    pub fn kind(&self) -> RelationKind {
        if self.bisim {
            RelationKind::Bisimulation
        } else {
            RelationKind::Simulation
        }
    }

    /// A concept true at `x` and false at `y` for an excluded pair; EL for
    /// simulations. `cap` bounds the number of constructed nodes; the flag
    /// reports truncation.
    pub fn distinguishing(&self, x: usize, y: usize, cap: usize) -> Option<(Concept, bool)> {
        if self.alive(x, y) {
            return None;
        }
        let mut memo = BTreeMap::new();
        let mut budget = cap;
        let c = self.dist(x, y, &mut memo, &mut budget);
        Some((c, budget == 0))
    }

    fn dist(&self, x: usize, y: usize, memo: &mut BTreeMap<(usize, usize), Concept>, budget: &mut usize) -> Concept {
        if let Some(c) = memo.get(&(x, y)) {
            return c.clone();
        }
        if *budget == 0 {
            return Concept::Top;
        }
        *budget -= 1;
        let k = x * self.n2 + y;
        let c = match self.reason[k] {
            Reason::Alive => Concept::Top,
            Reason::Label(a) => Concept::Name(self.vocab.concepts[a].clone()),
            Reason::LabelBack(a) => Concept::not(Concept::Name(self.vocab.concepts[a].clone())),
            Reason::Zig(r, x2) => {
                let parts: Vec<Concept> = self.v2.out[y]
                    .iter()
                    .filter(|&&(s, _)| s == r)
                    .map(|&(_, y2)| self.dist(x2, y2, memo, budget))
                    .collect();
                Concept::some(Role::new(self.vocab.roles[r].clone()), Concept::and(parts))
            }
            Reason::Zag(s, y2) => {
                let parts: Vec<Concept> = self.v1.out[x]
                    .iter()
                    .filter(|&&(r, _)| r == s)
                    .map(|&(_, x2)| self.dist(x2, y2, memo, budget))
                    .collect();
                Concept::all(Role::new(self.vocab.roles[s].clone()), Concept::or(parts))
            }
        };
        memo.insert((x, y), c.clone());
        c
    }
}

fn check(src: &FiniteInterpretation, d1: usize, dst: &FiniteInterpretation, d2: usize, sig: &Signature, bisim: bool) -> Option<RelationWitness> {
    let t = SimTable::compute(src, dst, sig, bisim);
    if d1 < t.n1 && d2 < t.n2 && t.alive(d1, d2) {
        Some(RelationWitness { pairs: t.pairs(), kind: t.kind() })
    } else {
        None
    }
}

/// The greatest Σ-simulation from `(src, d1)` to `(dst, d2)`, if it relates them.
pub fn check_simulation(src: &FiniteInterpretation, d1: usize, dst: &FiniteInterpretation, d2: usize, sig: &Signature) -> Option<RelationWitness> {
    check(src, d1, dst, d2, sig, false)
}

/// The greatest Σ-bisimulation, if it relates `d1` and `d2`.
pub fn check_bisimulation(src: &FiniteInterpretation, d1: usize, dst: &FiniteInterpretation, d2: usize, sig: &Signature) -> Option<RelationWitness> {
    check(src, d1, dst, d2, sig, true)
}

/// One pass over the local conditions of a claimed witness.
pub fn validate_witness(src: &FiniteInterpretation, dst: &FiniteInterpretation, sig: &Signature, w: &RelationWitness) -> bool {
    let vocab = Vocab::new(sig);
    let (v1, v2) = (vocab.view(src), vocab.view(dst));
    let pairs = &w.pairs;
    match w.kind {
        RelationKind::Simulation | RelationKind::Bisimulation => {
            let bisim = w.kind == RelationKind::Bisimulation;
            pairs.iter().all(|&(x, y)| {
                let base = subset(&v1.labels[x], &v2.labels[y]).is_none() && (!bisim || subset(&v2.labels[y], &v1.labels[x]).is_none());
                let zig = v1.out[x].iter().all(|&(r, x2)| v2.out[y].iter().any(|&(s, y2)| s == r && pairs.contains(&(x2, y2))));
                let zag = !bisim || v2.out[y].iter().all(|&(s, y2)| v1.out[x].iter().any(|&(r, x2)| s == r && pairs.contains(&(x2, y2))));
                base && zig && zag
            })
        }
        RelationKind::Homomorphism => {
            let map: BTreeMap<usize, usize> = pairs.iter().copied().collect();
            if map.len() != src.len() || pairs.len() != src.len() {
                return false;
            }
            let labels_ok = (0..src.len()).all(|x| subset(&v1.labels[x], &v2.labels[map[&x]]).is_none());
            let edges_ok = (0..src.len()).all(|x| v1.out[x].iter().all(|&(r, x2)| v2.out[map[&x]].contains(&(r, map[&x2]))));
            let anchors_ok = src.individuals.iter().all(|(a, &e)| dst.individuals.get(a).is_none_or(|&f| map[&e] == f));
            labels_ok && edges_ok && anchors_ok
        }
    }
}
