use std::collections::{BTreeMap, BTreeSet};

use crate::chase::GeneratingStructure;
use crate::syntax::{Role, Signature};

/// A fixed-width bit set over element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub fn empty(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn unset(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    pub fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    pub fn or_with(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a |= b;
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b))
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Σ-roles of a closed edge label.
fn sigma_part(roles: &BTreeSet<Role>, sigma: &Signature) -> BTreeSet<Role> {
    roles.iter().filter(|r| sigma.has_role(&r.name)).cloned().collect()
}

/// The challenger side: elements with their Σ-labels and Σ-challenges.
/// Individuals carry the responder element they are anchored to.
#[derive(Debug, Clone)]
pub(crate) struct Challenger {
    pub names: Vec<String>,
    pub anchor: Vec<Option<usize>>,
    pub labels: Vec<BTreeSet<String>>,
    /// `(E, g')`: `σ(g, g')` must hold for every `σ ∈ E`.
    pub challenges: Vec<Vec<(BTreeSet<Role>, usize)>>,
}

impl Challenger {
    pub fn from_structure(g: &GeneratingStructure, sigma: &Signature, resp: &Responder) -> Challenger {
        let n = g.len();
        let mut anchor = vec![None; n];
        for (name, &e) in &g.base.individuals {
            anchor[e] = resp.ind_of.get(name).copied();
        }
        let labels = (0..n).map(|e| g.base.labels(e).into_iter().filter(|a| sigma.has_concept(a)).map(String::from).collect()).collect();
        let mut challenges = vec![Vec::new(); n];
        for (x, r, w) in &g.generating {
            let e = sigma_part(&g.closure[r], sigma);
            if !e.is_empty() {
                challenges[*x].push((e, *w));
            }
        }
        Challenger { names: g.base.elems.clone(), anchor, labels, challenges }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn witnesses(&self) -> Bits {
        let mut b = Bits::empty(self.len());
        for g in 0..self.len() {
            if self.anchor[g].is_none() {
                b.set(g);
            }
        }
        b
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Triple {
    pub from: usize,
    pub to: usize,
    /// Roles `σ` with `σ(parent, child)`.
    pub down: BTreeSet<Role>,
    /// Roles `σ` with `σ(child, parent)`.
    pub up: BTreeSet<Role>,
}

/// The responder side: a generating structure read as the tree it unravels to.
#[derive(Debug, Clone)]
pub(crate) struct Responder {
    pub names: Vec<String>,
    pub is_ind: Vec<bool>,
    pub labels: Vec<BTreeSet<String>>,
    pub triples: Vec<Triple>,
    pub out: Vec<Vec<usize>>,
    /// Σ-edges between individuals, as `(target, roles from source to target)`.
    pub abox: Vec<Vec<(usize, BTreeSet<Role>)>>,
    pub ind_of: BTreeMap<String, usize>,
}

impl Responder {
    pub fn from_structure(g: &GeneratingStructure, sigma: &Signature) -> Responder {
        let n = g.len();
        let is_ind = (0..n).map(|e| g.abox_elements.contains(&e)).collect();
        let labels = (0..n).map(|e| g.base.labels(e).into_iter().map(String::from).collect()).collect();
        let mut triples = Vec::new();
        let mut out = vec![Vec::new(); n];
        for (x, r, w) in &g.generating {
            let down = sigma_part(&g.closure[r], sigma);
            let up = down.iter().map(Role::inv).collect();
            out[*x].push(triples.len());
            triples.push(Triple { from: *x, to: *w, down, up });
        }
        let mut edges: BTreeMap<(usize, usize), BTreeSet<Role>> = BTreeMap::new();
        for (r, pairs) in &g.base.role_ext {
            if !sigma.has_role(r) {
                continue;
            }
            for &(x, y) in pairs {
                edges.entry((x, y)).or_default().insert(Role::new(r.clone()));
                edges.entry((y, x)).or_default().insert(Role::inv_of(r.clone()));
            }
        }
        let mut abox = vec![Vec::new(); n];
        for ((x, y), rs) in edges {
            abox[x].push((y, rs));
        }
        Responder { names: g.base.elems.clone(), is_ind, labels, triples, out, abox, ind_of: g.base.individuals.clone() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn compatible(&self, c: &Challenger, g: usize, v: usize) -> bool {
        c.labels[g].is_subset(&self.labels[v]) && c.anchor[g].is_none_or(|a| a == v)
    }
}
