use std::collections::BTreeSet;

use super::arena::{Challenger, Responder};
use super::solve::solve;
use super::Variant;
use crate::chase::CQ;
use crate::error::Result;
use crate::syntax::Role;

/// Largest unfolding tried when looking for a separating query.
pub const QUERY_NODE_CAP: usize = 400;
const MAX_DEPTH: usize = 24;

/// A finite unfolding of the challenger below one element.
#[derive(Debug, Clone)]
struct QTree {
    parent: Vec<Option<usize>>,
    edge: Vec<BTreeSet<Role>>,
    labels: Vec<BTreeSet<String>>,
    alive: Vec<bool>,
}

impl QTree {
    fn unfold(c: &Challenger, root: usize, depth: usize) -> Option<QTree> {
        let mut t = QTree { parent: vec![None], edge: vec![BTreeSet::new()], labels: vec![c.labels[root].clone()], alive: vec![true] };
        let mut frontier = vec![(0, root)];
        for _ in 0..depth {
            let mut next = Vec::new();
            for (n, g) in frontier {
                for (e, g2) in &c.challenges[g] {
                    if t.parent.len() >= QUERY_NODE_CAP {
                        return None;
                    }
                    t.parent.push(Some(n));
                    t.edge.push(e.clone());
                    t.labels.push(c.labels[*g2].clone());
                    t.alive.push(true);
                    next.push((t.parent.len() - 1, *g2));
                }
            }
            frontier = next;
        }
        Some(t)
    }

    fn live(&self) -> Vec<usize> {
        (0..self.parent.len()).filter(|&n| self.alive[n]).collect()
    }

    fn challenger(&self, anchor: Option<usize>) -> Challenger {
        let live = self.live();
        let pos = |n: usize| live.iter().position(|&m| m == n).unwrap();
        let mut c = Challenger {
            names: live.iter().map(|n| format!("x{n}")).collect(),
            anchor: vec![None; live.len()],
            labels: live.iter().map(|&n| self.labels[n].clone()).collect(),
            challenges: vec![Vec::new(); live.len()],
        };
        c.anchor[0] = anchor;
        for &n in &live[1..] {
            let p = self.parent[n].unwrap();
            c.challenges[pos(p)].push((self.edge[n].clone(), pos(n)));
        }
        c
    }

    fn kill(&mut self, n: usize) -> Vec<usize> {
        let mut gone = vec![n];
        let mut k = 0;
        while k < gone.len() {
            let m = gone[k];
            self.alive[m] = false;
            gone.extend((0..self.parent.len()).filter(|&x| self.alive[x] && self.parent[x] == Some(m)));
            k += 1;
        }
        gone
    }

    fn to_cq(&self, anchored: bool) -> CQ {
        let mut q = CQ::default();
        for n in self.live() {
            let x = q.var(&format!("x{n}"));
            for a in &self.labels[n] {
                q.concept_atoms.insert((a.clone(), x));
            }
            if let Some(p) = self.parent[n] {
                let y = q.var(&format!("x{p}"));
                for s in &self.edge[n] {
                    let (a, b) = if s.inverted { (x, y) } else { (y, x) };
                    q.role_atoms.insert((s.name.clone(), a, b));
                }
            }
        }
        if anchored {
            q.answer = vec![0];
        }
        q
    }
}

fn separates(t: &QTree, r: &Responder, variant: Variant, anchor: Option<usize>) -> Result<bool> {
    let c = t.challenger(anchor);
    Ok(!solve(&c, r, variant)?.wins(&c, 0))
}

/// The smallest-depth unfolding below `root` that does not map into the
/// responder, pruned greedily, as a query. Individuals give a unary query
/// answered at their anchor; witnesses give a Boolean one.
pub(crate) fn separating_query(c: &Challenger, r: &Responder, variant: Variant, root: usize) -> Result<Option<CQ>> {
    let anchor = c.anchor[root];
    for depth in 0..=MAX_DEPTH {
        let Some(mut t) = QTree::unfold(c, root, depth) else { return Ok(None) };
        if !separates(&t, r, variant, anchor)? {
            continue;
        }
        for n in 1..t.parent.len() {
            if !t.alive[n] {
                continue;
            }
            let gone = t.kill(n);
            if !separates(&t, r, variant, anchor)? {
                for m in gone {
                    t.alive[m] = true;
                }
            }
        }
        for n in t.live() {
            for a in t.labels[n].clone() {
                t.labels[n].remove(&a);
                if !separates(&t, r, variant, anchor)? {
                    t.labels[n].insert(a);
                }
            }
        }
        return Ok(Some(t.to_cq(anchor.is_some())));
    }
    Ok(None)
}
