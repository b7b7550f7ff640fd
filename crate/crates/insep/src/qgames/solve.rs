use std::collections::{BTreeSet, HashMap, VecDeque};

use super::arena::{Bits, Challenger, Responder};
use super::Variant;
use crate::error::{Error, Result};

/// Bound on the number of set states materialized.
pub const STATE_CAP: usize = 1 << 18;

#[derive(Debug, Clone)]
pub(crate) struct Solution {
    /// Per responder element: challenger elements winning there. For the
    /// set-state variant only individual entries are meaningful.
    pub win: Vec<Bits>,
    /// Challenger witnesses with a winning anchor in every finite prefix.
    pub finite: Bits,
    /// `(challenger set ↦ responder element)` entries of the region.
    pub region: Vec<(Bits, usize)>,
    pub rounds: usize,
    pub states: usize,
}

impl Solution {
    /// Whether challenger element `g` wins: individuals at their anchor,
    /// witnesses anywhere.
    pub fn wins(&self, c: &Challenger, g: usize) -> bool {
        match c.anchor[g] {
            Some(v) => self.win[v].get(g),
            None => self.finite.get(g),
        }
    }
}

pub(crate) fn solve(c: &Challenger, r: &Responder, variant: Variant) -> Result<Solution> {
    match variant {
        Variant::Forward => Ok(forward(c, r)),
        Variant::SetState => SetGame::new(c, r).run(),
    }
}

fn initial(c: &Challenger, r: &Responder, v: usize) -> Bits {
    let mut b = Bits::empty(c.len());
    for g in 0..c.len() {
        if r.compatible(c, g, v) {
            b.set(g);
        }
    }
    b
}

/// Pair states `(g ↦ v)` over both generating structures; responses follow
/// generating edges forward and ABox edges.
fn forward(c: &Challenger, r: &Responder) -> Solution {
    let mut win: Vec<Bits> = (0..r.len()).map(|v| initial(c, r, v)).collect();
    let states = win.iter().map(Bits::count).sum();
    let mut rounds = 0;
    loop {
        let prev = win.clone();
        for v in 0..r.len() {
            for g in prev[v].ones() {
                let ok = c.challenges[g].iter().all(|(e, g2)| {
                    r.out[v].iter().any(|&t| e.is_subset(&r.triples[t].down) && prev[r.triples[t].to].get(*g2))
                        || r.abox[v].iter().any(|(v2, rs)| e.is_subset(rs) && prev[*v2].get(*g2))
                });
                if !ok {
                    win[v].unset(g);
                }
            }
        }
        if win == prev {
            break;
        }
        rounds += 1;
    }
    let mut finite = Bits::empty(c.len());
    let mut region = Vec::new();
    for (v, w) in win.iter().enumerate() {
        finite.or_with(&w.and(&c.witnesses()));
        for g in w.ones() {
            let mut s = Bits::empty(c.len());
            s.set(g);
            region.push((s, v));
        }
    }
    Solution { win, finite, region, rounds, states }
}

/// Set states: a tree node of the responder is identified by the triple it
/// was generated through and the set of challenger witnesses that win at
/// its parent. The value of a state is the set winning at the node itself.
struct SetGame<'a> {
    c: &'a Challenger,
    r: &'a Responder,
    wit: Bits,
    ind: Vec<Bits>,
    keys: HashMap<(usize, Bits), usize>,
    info: Vec<(usize, Bits)>,
    vals: Vec<Bits>,
}

impl<'a> SetGame<'a> {
    fn new(c: &'a Challenger, r: &'a Responder) -> SetGame<'a> {
        let ind = (0..r.len()).map(|v| if r.is_ind[v] { initial(c, r, v) } else { Bits::empty(c.len()) }).collect();
        SetGame { c, r, wit: c.witnesses(), ind, keys: HashMap::new(), info: Vec::new(), vals: Vec::new() }
    }

    fn key(&mut self, t: usize, parent: &Bits) -> Result<usize> {
        let s = parent.and(&self.wit);
        if let Some(&k) = self.keys.get(&(t, s.clone())) {
            return Ok(k);
        }
        if self.info.len() >= STATE_CAP {
            return Err(Error::Resource { what: "game states".into(), cap: STATE_CAP });
        }
        let k = self.info.len();
        let v = self.r.triples[t].to;
        self.vals.push(initial(self.c, self.r, v).and(&self.wit));
        self.keys.insert((t, s.clone()), k);
        self.info.push((t, s));
        Ok(k)
    }

    /// Child states of a node of type `v` whose own winning set is `val`.
    fn kids(&mut self, v: usize, val: &Bits) -> Result<Vec<(usize, usize)>> {
        let ts = self.r.out[v].clone();
        ts.into_iter().map(|t| Ok((t, self.key(t, val)?))).collect()
    }

    fn survives(&self, g: usize, v: usize, up: Option<(usize, &Bits)>, kids: &[(usize, usize)]) -> bool {
        let (c, r) = (self.c, self.r);
        c.challenges[g].iter().all(|(e, g2)| {
            up.is_some_and(|(t, s)| e.is_subset(&r.triples[t].up) && s.get(*g2))
                || kids.iter().any(|&(t, k)| e.is_subset(&r.triples[t].down) && self.vals[k].get(*g2))
                || (up.is_none() && r.abox[v].iter().any(|(v2, rs)| e.is_subset(rs) && self.ind[*v2].get(*g2)))
        })
    }

    fn run(mut self) -> Result<Solution> {
        let all = self.wit.clone();
        for t in 0..self.r.triples.len() {
            if !self.r.is_ind[self.r.triples[t].from] {
                self.key(t, &all)?;
            }
        }
        let mut rounds = 0;
        loop {
            let mut changed = false;
            for v in (0..self.r.len()).filter(|&v| self.r.is_ind[v]) {
                let val = self.ind[v].clone();
                let kids = self.kids(v, &val)?;
                for g in val.ones() {
                    if !self.survives(g, v, None, &kids) {
                        self.ind[v].unset(g);
                        changed = true;
                    }
                }
            }
            let mut k = 0;
            while k < self.info.len() {
                let (t, s) = self.info[k].clone();
                let v = self.r.triples[t].to;
                let val = self.vals[k].clone();
                let kids = self.kids(v, &val)?;
                for g in val.ones() {
                    if !self.survives(g, v, Some((t, &s)), &kids) {
                        self.vals[k].unset(g);
                        changed = true;
                    }
                }
                k += 1;
            }
            if !changed {
                break;
            }
            rounds += 1;
        }
        self.finish(rounds)
    }

    fn finish(mut self, rounds: usize) -> Result<Solution> {
        let n = self.info.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for k in 0..n {
            let v = self.r.triples[self.info[k].0].to;
            let val = self.vals[k].clone();
            succ[k] = self.kids(v, &val)?.into_iter().map(|p| p.1).collect();
        }
        // Keys created just now are unreachable from the stable ones.
        let n = succ.len();
        let mut real = vec![false; n];
        let mut queue = VecDeque::new();
        for v in (0..self.r.len()).filter(|&v| self.r.is_ind[v]) {
            let val = self.ind[v].clone();
            for (_, k) in self.kids(v, &val)? {
                if k < n && !real[k] {
                    real[k] = true;
                    queue.push_back(k);
                }
            }
        }
        while let Some(k) = queue.pop_front() {
            for &k2 in &succ[k] {
                if !real[k2] {
                    real[k2] = true;
                    queue.push_back(k2);
                }
            }
        }
        // Keys at the end of arbitrarily long chains: repeatedly drop keys
        // without a surviving predecessor.
        let mut deep = vec![true; n];
        let mut preds = vec![0usize; n];
        for ks in &succ {
            for &k2 in ks {
                preds[k2] += 1;
            }
        }
        let mut drop: Vec<usize> = (0..n).filter(|&k| preds[k] == 0).collect();
        for &k in &drop {
            deep[k] = false;
        }
        while let Some(k) = drop.pop() {
            for &k2 in &succ[k] {
                preds[k2] -= 1;
                if preds[k2] == 0 && deep[k2] {
                    deep[k2] = false;
                    drop.push(k2);
                }
            }
        }
        let mut finite = Bits::empty(self.c.len());
        let mut region = BTreeSet::new();
        for v in (0..self.r.len()).filter(|&v| self.r.is_ind[v]) {
            finite.or_with(&self.ind[v].and(&self.wit));
            region.insert((self.ind[v].clone(), v));
        }
        for k in (0..n).filter(|&k| real[k] || deep[k]) {
            finite.or_with(&self.vals[k]);
            region.insert((self.vals[k].clone(), self.r.triples[self.info[k].0].to));
        }
        let states = n + self.r.is_ind.iter().filter(|&&b| b).count();
        Ok(Solution { win: self.ind, finite, region: region.into_iter().collect(), rounds, states })
    }
}
