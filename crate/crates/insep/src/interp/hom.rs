use std::collections::BTreeSet;

use super::model::FiniteInterpretation;
use super::sim::{RelationKind, RelationWitness, Vocab};
use crate::error::{Error, Result};
use crate::syntax::Signature;

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn intersects(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).any(|(a, b)| a & b != 0)
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b))
    }
}

struct Problem {
    /// Constraints `(role, x, x')` over source elements.
    arcs: Vec<(usize, usize, usize)>,
    /// `succ[r][y]`: r-successors of `y` in the destination.
    succ: Vec<Vec<Bits>>,
    pred: Vec<Vec<Bits>>,
}

impl Problem {
    /// Arc consistency; false on a wipe-out.
    fn propagate(&self, dom: &mut [Bits]) -> bool {
        loop {
            let mut changed = false;
            for &(r, x, x2) in &self.arcs {
                let keep: Vec<usize> = dom[x].iter().filter(|&y| !self.succ[r][y].intersects(&dom[x2])).collect();
                for y in keep {
                    dom[x].0[y / 64] &= !(1 << (y % 64));
                    changed = true;
                }
                let drop: Vec<usize> = dom[x2].iter().filter(|&y| !self.pred[r][y].intersects(&dom[x])).collect();
                for y in drop {
                    dom[x2].0[y / 64] &= !(1 << (y % 64));
                    changed = true;
                }
                if dom[x].count() == 0 || dom[x2].count() == 0 {
                    return false;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&self, order: &[usize], k: usize, dom: &mut Vec<Bits>) -> bool {
        let Some(&x) = order.get(k) else { return true };
        let n = dom[x].0.len() * 64;
        let cands: Vec<usize> = dom[x].iter().collect();
        for y in cands {
            let mut d2 = dom.clone();
            d2[x] = Bits::empty(n);
            d2[x].set(y);
            if self.propagate(&mut d2) && self.search(order, k + 1, &mut d2) {
                *dom = d2;
                return true;
            }
        }
        false
    }
}

/// A total Σ-homomorphism from `src` to `dst`, fixing individuals when
/// `anchored`.
pub fn check_homomorphism(src: &FiniteInterpretation, dst: &FiniteInterpretation, sigma: &Signature, anchored: bool) -> Result<Option<RelationWitness>> {
    let (n1, n2) = (src.len(), dst.len());
    if n1 == 0 {
        return Ok(Some(RelationWitness { pairs: BTreeSet::new(), kind: RelationKind::Homomorphism }));
    }
    if anchored {
        if let Some(a) = src.individuals.keys().find(|a| !dst.individuals.contains_key(*a)) {
            return Err(Error::Input(format!("individual '{a}' of the source is missing from the destination")));
        }
    }
    if n2 == 0 {
        return Ok(None);
    }
    let vocab = Vocab::new(sigma);
    let (v1, v2) = (vocab.view(src), vocab.view(dst));
    let mut dom: Vec<Bits> = (0..n1)
        .map(|x| {
            let mut b = Bits::empty(n2);
            for y in 0..n2 {
                if v1.labels[x].iter().all(|a| v2.labels[y].binary_search(a).is_ok()) {
                    b.set(y);
                }
            }
            b
        })
        .collect();
    if anchored {
        for (a, &x) in &src.individuals {
            let y = dst.individuals[a];
            let keep = dom[x].get(y);
            dom[x] = Bits::empty(n2);
            if keep {
                dom[x].set(y);
            }
        }
    }
    if dom.iter().any(|d| d.count() == 0) {
        return Ok(None);
    }
    let nr = vocab.roles.len();
    let mut succ = vec![vec![Bits::empty(n2); n2]; nr];
    let mut pred = vec![vec![Bits::empty(n2); n2]; nr];
    for y in 0..n2 {
        for &(r, y2) in &v2.out[y] {
            succ[r][y].set(y2);
            pred[r][y2].set(y);
        }
    }
    let arcs: Vec<(usize, usize, usize)> = (0..n1).flat_map(|x| v1.out[x].iter().map(move |&(r, x2)| (r, x, x2))).collect();
    let mut degree = vec![0usize; n1];
    for &(_, x, x2) in &arcs {
        degree[x] += 1;
        degree[x2] += 1;
    }
    let mut order: Vec<usize> = (0..n1).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(degree[x]), x));
    let p = Problem { arcs, succ, pred };
    if !p.propagate(&mut dom) || !p.search(&order, 0, &mut dom) {
        return Ok(None);
    }
    let pairs = (0..n1).map(|x| (x, dom[x].iter().next().expect("assigned"))).collect();
    Ok(Some(RelationWitness { pairs, kind: RelationKind::Homomorphism }))
}
