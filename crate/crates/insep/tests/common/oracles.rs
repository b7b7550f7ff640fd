//! Brute-force oracles shared by the property suites and the acceptance run.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use insep::chase::GeneratingStructure;
use insep::interp::{Assertion, FiniteInterpretation};
use insep::qgames::GameArena;
use insep::reasoner::ElReasoner;
use insep::syntax::{Axiom, Concept, Role, Signature, TBox, KB};
use rand::Rng;

use super::Rng8;

pub fn satisfies_abox(i: &FiniteInterpretation, k: &KB) -> bool {
    k.abox.concept_assertions.iter().all(|(c, a)| i.satisfies_assertion(&Assertion::Concept(c.clone(), a.clone())))
        && k.abox.role_assertions.iter().all(|(r, a, b)| i.satisfies_assertion(&Assertion::Role(r.clone(), a.clone(), b.clone())))
}

pub fn violations(i: &FiniteInterpretation, t: &TBox) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for a in t.expanded() {
        if let Axiom::Sub(c, d) = a {
            let (l, r) = (i.eval(&c), i.eval(&d));
            out.extend((0..i.len()).filter(|&e| l[e] && !r[e]));
        }
    }
    out
}

/// Every EL concept over `sigma` of size at most `max`, up to conjunct order.
pub fn concepts_upto(sigma: &Signature, max: usize) -> Vec<Concept> {
    let mut by_size: Vec<Vec<Concept>> = vec![Vec::new(); max + 1];
    let mut seen = HashSet::new();
    for n in 1..=max {
        let mut out = Vec::new();
        if n == 1 {
            out.push(Concept::Top);
            out.extend(sigma.concepts.iter().map(|a| Concept::name(a.clone())));
        }
        if n >= 3 {
            for r in &sigma.roles {
                for c in &by_size[n - 2] {
                    out.push(Concept::some(Role::new(r.clone()), c.clone()));
                }
            }
            for i in 1..n - 1 {
                for a in &by_size[i] {
                    for b in &by_size[n - 1 - i] {
                        if *a != Concept::Top && *b != Concept::Top {
                            out.push(Concept::and(vec![a.clone(), b.clone()]));
                        }
                    }
                }
            }
        }
        for c in out {
            if c.size() == n && seen.insert(c.clone()) {
                by_size[n].push(c);
            }
        }
    }
    by_size.into_iter().flatten().collect()
}

/// Witness names found among inclusions with both sides of size at most 5.
pub fn enumerate_witnesses(t1: &TBox, t2: &TBox, sigma: &Signature) -> (BTreeSet<String>, BTreeSet<String>) {
    let all = concepts_upto(sigma, 5);
    let mut r1 = ElReasoner::new(t1).unwrap();
    let mut r2 = ElReasoner::new(t2).unwrap();
    let (mut lhs, mut rhs) = (BTreeSet::new(), BTreeSet::new());
    for a in &sigma.concepts {
        let name = Concept::name(a.clone());
        for c in &all {
            if !lhs.contains(a) && r2.subsumes(&name, c).unwrap() && !r1.subsumes(&name, c).unwrap() {
                lhs.insert(a.clone());
            }
            if !rhs.contains(a) && r2.subsumes(c, &name).unwrap() && !r1.subsumes(c, &name).unwrap() {
                rhs.insert(a.clone());
            }
        }
    }
    (lhs, rhs)
}

/// An `n`-element interpretation read off bit masks, one per symbol.
pub fn build(n: usize, names: &[(String, u64)], roles: &[(String, u64)]) -> FiniteInterpretation {
    let mut i = FiniteInterpretation::new();
    for k in 0..n {
        i.add_elem(format!("e{k}"));
    }
    for (a, m) in names {
        for e in 0..n {
            if m >> e & 1 == 1 {
                i.add_label(e, a.clone());
            }
        }
    }
    for (r, m) in roles {
        for p in 0..n * n {
            if m >> p & 1 == 1 {
                i.add_edge(r.clone(), p / n, p % n);
            }
        }
    }
    i
}

pub fn models(i: &FiniteInterpretation, t: &TBox) -> bool {
    t.axioms.iter().all(|a| i.satisfies_axiom(a))
}

/// Whether the fixed Σ-part extends to a model of `t` on the same domain,
/// by enumerating every interpretation of the remaining symbols of `t`.
pub fn extends(t: &TBox, sigma: &Signature, n: usize, names: &[(String, u64)], roles: &[(String, u64)]) -> bool {
    let sig = t.sig();
    let free_c: Vec<String> = sig.concepts.difference(&sigma.concepts).cloned().collect();
    let free_r: Vec<String> = sig.roles.difference(&sigma.roles).cloned().collect();
    let bits = free_c.len() * n + free_r.len() * n * n;
    assert!(bits <= 20);
    for code in 0u64..1 << bits {
        let mut c = names.to_vec();
        let mut r = roles.to_vec();
        let mut off = 0;
        for a in &free_c {
            c.push((a.clone(), code >> off & ((1 << n) - 1)));
            off += n;
        }
        for s in &free_r {
            r.push((s.clone(), code >> off & ((1 << (n * n)) - 1)));
            off += n * n;
        }
        if models(&build(n, &c, &r), t) {
            return true;
        }
    }
    false
}

pub fn random_sigma_part(rng: &mut Rng8, sigma: &Signature, n: usize) -> (Vec<(String, u64)>, Vec<(String, u64)>) {
    let c = sigma.concepts.iter().map(|a| (a.clone(), rng.gen_range(0..1u64 << n))).collect();
    let r = sigma.roles.iter().map(|s| (s.clone(), rng.gen_range(0..1u64 << (n * n)))).collect();
    (c, r)
}

pub struct Explicit {
    pub challenges: Vec<Vec<(BTreeSet<Role>, usize)>>,
    pub labels2: Vec<BTreeSet<String>>,
    pub anchor: Vec<Option<usize>>,
    pub moves: Vec<Vec<(BTreeSet<Role>, usize)>>,
    pub labels1: Vec<BTreeSet<String>>,
}

pub fn closed(g: &GeneratingStructure, r: &Role, s: &Signature) -> BTreeSet<Role> {
    g.closure[r].iter().filter(|x| s.has_role(&x.name)).cloned().collect()
}

impl Explicit {
    pub fn new(a: &GameArena) -> Explicit {
        let (l, r, s) = (&a.left, &a.right, &a.sigma);
        let mut challenges = vec![Vec::new(); l.len()];
        for (x, rho, w) in &l.generating {
            let e = closed(l, rho, s);
            if !e.is_empty() {
                challenges[*x].push((e, *w));
            }
        }
        let labels2 = (0..l.len()).map(|e| l.base.labels(e).into_iter().filter(|n| s.has_concept(n)).map(String::from).collect()).collect();
        let mut anchor = vec![None; l.len()];
        for (n, &e) in &l.base.individuals {
            anchor[e] = Some(r.base.individuals[n]);
        }
        let mut moves = vec![Vec::new(); r.len()];
        for (x, rho, w) in &r.generating {
            moves[*x].push((r.closure[rho].clone(), *w));
        }
        let mut abox: BTreeMap<(usize, usize), BTreeSet<Role>> = BTreeMap::new();
        for (rn, pairs) in &r.base.role_ext {
            for &(x, y) in pairs {
                abox.entry((x, y)).or_default().insert(Role::new(rn.clone()));
                abox.entry((y, x)).or_default().insert(Role::inv_of(rn.clone()));
            }
        }
        for ((x, y), e) in abox {
            moves[x].push((e, y));
        }
        let labels1 = (0..r.len()).map(|e| r.base.labels(e).into_iter().map(String::from).collect()).collect();
        Explicit { challenges, labels2, anchor, moves, labels1 }
    }

    pub fn ok(&self, g: usize, v: usize) -> bool {
        self.labels2[g].is_subset(&self.labels1[v]) && self.anchor[g].is_none_or(|a| a == v)
    }

    /// Player 1 survives `n` rounds from `(g ↦ v)`.
    pub fn win(&self, g: usize, v: usize, n: usize, memo: &mut HashMap<(usize, usize, usize), bool>) -> bool {
        if !self.ok(g, v) {
            return false;
        }
        if n == 0 {
            return true;
        }
        if let Some(&b) = memo.get(&(g, v, n)) {
            return b;
        }
        let b = self.challenges[g].iter().all(|(e, g2)| self.moves[v].iter().any(|(f, v2)| e.is_subset(f) && self.win(*g2, *v2, n - 1, memo)));
        memo.insert((g, v, n), b);
        b
    }
}

/// The greatest Σ-(bi)simulation by enumerating candidate relations over
/// label-compatible pairs, largest first. Valid relations are closed under
/// union, so the first valid one of maximal size is the greatest.
pub fn greatest_by_enumeration(i1: &FiniteInterpretation, i2: &FiniteInterpretation, sig: &Signature, bisim: bool) -> BTreeSet<(usize, usize)> {
    let (n1, n2) = (i1.len(), i2.len());
    let labels = |i: &FiniteInterpretation, e: usize| -> BTreeSet<String> { sig.concepts.iter().filter(|a| i.has_label(e, a)).cloned().collect() };
    let pairs: Vec<(usize, usize)> = (0..n1)
        .flat_map(|x| (0..n2).map(move |y| (x, y)))
        .filter(|&(x, y)| if bisim { labels(i1, x) == labels(i2, y) } else { labels(i1, x).is_subset(&labels(i2, y)) })
        .collect();
    assert!(pairs.len() <= 20);
    let bit = |x: usize, y: usize| pairs.iter().position(|&p| p == (x, y)).map_or(0u32, |k| 1 << k);
    // Per pair: one mask per successor that must be matched.
    let needs: Vec<Vec<u32>> = pairs
        .iter()
        .map(|&(x, y)| {
            let mut out = Vec::new();
            for r in &sig.roles {
                for x2 in (0..n1).filter(|&x2| i1.has_edge(r, x, x2)) {
                    out.push((0..n2).filter(|&y2| i2.has_edge(r, y, y2)).map(|y2| bit(x2, y2)).fold(0, |a, b| a | b));
                }
                if bisim {
                    for y2 in (0..n2).filter(|&y2| i2.has_edge(r, y, y2)) {
                        out.push((0..n1).filter(|&x2| i1.has_edge(r, x, x2)).map(|x2| bit(x2, y2)).fold(0, |a, b| a | b));
                    }
                }
            }
            out
        })
        .collect();
    let valid = |rel: u32| (0..pairs.len()).filter(|k| rel >> k & 1 == 1).all(|k| needs[k].iter().all(|m| m & rel != 0));
    let m = pairs.len() as u32;
    for k in (0..=m).rev() {
        if k == 0 {
            break;
        }
        let mut rel: u32 = (1u32 << k) - 1;
        while rel < (1u32 << m) || (m == 32 && rel != 0) {
            if valid(rel) {
                return (0..pairs.len()).filter(|j| rel >> j & 1 == 1).map(|j| pairs[j]).collect();
            }
            // Next mask with the same popcount.
            let c = rel & rel.wrapping_neg();
            let r = rel + c;
            rel = (((r ^ rel) >> 2) / c) | r;
        }
    }
    BTreeSet::new()
}

fn force(i: &mut FiniteInterpretation, rng: &mut Rng8, c: &Concept, e: usize) -> bool {
    match c {
        Concept::Top => true,
        Concept::Name(a) => {
            i.add_label(e, a.clone());
            true
        }
        Concept::And(xs) => xs.iter().all(|x| force(i, rng, x, e)),
        Concept::Exists(r, f) => {
            let t = rng.gen_range(0..i.len());
            if r.inverted {
                i.add_edge(r.name.clone(), t, e);
            } else {
                i.add_edge(r.name.clone(), e, t);
            }
            force(i, rng, f, t)
        }
        _ => false,
    }
}

/// A random model of a Horn KB on `n` elements, individuals first (unique
/// names), built by repairing violated inclusions; `None` when a repair
/// would need `⊥` or does not settle.
pub fn random_model(rng: &mut Rng8, k: &KB, n: usize, density: f64) -> Option<FiniteInterpretation> {
    let inds: Vec<String> = k.abox.individuals().into_iter().collect();
    if inds.len() > n {
        return None;
    }
    let mut i = FiniteInterpretation::new();
    for e in 0..n {
        i.add_elem(format!("e{e}"));
    }
    let sig = k.tbox.sig().union(&k.abox.sig());
    for e in 0..n {
        for a in &sig.concepts {
            if rng.gen_bool(density) {
                i.add_label(e, a.clone());
            }
        }
        for r in &sig.roles {
            for f in 0..n {
                if rng.gen_bool(density / 2.0) {
                    i.add_edge(r.clone(), e, f);
                }
            }
        }
    }
    for (e, a) in inds.iter().enumerate() {
        i.set_individual(a.clone(), e);
    }
    for (c, a) in &k.abox.concept_assertions {
        let e = i.individuals[a];
        i.add_label(e, c.clone());
    }
    for (r, a, b) in &k.abox.role_assertions {
        let (x, y) = (i.individuals[a], i.individuals[b]);
        i.add_edge(r.clone(), x, y);
    }
    let axioms: Vec<(Concept, Concept)> = k.tbox.expanded().into_iter().filter_map(|a| if let Axiom::Sub(c, d) = a { Some((c, d)) } else { None }).collect();
    for _ in 0..200 {
        let mut clean = true;
        for (c, d) in &axioms {
            let (l, r) = (i.eval(c), i.eval(d));
            for e in 0..n {
                if l[e] && !r[e] {
                    clean = false;
                    if !force(&mut i, rng, d, e) {
                        return None;
                    }
                }
            }
        }
        if clean {
            return Some(i);
        }
    }
    None
}
