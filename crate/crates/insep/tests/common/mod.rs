#![allow(dead_code)]

use insep::chase::CQ;
use insep::interp::FiniteInterpretation;
use insep::syntax::{ABox, Axiom, Concept, Role, TBox};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub mod oracles;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn el_concept(rng: &mut Rng8, depth: usize, names: &[&str], roles: &[&str]) -> Concept {
    let k = if depth == 0 { rng.gen_range(0..3) } else { rng.gen_range(0..6) };
    match k {
        0 => Concept::Top,
        1 | 2 => Concept::name(*names.choose(rng).unwrap()),
        3 => Concept::and(vec![el_concept(rng, depth - 1, names, roles), el_concept(rng, depth - 1, names, roles)]),
        _ => Concept::some(Role::new(*roles.choose(rng).unwrap()), el_concept(rng, depth - 1, names, roles)),
    }
}

pub fn el_tbox(rng: &mut Rng8, n: usize, names: &[&str], roles: &[&str]) -> TBox {
    let axioms = (0..n)
        .map(|_| {
            let lhs = if rng.gen_bool(0.6) { Concept::name(*names.choose(rng).unwrap()) } else { el_concept(rng, 2, names, roles) };
            Axiom::sub(lhs, el_concept(rng, 2, names, roles))
        })
        .collect();
    TBox::new(axioms)
}

/// Acyclic EL: each name is defined at most once, only in terms of names
/// later in a random order.
pub fn acyclic_tbox(rng: &mut Rng8, names: &[&str], roles: &[&str], max_axioms: usize) -> TBox {
    let mut order = names.to_vec();
    order.shuffle(rng);
    let mut axioms = Vec::new();
    for (i, n) in order.iter().enumerate() {
        if axioms.len() >= max_axioms || rng.gen_bool(0.3) {
            continue;
        }
        let later = &order[i + 1..];
        let rhs = if later.is_empty() {
            if rng.gen_bool(0.5) {
                Concept::some(Role::new(*roles.choose(rng).unwrap()), Concept::Top)
            } else {
                Concept::Top
            }
        } else {
            el_concept(rng, 2, later, roles)
        };
        if rng.gen_bool(0.4) {
            axioms.push(Axiom::Equiv(Concept::name(*n), rhs));
        } else {
            axioms.push(Axiom::sub(Concept::name(*n), rhs));
        }
    }
    TBox::new(axioms)
}

fn basic(rng: &mut Rng8, names: &[&str], roles: &[&str]) -> Concept {
    if rng.gen_bool(0.5) {
        Concept::name(*names.choose(rng).unwrap())
    } else {
        let r = *roles.choose(rng).unwrap();
        let r = if rng.gen_bool(0.5) { Role::inv_of(r) } else { Role::new(r) };
        Concept::some(r, Concept::Top)
    }
}

pub fn dllite_tbox(rng: &mut Rng8, n: usize, names: &[&str], roles: &[&str], disjoint: bool) -> TBox {
    let axioms = (0..n)
        .map(|_| {
            if disjoint && rng.gen_bool(0.15) {
                Axiom::sub(Concept::and(vec![basic(rng, names, roles), basic(rng, names, roles)]), Concept::Bot)
            } else {
                Axiom::sub(basic(rng, names, roles), basic(rng, names, roles))
            }
        })
        .collect();
    TBox::new(axioms)
}

pub fn abox(rng: &mut Rng8, inds: &[&str], names: &[&str], roles: &[&str], n: usize) -> ABox {
    let mut a = ABox::default();
    a.add_concept(*names.choose(rng).unwrap(), inds[0]);
    for _ in 0..n {
        if rng.gen_bool(0.5) {
            a.add_concept(*names.choose(rng).unwrap(), *inds.choose(rng).unwrap());
        } else {
            a.add_role(*roles.choose(rng).unwrap(), *inds.choose(rng).unwrap(), *inds.choose(rng).unwrap());
        }
    }
    a
}

pub fn interp(rng: &mut Rng8, n: usize, names: &[&str], roles: &[&str], density: f64) -> FiniteInterpretation {
    let mut i = FiniteInterpretation::new();
    for k in 0..n {
        i.add_elem(format!("e{k}"));
    }
    for e in 0..n {
        for a in names {
            if rng.gen_bool(density) {
                i.add_label(e, *a);
            }
        }
        for r in roles {
            for f in 0..n {
                if rng.gen_bool(density / 2.0) {
                    i.add_edge(*r, e, f);
                }
            }
        }
    }
    i
}

pub fn cq(rng: &mut Rng8, atoms: usize, vars: usize, answer: usize, names: &[&str], roles: &[&str]) -> CQ {
    let mut q = CQ::default();
    for v in 0..vars {
        q.var(&format!("v{v}"));
    }
    q.answer = (0..answer.min(vars)).collect();
    for _ in 0..atoms {
        if rng.gen_bool(0.4) {
            q.concept_atoms.insert((names.choose(rng).unwrap().to_string(), rng.gen_range(0..vars)));
        } else {
            q.role_atoms.insert((roles.choose(rng).unwrap().to_string(), rng.gen_range(0..vars), rng.gen_range(0..vars)));
        }
    }
    q
}

/// Whether `q` has a match sending answer variables to `tuple`, by enumeration.
pub fn brute_cq(i: &FiniteInterpretation, q: &CQ, tuple: &[usize]) -> bool {
    let n = i.len();
    let k = q.vars.len();
    let total = n.checked_pow(k as u32).unwrap();
    'outer: for code in 0..total {
        let h: Vec<usize> = (0..k).map(|v| code / n.pow(v as u32) % n).collect();
        for (j, &v) in q.answer.iter().enumerate() {
            if h[v] != tuple[j] {
                continue 'outer;
            }
        }
        let ok = q.concept_atoms.iter().all(|(a, x)| i.has_label(h[*x], a)) && q.role_atoms.iter().all(|(r, x, y)| i.has_edge(r, h[*x], h[*y]));
        if ok {
            return true;
        }
    }
    false
}
