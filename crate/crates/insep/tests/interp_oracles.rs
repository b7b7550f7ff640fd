use std::collections::BTreeSet;

use insep::interp::{check_bisimulation, check_homomorphism, check_simulation, validate_witness, FiniteInterpretation, RelationKind, RelationWitness};
use insep::syntax::{Concept, Role, Signature};
use proptest::prelude::*;

const NAMES: [&str; 2] = ["A", "B"];
const ROLES: [&str; 2] = ["r", "s"];

fn interp(n: usize, labels: &[(usize, usize)], edges: &[(usize, usize, usize)]) -> FiniteInterpretation {
    let mut i = FiniteInterpretation::new();
    for k in 0..n {
        i.add_elem(format!("e{k}"));
    }
    for &(e, a) in labels {
        i.add_label(e % n, NAMES[a]);
    }
    for &(r, x, y) in edges {
        i.add_edge(ROLES[r], x % n, y % n);
    }
    i
}

fn arb_interp(max: usize) -> impl Strategy<Value = FiniteInterpretation> {
    (1..=max).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec((0..n, 0..2usize), 0..=2 * n),
            prop::collection::vec((0..2usize, 0..n, 0..n), 0..=2 * n),
        )
            .prop_map(|(n, l, e)| interp(n, &l, &e))
    })
}

fn arb_sig() -> impl Strategy<Value = Signature> {
    (any::<[bool; 2]>(), any::<[bool; 2]>()).prop_map(|(c, r)| {
        Signature::new(
            NAMES.iter().zip(c).filter(|p| p.1).map(|p| *p.0),
            ROLES.iter().zip(r).filter(|p| p.1).map(|p| *p.0),
        )
    })
}

fn labels(i: &FiniteInterpretation, e: usize, sig: &Signature) -> BTreeSet<String> {
    sig.concepts.iter().filter(|a| i.has_label(e, a)).cloned().collect()
}

/// Union of all relations satisfying the local conditions, by enumeration.
fn brute_greatest(i1: &FiniteInterpretation, i2: &FiniteInterpretation, sig: &Signature, bisim: bool) -> BTreeSet<(usize, usize)> {
    let (n1, n2) = (i1.len(), i2.len());
    let all: Vec<(usize, usize)> = (0..n1).flat_map(|x| (0..n2).map(move |y| (x, y))).collect();
    let mut union = BTreeSet::new();
    for mask in 0u32..(1 << all.len()) {
        let rel: BTreeSet<(usize, usize)> = all.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, p)| *p).collect();
        let w = RelationWitness { pairs: rel.clone(), kind: if bisim { RelationKind::Bisimulation } else { RelationKind::Simulation } };
        let ok = rel.iter().all(|&(x, y)| {
            let (l1, l2) = (labels(i1, x, sig), labels(i2, y, sig));
            let base = if bisim { l1 == l2 } else { l1.is_subset(&l2) };
            let zig = sig.roles.iter().all(|r| (0..n1).filter(|&x2| i1.has_edge(r, x, x2)).all(|x2| (0..n2).any(|y2| i2.has_edge(r, y, y2) && rel.contains(&(x2, y2)))));
            let zag = !bisim || sig.roles.iter().all(|r| (0..n2).filter(|&y2| i2.has_edge(r, y, y2)).all(|y2| (0..n1).any(|x2| i1.has_edge(r, x, x2) && rel.contains(&(x2, y2)))));
            base && zig && zag
        });
        assert_eq!(ok, validate_witness(i1, i2, sig, &w));
        if ok {
            union.extend(rel);
        }
    }
    union
}

fn arb_el(depth: u32) -> BoxedStrategy<Concept> {
    let leaf = prop_oneof![Just(Concept::Top), (0..2usize).prop_map(|a| Concept::name(NAMES[a]))];
    leaf.prop_recursive(depth, 12, 2, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2).prop_map(Concept::and),
            ((0..2usize), inner).prop_map(|(r, c)| Concept::some(Role::new(ROLES[r]), c)),
        ]
    })
    .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simulation_matches_enumeration(i1 in arb_interp(3), i2 in arb_interp(3), sig in arb_sig()) {
        let g = brute_greatest(&i1, &i2, &sig, false);
        for x in 0..i1.len() {
            for y in 0..i2.len() {
                let w = check_simulation(&i1, x, &i2, y, &sig);
                prop_assert_eq!(w.is_some(), g.contains(&(x, y)));
                if let Some(w) = w {
                    prop_assert_eq!(&w.pairs, &g);
                }
            }
        }
    }

    #[test]
    fn bisimulation_matches_enumeration(i1 in arb_interp(3), i2 in arb_interp(3), sig in arb_sig()) {
        let g = brute_greatest(&i1, &i2, &sig, true);
        for x in 0..i1.len() {
            for y in 0..i2.len() {
                prop_assert_eq!(check_bisimulation(&i1, x, &i2, y, &sig).is_some(), g.contains(&(x, y)));
            }
        }
    }

    #[test]
    fn bisimulation_implies_mutual_simulation(i1 in arb_interp(4), i2 in arb_interp(4), sig in arb_sig()) {
        for x in 0..i1.len() {
            for y in 0..i2.len() {
                if check_bisimulation(&i1, x, &i2, y, &sig).is_some() {
                    prop_assert!(check_simulation(&i1, x, &i2, y, &sig).is_some());
                    prop_assert!(check_simulation(&i2, y, &i1, x, &sig).is_some());
                }
            }
        }
    }

    #[test]
    fn simulation_preserves_el(i1 in arb_interp(4), i2 in arb_interp(4), c in arb_el(3)) {
        let sig = Signature::new(NAMES, ROLES);
        let (e1, e2) = (i1.eval(&c), i2.eval(&c));
        for x in 0..i1.len() {
            for y in 0..i2.len() {
                if check_simulation(&i1, x, &i2, y, &sig).is_some() && e1[x] {
                    prop_assert!(e2[y]);
                }
            }
        }
    }

    #[test]
    fn homomorphism_matches_enumeration(i1 in arb_interp(3), i2 in arb_interp(3), sig in arb_sig()) {
        let (n1, n2) = (i1.len(), i2.len());
        let mut found = false;
        for code in 0..n2.pow(n1 as u32) {
            let h: Vec<usize> = (0..n1).map(|k| code / n2.pow(k as u32) % n2).collect();
            let w = RelationWitness { pairs: h.iter().copied().enumerate().collect(), kind: RelationKind::Homomorphism };
            if validate_witness(&i1, &i2, &sig, &w) {
                found = true;
                break;
            }
        }
        let got = check_homomorphism(&i1, &i2, &sig, false).unwrap();
        prop_assert_eq!(got.is_some(), found);
        if let Some(w) = got {
            prop_assert!(validate_witness(&i1, &i2, &sig, &w));
        }
    }
}

#[test]
fn simulation_size_four_spot_check() {
    let i1 = interp(4, &[(0, 0), (2, 1)], &[(0, 0, 1), (0, 1, 2), (1, 2, 3), (0, 3, 0)]);
    let i2 = interp(2, &[(0, 0), (0, 1), (1, 0), (1, 1)], &[(0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)]);
    let sig = Signature::new(NAMES, ROLES);
    let g = brute_greatest(&i1, &i2, &sig, false);
    assert_eq!(g.len(), 8);
    assert!(check_simulation(&i1, 0, &i2, 0, &sig).is_some());
}

#[test]
fn isomorphic_graphs_bisimilar() {
    let i1 = interp(3, &[(0, 0), (1, 1)], &[(0, 0, 1), (0, 1, 2), (1, 2, 0)]);
    let i2 = interp(3, &[(2, 0), (0, 1)], &[(0, 2, 0), (0, 0, 1), (1, 1, 2)]);
    let sig = Signature::new(NAMES, ROLES);
    let w = check_bisimulation(&i1, 0, &i2, 2, &sig).unwrap();
    assert!(w.pairs.is_superset(&BTreeSet::from([(0, 2), (1, 0), (2, 1)])));
}
