use crate::error::{Error, Result};
use crate::syntax::{detect_fragment, is_horn, ABox, Concept, FragmentTag, TBox, KB};

use super::horn::{saturate, HornTBox, Saturation, WitnessMode, DEFAULT_WITNESS_CAP};

const SPLIT_CAP: usize = 4096;

/// Disjuncts of `c` with every `or` pushed to the top.
pub fn or_split(c: &Concept) -> Result<Vec<Concept>> {
    let out = match c {
        Concept::Or(xs) => {
            let mut v = Vec::new();
            for x in xs {
                v.extend(or_split(x)?);
            }
            v
        }
        Concept::And(xs) => {
            let mut acc: Vec<Vec<Concept>> = vec![Vec::new()];
            for x in xs {
                let parts = or_split(x)?;
                let mut next = Vec::with_capacity(acc.len() * parts.len());
                for a in &acc {
                    for p in &parts {
                        let mut a = a.clone();
                        a.push(p.clone());
                        next.push(a);
                    }
                }
                if next.len() > SPLIT_CAP {
                    return Err(Error::Resource { what: "disjunct expansion".into(), cap: SPLIT_CAP });
                }
                acc = next;
            }
            acc.into_iter().map(Concept::and).collect()
        }
        Concept::Exists(r, f) => or_split(f)?.into_iter().map(|g| Concept::some(r.clone(), g)).collect(),
        c => vec![c.clone()],
    };
    Ok(out)
}

/// Whether the individual node `x` satisfies `d` in every model.
pub fn entails_at(sat: &Saturation, x: usize, d: &Concept) -> Result<bool> {
    if sat.inconsistent {
        return Ok(true);
    }
    let set = &sat.nodes[x].set;
    Ok(match d {
        Concept::Top => true,
        Concept::Bot => false,
        Concept::Name(n) => sat.tb.name_id(n).is_some_and(|i| set.contains(&i)),
        Concept::And(xs) => {
            for e in xs {
                if !entails_at(sat, x, e)? {
                    return Ok(false);
                }
            }
            true
        }
        Concept::Or(xs) => {
            for e in xs {
                if entails_at(sat, x, e)? {
                    return Ok(true);
                }
            }
            false
        }
        Concept::Not(e) => {
            for part in or_split(e)? {
                let mut s2 = sat.clone();
                let y = s2.intern_positive(&part)?;
                s2.add_label(x, y);
                s2.run()?;
                if !s2.inconsistent {
                    return Ok(false);
                }
            }
            true
        }
        Concept::Forall(r, e) => {
            let mut s2 = sat.clone();
            s2.tb.ensure_role(&r.name);
            let rho = s2.tb.drole_of(&r.name, r.inverted).unwrap();
            let y = s2.add_individual(format!("_y{}", s2.nodes.len()));
            s2.add_edge(x, rho, y);
            s2.run()?;
            entails_at(&s2, y, e)?
        }
        Concept::Exists(r, e) => {
            let Some(rho) = sat.tb.drole_of(&r.name, r.inverted) else { return Ok(false) };
            for &(tau, m) in &sat.nodes[x].abox {
                if sat.tb.sub_role(tau, rho) && entails_at(sat, m, e)? {
                    return Ok(true);
                }
            }
            for &(tau, c) in &sat.nodes[x].children {
                if !sat.tb.sub_role(tau, rho) {
                    continue;
                }
                let mut s2 = sat.clone();
                let y = s2.add_individual(format!("_y{}", s2.nodes.len()));
                s2.add_edge(x, tau, y);
                if let Some(b) = sat.nodes[c].key_filler {
                    s2.add_label(y, b);
                }
                s2.run()?;
                if entails_at(&s2, y, e)? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

/// `T ⊨ lhs ⊑ rhs` for a Horn TBox, Horn-negative `lhs`.
pub fn horn_subsumes(tbox: &TBox, lhs: &Concept, rhs: &Concept) -> Result<bool> {
    let base = HornTBox::new(tbox)?;
    for part in or_split(lhs)? {
        let mut s = Saturation::new(base.clone(), &ABox::default(), WitnessMode::Horn, DEFAULT_WITNESS_CAP)?;
        let x = s.add_individual("_x".into());
        let z = s.intern_positive(&part)?;
        s.add_label(x, z);
        s.run()?;
        if !entails_at(&s, x, rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Consistency of a Horn KB; EL KBs are consistent by construction.
pub fn kb_consistent(kb: &KB) -> Result<bool> {
    match detect_fragment(&kb.tbox) {
        FragmentTag::EL | FragmentTag::AcyclicEL => Ok(true),
        _ if is_horn(&kb.tbox) => {
            let s = saturate(&kb.tbox, &kb.abox, WitnessMode::Horn, DEFAULT_WITNESS_CAP)?;
            Ok(!s.inconsistent)
        }
        t => Err(Error::Unsupported(format!("consistency for fragment {t} (not Horn)"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_concept, parse_document};

    fn tb(s: &str) -> TBox {
        parse_document(s).unwrap().tbox
    }

    fn c(s: &str) -> Concept {
        parse_concept(s).unwrap()
    }

    #[test]
    fn tautologies() {
        let e = TBox::default();
        assert!(horn_subsumes(&e, &c("A"), &c("A")).unwrap());
        assert!(horn_subsumes(&e, &c("(and A B)"), &c("A")).unwrap());
        assert!(!horn_subsumes(&e, &c("A"), &c("B")).unwrap());
        assert!(horn_subsumes(&e, &c("(or A (and A B))"), &c("A")).unwrap());
        assert!(horn_subsumes(&e, &c("(some r A)"), &c("(some r Top)")).unwrap());
        assert!(!horn_subsumes(&e, &c("(some r Top)"), &c("(some (inv r) Top)")).unwrap());
        assert!(horn_subsumes(&e, &c("A"), &c("(not (not A))")).unwrap());
        assert!(horn_subsumes(&e, &c("A"), &c("(all r (some (inv r) A))")).unwrap());
        assert!(!horn_subsumes(&e, &c("A"), &c("(all r A)")).unwrap());
        assert!(horn_subsumes(&e, &c("Bot"), &c("A")).unwrap());
        assert!(horn_subsumes(&e, &c("(some r Bot)"), &c("A")).unwrap());
    }

    #[test]
    fn with_tbox() {
        let t = tb("(sub A (some r B)) (sub B (all (inv r) C))");
        assert!(horn_subsumes(&t, &c("A"), &c("C")).unwrap());
        let t = tb("(sub A (all r B)) (sub (some r B) C)");
        assert!(horn_subsumes(&t, &c("(and A (some r Top))"), &c("C")).unwrap());
        assert!(!horn_subsumes(&t, &c("A"), &c("C")).unwrap());
        assert!(horn_subsumes(&t, &c("A"), &c("(not (some r (not B)))")).unwrap());
    }

    #[test]
    fn consistency() {
        let d = parse_document("(sub (and A B) Bot) (ca A c) (ca B c)").unwrap();
        assert!(!kb_consistent(&KB::new(d.tbox, d.abox)).unwrap());
        let d = parse_document("(sub A (some r B)) (ca A c)").unwrap();
        assert!(kb_consistent(&KB::new(d.tbox, d.abox)).unwrap());
        let d = parse_document("(sub A (or B C)) (ca A c)").unwrap();
        assert!(kb_consistent(&KB::new(d.tbox, d.abox)).is_err());
    }
}
