use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::interp::FiniteInterpretation;
use crate::reasoner::{saturate, HornTBox, Saturation, WitnessMode, DEFAULT_WITNESS_CAP};
use crate::syntax::{detect_fragment, el_axiom, is_horn, ABox, Axiom, Concept, FragmentTag, Role, TBox, KB};

/// Bound on the number of elements an unraveling may produce.
pub const UNRAVEL_CAP: usize = 1 << 20;

/// A finite interpretation over the ABox and the witnesses, together with
/// the generating relation between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingStructure {
    pub base: FiniteInterpretation,
    pub generating: BTreeSet<(usize, Role, usize)>,
    pub abox_elements: BTreeSet<usize>,
    /// Super-roles of every role used in `generating` (itself included).
    pub closure: BTreeMap<Role, BTreeSet<Role>>,
    pub mode: WitnessMode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalPrefix {
    pub interpretation: FiniteInterpretation,
    pub depth: usize,
    /// Witness-path depth of each element; 0 for the ABox part.
    pub levels: Vec<usize>,
    /// Generating-structure element each prefix element copies.
    pub origin: Vec<usize>,
}

pub fn witness_mode(tbox: &TBox) -> Result<WitnessMode> {
    match detect_fragment(tbox) {
        FragmentTag::EL | FragmentTag::AcyclicEL => Ok(WitnessMode::El),
        FragmentTag::DLLiteCore | FragmentTag::DLLiteCoreH => Ok(WitnessMode::DlLite),
        _ if is_horn(tbox) => Ok(WitnessMode::Horn),
        t => Err(Error::Unsupported(format!("canonical models for fragment {t} (not Horn)"))),
    }
}

fn role_atom(r: &Role) -> String {
    if r.inverted {
        format!("{}-", r.name)
    } else {
        r.name.clone()
    }
}

fn add_closed_edge(i: &mut FiniteInterpretation, sup: &BTreeSet<Role>, x: usize, y: usize) {
    for s in sup {
        if s.inverted {
            i.add_edge(s.name.clone(), y, x);
        } else {
            i.add_edge(s.name.clone(), x, y);
        }
    }
}

impl GeneratingStructure {
    /// Reads the structure off a finished saturation. Individual nodes become
    /// ABox elements; witnesses reachable from them are named by mode.
    pub(crate) fn from_saturation(sat: &Saturation) -> GeneratingStructure {
        let tb = &sat.tb;
        let inds: Vec<usize> = (0..sat.nodes.len()).filter(|&n| sat.nodes[n].ind).collect();
        let wits = sat.reachable_witnesses();
        let mut base = FiniteInterpretation::new();
        let mut id: HashMap<usize, usize> = HashMap::new();
        for (k, &n) in inds.iter().enumerate() {
            let e = base.add_elem(sat.individuals[k].clone());
            base.set_individual(sat.individuals[k].clone(), e);
            id.insert(n, e);
        }
        let abox_elements: BTreeSet<usize> = (0..inds.len()).collect();
        let mut rep: BTreeMap<&BTreeSet<u32>, usize> = BTreeMap::new();
        let mut used: BTreeSet<String> = base.elems.iter().cloned().collect();
        let mut counter = 0;
        for &w in &wits {
            let node = &sat.nodes[w];
            if sat.mode == WitnessMode::Horn {
                if let Some(&e) = rep.get(&node.set) {
                    id.insert(w, e);
                    continue;
                }
            }
            let mut name = match sat.mode {
                WitnessMode::El => match node.key_filler {
                    Some(b) if b == crate::reasoner::H_TOP || tb.is_user(b) => format!("w_{}", tb.names[b as usize]),
                    _ => String::new(),
                },
                WitnessMode::DlLite => node.key_role.map(|r| format!("w_{}", role_atom(&tb.role_of(r)))).unwrap_or_default(),
                WitnessMode::Horn => String::new(),
            };
            while name.is_empty() || used.contains(&name) {
                name = format!("w_t{counter}");
                counter += 1;
            }
            used.insert(name.clone());
            let e = base.add_elem(name);
            id.insert(w, e);
            if sat.mode == WitnessMode::Horn {
                rep.insert(&node.set, e);
            }
        }
        for (&n, &e) in &id {
            for l in sat.user_labels(n) {
                base.add_label(e, l);
            }
        }
        let sup_of = |rho: u32| -> BTreeSet<Role> { tb.supers(rho).map(|s| tb.role_of(s)).collect() };
        for &n in &inds {
            for &(rho, m) in &sat.nodes[n].abox {
                if rho & 1 == 0 && sat.nodes[m].ind {
                    add_closed_edge(&mut base, &sup_of(rho), id[&n], id[&m]);
                }
            }
        }
        let mut generating = BTreeSet::new();
        let mut closure = BTreeMap::new();
        let mut done = BTreeSet::new();
        for &n in inds.iter().chain(&wits) {
            if !done.insert(id[&n]) {
                continue;
            }
            for &(rho, c) in &sat.nodes[n].children {
                let r = tb.role_of(rho);
                closure.entry(r.clone()).or_insert_with(|| sup_of(rho));
                generating.insert((id[&n], r, id[&c]));
            }
        }
        GeneratingStructure { base, generating, abox_elements, closure, mode: sat.mode }
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn witnesses(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|e| !self.abox_elements.contains(e))
    }

    pub fn successors(&self, x: usize) -> impl Iterator<Item = (&Role, usize)> + '_ {
        self.generating.range((x, Role::new(""), 0)..).take_while(move |t| t.0 == x).map(|(_, r, w)| (r, *w))
    }

    /// The base with generating edges added (closed under super-roles).
    pub fn compact(&self) -> FiniteInterpretation {
        let mut i = self.base.clone();
        for (x, r, w) in &self.generating {
            add_closed_edge(&mut i, &self.closure[r], *x, *w);
        }
        i
    }

    /// Unravels the witness part to the given depth; the ABox part is copied whole.
    pub fn unravel(&self, depth: usize) -> Result<CanonicalPrefix> {
        let mut i = FiniteInterpretation::new();
        let mut levels = Vec::new();
        let mut origin = Vec::new();
        for &a in &self.abox_elements {
            i.add_elem(self.base.elems[a].clone());
            levels.push(0);
            origin.push(a);
        }
        for (name, &e) in &self.base.individuals {
            i.set_individual(name.clone(), e);
        }
        for (a, s) in &self.base.concept_ext {
            for &e in s.iter().filter(|e| self.abox_elements.contains(e)) {
                i.add_label(e, a.clone());
            }
        }
        for (r, s) in &self.base.role_ext {
            for &(x, y) in s {
                i.add_edge(r.clone(), x, y);
            }
        }
        let roots: Vec<usize> = self.abox_elements.iter().copied().collect();
        self.grow(&mut i, &mut levels, &mut origin, roots, depth)?;
        Ok(CanonicalPrefix { interpretation: i, depth, levels, origin })
    }

    /// Unraveling rooted at a single witness.
    pub fn unravel_from(&self, w: usize, depth: usize) -> Result<CanonicalPrefix> {
        let mut i = FiniteInterpretation::new();
        i.add_elem(self.base.elems[w].clone());
        for a in self.base.labels(w) {
            i.add_label(0, a);
        }
        let (mut levels, mut origin) = (vec![0], vec![w]);
        self.grow(&mut i, &mut levels, &mut origin, vec![0], depth)?;
        Ok(CanonicalPrefix { interpretation: i, depth, levels, origin })
    }

    fn grow(&self, i: &mut FiniteInterpretation, levels: &mut Vec<usize>, origin: &mut Vec<usize>, mut frontier: Vec<usize>, depth: usize) -> Result<()> {
        let labels: Vec<Vec<&str>> = (0..self.len()).map(|e| self.base.labels(e).into_iter().collect()).collect();
        for level in 1..=depth {
            let mut next = Vec::new();
            for p in frontier {
                let x = origin[p];
                for (r, w) in self.successors(x) {
                    if i.len() >= UNRAVEL_CAP {
                        return Err(Error::Resource { what: "unraveled elements".into(), cap: UNRAVEL_CAP });
                    }
                    let name = format!("{}.{}.{}", i.elems[p], role_atom(r), self.base.elems[w]);
                    let e = i.add_elem(name);
                    levels.push(level);
                    origin.push(w);
                    for a in &labels[w] {
                        i.add_label(e, *a);
                    }
                    add_closed_edge(i, &self.closure[r], p, e);
                    next.push(e);
                }
            }
            frontier = next;
        }
        Ok(())
    }
}

impl fmt::Display for GeneratingStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for (x, r, w) in &self.generating {
            writeln!(f, "(gen {} {r} {})", self.base.elems[*x], self.base.elems[*w])?;
        }
        Ok(())
    }
}

/// The generating structure of a consistent Horn KB.
pub fn build_generating_structure(kb: &KB) -> Result<GeneratingStructure> {
    build_generating_structure_capped(kb, DEFAULT_WITNESS_CAP)
}

pub fn build_generating_structure_capped(kb: &KB, cap: usize) -> Result<GeneratingStructure> {
    let mode = witness_mode(&kb.tbox)?;
    let sat = saturate(&kb.tbox, &kb.abox, mode, cap)?;
    if sat.inconsistent {
        return Err(Error::Inconsistent);
    }
    Ok(GeneratingStructure::from_saturation(&sat))
}

/// The canonical pointed model of an EL TBox and an EL concept, as a
/// finite compact structure; element 0 is the root.
pub fn canonical_for_concept(tbox: &TBox, c: &Concept) -> Result<(FiniteInterpretation, usize)> {
    if !matches!(detect_fragment(tbox), FragmentTag::EL | FragmentTag::AcyclicEL) {
        return Err(Error::fragment(FragmentTag::EL, "the TBox is not in EL"));
    }
    if let Err(e) = el_axiom(&Axiom::sub(c.clone(), Concept::Top)) {
        return Err(Error::fragment(FragmentTag::EL, format!("{c}: {e}")));
    }
    let mut tb = HornTBox::new(tbox)?;
    for n in &c.sig().concepts {
        tb.ensure_name(n);
    }
    let mut sat = Saturation::new(tb, &ABox::default(), WitnessMode::El, DEFAULT_WITNESS_CAP)?;
    let root = sat.add_individual("root".into());
    let z = sat.intern_positive(c)?;
    sat.add_label(root, z);
    sat.run()?;
    let g = GeneratingStructure::from_saturation(&sat);
    Ok((g.compact(), 0))
}

/// One compact canonical model of an EL TBox holding a root for every given
/// concept name; returns the model and the root of each name.
pub fn canonical_for_names<'a>(tbox: &TBox, names: impl IntoIterator<Item = &'a String>) -> Result<(FiniteInterpretation, BTreeMap<String, usize>)> {
    if !matches!(detect_fragment(tbox), FragmentTag::EL | FragmentTag::AcyclicEL) {
        return Err(Error::fragment(FragmentTag::EL, "the TBox is not in EL"));
    }
    let names: Vec<&String> = names.into_iter().collect();
    let mut tb = HornTBox::new(tbox)?;
    for n in &names {
        tb.ensure_name(n);
    }
    let mut sat = Saturation::new(tb, &ABox::default(), WitnessMode::El, DEFAULT_WITNESS_CAP)?;
    let mut roots = Vec::new();
    for (k, n) in names.iter().enumerate() {
        let x = sat.add_individual(format!("root{k}"));
        let z = sat.intern_positive(&Concept::name(n.as_str()))?;
        sat.add_label(x, z);
        roots.push(((*n).clone(), format!("root{k}")));
    }
    sat.run()?;
    let i = GeneratingStructure::from_saturation(&sat).compact();
    let map = roots.into_iter().map(|(n, r)| (n, i.individuals[&r])).collect();
    Ok((i, map))
}
