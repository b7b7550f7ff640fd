//! Conjunctive-query entailment between Horn KBs, decided by games over
//! generating structures, and the DL-Lite TBox-level reduction.

mod arena;
mod extract;
mod solve;

use std::collections::BTreeSet;
use std::fmt;

use crate::chase::{certain_answer, witness_mode, GeneratingStructure, CQ};
use crate::error::{Error, Result};
use crate::reasoner::{kb_consistent, HornTBox, Saturation, DEFAULT_WITNESS_CAP};
use crate::syntax::{validate_fragment, ABox, FragmentTag, Signature, TBox, KB};

use arena::{Challenger, Responder};

pub use extract::QUERY_NODE_CAP;
pub use solve::STATE_CAP;

/// Separating queries up to this many atoms are confirmed by certain answers.
pub const CONFIRM_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Forward,
    SetState,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Forward => "forward",
            Variant::SetState => "set_state",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "forward" => Some(Variant::Forward),
            "set_state" => Some(Variant::SetState),
            _ => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GameOptions {
    pub rooted: bool,
    /// Force a variant; by default forward exactly when no inverse roles occur.
    pub variant: Option<Variant>,
    pub witness_cap: usize,
}

impl Default for GameOptions {
    fn default() -> Self {
        GameOptions { rooted: false, variant: None, witness_cap: DEFAULT_WITNESS_CAP }
    }
}

/// Challenger structure from `K₂`, responder structure from `K₁` (with the
/// individuals of `K₂` added), and the game parameters.
#[derive(Debug, Clone)]
pub struct GameArena {
    pub left: GeneratingStructure,
    pub right: GeneratingStructure,
    pub sigma: Signature,
    pub variant: Variant,
    pub rooted: bool,
    /// Some TBox uses inverse roles.
    pub inverse: bool,
}

impl GameArena {
    /// Both KBs must be consistent.
    pub fn build(k1: &KB, k2: &KB, sigma: &Signature, opts: &GameOptions) -> Result<GameArena> {
        let left = structure(k2, &BTreeSet::new(), opts.witness_cap)?;
        let right = structure(k1, &k2.abox.individuals(), opts.witness_cap)?;
        let inverse = k1.tbox.has_inverse() || k2.tbox.has_inverse();
        let variant = opts.variant.unwrap_or(if inverse { Variant::SetState } else { Variant::Forward });
        Ok(GameArena { left, right, sigma: sigma.clone(), variant, rooted: opts.rooted, inverse })
    }

    fn sides(&self) -> (Challenger, Responder) {
        let r = Responder::from_structure(&self.right, &self.sigma);
        (Challenger::from_structure(&self.left, &self.sigma, &r), r)
    }

    /// The variant that decides embeddability exactly.
    fn exact(&self) -> Variant {
        if self.inverse {
            Variant::SetState
        } else {
            Variant::Forward
        }
    }
}

fn structure(kb: &KB, extra: &BTreeSet<String>, cap: usize) -> Result<GeneratingStructure> {
    let mode = witness_mode(&kb.tbox)?;
    let mut sat = Saturation::new(HornTBox::new(&kb.tbox)?, &kb.abox, mode, cap)?;
    let have = kb.abox.individuals();
    for a in extra.difference(&have) {
        sat.add_individual(a.clone());
    }
    sat.run()?;
    if !sat.inconsistent && sat.individuals.is_empty() && sat.top_unsat()? {
        sat.inconsistent = true;
    }
    if sat.inconsistent {
        return Err(Error::Inconsistent);
    }
    Ok(GeneratingStructure::from_saturation(&sat))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionState {
    pub challengers: Vec<String>,
    pub responder: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WinningRegion {
    pub states: Vec<RegionState>,
    pub fixpoint_rounds: usize,
}

impl WinningRegion {
    pub fn contains(&self, challengers: &[&str], responder: &str) -> bool {
        self.states.iter().any(|s| s.responder == responder && challengers.iter().all(|c| s.challengers.iter().any(|x| x == c)))
    }
}

/// Greatest fixpoint of the survival condition over the arena.
pub fn winning_region(arena: &GameArena) -> Result<WinningRegion> {
    let (c, r) = arena.sides();
    let sol = solve::solve(&c, &r, arena.variant)?;
    let states = sol
        .region
        .iter()
        .map(|(s, v)| RegionState { challengers: s.ones().map(|g| c.names[g].clone()).collect(), responder: r.names[*v].clone() })
        .collect();
    Ok(WinningRegion { states, fixpoint_rounds: sol.rounds })
}

/// A query with certain answer `tuple` over `K₂` but not over `K₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub query: CQ,
    pub tuple: Vec<String>,
    /// Certain-answer check on both KBs; `None` above [`CONFIRM_CAP`] atoms.
    pub confirmed: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameReport {
    pub entailed: bool,
    pub variant: Variant,
    /// Set when the verdict came from an inconsistency check.
    pub triage: Option<String>,
    pub states: usize,
    pub rounds: usize,
    /// The challenger element (or ABox edge) without a winning anchor.
    pub failure: Option<String>,
    pub separation: Option<Separation>,
}

fn confirm(k1: &KB, k2: &KB, query: CQ, tuple: Vec<String>) -> Result<Separation> {
    let confirmed = if query.size() <= CONFIRM_CAP {
        Some(certain_answer(k2, &query, &tuple)? && !certain_answer(k1, &query, &tuple)?)
    } else {
        None
    };
    Ok(Separation { query, tuple, confirmed })
}

/// `K₁` Σ-CQ entails `K₂` (Σ-rCQ when rooted).
pub fn kb_cq_entails(k1: &KB, k2: &KB, sigma: &Signature, rooted: bool) -> Result<GameReport> {
    kb_cq_entails_with(k1, k2, sigma, &GameOptions { rooted, ..GameOptions::default() })
}

pub fn kb_cq_entails_with(k1: &KB, k2: &KB, sigma: &Signature, opts: &GameOptions) -> Result<GameReport> {
    let inverse = k1.tbox.has_inverse() || k2.tbox.has_inverse();
    let variant = opts.variant.unwrap_or(if inverse { Variant::SetState } else { Variant::Forward });
    let mut report = GameReport { entailed: true, variant, triage: None, states: 0, rounds: 0, failure: None, separation: None };
    let c1 = kb_consistent(k1)?;
    if !kb_consistent(k2)? {
        report.entailed = !c1;
        report.triage = Some("k2 inconsistent".into());
        if c1 {
            report.separation = atomic_separation(k1, k2, sigma)?;
        }
        return Ok(report);
    }
    if !c1 {
        report.triage = Some("k1 inconsistent".into());
        return Ok(report);
    }
    let arena = GameArena::build(k1, k2, sigma, opts)?;
    let (c, r) = arena.sides();
    let sol = solve::solve(&c, &r, arena.variant)?;
    report.states = sol.states;
    report.rounds = sol.rounds;

    let (left, right) = (&arena.left.base, &arena.right.base);
    for (rn, pairs) in left.role_ext.iter().filter(|(rn, _)| sigma.has_role(rn)) {
        for &(x, y) in pairs {
            let (a, b) = (&left.elems[x], &left.elems[y]);
            if !right.has_edge(rn, right.individuals[a], right.individuals[b]) {
                report.entailed = false;
                report.failure = Some(format!("({rn} {a} {b})"));
                let mut q = CQ::default();
                let (u, v) = (q.var("x"), q.var(if a == b { "x" } else { "y" }));
                q.answer = if a == b { vec![u] } else { vec![u, v] };
                q.role_atoms.insert((rn.clone(), u, v));
                let tuple = if a == b { vec![a.clone()] } else { vec![a.clone(), b.clone()] };
                report.separation = Some(confirm(k1, k2, q, tuple)?);
                return Ok(report);
            }
        }
    }
    let mut order: Vec<usize> = (0..c.len()).filter(|&g| c.anchor[g].is_some()).collect();
    if !arena.rooted {
        order.extend((0..c.len()).filter(|&g| c.anchor[g].is_none()));
    }
    for g in order {
        if sol.wins(&c, g) {
            continue;
        }
        report.entailed = false;
        report.failure = Some(c.names[g].clone());
        if let Some(q) = extract::separating_query(&c, &r, arena.exact(), g)? {
            let tuple = if c.anchor[g].is_some() { vec![c.names[g].clone()] } else { Vec::new() };
            report.separation = Some(confirm(k1, k2, q, tuple)?);
        }
        return Ok(report);
    }
    Ok(report)
}

/// A one-atom Boolean Σ-query missed by a consistent `K₁`.
fn atomic_separation(k1: &KB, k2: &KB, sigma: &Signature) -> Result<Option<Separation>> {
    let mut candidates = Vec::new();
    for a in &sigma.concepts {
        let mut q = CQ::default();
        let x = q.var("x");
        q.concept_atoms.insert((a.clone(), x));
        candidates.push(q);
    }
    for rn in &sigma.roles {
        let mut q = CQ::default();
        let (x, y) = (q.var("x"), q.var("y"));
        q.role_atoms.insert((rn.clone(), x, y));
        candidates.push(q);
    }
    for q in candidates {
        if !certain_answer(k1, &q, &[])? {
            return Ok(Some(confirm(k1, k2, q, Vec::new())?));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsepReport {
    pub inseparable: bool,
    /// `K₁` entails `K₂`.
    pub forward: GameReport,
    /// `K₂` entails `K₁`.
    pub backward: GameReport,
}

pub fn kb_cq_inseparable(k1: &KB, k2: &KB, sigma: &Signature, rooted: bool) -> Result<InsepReport> {
    kb_cq_inseparable_with(k1, k2, sigma, &GameOptions { rooted, ..GameOptions::default() })
}

pub fn kb_cq_inseparable_with(k1: &KB, k2: &KB, sigma: &Signature, opts: &GameOptions) -> Result<InsepReport> {
    let forward = kb_cq_entails_with(k1, k2, sigma, opts)?;
    let backward = kb_cq_entails_with(k2, k1, sigma, opts)?;
    Ok(InsepReport { inseparable: forward.entailed && backward.entailed, forward, backward })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TBoxGameReport {
    pub entailed: bool,
    /// Singleton ABoxes tried.
    pub cases: usize,
    pub failing_abox: Option<ABox>,
    pub report: Option<GameReport>,
}

fn require_dllite(t: &TBox, which: &str) -> Result<()> {
    if validate_fragment(t, FragmentTag::DLLiteCoreH).is_valid() {
        Ok(())
    } else {
        Err(Error::fragment(FragmentTag::DLLiteCoreH, format!("{which} is not in DL-Lite core with role inclusions")))
    }
}

/// `t1` (Σ₁,Σ₂)-CQ entails `t2`, checked on every singleton Σ₁-ABox.
pub fn tbox_cq_entails_dllite(t1: &TBox, t2: &TBox, sigma1: &Signature, sigma2: &Signature) -> Result<TBoxGameReport> {
    tbox_cq_entails_dllite_with(t1, t2, sigma1, sigma2, &GameOptions::default())
}

pub fn tbox_cq_entails_dllite_with(t1: &TBox, t2: &TBox, sigma1: &Signature, sigma2: &Signature, opts: &GameOptions) -> Result<TBoxGameReport> {
    require_dllite(t1, "t1")?;
    require_dllite(t2, "t2")?;
    let mut aboxes = Vec::new();
    for a in &sigma1.concepts {
        let mut ab = ABox::default();
        ab.add_concept(a.clone(), "c");
        aboxes.push(ab);
    }
    for rn in &sigma1.roles {
        let mut ab = ABox::default();
        ab.add_role(rn.clone(), "a", "b");
        aboxes.push(ab);
    }
    let cases = aboxes.len();
    for ab in aboxes {
        let k1 = KB::new(t1.clone(), ab.clone());
        let k2 = KB::new(t2.clone(), ab.clone());
        let rep = kb_cq_entails_with(&k1, &k2, sigma2, opts)?;
        if !rep.entailed {
            return Ok(TBoxGameReport { entailed: false, cases, failing_abox: Some(ab), report: Some(rep) });
        }
    }
    Ok(TBoxGameReport { entailed: true, cases, failing_abox: None, report: None })
}
