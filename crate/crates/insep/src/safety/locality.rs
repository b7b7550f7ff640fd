use crate::error::{Error, Result};
use crate::reasoner::horn_subsumes;
use crate::syntax::{horn_neg, horn_pos, Axiom, Concept, Signature, TBox};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalityKind {
    SemanticEmpty,
    SyntacticBot,
    SyntacticTop,
}

impl LocalityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LocalityKind::SemanticEmpty => "semantic-empty",
            LocalityKind::SyntacticBot => "syntactic-bot",
            LocalityKind::SyntacticTop => "syntactic-top",
        }
    }

    pub fn parse(s: &str) -> Option<LocalityKind> {
        [LocalityKind::SemanticEmpty, LocalityKind::SyntacticBot, LocalityKind::SyntacticTop].into_iter().find(|k| k.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityReport {
    pub kind: LocalityKind,
    pub local: bool,
    /// Indices of non-local axioms.
    pub nonlocal: Vec<usize>,
    /// Axioms outside the Horn fragment, decided by the ⊥-locality grammar.
    pub fallback: Vec<usize>,
}

/// Replaces non-Σ names and `∃r.C`, `r ∉ Σ`, by `⊥` and simplifies.
pub fn rewrite_empty(c: &Concept, sigma: &Signature) -> Concept {
    match c {
        Concept::Top | Concept::Bot => c.clone(),
        Concept::Name(n) if sigma.concepts.contains(n) => c.clone(),
        Concept::Name(_) => Concept::Bot,
        Concept::Not(d) => match rewrite_empty(d, sigma) {
            Concept::Bot => Concept::Top,
            Concept::Top => Concept::Bot,
            d => Concept::not(d),
        },
        Concept::And(xs) => {
            let ys: Vec<Concept> = xs.iter().map(|x| rewrite_empty(x, sigma)).filter(|x| *x != Concept::Top).collect();
            if ys.contains(&Concept::Bot) {
                Concept::Bot
            } else {
                Concept::and(ys)
            }
        }
        Concept::Or(xs) => {
            let ys: Vec<Concept> = xs.iter().map(|x| rewrite_empty(x, sigma)).filter(|x| *x != Concept::Bot).collect();
            if ys.contains(&Concept::Top) {
                Concept::Top
            } else {
                Concept::or(ys)
            }
        }
        Concept::Exists(r, _) if !sigma.roles.contains(&r.name) => Concept::Bot,
        Concept::Exists(r, d) => match rewrite_empty(d, sigma) {
            Concept::Bot => Concept::Bot,
            d => Concept::some(r.clone(), d),
        },
        Concept::Forall(r, _) if !sigma.roles.contains(&r.name) => Concept::Top,
        Concept::Forall(r, d) => match rewrite_empty(d, sigma) {
            Concept::Top => Concept::Top,
            d => Concept::all(r.clone(), d),
        },
    }
}

/// Whether the rewritten axiom is a tautology; `Unsupported` when the
/// rewritten inclusion is outside the Horn fragment.
pub fn empty_local_axiom(a: &Axiom, sigma: &Signature) -> Result<bool> {
    match a {
        Axiom::RSub(r, s) => Ok(!sigma.roles.contains(&r.name) || r == s),
        Axiom::Equiv(..) => {
            for b in a.expand() {
                if !empty_local_axiom(&b, sigma)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Axiom::Sub(c, d) => {
            let (c, d) = (rewrite_empty(c, sigma), rewrite_empty(d, sigma));
            if c == Concept::Bot || d == Concept::Top {
                return Ok(true);
            }
            if !horn_neg(&c) || !horn_pos(&d) {
                return Err(Error::Unsupported(format!("tautology check for non-Horn inclusion (sub {c} {d})")));
            }
            horn_subsumes(&TBox::default(), &c, &d)
        }
    }
}

/// ∅-locality of a Horn TBox.
pub fn semantic_empty_locality(t: &TBox, sigma: &Signature) -> Result<bool> {
    for a in &t.axioms {
        if !empty_local_axiom(a, sigma)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn bot_class(c: &Concept, sigma: &Signature) -> bool {
    match c {
        Concept::Bot => true,
        Concept::Top | Concept::Forall(..) => false,
        Concept::Name(n) => !sigma.concepts.contains(n),
        Concept::Not(d) => top_class(d, sigma),
        Concept::And(xs) => xs.iter().any(|x| bot_class(x, sigma)),
        Concept::Or(xs) => !xs.is_empty() && xs.iter().all(|x| bot_class(x, sigma)),
        Concept::Exists(r, d) => !sigma.roles.contains(&r.name) || bot_class(d, sigma),
    }
}

fn top_class(c: &Concept, sigma: &Signature) -> bool {
    match c {
        Concept::Top => true,
        Concept::Bot | Concept::Name(_) | Concept::Exists(..) => false,
        Concept::Not(d) => bot_class(d, sigma),
        Concept::And(xs) => xs.iter().all(|x| top_class(x, sigma)),
        Concept::Or(xs) => xs.iter().any(|x| top_class(x, sigma)),
        Concept::Forall(r, d) => !sigma.roles.contains(&r.name) || top_class(d, sigma),
    }
}

/// Syntactic ⊥-locality of one axiom.
pub fn bot_local_axiom(a: &Axiom, sigma: &Signature) -> bool {
    match a {
        Axiom::Sub(c, d) => bot_class(c, sigma) || top_class(d, sigma),
        Axiom::Equiv(..) => a.expand().iter().all(|b| bot_local_axiom(b, sigma)),
        Axiom::RSub(r, _) => !sigma.roles.contains(&r.name),
    }
}

pub fn syntactic_bot_locality(t: &TBox, sigma: &Signature) -> bool {
    t.axioms.iter().all(|a| bot_local_axiom(a, sigma))
}

/// Concepts equal to the domain once non-Σ symbols are interpreted as everything.
fn full_class(c: &Concept, sigma: &Signature) -> bool {
    match c {
        Concept::Top => true,
        Concept::Bot => false,
        Concept::Name(n) => !sigma.concepts.contains(n),
        Concept::Not(d) => void_class(d, sigma),
        Concept::And(xs) => xs.iter().all(|x| full_class(x, sigma)),
        Concept::Or(xs) => xs.iter().any(|x| full_class(x, sigma)),
        Concept::Exists(r, d) => !sigma.roles.contains(&r.name) && full_class(d, sigma),
        Concept::Forall(_, d) => full_class(d, sigma),
    }
}

fn void_class(c: &Concept, sigma: &Signature) -> bool {
    match c {
        Concept::Bot => true,
        Concept::Top | Concept::Name(_) => false,
        Concept::Not(d) => full_class(d, sigma),
        Concept::And(xs) => xs.iter().any(|x| void_class(x, sigma)),
        Concept::Or(xs) => !xs.is_empty() && xs.iter().all(|x| void_class(x, sigma)),
        Concept::Exists(_, d) => void_class(d, sigma),
        Concept::Forall(r, d) => !sigma.roles.contains(&r.name) && void_class(d, sigma),
    }
}

/// Syntactic ⊤-locality of one axiom.
pub fn top_local_axiom(a: &Axiom, sigma: &Signature) -> bool {
    match a {
        Axiom::Sub(c, d) => void_class(c, sigma) || full_class(d, sigma),
        Axiom::Equiv(..) => a.expand().iter().all(|b| top_local_axiom(b, sigma)),
        Axiom::RSub(_, s) => !sigma.roles.contains(&s.name),
    }
}

pub fn syntactic_top_locality(t: &TBox, sigma: &Signature) -> bool {
    t.axioms.iter().all(|a| top_local_axiom(a, sigma))
}

/// Per-axiom locality; semantic checks fall back to the ⊥ grammar outside Horn.
pub fn locality(t: &TBox, sigma: &Signature, kind: LocalityKind) -> Result<LocalityReport> {
    let mut report = LocalityReport { kind, local: true, nonlocal: Vec::new(), fallback: Vec::new() };
    for (i, a) in t.axioms.iter().enumerate() {
        let ok = match kind {
            LocalityKind::SyntacticBot => bot_local_axiom(a, sigma),
            LocalityKind::SyntacticTop => top_local_axiom(a, sigma),
            LocalityKind::SemanticEmpty => match empty_local_axiom(a, sigma) {
                Ok(b) => b,
                Err(Error::Unsupported(_)) => {
                    report.fallback.push(i);
                    bot_local_axiom(a, sigma)
                }
                Err(e) => return Err(e),
            },
        };
        if !ok {
            report.nonlocal.push(i);
        }
    }
    report.local = report.nonlocal.is_empty();
    Ok(report)
}
