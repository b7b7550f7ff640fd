use super::ast::{ABox, Axiom, Concept, FragmentTag, Role, Signature, TBox};
use super::fragment::validate_fragment;
use super::sexpr::{read_all, Sexp};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub tbox: TBox,
    pub abox: ABox,
    pub signature: Signature,
}

fn name_atom<'a>(x: &'a Sexp, what: &str) -> Result<&'a str> {
    match x.atom() {
        Some(a) if a == "Top" || a == "Bot" => Err(x.err(format!("'{a}' is reserved and cannot be a {what}"))),
        Some(a) => Ok(a),
        None => Err(x.err(format!("expected a {what}"))),
    }
}

fn arity(x: &Sexp, args: &[Sexp], n: usize, head: &str) -> Result<()> {
    if args.len() != n {
        return Err(x.err(format!("'{head}' takes {n} argument(s), found {}", args.len())));
    }
    Ok(())
}

pub fn role_from(x: &Sexp) -> Result<Role> {
    if x.atom().is_some() {
        return Ok(Role::new(name_atom(x, "role name")?));
    }
    let (h, args) = x.head()?;
    if h != "inv" {
        return Err(x.err(format!("expected a role, found '({h} ...)'")));
    }
    arity(x, args, 1, h)?;
    match args[0].atom() {
        Some(_) => Ok(Role::inv_of(name_atom(&args[0], "role name")?)),
        None => Err(args[0].err("inverse of a complex role; write the plain role name")),
    }
}

pub fn concept_from(x: &Sexp) -> Result<Concept> {
    if let Some(a) = x.atom() {
        return Ok(match a {
            "Top" => Concept::Top,
            "Bot" => Concept::Bot,
            _ => Concept::Name(a.to_string()),
        });
    }
    let (h, args) = x.head()?;
    match h {
        "and" | "or" => {
            if args.len() < 2 {
                return Err(x.err(format!("'{h}' needs at least two arguments")));
            }
            let xs = args.iter().map(concept_from).collect::<Result<Vec<_>>>()?;
            Ok(if h == "and" { Concept::and(xs) } else { Concept::or(xs) })
        }
        "not" => {
            arity(x, args, 1, h)?;
            Ok(Concept::not(concept_from(&args[0])?))
        }
        "some" | "all" => {
            arity(x, args, 2, h)?;
            let r = role_from(&args[0])?;
            let c = concept_from(&args[1])?;
            Ok(if h == "some" { Concept::some(r, c) } else { Concept::all(r, c) })
        }
        _ => Err(x.err(format!("unknown concept constructor '{h}'"))),
    }
}

fn bind(sig: &mut Signature, x: &Sexp, kind: &str, name: &str) -> Result<()> {
    let fresh = match kind {
        "concept" => sig.concepts.insert(name.to_string()),
        _ => sig.roles.insert(name.to_string()),
    };
    if !fresh {
        return Err(x.err(format!("duplicate signature binding '{kind} {name}'")));
    }
    Ok(())
}

/// Parses a document of axioms, assertions and optional `(concept N)`,
/// `(role N)` and `(fragment TAG)` items.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    let mut tag_at = None;
    for x in read_all(text)? {
        let (h, args) = x.head()?;
        match h {
            "sub" | "equiv" => {
                arity(&x, args, 2, h)?;
                let c = concept_from(&args[0])?;
                let d = concept_from(&args[1])?;
                doc.tbox.axioms.push(if h == "sub" { Axiom::Sub(c, d) } else { Axiom::Equiv(c, d) });
            }
            "rsub" => {
                arity(&x, args, 2, h)?;
                doc.tbox.axioms.push(Axiom::RSub(role_from(&args[0])?, role_from(&args[1])?));
            }
            "ca" => {
                arity(&x, args, 2, h)?;
                let c = name_atom(&args[0], "concept name")?;
                let a = name_atom(&args[1], "individual")?;
                doc.abox.add_concept(c, a);
            }
            "ra" => {
                arity(&x, args, 3, h)?;
                let r = name_atom(&args[0], "role name")?;
                let a = name_atom(&args[1], "individual")?;
                let b = name_atom(&args[2], "individual")?;
                doc.abox.add_role(r, a, b);
            }
            "concept" | "role" => {
                arity(&x, args, 1, h)?;
                let n = name_atom(&args[0], "name")?;
                bind(&mut doc.signature, &x, h, n)?;
            }
            "fragment" => {
                arity(&x, args, 1, h)?;
                let t = args[0].atom().and_then(FragmentTag::parse).ok_or_else(|| args[0].err("unknown fragment tag"))?;
                doc.tbox.fragment = Some(t);
                tag_at = Some(x.pos());
            }
            _ => return Err(x.err(format!("unknown item '{h}'"))),
        }
    }
    if let (Some(tag), Some((line, col))) = (doc.tbox.fragment, tag_at) {
        let report = validate_fragment(&doc.tbox, tag);
        if let Some(off) = report.offenses.first() {
            return Err(Error::Parse { line, col, msg: format!("axiom {} violates {tag}: {}", off.axiom, off.reason) });
        }
    }
    Ok(doc)
}

pub fn parse_concept(text: &str) -> Result<Concept> {
    let xs = read_all(text)?;
    match xs.as_slice() {
        [x] => concept_from(x),
        _ => Err(Error::Parse { line: 1, col: 1, msg: "expected exactly one concept".into() }),
    }
}

pub fn parse_axiom(text: &str) -> Result<Axiom> {
    let doc = parse_document(text)?;
    match (doc.tbox.axioms.as_slice(), doc.abox.is_empty()) {
        ([a], true) => Ok(a.clone()),
        _ => Err(Error::Parse { line: 1, col: 1, msg: "expected exactly one axiom".into() }),
    }
}

/// Signature file: one `concept NAME` or `role NAME` per line, `;` comments.
pub fn parse_signature(text: &str) -> Result<Signature> {
    let mut sig = Signature::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split(';').next().unwrap_or("");
        let mut words = line.split_whitespace();
        let Some(kind) = words.next() else { continue };
        let col = raw.find(kind).unwrap_or(0) + 1;
        let err = |msg: String| Error::Parse { line: i + 1, col, msg };
        let name = words.next().ok_or_else(|| err(format!("'{kind}' needs a name")))?;
        if words.next().is_some() {
            return Err(err("one entry per line".into()));
        }
        let fresh = match kind {
            "concept" => sig.concepts.insert(name.to_string()),
            "role" => sig.roles.insert(name.to_string()),
            _ => return Err(err(format!("expected 'concept' or 'role', found '{kind}'"))),
        };
        if !fresh {
            return Err(err(format!("duplicate signature binding '{kind} {name}'")));
        }
    }
    Ok(sig)
}

/// Inline signature such as `concept:A,B;role:r`.
pub fn parse_signature_inline(text: &str) -> Result<Signature> {
    let mut sig = Signature::default();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (kind, names) = part
            .split_once(':')
            .ok_or_else(|| Error::Parse { line: 1, col: 1, msg: format!("expected 'concept:' or 'role:' in '{part}'") })?;
        for n in names.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            let fresh = match kind.trim() {
                "concept" => sig.concepts.insert(n.to_string()),
                "role" => sig.roles.insert(n.to_string()),
                k => return Err(Error::Parse { line: 1, col: 1, msg: format!("unknown signature kind '{k}'") }),
            };
            if !fresh {
                return Err(Error::Parse { line: 1, col: 1, msg: format!("duplicate signature binding '{kind} {n}'") });
            }
        }
    }
    Ok(sig)
}
