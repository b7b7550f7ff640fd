use std::collections::BTreeSet;
use std::path::Path;

use insep::chase::{build_generating_structure_capped, witness_mode, GeneratingStructure};
use insep::eldiff::{el_diff, DiffOptions};
use insep::interp::{parse_interpretation, FiniteInterpretation, SimTable};
use insep::qgames::{kb_cq_entails_with, kb_cq_inseparable_with, tbox_cq_entails_dllite_with, GameOptions, GameReport, Variant};
use insep::reasoner::{kb_consistent, WitnessMode};
use insep::safety::{extract_module, locality, model_insep_empty, LocalityKind, ModuleKind};
use insep::syntax::{detect_fragment, validate_fragment, FragmentTag, Signature, TBox, KB};
use insep::Error;
use serde_json::{json, Value};

use crate::config::{load_document, load_sigma, read, RunConfig};
use crate::{corpus, Command, CorpusAction, Failure, KbArgs, Report};

/// Nodes allowed when building a distinguishing concept.
const DISTINGUISH_CAP: usize = 64;

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Report, Failure> {
    match cmd {
        Command::Parse { file, fragment } => parse(file, fragment.as_deref()),
        Command::Diff { t1, t2, sigma, lhs_only, .. } => diff(t1, t2, sigma, *lhs_only, cfg),
        Command::Safety { tbox, sigma } => safety(tbox, sigma),
        Command::Locality { tbox, sigma, kind } => locality_cmd(tbox, sigma, kind),
        Command::Module { tbox, sigma, kind } => module(tbox, sigma, kind),
        Command::Chase { kb, abox, depth } => chase(kb, abox.as_deref(), *depth, cfg),
        Command::Sim { i1, i2, sigma, kind, d1, d2 } => sim(i1, i2, sigma, kind == "bisim", d1.as_deref(), d2.as_deref()),
        Command::KbEntail(a) => kb_entail(a, cfg, false),
        Command::KbInsep(a) => kb_entail(a, cfg, true),
        Command::TboxEntailDllite { t1, t2, sigma1, sigma2, variant } => tbox_entail(t1, t2, sigma1, sigma2, variant.as_deref(), cfg),
        Command::Corpus { action: CorpusAction::Run { dir, bless } } => corpus::run_dir(dir, *bless, cfg),
    }
}

fn tbox(path: &Path) -> Result<TBox, Failure> {
    Ok(load_document(path)?.tbox)
}

fn strings<'a>(xs: impl IntoIterator<Item = &'a String>) -> Value {
    Value::from(xs.into_iter().cloned().collect::<Vec<_>>())
}

fn sig_json(s: &Signature) -> Value {
    json!({ "concepts": strings(&s.concepts), "roles": strings(&s.roles) })
}

fn lines(text: &str) -> Value {
    Value::from(text.lines().map(String::from).collect::<Vec<_>>())
}

fn parse(file: &Path, fragment: Option<&str>) -> Result<Report, Failure> {
    let doc = load_document(file)?;
    let detected = detect_fragment(&doc.tbox);
    let mut sig = doc.tbox.sig().union(&doc.abox.sig());
    sig = sig.union(&doc.signature);
    let mut out = json!({
        "command": "parse",
        "variant": "parser",
        "fragment": detected.as_str(),
        "axioms": doc.tbox.axioms.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "assertions": lines(&doc.abox.to_string()),
        "individuals": strings(&doc.abox.individuals()),
        "signature": sig_json(&sig),
    });
    if let Some(tag) = fragment {
        let tag = FragmentTag::parse(tag).ok_or_else(|| Failure::usage(format!("unknown fragment '{tag}'")))?;
        let rep = validate_fragment(&doc.tbox, tag);
        if !rep.is_valid() {
            let o = &rep.offenses[0];
            return Err(Error::Fragment { fragment: tag.to_string(), msg: format!("axiom {} {}: {}", o.index, o.axiom, o.reason) }.into());
        }
        out["validated"] = json!(tag.as_str());
    }
    Ok(Report::json(out))
}

fn diff(t1: &Path, t2: &Path, sigma: &str, lhs_only: bool, cfg: &RunConfig) -> Result<Report, Failure> {
    let (t1, t2, sigma) = (tbox(t1)?, tbox(t2)?, load_sigma(sigma)?);
    let opts = DiffOptions { examples: cfg.example_cap, lhs_only };
    let r = el_diff(&t1, &t2, &sigma, opts)?;
    let variant = if lhs_only || r.partial { "lhs" } else { "lhs+rhs" };
    Ok(Report::json(json!({
        "command": "diff",
        "variant": variant,
        "fragment": { "t1": detect_fragment(&t1).as_str(), "t2": detect_fragment(&t2).as_str() },
        "inseparable": r.inseparable,
        "partial": r.partial,
        "lhsWitnesses": strings(&r.lhs_witnesses),
        "rhsWitnesses": strings(&r.rhs_witnesses),
        "examples": r.examples.iter().map(|e| json!({ "axiom": e.axiom.to_string(), "side": e.side.as_str() })).collect::<Vec<_>>(),
        "truncated": strings(&r.truncated),
    })))
}

fn safety(t: &Path, sigma: &str) -> Result<Report, Failure> {
    let (t, sigma) = (tbox(t)?, load_sigma(sigma)?);
    let r = model_insep_empty(&t, &sigma)?;
    let indirect: serde_json::Map<String, Value> = r.indirect_witnesses.iter().map(|(a, s)| (a.clone(), strings(s))).collect();
    Ok(Report::json(json!({
        "command": "safety",
        "variant": "dependencies",
        "fragment": detect_fragment(&t).as_str(),
        "safe": r.safe,
        "directWitnesses": strings(&r.direct_witnesses),
        "indirectWitnesses": indirect,
        "countermodel": r.countermodel.map(|m| lines(&m.to_string())),
    })))
}

fn locality_cmd(t: &Path, sigma: &str, kind: &str) -> Result<Report, Failure> {
    let (t, sigma) = (tbox(t)?, load_sigma(sigma)?);
    let kind = LocalityKind::parse(kind).ok_or_else(|| Failure::usage(format!("unknown locality kind '{kind}'")))?;
    let r = locality(&t, &sigma, kind)?;
    Ok(Report::json(json!({
        "command": "locality",
        "variant": kind.as_str(),
        "fragment": detect_fragment(&t).as_str(),
        "local": r.local,
        "nonlocal": r.nonlocal,
        "fallback": r.fallback,
    })))
}

fn module(t: &Path, sigma: &str, kind: &str) -> Result<Report, Failure> {
    let (t, sigma) = (tbox(t)?, load_sigma(sigma)?);
    let kind = ModuleKind::parse(kind).ok_or_else(|| Failure::usage(format!("unknown module kind '{kind}'")))?;
    let m = extract_module(&t, &sigma, kind)?;
    Ok(Report::json(json!({
        "command": "module",
        "variant": kind.as_str(),
        "fragment": detect_fragment(&t).as_str(),
        "indices": m.indices,
        "module": m.module.axioms.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "trace": m.trace,
        "iterations": m.iterations,
        "fallback": m.fallback,
    })))
}

fn mode_str(m: WitnessMode) -> &'static str {
    match m {
        WitnessMode::El => "el",
        WitnessMode::DlLite => "dllite",
        WitnessMode::Horn => "horn",
    }
}

fn load_kb(t: &Path, a: Option<&Path>) -> Result<KB, Failure> {
    let doc = load_document(t)?;
    let mut kb = KB::new(doc.tbox, doc.abox);
    if let Some(a) = a {
        let extra = load_document(a)?;
        kb.tbox.axioms.extend(extra.tbox.axioms);
        kb.abox.concept_assertions.extend(extra.abox.concept_assertions);
        kb.abox.role_assertions.extend(extra.abox.role_assertions);
    }
    Ok(kb)
}

fn chase(path: &Path, abox: Option<&Path>, depth: Option<usize>, cfg: &RunConfig) -> Result<Report, Failure> {
    let kb = load_kb(path, abox)?;
    let mode = witness_mode(&kb.tbox)?;
    let mut out = json!({
        "command": "chase",
        "variant": mode_str(mode),
        "fragment": detect_fragment(&kb.tbox).as_str(),
    });
    let g: GeneratingStructure = match build_generating_structure_capped(&kb, cfg.witness_cap) {
        Err(Error::Inconsistent) => {
            out["consistent"] = json!(false);
            return Ok(Report { json: out, text: Some("inconsistent\n".into()) });
        }
        r => r?,
    };
    out["consistent"] = json!(true);
    out["elements"] = json!(g.len());
    out["witnesses"] = json!(g.witnesses().count());
    let dump = match depth {
        Some(d) => {
            let p = g.unravel(d)?;
            out["depth"] = json!(d);
            out["elements"] = json!(p.interpretation.len());
            p.interpretation.to_string()
        }
        None => g.to_string(),
    };
    out["structure"] = lines(&dump);
    Ok(Report { json: out, text: Some(dump) })
}

fn element(i: &FiniteInterpretation, id: Option<&str>, which: &str) -> Result<usize, Failure> {
    match id {
        Some(id) => i.elem(id).ok_or_else(|| Failure::usage(format!("{which}: no element '{id}'"))),
        None if i.is_empty() => Err(Failure::usage(format!("{which}: empty interpretation"))),
        None => Ok(0),
    }
}

fn sim(i1: &Path, i2: &Path, sigma: &str, bisim: bool, d1: Option<&str>, d2: Option<&str>) -> Result<Report, Failure> {
    let src = parse_interpretation(&read(i1)?).map_err(|e| Failure::from(e).context(i1))?;
    let dst = parse_interpretation(&read(i2)?).map_err(|e| Failure::from(e).context(i2))?;
    let sigma = load_sigma(sigma)?;
    let (x, y) = (element(&src, d1, "i1")?, element(&dst, d2, "i2")?);
    let t = SimTable::compute(&src, &dst, &sigma, bisim);
    let kind = if bisim { "bisimulation" } else { "simulation" };
    let holds = t.alive(x, y);
    let mut out = json!({
        "command": "sim",
        "variant": kind,
        "fragment": if bisim { "ALC" } else { "EL" },
        "d1": src.elems[x],
        "d2": dst.elems[y],
        "holds": holds,
    });
    let text;
    if holds {
        let pairs: BTreeSet<(String, String)> = t.pairs().into_iter().map(|(a, b)| (src.elems[a].clone(), dst.elems[b].clone())).collect();
        text = pairs.iter().map(|(a, b)| format!("{a} {b}\n")).collect();
        out["witness"] = json!(pairs.into_iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>());
    } else {
        text = "none\n".to_string();
        out["witness"] = json!("none");
        if let Some((c, truncated)) = t.distinguishing(x, y, DISTINGUISH_CAP) {
            out["distinguishing"] = json!(c.to_string());
            out["truncated"] = json!(truncated);
        }
    }
    Ok(Report { json: out, text: Some(text) })
}

fn variant(v: Option<&str>) -> Result<Option<Variant>, Failure> {
    v.map(|s| Variant::parse(s).ok_or_else(|| Failure::usage(format!("unknown variant '{s}'")))).transpose()
}

fn game_json(r: &GameReport) -> Value {
    let sep = r.separation.as_ref().map(|s| {
        json!({
            "query": s.query.to_string(),
            "tuple": s.tuple,
            "confirmed": s.confirmed,
        })
    });
    json!({
        "entailed": r.entailed,
        "variant": r.variant.as_str(),
        "triage": r.triage,
        "states": r.states,
        "rounds": r.rounds,
        "failure": r.failure,
        "separation": sep,
    })
}

fn kb_fragments(k1: &KB, k2: &KB) -> Value {
    json!({ "t1": detect_fragment(&k1.tbox).as_str(), "t2": detect_fragment(&k2.tbox).as_str() })
}

fn kb_entail(a: &KbArgs, cfg: &RunConfig, both: bool) -> Result<Report, Failure> {
    let k1 = load_kb(&a.t1, a.a1.as_deref())?;
    let k2 = load_kb(&a.t2, a.a2.as_deref())?;
    let sigma = load_sigma(&a.sigma)?;
    let opts = GameOptions { rooted: a.rooted, variant: variant(a.variant.as_deref())?, witness_cap: cfg.witness_cap };
    let query = if a.rooted { "rCQ" } else { "CQ" };
    if both {
        let r = kb_cq_inseparable_with(&k1, &k2, &sigma, &opts)?;
        return Ok(Report::json(json!({
            "command": "kb-insep",
            "variant": r.forward.variant.as_str(),
            "fragment": kb_fragments(&k1, &k2),
            "queries": query,
            "inseparable": r.inseparable,
            "forward": game_json(&r.forward),
            "backward": game_json(&r.backward),
        })));
    }
    let r = kb_cq_entails_with(&k1, &k2, &sigma, &opts)?;
    let mut out = game_json(&r);
    out["command"] = json!("kb-entail");
    out["fragment"] = kb_fragments(&k1, &k2);
    out["queries"] = json!(query);
    out["consistent"] = json!({ "k1": kb_consistent(&k1)?, "k2": kb_consistent(&k2)? });
    Ok(Report::json(out))
}

fn tbox_entail(t1: &Path, t2: &Path, s1: &str, s2: &str, v: Option<&str>, cfg: &RunConfig) -> Result<Report, Failure> {
    let (t1, t2) = (tbox(t1)?, tbox(t2)?);
    let (s1, s2) = (load_sigma(s1)?, load_sigma(s2)?);
    let opts = GameOptions { rooted: false, variant: variant(v)?, witness_cap: cfg.witness_cap };
    let r = tbox_cq_entails_dllite_with(&t1, &t2, &s1, &s2, &opts)?;
    let used = match (&r.report, opts.variant) {
        (Some(g), _) => g.variant,
        (None, Some(v)) => v,
        (None, None) if t1.has_inverse() || t2.has_inverse() => Variant::SetState,
        (None, None) => Variant::Forward,
    };
    Ok(Report::json(json!({
        "command": "tbox-entail-dllite",
        "variant": used.as_str(),
        "fragment": { "t1": detect_fragment(&t1).as_str(), "t2": detect_fragment(&t2).as_str() },
        "entailed": r.entailed,
        "cases": r.cases,
        "failingAbox": r.failing_abox.map(|a| lines(&a.to_string())),
        "report": r.report.as_ref().map(game_json),
    })))
}
