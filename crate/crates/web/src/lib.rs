//! Browser bindings: each export takes document text and a signature
//! (inline `concept:A;role:r` or signature-file text) and returns a JSON
//! report, or `{"error": ...}`.

use insep::eldiff::DiffOptions;
use insep::safety::ModuleKind;
use insep::syntax::{detect_fragment, parse_document, parse_signature, parse_signature_inline, Signature, TBox};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn tbox(text: &str, which: &str) -> Result<TBox, String> {
    parse_document(text).map(|d| d.tbox).map_err(|e| format!("{which}: {e}"))
}

fn sigma(text: &str) -> Result<Signature, String> {
    let r = if text.contains(':') { parse_signature_inline(text) } else { parse_signature(text) };
    r.map_err(|e| format!("signature: {e}"))
}

fn finish(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn strings<'a>(xs: impl IntoIterator<Item = &'a String>) -> Value {
    Value::from(xs.into_iter().cloned().collect::<Vec<_>>())
}

/// EL concept difference of `t2` over `t1`.
#[wasm_bindgen]
pub fn el_diff(t1: &str, t2: &str, sig: &str) -> String {
    finish((|| {
        let (t1, t2, s) = (tbox(t1, "t1")?, tbox(t2, "t2")?, sigma(sig)?);
        let r = insep::eldiff::el_diff(&t1, &t2, &s, DiffOptions::default()).map_err(|e| e.to_string())?;
        Ok(json!({
            "fragment": { "t1": detect_fragment(&t1).as_str(), "t2": detect_fragment(&t2).as_str() },
            "inseparable": r.inseparable,
            "lhsWitnesses": strings(&r.lhs_witnesses),
            "rhsWitnesses": strings(&r.rhs_witnesses),
            "examples": r.examples.iter().map(|e| json!({ "axiom": e.axiom.to_string(), "side": e.side.as_str() })).collect::<Vec<_>>(),
        }))
    })())
}

/// Whether the TBox is model inseparable from the empty TBox.
#[wasm_bindgen]
pub fn model_insep_empty(t: &str, sig: &str) -> String {
    finish((|| {
        let (t, s) = (tbox(t, "tbox")?, sigma(sig)?);
        let r = insep::safety::model_insep_empty(&t, &s).map_err(|e| e.to_string())?;
        Ok(json!({
            "fragment": detect_fragment(&t).as_str(),
            "safe": r.safe,
            "directWitnesses": strings(&r.direct_witnesses),
            "countermodel": r.countermodel.map(|m| m.to_string()),
        }))
    })())
}

/// Locality-based module; `kind` is `bot-syntactic` or `empty-semantic`.
#[wasm_bindgen]
pub fn extract_module(t: &str, sig: &str, kind: &str) -> String {
    finish((|| {
        let (t, s) = (tbox(t, "tbox")?, sigma(sig)?);
        let k = ModuleKind::parse(kind).ok_or_else(|| format!("unknown module kind '{kind}'"))?;
        let m = insep::safety::extract_module(&t, &s, k).map_err(|e| e.to_string())?;
        Ok(json!({
            "fragment": detect_fragment(&t).as_str(),
            "indices": m.indices,
            "module": m.module.axioms.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "iterations": m.iterations,
        }))
    })())
}
