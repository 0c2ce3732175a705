//! Browser bindings. Each operation has a plain Rust form returning a JSON string
//! and a `wasm_bindgen` wrapper that the page in `www/` calls.

use std::str::FromStr;

use serde_json::{Value, json};
use wasm_bindgen::prelude::*;

use wahl::classt::{ClassTTriple, ancestry, classify, enumerate, invariants, smoothing_family, word_string};
use wahl::hjcore::hj_expand;
use wahl::json::{int_value, ints_value, rational_value};
use wahl::toric::{CyclicQuotient, resolution_data};
use wahl::{Characteristic, Int};

/// Largest `max_l` the page may request; the tree doubles with every level.
pub const MAX_TREE_DEPTH: usize = 12;

fn parse(label: &str, s: &str) -> Result<Int, String> {
    Int::from_str(s.trim()).map_err(|_| format!("{label}: {s:?} is not an integer"))
}

fn triple_json(t: &ClassTTriple) -> Value {
    ints_value(&[t.d().clone(), t.n().clone(), t.a().clone()])
}

/// Expansion, resolution data and classification of `n/q`.
pub fn continued_fraction(n: &str, q: &str) -> Result<String, String> {
    let (n, q) = (parse("n", n)?, parse("q", q)?);
    let weights = hj_expand(&n, &q).map_err(|e| e.to_string())?;
    let cq = CyclicQuotient::new(n.clone(), q.clone()).map_err(|e| e.to_string())?;
    let res = resolution_data(&cq);
    let class = classify(&n, &q).map_err(|e| e.to_string())?;
    let v = json!({
        "n": int_value(&n),
        "q": int_value(&q),
        "weights": ints_value(weights.as_slice()),
        "p": ints_value(&res.p),
        "qq": ints_value(&res.q),
        "class": class.kind(),
        "triple": class.triple().map(triple_json),
    });
    Ok(v.to_string())
}

/// Invariants and smoothing family of `T(d, n, a)` in characteristic `p`.
pub fn class_t_record(d: &str, n: &str, a: &str, p: u64) -> Result<String, String> {
    let t = ClassTTriple::new(parse("d", d)?, parse("n", n)?, parse("a", a)?).map_err(|e| e.to_string())?;
    let p = Characteristic::new(p).map_err(|e| e.to_string())?;
    let inv = invariants(&t);
    let fam = smoothing_family(&t, p);
    let cq = t.cyclic_quotient();
    let v = json!({
        "triple": triple_json(&t),
        "n": int_value(cq.n()),
        "q": int_value(cq.q()),
        "l": inv.l,
        "delta": int_value(&inv.delta),
        "b": ints_value(inv.b.as_slice()),
        "r": ints_value(&inv.r),
        "c": inv.c.iter().map(rational_value).collect::<Vec<_>>(),
        "word": word_string(&ancestry(&t)),
        "relation": fam.relation.to_string(),
        "weights": ints_value(&fam.weights),
        "singular_parameters": fam.singular_parameters().iter().map(rational_value).collect::<Vec<_>>(),
    });
    Ok(v.to_string())
}

/// The going-up tree from `(d, 2, 1)` down to length `max_l`, breadth first.
pub fn going_up_tree(d: &str, max_l: usize) -> Result<String, String> {
    if max_l > MAX_TREE_DEPTH {
        return Err(format!("max_l is capped at {MAX_TREE_DEPTH} in the browser"));
    }
    let d = parse("d", d)?;
    let list = enumerate(&d, max_l).map_err(|e| e.to_string())?;
    let nodes: Vec<Value> = list
        .iter()
        .map(|t| {
            let inv = invariants(t);
            json!({
                "triple": triple_json(t),
                "word": word_string(&ancestry(t)),
                "b": ints_value(inv.b.as_slice()),
            })
        })
        .collect();
    Ok(json!({ "d": int_value(&d), "nodes": nodes }).to_string())
}

#[wasm_bindgen(js_name = continuedFraction)]
pub fn continued_fraction_js(n: &str, q: &str) -> Result<String, JsError> {
    continued_fraction(n, q).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = classTRecord)]
pub fn class_t_record_js(d: &str, n: &str, a: &str, p: u32) -> Result<String, JsError> {
    class_t_record(d, n, a, u64::from(p)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = goingUpTree)]
pub fn going_up_tree_js(d: &str, max_l: u32) -> Result<String, JsError> {
    going_up_tree(d, max_l as usize).map_err(|e| JsError::new(&e))
}
