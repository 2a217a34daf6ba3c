//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each exported function takes an ADE label such as `"E6"` and returns a JSON
//! string. The `*_json` functions without bindings are plain Rust so they can
//! be tested natively.

use mckay_core::{verify_local, AdeLabel, CycNum, LocalModel};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn model(label: &str, seed: u64) -> Result<LocalModel, String> {
    let label: AdeLabel = label.trim().parse().map_err(|e: mckay_core::Error| e.to_string())?;
    LocalModel::from_label(label, seed).map_err(|e| e.to_string())
}

fn text(x: &CycNum) -> String {
    x.to_string()
}

pub fn mckay_graph_json(label: &str, seed: u64) -> Result<String, String> {
    let m = model(label, seed)?;
    let g = &m.graph;
    Ok(json!({
        "group": m.name(),
        "order": m.group.order(),
        "affine": g.affine_label().to_string(),
        "finite": g.finite_label().to_string(),
        "dims": g.dims,
        "adjacency": g.adjacency,
        "trivial": g.trivial_vertex,
        "dot": g.to_dot(&m.name()),
    })
    .to_string())
}

pub fn character_table_json(label: &str, seed: u64) -> Result<String, String> {
    let m = model(label, seed)?;
    let t = &m.table;
    let rows: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(text).collect()).collect();
    let numeric: Vec<Vec<[f64; 2]>> = t
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let c = x.to_complex();
                    [c.re, c.im]
                })
                .collect()
        })
        .collect();
    Ok(json!({
        "group": m.name(),
        "order": t.order,
        "prime": t.prime,
        "class_sizes": t.class_sizes,
        "class_orders": t.class_orders,
        "degrees": t.degrees,
        "rows": rows,
        "numeric": numeric,
    })
    .to_string())
}

pub fn verify_local_json(label: &str, seed: u64) -> Result<String, String> {
    let m = model(label, seed)?;
    let report = verify_local(&m);
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "pass": c.pass,
                "detail": c.detail,
                "witness": c.witness.as_ref().map(|w| format!("{} · {}", w.left, w.right)),
            })
        })
        .collect();
    let phi: Vec<Vec<String>> = m.map.matrix.to_rows().iter().map(|r| r.iter().map(text).collect()).collect();
    Ok(json!({
        "group": m.name(),
        "pass": report.pass,
        "checks": checks,
        "diagnostic": report.diagnostic,
        "rows": m.map.row_labels,
        "cols": m.map.col_labels,
        "phi": phi,
    })
    .to_string())
}

fn to_js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = mckayGraph)]
pub fn mckay_graph(label: &str, seed: u32) -> Result<String, JsValue> {
    to_js(mckay_graph_json(label, seed.into()))
}

#[wasm_bindgen(js_name = characterTable)]
pub fn character_table(label: &str, seed: u32) -> Result<String, JsValue> {
    to_js(character_table_json(label, seed.into()))
}

#[wasm_bindgen(js_name = verifyLocal)]
pub fn verify_local_js(label: &str, seed: u32) -> Result<String, JsValue> {
    to_js(verify_local_json(label, seed.into()))
}
