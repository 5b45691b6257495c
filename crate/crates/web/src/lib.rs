//! WebAssembly bindings for a single-page demo. Each exported function takes
//! a quiver document and returns a JSON report; the plain functions behind
//! them are usable (and tested) natively.

use gentle_hh::boundary::{
    aag_invariant, boundary_cycles, format_aag, is_proper, surface_invariants,
};
use gentle_hh::field::FieldSpec;
use gentle_hh::hochschild::{basis, parse_class, HHExpression};
use gentle_hh::quiver::GentleAlgebra;
use gentle_hh::structure::Structure;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn algebra(doc: &str) -> Result<GentleAlgebra, String> {
    GentleAlgebra::from_json(doc).map_err(|e| e.to_string())
}

fn field(name: &str) -> Result<FieldSpec, String> {
    name.parse()
        .map_err(|e: gentle_hh::error::Error| e.to_string())
}

fn render(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("reports are plain JSON")
}

/// Boundary cycles, AAG invariant, genus and smoothness.
pub fn invariants_report(doc: &str) -> Result<String, String> {
    let a = algebra(doc)?;
    let s = surface_invariants(&a).map_err(|e| e.to_string())?;
    let cycles: Vec<Value> = boundary_cycles(&a)
        .iter()
        .map(|c| json!({ "kind": c.kind_name(), "segments": c.describe(&a), "winding": c.winding }))
        .collect();
    Ok(render(json!({
        "genus": s.genus,
        "boundary_components": s.boundary_components,
        "proper": is_proper(&a),
        "aag": format_aag(&aag_invariant(&a)),
        "cycles": cycles,
    })))
}

/// `dim HH^{n,d}` from the closed-form basis, `"inf"` where infinite.
pub fn dims_report(
    doc: &str,
    field_name: &str,
    nmax: usize,
    dmin: i64,
    dmax: i64,
) -> Result<String, String> {
    let a = algebra(doc)?;
    let f = field(field_name)?;
    if dmin > dmax || nmax > 12 || dmax - dmin > 24 {
        return Err("ranges too large: nmax <= 12 and at most 25 degrees".into());
    }
    let rows: Vec<Value> = (dmin..=dmax)
        .map(|d| {
            let dims: Vec<Value> = (0..=nmax)
                .map(|n| match basis(&a, f, n, d, None) {
                    Ok(b) => json!(b.len()),
                    Err(_) => json!("inf"),
                })
                .collect();
            json!({ "d": d, "dims": dims })
        })
        .collect();
    Ok(render(json!({ "nmax": nmax, "rows": rows })))
}

/// Cup product (`op = "cup"`) or bracket (`op = "bracket"`) of two classes.
pub fn product_report(
    doc: &str,
    field_name: &str,
    op: &str,
    x: &str,
    y: &str,
) -> Result<String, String> {
    let a = algebra(doc)?;
    let f = field(field_name)?;
    let class = |s: &str| {
        parse_class(&a, f, s)
            .map(|c| HHExpression::single(c, f.one()))
            .map_err(|e| e.to_string())
    };
    let (x, y) = (class(x)?, class(y)?);
    let st = Structure::new(&a, f).with_cap(12);
    let result = match op {
        "cup" => st.cup(&x, &y),
        "bracket" => st.bracket(&x, &y),
        _ => return Err(format!("unknown operation `{op}`")),
    }
    .map_err(|e| e.to_string())?;
    Ok(render(json!({ "result": result.display(&a, f) })))
}

#[wasm_bindgen]
pub fn invariants(doc: &str) -> Result<String, JsValue> {
    invariants_report(doc).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn dims(doc: &str, field: &str, nmax: usize, dmin: i32, dmax: i32) -> Result<String, JsValue> {
    dims_report(doc, field, nmax, dmin.into(), dmax.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn product(doc: &str, field: &str, op: &str, x: &str, y: &str) -> Result<String, JsValue> {
    product_report(doc, field, op, x, y).map_err(|e| JsValue::from_str(&e))
}
