//! Browser bindings. Each export takes plain strings and numbers and returns
//! a JSON document; errors come back as a thrown string.

use std::sync::Arc;

use cofilt::comod::Built;
use cofilt::coordalg::parse_group;
use cofilt::filtfun::{filtration_dims, Source};
use cofilt::growth::classify;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Ceilings that keep a page responsive.
pub const MAX_DMAX: u32 = 40;
pub const MAX_AMBIENT_DIM: usize = 5_000;

fn check_dmax(dmax: u32) -> Result<(), String> {
    if dmax > MAX_DMAX {
        return Err(format!("d_max is limited to {MAX_DMAX} here"));
    }
    Ok(())
}

fn check_ambient(dim: usize) -> Result<(), String> {
    if dim > MAX_AMBIENT_DIM {
        return Err(format!("ambient dimension {dim} exceeds {MAX_AMBIENT_DIM}"));
    }
    Ok(())
}

/// `{"group", "dims"}` with `dims[d] = dim O(G)_{<=d}`.
pub fn coordinate_dims_json(group: &str, dmax: u32) -> Result<String, String> {
    check_dmax(dmax)?;
    let g = parse_group(group).map_err(|e| e.to_string())?;
    let mut dims = Vec::with_capacity(dmax as usize + 1);
    for d in 0..=dmax {
        let n = g.filtration_dim(d);
        check_ambient(n)?;
        dims.push(n);
    }
    Ok(json!({ "group": g.to_string(), "dims": dims }).to_string())
}

/// `{"group", "module", "dims", "stabilized_at"}` for `M_{O(G)_{<=d}}`.
pub fn module_filtration_json(group: &str, module: &str, dmax: u32) -> Result<String, String> {
    check_dmax(dmax)?;
    let g = Arc::new(parse_group(group).map_err(|e| e.to_string())?);
    let built = Built::parse(module, &g).map_err(|e| e.to_string())?;
    let res = match &built {
        Built::Finite(m) => {
            check_ambient(m.dim())?;
            filtration_dims(Source::Finite(m), dmax)
        }
        Built::Stream(s) => {
            let top = s.generation(s.sufficiency(dmax)).map_err(|e| e.to_string())?;
            check_ambient(top.dim())?;
            filtration_dims(Source::Stream(s), dmax)
        }
    }
    .map_err(|e| e.to_string())?;
    Ok(json!({
        "group": g.to_string(),
        "module": module.trim(),
        "dims": res.dims(),
        "stabilized_at": res.stabilized_at(),
    })
    .to_string())
}

/// Classifies a comma- or space-separated sequence indexed from `d = 0`.
/// `p = 0` means no characteristic context.
pub fn classify_growth_json(seq: &str, p: u32) -> Result<String, String> {
    let values = seq
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| format!("`{s}` is not a non-negative integer"))
        })
        .collect::<Result<Vec<u64>, String>>()?;
    let report = classify(&values, 0, (p > 0).then_some(p), None).map_err(|e| e.to_string())?;
    Ok(json!({
        "class": report.class.to_string(),
        "window": [report.window.0, report.window.1],
        "r2": report.fit.map(|f| f.r2),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn coordinate_dims(group: &str, dmax: u32) -> Result<String, JsValue> {
    coordinate_dims_json(group, dmax).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn module_filtration(group: &str, module: &str, dmax: u32) -> Result<String, JsValue> {
    module_filtration_json(group, module, dmax).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify_growth(seq: &str, p: u32) -> Result<String, JsValue> {
    classify_growth_json(seq, p).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn engine_version() -> String {
    cofilt::VERSION.to_string()
}
