//! Browser bindings: diagram, classification and theta for one type at a time.
//!
//! Every export returns a JSON string. The plain functions are also usable
//! from Rust; the `#[wasm_bindgen]` wrappers turn errors into JS exceptions.

use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use sharpblunt::corresp::{theta, ThetaMultiset};
use sharpblunt::fungroup::{omega_prime, OmegaGroup};
use sharpblunt::rootdata::{affine_diagram, FiniteType};
use sharpblunt::triples::{enumerate_blunt, enumerate_sharp, is_strictly_sharp, omega_class, sharp_group, Mode};

#[derive(Serialize)]
struct OmegaInfo {
    index: usize,
    coords: Vec<u64>,
    class: String,
}

fn parse_type(ty: &str) -> Result<FiniteType, String> {
    ty.trim().parse().map_err(|e| format!("{e}"))
}

fn omegas(g: &OmegaGroup) -> Vec<OmegaInfo> {
    g.elements()
        .into_iter()
        .enumerate()
        .map(|(index, x)| OmegaInfo { index, class: omega_class(g, &x).to_string(), coords: x })
        .collect()
}

fn pick(g: &OmegaGroup, index: usize) -> Result<Vec<u64>, String> {
    let el = g.elements();
    let n = el.len();
    el.into_iter().nth(index).ok_or_else(|| format!("omega index {index} out of range (group of order {n})"))
}

/// Nodes with marks, bonds of order above 2, and the permutation of each
/// element of the group acting on these nodes.
pub fn diagram_json(ty: &str) -> Result<String, String> {
    let t = parse_type(ty)?;
    let d = affine_diagram(t);
    let g = sharp_group(t);
    let nodes: Vec<Value> =
        d.nodes().map(|s| json!({ "id": s, "mark": d.mark(s), "long": d.is_long(s) })).collect();
    let mut bonds = Vec::new();
    for i in d.nodes() {
        for j in i + 1..d.node_count() {
            let m = d.coxeter(i, j);
            if m != 2 {
                bonds.push(json!({ "a": i, "b": j, "m": m }));
            }
        }
    }
    let actions: Vec<Value> = omegas(&g)
        .into_iter()
        .map(|o| json!({ "index": o.index, "coords": o.coords, "class": o.class, "perm": g.action(&o.coords).images() }))
        .collect();
    Ok(json!({ "type": t.to_string(), "boc": d.boc(), "nodes": nodes, "bonds": bonds, "omega": actions }).to_string())
}

/// `kind` is `sharp` (the type is W') or `blunt` (the type is W). Rows name
/// the nodes removed from the diagram of that type.
pub fn classify_json(kind: &str, ty: &str, omega_index: usize, literal: bool) -> Result<String, String> {
    let t = parse_type(ty)?;
    let mode = if literal { Mode::Literal } else { Mode::Normative };
    let (group, rows) = match kind {
        "sharp" => {
            let g = sharp_group(t);
            let x = pick(&g, omega_index)?;
            let list = enumerate_sharp(t, &x, mode).map_err(|e| e.to_string())?;
            let rows: Vec<Value> = list
                .iter()
                .map(|s| {
                    json!({
                        "removed": s.removed,
                        "subgroup": s.w_prime_i.to_string(),
                        "params": s.params,
                        "case": s.case,
                        "strict": is_strictly_sharp(s),
                    })
                })
                .collect();
            (g, rows)
        }
        "blunt" => {
            let g = omega_prime(t);
            let x = pick(&g, omega_index)?;
            let list = enumerate_blunt(t, &x).map_err(|e| e.to_string())?;
            let rows: Vec<Value> = list
                .iter()
                .map(|b| {
                    json!({
                        "removed": [b.deleted],
                        "subgroup": b.w_j.to_string(),
                        "params": b.params,
                        "case": b.case,
                        "mark": b.mark,
                    })
                })
                .collect();
            (g, rows)
        }
        other => return Err(format!("unknown kind {other:?}, expected sharp or blunt")),
    };
    Ok(json!({ "kind": kind, "type": t.to_string(), "omega": omegas(&group), "rows": rows }).to_string())
}

/// theta of `(W', omega)`; `values` is null when it is 1 or 2 without a choice.
pub fn theta_json(ty: &str, omega_index: usize) -> Result<String, String> {
    let t = parse_type(ty)?;
    let g = sharp_group(t);
    let x = pick(&g, omega_index)?;
    let th = theta(t, &x).map_err(|e| e.to_string())?;
    let entries: Vec<Value> = match &th {
        ThetaMultiset::Values { entries } => {
            entries.iter().map(|e| json!({ "value": e.value, "tag": e.tag, "deleted": e.deleted })).collect()
        }
        ThetaMultiset::OneOrTwo => Vec::new(),
    };
    Ok(json!({ "type": t.to_string(), "values": th.sorted_values(), "entries": entries }).to_string())
}

#[wasm_bindgen]
pub fn diagram(ty: &str) -> Result<String, JsError> {
    diagram_json(ty).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn classify(kind: &str, ty: &str, omega_index: usize, literal: bool) -> Result<String, JsError> {
    classify_json(kind, ty, omega_index, literal).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = theta)]
pub fn theta_export(ty: &str, omega_index: usize) -> Result<String, JsError> {
    theta_json(ty, omega_index).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn e8_diagram() {
        let v = parse(&diagram_json("E8").unwrap());
        assert_eq!(v["nodes"].as_array().unwrap().len(), 9);
        assert_eq!(v["boc"], 6);
        assert_eq!(v["omega"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn c4_sharp_and_blunt() {
        let v = parse(&classify_json("sharp", "C4", 0, false).unwrap());
        assert_eq!(v["rows"][0]["params"], json!([3, 3]));
        let v = parse(&classify_json("blunt", "C4", 0, false).unwrap());
        assert_eq!(v["rows"].as_array().unwrap().len(), 1);
        assert_eq!(v["rows"][0]["params"], json!([5, 3]));
    }

    #[test]
    fn e8_theta() {
        let v = parse(&theta_json("E8", 0).unwrap());
        assert_eq!(v["values"], json!([1, 2, 2, 3, 4, 5, 6]));
        let v = parse(&theta_json("B3", 0).unwrap());
        assert!(v["values"].is_null());
    }

    #[test]
    fn bad_input() {
        assert!(diagram_json("Q3").is_err());
        assert!(classify_json("sharp", "E8", 5, false).is_err());
        assert!(classify_json("round", "E8", 0, false).is_err());
    }
}
