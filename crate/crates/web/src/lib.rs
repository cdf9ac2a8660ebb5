//! Browser bindings for a few read-only computations.
//!
//! Each export returns a JSON string. The plain `*_json` functions hold the
//! logic so they can be tested without a JavaScript host.

use serde_json::json;
use vogel_core::{eval, lambda, lie, quotient, rational, rw, symfunc};
use wasm_bindgen::prelude::*;

/// Keeps a browser tab responsive; x_3 (seven vertices) is the largest
/// element the page offers.
const CAP: usize = 7;

pub fn character_json(algebra: &str, element: &str) -> Result<String, String> {
    quotient::set_degree_cap(CAP);
    let l = lie::by_name(algebra).map_err(|e| e.to_string())?;
    let x = lambda::named(element).map_err(|e| e.to_string())?;
    let c = eval::vogel_character(&x, &l).map_err(|e| e.to_string())?;
    Ok(json!({
        "algebra": l.name(),
        "dim": l.dim(),
        "sdim": l.superdimension(),
        "element": element,
        "value": rational::format(&c),
    })
    .to_string())
}

pub fn chi_json(n: usize) -> Result<String, String> {
    if n > 12 {
        return Err(format!("n = {n} is above 12"));
    }
    let f = symfunc::chi(n);
    let dec = f.lambda_tilde_decomposition().ok_or("chi lies outside the subring")?;
    Ok(json!({
        "n": n,
        "chi": f.to_string(),
        "p": dec.p.to_string(),
        "q": dec.q.to_string(),
    })
    .to_string())
}

pub fn westbury_json() -> String {
    quotient::set_degree_cap(usize::MAX);
    rw::verify_westbury(&rw::RwTable::k3()).to_json()
}

pub fn algebra_names() -> Vec<String> {
    lie::catalog().iter().map(|l| l.name().to_string()).collect()
}

#[wasm_bindgen]
pub fn character(algebra: &str, element: &str) -> Result<String, JsValue> {
    character_json(algebra, element).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn chi(n: usize) -> Result<String, JsValue> {
    chi_json(n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn westbury() -> String {
    westbury_json()
}

#[wasm_bindgen]
pub fn algebras() -> String {
    json!(algebra_names()).to_string()
}
