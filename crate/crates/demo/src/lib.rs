//! Browser bindings: three operations returning JSON strings for the static
//! page in `www/`.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use gkh_core::checker::{check_gkh, check_kh_prime, two_bridge_check, GkhReport};
use gkh_core::diagram::{build_montesinos, MontesinosDesc};

#[derive(Serialize)]
struct FamilyReport {
    gkh: GkhReport,
    kh: GkhReport,
}

fn numbers(spec: &str) -> Result<Vec<u64>, String> {
    spec.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| format!("`{t}` is not a positive integer")))
        .collect()
}

fn fractions(spec: &str) -> Result<Vec<(u64, u64)>, String> {
    spec.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let parsed = match t.split_once('/') {
                Some((m, n)) => m.parse().ok().zip(n.parse().ok()),
                None => t.parse().ok().map(|n| (1, n)),
            };
            parsed.ok_or_else(|| format!("`{t}` is not a fraction m/n"))
        })
        .collect()
}

fn family_report(desc: &MontesinosDesc) -> String {
    let d = build_montesinos(desc);
    let report = FamilyReport { gkh: check_gkh(&d), kh: check_kh_prime(&d) };
    serde_json::to_string(&report).expect("reports serialize")
}

/// `"11 7 5 2"` to GKH and KH reports for the pretzel link.
pub fn pretzel_json(spec: &str) -> Result<String, String> {
    let desc = MontesinosDesc::pretzel(&numbers(spec)?).map_err(|e| e.to_string())?;
    Ok(family_report(&desc))
}

/// `"3/7 2/5 1/3 1/1"` to GKH and KH reports; a bare `n` means `1/n`.
pub fn montesinos_json(spec: &str) -> Result<String, String> {
    let desc = MontesinosDesc::new(&fractions(spec)?).map_err(|e| e.to_string())?;
    Ok(family_report(&desc))
}

/// The 2-bridge report with unreduced tangle labels.
pub fn two_bridge_json(m: u64, n: u64) -> Result<String, String> {
    let r = two_bridge_check(m, n).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&r).expect("reports serialize"))
}

#[wasm_bindgen]
pub fn pretzel(spec: &str) -> Result<String, JsValue> {
    pretzel_json(spec).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn montesinos(spec: &str) -> Result<String, JsValue> {
    montesinos_json(spec).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn two_bridge(m: u32, n: u32) -> Result<String, JsValue> {
    two_bridge_json(m.into(), n.into()).map_err(|e| JsValue::from_str(&e))
}
