//! Browser bindings: torsion of a configuration, a Chern class explorer and
//! the KeySB divisibility check. Every export has a plain Rust twin returning
//! `Result<String, String>` so the logic is testable off the browser.

use serde_json::json;
use wasm_bindgen::prelude::*;

use kgamma::chern::chern_class;
use kgamma::compute::compute;
use kgamma::kmodel::{Config, KGenerator};
use kgamma::scenarios::{keysb_check, KeySbInstance};
use kgamma::truncring::RingSpec;

fn parse_list(text: &str, what: &str) -> Result<Vec<u32>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|_| format!("{what}: '{s}' is not a non-negative integer")))
        .collect()
}

/// Pretty JSON report for a configuration in the CLI's config format.
pub fn torsion_json(config_json: &str) -> Result<String, String> {
    let config = Config::from_json(config_json).map_err(|e| e.to_string())?;
    let c = compute(&config).map_err(|e| e.to_string())?;
    let r = &c.report;
    let summary: Vec<_> = r
        .per_codim
        .iter()
        .map(|t| json!({"d": t.d, "torsion": t.torsion.divisors_u64(), "free_rank": t.torsion.free_rank}))
        .collect();
    let out = json!({"summary": summary, "full": c.to_json()});
    Ok(serde_json::to_string_pretty(&out).expect("values serialize"))
}

/// `c_j` of `multiplier * (x^{a_1} + ... + x^{a_k})` in `Z[y]/(y_i^{r_i})`.
/// `truncations` is `"r1,r2,..."`, `orbit` is exponent tuples separated by `;`.
pub fn chern_text(truncations: &str, multiplier: u32, orbit: &str, j: u32) -> Result<String, String> {
    let spec = RingSpec::new(parse_list(truncations, "truncations")?).map_err(|e| e.to_string())?;
    let tuples: Vec<Vec<u32>> = orbit
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_list(s, "orbit"))
        .collect::<Result<_, _>>()?;
    if tuples.is_empty() {
        return Err("orbit is empty".into());
    }
    if let Some(t) = tuples.iter().find(|t| t.len() != spec.n()) {
        return Err(format!("exponent tuple {t:?} has {} entries, the ring has {} variables", t.len(), spec.n()));
    }
    if multiplier == 0 {
        return Err("multiplier must be positive".into());
    }
    let g = KGenerator::new(u64::from(multiplier), tuples);
    Ok(chern_class(&g, &spec, j).to_string())
}

/// Alternating coefficient sum for `p` and exponents `m`, with its verdict.
pub fn keysb_text(p: u32, m: &str) -> Result<String, String> {
    let inst = KeySbInstance::new(p, parse_list(m, "m")?).map_err(|e| e.to_string())?;
    let r = keysb_check(&inst);
    Ok(format!("sum = {}; {} by {}", r.sum, if r.divisible { "divisible" } else { "NOT divisible" }, p * p))
}

#[wasm_bindgen]
pub fn torsion(config_json: &str) -> Result<String, JsValue> {
    torsion_json(config_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn chern(truncations: &str, multiplier: u32, orbit: &str, j: u32) -> Result<String, JsValue> {
    chern_text(truncations, multiplier, orbit, j).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn keysb(p: u32, m: &str) -> Result<String, JsValue> {
    keysb_text(p, m).map_err(|e| JsValue::from_str(&e))
}
