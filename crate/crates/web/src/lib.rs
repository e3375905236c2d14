//! Three operations for the static page in `www/`. Each returns a JSON
//! string; the `*_json` functions are the same logic without the JS types.

use moufang_toric::atlas::{build_blowup_x1, build_hirzebruch, build_p1, build_p2, enumerate_points, Atlas, Spanning};
use moufang_toric::loops::Finite16;
use moufang_toric::term::{decide_equal, normalize, parse_term, DecideConfig};
use moufang_toric::toric::{check_triangular, FultonCycle};
use serde_json::json;
use wasm_bindgen::prelude::*;

pub fn decide_json(lhs: &str, rhs: &str, seed: u64) -> Result<String, String> {
    let t = parse_term(lhs).map_err(|e| format!("left: {e}"))?;
    let u = parse_term(rhs).map_err(|e| format!("right: {e}"))?;
    let verdict = decide_equal(
        &t,
        &u,
        &DecideConfig {
            seed,
            ..DecideConfig::default()
        },
    );
    Ok(json!({
        "lhs_normal": normalize(&t).to_string(),
        "rhs_normal": normalize(&u).to_string(),
        "verdict": verdict,
    })
    .to_string())
}

pub fn triangular_json(cycle: &str) -> Result<String, String> {
    let c = FultonCycle::parse(cycle).map_err(|e| e.to_string())?;
    let report = check_triangular(&c);
    Ok(json!({"holds": report.holds(), "arcs": report.arcs}).to_string())
}

fn atlas(spec: &str) -> Result<Atlas, String> {
    match spec.split_once(':') {
        None if spec == "p1" => Ok(build_p1()),
        None if spec == "p2" => Ok(build_p2()),
        None if spec == "x1" => Ok(build_blowup_x1()),
        Some(("hirzebruch", a)) => a
            .trim()
            .parse()
            .map(build_hirzebruch)
            .map_err(|_| format!("bad parameter `{a}`")),
        _ => Err(format!("unknown surface `{spec}`")),
    }
}

pub fn count_json(spec: &str) -> Result<String, String> {
    let census = enumerate_points(&atlas(spec)?, &Finite16::new(), Spanning::All).map_err(|e| e.to_string())?;
    serde_json::to_string(&census).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn decide(lhs: &str, rhs: &str, seed: u32) -> Result<String, JsError> {
    decide_json(lhs, rhs, seed.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn triangular(cycle: &str) -> Result<String, JsError> {
    triangular_json(cycle).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn count_points(spec: &str) -> Result<String, JsError> {
    count_json(spec).map_err(|e| JsError::new(&e))
}
