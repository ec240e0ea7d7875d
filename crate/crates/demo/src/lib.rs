//! Browser front end: generate an instance, insert its pairs, or ask the
//! oracle for exact values. Every operation takes and returns text, so the
//! page only shuffles strings between text areas.

use mei_core::format::{parse_instance, write_instance, Report};
use mei_core::gen;
use mei_core::mei::{run_mei, Mode};
use mei_core::oracle::summary;
use mei_core::MeiError;
use wasm_bindgen::prelude::*;

/// Largest enumeration the page will try before giving up.
pub const ORACLE_CAP: usize = 20_000;

fn message(e: MeiError) -> String {
    match e {
        MeiError::NotPlanar => "graph is not planar".to_string(),
        other => other.to_string(),
    }
}

/// Instance text for a generator family. `size` is the family's one scale
/// parameter: vertex count for `random`, side length for `grid`, `r` for
/// `I`, `l` for `II` and the pair count `m` for `III`.
pub fn generate_text(family: &str, size: usize, k: usize, seed: u64) -> Result<String, String> {
    let inst = match family {
        "random" => gen::random_planar(size, k, seed),
        "grid" => gen::grid(size, size, k, seed),
        "I" => gen::construction_i(size),
        "II" => gen::construction_ii(size).map_err(message)?,
        "III" => gen::construction_iii(size, 4).map_err(message)?,
        other => return Err(format!("unknown family '{other}'")),
    };
    Ok(write_instance(&inst))
}

/// JSON report of inserting every pair of the instance.
pub fn solve_text(text: &str, strong: bool) -> Result<String, String> {
    let inst = parse_instance(text).map_err(message)?;
    let mode = if strong { Mode::Strong } else { Mode::Weak };
    let r = run_mei(&inst.g, &inst.f, mode).map_err(message)?;
    Ok(Report::new(&r, inst.lb, false, None).to_json())
}

/// JSON with the exact values found by trying every embedding.
pub fn oracle_text(text: &str) -> Result<String, String> {
    let inst = parse_instance(text).map_err(message)?;
    let s = summary(&inst.g, &inst.f, ORACLE_CAP).map_err(message)?;
    Ok(serde_json::to_string_pretty(&s).expect("summary serializes") + "\n")
}

#[wasm_bindgen]
pub fn generate(family: &str, size: usize, k: usize, seed: u32) -> Result<String, JsError> {
    generate_text(family, size, k, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn solve(text: &str, strong: bool) -> Result<String, JsError> {
    solve_text(text, strong).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn oracle(text: &str) -> Result<String, JsError> {
    oracle_text(text).map_err(|e| JsError::new(&e))
}
