//! Browser bindings for ringcode: maximal partitions, maximal rings of a
//! given size, and n-Choose-Two solvability over a chosen ring.

use ringcode::dominance::{self, parse_factored_size};
use ringcode::network::{self, solve_brute, SolveOptions};
use ringcode::partitions;
use ringcode::ring::Ring;
use wasm_bindgen::prelude::*;

/// Largest n accepted by the page; bigger searches freeze the tab.
pub const PAGE_CHOOSE_TWO_LIMIT: usize = 6;

/// Search budget for the page, kept well under the native default.
pub const PAGE_BUDGET: u64 = 1 << 22;

/// One maximal partition of `k` per line.
pub fn maximal_partitions_text(k: u32) -> Result<String, String> {
    let ps = partitions::maximal_partitions(k).map_err(|e| e.to_string())?;
    Ok(ps
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join("\n"))
}

/// One maximal ring per line for a size such as `2^7*3^5*5^2` or `360`.
pub fn maximal_rings_text(size: &str) -> Result<String, String> {
    let f = parse_factored_size(size).map_err(|e| e.to_string())?;
    let rings = dominance::maximal_rings(&f).map_err(|e| e.to_string())?;
    Ok(rings
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join("\n"))
}

/// Solves n-Choose-Two over `ring`: a verdict line, then the code as JSON when one exists.
pub fn choose_two_text(n: usize, ring: &str) -> Result<String, String> {
    if n > PAGE_CHOOSE_TWO_LIMIT {
        return Err(format!(
            "the page handles n <= {PAGE_CHOOSE_TWO_LIMIT}; use the command line for more"
        ));
    }
    let r = Ring::parse(ring).map_err(|e| e.to_string())?;
    let net = network::choose_two(n).map_err(|e| e.to_string())?;
    let opts = SolveOptions {
        budget: PAGE_BUDGET,
        jobs: 1,
    };
    match solve_brute(&net, &r, &opts).map_err(|e| e.to_string())? {
        Some(code) => Ok(format!("SOLVABLE over {r}\n{}", code.to_json())),
        None => Ok(format!("UNSOLVABLE over {r} (search exhausted)")),
    }
}

#[wasm_bindgen]
pub fn maximal_partitions(k: u32) -> Result<String, JsError> {
    maximal_partitions_text(k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn maximal_rings(size: &str) -> Result<String, JsError> {
    maximal_rings_text(size).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn choose_two(n: usize, ring: &str) -> Result<String, JsError> {
    choose_two_text(n, ring).map_err(|e| JsError::new(&e))
}
