//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON string;
//! failures surface as JavaScript exceptions carrying the error message.

use knotcore::bracket::{bracket_tl, jones_polynomial, normalized_invariant};
use knotcore::fib::fib_braid_rep;
use knotcore::qsim::{hadamard_test, Part, ThreeStrandRep};
use knotcore::{BraidWord, LaurentPoly, Result};
use nalgebra::DVector;
use num_complex::Complex64;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Longest word the page accepts; the bracket is exponential in strands only,
/// but the page should stay responsive.
pub const MAX_LETTERS: usize = 200;
pub const MAX_STRANDS: u32 = 8;

fn parse(word: &str) -> Result<BraidWord> {
    let b = BraidWord::parse(word, None)?;
    if b.len() > MAX_LETTERS || b.strands() > MAX_STRANDS {
        return Err(knotcore::Error::ResourceCap(format!(
            "the demo takes at most {MAX_LETTERS} letters on {MAX_STRANDS} strands"
        )));
    }
    Ok(b)
}

fn poly_pairs(p: &LaurentPoly) -> Value {
    let mut v: Vec<Value> = p.terms().map(|(e, c)| json!([e, c.to_string()])).collect();
    v.reverse();
    Value::Array(v)
}

fn c(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Bracket, normalized invariant and Jones polynomial of the trace closure.
pub fn invariants(word: &str) -> Result<Value> {
    let b = parse(word)?;
    let br = bracket_tl(&b)?;
    let f = normalized_invariant(&b)?;
    let v = jones_polynomial(&b)?;
    Ok(json!({
        "word": b.to_string(),
        "writhe": b.exponent_sum(),
        "bracket": br.to_string(),
        "bracket_terms": poly_pairs(&br),
        "f": f.to_string(),
        "jones": v.to_string(),
    }))
}

/// Image of a braid word in the Fibonacci representation on `n` strands.
pub fn fibonacci(word: &str, n: u32) -> Result<Value> {
    if !(3..=MAX_STRANDS + 4).contains(&n) {
        return Err(knotcore::Error::Domain(format!("strand count must be in 3..={}", MAX_STRANDS + 4)));
    }
    let b = BraidWord::parse(word, Some(n))?;
    let rep = fib_braid_rep(n as usize)?;
    let m = rep.image(&b)?;
    let rows: Vec<Value> = (0..m.nrows()).map(|i| Value::Array((0..m.ncols()).map(|j| c(m[(i, j)])).collect())).collect();
    Ok(json!({
        "word": b.to_string(),
        "dimension": rep.dim(),
        "basis": rep.states(),
        "matrix": rows,
        "trace": c(m.trace()),
        "unitarity_residual": knotcore::rep::unitarity_residual(&m),
    }))
}

/// Hadamard-test estimate of `⟨e_k|Φ(b)|e_k⟩` for a three-strand braid at
/// `A = e^{iθ}`, with the exact value and the bracket it feeds.
pub fn hadamard(word: &str, theta: f64, shots: u32, seed: u32, index: u32, imaginary: bool) -> Result<Value> {
    let b = BraidWord::parse(word, Some(3))?;
    let rep = ThreeStrandRep::at_angle(theta, false)?;
    let u = rep.image(&b)?;
    let k = index as usize;
    if k >= 2 {
        return Err(knotcore::Error::DimensionMismatch { expected: 2, got: k });
    }
    let psi = DVector::from_fn(2, |i, _| Complex64::new(if i == k { 1.0 } else { 0.0 }, 0.0));
    let part = if imaginary { Part::Imaginary } else { Part::Real };
    let e = hadamard_test(&u, &psi, shots.max(1) as u64, part, seed as u64)?;
    Ok(json!({
        "word": b.to_string(),
        "estimate": e.estimate,
        "stderr": e.stderr,
        "exact": e.exact,
        "zero_count": e.zero_count,
        "shots": e.shots,
        "bracket_via_trace": c(rep.bracket_via_trace(&b)?),
    }))
}

fn export(v: Result<Value>) -> std::result::Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = invariants)]
pub fn invariants_js(word: &str) -> std::result::Result<String, JsError> {
    export(invariants(word))
}

#[wasm_bindgen(js_name = fibonacci)]
pub fn fibonacci_js(word: &str, n: u32) -> std::result::Result<String, JsError> {
    export(fibonacci(word, n))
}

#[wasm_bindgen(js_name = hadamard)]
pub fn hadamard_js(word: &str, theta: f64, shots: u32, seed: u32, index: u32, imaginary: bool) -> std::result::Result<String, JsError> {
    export(hadamard(word, theta, shots, seed, index, imaginary))
}
