use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rep::CMatrix;

/// Shots are split into this many independently seeded streams.
pub const SHOT_CHUNKS: u64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Real,
    Imaginary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HadamardEstimate {
    pub shots: u64,
    pub zero_count: u64,
    /// `2·zero_count/shots − 1`.
    pub estimate: f64,
    /// Binomial standard error of `estimate`.
    pub stderr: f64,
    pub part: Part,
    pub seed: u64,
    /// `Re` or `Im` of `⟨ψ|U|ψ⟩`.
    pub exact: f64,
    pub warnings: Vec<String>,
}

/// Counts of the ancilla reading `0` for a probability-`p` outcome.
///
/// The controlled-`U` circuit prepares `(|0⟩|ψ⟩ + |1⟩U|ψ⟩)/√2` (with an
/// extra `−i` on the second branch for the imaginary part) and measures
/// the ancilla in the Hadamard basis; only its outcome probability enters.
fn sample_zeros(p: f64, shots: u64, seed: u64) -> u64 {
    let chunk = |c: u64| {
        let lo = shots * c / SHOT_CHUNKS;
        let hi = shots * (c + 1) / SHOT_CHUNKS;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c);
        Binomial::new(hi - lo, p).expect("p clamped to [0, 1]").sample(&mut rng)
    };
    #[cfg(feature = "parallel")]
    let total = (0..SHOT_CHUNKS).into_par_iter().map(chunk).sum();
    #[cfg(not(feature = "parallel"))]
    let total = (0..SHOT_CHUNKS).map(chunk).sum();
    total
}

/// Estimates `Re⟨ψ|U|ψ⟩` or `Im⟨ψ|U|ψ⟩` from `shots` simulated ancilla
/// measurements. A non-unit `ψ` is normalized and a warning recorded.
pub fn hadamard_test(u: &CMatrix, psi: &DVector<Complex64>, shots: u64, part: Part, seed: u64) -> Result<HadamardEstimate> {
    if u.nrows() != u.ncols() || u.nrows() != psi.len() {
        return Err(Error::DimensionMismatch { expected: u.nrows(), got: psi.len() });
    }
    if shots == 0 {
        return Err(Error::Domain("shots must be at least 1".into()));
    }
    let mut warnings = Vec::new();
    let norm = psi.norm();
    if norm == 0.0 {
        return Err(Error::Domain("the state vector is zero".into()));
    }
    let psi = if (norm - 1.0).abs() > 1e-12 {
        warnings.push(format!("state had norm {norm:.6}; normalized"));
        psi / Complex64::new(norm, 0.0)
    } else {
        psi.clone()
    };
    let amp = psi.dotc(&(u * &psi));
    let exact = match part {
        Part::Real => amp.re,
        Part::Imaginary => amp.im,
    };
    let p = (0.5 + 0.5 * exact).clamp(0.0, 1.0);
    let zeros = sample_zeros(p, shots, seed);
    let freq = zeros as f64 / shots as f64;
    Ok(HadamardEstimate {
        shots,
        zero_count: zeros,
        estimate: 2.0 * freq - 1.0,
        stderr: 2.0 * (freq * (1.0 - freq) / shots as f64).sqrt(),
        part,
        seed,
        exact,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEstimate {
    pub estimate: (f64, f64),
    /// Standard errors of the real and imaginary parts.
    pub stderr: (f64, f64),
    pub exact: (f64, f64),
    pub shots_per_element: u64,
    pub seed: u64,
}

/// `tr U` from Hadamard tests on every basis vector, both parts.
pub fn hadamard_trace(u: &CMatrix, shots_per_element: u64, seed: u64) -> Result<TraceEstimate> {
    let n = u.nrows();
    let (mut est, mut var) = ((0.0, 0.0), (0.0, 0.0));
    for k in 0..n {
        let e = DVector::from_fn(n, |i, _| Complex64::new(if i == k { 1.0 } else { 0.0 }, 0.0));
        let base = seed.wrapping_add(2 * k as u64);
        let re = hadamard_test(u, &e, shots_per_element, Part::Real, base)?;
        let im = hadamard_test(u, &e, shots_per_element, Part::Imaginary, base.wrapping_add(1))?;
        est.0 += re.estimate;
        est.1 += im.estimate;
        var.0 += re.stderr * re.stderr;
        var.1 += im.stderr * im.stderr;
    }
    let t = u.trace();
    Ok(TraceEstimate {
        estimate: est,
        stderr: (var.0.sqrt(), var.1.sqrt()),
        exact: (t.re, t.im),
        shots_per_element,
        seed,
    })
}
