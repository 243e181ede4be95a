//! The Fibonacci model: two labels `0` (vacuum) and `1` (the particle `P`,
//! realized by the 2-projector) at `A = e^{3πi/5}`, with `P ⊗ P = 0 + P`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rep::{BraidRep, CMatrix, FusionData};
use crate::scalars::{loop_value, unit};

/// Scalars of the model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FibConstants {
    pub a: Complex64,
    /// Loop value `δ`.
    pub delta: f64,
    /// Value `Δ` of the closed 2-projector.
    pub big_delta: f64,
    pub tau: f64,
    pub theta: f64,
    pub tet: f64,
    pub alpha_sq: f64,
}

impl FibConstants {
    /// `Δ = δ = (1 + √5)/2` at `A = e^{3πi/5}`.
    pub fn new() -> Self {
        let a = unit(3.0 * PI / 5.0);
        let delta = loop_value(a).re;
        Self::from_deltas(a, delta, delta)
    }

    /// The other root `Δ = (1 − √5)/2` of `Δ² = Δ + 1`, with `δ = Δ` and
    /// `A = e^{iπ/5}`. No golden values are known for this branch.
    pub fn conjugate_branch() -> Self {
        let a = unit(PI / 5.0);
        let delta = loop_value(a).re;
        Self::from_deltas(a, delta, delta)
    }

    fn from_deltas(a: Complex64, delta: f64, big: f64) -> Self {
        let s = delta - 1.0 / delta;
        let theta = s * s * delta - big / delta;
        let tet = s * s * (delta * delta - 2.0) - 2.0 * theta / delta;
        let alpha_sq = big.abs().powi(3).sqrt() / theta;
        Self { a, delta, big_delta: big, tau: 1.0 / big, theta, tet, alpha_sq }
    }

    /// `F` before the vertex rescaling.
    pub fn raw_f(&self) -> DMatrix<f64> {
        let (d, th, t) = (self.big_delta, self.theta, self.tet);
        DMatrix::from_row_slice(2, 2, &[1.0 / d, d / th, th / (d * d), t * d / (th * th)])
    }

    /// `F` after every vertex is rescaled by `α`.
    pub fn rescaled_f(&self) -> DMatrix<f64> {
        let mut f = self.raw_f();
        f[(0, 1)] /= self.alpha_sq;
        f[(1, 0)] *= self.alpha_sq;
        f
    }
}

impl Default for FibConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// `F = [[τ, √τ], [√τ, −τ]]` in the basis `(0, P)`.
pub fn fib_f() -> DMatrix<f64> {
    let tau = FibConstants::new().tau;
    DMatrix::from_row_slice(2, 2, &[tau, tau.sqrt(), tau.sqrt(), -tau])
}

/// Braiding phases `R_0 = A⁸` and `R_P = −A⁴`.
pub fn fib_phase(c: u32) -> Complex64 {
    let a = FibConstants::new().a;
    if c == 0 {
        a.powi(8)
    } else {
        -a.powi(4)
    }
}

/// `R = diag(e^{4πi/5}, −e^{2πi/5})` in the basis `(0, P)`.
pub fn fib_r() -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![fib_phase(0), fib_phase(1)]))
}

/// `(S₁, S₂) = (R, F R F)`.
pub fn fib_b3_generators() -> (CMatrix, CMatrix) {
    let r = fib_r();
    let f = fib_f().map(|x| Complex64::new(x, 0.0));
    let s2 = &f * &r * &f;
    (r, s2)
}

/// Fusion data of the model; label `1` is `P`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Fibonacci;

impl FusionData for Fibonacci {
    fn labels(&self) -> Vec<u32> {
        vec![0, 1]
    }

    fn admissible(&self, a: u32, b: u32, c: u32) -> bool {
        if a > 1 || b > 1 || c > 1 {
            return false;
        }
        // P ⊗ P contains both labels; otherwise the vacuum is neutral
        match a + b + c {
            0 => true,
            1 => false,
            _ => true,
        }
    }

    fn recouple(&self, p: u32, a: u32, q: u32) -> Result<(Vec<u32>, Vec<u32>, DMatrix<f64>)> {
        let rows: Vec<u32> = (0..2).filter(|&z| self.admissible(p, a, z) && self.admissible(z, a, q)).collect();
        let cols: Vec<u32> = (0..2).filter(|&w| self.admissible(a, a, w) && self.admissible(p, w, q)).collect();
        if rows.is_empty() || rows.len() != cols.len() {
            return Err(Error::Domain(format!("no recoupling for ({p}, {a}, {q})")));
        }
        if rows.len() == 2 {
            Ok((rows, cols, fib_f()))
        } else {
            Ok((rows, cols, DMatrix::from_element(1, 1, 1.0)))
        }
    }

    fn phase(&self, a: u32, b: u32, c: u32) -> Complex64 {
        if a == 1 && b == 1 {
            fib_phase(c)
        } else {
            Complex64::new(1.0, 0.0)
        }
    }
}

/// Basis of the process space for `n` particles with trivial total charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessBasis {
    pub n: usize,
    /// Internal labels `(x_1, …, x_{n−2})`; `1` marks `P`.
    pub states: Vec<Vec<u8>>,
}

impl ProcessBasis {
    pub fn dim(&self) -> usize {
        self.states.len()
    }
}

pub fn process_basis(n: usize) -> Result<ProcessBasis> {
    if n < 3 {
        return Err(Error::Domain(format!("process basis needs n >= 3, got {n}")));
    }
    let states = crate::rep::fusion_states(&Fibonacci, n, 1)?
        .into_iter()
        .map(|s| s.into_iter().map(|x| x as u8).collect())
        .collect();
    Ok(ProcessBasis { n, states })
}

/// `f_0 = f_1 = 1`, `f_{k+1} = f_k + f_{k−1}`.
pub fn fibonacci_number(k: usize) -> usize {
    let (mut x, mut y) = (1usize, 1usize);
    for _ in 0..k {
        (x, y) = (y, x + y);
    }
    x
}

/// The Fibonacci representation of `B_n`.
pub fn fib_braid_rep(n: usize) -> Result<BraidRep> {
    if n < 3 {
        return Err(Error::Domain(format!("the Fibonacci representation needs n >= 3, got {n}")));
    }
    BraidRep::build(&Fibonacci, n, 1)
}
