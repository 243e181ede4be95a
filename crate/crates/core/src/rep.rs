//! Unitary braid group representations on fusion-tree process spaces.
//!
//! Basis vectors are left-associated fusion trees for `n` leaves of one
//! color `a`: `z_k` is the label after fusing the first `k` leaves, with
//! `z_1 = a` and `z_n = 0`, and a state stores `(z_2, …, z_{n−1})`.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::recoupling::RecouplingContext;

pub type CMatrix = DMatrix<Complex64>;

/// Fusion rules with recoupling moves and braiding phases.
pub trait FusionData {
    /// Every label, ascending.
    fn labels(&self) -> Vec<u32>;

    fn admissible(&self, a: u32, b: u32, c: u32) -> bool;

    /// The move `((p a)_z a)_q → (p (a a)_w)_q` as (rows `z`, columns `w`,
    /// real orthogonal matrix).
    fn recouple(&self, p: u32, a: u32, q: u32) -> Result<(Vec<u32>, Vec<u32>, DMatrix<f64>)>;

    /// Phase acquired by the vertex `(a, b → c)` under a positive half twist.
    fn phase(&self, a: u32, b: u32, c: u32) -> Complex64;
}

impl FusionData for RecouplingContext {
    fn labels(&self) -> Vec<u32> {
        (0..=self.max_label()).collect()
    }

    fn admissible(&self, a: u32, b: u32, c: u32) -> bool {
        RecouplingContext::admissible(self, a, b, c)
    }

    fn recouple(&self, p: u32, a: u32, q: u32) -> Result<(Vec<u32>, Vec<u32>, DMatrix<f64>)> {
        let m = self.recoupling_matrix(p, a, q, a)?;
        let (r, c) = m.dim();
        let mat = DMatrix::from_fn(r, c, |i, j| m.entries[i][j]);
        Ok((m.rows.clone(), m.cols.clone(), mat))
    }

    fn phase(&self, a: u32, b: u32, c: u32) -> Complex64 {
        crate::recoupling::braid_phase(self.a(), a, b, c)
    }
}

/// Admissible internal label sequences, lexicographically ordered.
pub fn fusion_states<F: FusionData + ?Sized>(data: &F, n: usize, color: u32) -> Result<Vec<Vec<u32>>> {
    if n < 2 {
        return Err(Error::Domain(format!("process spaces need at least two strands, got {n}")));
    }
    let labels = data.labels();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n - 2);
    fn rec<F: FusionData + ?Sized>(
        data: &F,
        labels: &[u32],
        color: u32,
        prev: u32,
        left: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if left == 0 {
            if data.admissible(prev, color, 0) {
                out.push(cur.clone());
            }
            return;
        }
        for &z in labels {
            if data.admissible(prev, color, z) {
                cur.push(z);
                rec(data, labels, color, z, left - 1, cur, out);
                cur.pop();
            }
        }
    }
    rec(data, &labels, color, color, n - 2, &mut cur, &mut out);
    Ok(out)
}

/// Generator matrices of a braid group representation.
#[derive(Clone, Debug)]
pub struct BraidRep {
    strands: usize,
    color: u32,
    states: Vec<Vec<u32>>,
    generators: Vec<CMatrix>,
}

impl BraidRep {
    /// Builds `σ_1 … σ_{n−1}` on the process space of `n` leaves of `color`
    /// with total charge 0.
    pub fn build<F: FusionData + ?Sized>(data: &F, n: usize, color: u32) -> Result<Self> {
        let states = fusion_states(data, n, color)?;
        if states.is_empty() {
            return Err(Error::Domain(format!("no fusion channel for {n} strands of color {color}")));
        }
        let index: HashMap<&[u32], usize> = states.iter().enumerate().map(|(k, s)| (s.as_slice(), k)).collect();
        let dim = states.len();
        // z_k for k = 1..=n, 1-based
        let z = |s: &[u32], k: usize| -> u32 {
            if k == 1 {
                color
            } else if k == n {
                0
            } else {
                s[k - 2]
            }
        };
        let mut generators = Vec::with_capacity(n - 1);
        for i in 1..n {
            let mut g = CMatrix::zeros(dim, dim);
            for (col, s) in states.iter().enumerate() {
                if i == 1 {
                    g[(col, col)] = data.phase(color, color, z(s, 2));
                    continue;
                }
                let (p, zi, q) = (z(s, i - 1), z(s, i), z(s, i + 1));
                let (rows, cols, f) = data.recouple(p, color, q)?;
                let src = rows.iter().position(|&x| x == zi).ok_or_else(|| {
                    Error::Domain(format!("state label {zi} missing from recoupling rows"))
                })?;
                for (ri, &zr) in rows.iter().enumerate() {
                    let mut amp = Complex64::new(0.0, 0.0);
                    for (wi, &w) in cols.iter().enumerate() {
                        amp += data.phase(color, color, w) * f[(ri, wi)] * f[(src, wi)];
                    }
                    let mut t = s.clone();
                    t[i - 2] = zr;
                    let row = *index.get(t.as_slice()).ok_or_else(|| {
                        Error::Domain("recoupling leaves the process space".into())
                    })?;
                    g[(row, col)] += amp;
                }
            }
            generators.push(g);
        }
        Ok(Self { strands: n, color, states, generators })
    }

    pub fn from_generators(strands: usize, color: u32, states: Vec<Vec<u32>>, generators: Vec<CMatrix>) -> Self {
        Self { strands, color, states, generators }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn color(&self) -> u32 {
        self.color
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[Vec<u32>] {
        &self.states
    }

    /// `ρ(σ_i)`, 1-based.
    pub fn generator(&self, i: usize) -> &CMatrix {
        &self.generators[i - 1]
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    fn check(&self, b: &BraidWord) -> Result<()> {
        if b.strands() as usize != self.strands {
            return Err(Error::DimensionMismatch { expected: self.strands, got: b.strands() as usize });
        }
        Ok(())
    }

    /// `ρ(l_1) ρ(l_2) … ρ(l_m)`.
    pub fn image(&self, b: &BraidWord) -> Result<CMatrix> {
        self.check(b)?;
        let mut m = CMatrix::identity(self.dim(), self.dim());
        for l in b.letters() {
            let g = &self.generators[l.index as usize - 1];
            m = if l.positive { m * g } else { m * g.adjoint() };
        }
        Ok(m)
    }

    /// `ρ(b) v` without forming the full image.
    pub fn apply(&self, b: &BraidWord, v: &nalgebra::DVector<Complex64>) -> Result<nalgebra::DVector<Complex64>> {
        self.check(b)?;
        let mut v = v.clone();
        for l in b.letters().iter().rev() {
            let g = &self.generators[l.index as usize - 1];
            v = if l.positive { g * v } else { g.adjoint() * v };
        }
        Ok(v)
    }

    /// Position of a state in the basis.
    pub fn state_index(&self, s: &[u32]) -> Option<usize> {
        self.states.iter().position(|t| t == s)
    }

    /// Largest `‖g†g − I‖` (max entry) over the generators.
    pub fn unitarity_residual(&self) -> f64 {
        self.generators.iter().map(unitarity_residual).fold(0.0, f64::max)
    }

    /// Largest `‖σ_i σ_{i+1} σ_i − σ_{i+1} σ_i σ_{i+1}‖` (max entry).
    pub fn braid_relation_residual(&self) -> f64 {
        let g = &self.generators;
        (0..g.len().saturating_sub(1))
            .map(|i| max_abs(&(&g[i] * &g[i + 1] * &g[i] - &g[i + 1] * &g[i] * &g[i + 1])))
            .fold(0.0, f64::max)
    }

    /// Largest `‖σ_i σ_j − σ_j σ_i‖` for `|i − j| > 1`.
    pub fn far_commutation_residual(&self) -> f64 {
        let g = &self.generators;
        let mut worst: f64 = 0.0;
        for i in 0..g.len() {
            for j in i + 2..g.len() {
                worst = worst.max(max_abs(&(&g[i] * &g[j] - &g[j] * &g[i])));
            }
        }
        worst
    }
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn unitarity_residual(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_abs(&(m.adjoint() * m - CMatrix::identity(n, n)))
}

/// Frobenius distance `‖m − n‖_F`.
pub fn frobenius_distance(m: &CMatrix, n: &CMatrix) -> f64 {
    (m - n).iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}
