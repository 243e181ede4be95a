//! Recoupling theory at `A = e^{iπ/2r}`: quantum integers, loop, theta and
//! tetrahedron evaluations, unitary vertex normalization, the orthogonal
//! recoupling matrices and the local braiding phase.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{loop_value, unit};
use crate::tl::{evaluate_with_cap, is_admissible, JonesWenzl, Network};

/// Real orthogonal change of basis between the two ways of coupling four
/// external labels.
///
/// Rows are the labels `i` with `(a, b, i)` and `(c, d, i)` admissible,
/// columns the labels `j` with `(a, c, j)` and `(b, d, j)` admissible, both
/// ascending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecouplingMatrix {
    pub labels: [u32; 4],
    pub rows: Vec<u32>,
    pub cols: Vec<u32>,
    pub entries: Vec<Vec<f64>>,
}

impl RecouplingMatrix {
    pub fn dim(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    /// Entry for internal labels `(i, j)`, zero when either is not an index.
    pub fn get(&self, i: u32, j: u32) -> f64 {
        match (self.rows.binary_search(&i), self.cols.binary_search(&j)) {
            (Ok(r), Ok(c)) => self.entries[r][c],
            _ => 0.0,
        }
    }

    pub fn transpose(&self) -> Vec<Vec<f64>> {
        let (r, c) = self.dim();
        (0..c).map(|j| (0..r).map(|i| self.entries[i][j]).collect()).collect()
    }

    /// `‖M Mᵀ − I‖∞` (largest absolute entry).
    pub fn orthogonality_residual(&self) -> f64 {
        let (r, c) = self.dim();
        if r != c {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..r {
            for k in 0..r {
                let s: f64 = (0..c).map(|j| self.entries[i][j] * self.entries[k][j]).sum();
                let target = if i == k { 1.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }
}

/// Worst deviations found by [`RecouplingContext::pentagon_hexagon_check`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub pentagon: f64,
    pub hexagon: f64,
    pub pentagon_equations: usize,
    pub hexagon_equations: usize,
}

/// Cached recoupling data at level `r`.
pub struct RecouplingContext {
    r: u32,
    a: Complex64,
    qint: Vec<f64>,
    jw: JonesWenzl<Complex64>,
    tets: RwLock<HashMap<[u32; 6], f64>>,
    matrices: RwLock<HashMap<[u32; 4], Arc<RecouplingMatrix>>>,
}

/// The 24 vertex permutations of the tetrahedron, acting on the edge list
/// `[e01, e02, e03, e12, e13, e23]`.
fn tet_symmetries() -> Vec<[usize; 6]> {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let index = |x: usize, y: usize| {
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        pairs.iter().position(|&p| p == (x, y)).expect("edge")
    };
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    p.iter().for_each(|&x| seen[x] = true);
                    if !seen.iter().all(|&s| s) {
                        continue;
                    }
                    let mut map = [0usize; 6];
                    for (k, &(x, y)) in pairs.iter().enumerate() {
                        map[index(p[x], p[y])] = k;
                    }
                    out.push(map);
                }
            }
        }
    }
    out
}

/// Canonical representative of a tetrahedron labeling under relabeling of
/// its vertices.
pub fn tet_canonical(l: [u32; 6]) -> [u32; 6] {
    thread_local! {
        static SYM: Vec<[usize; 6]> = tet_symmetries();
    }
    SYM.with(|sym| {
        sym.iter()
            .map(|m| {
                let mut out = [0u32; 6];
                for k in 0..6 {
                    out[k] = l[m[k]];
                }
                out
            })
            .min()
            .expect("nonempty group")
    })
}

impl RecouplingContext {
    pub fn new(r: u32) -> Result<Self> {
        if r < 3 {
            return Err(Error::Domain(format!("level r = {r} must be at least 3")));
        }
        let a = unit(PI / (2.0 * r as f64));
        let qint = (0..=2 * r as i64 + 2).map(|n| Self::qint_formula(r, n)).collect();
        let mut jw = JonesWenzl::new(loop_value(a));
        jw.projector(r as usize - 2)?;
        Ok(Self {
            r,
            a,
            qint,
            jw,
            tets: RwLock::new(HashMap::new()),
            matrices: RwLock::new(HashMap::new()),
        })
    }

    fn qint_formula(r: u32, n: i64) -> f64 {
        let t = PI / r as f64;
        (n as f64 * t).sin() / t.sin()
    }

    pub fn level(&self) -> u32 {
        self.r
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    /// Largest usable label, `r − 2`.
    pub fn max_label(&self) -> u32 {
        self.r - 2
    }

    /// `[n] = sin(nπ/r) / sin(π/r)`.
    pub fn quantum_int(&self, n: i64) -> f64 {
        if n >= 0 && (n as usize) < self.qint.len() {
            self.qint[n as usize]
        } else {
            Self::qint_formula(self.r, n)
        }
    }

    /// `[n]! = [1][2]…[n]`.
    pub fn quantum_factorial(&self, n: u32) -> f64 {
        (1..=n as i64).map(|k| self.quantum_int(k)).product()
    }

    /// `Δ_n = (−1)^n [n+1]`.
    pub fn delta_n(&self, n: u32) -> f64 {
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        s * self.quantum_int(n as i64 + 1)
    }

    /// `√Δ_n` taken as `i^n √[n+1]`.
    pub fn sqrt_delta(&self, n: u32) -> Complex64 {
        Complex64::i().powu(n) * self.quantum_int(n as i64 + 1).sqrt()
    }

    /// Parity, triangle inequalities and `a + b + c ≤ 2r − 4`.
    pub fn admissible(&self, a: u32, b: u32, c: u32) -> bool {
        is_admissible(a, b, c) && a + b + c <= 2 * self.r - 4
    }

    fn require(&self, a: u32, b: u32, c: u32) -> Result<()> {
        if self.admissible(a, b, c) {
            Ok(())
        } else {
            Err(Error::Inadmissible(a, b, c))
        }
    }

    /// Closed-form theta evaluation.
    pub fn theta(&self, a: u32, b: u32, c: u32) -> Result<f64> {
        self.require(a, b, c)?;
        let m = (a + b - c) / 2;
        let n = (b + c - a) / 2;
        let p = (a + c - b) / 2;
        let f = |k| self.quantum_factorial(k);
        let sign = if (m + n + p) % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * f(m + n + p + 1) * f(n) * f(m) * f(p) / (f(m + n) * f(n + p) * f(p + m)))
    }

    /// Theta evaluated by projector expansion.
    pub fn theta_by_expansion(&self, a: u32, b: u32, c: u32) -> Result<f64> {
        self.require(a, b, c)?;
        Ok(evaluate_with_cap(&Network::theta(a, b, c)?, &self.jw, usize::MAX)?.re)
    }

    /// `Δ_n` by expanding the closed `P_n`.
    pub fn delta_by_expansion(&self, n: u32) -> Result<f64> {
        if n > self.max_label() {
            return Err(Error::Domain(format!("label {n} exceeds r - 2 = {}", self.max_label())));
        }
        Ok(evaluate_with_cap(&Network::free_loop(n), &self.jw, usize::MAX)?.re)
    }

    /// Tetrahedron evaluation by projector expansion, edge labels
    /// `[e01, e02, e03, e12, e13, e23]`.
    pub fn tet(&self, l: [u32; 6]) -> Result<f64> {
        let key = tet_canonical(l);
        if let Some(v) = self.tets.read().expect("tet cache").get(&key) {
            return Ok(*v);
        }
        for [x, y, z] in [[l[0], l[1], l[2]], [l[0], l[3], l[4]], [l[1], l[3], l[5]], [l[2], l[4], l[5]]] {
            self.require(x, y, z)?;
        }
        let v = evaluate_with_cap(&Network::tetrahedron(key)?, &self.jw, usize::MAX)?.re;
        self.tets.write().expect("tet cache").insert(key, v);
        Ok(v)
    }

    /// Tetrahedron whose vertices are `(a,b,i)`, `(c,d,i)`, `(a,c,j)`, `(b,d,j)`.
    pub fn tet_abcd(&self, a: u32, b: u32, c: u32, d: u32, i: u32, j: u32) -> Result<f64> {
        self.tet([i, a, b, c, d, j])
    }

    pub fn cached_tets(&self) -> usize {
        self.tets.read().expect("tet cache").len()
    }

    /// `f(a,b,c) = √(√([a+1][b+1][c+1]) / |Θ(a,b,c)|)`.
    pub fn vertex_factor(&self, a: u32, b: u32, c: u32) -> Result<f64> {
        let th = self.theta(a, b, c)?.abs();
        if th < 1e-300 {
            return Err(Error::Domain(format!("theta({a},{b},{c}) vanishes")));
        }
        let q = |n: u32| self.quantum_int(n as i64 + 1);
        Ok(((q(a) * q(b) * q(c)).sqrt() / th).sqrt())
    }

    /// Internal labels `i` with `(x, y, i)` and `(z, w, i)` admissible.
    pub fn channel(&self, x: u32, y: u32, z: u32, w: u32) -> Vec<u32> {
        (0..=self.max_label()).filter(|&i| self.admissible(x, y, i) && self.admissible(z, w, i)).collect()
    }

    /// `M[a,b,c,d]`.
    pub fn recoupling_matrix(&self, a: u32, b: u32, c: u32, d: u32) -> Result<Arc<RecouplingMatrix>> {
        let key = [a, b, c, d];
        if let Some(m) = self.matrices.read().expect("matrix cache").get(&key) {
            return Ok(m.clone());
        }
        let rows = self.channel(a, b, c, d);
        let cols = self.channel(a, c, b, d);
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::Domain(format!("M[{a},{b},{c},{d}] has an empty index set")));
        }
        let sign = if ((a + b + c + d) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let q = |n: u32| self.quantum_int(n as i64 + 1);
        let denom = sign * (q(a) * q(b) * q(c) * q(d)).sqrt();
        let mut entries = vec![vec![0.0; cols.len()]; rows.len()];
        for (ri, &i) in rows.iter().enumerate() {
            for (ci, &j) in cols.iter().enumerate() {
                let t = self.tet_abcd(a, b, c, d, i, j)?;
                let f = self.vertex_factor(a, b, i)?
                    * self.vertex_factor(c, d, i)?
                    * self.vertex_factor(a, c, j)?
                    * self.vertex_factor(b, d, j)?;
                entries[ri][ci] = t * f / denom;
            }
        }
        let m = Arc::new(RecouplingMatrix { labels: key, rows, cols, entries });
        self.matrices.write().expect("matrix cache").insert(key, m.clone());
        Ok(m)
    }

    /// Every `(a, b, c, d)` whose recoupling matrix is nonempty.
    pub fn all_matrix_labels(&self) -> Vec<[u32; 4]> {
        let top = self.max_label();
        let mut out = Vec::new();
        for a in 0..=top {
            for b in 0..=top {
                for c in 0..=top {
                    for d in 0..=top {
                        if (a + b + c + d) % 2 == 0
                            && !self.channel(a, b, c, d).is_empty()
                            && !self.channel(a, c, b, d).is_empty()
                        {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }

    /// F-move `((x y)_e z)_u → (x (y z)_f)_u`, zero outside the fusion rules.
    pub fn f_move(&self, x: u32, y: u32, z: u32, u: u32, e: u32, f: u32) -> Result<f64> {
        if !(self.admissible(x, y, e) && self.admissible(e, z, u) && self.admissible(y, z, f) && self.admissible(x, f, u)) {
            return Ok(0.0);
        }
        Ok(self.recoupling_matrix(x, y, u, z)?.get(e, f))
    }

    /// Local braiding phase at this context's `A`.
    pub fn braid_phase(&self, a: u32, b: u32, c: u32) -> Result<Complex64> {
        self.require(a, b, c)?;
        Ok(braid_phase(self.a, a, b, c))
    }

    /// Largest pentagon and hexagon residuals over all labels drawn from
    /// `labels`.
    pub fn pentagon_hexagon_check(&self, labels: &[u32]) -> Result<ConsistencyReport> {
        let set: Vec<u32> = labels.iter().copied().filter(|&l| l <= self.max_label()).collect();
        let fm = |x, y, z, u, e, f| self.f_move(x, y, z, u, e, f);
        let mut pentagon: f64 = 0.0;
        let mut pent_count = 0;
        for &a in &set {
            for &b in &set {
                for &c in &set {
                    for &d in &set {
                        for &e in &set {
                            for &f in &set {
                                for &g in &set {
                                    for &k in &set {
                                        for &l in &set {
                                            let lhs = fm(f, c, d, e, g, l)? * fm(a, b, l, e, f, k)?;
                                            let mut rhs = 0.0;
                                            for &h in &set {
                                                rhs += fm(a, b, c, g, f, h)? * fm(a, h, d, e, g, k)? * fm(b, c, d, k, h, l)?;
                                            }
                                            pentagon = pentagon.max((lhs - rhs).abs());
                                            pent_count += 1;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let rp = |x: u32, y: u32, z: u32| -> Complex64 {
            if self.admissible(x, y, z) {
                braid_phase(self.a, x, y, z)
            } else {
                Complex64::new(0.0, 0.0)
            }
        };
        let mut hexagon: f64 = 0.0;
        let mut hex_count = 0;
        for &a in &set {
            for &b in &set {
                for &c in &set {
                    for &d in &set {
                        for &e in &set {
                            for &g in &set {
                                let lhs = rp(c, a, e) * fm(a, c, b, d, e, g)? * rp(c, b, g);
                                let mut rhs = Complex64::new(0.0, 0.0);
                                for &f in &set {
                                    rhs += fm(c, a, b, d, e, f)? * rp(c, f, d) * fm(a, b, c, d, f, g)?;
                                }
                                hexagon = hexagon.max((lhs - rhs).norm());
                                hex_count += 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(ConsistencyReport { pentagon, hexagon, pentagon_equations: pent_count, hexagon_equations: hex_count })
    }
}

/// `λ(a,b,c) = (−1)^{(a+b−c)/2} A^{(a(a+2) + b(b+2) − c(c+2))/2}`.
pub fn braid_phase(a_val: Complex64, a: u32, b: u32, c: u32) -> Complex64 {
    let (a, b, c) = (a as i64, b as i64, c as i64);
    let sign = if ((a + b - c) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let exp = (a * (a + 2) + b * (b + 2) - c * (c + 2)) / 2;
    a_val.powi(exp as i32) * sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_integers() {
        let ctx = RecouplingContext::new(5).unwrap();
        assert!((ctx.quantum_int(2) - 2.0 * (PI / 5.0).cos()).abs() < 1e-12);
        assert!((ctx.quantum_int(1) - 1.0).abs() < 1e-15);
        assert!(ctx.quantum_int(5).abs() < 1e-12);
        assert!((ctx.quantum_int(4) - 1.0).abs() < 1e-12);
        assert!((ctx.delta_n(1) + 1.618_033_988_7).abs() < 1e-9);
        assert!(ctx.delta_n(4).abs() < 1e-12);
        assert!((ctx.delta_n(0) - 1.0).abs() < 1e-15);
        for n in 1..5 {
            assert!(ctx.quantum_int(n) > 0.0);
        }
    }

    #[test]
    fn theta_values() {
        let ctx = RecouplingContext::new(5).unwrap();
        assert!((ctx.theta(0, 0, 0).unwrap() - 1.0).abs() < 1e-15);
        assert!((ctx.theta(1, 1, 0).unwrap() - ctx.delta_n(1)).abs() < 1e-12);
        let q = |n| ctx.quantum_int(n);
        let t222 = -q(4) * q(3) / (q(2) * q(2));
        assert!((ctx.theta(2, 2, 2).unwrap() - t222).abs() < 1e-12);
        assert!((t222 + 0.618_033_988_7).abs() < 1e-9);
        assert!((ctx.theta_by_expansion(2, 2, 2).unwrap() - t222).abs() < 1e-10);
        assert!(matches!(ctx.theta(2, 2, 4), Err(Error::Inadmissible(2, 2, 4))));
    }

    #[test]
    fn vertex_factor_values() {
        let ctx = RecouplingContext::new(5).unwrap();
        assert!((ctx.vertex_factor(0, 0, 0).unwrap() - 1.0).abs() < 1e-15);
        let phi: f64 = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((ctx.vertex_factor(2, 2, 2).unwrap() - phi.powf(1.25)).abs() < 1e-12);
        let ctx = RecouplingContext::new(8).unwrap();
        let base = ctx.vertex_factor(1, 2, 3).unwrap();
        for (x, y, z) in [(2, 1, 3), (3, 2, 1), (1, 3, 2)] {
            assert!((ctx.vertex_factor(x, y, z).unwrap() - base).abs() < 1e-14);
        }
    }

    #[test]
    fn tet_cache_and_degeneration() {
        let ctx = RecouplingContext::new(7).unwrap();
        assert!((ctx.tet([0; 6]).unwrap() - 1.0).abs() < 1e-12);
        let t = ctx.tet([2, 1, 1, 1, 1, 0]).unwrap();
        assert!((t - ctx.theta(2, 1, 1).unwrap()).abs() < 1e-10);
        let before = ctx.cached_tets();
        ctx.tet([1, 1, 2, 0, 1, 1]).unwrap();
        assert_eq!(ctx.cached_tets(), before);
    }

    #[test]
    fn small_matrices() {
        let ctx = RecouplingContext::new(5).unwrap();
        let m = ctx.recoupling_matrix(2, 0, 0, 2).unwrap();
        assert_eq!(m.dim(), (1, 1));
        assert!((m.entries[0][0].abs() - 1.0).abs() < 1e-12);
        let m = ctx.recoupling_matrix(2, 2, 2, 2).unwrap();
        assert_eq!(m.rows, vec![0, 2]);
        assert!(m.orthogonality_residual() < 1e-10);
        let tau = 2.0 / (1.0 + 5f64.sqrt());
        for (x, y) in [(0, 0), (1, 1)] {
            assert!((m.entries[x][y].abs() - tau).abs() < 1e-10);
        }
        assert!((m.entries[0][1].abs() - tau.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn phases() {
        let a = unit(3.0 * PI / 5.0);
        assert!((braid_phase(a, 2, 2, 2) + a.powi(4)).norm() < 1e-12);
        assert!((braid_phase(a, 2, 2, 0) - a.powi(8)).norm() < 1e-12);
        assert!((braid_phase(a, 0, 3, 3) - 1.0).norm() < 1e-12);
    }

    #[test]
    fn bubble_coefficient() {
        let ctx = RecouplingContext::new(7).unwrap();
        for a in 0..=5 {
            for b in 0..=5 {
                for c in 0..=5 {
                    if !ctx.admissible(a, b, c) {
                        continue;
                    }
                    let lhs = ctx.sqrt_delta(b) * ctx.sqrt_delta(c) / ctx.sqrt_delta(a);
                    let q = |n: u32| ctx.quantum_int(n as i64 + 1);
                    let sign = if ((b + c - a) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    let rhs = sign * (q(b) * q(c) / q(a)).sqrt();
                    assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn fibonacci_consistency() {
        let ctx = RecouplingContext::new(5).unwrap();
        let rep = ctx.pentagon_hexagon_check(&[0, 2]).unwrap();
        assert!(rep.pentagon < 1e-9, "{rep:?}");
        assert!(rep.hexagon < 1e-9, "{rep:?}");
    }
}
