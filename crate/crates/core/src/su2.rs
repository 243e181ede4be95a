//! Quaternionic SU(2) representations of `B_3`.
//!
//! Unit quaternions map to matrices by
//! `a + bi + cj + dk ↦ [[a + bi, c + di], [−c + di, a − bi]]`.

use std::f64::consts::PI;

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::scalars::{add3, cross, dot, norm3, scale3, Quaternion, Vec3};

const UNIT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su2Matrix(pub Matrix2<Complex64>);

impl Su2Matrix {
    pub fn from_quaternion(q: Quaternion) -> Self {
        let c = Complex64::new;
        Self(Matrix2::new(c(q.a, q.b), c(q.c, q.d), c(-q.c, q.d), c(q.a, -q.b)))
    }

    /// Reads `a, b, c, d` off the first row; the second row is assumed to
    /// have the `SU(2)` shape.
    pub fn to_quaternion(&self) -> Quaternion {
        let (z, w) = (self.0[(0, 0)], self.0[(0, 1)]);
        Quaternion::new(z.re, z.im, w.re, w.im)
    }

    pub fn det(&self) -> Complex64 {
        self.0.determinant()
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn unitarity_residual(&self) -> f64 {
        (self.0.adjoint() * self.0 - Matrix2::identity()).iter().map(|x| x.norm()).fold(0.0, f64::max)
    }
}

/// `φ_g(P) = gPg⁻¹ = (a² − b²)P + 2ab (u × P) + 2 (P·u) b² u` for
/// `g = a + bu`.
pub fn rotate(g: Quaternion, p: Vec3) -> Result<Vec3> {
    if (g.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::Domain(format!("rotation needs a unit quaternion, got length {}", g.norm())));
    }
    let a = g.a;
    // b u is the vector part; no need to split it
    let bu = g.vector();
    let b2 = dot(bu, bu);
    Ok(add3(add3(scale3(p, a * a - b2), scale3(cross(bu, p), 2.0 * a)), scale3(bu, 2.0 * dot(p, bu))))
}

/// A pair satisfying `ghg = hgh`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct B3Pair {
    pub g: Quaternion,
    pub h: Quaternion,
}

impl B3Pair {
    /// `|ghg − hgh|`.
    pub fn braid_residual(&self) -> f64 {
        let (g, h) = (self.g, self.h);
        (g * h * g - h * g * h).norm()
    }

    /// Image of a 3-strand braid, letters multiplied left to right.
    pub fn image(&self, b: &BraidWord) -> Result<Quaternion> {
        if b.strands() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: b.strands() as usize });
        }
        let mut q = Quaternion::ONE;
        for l in b.letters() {
            let x = if l.index == 1 { self.g } else { self.h };
            q = q * if l.positive { x } else { x.conj() };
        }
        Ok(q)
    }
}

fn unit_vec(u: Vec3, name: &str) -> Result<Vec3> {
    if (norm3(u) - 1.0).abs() > UNIT_TOL {
        return Err(Error::Domain(format!("{name} must be a unit vector, got length {}", norm3(u))));
    }
    Ok(u)
}

/// `g = a + bu`, `h = a + bv`, accepted iff `u = v` or
/// `u·v = (a² − b²)/(2b²)` within `tol`.
pub fn theorem1_construct(a: f64, b: f64, u: Vec3, v: Vec3, tol: f64) -> Result<B3Pair> {
    if (a * a + b * b - 1.0).abs() > UNIT_TOL {
        return Err(Error::Domain(format!("a² + b² = {} is not 1", a * a + b * b)));
    }
    if b.abs() < UNIT_TOL {
        return Err(Error::Domain("b = 0 makes g real; there is no axis".into()));
    }
    let (u, v) = (unit_vec(u, "u")?, unit_vec(v, "v")?);
    let pair = B3Pair { g: Quaternion::from_axis(a, b, u), h: Quaternion::from_axis(a, b, v) };
    if norm3(add3(u, scale3(v, -1.0))) < tol {
        return Ok(pair);
    }
    let want = (a * a - b * b) / (2.0 * b * b);
    let got = dot(u, v);
    if (got - want).abs() > tol {
        return Err(Error::Domain(format!("u·v = {got:.12} but the braid relation needs {want:.12}")));
    }
    Ok(pair)
}

fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Rotation of `p` about the unit axis `v` by angle `t`.
fn rotate_about(v: Vec3, t: f64, p: Vec3) -> Vec3 {
    let par = scale3(v, dot(p, v));
    let perp = add3(p, scale3(par, -1.0));
    add3(add3(par, scale3(perp, t.cos())), scale3(cross(v, perp), t.sin()))
}

/// Angles `(a, b, c)` with `M = e^{au} e^{bv} e^{cu}`.
///
/// For non-orthogonal axes, only rotations moving `u` by at most twice
/// the angle between the axes are reachable; others are reported as a
/// domain error.
pub fn euler_decompose(m: &Su2Matrix, u: Vec3, v: Vec3) -> Result<(f64, f64, f64)> {
    let (u, v) = (unit_vec(u, "u")?, unit_vec(v, "v")?);
    if norm3(cross(u, v)) < 1e-9 {
        return Err(Error::Domain("axes u and v are parallel".into()));
    }
    let q = m.to_quaternion();
    if (q.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::Domain("matrix is not in SU(2)".into()));
    }
    let w = rotate(q, u)?;
    let uv = dot(u, v);
    let cos_t = (dot(u, w) - uv * uv) / (1.0 - uv * uv);
    if cos_t.abs() > 1.0 + 1e-9 {
        return Err(Error::Domain(format!(
            "rotation moves u by {:.6} rad, beyond the reach {:.6} of these axes",
            dot(u, w).clamp(-1.0, 1.0).acos(),
            2.0 * uv.abs().acos().min(PI - uv.abs().acos())
        )));
    }
    let t0 = cos_t.clamp(-1.0, 1.0).acos();
    let mut best: Option<(f64, (f64, f64, f64))> = None;
    for t in [t0, -t0] {
        let x = rotate_about(v, t, u);
        let xp = add3(x, scale3(u, -dot(x, u)));
        let wp = add3(w, scale3(u, -dot(w, u)));
        let a = if norm3(xp) < 1e-9 || norm3(wp) < 1e-9 {
            0.0
        } else {
            0.5 * dot(u, cross(xp, wp)).atan2(dot(xp, wp))
        };
        let b = t / 2.0;
        let head = Quaternion::exp_axis(a, u) * Quaternion::exp_axis(b, v);
        let r = head.conj() * q;
        let c = wrap_angle(dot(r.vector(), u).atan2(r.a));
        let cost = a.abs() + c.abs();
        if best.is_none_or(|(k, _)| cost < k - 1e-12) {
            best = Some((cost, (a, b, c)));
        }
    }
    Ok(best.expect("two candidates").1)
}

/// `e^{au} e^{bv} e^{cu}`.
pub fn euler_compose(a: f64, b: f64, c: f64, u: Vec3, v: Vec3) -> Quaternion {
    Quaternion::exp_axis(a, u) * Quaternion::exp_axis(b, v) * Quaternion::exp_axis(c, u)
}

/// `g = e^{7πi/10}`, `f = iτ + k√τ`, `h = f g f⁻¹` with `τ = (√5 − 1)/2`.
pub fn fibonacci_b3_quaternions() -> B3Pair {
    let tau = (5f64.sqrt() - 1.0) / 2.0;
    let g = Quaternion::exp_axis(7.0 * PI / 10.0, [1.0, 0.0, 0.0]);
    let f = Quaternion::new(0.0, tau, 0.0, tau.sqrt());
    B3Pair { g, h: f * g * f.inverse() }
}

/// Projective distance `min(‖M − N‖, ‖M + N‖)` in the Frobenius norm.
pub fn projective_distance(p: Quaternion, q: Quaternion) -> f64 {
    // ‖M‖_F = √2 |q| under the matrix identification
    std::f64::consts::SQRT_2 * (p - q).norm().min((p + q).norm())
}

/// Images of every freely reduced word in `g, h, g⁻¹, h⁻¹` of length at
/// most `max_len`, with their lengths.
pub fn word_images(pair: &B3Pair, max_len: usize) -> Vec<(Quaternion, usize)> {
    let gens = [pair.g, pair.h, pair.g.conj(), pair.h.conj()];
    let mut out = vec![(Quaternion::ONE, 0)];
    // (image, last generator index)
    let mut layer: Vec<(Quaternion, usize)> = vec![(Quaternion::ONE, usize::MAX)];
    for len in 1..=max_len {
        let mut next = Vec::with_capacity(layer.len() * 3 + 4);
        for &(q, last) in &layer {
            for (k, &x) in gens.iter().enumerate() {
                if last != usize::MAX && (k + 2) % 4 == last {
                    continue;
                }
                next.push((q * x, k));
            }
        }
        out.extend(next.iter().map(|&(q, _)| (q, len)));
        layer = next;
    }
    out
}

/// Haar-distributed unit quaternion.
pub fn haar_sample(rng: &mut ChaCha8Rng) -> Quaternion {
    let mut x = [0f64; 4];
    for v in &mut x {
        *v = StandardNormal.sample(rng);
    }
    Quaternion::new(x[0], x[1], x[2], x[3]).normalized()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub seed: u64,
    pub samples: usize,
    /// `(L, word count, covering radius)`, `L` ascending.
    pub curve: Vec<(usize, usize, f64)>,
}

/// Largest distance from a Haar target to the nearest word image, for
/// each length in `lengths`. All lengths share one target sample, so the
/// radius is nonincreasing in `L`.
pub fn density_probe(pair: &B3Pair, lengths: &[usize], samples: usize, seed: u64) -> DensityReport {
    let mut lengths = lengths.to_vec();
    lengths.sort_unstable();
    lengths.dedup();
    let max_len = lengths.last().copied().unwrap_or(0);
    let words = word_images(pair, max_len);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let targets: Vec<Quaternion> = (0..samples).map(|_| haar_sample(&mut rng)).collect();
    // per target, best distance reached with words of length ≤ L
    let best = |t: &Quaternion| -> Vec<f64> {
        let mut by_len = vec![f64::INFINITY; max_len + 1];
        for &(q, len) in &words {
            let d = projective_distance(*t, q);
            if d < by_len[len] {
                by_len[len] = d;
            }
        }
        for k in 1..by_len.len() {
            by_len[k] = by_len[k].min(by_len[k - 1]);
        }
        lengths.iter().map(|&l| by_len[l]).collect()
    };
    #[cfg(feature = "parallel")]
    let per_target: Vec<Vec<f64>> = targets.par_iter().map(best).collect();
    #[cfg(not(feature = "parallel"))]
    let per_target: Vec<Vec<f64>> = targets.iter().map(best).collect();
    let curve = lengths
        .iter()
        .enumerate()
        .map(|(k, &l)| {
            let count = words.iter().filter(|w| w.1 <= l).count();
            let radius = per_target.iter().map(|v| v[k]).fold(0.0, f64::max);
            (l, count, radius)
        })
        .collect();
    DensityReport { seed, samples, curve }
}

/// `e^{iπ/10}`: the Fibonacci-model generators are this phase times the
/// quaternionic pair.
pub fn fibonacci_phase() -> Complex64 {
    Complex64::from_polar(1.0, PI / 10.0)
}
