//! The bracket polynomial of braid closures, computed by the state sum and
//! by Temperley-Lieb transfer, plus the writhe-normalized invariant, the
//! Jones polynomial and a cabling oracle for colored brackets.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::braid::{BraidWord, Closure, Letter};
use crate::error::{Error, Result};
use crate::scalars::{write_poly, FieldScalar, LaurentPoly, Scalar};
use crate::tl::{JonesWenzl, TlAlgebra, TlDiagram, TlElement};

/// Largest crossing count accepted by the state sum.
pub const STATE_SUM_CAP: usize = 24;

/// Result of an exhaustive state sum.
#[derive(Clone, Debug, PartialEq)]
pub struct StateSumTrace {
    pub crossing_count: usize,
    pub states_visited: u64,
    pub result: LaurentPoly,
}

fn find(p: &mut [u32], x: u32) -> u32 {
    let mut r = x;
    while p[r as usize] != r {
        r = p[r as usize];
    }
    let mut y = x;
    while p[y as usize] != r {
        let nx = p[y as usize];
        p[y as usize] = r;
        y = nx;
    }
    r
}

fn union(p: &mut [u32], x: u32, y: u32) -> bool {
    let (rx, ry) = (find(p, x), find(p, y));
    if rx != ry {
        p[rx as usize] = ry;
        true
    } else {
        false
    }
}

/// Loop count of one smoothing state. Bit `t` of `state` set means the
/// crossing at level `t` takes its `B` smoothing.
fn count_loops(n: usize, letters: &[Letter], closure: Closure, state: u64, parent: &mut Vec<u32>) -> usize {
    let m = letters.len();
    let levels = if closure == Closure::Trace { m } else { m + 1 };
    let node = |t: usize, p: usize| -> u32 {
        let t = if closure == Closure::Trace && t == m { 0 } else { t };
        (t * n + p) as u32
    };
    let total = levels * n;
    parent.clear();
    parent.extend(0..total as u32);
    let mut components = total;
    for (t, l) in letters.iter().enumerate() {
        let i = l.index as usize - 1;
        let b_smoothing = state >> t & 1 == 1;
        // positive letters: A-smoothing is vertical; negative: horizontal
        let vertical = l.positive != b_smoothing;
        for p in 0..n {
            if p == i || p == i + 1 {
                continue;
            }
            if union(parent, node(t, p), node(t + 1, p)) {
                components -= 1;
            }
        }
        if vertical {
            for p in [i, i + 1] {
                if union(parent, node(t, p), node(t + 1, p)) {
                    components -= 1;
                }
            }
        } else {
            if union(parent, node(t, i), node(t, i + 1)) {
                components -= 1;
            }
            if union(parent, node(t + 1, i), node(t + 1, i + 1)) {
                components -= 1;
            }
        }
    }
    if closure == Closure::Plat {
        for j in (0..n).step_by(2) {
            for t in [0, m] {
                if union(parent, node(t, j), node(t, j + 1)) {
                    components -= 1;
                }
            }
        }
    }
    if m == 0 && closure == Closure::Trace {
        // every strand closes on itself
        return n;
    }
    components
}

/// `⟨K⟩` as `Σ_S A^{α(S)−β(S)} δ^{‖S‖−1}` over all `2^N` smoothings.
pub fn bracket_state_sum(b: &BraidWord, closure: Closure) -> Result<StateSumTrace> {
    bracket_state_sum_capped(b, closure, STATE_SUM_CAP)
}

/// [`bracket_state_sum`] refusing words longer than `max_crossings`
/// (never more than 40).
pub fn bracket_state_sum_capped(b: &BraidWord, closure: Closure, max_crossings: usize) -> Result<StateSumTrace> {
    b.check_closure(closure)?;
    let m = b.len();
    let cap = max_crossings.min(40);
    if m > cap {
        return Err(Error::ResourceCap(format!(
            "state sum over {m} crossings exceeds the cap of {cap}"
        )));
    }
    let n = b.strands() as usize;
    let letters = b.letters();
    let states: u64 = 1 << m;
    let chunk_bits = m.min(8);
    let chunks = 1u64 << chunk_bits;
    let per_chunk = states >> chunk_bits;
    let tally = |c: u64| -> HashMap<(i64, usize), u64> {
        let mut counts = HashMap::new();
        let mut parent = Vec::new();
        for s in c * per_chunk..(c + 1) * per_chunk {
            let loops = count_loops(n, letters, closure, s, &mut parent);
            let b_count = s.count_ones() as i64;
            let exp = m as i64 - 2 * b_count;
            *counts.entry((exp, loops)).or_insert(0) += 1;
        }
        counts
    };
    let merge = |mut x: HashMap<(i64, usize), u64>, y: HashMap<(i64, usize), u64>| {
        for (k, v) in y {
            *x.entry(k).or_insert(0) += v;
        }
        x
    };
    #[cfg(feature = "parallel")]
    let counts = (0..chunks).into_par_iter().map(tally).reduce(HashMap::new, merge);
    #[cfg(not(feature = "parallel"))]
    let counts = (0..chunks).map(tally).fold(HashMap::new(), merge);

    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort();
    let delta = LaurentPoly::delta();
    let mut result = LaurentPoly::zero();
    for ((exp, loops), count) in keys {
        let term = LaurentPoly::monomial(count, exp) * delta.pow(loops as u32 - 1);
        result = result + term;
    }
    Ok(StateSumTrace { crossing_count: m, states_visited: states, result })
}

/// `Φ(b) = Π (A^{±1} I + A^{∓1} U_i)` in `TL[n]` with coefficients in `C`.
pub fn braid_image<C: Scalar>(b: &BraidWord, a: &C, a_inv: &C, start: TlElement<C>, tl: &TlAlgebra<C>) -> Result<TlElement<C>> {
    let n = start.size();
    let mut x = start;
    for l in b.letters() {
        let u = TlDiagram::generator(n, l.index as usize)?;
        let (wi, wu) = if l.positive { (a, a_inv) } else { (a_inv, a) };
        let xu = tl.mul_diagram(&x, &u).scale(wu);
        x = x.scale(wi).add(&xu)?;
    }
    Ok(x)
}

/// Plat caps on `0..n`: `(0 1)(2 3)…`.
pub fn plat_pairing(n: usize) -> Vec<usize> {
    (0..n).map(|p| p ^ 1).collect()
}

/// Normalized bracket of the closure via the Temperley-Lieb representation.
pub fn bracket_tl_closure(b: &BraidWord, closure: Closure) -> Result<LaurentPoly> {
    b.check_closure(closure)?;
    let n = b.strands() as usize;
    let tl = TlAlgebra::new(LaurentPoly::delta());
    let x = braid_image(b, &LaurentPoly::a(), &LaurentPoly::a_pow(-1), TlElement::identity(n), &tl)?;
    Ok(match closure {
        Closure::Trace => tl.markov_trace(&x),
        Closure::Plat => {
            let caps = plat_pairing(n);
            let mut total = LaurentPoly::zero();
            for (d, c) in x.terms() {
                let loops = d.closure_loops(&caps, &caps);
                total = total + c * &tl.delta_pow(loops - 1);
            }
            total
        }
    })
}

/// Normalized bracket of the trace closure via the Temperley-Lieb representation.
pub fn bracket_tl(b: &BraidWord) -> Result<LaurentPoly> {
    bracket_tl_closure(b, Closure::Trace)
}

/// `f_K = (−A³)^{−w} ⟨K⟩` for the trace closure, `w` the exponent sum.
pub fn normalized_invariant(b: &BraidWord) -> Result<LaurentPoly> {
    let w = b.exponent_sum();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(bracket_tl(b)?.shift(-3 * w) * LaurentPoly::monomial(sign, 0))
}

/// Jones polynomial in `t^{1/4}`: exponent `k` stands for `t^{k/4}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonesPoly(pub LaurentPoly);

impl JonesPoly {
    /// Coefficient of `t^{k/4}`.
    pub fn coeff_quarter(&self, k: i64) -> num_bigint::BigInt {
        self.0.coeff(k)
    }
}

impl fmt::Display for JonesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.0, "t", 4)
    }
}

/// `V(t) = f(t^{−1/4})`.
pub fn jones_polynomial(b: &BraidWord) -> Result<JonesPoly> {
    Ok(JonesPoly(normalized_invariant(b)?.invert_variable()))
}

/// Letters of the `a`-cable of `b`: every crossing becomes `a²` crossings
/// of the same sign, bundle over bundle.
pub fn cable(b: &BraidWord, a: u32) -> Result<BraidWord> {
    if a == 0 {
        return Err(Error::Domain("cabling needs a positive color".into()));
    }
    let mut word = Vec::with_capacity(b.len() * (a * a) as usize);
    for l in b.letters() {
        let s = (l.index - 1) * a;
        for j in 0..a {
            for k in 0..a {
                let idx = (s + a - j + k) as i32;
                word.push(if l.positive { idx } else { -idx });
            }
        }
    }
    BraidWord::from_signed(b.strands() * a, &word)
}

/// Unnormalized colored bracket by cabling: each strand becomes `color`
/// parallel strands with `P_color` inserted on every cable at the top and
/// the bottom, then the closure is evaluated loop by loop (a plain circle
/// counts `δ`). `max_strands` caps the cabled strand count.
pub fn colored_bracket_cabled<C: FieldScalar>(
    b: &BraidWord,
    color: u32,
    closure: Closure,
    a: &C,
    a_inv: &C,
    max_strands: usize,
) -> Result<C> {
    b.check_closure(closure)?;
    let n = b.strands() as usize;
    let delta = -(a.clone() * a) - &(a_inv.clone() * a_inv);
    if color == 0 {
        return Ok(C::one());
    }
    let total = n * color as usize;
    if total > max_strands {
        return Err(Error::ResourceCap(format!(
            "cabled braid has {total} strands, cap is {max_strands}"
        )));
    }
    let mut jw = JonesWenzl::new(delta);
    let p = jw.projector(color as usize)?.clone();
    let mut layer = TlElement::identity(0);
    for _ in 0..n {
        layer = layer.tensor(&p);
    }
    let cabled = cable(b, color)?;
    let tl = jw.algebra();
    let x = braid_image(&cabled, a, a_inv, layer.clone(), tl)?;
    let x = tl.mul(&x, &layer)?;
    let ca = color as usize;
    let caps: Vec<usize> = match closure {
        Closure::Trace => Vec::new(),
        Closure::Plat => (0..total)
            .map(|q| {
                let base = (q / (2 * ca)) * 2 * ca;
                base + 2 * ca - 1 - (q - base)
            })
            .collect(),
    };
    let mut sum = C::zero();
    for (d, c) in x.terms() {
        let loops = match closure {
            Closure::Trace => d.trace_loops(),
            Closure::Plat => d.closure_loops(&caps, &caps),
        };
        sum = sum + &(c.clone() * &tl.delta_pow(loops));
    }
    Ok(sum)
}

/// [`colored_bracket_cabled`] at a numeric `A`.
pub fn colored_bracket_bruteforce(b: &BraidWord, color: u32, closure: Closure, a: Complex64) -> Result<Complex64> {
    colored_bracket_cabled(b, color, closure, &a, &a.inv(), 12)
}

/// Exact unnormalized colored bracket with rational coefficients.
pub fn colored_bracket_exact(b: &BraidWord, color: u32, closure: Closure) -> Result<crate::scalars::RationalFn> {
    use crate::scalars::RationalFn;
    let a = RationalFn::from_poly(LaurentPoly::a());
    let ai = RationalFn::from_poly(LaurentPoly::a_pow(-1));
    colored_bracket_cabled(b, color, closure, &a, &ai, 8)
}

impl LaurentPoly {
    /// `(−A³)^k`.
    pub fn curl(k: i64) -> LaurentPoly {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        LaurentPoly::monomial(sign, 3 * k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn word(n: u32, w: &[i32]) -> BraidWord {
        BraidWord::from_signed(n, w).unwrap()
    }

    fn poly(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn golden_values() {
        let trefoil = poly(&[(5, -1), (-3, -1), (-7, 1)]);
        let t = bracket_state_sum(&word(2, &[1, 1, 1]), Closure::Trace).unwrap();
        assert_eq!(t.result, trefoil);
        assert_eq!(t.states_visited, 8);
        assert_eq!(bracket_tl(&word(2, &[1, 1, 1])).unwrap(), trefoil);
        assert_eq!(bracket_tl(&word(2, &[1])).unwrap(), poly(&[(3, -1)]));
        assert_eq!(bracket_state_sum(&word(2, &[-1]), Closure::Trace).unwrap().result, poly(&[(-3, -1)]));
        assert_eq!(bracket_state_sum(&word(2, &[1, 1]), Closure::Trace).unwrap().result, poly(&[(4, -1), (-4, -1)]));
        let d = LaurentPoly::delta();
        assert_eq!(bracket_tl(&BraidWord::identity(3)).unwrap(), &d * &d);
        assert_eq!(bracket_state_sum(&BraidWord::identity(3), Closure::Trace).unwrap().result, &d * &d);
    }

    #[test]
    fn normalized_and_jones() {
        let t = word(2, &[1, 1, 1]);
        assert_eq!(normalized_invariant(&t).unwrap(), poly(&[(-4, 1), (-12, 1), (-16, -1)]));
        assert_eq!(normalized_invariant(&word(2, &[-1, -1, -1])).unwrap(), poly(&[(4, 1), (12, 1), (16, -1)]));
        assert_eq!(normalized_invariant(&word(2, &[1])).unwrap(), LaurentPoly::one());
        let v = jones_polynomial(&t).unwrap();
        assert_eq!(v.0, poly(&[(4, 1), (12, 1), (16, -1)]));
        assert_eq!(v.to_string(), "-t^4 + t^3 + t");
        let hopf = jones_polynomial(&word(2, &[1, 1])).unwrap();
        assert_eq!(hopf.0, poly(&[(2, -1), (10, -1)]));
        assert_eq!(hopf.to_string(), "-t^5/2 - t^1/2");
    }

    #[test]
    fn plat_closures_agree() {
        for w in [&[][..], &[1], &[2], &[1, 2, -3], &[2, 2, 2], &[1, -2, 3, 2]] {
            let b = word(4, w);
            assert_eq!(
                bracket_state_sum(&b, Closure::Plat).unwrap().result,
                bracket_tl_closure(&b, Closure::Plat).unwrap(),
                "{w:?}"
            );
        }
        // plat of the identity in B4 is two circles
        assert_eq!(bracket_tl_closure(&BraidWord::identity(4), Closure::Plat).unwrap(), LaurentPoly::delta());
        assert!(bracket_state_sum(&BraidWord::identity(3), Closure::Plat).is_err());
    }

    #[test]
    fn state_sum_cap() {
        let b = word(2, &[1; 25]);
        assert!(matches!(bracket_state_sum(&b, Closure::Trace), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn cabling_shape() {
        assert_eq!(cable(&word(2, &[1]), 2).unwrap().signed(), vec![2, 3, 1, 2]);
        assert_eq!(cable(&word(3, &[-2]), 1).unwrap().signed(), vec![-2]);
    }

    #[test]
    fn colored_color_one_is_delta_times_bracket() {
        let a = crate::scalars::unit(0.37);
        for (w, cl) in [(&[1, 1, 1][..], Closure::Trace), (&[1, -2, 3][..], Closure::Plat), (&[2, 2][..], Closure::Plat)] {
            let n = if cl == Closure::Plat { 4 } else { 2 };
            let b = word(n, w);
            let exact = bracket_state_sum(&b, cl).unwrap().result.eval(a).unwrap();
            let colored = colored_bracket_bruteforce(&b, 1, cl, a).unwrap();
            assert!((colored - exact * crate::scalars::loop_value(a)).norm() < 1e-10);
        }
    }

    #[test]
    fn colored_identity_plat_is_delta_two() {
        let v = colored_bracket_exact(&BraidWord::identity(2), 2, Closure::Plat).unwrap();
        let d = crate::scalars::RationalFn::from_poly(LaurentPoly::delta());
        assert_eq!(v, &(&d * &d) - &crate::scalars::RationalFn::one());
    }
}
