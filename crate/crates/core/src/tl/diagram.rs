use std::fmt;

use crate::error::{Error, Result};

/// A loopless Temperley-Lieb diagram on `n` strands.
///
/// Boundary points are indexed `0..n` along the top (left to right) and
/// `n..2n` along the bottom (left to right); `partner[p]` is the point
/// joined to `p`. Only planar matchings are constructible.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TlDiagram {
    n: usize,
    partner: Vec<u8>,
}

impl TlDiagram {
    pub fn identity(n: usize) -> Self {
        let mut partner = vec![0u8; 2 * n];
        for k in 0..n {
            partner[k] = (n + k) as u8;
            partner[n + k] = k as u8;
        }
        Self { n, partner }
    }

    /// Cup-cap generator `U_i` (1-based `i`).
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::Domain(format!("U_{i} is not a generator of TL[{n}]")));
        }
        let mut d = Self::identity(n);
        let (l, r) = (i - 1, i);
        d.partner[l] = r as u8;
        d.partner[r] = l as u8;
        d.partner[n + l] = (n + r) as u8;
        d.partner[n + r] = (n + l) as u8;
        Ok(d)
    }

    pub fn from_partner(n: usize, partner: Vec<u8>) -> Result<Self> {
        if partner.len() != 2 * n || n > 120 {
            return Err(Error::Domain("partner array has the wrong length".into()));
        }
        for (p, &q) in partner.iter().enumerate() {
            let q = q as usize;
            if q >= 2 * n || q == p || partner[q] as usize != p {
                return Err(Error::Domain("partner array is not a perfect matching".into()));
            }
        }
        let d = Self { n, partner };
        if !d.is_planar() {
            return Err(Error::Domain("matching is not planar".into()));
        }
        Ok(d)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    pub fn partners(&self) -> &[u8] {
        &self.partner
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|k| self.partner[k] as usize == self.n + k)
    }

    /// Position of a boundary point when walking the boundary of the
    /// rectangle: top left to right, then bottom right to left.
    fn boundary_rank(&self, p: usize) -> usize {
        if p < self.n {
            p
        } else {
            3 * self.n - 1 - p
        }
    }

    /// Balanced-parenthesis scan around the boundary.
    pub fn is_planar(&self) -> bool {
        let n = self.n;
        let mut order: Vec<usize> = (0..n).collect();
        order.extend((n..2 * n).rev());
        let mut stack = Vec::with_capacity(n);
        for &p in &order {
            let q = self.partner[p] as usize;
            if self.boundary_rank(q) > self.boundary_rank(p) {
                stack.push(p);
            } else if stack.pop() != Some(q) {
                return false;
            }
        }
        stack.is_empty()
    }

    /// Stacks `self` on top of `below`; returns the product diagram and the
    /// number of closed loops formed in the middle.
    pub fn compose(&self, below: &TlDiagram) -> (TlDiagram, usize) {
        let n = self.n;
        debug_assert_eq!(n, below.n);
        let mut out = vec![0u8; 2 * n];
        let mut seen_mid = vec![false; n];
        // follows a strand from an outer endpoint to the other outer endpoint
        let walk = |start: usize, seen_mid: &mut Vec<bool>| -> usize {
            let (mut in_top, mut p) = (start < n, start);
            loop {
                if in_top {
                    let q = self.partner[p] as usize;
                    if q < n {
                        return q;
                    }
                    let m = q - n;
                    seen_mid[m] = true;
                    in_top = false;
                    p = m;
                } else {
                    let q = below.partner[p] as usize;
                    if q >= n {
                        return q;
                    }
                    seen_mid[q] = true;
                    in_top = true;
                    p = n + q;
                }
            }
        };
        let mut done = vec![false; 2 * n];
        for start in 0..2 * n {
            if done[start] {
                continue;
            }
            let end = walk(start, &mut seen_mid);
            out[start] = end as u8;
            out[end] = start as u8;
            done[start] = true;
            done[end] = true;
        }
        let mut loops = 0;
        for m in 0..n {
            if seen_mid[m] {
                continue;
            }
            loops += 1;
            // follow the cycle through the middle row
            let mut cur = m;
            loop {
                seen_mid[cur] = true;
                let q = below.partner[cur] as usize; // stays on the middle row
                seen_mid[q] = true;
                let r = self.partner[n + q] as usize - n;
                if r == m {
                    break;
                }
                cur = r;
            }
        }
        (TlDiagram { n, partner: out }, loops)
    }

    /// Side-by-side juxtaposition, `self` on the left.
    pub fn tensor(&self, right: &TlDiagram) -> TlDiagram {
        let (a, b) = (self.n, right.n);
        let n = a + b;
        let map_left = |p: usize| if p < a { p } else { n + (p - a) };
        let map_right = |p: usize| if p < b { a + p } else { n + a + (p - b) };
        let mut partner = vec![0u8; 2 * n];
        for p in 0..2 * a {
            partner[map_left(p)] = map_left(self.partner[p] as usize) as u8;
        }
        for p in 0..2 * b {
            partner[map_right(p)] = map_right(right.partner[p] as usize) as u8;
        }
        TlDiagram { n, partner }
    }

    /// Number of loops after joining top point `k` to bottom point `k`.
    pub fn trace_loops(&self) -> usize {
        let n = self.n;
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for s in 0..2 * n {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut p = s;
            loop {
                seen[p] = true;
                let q = self.partner[p] as usize;
                seen[q] = true;
                let next = if q < n { q + n } else { q - n };
                if next == s {
                    break;
                }
                p = next;
            }
        }
        loops
    }

    /// Number of loops after closing with caps/cups given by `top` and
    /// `bottom` (involutions on `0..n`).
    pub fn closure_loops(&self, top: &[usize], bottom: &[usize]) -> usize {
        let n = self.n;
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        let outer = |q: usize| if q < n { top[q] } else { n + bottom[q - n] };
        for s in 0..2 * n {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut p = s;
            loop {
                seen[p] = true;
                let q = self.partner[p] as usize;
                seen[q] = true;
                let next = outer(q);
                if next == s {
                    break;
                }
                p = next;
            }
        }
        loops
    }

    /// All loopless diagrams of size `n` (Catalan many).
    pub fn enumerate(n: usize) -> Vec<TlDiagram> {
        // noncrossing perfect matchings of the 2n boundary points in
        // boundary order, then mapped back to point labels
        let mut out = Vec::new();
        let order: Vec<usize> = (0..n).chain((n..2 * n).rev()).collect();
        let mut matching = vec![usize::MAX; 2 * n];
        fn rec(lo: usize, hi: usize, m: &mut Vec<usize>, emit: &mut dyn FnMut(&Vec<usize>), rest: &mut Vec<(usize, usize)>) {
            if lo >= hi {
                if let Some((l, h)) = rest.pop() {
                    rec(l, h, m, emit, rest);
                    rest.push((l, h));
                } else {
                    emit(m);
                }
                return;
            }
            let mut k = lo + 1;
            while k < hi {
                m[lo] = k;
                m[k] = lo;
                rest.push((k + 1, hi));
                rec(lo + 1, k, m, emit, rest);
                rest.pop();
                k += 2;
            }
        }
        let mut emit = |m: &Vec<usize>| {
            let mut partner = vec![0u8; 2 * n];
            for (r, &s) in m.iter().enumerate() {
                partner[order[r]] = order[s] as u8;
            }
            out.push(TlDiagram { n, partner });
        };
        let mut rest = Vec::new();
        rec(0, 2 * n, &mut matching, &mut emit, &mut rest);
        out
    }
}

impl fmt::Debug for TlDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TL{}[", self.n)?;
        let mut first = true;
        for p in 0..2 * self.n {
            let q = self.partner[p] as usize;
            if p < q {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                let name = |x: usize| {
                    if x < self.n {
                        format!("{}", x + 1)
                    } else {
                        format!("{}'", x - self.n + 1)
                    }
                };
                write!(f, "{}-{}", name(p), name(q))?;
            }
        }
        write!(f, "]")
    }
}
