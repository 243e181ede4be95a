use std::collections::HashMap;

use num_complex::Complex64;

use super::JonesWenzl;
use crate::error::{Error, Result};
use crate::scalars::{loop_value, FieldScalar};

/// Which end of an edge a half-edge sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Tail,
    Head,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfEdge {
    pub edge: usize,
    pub end: End,
}

impl HalfEdge {
    pub fn tail(edge: usize) -> Self {
        Self { edge, end: End::Tail }
    }

    pub fn head(edge: usize) -> Self {
        Self { edge, end: End::Head }
    }

    fn other(self) -> Self {
        let end = match self.end {
            End::Tail => End::Head,
            End::Head => End::Tail,
        };
        Self { edge: self.edge, end }
    }
}

/// Closed trivalent network with labeled edges and a planar embedding.
///
/// Each vertex lists its three half-edges in counterclockwise order. An edge
/// that touches no vertex is a free loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    labels: Vec<u32>,
    rotations: Vec<[HalfEdge; 3]>,
}

/// `a + b + c` even and the triangle inequalities.
pub fn is_admissible(a: u32, b: u32, c: u32) -> bool {
    (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b
}

impl Network {
    pub fn new(labels: Vec<u32>, rotations: Vec<[HalfEdge; 3]>) -> Result<Self> {
        let e = labels.len();
        let mut used = vec![[false; 2]; e];
        for rot in &rotations {
            for h in rot {
                if h.edge >= e {
                    return Err(Error::Domain(format!("vertex refers to missing edge {}", h.edge)));
                }
                let slot = &mut used[h.edge][h.end as usize];
                if *slot {
                    return Err(Error::Domain(format!("edge {} end used twice", h.edge)));
                }
                *slot = true;
            }
        }
        for (k, u) in used.iter().enumerate() {
            if u[0] != u[1] {
                return Err(Error::Domain(format!("edge {k} has a free end")));
            }
        }
        let net = Self { labels, rotations };
        for v in 0..net.rotations.len() {
            let [x, y, z] = net.vertex_labels(v);
            if !is_admissible(x, y, z) {
                return Err(Error::Inadmissible(x, y, z));
            }
        }
        net.check_planar()?;
        Ok(net)
    }

    /// A single loop carrying `P_a`.
    pub fn free_loop(a: u32) -> Self {
        Self { labels: vec![a], rotations: Vec::new() }
    }

    /// Theta net: two vertices joined by three edges.
    pub fn theta(a: u32, b: u32, c: u32) -> Result<Self> {
        use HalfEdge as H;
        Self::new(
            vec![a, b, c],
            vec![[H::tail(0), H::tail(1), H::tail(2)], [H::head(0), H::head(2), H::head(1)]],
        )
    }

    /// Tetrahedron with edge labels `[e01, e02, e03, e12, e13, e23]`, where
    /// `exy` joins vertex `x` to vertex `y`.
    pub fn tetrahedron(l: [u32; 6]) -> Result<Self> {
        use HalfEdge as H;
        // vertex 3 sits inside the triangle 0, 1, 2
        let (e01, e02, e03, e12, e13, e23) = (0, 1, 2, 3, 4, 5);
        Self::new(
            l.to_vec(),
            vec![
                [H::tail(e01), H::tail(e03), H::tail(e02)],
                [H::tail(e12), H::tail(e13), H::head(e01)],
                [H::head(e02), H::tail(e23), H::head(e12)],
                [H::head(e03), H::head(e13), H::head(e23)],
            ],
        )
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn vertex_labels(&self, v: usize) -> [u32; 3] {
        self.rotations[v].map(|h| self.labels[h.edge])
    }

    fn locate(&self) -> HashMap<HalfEdge, (usize, usize)> {
        let mut at = HashMap::new();
        for (v, rot) in self.rotations.iter().enumerate() {
            for (k, h) in rot.iter().enumerate() {
                at.insert(*h, (v, k));
            }
        }
        at
    }

    /// Euler's formula `V − E + F = 2` on every component, with faces traced
    /// from the rotation system.
    fn check_planar(&self) -> Result<()> {
        let at = self.locate();
        let nv = self.rotations.len();
        if nv == 0 {
            return Ok(());
        }
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        let mut edges = 0;
        for (k, _) in self.labels.iter().enumerate() {
            if let (Some(&(u, _)), Some(&(w, _))) = (at.get(&HalfEdge::tail(k)), at.get(&HalfEdge::head(k))) {
                edges += 1;
                let (ru, rw) = (find(&mut parent, u), find(&mut parent, w));
                parent[ru] = rw;
            }
        }
        let components = (0..nv).filter(|&v| find(&mut parent, v) == v).count();
        let mut seen: HashMap<HalfEdge, bool> = at.keys().map(|h| (*h, false)).collect();
        let mut faces = 0;
        let mut darts: Vec<HalfEdge> = at.keys().copied().collect();
        darts.sort_by_key(|h| (h.edge, h.end as usize));
        for start in darts {
            if seen[&start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            loop {
                seen.insert(d, true);
                let arrive = d.other();
                let (w, k) = at[&arrive];
                d = self.rotations[w][(k + 1) % 3];
                if d == start {
                    break;
                }
            }
        }
        let chi = nv as i64 - edges as i64 + faces as i64;
        if chi != 2 * components as i64 {
            return Err(Error::Domain(format!(
                "rotation system is not planar (V - E + F = {chi} over {components} component(s))"
            )));
        }
        Ok(())
    }
}

struct BoxTerms<C> {
    offset: usize,
    size: usize,
    diagrams: Vec<(Vec<u8>, C)>,
}

/// Evaluates a closed network by expanding every edge into parallel strands
/// carrying its projector and summing loop values `δ^{loops}` over all
/// diagram choices. Loops are unnormalized (a plain circle gives `δ`).
pub fn evaluate_closed_network<C: FieldScalar>(net: &Network, jw: &mut JonesWenzl<C>) -> Result<C> {
    for &a in &net.labels {
        jw.projector(a as usize)?;
    }
    evaluate_with_cap(net, jw, usize::MAX)
}

/// As [`evaluate_closed_network`] but with projectors taken from a cache that
/// already holds every label of `net`, failing with a resource-cap error when
/// the frontier state table would exceed `max_states` entries.
pub fn evaluate_with_cap<C: FieldScalar>(net: &Network, jw: &JonesWenzl<C>, max_states: usize) -> Result<C> {
    // terminals: edge k occupies offset[k] .. offset[k] + 2a, tail strands
    // first, then head strands (matching top/bottom rows of its projector)
    let mut boxes = Vec::with_capacity(net.labels.len());
    let mut total = 0;
    for &a in &net.labels {
        let a = a as usize;
        let p = jw
            .built(a)
            .ok_or_else(|| Error::Domain(format!("projector P{a} has not been prepared")))?;
        let diagrams = p.terms().map(|(d, c)| (d.partners().to_vec(), c.clone())).collect();
        boxes.push(BoxTerms { offset: total, size: a, diagrams });
        total += 2 * a;
    }
    let owner: Vec<usize> = boxes
        .iter()
        .enumerate()
        .flat_map(|(k, b)| std::iter::repeat_n(k, 2 * b.size))
        .collect();

    // arcs around vertices; free loops close tail strand s onto head strand s
    let mut vpart = vec![usize::MAX; total];
    let terminal = |h: HalfEdge, pos: usize| -> usize {
        let b = &boxes[h.edge];
        match h.end {
            End::Tail => b.offset + pos,
            End::Head => b.offset + b.size + (b.size - 1 - pos),
        }
    };
    for rot in &net.rotations {
        let lab = rot.map(|h| net.labels[h.edge] as usize);
        for k in 0..3 {
            let (x, y, z) = (lab[k], lab[(k + 1) % 3], lab[(k + 2) % 3]);
            let shared = (x + y - z) / 2;
            for s in 0..shared {
                let p = terminal(rot[k], s);
                let q = terminal(rot[(k + 1) % 3], y - 1 - s);
                vpart[p] = q;
                vpart[q] = p;
            }
        }
    }
    for b in &boxes {
        if b.size > 0 && vpart[b.offset] == usize::MAX {
            for s in 0..b.size {
                vpart[b.offset + s] = b.offset + b.size + s;
                vpart[b.offset + b.size + s] = b.offset + s;
            }
        }
    }
    debug_assert!(vpart.iter().all(|&q| q != usize::MAX));

    let order = box_order(&boxes, &owner, &vpart);
    let mut processed = vec![false; boxes.len()];
    let mut frontier: Vec<usize> = Vec::new();
    let mut states: HashMap<Vec<u16>, C> = HashMap::new();
    states.insert(Vec::new(), C::one());
    let mut local = vec![usize::MAX; total];

    for &bk in &order {
        let b = &boxes[bk];
        let nb = 2 * b.size;
        let nf = frontier.len();
        for (i, &t) in frontier.iter().enumerate() {
            local[t] = i;
        }
        for s in 0..nb {
            local[b.offset + s] = nf + s;
        }
        // vertex link of every node in local numbering, or none
        let mut vlink = vec![usize::MAX; nf + nb];
        let mut next_frontier = Vec::new();
        for (i, &t) in frontier.iter().enumerate() {
            if owner[vpart[t]] == bk {
                vlink[i] = local[vpart[t]];
            } else {
                next_frontier.push(t);
            }
        }
        for s in 0..nb {
            let t = b.offset + s;
            let q = vpart[t];
            if owner[q] == bk || processed[owner[q]] {
                vlink[nf + s] = local[q];
            } else {
                next_frontier.push(t);
            }
        }
        next_frontier.sort_unstable();
        let mut out_index = vec![usize::MAX; nf + nb];
        for (j, &t) in next_frontier.iter().enumerate() {
            out_index[local[t]] = j;
        }

        let mut next: HashMap<Vec<u16>, C> = HashMap::new();
        let mut plink = vec![0usize; nf + nb];
        let mut visited = vec![false; nf + nb];
        for (state, coef) in &states {
            for (i, &p) in state.iter().enumerate() {
                plink[i] = p as usize;
            }
            for (partner, dc) in &b.diagrams {
                for s in 0..nb {
                    plink[nf + s] = nf + partner[s] as usize;
                }
                visited.iter_mut().for_each(|v| *v = false);
                let mut key = vec![0u16; next_frontier.len()];
                for (j, &t) in next_frontier.iter().enumerate() {
                    let start = local[t];
                    if visited[start] {
                        continue;
                    }
                    let mut x = start;
                    visited[x] = true;
                    loop {
                        let y = plink[x];
                        visited[y] = true;
                        if vlink[y] == usize::MAX {
                            key[j] = out_index[y] as u16;
                            key[out_index[y]] = j as u16;
                            break;
                        }
                        x = vlink[y];
                        visited[x] = true;
                    }
                }
                let mut loops = 0;
                for s in 0..nf + nb {
                    if visited[s] || vlink[s] == usize::MAX {
                        continue;
                    }
                    loops += 1;
                    let mut x = s;
                    loop {
                        visited[x] = true;
                        let y = plink[x];
                        visited[y] = true;
                        x = vlink[y];
                        if x == s {
                            break;
                        }
                    }
                }
                let mut c = coef.clone() * dc;
                if loops > 0 {
                    c = c * &jw.algebra().delta_pow(loops);
                }
                match next.get_mut(&key) {
                    Some(v) => *v = v.clone() + &c,
                    None => {
                        next.insert(key, c);
                    }
                }
            }
        }
        if next.len() > max_states {
            return Err(Error::ResourceCap(format!(
                "network expansion needs more than {max_states} frontier states"
            )));
        }
        next.retain(|_, v| !v.negligible());
        states = next;
        frontier = next_frontier;
        processed[bk] = true;
    }
    Ok(states.remove(&Vec::<u16>::new()).unwrap_or_else(C::zero))
}

/// Greedy ordering that keeps the frontier small.
fn box_order<C>(boxes: &[BoxTerms<C>], owner: &[usize], vpart: &[usize]) -> Vec<usize> {
    let n = boxes.len();
    let mut processed = vec![false; n];
    let mut frontier = 0i64;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(i64, usize)> = None;
        for k in (0..n).filter(|&k| !processed[k]) {
            let b = &boxes[k];
            let mut delta = 0i64;
            for s in 0..2 * b.size {
                let q = owner[vpart[b.offset + s]];
                if processed[q] {
                    delta -= 1;
                } else if q != k {
                    delta += 1;
                }
            }
            if best.is_none_or(|(d, _)| frontier + delta < d) {
                best = Some((frontier + delta, k));
            }
        }
        let (f, k) = best.expect("unprocessed box");
        frontier = f;
        processed[k] = true;
        order.push(k);
    }
    order
}

/// Numeric evaluation at `A`.
pub fn evaluate_at(net: &Network, a: Complex64) -> Result<Complex64> {
    let mut jw = JonesWenzl::new(loop_value(a));
    evaluate_closed_network(net, &mut jw)
}
