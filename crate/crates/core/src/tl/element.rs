use std::collections::BTreeMap;

use super::TlDiagram;
use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// A linear combination of loopless diagrams of one size.
#[derive(Clone, Debug)]
pub struct TlElement<C> {
    n: usize,
    terms: BTreeMap<TlDiagram, C>,
}

impl<C: Scalar> TlElement<C> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn from_diagram(d: TlDiagram, c: C) -> Self {
        let mut e = Self::zero(d.size());
        e.add_term(d, c);
        e
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagram(TlDiagram::identity(n), C::one())
    }

    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Ok(Self::from_diagram(TlDiagram::generator(n, i)?, C::one()))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TlDiagram, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &TlDiagram) -> C {
        self.terms.get(d).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, d: TlDiagram, c: C) {
        debug_assert_eq!(d.size(), self.n);
        if c.negligible() {
            return;
        }
        match self.terms.remove(&d) {
            Some(old) => {
                let s = old + &c;
                if !s.negligible() {
                    self.terms.insert(d, s);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.n);
        for (d, x) in &self.terms {
            out.add_term(d.clone(), x.clone() * c);
        }
        out
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (d, x) in &other.terms {
            out.add_term(d.clone(), x.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-C::one()))
    }

    /// Side-by-side product, `self` on the left.
    pub fn tensor(&self, right: &Self) -> Self {
        let mut out = Self::zero(self.n + right.n);
        for (d, x) in &self.terms {
            for (e, y) in &right.terms {
                out.add_term(d.tensor(e), x.clone() * y);
            }
        }
        out
    }

    /// Converts coefficients, e.g. exact to numeric.
    pub fn map<D: Scalar>(&self, mut f: impl FnMut(&C) -> D) -> TlElement<D> {
        let mut out = TlElement::zero(self.n);
        for (d, x) in &self.terms {
            out.add_term(d.clone(), f(x));
        }
        out
    }

    pub fn try_map<D: Scalar>(&self, mut f: impl FnMut(&C) -> Result<D>) -> Result<TlElement<D>> {
        let mut out = TlElement::zero(self.n);
        for (d, x) in &self.terms {
            out.add_term(d.clone(), f(x)?);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(Scalar::negligible)
    }
}

impl<C: Scalar + PartialEq> PartialEq for TlElement<C> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

/// Temperley-Lieb algebra with loop value `δ` in the scalar ring `C`.
#[derive(Clone, Debug)]
pub struct TlAlgebra<C> {
    delta: C,
    powers: Vec<C>,
}

impl<C: Scalar> TlAlgebra<C> {
    pub fn new(delta: C) -> Self {
        let powers = vec![C::one(), delta.clone()];
        Self { delta, powers }
    }

    pub fn delta(&self) -> &C {
        &self.delta
    }

    /// `δ^k`, computed on demand from the cached table.
    pub fn delta_pow(&self, k: usize) -> C {
        if k < self.powers.len() {
            return self.powers[k].clone();
        }
        let mut x = self.powers[self.powers.len() - 1].clone();
        for _ in self.powers.len() - 1..k {
            x = x * &self.delta;
        }
        x
    }

    /// Extends the power table so later lookups for exponents up to `k` are
    /// cheap.
    pub fn reserve_powers(&mut self, k: usize) {
        while self.powers.len() <= k {
            let next = self.powers[self.powers.len() - 1].clone() * &self.delta;
            self.powers.push(next);
        }
    }

    /// Composition product `x·y` with `x` stacked on top.
    pub fn mul(&self, x: &TlElement<C>, y: &TlElement<C>) -> Result<TlElement<C>> {
        x.check_size(y)?;
        let mut out = TlElement::zero(x.n);
        for (d, a) in &x.terms {
            for (e, b) in &y.terms {
                let (de, loops) = d.compose(e);
                let mut c = a.clone() * b;
                if loops > 0 {
                    c = c * &self.delta_pow(loops);
                }
                out.add_term(de, c);
            }
        }
        Ok(out)
    }

    /// `x·d` for a single diagram `d`.
    pub fn mul_diagram(&self, x: &TlElement<C>, d: &TlDiagram) -> TlElement<C> {
        let mut out = TlElement::zero(x.n);
        for (e, a) in &x.terms {
            let (ed, loops) = e.compose(d);
            let c = if loops > 0 { a.clone() * &self.delta_pow(loops) } else { a.clone() };
            out.add_term(ed, c);
        }
        out
    }

    /// Normalized closure: `Σ coeff·δ^(loops−1)`, so the closed identity on
    /// one strand evaluates to 1.
    pub fn markov_trace(&self, x: &TlElement<C>) -> C {
        let mut total = C::zero();
        for (d, a) in &x.terms {
            let loops = d.trace_loops();
            total = total + &(a.clone() * &self.delta_pow(loops.saturating_sub(1)));
        }
        total
    }

    /// Unnormalized closure: every loop, including the last, counts `δ`.
    pub fn closure_value(&self, x: &TlElement<C>) -> C {
        let mut total = C::zero();
        for (d, a) in &x.terms {
            total = total + &(a.clone() * &self.delta_pow(d.trace_loops()));
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{LaurentPoly, RationalFn};
    use num_traits::One;

    fn alg() -> TlAlgebra<LaurentPoly> {
        TlAlgebra::new(LaurentPoly::delta())
    }

    #[test]
    fn presentation_relations_up_to_six() {
        let tl = alg();
        let delta = LaurentPoly::delta();
        for n in 2..=6 {
            for i in 1..n {
                let ui = TlElement::<LaurentPoly>::generator(n, i).unwrap();
                assert_eq!(tl.mul(&ui, &ui).unwrap(), ui.scale(&delta));
                for j in 1..n {
                    let uj = TlElement::generator(n, j).unwrap();
                    let ij = tl.mul(&ui, &uj).unwrap();
                    if i.abs_diff(j) == 1 {
                        assert_eq!(tl.mul(&ij, &ui).unwrap(), ui);
                    } else if i.abs_diff(j) > 1 {
                        assert_eq!(ij, tl.mul(&uj, &ui).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn identity_is_neutral() {
        let tl = alg();
        let u = TlElement::<LaurentPoly>::generator(3, 2).unwrap();
        let x = u.add(&TlElement::identity(3).scale(&LaurentPoly::a())).unwrap();
        assert_eq!(tl.mul(&TlElement::identity(3), &x).unwrap(), x);
        assert_eq!(tl.mul(&x, &TlElement::identity(3)).unwrap(), x);
    }

    #[test]
    fn crossing_square() {
        let tl = alg();
        let a = LaurentPoly::a();
        let ai = LaurentPoly::a_pow(-1);
        let u = TlElement::<LaurentPoly>::generator(2, 1).unwrap();
        let x = TlElement::identity(2).scale(&a).add(&u.scale(&ai)).unwrap();
        let sq = tl.mul(&x, &x).unwrap();
        let expect = TlElement::identity(2)
            .scale(&LaurentPoly::a_pow(2))
            .add(&u.scale(&(LaurentPoly::one() - LaurentPoly::a_pow(-4))))
            .unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn markov_trace_small() {
        let tl = alg();
        assert_eq!(tl.markov_trace(&TlElement::identity(2)), LaurentPoly::delta());
        assert_eq!(tl.markov_trace(&TlElement::generator(2, 1).unwrap()), LaurentPoly::one());
        assert_eq!(tl.closure_value(&TlElement::identity(1)), LaurentPoly::delta());
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let tl = TlAlgebra::new(RationalFn::from_poly(LaurentPoly::delta()));
        let x = TlElement::<RationalFn>::identity(2);
        let y = TlElement::identity(3);
        assert!(tl.mul(&x, &y).is_err());
        assert!(x.add(&y).is_err());
    }
}
