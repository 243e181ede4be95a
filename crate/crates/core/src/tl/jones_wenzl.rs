use super::{TlAlgebra, TlDiagram, TlElement};
use crate::error::{Error, Result};
use crate::scalars::FieldScalar;

/// `Δ_0..=Δ_n` from `Δ_{k+1} = δΔ_k − Δ_{k−1}`.
pub fn loop_dimensions<C: FieldScalar>(delta: &C, n: usize) -> Vec<C> {
    let mut out = vec![C::one(), delta.clone()];
    while out.len() <= n {
        let k = out.len();
        let next = out[k - 1].clone() * delta - &out[k - 2];
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

/// Jones-Wenzl projectors built by the Wenzl recursion and kept for reuse.
#[derive(Clone, Debug)]
pub struct JonesWenzl<C> {
    algebra: TlAlgebra<C>,
    dims: Vec<C>,
    projectors: Vec<TlElement<C>>,
}

impl<C: FieldScalar> JonesWenzl<C> {
    pub fn new(delta: C) -> Self {
        let algebra = TlAlgebra::new(delta.clone());
        Self {
            algebra,
            dims: vec![C::one(), delta],
            projectors: vec![TlElement::identity(0), TlElement::identity(1)],
        }
    }

    pub fn algebra(&self) -> &TlAlgebra<C> {
        &self.algebra
    }

    /// `Δ_k`, the unnormalized closure of `P_k`.
    pub fn dim(&mut self, k: usize) -> C {
        while self.dims.len() <= k {
            let m = self.dims.len();
            let next = self.dims[m - 1].clone() * self.algebra.delta() - &self.dims[m - 2];
            self.dims.push(next);
        }
        self.dims[k].clone()
    }

    /// A projector already built by [`JonesWenzl::projector`].
    pub fn built(&self, n: usize) -> Option<&TlElement<C>> {
        self.projectors.get(n)
    }

    /// The projector `P_n`.
    pub fn projector(&mut self, n: usize) -> Result<&TlElement<C>> {
        while self.projectors.len() <= n {
            let m = self.projectors.len();
            let prev = self.projectors[m - 1].tensor(&TlElement::identity(1));
            let num = self.dim(m - 2);
            let den = self.dim(m - 1);
            let coef = num
                .try_div(&den)
                .ok_or(Error::SingularProjector { n: m, k: m - 1 })?;
            let u = TlDiagram::generator(m, m - 1)?;
            let pu = self.algebra.mul_diagram(&prev, &u);
            let pup = self.algebra.mul(&pu, &prev)?;
            let next = prev.sub(&pup.scale(&coef))?;
            self.projectors.push(next);
        }
        Ok(&self.projectors[n])
    }
}

/// `P_n` with loop value `delta`.
pub fn jones_wenzl<C: FieldScalar>(delta: C, n: usize) -> Result<TlElement<C>> {
    let mut jw = JonesWenzl::new(delta);
    jw.projector(n).cloned()
}
