use num_complex::Complex64;

use crate::braid::{BraidWord, Letter};
use crate::error::{Error, Result};
use crate::rep::CMatrix;
use crate::scalars::loop_value;

/// Two-dimensional representation of `B_3` through `TL_3`:
/// `Φ(s_i) = A I + A⁻¹ U_i`.
#[derive(Clone, Debug)]
pub struct ThreeStrandRep {
    pub a: Complex64,
    pub d: Complex64,
    pub u1: CMatrix,
    pub u2: CMatrix,
}

impl ThreeStrandRep {
    /// Refuses `|d| < 1`, where the off-diagonal entry `√(1 − d⁻²)` is not
    /// real, unless `allow_non_unitary` is set.
    pub fn new(a: Complex64, allow_non_unitary: bool) -> Result<Self> {
        let d = loop_value(a);
        if d.norm() < 1.0 && !allow_non_unitary {
            return Err(Error::NonUnitary(format!(
                "|d| = {:.6} < 1 at A = {a}; the representation is not unitary here",
                d.norm()
            )));
        }
        let di = d.inv();
        let s = (Complex64::new(1.0, 0.0) - di * di).sqrt();
        let zero = Complex64::new(0.0, 0.0);
        let u1 = CMatrix::from_row_slice(2, 2, &[d, zero, zero, zero]);
        let u2 = CMatrix::from_row_slice(2, 2, &[di, s, s, d - di]);
        Ok(Self { a, d, u1, u2 })
    }

    /// At `A = e^{iθ}`.
    pub fn at_angle(theta: f64, allow_non_unitary: bool) -> Result<Self> {
        Self::new(Complex64::from_polar(1.0, theta), allow_non_unitary)
    }

    pub fn phi(&self, l: Letter) -> CMatrix {
        let u = if l.index == 1 { &self.u1 } else { &self.u2 };
        let id = CMatrix::identity(2, 2);
        let (x, y) = if l.positive { (self.a, self.a.inv()) } else { (self.a.inv(), self.a) };
        id * x + u * y
    }

    pub fn image(&self, b: &BraidWord) -> Result<CMatrix> {
        if b.strands() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: b.strands() as usize });
        }
        let mut m = CMatrix::identity(2, 2);
        for &l in b.letters() {
            m *= self.phi(l);
        }
        Ok(m)
    }

    /// `⟨b̄⟩ = tr Φ(b) + A^{I(b)} (d² − 2)`, `I(b)` the exponent sum.
    pub fn bracket_via_trace(&self, b: &BraidWord) -> Result<Complex64> {
        let m = self.image(b)?;
        Ok(m.trace() + self.a.powi(b.exponent_sum() as i32) * (self.d * self.d - 2.0))
    }
}
