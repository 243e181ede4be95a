use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Laurent polynomial in the bracket variable `A` with arbitrary-precision
/// integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    /// `coeff * A^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let c = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// The variable `A` itself.
    pub fn a() -> Self {
        Self::monomial(1, 1)
    }

    /// `A^exp`.
    pub fn a_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    /// Loop value `δ = -A² - A⁻²`.
    pub fn delta() -> Self {
        Self::from_pairs([(2, -1), (-2, -1)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Iterates `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Substitutes `A -> A⁻¹` (mirror image).
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplies every exponent by `factor` (substitution `A -> A^factor`).
    pub fn scale_exponents(&self, factor: i64) -> Self {
        if factor == 0 {
            let total: BigInt = self.terms.values().sum();
            return Self::monomial(total, 0);
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * factor, c.clone())).collect(),
        }
    }

    /// Multiplies by `A^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates at a nonzero complex `A` with Horner's scheme on the
    /// shifted ordinary polynomial.
    pub fn eval(&self, a: Complex64) -> Result<Complex64> {
        if a.norm() == 0.0 {
            return Err(Error::Domain("Laurent polynomial evaluated at A = 0".into()));
        }
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Ok(Complex64::zero());
        };
        let mut acc = Complex64::zero();
        for e in (lo..=hi).rev() {
            acc = acc * a + Complex64::new(coeff_to_f64(self.terms.get(&e)), 0.0);
        }
        Ok(acc * a.powi(lo as i32))
    }

    /// Sum of the coefficients, i.e. the value at `A = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Coefficients as a dense vector starting at `min_exp`.
    pub(crate) fn dense(&self) -> (i64, Vec<BigInt>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
                for (e, c) in &self.terms {
                    v[(e - lo) as usize] = c.clone();
                }
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }

    pub(crate) fn from_dense(lo: i64, coeffs: Vec<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                terms.insert(lo + k as i64, c);
            }
        }
        Self { terms }
    }

    /// Leading coefficient (highest exponent), zero for the zero polynomial.
    pub fn leading_coeff(&self) -> BigInt {
        self.terms.values().next_back().cloned().unwrap_or_default()
    }

    pub fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }
}

fn coeff_to_f64(c: Option<&BigInt>) -> f64 {
    c.and_then(|c| c.to_f64()).unwrap_or(0.0)
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        Self::monomial(1, 0)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self, "A", 1)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Writes terms in descending exponent order. Exponents are divided by
/// `denom` when printed, so quarter powers of `t` come out as `t^5/4`.
pub(crate) fn write_poly(
    f: &mut fmt::Formatter<'_>,
    p: &LaurentPoly,
    var: &str,
    denom: i64,
) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (e, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let show_coeff = !mag.is_one() || *e == 0;
        if show_coeff {
            write!(f, "{mag}")?;
        }
        if *e != 0 {
            write!(f, "{var}")?;
            if denom == 1 {
                if *e != 1 {
                    write!(f, "^{e}")?;
                }
            } else if e % denom == 0 {
                if e / denom != 1 {
                    write!(f, "^{}", e / denom)?;
                }
            } else {
                let g = gcd(e.abs(), denom);
                write!(f, "^{}/{}", e / g, denom / g)?;
            }
        }
    }
    Ok(())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn difference_of_squares() {
        let a = LaurentPoly::a();
        let ainv = LaurentPoly::a_pow(-1);
        let prod = (&a + &ainv) * (&a - &ainv);
        assert_eq!(prod, p(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn additive_identity_and_signs() {
        let q = p(&[(3, 2), (-1, -5)]);
        assert_eq!(&q + &LaurentPoly::zero(), q);
        let m = LaurentPoly::monomial(-1, 3);
        assert_eq!(&m * &m, LaurentPoly::a_pow(6));
    }

    #[test]
    fn invert_variable_negates_exponents() {
        let q = p(&[(5, -1), (-3, -1), (-7, 1)]);
        assert_eq!(q.invert_variable(), p(&[(-5, -1), (3, -1), (7, 1)]));
        assert_eq!(LaurentPoly::one().invert_variable(), LaurentPoly::one());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let q = p(&[(1, 1), (2, 3)]);
        let r = &q - &q;
        assert!(r.is_zero());
        assert_eq!(r.len(), 0);
    }

    #[test]
    fn eval_at_roots() {
        let a2 = LaurentPoly::a_pow(2);
        let v = a2.eval(Complex64::i()).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);

        let d = LaurentPoly::delta();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let v = d.eval(Complex64::from_polar(1.0, 3.0 * std::f64::consts::PI / 5.0)).unwrap();
        assert!((v.re - golden).abs() < 1e-12 && v.im.abs() < 1e-12);
        let v = d.eval(Complex64::from_polar(1.0, std::f64::consts::PI / 10.0)).unwrap();
        assert!((v.re + golden).abs() < 1e-12 && v.im.abs() < 1e-12);

        assert!(d.eval(Complex64::zero()).is_err());
    }

    #[test]
    fn display_is_readable() {
        let trefoil = p(&[(5, -1), (-3, -1), (-7, 1)]);
        assert_eq!(trefoil.to_string(), "-A^5 - A^-3 + A^-7");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p(&[(0, 2), (1, 1)]).to_string(), "A + 2");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-8i64..8, -5i64..5), 0..6).prop_map(LaurentPoly::from_pairs)
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_poly(), y in arb_poly(), z in arb_poly()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
        }

        #[test]
        fn inversion_is_an_involutive_ring_map(x in arb_poly(), y in arb_poly()) {
            prop_assert_eq!(x.invert_variable().invert_variable(), x.clone());
            prop_assert_eq!((&x * &y).invert_variable(), &x.invert_variable() * &y.invert_variable());
        }
    }
}
