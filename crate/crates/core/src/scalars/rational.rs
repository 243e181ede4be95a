use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};

/// Quotient of two Laurent polynomials in `A`.
///
/// Values are kept reduced (common polynomial factors and integer content
/// removed, denominator with lowest exponent 0 and positive leading
/// coefficient) but equality never relies on that: it is tested by
/// cross-multiplication.
#[derive(Clone)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.num.is_zero() {
            return Err(Error::Domain("division by the zero rational function".into()));
        }
        Ok(Self::reduced(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Returns the polynomial if the denominator is a unit `±A^k`.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        if self.den.len() != 1 {
            return None;
        }
        let (e, c) = self.den.terms().next()?;
        if c.is_one() {
            Some(self.num.shift(-e))
        } else if (-c).is_one() {
            Some(-self.num.shift(-e))
        } else {
            None
        }
    }

    pub fn invert_variable(&self) -> Self {
        Self::reduced(self.num.invert_variable(), self.den.invert_variable())
    }

    pub fn eval(&self, a: Complex64) -> Result<Complex64> {
        let d = self.den.eval(a)?;
        if d.norm() < 1e-300 {
            return Err(Error::Domain("rational function evaluated at a pole".into()));
        }
        Ok(self.num.eval(a)? / d)
    }

    fn reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self { num, den: LaurentPoly::one() };
        }
        let (nlo, ncoef) = num.dense();
        let (dlo, dcoef) = den.dense();
        let g = poly_gcd(&ncoef, &dcoef);
        let (mut ncoef, mut dcoef) = if g.len() > 1 {
            (exact_div(&ncoef, &g), exact_div(&dcoef, &g))
        } else {
            (ncoef, dcoef)
        };
        let c = content(&ncoef).gcd(&content(&dcoef));
        if !c.is_one() {
            ncoef.iter_mut().for_each(|x| *x /= &c);
            dcoef.iter_mut().for_each(|x| *x /= &c);
        }
        if dcoef.last().is_some_and(|x| x.is_negative()) {
            ncoef.iter_mut().for_each(|x| *x = -&*x);
            dcoef.iter_mut().for_each(|x| *x = -&*x);
        }
        Self {
            num: LaurentPoly::from_dense(nlo - dlo, ncoef),
            den: LaurentPoly::from_dense(0, dcoef),
        }
    }
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
}

fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<BigInt> = p.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|x| x.is_negative()) {
        out.iter_mut().for_each(|x| *x = -&*x);
    }
    out
}

/// Pseudo-remainder of `a` by `b` (both dense, low degree first).
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let n = b.len() - 1;
    let lc = &b[n];
    while r.len() > n && !r.is_empty() {
        let shift = r.len() - 1 - n;
        let lead = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] -= &lead * bk;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd of two integer polynomials (primitive PRS).
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = primitive(a);
    let mut y = primitive(b);
    trim(&mut x);
    trim(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
        trim(&mut y);
    }
    primitive(&x)
}

/// Exact division in `Z[x]`; the caller guarantees `g` divides `p`.
fn exact_div(p: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let mut r = p.to_vec();
    trim(&mut r);
    let n = g.len() - 1;
    if r.len() <= n {
        return r;
    }
    let mut q = vec![BigInt::zero(); r.len() - n];
    let lc = &g[n];
    while r.len() > n {
        let shift = r.len() - 1 - n;
        let lead = r.last().unwrap().clone();
        let (qc, rem) = lead.div_rem(lc);
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        for (k, gk) in g.iter().enumerate() {
            r[k + shift] -= &qc * gk;
        }
        q[shift] = qc;
        trim(&mut r);
    }
    q
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFn {}

impl Zero for RationalFn {
    fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFn {
    fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFn::reduced(&self.num + &rhs.num, self.den.clone());
        }
        RationalFn::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Mul<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RationalFn::zero();
        }
        RationalFn::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: RationalFn) -> RationalFn {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: &RationalFn) -> RationalFn {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        -&self
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_poly() {
            return write!(f, "{p}");
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFn({self})")
    }
}
