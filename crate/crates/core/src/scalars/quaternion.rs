use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Real quaternion `a + b i + c j + d k`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// A pure quaternion viewed as a vector in R³.
pub type Vec3 = [f64; 3];

impl Quaternion {
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn pure(v: Vec3) -> Self {
        Self::new(0.0, v[0], v[1], v[2])
    }

    /// `a + b u` for a pure unit direction `u`.
    pub fn from_axis(a: f64, b: f64, u: Vec3) -> Self {
        Self::new(a, b * u[0], b * u[1], b * u[2])
    }

    /// `e^{θu} = cos θ + sin θ u`.
    pub fn exp_axis(theta: f64, u: Vec3) -> Self {
        Self::from_axis(theta.cos(), theta.sin(), u)
    }

    pub fn scalar(&self) -> f64 {
        self.a
    }

    pub fn vector(&self) -> Vec3 {
        [self.b, self.c, self.d]
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn normalized(&self) -> Self {
        self.scale(1.0 / self.norm())
    }

    pub fn inverse(&self) -> Self {
        self.conj().scale(1.0 / self.norm_sqr())
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        self.a.abs() <= tol
    }
}

pub fn dot(u: Vec3, v: Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub fn cross(u: Vec3, v: Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub fn norm3(u: Vec3) -> f64 {
    dot(u, u).sqrt()
}

pub fn scale3(u: Vec3, s: f64) -> Vec3 {
    [u[0] * s, u[1] * s, u[2] * s]
}

pub fn add3(u: Vec3, v: Vec3) -> Vec3 {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

/// `(x + u)(y + v) = xy - u·v + x v + y u + u×v`.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        let (u, v) = (self.vector(), rhs.vector());
        let s = self.a * rhs.a - dot(u, v);
        let w = add3(add3(scale3(v, self.a), scale3(u, rhs.a)), cross(u, v));
        Quaternion::new(s, w[0], w[1], w[2])
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.a + rhs.a, self.b + rhs.b, self.c + rhs.c, self.d + rhs.d)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.a - rhs.a, self.b - rhs.b, self.c - rhs.c, self.d - rhs.d)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}
