//! 2x2 matrices over a generic exact field.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::CoreError;

/// Minimal exact-field interface for the matrix and polynomial layers.
///
/// Implementations must be exact: equality is decidable and arithmetic is
/// associative/distributive on the nose, never approximately.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse; `None` exactly for zero.
    fn inv(&self) -> Option<Self>;
}

impl Field for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn one() -> Self {
        CycNum::one()
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        CycNum::inv(self).ok()
    }
}

/// A 2x2 matrix [[a, b], [c, d]] over an exact field.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Mat2<K> {
    pub a: K,
    pub b: K,
    pub c: K,
    pub d: K,
}

impl<K: Field> Mat2<K> {
    pub fn new(a: K, b: K, c: K, d: K) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(K::one(), K::zero(), K::zero(), K::one())
    }

    pub fn diag(a: K, d: K) -> Self {
        Mat2::new(a, K::zero(), K::zero(), d)
    }

    pub fn mul(&self, rhs: &Mat2<K>) -> Mat2<K> {
        Mat2::new(
            self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.c.clone(),
            self.a.clone() * rhs.b.clone() + self.b.clone() * rhs.d.clone(),
            self.c.clone() * rhs.a.clone() + self.d.clone() * rhs.c.clone(),
            self.c.clone() * rhs.b.clone() + self.d.clone() * rhs.d.clone(),
        )
    }

    pub fn det(&self) -> K {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> K {
        self.a.clone() + self.d.clone()
    }

    /// Exact inverse via the adjugate; errors on determinant zero.
    pub fn inverse(&self) -> Result<Mat2<K>, CoreError> {
        let det = self.det();
        let di = det.inv().ok_or(CoreError::SingularMatrix)?;
        Ok(Mat2::new(
            self.d.clone() * di.clone(),
            -(self.b.clone() * di.clone()),
            -(self.c.clone() * di.clone()),
            self.a.clone() * di,
        ))
    }

    pub fn scale(&self, s: &K) -> Mat2<K> {
        Mat2::new(
            self.a.clone() * s.clone(),
            self.b.clone() * s.clone(),
            self.c.clone() * s.clone(),
            self.d.clone() * s.clone(),
        )
    }

    /// self -> p * self * p^-1.
    pub fn conjugate_by(&self, p: &Mat2<K>) -> Result<Mat2<K>, CoreError> {
        Ok(p.mul(self).mul(&p.inverse()?))
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero()
            && self.c.is_zero()
            && self.a == K::one()
            && self.d == K::one()
    }

    /// lambda * I for some nonzero lambda.
    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d && !self.a.is_zero()
    }

    /// +I or -I: the kernel of SL2 -> PSL2.
    pub fn is_plus_minus_identity(&self) -> bool {
        if !self.b.is_zero() || !self.c.is_zero() || self.a != self.d {
            return false;
        }
        self.a == K::one() || self.a == -K::one()
    }

    /// Entrywise map to another field.
    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Mat2<L> {
        Mat2::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    /// Product of a slice of matrices, left to right; identity for empty input.
    pub fn product(ms: &[Mat2<K>]) -> Mat2<K> {
        ms.iter().fold(Mat2::identity(), |acc, m| acc.mul(m))
    }
}
