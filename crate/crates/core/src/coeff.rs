//! Scalar rings for series coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::Cyclotomic;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// A commutative ring of exact scalars.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(q: Q) -> Self;
    /// `Some` iff the value lies in Q.
    fn as_rational(&self) -> Option<Q>;
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn add_assign_ref(&mut self, o: &Self) {
        *self = self.plus(o);
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.plus(&a.times(b));
    }

    fn from_int(k: i64) -> Self {
        Self::from_rational(qi(k))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }
}

impl Coeff for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(q: Q) -> Self {
        q
    }
    fn as_rational(&self) -> Option<Q> {
        Some(self.clone())
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_integer() && b.is_integer() && self.is_integer() {
            // skip the gcd normalisation on the common integral path
            let v = self.numer() + a.numer() * b.numer();
            *self = BigRational::from_integer(v);
        } else {
            *self += a * b;
        }
    }
}

impl Coeff for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::from_integer(0)
    }
    fn one() -> Self {
        Cyclotomic::from_integer(1)
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(q: Q) -> Self {
        Cyclotomic::from_rational(q)
    }
    fn as_rational(&self) -> Option<Q> {
        self.rationality_check().ok()
    }
    fn inverse(&self) -> Option<Self> {
        Cyclotomic::inverse(self)
    }
}
