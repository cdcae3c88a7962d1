//! Exact arithmetic in the cyclotomic fields Q(zeta_N).
//!
//! An element of order `N` is stored as its coordinate vector in the power
//! basis `1, zeta, ..., zeta^(phi(N)-1)`, i.e. reduced modulo the cyclotomic
//! polynomial `Phi_N`. Operands of different orders are embedded into the
//! field of the least common multiple first.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of `Phi_n`, lowest degree first.
///
/// Computed as `(x^n - 1) / prod_{d | n, d < n} Phi_d` by exact division.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = divide_monic(&num, &div);
        }
    }
    let p = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient, via the degree of `Phi_n`.
pub fn totient(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![q] }
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    /// The element `sum_j coeffs[j] * zeta_n^j` for a coefficient list of any length.
    pub fn from_power_coeffs(order: u32, coeffs: &[BigRational]) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let n = order as usize;
        let mut folded = vec![BigRational::zero(); n];
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                folded[j % n] += c;
            }
        }
        Cyclotomic { order, coeffs: reduce(folded, order) }
    }

    /// `zeta_n^k`; negative `k` is allowed.
    pub fn root(order: u32, k: i64) -> Self {
        let n = order as i64;
        let mut v = vec![BigRational::zero(); order as usize];
        v[k.rem_euclid(n) as usize] = BigRational::one();
        Cyclotomic { order, coeffs: reduce(v, order) }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Re-express in `Q(zeta_m)`; requires `order | m`.
    pub fn embed(&self, m: u32) -> Self {
        assert!(m % self.order == 0, "cannot embed order {} into {}", self.order, m);
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut v = vec![BigRational::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(j * step) % m as usize] += c;
            }
        }
        Cyclotomic { order: m, coeffs: reduce(v, m) }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = a.order.lcm(&b.order);
        (a.embed(m), b.embed(m))
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut v = vec![BigRational::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(n - j) % n] += c;
            }
        }
        Cyclotomic { order: self.order, coeffs: reduce(v, self.order) }
    }

    /// The Galois automorphism `zeta -> zeta^k`; requires `gcd(k, order) = 1`.
    pub fn galois(&self, k: u32) -> Self {
        assert!(k.gcd(&self.order) == 1, "{k} is not a unit mod {}", self.order);
        let n = self.order as usize;
        let mut v = vec![BigRational::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(j * k as usize) % n] += c;
            }
        }
        Cyclotomic { order: self.order, coeffs: reduce(v, self.order) }
    }

    /// `x^-1 = prod_{sigma != 1} sigma(x) / N(x)`.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut others = Cyclotomic::from_integer(1);
        for k in 2..self.order.max(2) {
            if k.gcd(&self.order) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (&others * self).rationality_check().ok()?;
        Some(others.scale(&norm.recip()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    /// The rational value, or the non-constant residual as an error.
    pub fn rationality_check(&self) -> Result<BigRational> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::Rationality(format!("{self} has irrational part")))
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::from_integer(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

/// Reduce a coefficient vector of length `n` (or less) modulo `Phi_n`.
fn reduce(mut v: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for i in (deg..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[i], BigRational::zero());
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                v[i - deg + j] -= &c * BigRational::from_integer(BigInt::from(pj));
            }
        }
    }
    v.resize(deg, BigRational::zero());
    v
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl<'a> std::ops::Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl<'a> std::ops::Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl<'a> std::ops::Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.order == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.order == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let (a, b) = Cyclotomic::common(self, rhs);
        let mut prod = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Cyclotomic { order: a.order, coeffs: reduce(prod, a.order) }
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})*z{}^{j}", self.order)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(60), 16);
    }

    #[test]
    fn sum_of_primitive_cube_roots() {
        let s = &Cyclotomic::root(3, 1) + &Cyclotomic::root(3, 2);
        assert_eq!(s.rationality_check().unwrap(), q(-1, 1));
    }

    #[test]
    fn i_to_the_twelve() {
        let i = Cyclotomic::root(4, 1);
        let x = &i.pow(12) - &Cyclotomic::from_integer(1);
        assert!(x.is_zero());
    }

    #[test]
    fn primitive_fifth_root_is_irrational() {
        assert!(Cyclotomic::root(5, 1).rationality_check().is_err());
    }

    #[test]
    fn embedding_preserves_value() {
        let z = Cyclotomic::root(3, 1);
        assert_eq!(z.embed(12), Cyclotomic::root(12, 4));
        assert_eq!(z, Cyclotomic::root(6, 2));
    }

    #[test]
    fn inverse_in_q_zeta_12() {
        let x = &Cyclotomic::from_integer(2) - &Cyclotomic::root(12, 1);
        let y = x.inverse().unwrap();
        assert_eq!((&x * &y).rationality_check().unwrap(), q(1, 1));
    }

    #[test]
    fn norm_of_one_minus_zeta() {
        // (1 - zeta_5)(1 - zeta_5^{-1}) = 2 - 2cos(2pi/5) is irrational; over all 4 conjugates the norm is 5
        let one = Cyclotomic::from_integer(1);
        let mut n = one.clone();
        for k in 1..5 {
            n = &n * &(&one - &Cyclotomic::root(5, k));
        }
        assert_eq!(n.rationality_check().unwrap(), q(5, 1));
    }
}
