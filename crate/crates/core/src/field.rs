//! Coefficient fields.
//!
//! Prime fields carry their modulus at runtime, so field operations go through
//! a context object implementing [`Field`] rather than through operator traits
//! on the element type. Any exact `num_traits::Num` type (rationals, big
//! integers used as a field of fractions) plugs in through [`Exact`].

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit in 32 bits")]
    ModulusTooLarge(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
}

/// A field given by a context object; elements are plain values.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// If `q` is a prime power `p^e` with `e >= 1`, returns `(p, e)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// The prime field F_p, with `p < 2^32` so products fit in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 32 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Reduces a decimal digit string without overflow.
    pub fn reduce_decimal(&self, digits: &str) -> Option<u64> {
        let mut acc = 0u64;
        for ch in digits.chars() {
            let d = ch.to_digit(10)? as u64;
            acc = (acc * 10 + d) % self.p;
        }
        Some(acc)
    }

    #[inline]
    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    pub fn elem(&self, value: i64) -> Fp {
        Fp { value: self.reduce_i64(value), modulus: self.p }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        self.pow(*a, self.p - 2)
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
}

/// A fully reduced element of F_p that knows its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Result<Self, FieldError> {
        Ok(PrimeField::new(modulus)?.elem(value))
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn pow(self, exp: u64) -> Fp {
        Fp { value: self.field().pow(self.value, exp), modulus: self.modulus }
    }

    pub fn inv(self) -> Option<Fp> {
        (self.value != 0).then(|| Fp { value: self.field().inv(&self.value), modulus: self.modulus })
    }

    pub fn try_add(self, rhs: Fp) -> Result<Fp, FieldError> {
        self.check(rhs)?;
        Ok(Fp { value: self.field().add(&self.value, &rhs.value), modulus: self.modulus })
    }

    pub fn try_mul(self, rhs: Fp) -> Result<Fp, FieldError> {
        self.check(rhs)?;
        Ok(Fp { value: self.field().mul(&self.value, &rhs.value), modulus: self.modulus })
    }

    fn check(self, rhs: Fp) -> Result<(), FieldError> {
        if self.modulus != rhs.modulus {
            return Err(FieldError::ModulusMismatch(self.modulus, rhs.modulus));
        }
        Ok(())
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.try_add(rhs).expect("F_p addition across moduli")
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.try_mul(rhs).expect("F_p multiplication across moduli")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { value: self.field().neg(&self.value), modulus: self.modulus }
    }
}

/// Field structure on an exact `num_traits` number type such as `BigRational`.
pub struct Exact<T>(PhantomData<fn() -> T>);

impl<T> Exact<T> {
    pub fn new() -> Self {
        Exact(PhantomData)
    }
}

impl<T> Default for Exact<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for Exact<T> {
    fn clone(&self) -> Self {
        Self::new()
    }
}

impl<T> fmt::Debug for Exact<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Exact<{}>", std::any::type_name::<T>())
    }
}

impl<T> Field for Exact<T>
where
    T: num_traits::Num + num_traits::FromPrimitive + Clone + fmt::Debug + Send + Sync,
{
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }
    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn neg(&self, a: &T) -> T {
        T::zero() - a.clone()
    }
    fn inv(&self, a: &T) -> T {
        assert!(!a.is_zero(), "inverse of zero");
        T::one() / a.clone()
    }
    fn from_i64(&self, v: i64) -> T {
        T::from_i64(v).expect("integer embeds in the field")
    }
}
