//! Exact scalar fields.
//!
//! A [`Field`] is a descriptor object; its elements are plain data. This lets
//! the prime be chosen at runtime while keeping elements small and hashable.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Prime used when no field is specified.
pub const DEFAULT_PRIME: u64 = 32003;

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Maps a small rational into the field. Returns `None` when the
    /// denominator is not invertible.
    fn from_ratio(&self, q: &Ratio<i64>) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Human readable form, used in JSON reports.
    fn display(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn name(&self) -> String;
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(&self, q: &Ratio<i64>) -> Option<BigRational> {
        Some(BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom())))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn display(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn name(&self) -> String {
        "rational".to_string()
    }
}

/// The prime field `Z/pZ`. Residues are kept in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Returns `None` unless `p` is a prime in `(2, 2^31)`.
    pub fn new(p: u64) -> Option<Self> {
        if p <= 2 || p >= (1 << 31) || !is_prime(p) {
            return None;
        }
        Some(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }

    fn from_ratio(&self, q: &Ratio<i64>) -> Option<u64> {
        let den = self.reduce_i64(*q.denom());
        let inv = self.inv(&den)?;
        Some(self.mul(&self.reduce_i64(*q.numer()), &inv))
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let ext = (*a as i64).extended_gcd(&(self.p as i64));
        Some(self.reduce_i64(ext.x))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn display(&self, a: &u64) -> String {
        // symmetric representative reads better for small signed values
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }

    fn name(&self) -> String {
        format!("gfp:{}", self.p)
    }
}

/// Reduces a rational modulo `p`; `None` if the denominator vanishes mod `p`.
pub fn reduce_rational(q: &BigRational, field: &PrimeField) -> Option<u64> {
    let p = BigInt::from(field.p);
    let num = q.numer().mod_floor(&p).to_u64()?;
    let den = q.denom().mod_floor(&p).to_u64()?;
    let inv = field.inv(&den)?;
    Some(field.mul(&num, &inv))
}

/// Converts an exact rational that is known to be an integer into `i64`.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    let v = q.numer();
    if v.abs() > BigInt::from(i64::MAX) {
        return None;
    }
    v.to_i64()
}
