//! Exact arithmetic in the prime field GF(p).

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A verified prime modulus, `2 <= p <= 2^16`.
///
/// Every value of this type went through the primality check in
/// [`Prime::new`], so downstream code can rely on GF(p) being a field.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p > 1 << 16 {
            return Err(Error::ModulusTooLarge(p));
        }
        if p < 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self(p as u32))
    }

    pub fn value(self) -> u32 {
        self.0
    }

    /// The scalar `value mod p`.
    pub fn scalar(self, value: u64) -> Scalar {
        Scalar {
            value: (value % u64::from(self.0)) as u32,
            modulus: self,
        }
    }

    pub fn zero(self) -> Scalar {
        self.scalar(0)
    }

    pub fn one(self) -> Scalar {
        self.scalar(1)
    }

    /// All field elements, in the order `0, 1, ..., p-1`.
    pub fn elements(self) -> impl Iterator<Item = Scalar> {
        (0..self.0).map(move |v| Scalar {
            value: v,
            modulus: self,
        })
    }
}

impl fmt::Debug for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        u64::from(p.0)
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

/// An element of GF(p). The invariant `value < p` holds at all times.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    value: u32,
    modulus: Prime,
}

impl Scalar {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(self) -> Result<Scalar> {
        if self.value == 0 {
            return Err(Error::ZeroInverse(self.modulus.0));
        }
        // Invariants: old_r = old_s * p + old_t * value (signed arithmetic).
        let p = i64::from(self.modulus.0);
        let (mut old_r, mut r) = (p, i64::from(self.value));
        let (mut old_t, mut t) = (0i64, 1i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_t, t) = (t, old_t - q * t);
        }
        debug_assert_eq!(old_r, 1, "modulus is prime, gcd must be 1");
        Ok(self.modulus.scalar(old_t.rem_euclid(p) as u64))
    }

    fn check_same_modulus(self, other: Scalar) {
        assert_eq!(
            self.modulus, other.modulus,
            "scalar arithmetic across different moduli"
        );
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.0)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(self, rhs: Scalar) -> Scalar {
        self.check_same_modulus(rhs);
        self.modulus
            .scalar(u64::from(self.value) + u64::from(rhs.value))
    }
}

impl Sub for Scalar {
    type Output = Scalar;

    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    fn mul(self, rhs: Scalar) -> Scalar {
        self.check_same_modulus(rhs);
        self.modulus
            .scalar(u64::from(self.value) * u64::from(rhs.value))
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        self.modulus.scalar(u64::from(self.modulus.0 - self.value))
    }
}
