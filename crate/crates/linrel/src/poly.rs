//! Univariate polynomials over GF(p), coefficients stored lowest degree
//! first with no trailing zeros (the zero polynomial has no coefficients).

use crate::field::{Prime, Scalar};
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    p: Prime,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn from_coeffs(p: Prime, coeffs: &[u64]) -> Self {
        let mut c: Vec<u32> = coeffs.iter().map(|&e| p.scalar(e).value()).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { p, coeffs: c }
    }

    pub fn zero(p: Prime) -> Self {
        Self { p, coeffs: vec![] }
    }

    pub fn one(p: Prime) -> Self {
        Self::from_coeffs(p, &[1])
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(c.modulus(), &[u64::from(c.value())])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut coeffs = vec![0u64; k + 1];
        coeffs[k] = u64::from(c.value());
        Self::from_coeffs(c.modulus(), &coeffs)
    }

    pub fn x(p: Prime) -> Self {
        Self::monomial(p.one(), 1)
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Scalar {
        match self.coeffs.last() {
            Some(&c) => self.p.scalar(u64::from(c)),
            None => self.p.zero(),
        }
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.p
            .scalar(u64::from(self.coeffs.get(k).copied().unwrap_or(0)))
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.coeffs.iter().map(|&c| u64::from(c)).collect()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn check_field(&self, other: &Poly) {
        assert_eq!(
            self.p, other.p,
            "polynomial arithmetic across different fields"
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs: Vec<u64> = (0..n)
            .map(|i| {
                u64::from(self.coeffs.get(i).copied().unwrap_or(0))
                    + u64::from(other.coeffs.get(i).copied().unwrap_or(0))
            })
            .collect();
        Poly::from_coeffs(self.p, &coeffs)
    }

    pub fn neg(&self) -> Poly {
        let p = u64::from(self.p.value());
        let coeffs: Vec<u64> = self.coeffs.iter().map(|&c| p - u64::from(c)).collect();
        Poly::from_coeffs(self.p, &coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        let p = u64::from(self.p.value());
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + u64::from(a) * u64::from(b)) % p;
            }
        }
        Poly::from_coeffs(self.p, &coeffs)
    }

    pub fn scale(&self, c: Scalar) -> Poly {
        self.mul(&Poly::constant(c))
    }

    /// Long division: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and
    /// `deg remainder < deg divisor`. Panics on a zero divisor.
    pub fn divmod(&self, divisor: &Poly) -> (Poly, Poly) {
        self.check_field(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.p);
        let dlead_inv = divisor.leading_coeff().inv().expect("divisor is nonzero");
        let ddeg = divisor.degree().expect("divisor is nonzero");
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                break;
            }
            let factor = rem.leading_coeff() * dlead_inv;
            let term = Poly::monomial(factor, rdeg - ddeg);
            quot = quot.add(&term);
            rem = rem.sub(&term.mul(divisor));
        }
        (quot, rem)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divmod(self).1.is_zero()
    }

    /// Monic greatest common divisor; `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scales to leading coefficient one; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.leading_coeff().inv().expect("nonzero leading coeff"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.p);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match k {
                0 => format!("{c}"),
                1 if c == 1 => "x".to_string(),
                1 => format!("{c}x"),
                _ if c == 1 => format!("x^{k}"),
                _ => format!("{c}x^{k}"),
            })
            .collect();
        write!(f, "{} (mod {})", terms.join(" + "), self.p)
    }
}
