//! Coefficient fields: the rationals and prime fields `F_p` with `p < 2^31`.
//!
//! A [`CoeffField`] is a value describing the field; scalars are carried in
//! the [`Scalar`] enum and all arithmetic goes through the field so that
//! prime-field elements stay reduced and rationals stay normalized.

use crate::error::{Error, Result};
use num::{bigint::Sign, BigInt, BigRational, One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    /// Prime field of the given characteristic.
    Prime(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoeffField {
    kind: FieldKind,
}

/// An element of one of the supported fields.
///
/// Prime-field elements are canonical representatives in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

impl CoeffField {
    pub fn rationals() -> Self {
        CoeffField {
            kind: FieldKind::Rationals,
        }
    }

    /// Prime field of characteristic `p`. Primality is checked.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= (1u64 << 31) {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(CoeffField {
            kind: FieldKind::Prime(p as u32),
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => p as u64,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Rat(BigRational::zero()),
            FieldKind::Prime(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Rat(BigRational::one()),
            FieldKind::Prime(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Rat(BigRational::from(BigInt::from(v))),
            FieldKind::Prime(p) => {
                let p = p as i128;
                let r = ((v as i128 % p) + p) % p;
                Scalar::Fp(r as u64)
            }
        }
    }

    /// Reduce a (possibly huge) integer given by its decimal digits.
    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Rat(BigRational::from(v.clone())),
            FieldKind::Prime(p) => {
                let p = BigInt::from(p);
                let mut r = v % &p;
                if r.sign() == Sign::Minus {
                    r += &p;
                }
                let digits = r.to_u64_digits().1;
                Scalar::Fp(digits.first().copied().unwrap_or(0))
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.kind, a, b) {
            (FieldKind::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (FieldKind::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                let s = x + y;
                Scalar::Fp(if s >= p as u64 { s - p as u64 } else { s })
            }
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.kind, a, b) {
            (FieldKind::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            (FieldKind::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                let p = p as u64;
                Scalar::Fp(if x >= y { x - y } else { x + p - y })
            }
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self.kind, a) {
            (FieldKind::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (FieldKind::Prime(p), Scalar::Fp(x)) => {
                Scalar::Fp(if *x == 0 { 0 } else { p as u64 - x })
            }
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.kind, a, b) {
            (FieldKind::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (FieldKind::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(x * y % p as u64),
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self.kind, a) {
            (FieldKind::Rationals, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            (FieldKind::Prime(p), Scalar::Fp(x)) => Scalar::Fp(mod_inverse(*x, p as u64)),
            _ => panic!("scalar kind does not match field"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Canonical display string. Prime-field values above `p/2` print as
    /// negative representatives so generated matrices stay readable.
    pub fn fmt_scalar(&self, a: &Scalar) -> String {
        match (self.kind, a) {
            (FieldKind::Rationals, Scalar::Rat(x)) => x.to_string(),
            (FieldKind::Prime(p), Scalar::Fp(v)) => {
                let p = p as u64;
                if *v > p / 2 {
                    format!("-{}", p - v)
                } else {
                    v.to_string()
                }
            }
            _ => panic!("scalar kind does not match field"),
        }
    }

    /// True when the display form of `a` begins with a minus sign.
    pub fn is_display_negative(&self, a: &Scalar) -> bool {
        match (self.kind, a) {
            (FieldKind::Rationals, Scalar::Rat(x)) => x.is_negative(),
            (FieldKind::Prime(p), Scalar::Fp(v)) => *v > (p as u64) / 2,
            _ => panic!("scalar kind does not match field"),
        }
    }
}

impl fmt::Display for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "q"),
            FieldKind::Prime(p) => write!(f, "fp {p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
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

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid on (a, p); p prime and a nonzero mod p.
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    let p = p as i128;
    (((old_s % p) + p) % p) as u64
}
