//! Coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// A field element. `Q` values are always reduced fractions; `Fp` values live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    Fp(u64),
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NonPrimeCharacteristic(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Q(BigRational::zero()),
            FieldSpec::Prime(_) => Coeff::Fp(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Q(BigRational::one()),
            FieldSpec::Prime(_) => Coeff::Fp(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Q(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Coeff::Fp(v.rem_euclid(*p as i64) as u64),
        }
    }

    /// Maps an exact fraction into the field. Fails over `F_p` when `p` divides the denominator.
    pub fn from_rational(&self, v: &BigRational) -> Result<Coeff> {
        match self {
            FieldSpec::Rationals => Ok(Coeff::Q(v.clone())),
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(*p);
                let num = v.numer().mod_floor(&pb).to_u64().unwrap_or(0);
                let den = v.denom().mod_floor(&pb).to_u64().unwrap_or(0);
                if den == 0 {
                    return Err(Error::CoefficientNotInField(v.to_string()));
                }
                Ok(Coeff::Fp(mul_mod(num, inv_mod(den, *p), *p)))
            }
        }
    }

    pub fn is_zero(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Q(q) => q.is_zero(),
            Coeff::Fp(v) => *v == 0,
        }
    }

    pub fn is_one(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Q(q) => q.is_one(),
            Coeff::Fp(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, self) {
            (Coeff::Q(x), Coeff::Q(y), _) => Coeff::Q(x + y),
            (Coeff::Fp(x), Coeff::Fp(y), FieldSpec::Prime(p)) => Coeff::Fp((x + y) % p),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (a, self) {
            (Coeff::Q(x), _) => Coeff::Q(-x),
            (Coeff::Fp(x), FieldSpec::Prime(p)) => Coeff::Fp((p - x) % p),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, self) {
            (Coeff::Q(x), Coeff::Q(y), _) => Coeff::Q(x * y),
            (Coeff::Fp(x), Coeff::Fp(y), FieldSpec::Prime(p)) => Coeff::Fp(mul_mod(*x, *y, *p)),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        assert!(!self.is_zero(a), "inverse of zero");
        match (a, self) {
            (Coeff::Q(x), _) => Coeff::Q(x.recip()),
            (Coeff::Fp(x), FieldSpec::Prime(p)) => Coeff::Fp(inv_mod(*x, *p)),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad characteristic in field `{s}`")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::Invalid(format!("unknown field `{s}` (expected Q or Fp:<p>)")))
    }
}

impl Coeff {
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_negative(),
            Coeff::Fp(_) => false,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(q) => write!(f, "{q}"),
            Coeff::Fp(v) => write!(f, "{v}"),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}
