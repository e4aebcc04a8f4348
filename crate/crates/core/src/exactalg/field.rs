//! Field descriptors.
//!
//! Prime moduli are only known at run time (`gf<p>` on the command line), so
//! arithmetic is routed through a descriptor object rather than through a
//! scalar type carrying its own modulus.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Gf2,
    Gfp(u32),
    Rational,
}

impl FieldSpec {
    /// GF(p) for a prime `p < 2^31`. `p = 2` yields [`FieldSpec::Gf2`].
    pub fn gfp(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(if p == 2 { FieldSpec::Gf2 } else { FieldSpec::Gfp(p as u32) })
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Gf2 => 2,
            FieldSpec::Gfp(p) => p as u64,
            FieldSpec::Rational => 0,
        }
    }

    /// Canonical representative of `x` in this field: a residue in `[0, p)`
    /// for prime fields, the reduced fraction itself over the rationals.
    pub fn reduce(self, x: &BigRational) -> Result<BigRational> {
        match self {
            FieldSpec::Rational => Ok(x.clone()),
            _ => {
                let p = self.characteristic();
                let num = mod_big(x.numer(), p);
                let den = mod_big(x.denom(), p);
                if den == 0 {
                    return Err(Error::NotInField(x.to_string(), self.to_string()));
                }
                let v = mul_mod(num, inv_mod(den, p), p);
                Ok(BigRational::from_integer(BigInt::from(v)))
            }
        }
    }

    pub fn reduce_int(self, x: i64) -> i64 {
        match self {
            FieldSpec::Rational => x,
            _ => x.rem_euclid(self.characteristic() as i64),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Gf2 => write!(f, "gf2"),
            FieldSpec::Gfp(p) => write!(f, "gf{p}"),
            FieldSpec::Rational => write!(f, "rational"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "rational" | "q" | "rationals" => Ok(FieldSpec::Rational),
            _ => {
                let digits = t
                    .strip_prefix("gf")
                    .ok_or_else(|| Error::UnknownField(s.to_string()))?;
                let p: u64 = digits.parse().map_err(|_| Error::UnknownField(s.to_string()))?;
                FieldSpec::gfp(p)
            }
        }
    }
}

pub fn is_prime(p: u64) -> bool {
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

fn mod_big(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse
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

/// Arithmetic of a field, supplied by a descriptor value.
pub trait FieldArith {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `a` must be nonzero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn embed(&self, x: &BigRational) -> Result<Self::Elem>;
    fn lift(&self, a: &Self::Elem) -> BigRational;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl FieldArith for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        inv_mod(*a, self.p)
    }
    fn embed(&self, x: &BigRational) -> Result<u64> {
        let spec = FieldSpec::gfp(self.p)?;
        let r = spec.reduce(x)?;
        Ok(r.numer().to_u64().expect("residue"))
    }
    fn lift(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl FieldArith for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn embed(&self, x: &BigRational) -> Result<BigRational> {
        Ok(x.clone())
    }
    fn lift(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
}

pub(crate) fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub(crate) fn rat_to_i64(x: &BigRational) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub(crate) fn fmt_rat(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
