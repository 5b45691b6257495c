//! Exact coefficient fields: the rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Field elements. Over a prime field the value is always an integer in `0..p`.
pub type Scalar = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Usage(format!("{p} is not a prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.normalize(Scalar::from_integer(BigInt::from(n)))
    }

    /// Maps an arbitrary rational into the field. Panics over `F_p` when the
    /// denominator is divisible by `p`.
    pub fn normalize(&self, x: Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => x,
            FieldSpec::Prime(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                assert!(
                    !den.is_zero(),
                    "denominator divisible by the characteristic"
                );
                let inv = mod_inverse(&den, &p);
                Scalar::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.normalize(-a)
    }

    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            FieldSpec::Rationals => a.recip(),
            FieldSpec::Prime(p) => {
                let p = BigInt::from(*p);
                Scalar::from_integer(mod_inverse(a.numer(), &p))
            }
        }
    }

    /// Renders a field element with a sign, choosing the symmetric
    /// representative over prime fields (so `-1` prints as `-1`, not `p-1`).
    pub fn display(&self, a: &Scalar) -> String {
        match self {
            FieldSpec::Rationals => a.to_string(),
            FieldSpec::Prime(p) => {
                let v = a.numer().to_i128().unwrap_or(0);
                let p = *p as i128;
                let v = if v > p / 2 { v - p } else { v };
                v.to_string()
            }
        }
    }

    /// Integer value of an element when it has one (used for JSON output).
    pub fn signed_value(&self, a: &Scalar) -> Option<i64> {
        match self {
            FieldSpec::Rationals => {
                if a.is_integer() {
                    a.numer().to_i64()
                } else {
                    None
                }
            }
            FieldSpec::Prime(p) => {
                let v = a.numer().to_i64()?;
                let p = *p as i64;
                Some(if v > p / 2 { v - p } else { v })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Usage(format!("invalid prime in field spec `{s}`")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::Usage(format!(
            "invalid field `{s}`, expected `q` or `fp:<prime>`"
        )))
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let g = a.extended_gcd(p);
    assert!(
        g.gcd.is_one() || (-&g.gcd).is_one(),
        "element not invertible"
    );
    let x = if g.gcd.is_negative() { -g.x } else { g.x };
    x.mod_floor(p)
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
