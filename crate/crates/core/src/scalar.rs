//! Exact scalars: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// The ground field. All arithmetic is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExactField {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl ExactField {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        // moduli must fit products in u128 comfortably
        if is_prime(p) && p < (1 << 62) {
            Ok(ExactField::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            ExactField::Rationals => 0,
            ExactField::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            ExactField::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            ExactField::Prime(p) => Scalar::Modular {
                value: v.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        let inv = d.inv().ok_or(ScalarError::DivisionByZero)?;
        Ok(&n * &inv)
    }

    /// Parses `"a"` or `"a/b"` (optionally signed). Floats are rejected.
    pub fn parse(&self, s: &str) -> Result<Scalar, ScalarError> {
        let t = s.trim();
        let err = || ScalarError::Parse(s.to_string());
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let valid = |x: &str| {
            let digits = x.strip_prefix('-').or_else(|| x.strip_prefix('+')).unwrap_or(x);
            !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
        };
        if !valid(num) || !valid(den) {
            return Err(err());
        }
        let n: BigInt = num.parse().map_err(|_| err())?;
        let d: BigInt = den.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match self {
            ExactField::Rationals => Ok(Scalar::Rational(BigRational::new(n, d))),
            ExactField::Prime(p) => {
                let m = BigInt::from(*p);
                let nv = n.mod_floor(&m).to_u64().unwrap();
                let dv = d.mod_floor(&m).to_u64().unwrap();
                let dv = Scalar::Modular { value: dv, modulus: *p };
                let inv = dv.inv().ok_or(ScalarError::DivisionByZero)?;
                Ok(&Scalar::Modular { value: nv, modulus: *p } * &inv)
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            ExactField::Rationals => "QQ".to_string(),
            ExactField::Prime(p) => format!("GF({p})"),
        }
    }

    pub fn from_name(s: &str) -> Result<Self, ScalarError> {
        let t = s.trim();
        if t == "QQ" {
            return Ok(ExactField::Rationals);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
        let p: u64 = inner.trim().parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
        ExactField::prime(p)
    }
}

/// An element of the ground field. Binary operations between elements of
/// different fields are a programming error and panic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

fn mod_pow(mut b: u128, mut e: u64, m: u128) -> u128 {
    let mut r = 1u128;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> ExactField {
        match self {
            Scalar::Rational(_) => ExactField::Rationals,
            Scalar::Modular { modulus, .. } => ExactField::Prime(*modulus),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: mod_pow(*value as u128, modulus - 2, *modulus as u128) as u64,
                modulus: *modulus,
            },
        })
    }

    /// Multiplies by `(-1)^odd`.
    pub fn signed(self, odd: bool) -> Scalar {
        if odd {
            -self
        } else {
            self
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Modular { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Modular {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs.clone())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Modular {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus,
            },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rationals() {
        let q = ExactField::Rationals;
        assert_eq!(q.parse("-3/6").unwrap(), q.from_ratio(-1, 2).unwrap());
        assert_eq!(q.parse("7").unwrap(), q.from_i64(7));
        assert!(q.parse("1.5").is_err());
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = ExactField::prime(7).unwrap();
        let a = f.from_i64(3);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(4));
        assert_eq!(-f.from_i64(0), f.zero());
        assert!(ExactField::prime(9).is_err());
        assert!(ExactField::prime(1).is_err());
    }

    #[test]
    fn field_names_round_trip() {
        for f in [ExactField::Rationals, ExactField::prime(11).unwrap()] {
            assert_eq!(ExactField::from_name(&f.name()).unwrap(), f);
        }
        assert!(ExactField::from_name("GF(10)").is_err());
    }
}
