//! Exact scalars over ℚ or a prime field GF(p).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

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
    #[error("unrecognized field `{0}` (expected `rational` or `gf:<p>`)")]
    BadField(String),
    #[error("{0} is not invertible in {1}")]
    NotInvertible(String, Field),
    #[error("cannot parse scalar `{0}`")]
    BadLiteral(String),
}

/// The base field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, ScalarError> {
        if is_prime(p) && p < (1 << 31) {
            Ok(Field::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn parse(s: &str) -> Result<Field, ScalarError> {
        let t = s.trim().to_ascii_lowercase();
        if t == "rational" || t == "q" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = t.strip_prefix("gf:") {
            let p: u64 = rest.parse().map_err(|_| ScalarError::BadField(s.to_string()))?;
            return Field::prime(p);
        }
        Err(ScalarError::BadField(s.to_string()))
    }

    /// 0 for ℚ.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    pub fn ratio(&self, n: i64, d: i64) -> Result<Scalar, ScalarError> {
        let den = self.int(d);
        if den.is_zero() {
            return Err(ScalarError::NotInvertible(d.to_string(), *self));
        }
        Ok(self.int(n) / den)
    }

    /// Parses `"3"`, `"-1/2"` into this field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, ScalarError> {
        let t = s.trim();
        let bad = || ScalarError::BadLiteral(s.to_string());
        match t.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                self.ratio(n, d)
            }
            None => Ok(self.int(t.parse().map_err(|_| bad())?)),
        }
    }

    /// Brings a scalar into this field.
    pub fn coerce(&self, s: &Scalar) -> Scalar {
        match (self, s) {
            (Field::Prime(p), Scalar::Rational(r)) => rational_mod(r, *p),
            _ => s.clone(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn rational_mod(r: &BigRational, p: u64) -> Scalar {
    let num = bigint_mod(r.numer(), p);
    let den = bigint_mod(r.denom(), p);
    assert!(den != 0, "denominator {} vanishes mod {p}", r.denom());
    Scalar::Prime {
        value: (num as u128 * pow_mod(den, p - 2, p) as u128 % p as u128) as u64,
        modulus: p,
    }
}

/// An exact field element. Rationals are kept in lowest terms with a
/// positive denominator; prime-field residues live in `[0, p)`.
///
/// Mixing a rational with a residue coerces the rational into GF(p), so
/// the field-agnostic constants `Scalar::zero()`/`Scalar::one()` work
/// everywhere.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_ratio(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    fn binary(
        &self,
        other: &Scalar,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        modp: impl Fn(u64, u64, u64) -> u64,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(rat(a, b)),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixing residues of different prime fields");
                Scalar::Prime { value: modp(*a, *b, *p), modulus: *p }
            }
            (Scalar::Rational(a), Scalar::Prime { modulus, .. }) => {
                rational_mod(a, *modulus).binary(other, rat, modp)
            }
            (Scalar::Prime { modulus, .. }, Scalar::Rational(b)) => {
                self.binary(&rational_mod(b, *modulus), rat, modp)
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) => {
                p == q && a == b
            }
            (Scalar::Rational(r), Scalar::Prime { value, modulus })
            | (Scalar::Prime { value, modulus }, Scalar::Rational(r)) => {
                if bigint_mod(r.denom(), *modulus) == 0 {
                    return false;
                }
                match rational_mod(r, *modulus) {
                    Scalar::Prime { value: v, .. } => v == *value,
                    Scalar::Rational(_) => unreachable!(),
                }
            }
        }
    }
}

impl Eq for Scalar {}

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
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Scalar {
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a + b, |a, b, p| (a + b) % p)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a - b, |a, b, p| (a + p - b) % p)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a * b, |a, b, p| (a as u128 * b as u128 % p as u128) as u64)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce() {
        let a = Scalar::from_ratio(2, -4);
        assert_eq!(a.to_string(), "-1/2");
        assert_eq!(&a + &Scalar::from_ratio(1, 2), Scalar::zero());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let half = f.ratio(1, 2).unwrap();
        assert_eq!(half.to_string(), "4");
        assert_eq!(&half * &f.int(2), f.one());
        assert_eq!(f.int(-1).to_string(), "6");
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn mixed_coercion() {
        let f = Field::Prime(5);
        let x = f.int(3);
        assert_eq!(&x + &Scalar::one(), f.int(4));
        assert_eq!(Scalar::from_ratio(1, 2), f.int(3));
        assert_ne!(Scalar::from_ratio(1, 5), f.int(0));
    }

    #[test]
    fn parse_fields_and_literals() {
        assert_eq!(Field::parse("gf:11").unwrap(), Field::Prime(11));
        assert_eq!(Field::parse("rational").unwrap(), Field::Rational);
        assert!(Field::parse("gf:12").is_err());
        let q = Field::Rational;
        assert_eq!(q.parse_scalar("-3/6").unwrap(), Scalar::from_ratio(-1, 2));
        assert!(Field::Prime(2).ratio(1, 2).is_err());
    }
}
