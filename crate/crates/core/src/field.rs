//! Exact field scalars: arbitrary-precision rationals and prime fields.
//!
//! Every matrix in this crate carries a [`FieldDesc`] and all of its entries
//! live in that one field. Arithmetic between scalars of different fields is
//! a programming error and panics.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Which exact field the computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    /// ℚ with arbitrary-precision integers.
    Rational,
    /// 𝔽_p for a prime p.
    Prime(u64),
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rational => write!(f, "rational"),
            FieldDesc::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("`{0}` is not a valid field descriptor (expected `rational` or `prime:p`)")]
    BadDescriptor(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse `{0}` as a field element")]
    BadScalar(String),
    #[error("division by zero (denominator vanishes in 𝔽_{0})")]
    ZeroDenominator(u64),
}

impl FromStr for FieldDesc {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        if s == "rational" {
            return Ok(FieldDesc::Rational);
        }
        if let Some(p) = s.strip_prefix("prime:") {
            let p: u64 = p
                .parse()
                .map_err(|_| FieldError::BadDescriptor(s.to_string()))?;
            if !is_prime(p) {
                return Err(FieldError::NotPrime(p));
            }
            return Ok(FieldDesc::Prime(p));
        }
        Err(FieldError::BadDescriptor(s.to_string()))
    }
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// An element of the session field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { modulus: u64, value: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldDesc {
        match self {
            Scalar::Rational(_) => FieldDesc::Rational,
            Scalar::Prime { modulus, .. } => FieldDesc::Prime(*modulus),
        }
    }

    pub fn zero(field: FieldDesc) -> Scalar {
        match field {
            FieldDesc::Rational => Scalar::Rational(BigRational::zero()),
            FieldDesc::Prime(p) => Scalar::Prime {
                modulus: p,
                value: 0,
            },
        }
    }

    pub fn one(field: FieldDesc) -> Scalar {
        match field {
            FieldDesc::Rational => Scalar::Rational(BigRational::one()),
            FieldDesc::Prime(p) => Scalar::Prime {
                modulus: p,
                value: 1 % p,
            },
        }
    }

    pub fn from_integer(field: FieldDesc, n: i64) -> Scalar {
        match field {
            FieldDesc::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldDesc::Prime(p) => Scalar::Prime {
                modulus: p,
                value: (n as i128).rem_euclid(p as i128) as u64,
            },
        }
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
            Scalar::Prime { modulus, value } => *value == 1 % *modulus,
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across different fields"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { modulus, value: a }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime {
                    modulus: *modulus,
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { modulus, value } => Scalar::Prime {
                modulus: *modulus,
                value: if *value == 0 { 0 } else { modulus - value },
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { modulus, value: a }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime {
                    modulus: *modulus,
                    value: mul_mod(*a, *b, *modulus),
                }
            }
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Prime { modulus, value } => Scalar::Prime {
                modulus: *modulus,
                value: pow_mod(*value, *modulus - 2, *modulus),
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Parses `n` or `a/b` in the given field. In a prime field a fraction
    /// is interpreted as `a · b⁻¹ mod p`.
    pub fn parse(field: FieldDesc, s: &str) -> Result<Scalar, FieldError> {
        let s = s.trim();
        let bad = || FieldError::BadScalar(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        match field {
            FieldDesc::Rational => {
                let n = BigInt::from_str(num).map_err(|_| bad())?;
                let d = match den {
                    Some(d) => BigInt::from_str(d).map_err(|_| bad())?,
                    None => BigInt::one(),
                };
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(n, d)))
            }
            FieldDesc::Prime(p) => {
                let n: i64 = num.parse().map_err(|_| bad())?;
                let mut v = Scalar::from_integer(field, n);
                if let Some(d) = den {
                    let d: i64 = d.parse().map_err(|_| bad())?;
                    let d = Scalar::from_integer(field, d);
                    v = v.div(&d).ok_or(FieldError::ZeroDenominator(p))?;
                }
                Ok(v)
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() && r.numer().magnitude() == r.denom().magnitude() {
                    write!(f, "-1")
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}
