use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Field {
    #[default]
    Rationals,
    /// Residues modulo a prime `p < 2^31`.
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::Parse {
                input: p.to_string(),
                position: 0,
                message: "expected a prime below 2^31".into(),
            });
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar(Repr::Small(Ratio::from_integer(n))),
            Field::Prime(p) => Scalar(Repr::Mod(n.rem_euclid(p as i64) as u64, p)),
        }
    }

    /// `num / den` in this field; `None` when `den` vanishes in the field.
    pub fn ratio(self, num: i64, den: i64) -> Option<Scalar> {
        let d = self.int(den);
        if d.is_zero() {
            return None;
        }
        Some(self.int(num).mul(&d.inv()))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    /// Parses a scalar written as `a` or `a/b` into this field.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let bad = |msg: &str| Error::Parse {
            input: text.to_string(),
            position: 0,
            message: msg.to_string(),
        };
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text.trim(), "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| bad("invalid numerator"))?;
        let den = BigInt::from_str(den).map_err(|_| bad("invalid denominator"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        match self {
            Field::Rationals => Ok(Scalar::from_big(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pm = BigInt::from(p);
                let n = num.mod_floor(&pm).to_u64().unwrap();
                let d = den.mod_floor(&pm).to_u64().unwrap();
                if d == 0 {
                    return Err(bad("denominator vanishes modulo p"));
                }
                Ok(Scalar(Repr::Mod(n, p)).mul(&Scalar(Repr::Mod(d, p)).inv()))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "q" | "Q" | "rationals" => Ok(Field::Rationals),
            _ => {
                let Some(p) = t.strip_prefix("fp:") else {
                    return Err(Error::Parse {
                        input: s.into(),
                        position: 0,
                        message: "expected `rationals` or `fp:<prime>`".into(),
                    });
                };
                let p = p.parse::<u64>().map_err(|_| Error::Parse {
                    input: s.into(),
                    position: 3,
                    message: "invalid prime".into(),
                })?;
                Field::prime(p)
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element: a reduced rational or a residue modulo a prime.
///
/// Rationals that fit in 64-bit numerator and denominator are kept inline and
/// promoted to big integers on overflow; the representation is canonical, so
/// derived equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Ratio<i64>),
    Big(BigRational),
    Mod(u64, u64),
}

impl Scalar {
    fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            // keep clear of i64::MIN so that negation never overflows
            if n != i64::MIN && d != i64::MIN {
                return Scalar(Repr::Small(Ratio::new_raw(n, d)));
            }
        }
        Scalar(Repr::Big(r))
    }

    fn to_big(r: &Ratio<i64>) -> BigRational {
        BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
    }

    pub fn field(&self) -> Field {
        match self.0 {
            Repr::Mod(_, p) => Field::Prime(p),
            _ => Field::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(r) => r.is_zero(),
            Repr::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_one(),
            Repr::Big(r) => r.is_one(),
            Repr::Mod(v, _) => *v == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Mod(a, p), Repr::Mod(b, q)) => {
                debug_assert_eq!(p, q);
                Scalar(Repr::Mod((a + b) % p, *p))
            }
            (Repr::Small(a), Repr::Small(b)) => match a.checked_add(b) {
                Some(c) => Scalar::from_big_or_small(c),
                None => Scalar::from_big(Scalar::to_big(a) + Scalar::to_big(b)),
            },
            (a, b) => Scalar::from_big(a.big() + b.big()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Mod(a, p), Repr::Mod(b, q)) => {
                debug_assert_eq!(p, q);
                Scalar(Repr::Mod((a + p - b) % p, *p))
            }
            (Repr::Small(a), Repr::Small(b)) => match a.checked_sub(b) {
                Some(c) => Scalar::from_big_or_small(c),
                None => Scalar::from_big(Scalar::to_big(a) - Scalar::to_big(b)),
            },
            (a, b) => Scalar::from_big(a.big() - b.big()),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Mod(a, p), Repr::Mod(b, q)) => {
                debug_assert_eq!(p, q);
                Scalar(Repr::Mod(a * b % p, *p))
            }
            (Repr::Small(a), Repr::Small(b)) => match a.checked_mul(b) {
                Some(c) => Scalar::from_big_or_small(c),
                None => Scalar::from_big(Scalar::to_big(a) * Scalar::to_big(b)),
            },
            (a, b) => Scalar::from_big(a.big() * b.big()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match &self.0 {
            Repr::Mod(a, p) => Scalar(Repr::Mod((p - a) % p, *p)),
            Repr::Small(a) => Scalar(Repr::Small(-*a)),
            Repr::Big(a) => Scalar::from_big(-a.clone()),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match &self.0 {
            Repr::Mod(a, p) => Scalar(Repr::Mod(pow_mod(*a, p - 2, *p), *p)),
            Repr::Small(a) => Scalar(Repr::Small(a.recip())),
            Repr::Big(a) => Scalar::from_big(a.recip()),
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    fn from_big_or_small(r: Ratio<i64>) -> Scalar {
        if *r.numer() == i64::MIN || *r.denom() == i64::MIN {
            Scalar(Repr::Big(Scalar::to_big(&r)))
        } else {
            Scalar(Repr::Small(r))
        }
    }

    /// The value as a small integer, if it is one.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(r) if r.is_integer() => Some(*r.numer()),
            Repr::Big(r) if r.is_integer() => r.numer().to_i64(),
            Repr::Mod(v, _) => Some(*v as i64),
            _ => None,
        }
    }

    /// Numerator and denominator as big integers (residues report denominator 1).
    pub fn to_fraction(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(r) => (BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Repr::Big(r) => (r.numer().clone(), r.denom().clone()),
            Repr::Mod(v, _) => (BigInt::from(*v), BigInt::one()),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_negative(),
            Repr::Big(r) => r.is_negative(),
            Repr::Mod(..) => false,
        }
    }
}

impl Repr {
    fn big(&self) -> BigRational {
        match self {
            Repr::Small(r) => Scalar::to_big(r),
            Repr::Big(r) => r.clone(),
            Repr::Mod(..) => panic!("mixing rational and modular scalars"),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) => write!(f, "{r}"),
            Repr::Big(r) => write!(f, "{r}"),
            Repr::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Mod(v, p) => write!(f, "{v} mod {p}"),
            _ => write!(f, "{self}"),
        }
    }
}
