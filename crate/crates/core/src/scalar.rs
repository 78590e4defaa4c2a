//! Exact scalars: arbitrary-precision rationals or residues modulo a prime.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// F_p, rejecting non-primes.
    pub fn prime(p: u32) -> Result<Field, Error> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Prime {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// Bundle tag: `"Q"` or `"Fp:<p>"`.
    pub fn tag(self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => format!("Fp:{p}"),
        }
    }

    /// Accepts `Q`, `Fp:<p>` and the shorthand `F<p>`.
    pub fn parse_tag(tag: &str) -> Result<Field, Error> {
        let tag = tag.trim();
        if tag == "Q" {
            return Ok(Field::Rational);
        }
        let digits = tag
            .strip_prefix("Fp:")
            .or_else(|| tag.strip_prefix('F'))
            .ok_or_else(|| Error::Input(format!("unknown field tag {tag:?}")))?;
        let p = digits
            .parse::<u32>()
            .map_err(|_| Error::Input(format!("unknown field tag {tag:?}")))?;
        Field::prime(p)
    }

    /// Parses a serialized scalar: `"p/q"` (or an integer) over Q, an integer over F_p.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar, Error> {
        let bad = || Error::Input(format!("bad scalar {text:?} for field {}", self.tag()));
        match self {
            Field::Rational => {
                let (num, den) = match text.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (text, "1"),
                };
                let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
                let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            Field::Prime(_) => {
                let v = i64::from_str(text.trim()).map_err(|_| bad())?;
                Ok(self.from_i64(v))
            }
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// A field element. Rationals are kept in lowest terms with positive
/// denominator; residues lie in `[0, modulus)`.
///
/// Arithmetic between elements of different fields panics; matrices check
/// field agreement up front so this never happens through [`crate::matrix::Mat`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
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
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        })
    }

    /// Integer value when the scalar is an integer (always for F_p residues).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Prime { value, .. } => Some(*value as i64),
        }
    }

    pub fn is_nonnegative_integer(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_integer() && !r.is_negative(),
            Scalar::Prime { .. } => true,
        }
    }

    /// Image in F_p; `None` if a denominator is divisible by `p`.
    pub fn reduce_mod(&self, p: u32) -> Option<Scalar> {
        match self {
            Scalar::Prime { modulus, .. } if *modulus == p => Some(self.clone()),
            Scalar::Prime { .. } => None,
            Scalar::Rational(r) => {
                let pb = BigInt::from(p);
                let num = (r.numer() % &pb + &pb) % &pb;
                let den = (r.denom() % &pb + &pb) % &pb;
                if den.is_zero() {
                    return None;
                }
                let num = num.to_u64()?;
                let den = den.to_u64()?;
                let p64 = p as u64;
                let value = num * pow_mod(den, p64 - 2, p64) % p64;
                Some(Scalar::Prime {
                    value: value as u32,
                    modulus: p,
                })
            }
        }
    }

    fn expect_same(&self, other: &Scalar) {
        if self.field() != other.field() {
            panic!("scalar arithmetic across fields {} and {}", self.field(), other.field());
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    /// `p/q` for rationals (always with an explicit denominator), the residue for F_p.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
        }
    }
}
