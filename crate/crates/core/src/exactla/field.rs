use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Scalars are stored as reduced rationals; over `𝔽_p` they are always
/// integers in `[0, p)`.
pub type Scalar = BigRational;

/// Exact scalar field: `ℚ` or a prime field `𝔽_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Field::Prime(_))
    }

    /// Number of elements, `None` for ℚ.
    pub fn size(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        self.normalize(Scalar::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(self, v: BigInt) -> Scalar {
        self.normalize(Scalar::from_integer(v))
    }

    /// Canonical representative. Over `𝔽_p` the denominator must be a unit mod p.
    pub fn normalize(self, v: Scalar) -> Scalar {
        match self {
            Field::Rational => v,
            Field::Prime(p) => {
                let p = BigInt::from(p);
                let num = v.numer().mod_floor(&p);
                let den = v.denom().mod_floor(&p);
                let inv = mod_inverse(&den, &p).expect("denominator divisible by p");
                Scalar::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    /// Whether `v` is a valid canonical scalar of this field.
    pub fn is_canonical(self, v: &Scalar) -> bool {
        match self {
            Field::Rational => true,
            Field::Prime(p) => v.is_integer() && !v.is_negative() && v.numer() < &BigInt::from(p),
        }
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.fix(a + b)
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.fix(a - b)
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::zero();
        }
        self.fix(a * b)
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        self.fix(-a)
    }

    pub fn inv(self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rational => Some(a.recip()),
            Field::Prime(p) => {
                let p = BigInt::from(p);
                mod_inverse(a.numer(), &p).map(Scalar::from_integer)
            }
        }
    }

    pub fn div(self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    pub fn pow(self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a + b * c`, the inner step of every elimination loop.
    pub fn mul_add(self, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
        if b.is_zero() || c.is_zero() {
            return a.clone();
        }
        self.fix(a + b * c)
    }

    /// Reduction after a ring operation on canonical inputs. Over `𝔽_p` the
    /// intermediate value is an integer.
    fn fix(self, v: Scalar) -> Scalar {
        match self {
            Field::Rational => v,
            Field::Prime(p) => {
                debug_assert!(v.is_integer());
                Scalar::from_integer(v.numer().mod_floor(&BigInt::from(p)))
            }
        }
    }

    /// All elements of a prime field in increasing order.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        self.size().map(|p| {
            (0..p)
                .map(|i| Scalar::from_integer(BigInt::from(i)))
                .collect()
        })
    }

    /// Index of a prime-field element in [`Field::elements`].
    pub fn element_index(self, v: &Scalar) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(_) => v.numer().to_u64(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Parses `Q` or `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(Field::Rational);
        }
        let rest = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("F"))
            .ok_or_else(|| Error::InvalidField(format!("unknown field '{s}'")))?;
        let p: u64 = rest
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad characteristic in '{s}'")))?;
        Field::prime(p)
    }
}

pub fn is_prime(p: u64) -> bool {
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

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(p).extended_gcd(p);
    e.gcd.is_one().then(|| e.x.mod_floor(p))
}

/// Formats a scalar as an integer or `n/d`.
pub fn format_scalar(v: &Scalar) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}
