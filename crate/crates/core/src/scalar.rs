//! Exact coefficient fields: the rationals and prime fields `F_p`.
//!
//! A [`Scalar`] carries its own kind, but arithmetic always goes through a
//! [`Field`] so that two kinds are never combined. Handing a field a scalar of
//! the other kind is a programming error and panics.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ScalarError;

/// Largest admissible prime modulus. Products of two residues fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Field {
    Rational,
    Prime { p: u64 },
}

/// A field element. Rationals are kept in lowest terms with positive
/// denominator; residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
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

impl Field {
    pub fn prime(p: u64) -> Result<Field, ScalarError> {
        if p > MAX_PRIME {
            return Err(ScalarError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Field::Prime { p })
    }

    /// Field characteristic, `0` for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime { p } => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime { p } => Scalar::Modular {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime { p } => {
                let m = BigInt::from(p);
                let r = ((n % &m) + &m) % &m;
                Scalar::Modular {
                    value: r.to_u64().expect("residue below modulus"),
                    modulus: p,
                }
            }
        }
    }

    /// `numer / denom`; `None` when the denominator vanishes in this field.
    pub fn from_ratio(&self, numer: &BigInt, denom: &BigInt) -> Option<Scalar> {
        let d = self.from_bigint(denom);
        if d.is_zero() {
            return None;
        }
        Some(self.div(&self.from_bigint(numer), &d))
    }

    /// True if `s` belongs to this field.
    pub fn owns(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rational, Scalar::Rational(_)) => true,
            (Field::Prime { p }, Scalar::Modular { modulus, .. }) => p == modulus,
            _ => false,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Modular { value: x, modulus: p }, Scalar::Modular { value: y, modulus: q })
                if p == q =>
            {
                Scalar::Modular {
                    value: (x + y) % p,
                    modulus: *p,
                }
            }
            _ => mismatch(a, b),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Modular { value: x, modulus: p }, Scalar::Modular { value: y, modulus: q })
                if p == q =>
            {
                Scalar::Modular {
                    value: x * y % p,
                    modulus: *p,
                }
            }
            _ => mismatch(a, b),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match a {
            Scalar::Rational(x) => Scalar::Rational(x.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// The image of the integer `n` times `a`, i.e. `a + a + ... + a`.
    pub fn mul_int(&self, a: &Scalar, n: u64) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(x * BigInt::from(n)),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: value * (n % modulus) % modulus,
                modulus: *modulus,
            },
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {a:?} vs {b:?}")
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

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Sign used by the renderer. Residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_negative(),
            Scalar::Modular { .. } => false,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(x) => Scalar::Rational(x.abs()),
            m => m.clone(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime { p: *modulus },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime { p } => write!(f, "GF({p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let a = q.from_ratio(&BigInt::from(2), &BigInt::from(-4)).unwrap();
        assert_eq!(a.to_string(), "-1/2");
        let b = q.add(&a, &q.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap());
        assert!(b.is_zero());
    }

    #[test]
    fn residues_in_range() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.from_i64(-1), Scalar::Modular { value: 6, modulus: 7 });
        let three = f.from_i64(3);
        assert!(f.mul(&three, &f.inv(&three)).is_one());
        assert!(f.neg(&f.zero()).is_zero());
        assert!(f.mul_int(&f.one(), 7).is_zero());
    }

    #[test]
    fn zero_denominator_in_prime_field() {
        let f = Field::prime(5).unwrap();
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(10)).is_none());
    }

    #[test]
    fn rejects_composite_moduli() {
        assert!(matches!(Field::prime(9), Err(ScalarError::NotPrime(9))));
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(MAX_PRIME).is_ok());
    }

    #[test]
    #[should_panic(expected = "mismatch")]
    fn kinds_never_mix() {
        let q = Field::Rational;
        let f = Field::prime(3).unwrap();
        q.add(&q.one(), &f.one());
    }
}
