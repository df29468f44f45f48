//! Coefficient arithmetic. All computation is exact: scalars are
//! arbitrary-precision rationals, and a prime-modulus mode reduces every
//! result to its canonical representative in `0..p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact scalar: an arbitrary-precision rational number.
///
/// Integer values print without a denominator (`"-5"`), proper fractions as
/// `"3/2"`, matching the accepted input syntax everywhere scalars appear.
pub type Scalar = BigRational;

/// The coefficient ring of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    /// Characteristic zero; rational values are allowed and kept exact.
    Integers,
    /// Integers modulo a prime `p`; scalars are normalized into `0..p`.
    Mod(u64),
}

impl Coefficients {
    pub fn validate(self) -> Result<()> {
        match self {
            Coefficients::Integers => Ok(()),
            Coefficients::Mod(p) => {
                if is_prime(p) {
                    Ok(())
                } else {
                    Err(Error::NotPrime(p))
                }
            }
        }
    }

    /// Canonical form of a scalar in this ring. In `Mod(p)` the denominator
    /// is inverted (error if `p` divides it) and the value reduced to `0..p`.
    pub fn normalize(self, c: Scalar) -> Result<Scalar> {
        match self {
            Coefficients::Integers => Ok(c),
            Coefficients::Mod(p) => {
                let m = BigInt::from(p);
                let den = c.denom().mod_floor(&m);
                if den.is_zero() {
                    return Err(Error::NotInvertible(c.to_string()));
                }
                // p is prime, so a^(p-2) inverts a mod p.
                let inv = den.modpow(&BigInt::from(p - 2), &m);
                let num = c.numer().mod_floor(&m);
                Ok(Scalar::from((num * inv).mod_floor(&m)))
            }
        }
    }
}

impl std::fmt::Display for Coefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Mod(p) => write!(f, "Z/{p}"),
        }
    }
}

/// Deterministic primality test by trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|dd| dd <= p) {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Parse a scalar from `"n"` or `"a/b"` text.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    s.trim().parse::<BigRational>().map_err(|e| Error::Parse {
        offset: 0,
        message: format!("bad scalar {s:?}: {e}"),
    })
}

/// Scalar from a machine integer.
pub fn int(v: i64) -> Scalar {
    Scalar::from(BigInt::from(v))
}

/// `true` when the scalar is a (possibly negative) integer.
pub fn is_integer(c: &Scalar) -> bool {
    c.is_integer()
}

/// Absolute value, for display purposes.
pub fn abs(c: &Scalar) -> Scalar {
    c.abs()
}
