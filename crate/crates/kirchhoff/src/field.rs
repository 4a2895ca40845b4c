//! Arithmetic in the prime field F_p for an odd prime p.
//!
//! Values are stored as canonical residues in `[0, p)`. The modulus is
//! deliberately restricted to odd primes: several constructions here
//! (losslessness tests, divider synthesis) divide by 2.

use crate::error::{Error, Result};

/// A validated odd prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    /// Validates `p` by deterministic trial division. Rejects 2.
    pub fn new(p: u64) -> Result<Prime> {
        if p < 3 || p.is_multiple_of(2) {
            return Err(Error::NotOddPrime(p));
        }
        let mut d = 3u64;
        while d.checked_mul(d).is_some_and(|sq| sq <= p) {
            if p.is_multiple_of(d) {
                return Err(Error::NotOddPrime(p));
            }
            d += 2;
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    /// Reduces a signed integer to its canonical residue.
    #[inline]
    pub fn reduce_i64(self, v: i64) -> u64 {
        let p = self.0 as i64;
        (v.rem_euclid(p)) as u64
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u64 {
        v % self.0
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.0 && b < self.0);
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.0 && b < self.0);
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        debug_assert!(a < self.0);
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.0 && b < self.0);
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero(self.0));
        }
        let (mut r0, mut r1) = (self.0 as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus is prime, so every nonzero residue is a unit");
        Ok(t0.rem_euclid(self.0 as i128) as u64)
    }

    pub fn div(self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Checks that two moduli agree, for operations combining values.
    pub fn expect_same(self, other: Prime) -> Result<()> {
        if self != other {
            return Err(Error::ModulusMismatch(self.0, other.0));
        }
        Ok(())
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A field element carrying its modulus.
///
/// Arithmetic operators panic when moduli differ; use [`Scalar::checked_add`]
/// and friends where mixing is a data error rather than a programming error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u64,
    prime: Prime,
}

impl Scalar {
    pub fn new(value: i64, prime: Prime) -> Scalar {
        Scalar {
            value: prime.reduce_i64(value),
            prime,
        }
    }

    pub fn from_residue(value: u64, prime: Prime) -> Scalar {
        Scalar {
            value: prime.reduce(value),
            prime,
        }
    }

    pub fn zero(prime: Prime) -> Scalar {
        Scalar { value: 0, prime }
    }

    pub fn one(prime: Prime) -> Scalar {
        Scalar { value: 1, prime }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.prime
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn checked_add(self, rhs: Scalar) -> Result<Scalar> {
        self.prime.expect_same(rhs.prime)?;
        Ok(Scalar {
            value: self.prime.add(self.value, rhs.value),
            prime: self.prime,
        })
    }

    pub fn checked_sub(self, rhs: Scalar) -> Result<Scalar> {
        self.prime.expect_same(rhs.prime)?;
        Ok(Scalar {
            value: self.prime.sub(self.value, rhs.value),
            prime: self.prime,
        })
    }

    pub fn checked_mul(self, rhs: Scalar) -> Result<Scalar> {
        self.prime.expect_same(rhs.prime)?;
        Ok(Scalar {
            value: self.prime.mul(self.value, rhs.value),
            prime: self.prime,
        })
    }

    /// Errors on zero.
    pub fn inv(self) -> Result<Scalar> {
        Ok(Scalar {
            value: self.prime.inv(self.value)?,
            prime: self.prime,
        })
    }
}

impl std::ops::Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.checked_add(rhs).expect("modulus mismatch")
    }
}

impl std::ops::Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.checked_sub(rhs).expect("modulus mismatch")
    }
}

impl std::ops::Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.checked_mul(rhs).expect("modulus mismatch")
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            value: self.prime.neg(self.value),
            prime: self.prime,
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}
