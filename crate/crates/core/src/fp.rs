use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A residue in `[0, p)`. The modulus travels with the surrounding context.
pub type FpScalar = u32;

/// A validated prime modulus below `2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: i64) -> FpScalar {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: FpScalar, b: FpScalar) -> FpScalar {
        let s = a as u64 + b as u64;
        (s % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: FpScalar, b: FpScalar) -> FpScalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: FpScalar) -> FpScalar {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: FpScalar, b: FpScalar) -> FpScalar {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, a: FpScalar, mut e: u64) -> FpScalar {
        let mut base = a % self.0;
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: FpScalar) -> FpScalar {
        assert!(!a.is_multiple_of(self.0), "inverse of zero in F_{}", self.0);
        self.pow(a, self.0 as u64 - 2)
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for display.
    pub fn signed(self, a: FpScalar) -> i64 {
        let a = a as i64;
        let p = self.0 as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0 as u64
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}
