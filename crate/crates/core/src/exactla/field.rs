use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The default characteristic used when no prime is configured.
pub const DEFAULT_PRIME: u32 = 101;

/// Arithmetic context for the prime field F_p.
///
/// Field elements are plain `u32` residues in `0..p`; every operation here
/// takes and returns canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Field {
    p: u32,
}

/// A canonical residue modulo the field's prime.
pub type FieldElem = u32;

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..(1u32 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn from_i64(self, v: i64) -> FieldElem {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: FieldElem, b: FieldElem) -> FieldElem {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: FieldElem, b: FieldElem) -> FieldElem {
        let s = a as u64 + self.p as u64 - b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: FieldElem) -> FieldElem {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: FieldElem, b: FieldElem) -> FieldElem {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// `a + b * c`
    #[inline]
    pub fn mul_add(self, a: FieldElem, b: FieldElem, c: FieldElem) -> FieldElem {
        ((a as u64 + b as u64 * c as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: FieldElem) -> FieldElem {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn div(self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.mul(a, self.inv(b))
    }

    /// Iterates over every element of the field, zero first.
    pub fn elements(self) -> impl Iterator<Item = FieldElem> {
        0..self.p
    }
}

impl Default for Field {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl TryFrom<u32> for Field {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Field::new(p)
    }
}

impl From<Field> for u32 {
    fn from(f: Field) -> u32 {
        f.p
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let n = n as u64;
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_out_of_range() {
        assert!(Field::new(4).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(0).is_err());
        assert!(Field::new(1 << 31).is_err());
        assert!(Field::new(2).is_ok());
        assert!(Field::new(2_147_483_647).is_ok());
    }

    #[test]
    fn inverses_multiply_to_one() {
        let f = Field::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn large_prime_arithmetic_does_not_overflow() {
        let f = Field::new(2_147_483_647).unwrap();
        let a = 2_147_483_646;
        assert_eq!(f.mul(a, a), 1);
        assert_eq!(f.add(a, a), 2_147_483_645);
        assert_eq!(f.sub(0, 1), a);
    }
}
