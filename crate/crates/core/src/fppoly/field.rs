use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime accepted. The suites are desk-scale; nothing in the
/// arithmetic depends on this bound other than the `u8` matrix storage.
pub const MAX_PRIME: u32 = 13;

/// The prime field `F_p` for an odd prime `p <= 13`.
///
/// Elements are represented by their least nonnegative residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) || p > MAX_PRIME {
            return Err(Error::UnsupportedPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Least nonnegative residue of an arbitrary integer.
    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        let a = a % self.p;
        (a != 0).then(|| self.pow(a, (self.p - 2) as u64))
    }

    /// `-1` raised to `e`.
    pub fn sign(self, e: i64) -> u32 {
        if e.rem_euclid(2) == 0 {
            1
        } else {
            self.p - 1
        }
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }

    pub fn nonzero_elements(self) -> impl Iterator<Item = u32> {
        1..self.p
    }

    /// `p^k` as an integer.
    pub fn power_of_p(self, k: u32) -> u64 {
        (self.p as u64).pow(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsupported_primes() {
        for p in [0, 1, 2, 4, 9, 15, 17] {
            assert_eq!(PrimeField::new(p), Err(Error::UnsupportedPrime(p)));
        }
        for p in [3, 5, 7, 11, 13] {
            assert!(PrimeField::new(p).is_ok());
        }
    }

    #[test]
    fn additive_inverse_and_fermat() {
        for p in [3, 5, 7, 11, 13] {
            let f = PrimeField::new(p).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!((a + (p - a)) % p, 0);
                assert_eq!(f.pow(a, p as u64), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
            assert_eq!(f.inv(0), None);
        }
    }

    #[test]
    fn reduce_negative() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.reduce(-1), 4);
        assert_eq!(f.reduce(-10), 0);
        assert_eq!(f.sign(3), 4);
        assert_eq!(f.sign(-2), 1);
    }
}
