//! Arithmetic in the prime field F_p.
//!
//! Elements are stored as `u32` values already reduced into `0..p`, and all
//! products are widened to `u64` before reduction, so any prime below 2^31 is
//! supported without overflow. The field context is a tiny `Copy` struct that
//! every matrix and module carries along; mixing contexts is a caller error
//! and is reported as such by the operations that can observe it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from field construction and element arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    /// The requested characteristic is not a prime in the supported range.
    #[error("characteristic must be a prime below 2^31, got {0}")]
    NotPrime(u64),
    /// Multiplicative inverse of zero was requested.
    #[error("zero has no multiplicative inverse in F_{0}")]
    ZeroInverse(u32),
}

/// The field F_p for a fixed prime p < 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    /// Builds the field context, verifying primality by trial division.
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Fp { p: p as u32 })
    }

    /// The characteristic p.
    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary u64 into `0..p`.
    #[inline]
    pub fn reduce(&self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    /// Reduces a signed value into `0..p`.
    #[inline]
    pub fn reduce_signed(&self, x: i64) -> u32 {
        let p = self.p as i64;
        (((x % p) + p) % p) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// a^e by square and multiply.
    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat; zero is an error, not a panic.
    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a.is_multiple_of(self.p) {
            return Err(FieldError::ZeroInverse(self.p));
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    /// All field elements in ascending order; only sensible for small p.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_primes_and_out_of_range() {
        for bad in [0u64, 1, 4, 9, 91, 1 << 31, (1 << 31) + 11] {
            assert!(Fp::new(bad).is_err(), "{bad} accepted");
        }
        for good in [2u64, 3, 5, 7, 65_537, 2_147_483_647] {
            assert!(Fp::new(good).is_ok(), "{good} rejected");
        }
    }

    /// Field axioms checked by full enumeration for every small prime the
    /// test algebras use.
    #[test]
    fn axioms_by_enumeration() {
        for p in [2u64, 3, 5, 7] {
            let f = Fp::new(p).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn zero_inverse_is_an_error() {
        let f = Fp::new(5).unwrap();
        assert_eq!(f.inv(0), Err(FieldError::ZeroInverse(5)));
    }

    #[test]
    fn large_prime_products_do_not_overflow() {
        let f = Fp::new(2_147_483_647).unwrap();
        let a = 2_147_483_646;
        assert_eq!(f.mul(a, a), 1); // (-1)^2
        assert_eq!(f.pow(a, 3), f.neg(1));
    }
}
