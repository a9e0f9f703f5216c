//! Arithmetic in the prime field F_p.
//!
//! Elements are plain `u64` values in `[0, p)`; the `PrimeField` carries the
//! modulus and performs all reductions. Keeping elements unboxed lets the
//! polynomial layer store coefficients without indirection.

use crate::error::{Error, Result};

/// Largest supported modulus; products of two reduced elements fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The prime field F_p for 2 <= p <= 2^31 - 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Constructs F_p, rejecting composite or out-of-range moduli.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary unsigned value into `[0, p)`.
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }

    /// Reduces a signed value into `[0, p)`.
    pub fn reduce_signed(&self, a: i64) -> u64 {
        let m = a.rem_euclid(self.p as i64);
        m as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        debug_assert!(a < self.p);
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        // p < 2^31 so the product fits in u64.
        (a * b) % self.p
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero { p: self.p });
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1, "gcd(a, p) must be 1 for prime p");
        Ok(self.reduce_signed(s0))
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        debug_assert!(base < self.p);
        let mut acc = 1u64 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// Deterministic Miller-Rabin, exact for all u64 below 3.3 * 10^24.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        for n in [0u64, 1, 4, 6, 9, 15, 1 << 20] {
            assert!(PrimeField::new(n).is_err(), "{n} accepted");
        }
        for n in [2u64, 3, 5, 7919, 2147483647] {
            assert!(PrimeField::new(n).is_ok(), "{n} rejected");
        }
    }

    #[test]
    fn inv_small_cases() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.inv(2).unwrap(), 3);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.inv(1).unwrap(), 1);
        assert_eq!(f2.inv(0), Err(Error::DivisionByZero { p: 2 }));
    }

    #[test]
    fn inv_matches_extended_euclid_oracle() {
        // Independent oracle: gcd bookkeeping done with i128 from scratch.
        fn euclid_inv(a: i128, p: i128) -> i128 {
            let (mut old_r, mut r) = (a, p);
            let (mut old_s, mut s) = (1i128, 0i128);
            while r != 0 {
                let q = old_r / r;
                (old_r, r) = (r, old_r - q * r);
                (old_s, s) = (s, old_s - q * s);
            }
            old_s.rem_euclid(p)
        }
        let f = PrimeField::new(7919).unwrap();
        let v = f.inv(1234).unwrap();
        assert_eq!(f.mul(1234, v), 1);
        assert_eq!(v as i128, euclid_inv(1234, 7919));
    }

    #[test]
    fn pow_and_fermat() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13 {
            assert_eq!(f.pow(a, 12), 1);
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }
}
