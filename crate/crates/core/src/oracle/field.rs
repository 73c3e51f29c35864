//! Arithmetic modulo a prime `p < 2^32`.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > u64::from(u32::MAX) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: u64) -> u32 {
        (x % self.p) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (u64::from(a) * u64::from(b) % self.p) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % self.p) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            (self.p - u64::from(a)) as u32
        }
    }

    pub fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u64 % self.p;
        let mut b = u64::from(base) % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            exp >>= 1;
        }
        acc as u32
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(u64::from(a) % self.p != 0);
        self.pow(a, self.p - 2)
    }

    /// Number of products `< (p-1)^2` that can be added to a reduced value
    /// before a `u64` accumulator may overflow.
    pub(crate) fn lazy_budget(&self) -> u64 {
        let q = self.p - 1;
        if q <= 1 {
            return u64::MAX;
        }
        (u64::MAX - q) / (q * q)
    }
}

/// Deterministic trial division; adequate for moduli below `2^32`.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut f = 3u64;
    while f * f <= p {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(101));
        assert!(is_prime(65521));
        assert!(!is_prime(65535));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(!is_prime(91));
        assert!(PrimeField::new(65536).is_err());
        assert!(PrimeField::new(1 << 40).is_err());
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.add(f.neg(7), 7), 0);
    }

    #[test]
    fn budget_is_safe() {
        let f = PrimeField::new(65521).unwrap();
        let q = 65520u64;
        let b = f.lazy_budget();
        assert!(q.checked_add(b.checked_mul(q * q).unwrap()).is_some());
        let f = PrimeField::new(4294967291).unwrap();
        assert_eq!(f.lazy_budget(), 1);
    }
}
