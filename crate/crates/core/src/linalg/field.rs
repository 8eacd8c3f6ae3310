use std::fmt;

use crate::error::{Error, Result};

/// The prime field `F_p`. Elements are plain `u32` residues in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) || p > (1 << 30) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
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
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// `a + b * c`
    #[inline]
    pub fn mul_add(self, a: u32, b: u32, c: u32) -> u32 {
        ((a as u64 + b as u64 * c as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
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
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in {:?}", self);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn from_i64(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// Residue printed in the symmetric range, e.g. `p - 1` as `-1`.
    pub fn signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// `n!` reduced mod p.
    pub fn factorial(self, n: u32) -> u32 {
        (1..=n).fold(1 % self.p, |acc, k| self.mul(acc, k % self.p))
    }

    /// `binom(n, k)` mod p, computed by Lucas' theorem.
    pub fn binomial(self, mut n: u64, mut k: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1 % self.p;
        while n > 0 || k > 0 {
            let (ni, ki) = (n % p, k % p);
            if ki > ni {
                return 0;
            }
            let mut c = 1u32;
            for i in 0..ki {
                c = self.mul(c, ((ni - i) % p) as u32);
                c = self.mul(c, self.inv(((i + 1) % p) as u32));
            }
            acc = self.mul(acc, c);
            n /= p;
            k /= p;
        }
        acc
    }
}
