use std::fmt;

use crate::error::{Error, Result};

const MAX_MODULUS: u64 = 1 << 31;

/// The prime field `F_p` for an odd prime `p < 2^31`, together with its
/// smallest primitive root.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    generator: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::Characteristic2);
        }
        if !(3..MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        let generator = smallest_primitive_root(p);
        Ok(PrimeField { p, generator })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Order of the multiplicative group, `p - 1`.
    #[inline]
    pub fn unit_order(&self) -> u64 {
        self.p - 1
    }

    #[inline]
    pub fn generator(&self) -> u64 {
        self.generator
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut result = 1;
        let mut b = base % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        result
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    #[inline]
    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    /// `generator^e` for a possibly negative exponent.
    pub fn gen_pow(&self, e: i64) -> u64 {
        self.pow(self.generator, e.rem_euclid(self.unit_order() as i64) as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "order of zero");
        let n = self.unit_order();
        let mut order = n;
        for (q, _) in factor_u64(n) {
            while order.is_multiple_of(q) && self.pow(a, order / q) == 1 {
                order /= q;
            }
        }
        order
    }

    /// The distinguished primitive `d`-th root of unity
    /// `generator^((p-1)/d)`.
    pub fn root_of_unity(&self, d: u64) -> Result<u64> {
        if d == 0 || !self.unit_order().is_multiple_of(d) {
            return Err(Error::DegreeNotDividing(d, self.unit_order()));
        }
        Ok(self.pow(self.generator, self.unit_order() / d))
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }

    pub fn units(&self) -> impl Iterator<Item = u64> {
        1..self.p
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn smallest_primitive_root(p: u64) -> u64 {
    let n = p - 1;
    let primes: Vec<u64> = factor_u64(n).into_iter().map(|(q, _)| q).collect();
    let field = PrimeField { p, generator: 0 };
    (2..p)
        .find(|&g| primes.iter().all(|&q| field.pow(g, n / q) != 1))
        .expect("F_p^* is cyclic")
}
