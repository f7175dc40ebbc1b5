use std::fmt;
use std::ops::{Div, Mul};

use super::field::PrimeField;
use super::poly::Poly;
use crate::error::{Error, Result};

/// A nonzero rational function `scalar * num / den` on the line.
///
/// Canonical form: `num` and `den` monic and coprime, `scalar` in `F_p^*`.
/// Two equal functions therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    scalar: u64,
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let field = num.field();
        let g = num.gcd(&den);
        let (a, n) = num.div_exact(&g).monic_parts();
        let (b, d) = den.div_exact(&g).monic_parts();
        Ok(RatFunc {
            scalar: field.div(a, b),
            num: n,
            den: d,
        })
    }

    pub fn from_poly(p: Poly) -> Result<Self> {
        let field = p.field();
        RatFunc::new(p, Poly::one(field))
    }

    pub fn constant(field: PrimeField, c: u64) -> Result<Self> {
        RatFunc::from_poly(Poly::constant(field, c))
    }

    pub fn one(field: PrimeField) -> Self {
        RatFunc {
            scalar: 1,
            num: Poly::one(field),
            den: Poly::one(field),
        }
    }

    /// The coordinate function `t`.
    pub fn t(field: PrimeField) -> Self {
        RatFunc {
            scalar: 1,
            num: Poly::t(field),
            den: Poly::one(field),
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.num.field()
    }

    #[inline]
    pub fn scalar(&self) -> u64 {
        self.scalar
    }

    #[inline]
    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    #[inline]
    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<u64> {
        self.is_constant().then_some(self.scalar)
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.scalar == 1
    }

    /// Total degree of numerator and denominator.
    pub fn height(&self) -> usize {
        self.num.degree() + self.den.degree()
    }

    /// Same function with scalar 1.
    pub fn without_scalar(&self) -> RatFunc {
        RatFunc {
            scalar: 1,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: u64) -> RatFunc {
        assert!(!c.is_multiple_of(self.field().p()), "scaling by zero");
        RatFunc {
            scalar: self.field().mul(self.scalar, c),
            ..self.clone()
        }
    }

    pub fn inv(&self) -> RatFunc {
        RatFunc {
            scalar: self.field().inv(self.scalar),
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let k = e.unsigned_abs();
        RatFunc {
            scalar: self.field().pow(base.scalar, k),
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
    }

    /// Value at `x`, `None` at a pole.
    pub fn eval(&self, x: u64) -> Option<u64> {
        let f = self.field();
        let d = self.den.eval(x);
        if d == 0 {
            return None;
        }
        Some(f.mul(self.scalar, f.div(self.num.eval(x), d)))
    }

    /// Value at infinity, `None` at a pole.
    pub fn eval_at_infinity(&self) -> Option<u64> {
        use std::cmp::Ordering::*;
        match self.num.degree().cmp(&self.den.degree()) {
            Less => Some(0),
            Equal => Some(self.scalar),
            Greater => None,
        }
    }

    /// `self(t^d)`.
    pub fn compose_power(&self, d: usize) -> RatFunc {
        // Substituting t^d keeps the parts monic and coprime.
        RatFunc {
            scalar: self.scalar,
            num: self.num.compose_power(d),
            den: self.den.compose_power(d),
        }
    }

    /// `self(c * t)` for `c != 0`.
    pub fn scale_argument(&self, c: u64) -> RatFunc {
        RatFunc::new(
            self.num.scale_argument(c).scale(self.scalar),
            self.den.scale_argument(c),
        )
        .expect("nonzero under invertible substitution")
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: &RatFunc) -> RatFunc {
        let f = self.field();
        // Each side is already reduced, so only cross cancellation remains.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.div_exact(&g1) * &rhs.num.div_exact(&g2);
        let den = &self.den.div_exact(&g2) * &rhs.den.div_exact(&g1);
        RatFunc {
            scalar: f.mul(self.scalar, rhs.scalar),
            num,
            den,
        }
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inv()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scalar = if self.scalar == 1 && !self.is_constant() {
            String::new()
        } else {
            format!("{}", self.scalar)
        };
        match (self.num.is_one(), self.den.is_one()) {
            (true, true) => write!(f, "{}", self.scalar),
            (false, true) if scalar.is_empty() => write!(f, "{}", self.num),
            (false, true) => write!(f, "{scalar}({})", self.num),
            (true, false) => write!(f, "{}/({})", self.scalar, self.den),
            (false, false) if scalar.is_empty() => write!(f, "({})/({})", self.num, self.den),
            (false, false) => write!(f, "{scalar}({})/({})", self.num, self.den),
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self} over {})", self.field())
    }
}
