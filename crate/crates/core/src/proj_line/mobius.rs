use std::fmt;

use super::{BinaryForm, ClosedPoint, DivisorP1, RationalPoint};
use crate::error::{Error, Result};
use crate::ff_poly::{PrimeField, Poly, RatFunc};

/// `t -> (a t + b) / (c t + d)` with `ad - bc != 0`, scaled so the first
/// nonzero entry of `[a, b, c, d]` is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MobiusMap {
    field: PrimeField,
    m: [u64; 4],
}

impl MobiusMap {
    pub fn new(field: PrimeField, a: u64, b: u64, c: u64, d: u64) -> Result<Self> {
        let m = [a, b, c, d].map(|x| x % field.p());
        let det = field.sub(field.mul(m[0], m[3]), field.mul(m[1], m[2]));
        if det == 0 {
            return Err(Error::InvalidInput(format!(
                "singular Mobius matrix [[{a}, {b}], [{c}, {d}]]"
            )));
        }
        let lead = *m.iter().find(|&&x| x != 0).expect("nonzero determinant");
        let inv = field.inv(lead);
        Ok(MobiusMap {
            field,
            m: m.map(|x| field.mul(x, inv)),
        })
    }

    pub fn from_i64(field: PrimeField, entries: [[i64; 2]; 2]) -> Result<Self> {
        let r = |x: i64| field.reduce(x);
        MobiusMap::new(
            field,
            r(entries[0][0]),
            r(entries[0][1]),
            r(entries[1][0]),
            r(entries[1][1]),
        )
    }

    pub fn identity(field: PrimeField) -> Self {
        MobiusMap {
            field,
            m: [1, 0, 0, 1],
        }
    }

    /// `t -> t + b`.
    pub fn translation(field: PrimeField, b: u64) -> Self {
        MobiusMap::new(field, 1, b, 0, 1).expect("invertible")
    }

    /// `t -> c t`, `c != 0`.
    pub fn scaling(field: PrimeField, c: u64) -> Result<Self> {
        MobiusMap::new(field, c, 0, 0, 1)
    }

    /// `t -> 1/t`.
    pub fn inversion(field: PrimeField) -> Self {
        MobiusMap::new(field, 0, 1, 1, 0).expect("invertible")
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Entries `[a, b, c, d]`.
    #[inline]
    pub fn entries(&self) -> [u64; 4] {
        self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m == [1, 0, 0, 1]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        let f = self.field;
        let [a, b, c, d] = self.m;
        let [e, g, h, k] = other.m;
        let dot = |x: u64, y: u64, z: u64, w: u64| f.add(f.mul(x, y), f.mul(z, w));
        MobiusMap::new(f, dot(a, e, b, h), dot(a, g, b, k), dot(c, e, d, h), dot(c, g, d, k))
            .expect("product of invertible maps")
    }

    pub fn inverse(&self) -> MobiusMap {
        let f = self.field;
        let [a, b, c, d] = self.m;
        MobiusMap::new(f, d, f.neg(b), f.neg(c), a).expect("invertible")
    }

    pub fn apply(&self, x: RationalPoint) -> RationalPoint {
        let f = self.field;
        let [a, b, c, d] = self.m;
        let (num, den) = match x {
            RationalPoint::Infinity => (a, c),
            RationalPoint::Affine(t) => (f.add(f.mul(a, t), b), f.add(f.mul(c, t), d)),
        };
        if den == 0 {
            RationalPoint::Infinity
        } else {
            RationalPoint::Affine(f.div(num, den))
        }
    }

    /// Image of a closed point.
    pub fn pushforward_point(&self, point: &ClosedPoint) -> ClosedPoint {
        let g = match point {
            ClosedPoint::Infinity => return self.apply(RationalPoint::Infinity).to_closed(self.field),
            ClosedPoint::Finite(g) => g,
        };
        if let Some(r) = point.as_rational() {
            return self.apply(r).to_closed(self.field);
        }
        // Roots of g(m^{-1}(u)) are the images of the roots of g.
        let f = self.field;
        let [a, b, c, d] = self.m;
        let s_form = BinaryForm::linear(f, a, f.neg(c));
        let t_form = BinaryForm::linear(f, f.neg(b), d);
        let image = BinaryForm::substitute(g, g.degree(), &s_form, &t_form);
        let div = image.divisor().expect("invertible substitution");
        let mut it = div.iter();
        match (it.next(), it.next()) {
            (Some((p, 1)), None) => p.clone(),
            _ => unreachable!("image of an irreducible point is a single point"),
        }
    }

    pub fn pushforward(&self, div: &DivisorP1) -> DivisorP1 {
        DivisorP1::from_terms(div.iter().map(|(p, m)| (self.pushforward_point(p), m)))
    }

    /// `f ∘ self`.
    pub fn pullback(&self, func: &RatFunc) -> RatFunc {
        let f = self.field;
        let [a, b, c, d] = self.m;
        let s_form = BinaryForm::linear(f, d, c);
        let t_form = BinaryForm::linear(f, b, a);
        let num = func.numerator();
        let den = func.denominator();
        let num_sub = BinaryForm::substitute(num, num.degree(), &s_form, &t_form);
        let den_sub = BinaryForm::substitute(den, den.degree(), &s_form, &t_form);
        // N(m(t)) = N_h(ct + d, at + b) / (ct + d)^deg N
        let ct_d = Poly::new(f, vec![d, c]);
        let top = &num_sub.dehomogenized().scale(func.scalar()) * &ct_d.pow(den.degree() as u64);
        let bottom = den_sub.dehomogenized() * &ct_d.pow(num.degree() as u64);
        RatFunc::new(top, bottom).expect("invertible substitution")
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "t -> ({a}t + {b})/({c}t + {d})")
    }
}

impl fmt::Debug for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MobiusMap({self} over {})", self.field)
    }
}
