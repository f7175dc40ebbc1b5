//! Closed points and divisors on the projective line over `F_p`.
//!
//! The point at infinity is a distinguished symbol; every finite closed
//! point is a monic irreducible polynomial in the affine coordinate `t`.

mod binary;
mod mobius;
mod orbit;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

pub use binary::BinaryForm;
pub use mobius::MobiusMap;
pub use orbit::sigma_orbit;

use crate::error::{Error, Result};
use crate::ff_poly::{is_irreducible, poly_factor, PrimeField, Poly, RatFunc};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ClosedPoint {
    Infinity,
    Finite(Poly),
}

impl ClosedPoint {
    /// Checks that `poly` is monic and irreducible.
    pub fn finite(poly: Poly) -> Result<Self> {
        if !poly.is_monic() || !is_irreducible(&poly) {
            return Err(Error::InvalidInput(format!(
                "{poly} is not a monic irreducible polynomial"
            )));
        }
        Ok(ClosedPoint::Finite(poly))
    }

    /// The rational point `t = a`.
    pub fn rational(field: PrimeField, a: u64) -> Self {
        ClosedPoint::Finite(Poly::linear_root(field, a))
    }

    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Infinity => 1,
            ClosedPoint::Finite(g) => g.degree(),
        }
    }

    pub fn as_rational(&self) -> Option<RationalPoint> {
        match self {
            ClosedPoint::Infinity => Some(RationalPoint::Infinity),
            ClosedPoint::Finite(g) if g.degree() == 1 => {
                Some(RationalPoint::Affine(g.field().neg(g.coeff(0))))
            }
            ClosedPoint::Finite(_) => None,
        }
    }

    /// Ordering key for finite points: the coefficients of
    /// `(-1)^e g(-t)`, i.e. the elementary symmetric functions of the roots
    /// from the product down. Rational points `t - a` thus sort by `a`.
    fn sort_key(g: &Poly) -> Vec<u64> {
        let f = g.field();
        let e = g.degree();
        g.coeffs()
            .iter()
            .enumerate()
            .map(|(k, &c)| if (e + k).is_multiple_of(2) { c } else { f.neg(c) })
            .collect()
    }
}

impl Ord for ClosedPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ClosedPoint::Infinity, ClosedPoint::Infinity) => Ordering::Equal,
            (ClosedPoint::Infinity, _) => Ordering::Less,
            (_, ClosedPoint::Infinity) => Ordering::Greater,
            (ClosedPoint::Finite(a), ClosedPoint::Finite(b)) => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| Self::sort_key(a).cmp(&Self::sort_key(b))),
        }
    }
}

impl PartialOrd for ClosedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Infinity => write!(f, "[inf]"),
            ClosedPoint::Finite(g) => match self.as_rational() {
                Some(a) => write!(f, "[{a}]"),
                None => write!(f, "[{g}]"),
            },
        }
    }
}

impl fmt::Debug for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as `"inf"` or the coefficient list, lowest degree first.
impl Serialize for ClosedPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ClosedPoint::Infinity => serializer.serialize_str("inf"),
            ClosedPoint::Finite(g) => {
                let mut seq = serializer.serialize_seq(Some(g.coeffs().len()))?;
                for c in g.coeffs() {
                    seq.serialize_element(c)?;
                }
                seq.end()
            }
        }
    }
}

/// An `F_p`-rational point of the line: a value of `t` or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RationalPoint {
    Infinity,
    Affine(u64),
}

impl RationalPoint {
    pub fn to_closed(self, field: PrimeField) -> ClosedPoint {
        match self {
            RationalPoint::Infinity => ClosedPoint::Infinity,
            RationalPoint::Affine(a) => ClosedPoint::rational(field, a),
        }
    }

    /// All `p + 1` rational points, infinity first.
    pub fn all(field: PrimeField) -> impl Iterator<Item = RationalPoint> {
        std::iter::once(RationalPoint::Infinity).chain(field.elements().map(RationalPoint::Affine))
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalPoint::Infinity => write!(f, "inf"),
            RationalPoint::Affine(a) => write!(f, "{a}"),
        }
    }
}

/// Finite formal sum of closed points with nonzero integer multiplicities.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct DivisorP1 {
    terms: BTreeMap<ClosedPoint, i64>,
}

impl DivisorP1 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn point(p: ClosedPoint, mult: i64) -> Self {
        let mut d = Self::new();
        d.add_point(p, mult);
        d
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ClosedPoint, i64)>) -> Self {
        let mut d = Self::new();
        for (p, m) in terms {
            d.add_point(p, m);
        }
        d
    }

    pub fn add_point(&mut self, p: ClosedPoint, mult: i64) {
        if mult == 0 {
            return;
        }
        let entry = self.terms.entry(p.clone()).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn multiplicity(&self, p: &ClosedPoint) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.terms
            .iter()
            .map(|(p, m)| m * p.degree() as i64)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ClosedPoint, i64)> {
        self.terms.iter().map(|(p, &m)| (p, m))
    }

    pub fn support(&self) -> impl Iterator<Item = &ClosedPoint> {
        self.terms.keys()
    }

    pub fn scale(&self, k: i64) -> DivisorP1 {
        DivisorP1::from_terms(self.iter().map(|(p, m)| (p.clone(), m * k)))
    }

    /// Coefficientwise minimum; absent points count as multiplicity 0.
    pub fn min(&self, other: &DivisorP1) -> DivisorP1 {
        let points: std::collections::BTreeSet<&ClosedPoint> =
            self.support().chain(other.support()).collect();
        DivisorP1::from_terms(
            points
                .into_iter()
                .map(|p| (p.clone(), self.multiplicity(p).min(other.multiplicity(p)))),
        )
    }
}

impl Add<&DivisorP1> for &DivisorP1 {
    type Output = DivisorP1;

    fn add(self, rhs: &DivisorP1) -> DivisorP1 {
        let mut out = self.clone();
        for (p, m) in rhs.iter() {
            out.add_point(p.clone(), m);
        }
        out
    }
}

impl Sub<&DivisorP1> for &DivisorP1 {
    type Output = DivisorP1;

    fn sub(self, rhs: &DivisorP1) -> DivisorP1 {
        self + &(-rhs)
    }
}

impl Neg for &DivisorP1 {
    type Output = DivisorP1;

    fn neg(self) -> DivisorP1 {
        self.scale(-1)
    }
}

impl fmt::Display for DivisorP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, m)) in self.iter().enumerate() {
            let sign = if m < 0 { "-" } else { "+" };
            if i == 0 {
                if m < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match m.abs() {
                1 => write!(f, "{p}")?,
                k => write!(f, "{k}{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DivisorP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DivisorP1({self})")
    }
}

impl Serialize for DivisorP1 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Term<'a>(&'a ClosedPoint, i64);
        impl Serialize for Term<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut st = serializer.serialize_struct("Term", 2)?;
                st.serialize_field("point", self.0)?;
                st.serialize_field("mult", &self.1)?;
                st.end()
            }
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (p, m) in self.iter() {
            seq.serialize_element(&Term(p, m))?;
        }
        seq.end()
    }
}

/// Zeros minus poles, including the point at infinity.
pub fn divisor_of(f: &RatFunc) -> DivisorP1 {
    let mut div = DivisorP1::new();
    for (poly, sign) in [(f.numerator(), 1), (f.denominator(), -1)] {
        if poly.degree() == 0 {
            continue;
        }
        let fac = poly_factor(poly).expect("canonical parts are nonzero");
        for (g, m) in fac.factors {
            div.add_point(ClosedPoint::Finite(g), sign * m as i64);
        }
    }
    let at_infinity = f.denominator().degree() as i64 - f.numerator().degree() as i64;
    div.add_point(ClosedPoint::Infinity, at_infinity);
    div
}

/// The function with divisor `b` and scalar 1.
pub fn function_with_divisor(field: PrimeField, b: &DivisorP1) -> Result<RatFunc> {
    let deg = b.degree();
    if deg != 0 {
        return Err(Error::NonzeroDegree(deg));
    }
    let mut num = Poly::one(field);
    let mut den = Poly::one(field);
    for (p, m) in b.iter() {
        if let ClosedPoint::Finite(g) = p {
            let power = g.pow(m.unsigned_abs());
            if m > 0 {
                num = &num * &power;
            } else {
                den = &den * &power;
            }
        }
    }
    RatFunc::new(num, den)
}

/// All closed points of degree at most `max_degree`, in sorted order.
pub fn closed_points_up_to(field: PrimeField, max_degree: usize) -> Vec<ClosedPoint> {
    let mut out = vec![ClosedPoint::Infinity];
    let p = field.p();
    for d in 1..=max_degree {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                coeffs.push(k % p);
                k /= p;
            }
            coeffs.push(1);
            let g = Poly::new(field, coeffs);
            if d == 1 || is_irreducible(&g) {
                out.push(ClosedPoint::Finite(g));
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn divisor_of_coordinate() {
        let f = field(5);
        let expected = DivisorP1::from_terms([
            (ClosedPoint::rational(f, 0), 1),
            (ClosedPoint::Infinity, -1),
        ]);
        assert_eq!(divisor_of(&RatFunc::t(f)), expected);
    }

    #[test]
    fn constants_have_no_divisor() {
        let f = field(5);
        assert!(divisor_of(&RatFunc::constant(f, 3).unwrap()).is_zero());
    }

    #[test]
    fn divisor_with_degree_two_point() {
        let f = field(5);
        let g = RatFunc::new(Poly::new(f, vec![2, 0, 1]), Poly::from_i64(f, &[-1, 1])).unwrap();
        let d = divisor_of(&g);
        let expected = DivisorP1::from_terms([
            (ClosedPoint::finite(Poly::new(f, vec![2, 0, 1])).unwrap(), 1),
            (ClosedPoint::rational(f, 1), -1),
            (ClosedPoint::Infinity, -1),
        ]);
        assert_eq!(d, expected);
        assert_eq!(d.degree(), 0);
    }

    #[test]
    fn function_with_divisor_examples() {
        let f = field(5);
        let b = DivisorP1::from_terms([(ClosedPoint::rational(f, 0), 1), (ClosedPoint::Infinity, -1)]);
        assert_eq!(function_with_divisor(f, &b).unwrap(), RatFunc::t(f));
        assert!(function_with_divisor(f, &DivisorP1::new()).unwrap().is_one());

        let b = DivisorP1::from_terms([
            (ClosedPoint::rational(f, 1), 1),
            (ClosedPoint::rational(f, 2), -1),
        ]);
        let g = function_with_divisor(f, &b).unwrap();
        assert_eq!(
            g,
            RatFunc::new(Poly::from_i64(f, &[-1, 1]), Poly::from_i64(f, &[-2, 1])).unwrap()
        );
        assert_eq!(divisor_of(&g), b);

        let bad = DivisorP1::point(ClosedPoint::Infinity, 1);
        assert!(matches!(function_with_divisor(f, &bad), Err(Error::NonzeroDegree(1))));
    }

    #[test]
    fn rational_points_sort_by_value() {
        let f = field(7);
        let mut pts: Vec<_> = [4u64, 1, 2].iter().map(|&a| ClosedPoint::rational(f, a)).collect();
        pts.push(ClosedPoint::Infinity);
        pts.sort();
        assert_eq!(pts[0], ClosedPoint::Infinity);
        assert_eq!(pts[1], ClosedPoint::rational(f, 1));
        assert_eq!(pts[3], ClosedPoint::rational(f, 4));
    }

    #[test]
    fn closed_point_counts() {
        // p + 1 rational points and (p^2 - p)/2 of degree two.
        let f = field(5);
        let pts = closed_points_up_to(f, 2);
        assert_eq!(pts.len(), 6 + 10);
    }

    #[test]
    fn coefficientwise_minimum() {
        let f = field(5);
        let a = ClosedPoint::rational(f, 1);
        let b = ClosedPoint::rational(f, 2);
        let x = DivisorP1::from_terms([(a.clone(), 2), (b.clone(), 1)]);
        let y = DivisorP1::from_terms([(a.clone(), 1)]);
        assert_eq!(x.min(&y), DivisorP1::point(a, 1));
    }

    #[test]
    fn serializes_points_and_divisors() {
        let f = field(5);
        let d = DivisorP1::from_terms([(ClosedPoint::rational(f, 1), 1), (ClosedPoint::Infinity, -1)]);
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"[{"point":"inf","mult":-1},{"point":[4,1],"mult":1}]"#
        );
    }
}
