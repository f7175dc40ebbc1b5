//! Conductor covers and the quotient groups
//! `Q = k(D̄)* / <pullbacks from the reference, constants on each piece>`.
//!
//! A split cover of degree `d` has `d` pieces, each mapped isomorphically to
//! the reference line; a cyclic cover has one piece mapped by
//! `t -> mobius(t^d)` with deck group generated by `σ: t -> ζ_d t`. Covers of
//! a point (nodes of curves) have trivial quotient.

mod oracle;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

pub use oracle::{brute_force_class_equal, BruteForceOutcome};

use crate::components::CoverMap;
use crate::error::{Error, Result};
use crate::ff_poly::{discrete_log, Poly, PrimeField, RatFunc};
use crate::proj_line::{divisor_of, sigma_orbit, ClosedPoint, DivisorP1};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverKind {
    Split,
    Cyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReferenceKind {
    Line,
    Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDescriptor {
    field: PrimeField,
    reference: ReferenceKind,
    kind: CoverKind,
    degree: u64,
    maps: Vec<CoverMap>,
}

impl CoverDescriptor {
    pub fn new(
        field: PrimeField,
        reference: ReferenceKind,
        kind: CoverKind,
        degree: u64,
        maps: Vec<CoverMap>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if degree < 2 {
            return bad(format!("cover degree {degree} < 2"));
        }
        match (reference, kind) {
            (ReferenceKind::Point, CoverKind::Cyclic) => {
                return bad("covers of a point are always split".into())
            }
            (_, CoverKind::Split) => {
                if maps.len() as u64 != degree {
                    return bad(format!("split cover of degree {degree} has {} pieces", maps.len()));
                }
                if maps.iter().any(|m| m.power != 1) {
                    return bad("split pieces map isomorphically to the reference".into());
                }
            }
            (ReferenceKind::Line, CoverKind::Cyclic) => {
                if maps.len() != 1 {
                    return bad(format!("cyclic cover has {} pieces, expected 1", maps.len()));
                }
                if !field.unit_order().is_multiple_of(degree) {
                    return Err(Error::DegreeNotDividing(degree, field.unit_order()));
                }
                if maps[0].power != degree {
                    return bad(format!(
                        "cyclic cover of degree {degree} with power map t^{}",
                        maps[0].power
                    ));
                }
            }
        }
        Ok(CoverDescriptor {
            field,
            reference,
            kind,
            degree,
            maps,
        })
    }

    /// Split cover of the line with the given piece-to-reference maps.
    pub fn split(field: PrimeField, maps: Vec<crate::proj_line::MobiusMap>) -> Result<Self> {
        let degree = maps.len() as u64;
        let maps = maps.into_iter().map(|mobius| CoverMap { mobius, power: 1 }).collect();
        CoverDescriptor::new(field, ReferenceKind::Line, CoverKind::Split, degree, maps)
    }

    /// Cyclic cover `t -> t^d` of the line.
    pub fn cyclic(field: PrimeField, degree: u64) -> Result<Self> {
        let map = CoverMap {
            mobius: crate::proj_line::MobiusMap::identity(field),
            power: degree,
        };
        CoverDescriptor::new(field, ReferenceKind::Line, CoverKind::Cyclic, degree, vec![map])
    }

    /// `d` rational points glued to one point.
    pub fn point(field: PrimeField, degree: u64) -> Result<Self> {
        let maps = vec![CoverMap::identity(field); degree as usize];
        CoverDescriptor::new(field, ReferenceKind::Point, CoverKind::Split, degree, maps)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn reference(&self) -> ReferenceKind {
        self.reference
    }

    pub fn kind(&self) -> CoverKind {
        self.kind
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn maps(&self) -> &[CoverMap] {
        &self.maps
    }

    pub fn piece_count(&self) -> usize {
        self.maps.len()
    }

    /// The deck generator's root of unity `ζ_d = g^((p-1)/d)`.
    pub fn zeta(&self) -> Result<u64> {
        self.field.root_of_unity(self.degree)
    }

    /// Pullback of a reference function to each piece.
    pub fn pullback(&self, g: &RatFunc) -> Vec<RatFunc> {
        match self.reference {
            ReferenceKind::Point => vec![RatFunc::one(self.field); self.maps.len()],
            ReferenceKind::Line => self.maps.iter().map(|m| m.pullback(g)).collect(),
        }
    }

    /// Function on piece `a` moved to the reference by the inverse of its
    /// (degree-one) cover map.
    pub fn transport(&self, a: usize, f: &RatFunc) -> RatFunc {
        self.maps[a].mobius.inverse().pullback(f)
    }

    pub fn shape(&self) -> QuotientGroupShape {
        match (self.reference, self.kind) {
            (ReferenceKind::Point, _) => QuotientGroupShape {
                free_basis: None,
                torsion_order: 1,
            },
            (ReferenceKind::Line, CoverKind::Split) => QuotientGroupShape {
                free_basis: Some(format!("closed points of P^1 x {}", self.degree - 1)),
                torsion_order: 1,
            },
            (ReferenceKind::Line, CoverKind::Cyclic) => QuotientGroupShape {
                free_basis: Some("non-ramified σ-orbits x (orbit size - 1)".into()),
                torsion_order: self.degree,
            },
        }
    }

    fn check_tuple(&self, fs: &[RatFunc]) -> Result<()> {
        if fs.len() != self.maps.len() {
            return Err(Error::InvalidInput(format!(
                "tuple of {} functions for a cover with {} pieces",
                fs.len(),
                self.maps.len()
            )));
        }
        if fs.iter().any(|f| f.field() != self.field) {
            return Err(Error::InvalidInput("function over a different field".into()));
        }
        Ok(())
    }
}

/// The free part and torsion bound of one quotient group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientGroupShape {
    /// Enumerable basis of the free part; `None` for the trivial group.
    pub free_basis: Option<String>,
    pub torsion_order: u64,
}

impl QuotientGroupShape {
    pub fn is_trivial(&self) -> bool {
        self.free_basis.is_none() && self.torsion_order == 1
    }
}

/// The image of a tuple under taking divisors, modulo pullbacks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradedPart {
    Trivial,
    /// `div(h_a) - div(h_1)` for `a = 2..d`.
    Split(Vec<DivisorP1>),
    /// Per non-ramified σ-orbit (keyed by its smallest point), the
    /// multiplicities along the orbit minus the last one. Zero vectors are
    /// dropped.
    Cyclic(BTreeMap<ClosedPoint, Vec<i64>>),
}

impl GradedPart {
    pub fn is_zero(&self) -> bool {
        match self {
            GradedPart::Trivial => true,
            GradedPart::Split(ds) => ds.iter().all(DivisorP1::is_zero),
            GradedPart::Cyclic(m) => m.is_empty(),
        }
    }
}

/// Canonical representative of a class in the quotient group of a cover.
///
/// Cyclic classes always carry a torsion exponent `k` (`λ = ζ_d^k`), taken
/// relative to the canonical section `Π orbit_member^v` of the graded part,
/// so the representation is faithful even when the graded part is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientClass {
    Trivial,
    Split(Vec<DivisorP1>),
    Cyclic {
        degree: u64,
        graded: BTreeMap<ClosedPoint, Vec<i64>>,
        torsion: u64,
    },
}

impl QuotientClass {
    pub fn is_trivial(&self) -> bool {
        match self {
            QuotientClass::Trivial => true,
            QuotientClass::Split(ds) => ds.iter().all(DivisorP1::is_zero),
            QuotientClass::Cyclic { graded, torsion, .. } => graded.is_empty() && *torsion == 0,
        }
    }

    pub fn graded(&self) -> GradedPart {
        match self {
            QuotientClass::Trivial => GradedPart::Trivial,
            QuotientClass::Split(ds) => GradedPart::Split(ds.clone()),
            QuotientClass::Cyclic { graded, .. } => GradedPart::Cyclic(graded.clone()),
        }
    }

    /// Order of the class, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        match self {
            QuotientClass::Trivial => Some(1),
            QuotientClass::Split(_) => self.is_trivial().then_some(1),
            QuotientClass::Cyclic { degree, graded, torsion } => {
                graded.is_empty().then(|| degree / gcd(*degree, *torsion))
            }
        }
    }

    /// The group law: the class of `f / g` from the classes of `f` and `g`.
    pub fn class_sub(&self, other: &QuotientClass) -> Result<QuotientClass> {
        match (self, other) {
            (QuotientClass::Trivial, QuotientClass::Trivial) => Ok(QuotientClass::Trivial),
            (QuotientClass::Split(a), QuotientClass::Split(b)) if a.len() == b.len() => Ok(
                QuotientClass::Split(a.iter().zip(b).map(|(x, y)| x - y).collect()),
            ),
            (
                QuotientClass::Cyclic { degree: d1, graded: g1, torsion: k1 },
                QuotientClass::Cyclic { degree: d2, graded: g2, torsion: k2 },
            ) if d1 == d2 => {
                let mut graded = g1.clone();
                for (key, v) in g2 {
                    let entry = graded.entry(key.clone()).or_insert_with(|| vec![0; v.len()]);
                    for (x, y) in entry.iter_mut().zip(v) {
                        *x -= y;
                    }
                    if entry.iter().all(|&x| x == 0) {
                        graded.remove(key);
                    }
                }
                Ok(QuotientClass::Cyclic {
                    degree: *d1,
                    graded,
                    torsion: (k1 + d1 - k2) % d1,
                })
            }
            _ => Err(Error::InvalidInput("classes of different covers".into())),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            QuotientClass::Trivial => json!({ "kind": "trivial", "trivial": true }),
            QuotientClass::Split(ds) => json!({
                "kind": "split",
                "trivial": self.is_trivial(),
                "differences": ds.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "difference_terms": ds,
            }),
            QuotientClass::Cyclic { degree, graded, torsion } => json!({
                "kind": "cyclic",
                "trivial": self.is_trivial(),
                "graded": graded
                    .iter()
                    .map(|(k, v)| json!({ "orbit_of": k, "vector": v }))
                    .collect::<Vec<_>>(),
                "torsion_exponent": torsion,
                "torsion_order": degree / gcd(*degree, *torsion),
            }),
        }
    }
}

impl fmt::Display for QuotientClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientClass::Trivial => write!(f, "trivial"),
            QuotientClass::Split(ds) => {
                let parts: Vec<String> = ds.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
            QuotientClass::Cyclic { degree, graded, torsion } => {
                let parts: Vec<String> =
                    graded.iter().map(|(k, v)| format!("{k}: {v:?}")).collect();
                write!(f, "{{{}}} λ = ζ_{degree}^{torsion}", parts.join(", "))
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The graded data of a tuple: transported divisor differences for split
/// covers, normalized σ-orbit vectors for cyclic ones.
pub fn q_map(fs: &[RatFunc], c: &CoverDescriptor) -> Result<GradedPart> {
    c.check_tuple(fs)?;
    match (c.reference, c.kind) {
        (ReferenceKind::Point, _) => Ok(GradedPart::Trivial),
        (ReferenceKind::Line, CoverKind::Split) => {
            let divs: Vec<DivisorP1> = fs
                .iter()
                .enumerate()
                .map(|(a, f)| divisor_of(&c.transport(a, f)))
                .collect();
            Ok(GradedPart::Split(divs[1..].iter().map(|d| d - &divs[0]).collect()))
        }
        (ReferenceKind::Line, CoverKind::Cyclic) => {
            Ok(GradedPart::Cyclic(orbit_vectors(&divisor_of(&fs[0]), c)?))
        }
    }
}

fn orbit_vectors(div: &DivisorP1, c: &CoverDescriptor) -> Result<BTreeMap<ClosedPoint, Vec<i64>>> {
    let mut out = BTreeMap::new();
    let mut seen: Vec<ClosedPoint> = Vec::new();
    for p in div.support() {
        if seen.contains(p) {
            continue;
        }
        let orbit = sigma_orbit(c.field, p, c.degree)?;
        seen.extend(orbit.iter().cloned());
        if orbit.len() == 1 {
            continue;
        }
        let last = div.multiplicity(orbit.last().expect("nonempty"));
        let v: Vec<i64> = orbit.iter().map(|q| div.multiplicity(q) - last).collect();
        if v.iter().any(|&x| x != 0) {
            out.insert(orbit[0].clone(), v);
        }
    }
    Ok(out)
}

/// `Π_i orbit_i^{v_i}` over the graded entries: a function with the given
/// normalized orbit vectors and poles only at infinity.
fn canonical_section(
    graded: &BTreeMap<ClosedPoint, Vec<i64>>,
    c: &CoverDescriptor,
) -> Result<RatFunc> {
    let mut num = Poly::one(c.field);
    let mut den = Poly::one(c.field);
    for (key, v) in graded {
        let orbit = sigma_orbit(c.field, key, c.degree)?;
        for (q, &k) in orbit.iter().zip(v) {
            let ClosedPoint::Finite(g) = q else {
                return Err(Error::Internal("infinity in a free orbit".into()));
            };
            let power = g.pow(k.unsigned_abs());
            if k > 0 {
                num = &num * &power;
            } else {
                den = &den * &power;
            }
        }
    }
    RatFunc::new(num, den)
}

/// `λ = f(ζ_d t) / f(t)` for a function with σ-invariant divisor.
pub fn torsion_part(f: &RatFunc, c: &CoverDescriptor) -> Result<u64> {
    if c.kind != CoverKind::Cyclic {
        return Err(Error::InvalidInput("torsion is defined for cyclic covers".into()));
    }
    match q_map(std::slice::from_ref(f), c)? {
        GradedPart::Cyclic(m) if m.is_empty() => {}
        _ => return Err(Error::TorsionUndefined),
    }
    deck_ratio(f, c)
}

fn deck_ratio(f: &RatFunc, c: &CoverDescriptor) -> Result<u64> {
    let ratio = &f.scale_argument(c.zeta()?) / f;
    ratio
        .constant_value()
        .ok_or_else(|| Error::Internal(format!("σ*f/f = {ratio} is not constant")))
}

/// Exponent `k` with `λ = ζ_d^k`.
fn root_exponent(lambda: u64, c: &CoverDescriptor) -> Result<u64> {
    let step = c.field.unit_order() / c.degree;
    let log = discrete_log(c.field, lambda)?;
    if log % step != 0 {
        return Err(Error::Internal(format!("{lambda} is not a {}-th root of unity", c.degree)));
    }
    Ok(log / step)
}

pub fn classify_tuple(fs: &[RatFunc], c: &CoverDescriptor) -> Result<QuotientClass> {
    match q_map(fs, c)? {
        GradedPart::Trivial => Ok(QuotientClass::Trivial),
        GradedPart::Split(ds) => Ok(QuotientClass::Split(ds)),
        GradedPart::Cyclic(graded) => {
            let section = canonical_section(&graded, c)?;
            let lambda = deck_ratio(&(&fs[0] / &section), c)?;
            Ok(QuotientClass::Cyclic {
                degree: c.degree,
                graded,
                torsion: root_exponent(lambda, c)?,
            })
        }
    }
}

pub fn is_trivial(q: &QuotientClass) -> bool {
    q.is_trivial()
}

pub fn class_sub(q1: &QuotientClass, q2: &QuotientClass) -> Result<QuotientClass> {
    q1.class_sub(q2)
}

/// Outcome of trying to write a function on a cyclic piece as a pullback.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descent {
    /// `f = g ∘ cover` for this reference function `g`.
    Descends(RatFunc),
    /// The divisor of `f` is not σ-invariant.
    GradedNonzero,
    /// The divisor is σ-invariant but `σ*f = λ f` with `λ != 1`.
    Twisted { lambda: u64 },
}

pub fn descend(f: &RatFunc, c: &CoverDescriptor) -> Result<Descent> {
    if c.kind != CoverKind::Cyclic {
        return Err(Error::InvalidInput("descent applies to cyclic covers".into()));
    }
    let d = c.degree as usize;
    if let (Some(n), Some(m)) = (f.numerator().decompose_power(d), f.denominator().decompose_power(d))
    {
        let g = RatFunc::new(n.scale(f.scalar()), m)?;
        return Ok(Descent::Descends(c.maps[0].mobius.inverse().pullback(&g)));
    }
    match torsion_part(f, c) {
        Ok(lambda) => Ok(Descent::Twisted { lambda }),
        Err(Error::TorsionUndefined) => Ok(Descent::GradedNonzero),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proj_line::MobiusMap;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn rf(f: PrimeField, num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_i64(f, num), Poly::from_i64(f, den)).unwrap()
    }

    fn split2(f: PrimeField) -> CoverDescriptor {
        CoverDescriptor::split(f, vec![MobiusMap::identity(f); 2]).unwrap()
    }

    #[test]
    fn constants_are_trivial() {
        let f = field(7);
        let c = split2(f);
        let q = classify_tuple(&[rf(f, &[3], &[1]), rf(f, &[5], &[1])], &c).unwrap();
        assert!(q.is_trivial());
        let cyc = CoverDescriptor::cyclic(f, 3).unwrap();
        assert!(classify_tuple(&[rf(f, &[4], &[1])], &cyc).unwrap().is_trivial());
    }

    #[test]
    fn diagonal_is_a_pullback() {
        let f = field(5);
        let t = RatFunc::t(f);
        assert!(classify_tuple(&[t.clone(), t], &split2(f)).unwrap().is_trivial());
    }

    #[test]
    fn split_nontrivial_class() {
        let f = field(5);
        let q = classify_tuple(&[RatFunc::t(f), RatFunc::one(f)], &split2(f)).unwrap();
        // h_2 - h_1 = -div(t) = [inf] - [t].
        let expected = DivisorP1::from_terms([
            (ClosedPoint::Infinity, 1),
            (ClosedPoint::rational(f, 0), -1),
        ]);
        assert_eq!(q, QuotientClass::Split(vec![expected]));
        assert_eq!(q.order(), None);
    }

    #[test]
    fn cyclic_orbit_vector() {
        let f = field(7);
        let c = CoverDescriptor::cyclic(f, 3).unwrap();
        let GradedPart::Cyclic(m) = q_map(&[rf(f, &[-1, 1], &[1])], &c).unwrap() else {
            panic!()
        };
        assert_eq!(m.len(), 1);
        assert_eq!(m[&ClosedPoint::rational(f, 1)], vec![1, 0, 0]);
    }

    #[test]
    fn higher_pinch_torsion() {
        let f = field(7);
        let c = CoverDescriptor::cyclic(f, 3).unwrap();
        let t = RatFunc::t(f);
        assert_eq!(torsion_part(&t, &c).unwrap(), 2);
        let q = classify_tuple(std::slice::from_ref(&t), &c).unwrap();
        assert_eq!(q.order(), Some(3));
        assert!(classify_tuple(&[t.pow(3)], &c).unwrap().is_trivial());
    }

    #[test]
    fn degree_two_torsion() {
        let f = field(5);
        let c = CoverDescriptor::cyclic(f, 2).unwrap();
        let t = RatFunc::t(f);
        assert_eq!(torsion_part(&t, &c).unwrap(), 4);
        assert_eq!(classify_tuple(std::slice::from_ref(&t), &c).unwrap().order(), Some(2));
        assert!(classify_tuple(&[t.pow(2)], &c).unwrap().is_trivial());
    }

    #[test]
    fn torsion_of_pullbacks_is_one() {
        let f = field(7);
        let c = CoverDescriptor::cyclic(f, 3).unwrap();
        let g = rf(f, &[2, 1, 3], &[5, 1]);
        assert_eq!(torsion_part(&g.compose_power(3), &c).unwrap(), 1);
        assert!(matches!(
            torsion_part(&rf(f, &[-1, 1], &[1]), &c),
            Err(Error::TorsionUndefined)
        ));
    }

    #[test]
    fn descent() {
        let f = field(7);
        let c = CoverDescriptor::cyclic(f, 3).unwrap();
        assert_eq!(
            descend(&rf(f, &[1, 0, 0, 1], &[1]), &c).unwrap(),
            Descent::Descends(rf(f, &[1, 1], &[1]))
        );
        assert_eq!(descend(&RatFunc::t(f), &c).unwrap(), Descent::Twisted { lambda: 2 });
        assert_eq!(descend(&rf(f, &[-1, 1], &[1]), &c).unwrap(), Descent::GradedNonzero);
        let got = descend(&rf(f, &[0, 0, 0, 2], &[1, 0, 0, 1]), &c).unwrap();
        assert_eq!(got, Descent::Descends(rf(f, &[0, 2], &[1, 1])));
    }

    #[test]
    fn descent_through_mobius() {
        let f = field(7);
        let m = MobiusMap::new(f, 1, 2, 1, 0).unwrap();
        let c = CoverDescriptor::new(
            f,
            ReferenceKind::Line,
            CoverKind::Cyclic,
            3,
            vec![CoverMap { mobius: m, power: 3 }],
        )
        .unwrap();
        let g = rf(f, &[3, 1], &[1, 0, 1]);
        let pulled = c.pullback(&g).remove(0);
        assert_eq!(descend(&pulled, &c).unwrap(), Descent::Descends(g));
    }

    #[test]
    fn class_sub_is_the_group_law() {
        let f = field(7);
        let c = CoverDescriptor::cyclic(f, 3).unwrap();
        let a = rf(f, &[0, 1], &[2, 0, 1]);
        let b = rf(f, &[5, 1], &[3, 1]);
        let qa = classify_tuple(std::slice::from_ref(&a), &c).unwrap();
        let qb = classify_tuple(std::slice::from_ref(&b), &c).unwrap();
        assert_eq!(qa.class_sub(&qb).unwrap(), classify_tuple(&[&a / &b], &c).unwrap());
    }

    #[test]
    fn point_covers_are_trivial() {
        let f = field(5);
        let c = CoverDescriptor::point(f, 2).unwrap();
        let q = classify_tuple(&[rf(f, &[2], &[1]), rf(f, &[3], &[1])], &c).unwrap();
        assert_eq!(q, QuotientClass::Trivial);
        assert!(c.shape().is_trivial());
    }

    #[test]
    fn descriptor_validation() {
        let f = field(5);
        assert!(matches!(
            CoverDescriptor::cyclic(f, 3),
            Err(Error::DegreeNotDividing(3, 4))
        ));
        assert!(CoverDescriptor::split(f, vec![MobiusMap::identity(f)]).is_err());
        assert_eq!(split2(f).shape().torsion_order, 1);
        assert_eq!(CoverDescriptor::cyclic(f, 2).unwrap().shape().torsion_order, 2);
    }
}
