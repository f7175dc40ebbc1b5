//! Irreducible components of the normalization: the projective plane, the
//! quadric `P^1 x P^1` and the projective line, with divisor classes,
//! principal witnesses and restriction to conductor pieces.

mod embedding;
mod form;
mod sample;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use embedding::{ConductorEmbedding, CoverMap, Locus, RulingFactor};
pub use form::Form;

use crate::error::{Error, Result};
use crate::ff_poly::{Poly, PrimeField, RatFunc};
use crate::proj_line::{divisor_of, function_with_divisor, DivisorP1, RationalPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Plane,
    Quadric,
    Line,
}

impl ComponentKind {
    /// Rank of the divisor class group.
    pub fn class_rank(self) -> usize {
        match self {
            ComponentKind::Quadric => 2,
            _ => 1,
        }
    }

    fn nvars(self) -> usize {
        match self {
            ComponentKind::Plane => 3,
            ComponentKind::Quadric => 4,
            ComponentKind::Line => 2,
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentKind::Plane => "plane",
            ComponentKind::Quadric => "quadric",
            ComponentKind::Line => "line",
        })
    }
}

/// A formal divisor on one component. Surfaces carry irreducible forms with
/// multiplicities; lines carry a divisor on `P^1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentDivisor {
    Forms(BTreeMap<Form, i64>),
    Points(DivisorP1),
}

impl ComponentDivisor {
    pub fn zero(kind: ComponentKind) -> Self {
        match kind {
            ComponentKind::Line => ComponentDivisor::Points(DivisorP1::new()),
            _ => ComponentDivisor::Forms(BTreeMap::new()),
        }
    }

    pub fn form(f: Form, mult: i64) -> Self {
        let mut d = BTreeMap::new();
        if mult != 0 {
            d.insert(f, mult);
        }
        ComponentDivisor::Forms(d)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ComponentDivisor::Forms(m) => m.is_empty(),
            ComponentDivisor::Points(d) => d.is_zero(),
        }
    }

    /// `self + k * other`, cancelling multiplicities.
    pub fn add_scaled(&self, other: &ComponentDivisor, k: i64) -> Result<ComponentDivisor> {
        match (self, other) {
            (ComponentDivisor::Forms(a), ComponentDivisor::Forms(b)) => {
                let mut out = a.clone();
                for (f, m) in b {
                    let e = out.entry(f.clone()).or_insert(0);
                    *e += k * m;
                    if *e == 0 {
                        out.remove(f);
                    }
                }
                Ok(ComponentDivisor::Forms(out))
            }
            (ComponentDivisor::Points(a), ComponentDivisor::Points(b)) => {
                Ok(ComponentDivisor::Points(a + &b.scale(k)))
            }
            _ => Err(Error::InvalidInput("divisors on different component kinds".into())),
        }
    }

    pub fn add(&self, other: &ComponentDivisor) -> Result<ComponentDivisor> {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &ComponentDivisor) -> Result<ComponentDivisor> {
        self.add_scaled(other, -1)
    }
}

impl fmt::Display for ComponentDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentDivisor::Points(d) => write!(f, "{d}"),
            ComponentDivisor::Forms(m) if m.is_empty() => write!(f, "0"),
            ComponentDivisor::Forms(m) => {
                let parts: Vec<String> = m.iter().map(|(g, k)| format!("{k}*({g})")).collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// A rational function on one component: a scalar times a product of forms
/// with integer exponents and total (bi)degree zero on surfaces, a reduced
/// rational function on lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormalFunction {
    Forms {
        scalar: u64,
        factors: BTreeMap<Form, i64>,
    },
    Line(RatFunc),
}

impl FormalFunction {
    pub fn one(field: PrimeField, kind: ComponentKind) -> Self {
        match kind {
            ComponentKind::Line => FormalFunction::Line(RatFunc::one(field)),
            _ => FormalFunction::Forms {
                scalar: 1,
                factors: BTreeMap::new(),
            },
        }
    }

    pub fn scale(&self, field: PrimeField, c: u64) -> FormalFunction {
        match self {
            FormalFunction::Forms { scalar, factors } => FormalFunction::Forms {
                scalar: field.mul(*scalar, c),
                factors: factors.clone(),
            },
            FormalFunction::Line(f) => FormalFunction::Line(f.scale(c)),
        }
    }

    pub fn mul(&self, field: PrimeField, other: &FormalFunction) -> Result<FormalFunction> {
        match (self, other) {
            (
                FormalFunction::Forms { scalar: a, factors: fa },
                FormalFunction::Forms { scalar: b, factors: fb },
            ) => {
                let ComponentDivisor::Forms(factors) = ComponentDivisor::Forms(fa.clone())
                    .add(&ComponentDivisor::Forms(fb.clone()))?
                else {
                    unreachable!()
                };
                Ok(FormalFunction::Forms {
                    scalar: field.mul(*a, *b),
                    factors,
                })
            }
            (FormalFunction::Line(f), FormalFunction::Line(g)) => Ok(FormalFunction::Line(f * g)),
            _ => Err(Error::InvalidInput("functions on different component kinds".into())),
        }
    }

    /// The divisor of the function. Forms are irreducible by contract, so on
    /// surfaces this reads off the exponents.
    pub fn divisor(&self) -> ComponentDivisor {
        match self {
            FormalFunction::Forms { factors, .. } => ComponentDivisor::Forms(factors.clone()),
            FormalFunction::Line(f) => ComponentDivisor::Points(divisor_of(f)),
        }
    }
}

impl fmt::Display for FormalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormalFunction::Line(r) => write!(f, "{r}"),
            FormalFunction::Forms { scalar, factors } => {
                write!(f, "{scalar}")?;
                for (g, k) in factors {
                    write!(f, " * ({g})^{k}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentModel {
    pub name: String,
    pub kind: ComponentKind,
}

impl ComponentModel {
    pub fn new(name: impl Into<String>, kind: ComponentKind) -> Self {
        ComponentModel {
            name: name.into(),
            kind,
        }
    }

    /// Checks a form is (bi)homogeneous of positive degree in this
    /// component's coordinates.
    pub fn check_form(&self, form: &Form) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidInput(format!("form {form} on {}: {msg}", self.name)));
        if self.kind == ComponentKind::Line {
            return bad("line components take points, not forms");
        }
        if form.nvars() != self.kind.nvars() {
            return bad(&format!("expected {} variables", self.kind.nvars()));
        }
        match self.kind {
            ComponentKind::Plane => match form.degree() {
                Some(d) if d > 0 => Ok(()),
                Some(_) => bad("constant form"),
                None => bad("not homogeneous"),
            },
            _ => match (form.partial_degree(0..2), form.partial_degree(2..4)) {
                (Some(a), Some(b)) if a + b > 0 => Ok(()),
                (Some(_), Some(_)) => bad("constant form"),
                _ => bad("not bihomogeneous"),
            },
        }
    }

    /// Degree (plane, line) or bidegree (quadric).
    pub fn class_of(&self, b: &ComponentDivisor) -> Vec<i64> {
        match (self.kind, b) {
            (_, ComponentDivisor::Points(d)) => vec![d.degree()],
            (ComponentKind::Quadric, ComponentDivisor::Forms(m)) => {
                m.iter().fold(vec![0, 0], |acc, (f, k)| {
                    let x = f.partial_degree(0..2).unwrap_or(0) as i64;
                    let y = f.partial_degree(2..4).unwrap_or(0) as i64;
                    vec![acc[0] + k * x, acc[1] + k * y]
                })
            }
            (_, ComponentDivisor::Forms(m)) => {
                vec![m.iter().map(|(f, k)| k * f.degree().unwrap_or(0) as i64).sum()]
            }
        }
    }

    /// A function with divisor exactly `b`, scalar 1.
    pub fn witness(&self, field: PrimeField, b: &ComponentDivisor) -> Result<FormalFunction> {
        let class = self.class_of(b);
        if class.iter().any(|&c| c != 0) {
            return Err(Error::NotComponentwiseTrivial(class));
        }
        Ok(match b {
            ComponentDivisor::Forms(m) => FormalFunction::Forms {
                scalar: 1,
                factors: m.clone(),
            },
            ComponentDivisor::Points(d) => FormalFunction::Line(function_with_divisor(field, d)?),
        })
    }

    /// Restriction of a surface divisor to a curve locus, as a divisor in
    /// the piece coordinate.
    pub fn restrict_divisor(
        &self,
        field: PrimeField,
        b: &ComponentDivisor,
        locus: &Locus,
    ) -> Result<DivisorP1> {
        let ComponentDivisor::Forms(m) = b else {
            return Err(Error::Unsupported(
                "restriction of divisors on line components".into(),
            ));
        };
        let vars = locus.substitution(field);
        let mut out = DivisorP1::new();
        for (form, k) in m {
            let restricted = form.substitute(field, &vars).divisor().map_err(|_| {
                Error::SupportContainsConductor(format!("{form} contains {locus} on {}", self.name))
            })?;
            out = &out + &restricted.scale(*k);
        }
        Ok(out)
    }

    /// Restriction of a function to a locus, as a nonzero function of the
    /// piece coordinate (a constant for point loci).
    pub fn restrict_function(
        &self,
        field: PrimeField,
        func: &FormalFunction,
        locus: &Locus,
    ) -> Result<RatFunc> {
        let contains = || {
            Error::SupportContainsConductor(format!("function {func} degenerates on {locus}"))
        };
        match (func, locus) {
            (FormalFunction::Line(f), Locus::Point(pt)) => {
                let value = match pt {
                    RationalPoint::Affine(a) => f.eval(*a),
                    RationalPoint::Infinity => f.eval_at_infinity(),
                };
                match value {
                    Some(v) if v != 0 => Ok(RatFunc::constant(field, v)?),
                    _ => Err(contains()),
                }
            }
            (FormalFunction::Forms { scalar, factors }, Locus::PlaneLine { .. } | Locus::Ruling { .. }) => {
                let vars = locus.substitution(field);
                let mut num = Poly::constant(field, *scalar);
                let mut den = Poly::one(field);
                for (form, &k) in factors {
                    let g = form.substitute(field, &vars);
                    if g.is_zero() {
                        return Err(contains());
                    }
                    let power = g.dehomogenized().pow(k.unsigned_abs());
                    if k > 0 {
                        num = &num * &power;
                    } else {
                        den = &den * &power;
                    }
                }
                RatFunc::new(num, den)
            }
            _ => Err(Error::InvalidInput(format!(
                "locus {locus} does not fit component {} of kind {}",
                self.name, self.kind
            ))),
        }
    }

    /// True when no support element of `b` contains (or equals) the locus.
    pub fn avoids(&self, field: PrimeField, b: &ComponentDivisor, locus: &Locus) -> bool {
        match (b, locus) {
            (ComponentDivisor::Points(d), Locus::Point(pt)) => {
                d.multiplicity(&pt.to_closed(field)) == 0
            }
            (ComponentDivisor::Forms(m), Locus::PlaneLine { .. } | Locus::Ruling { .. }) => {
                let vars = locus.substitution(field);
                m.keys().all(|f| !f.substitute(field, &vars).is_zero())
            }
            _ => false,
        }
    }
}
