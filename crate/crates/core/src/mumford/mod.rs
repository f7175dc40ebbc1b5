//! Mumford divisors on a glued scheme and the decision procedure for linear
//! equivalence modulo the conductor.
//!
//! A divisor is classified layer by layer: its class on each component
//! (`pullback`), then the class of its component witnesses in the quotient
//! group of each conductor (`rho`), then the gluing constants in the
//! piecewise-trivial group (`pt`). It is principal modulo the conductor iff
//! all three vanish, in which case a glued witness function is produced and
//! checked.

mod file;
mod random;
mod witness;

use std::fmt;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

pub use file::{DivisorFile, PointValue, SupportSpec};
pub use random::random_divisor;
pub use witness::{check_witness, witness_search, OracleReport, Witness};

use crate::components::{ComponentDivisor, ComponentKind, Form, FormalFunction};
use crate::covers::{classify_tuple, CoverKind, QuotientClass, ReferenceKind};
use crate::error::{Error, Result};
use crate::ff_poly::{discrete_log, Poly, RatFunc};
use crate::glued_scheme::{Diagnostic, GluedScheme};
use crate::proj_line::{ClosedPoint, DivisorP1, RationalPoint};

/// One divisor per component of the scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordDivisor {
    parts: Vec<ComponentDivisor>,
}

impl MumfordDivisor {
    pub fn zero(s: &GluedScheme) -> Self {
        MumfordDivisor {
            parts: s.components().iter().map(|c| ComponentDivisor::zero(c.kind)).collect(),
        }
    }

    pub fn from_parts(s: &GluedScheme, parts: Vec<ComponentDivisor>) -> Result<Self> {
        if parts.len() != s.components().len() {
            return Err(Error::InvalidInput(format!(
                "{} component divisors for {} components",
                parts.len(),
                s.components().len()
            )));
        }
        for (part, c) in parts.iter().zip(s.components()) {
            let fits = matches!(
                (part, c.kind),
                (ComponentDivisor::Points(_), ComponentKind::Line)
                    | (ComponentDivisor::Forms(_), ComponentKind::Plane | ComponentKind::Quadric)
            );
            if !fits {
                return Err(Error::InvalidInput(format!(
                    "divisor of the wrong kind on {} component {}",
                    c.kind, c.name
                )));
            }
            if let ComponentDivisor::Forms(m) = part {
                for f in m.keys() {
                    c.check_form(f)?;
                }
            }
        }
        Ok(MumfordDivisor { parts })
    }

    /// Replaces the divisor on one component.
    pub fn with_part(&self, s: &GluedScheme, i: usize, part: ComponentDivisor) -> Result<Self> {
        let mut parts = self.parts.clone();
        parts[i] = part;
        MumfordDivisor::from_parts(s, parts)
    }

    pub fn from_file(s: &GluedScheme, file: &DivisorFile) -> Result<Self> {
        if let Some(name) = s.name() {
            if name != file.scheme {
                return Err(Error::InvalidInput(format!(
                    "divisor is for scheme '{}', not '{name}'",
                    file.scheme
                )));
            }
        }
        let field = s.field();
        let mut parts: Vec<ComponentDivisor> =
            s.components().iter().map(|c| ComponentDivisor::zero(c.kind)).collect();
        for entry in &file.support {
            let i = s.component_index(&entry.component).ok_or_else(|| {
                Error::InvalidInput(format!("unknown component '{}'", entry.component))
            })?;
            let model = &s.components()[i];
            let term = match (model.kind, &entry.form, &entry.point) {
                (ComponentKind::Line, None, Some(pt)) => {
                    ComponentDivisor::Points(DivisorP1::point(parse_point(s, pt)?, entry.mult))
                }
                (ComponentKind::Plane | ComponentKind::Quadric, Some(terms), None) => {
                    let form = Form::new(field, terms.iter().cloned())?;
                    model.check_form(&form)?;
                    ComponentDivisor::form(form, entry.mult)
                }
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "support on {} component '{}' needs exactly one {}",
                        model.kind,
                        entry.component,
                        if model.kind == ComponentKind::Line { "point" } else { "form" }
                    )))
                }
            };
            parts[i] = parts[i].add(&term)?;
        }
        Ok(MumfordDivisor { parts })
    }

    pub fn from_json(s: &GluedScheme, text: &str) -> Result<Self> {
        MumfordDivisor::from_file(s, &serde_json::from_str(text)?)
    }

    pub fn load(s: &GluedScheme, path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        MumfordDivisor::from_json(s, &text)
    }

    pub fn to_file(&self, s: &GluedScheme) -> DivisorFile {
        let mut support = Vec::new();
        for (part, c) in self.parts.iter().zip(s.components()) {
            match part {
                ComponentDivisor::Forms(m) => {
                    for (f, &k) in m {
                        let terms = f.terms().iter().map(|(e, c)| (e.clone(), *c as i64)).collect();
                        support.push(SupportSpec {
                            component: c.name.clone(),
                            form: Some(terms),
                            point: None,
                            mult: k,
                        });
                    }
                }
                ComponentDivisor::Points(d) => {
                    for (pt, k) in d.iter() {
                        let value = match pt {
                            ClosedPoint::Infinity => PointValue::Named("inf".into()),
                            ClosedPoint::Finite(g) => match pt.as_rational() {
                                Some(RationalPoint::Affine(a)) => PointValue::Affine(a as i64),
                                _ => PointValue::Poly(g.coeffs().iter().map(|&x| x as i64).collect()),
                            },
                        };
                        support.push(SupportSpec {
                            component: c.name.clone(),
                            form: None,
                            point: Some(value),
                            mult: k,
                        });
                    }
                }
            }
        }
        DivisorFile {
            scheme: s.name().unwrap_or_default().to_string(),
            support,
        }
    }

    pub fn parts(&self) -> &[ComponentDivisor] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &ComponentDivisor {
        &self.parts[i]
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(ComponentDivisor::is_zero)
    }

    pub fn add(&self, other: &MumfordDivisor) -> Result<MumfordDivisor> {
        self.combine(other, 1)
    }

    /// Componentwise difference with multiplicities cancelled.
    pub fn sub(&self, other: &MumfordDivisor) -> Result<MumfordDivisor> {
        self.combine(other, -1)
    }

    fn combine(&self, other: &MumfordDivisor, k: i64) -> Result<MumfordDivisor> {
        if self.parts.len() != other.parts.len() {
            return Err(Error::InvalidInput("divisors on different schemes".into()));
        }
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.add_scaled(b, k))
            .collect::<Result<_>>()?;
        Ok(MumfordDivisor { parts })
    }
}

impl fmt::Display for MumfordDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(" | "))
    }
}

fn parse_point(s: &GluedScheme, v: &PointValue) -> Result<ClosedPoint> {
    let field = s.field();
    match v {
        PointValue::Affine(a) => Ok(ClosedPoint::rational(field, field.reduce(*a))),
        PointValue::Named(n) if n == "inf" => Ok(ClosedPoint::Infinity),
        PointValue::Named(n) => Err(Error::InvalidInput(format!("unknown point '{n}'"))),
        PointValue::Poly(c) => ClosedPoint::finite(Poly::from_i64(field, c)),
    }
}

/// Support elements that contain a conductor locus of their host.
pub fn is_mumford(b: &MumfordDivisor, s: &GluedScheme) -> Vec<Diagnostic> {
    let field = s.field();
    let mut out = Vec::new();
    for cond in s.conductors() {
        for piece in &cond.pieces {
            let model = &s.components()[piece.component];
            if !model.avoids(field, &b.parts[piece.component], &piece.locus) {
                out.push(Diagnostic {
                    subject: format!("component {}", model.name),
                    message: format!(
                        "support contains conductor piece of {} ({})",
                        cond.name, piece.locus
                    ),
                });
            }
        }
    }
    out
}

fn require_mumford(b: &MumfordDivisor, s: &GluedScheme) -> Result<()> {
    let diags = is_mumford(b, s);
    if diags.is_empty() {
        Ok(())
    } else {
        Err(Error::NotMumford(diags))
    }
}

/// Component classes, one vector per component.
pub fn pullback_class(b: &MumfordDivisor, s: &GluedScheme) -> Result<Vec<Vec<i64>>> {
    require_mumford(b, s)?;
    Ok(pullback_unchecked(b, s))
}

fn pullback_unchecked(b: &MumfordDivisor, s: &GluedScheme) -> Vec<Vec<i64>> {
    s.components().iter().zip(&b.parts).map(|(c, d)| c.class_of(d)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    Pullback,
    Rho,
    Pt,
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Layer::Pullback => "pullback",
            Layer::Rho => "rho",
            Layer::Pt => "pt",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    PrincipalModD,
    Nontrivial(Layer),
}

impl Verdict {
    pub fn is_principal(self) -> bool {
        self == Verdict::PrincipalModD
    }

    pub fn layer(self) -> Option<Layer> {
        match self {
            Verdict::PrincipalModD => None,
            Verdict::Nontrivial(l) => Some(l),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::PrincipalModD => f.write_str("PRINCIPAL_MOD_D"),
            Verdict::Nontrivial(_) => f.write_str("NONTRIVIAL"),
        }
    }
}

/// The filtration layers of a divisor, each present only when the previous
/// one vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub pullback: Vec<Vec<i64>>,
    pub rho: Option<Vec<(String, QuotientClass)>>,
    pub pt: Option<Vec<i64>>,
    pub verdict: Verdict,
}

impl ClassReport {
    pub fn to_json(&self, s: &GluedScheme) -> serde_json::Value {
        json!({
            "verdict": self.verdict.to_string(),
            "layer": self.verdict.layer(),
            "pullback": self.pullback,
            "rho": self.rho.as_ref().map(|r| r
                .iter()
                .map(|(name, q)| json!({ "conductor": name, "class": q.to_json() }))
                .collect::<Vec<_>>()),
            "pt": self.pt,
            "pt_invariants": s.pt_group().invariants(),
        })
    }
}

/// Intermediate data of the classification, kept for witness synthesis.
pub(crate) struct Layers {
    pub pullback: Vec<Vec<i64>>,
    pub witnesses: Option<Vec<FormalFunction>>,
    pub rho: Option<Vec<QuotientClass>>,
    pub pt_vector: Option<Vec<i64>>,
    pub pt: Option<Vec<i64>>,
}

/// Restriction of each component function to each piece, per conductor.
pub(crate) fn restrictions(
    s: &GluedScheme,
    functions: &[FormalFunction],
) -> Result<Vec<Vec<RatFunc>>> {
    s.conductors()
        .iter()
        .map(|cond| {
            cond.pieces
                .iter()
                .map(|piece| {
                    let model = &s.components()[piece.component];
                    model.restrict_function(s.field(), &functions[piece.component], &piece.locus)
                })
                .collect()
        })
        .collect()
}

/// Gluing constants of each piece against the conductor's reference
/// function, as discrete logarithms. Requires trivial `rho`.
fn gluing_logs(s: &GluedScheme, restricted: &[Vec<RatFunc>]) -> Result<Vec<i64>> {
    let field = s.field();
    let mut v = Vec::new();
    for (cond, fs) in s.conductors().iter().zip(restricted) {
        let c = &cond.cover;
        let constants: Vec<Option<u64>> = match (c.reference(), c.kind()) {
            (ReferenceKind::Point, _) => fs.iter().map(RatFunc::constant_value).collect(),
            (ReferenceKind::Line, CoverKind::Split) => {
                let base = c.transport(0, &fs[0]);
                fs.iter()
                    .enumerate()
                    .map(|(a, f)| (&c.transport(a, f) / &base).constant_value())
                    .collect()
            }
            (ReferenceKind::Line, CoverKind::Cyclic) => vec![Some(1)],
        };
        for mu in constants {
            let mu = mu.ok_or_else(|| {
                Error::Internal(format!("non-constant gluing ratio on {}", cond.name))
            })?;
            v.push(discrete_log(field, mu)? as i64);
        }
    }
    Ok(v)
}

pub(crate) fn analyze(b: &MumfordDivisor, s: &GluedScheme) -> Result<Layers> {
    require_mumford(b, s)?;
    let pullback = pullback_unchecked(b, s);
    let mut layers = Layers {
        pullback,
        witnesses: None,
        rho: None,
        pt_vector: None,
        pt: None,
    };
    if layers.pullback.iter().flatten().any(|&x| x != 0) {
        return Ok(layers);
    }
    let field = s.field();
    let witnesses: Vec<FormalFunction> = s
        .components()
        .iter()
        .zip(&b.parts)
        .map(|(c, d)| c.witness(field, d))
        .collect::<Result<_>>()?;
    let restricted = restrictions(s, &witnesses).map_err(|e| {
        Error::Internal(format!("witness restriction failed on a Mumford divisor: {e}"))
    })?;
    let rho: Vec<QuotientClass> = s
        .conductors()
        .iter()
        .zip(&restricted)
        .map(|(cond, fs)| classify_tuple(fs, &cond.cover))
        .collect::<Result<_>>()?;
    let rho_trivial = rho.iter().all(QuotientClass::is_trivial);
    layers.witnesses = Some(witnesses);
    layers.rho = Some(rho);
    if !rho_trivial {
        return Ok(layers);
    }
    let v = gluing_logs(s, &restricted)?;
    layers.pt = Some(s.pt_group().class_in_cokernel(&v)?);
    layers.pt_vector = Some(v);
    Ok(layers)
}

fn report_from(s: &GluedScheme, layers: &Layers) -> ClassReport {
    let verdict = if layers.pullback.iter().flatten().any(|&x| x != 0) {
        Verdict::Nontrivial(Layer::Pullback)
    } else if !layers.rho.as_ref().is_some_and(|r| r.iter().all(QuotientClass::is_trivial)) {
        Verdict::Nontrivial(Layer::Rho)
    } else if layers.pt.as_ref().is_some_and(|pt| pt.iter().any(|&x| x != 0)) {
        Verdict::Nontrivial(Layer::Pt)
    } else {
        Verdict::PrincipalModD
    };
    ClassReport {
        pullback: layers.pullback.clone(),
        rho: layers.rho.as_ref().map(|r| {
            s.conductors().iter().map(|c| c.name.clone()).zip(r.iter().cloned()).collect()
        }),
        pt: layers.pt.clone(),
        verdict,
    }
}

pub fn classify(b: &MumfordDivisor, s: &GluedScheme) -> Result<ClassReport> {
    Ok(report_from(s, &analyze(b, s)?))
}

/// Per-conductor quotient classes of a divisor with trivial component
/// classes.
pub fn rho_class(b: &MumfordDivisor, s: &GluedScheme) -> Result<Vec<QuotientClass>> {
    let layers = analyze(b, s)?;
    layers
        .rho
        .ok_or_else(|| Error::NotComponentwiseTrivial(layers.pullback.concat()))
}

/// Coordinates of the gluing constants in the piecewise-trivial group.
pub fn pt_class(b: &MumfordDivisor, s: &GluedScheme) -> Result<Vec<i64>> {
    let layers = analyze(b, s)?;
    match (&layers.rho, layers.pt) {
        (None, _) => Err(Error::NotComponentwiseTrivial(layers.pullback.concat())),
        (Some(_), None) => Err(Error::InvalidInput(
            "conductor quotient classes are nontrivial; pt class undefined".into(),
        )),
        (Some(_), Some(pt)) => Ok(pt),
    }
}

#[derive(Clone, Debug)]
pub struct Equivalence {
    pub report: ClassReport,
    pub witness: Option<Witness>,
}

/// Decides whether `b - b2` is the divisor of a function that is a unit at
/// the generic points of the conductor; on success the returned witness
/// has passed [`check_witness`].
pub fn lineq_mod_d(b: &MumfordDivisor, b2: &MumfordDivisor, s: &GluedScheme) -> Result<Equivalence> {
    require_mumford(b, s)?;
    require_mumford(b2, s)?;
    let d = b.sub(b2)?;
    let layers = analyze(&d, s)?;
    let report = report_from(s, &layers);
    let witness = if report.verdict.is_principal() {
        let w = witness::synthesize(s, &layers)?;
        check_witness(&w, &d, s)
            .map_err(|e| Error::Internal(format!("synthesized witness rejected: {e}")))?;
        Some(w)
    } else {
        None
    };
    Ok(Equivalence { report, witness })
}

/// Coefficientwise minimum of the restrictions of `b` to the two sides of
/// a two-piece split conductor, on the reference line.
pub fn restrict_min(b: &MumfordDivisor, conductor: &str, s: &GluedScheme) -> Result<DivisorP1> {
    let j = s
        .conductor_index(conductor)
        .ok_or_else(|| Error::InvalidInput(format!("unknown conductor '{conductor}'")))?;
    let cond = &s.conductors()[j];
    let c = &cond.cover;
    if c.reference() != ReferenceKind::Line || c.kind() != CoverKind::Split || c.degree() != 2 {
        return Err(Error::Unsupported(format!(
            "min-restriction needs a two-piece split conductor; {} is not",
            cond.name
        )));
    }
    require_mumford(b, s)?;
    let sides: Vec<DivisorP1> = cond
        .pieces
        .iter()
        .map(|piece| {
            let model = &s.components()[piece.component];
            let on_piece = model.restrict_divisor(s.field(), &b.parts[piece.component], &piece.locus)?;
            Ok(piece.map.mobius.pushforward(&on_piece))
        })
        .collect::<Result<_>>()?;
    Ok(sides[0].min(&sides[1]))
}

/// A divisor of the given class on one component, avoiding the conductor.
pub fn sample_divisor(
    s: &GluedScheme,
    component: usize,
    class: &[i64],
    prescriptions: &[(RationalPoint, i64)],
    seed: u64,
) -> Result<MumfordDivisor> {
    let model = &s.components()[component];
    let avoid: Vec<_> = s.loci_on(component).into_iter().cloned().collect();
    let part = model.sample_divisor(s.field(), class, &avoid, prescriptions, seed)?;
    MumfordDivisor::zero(s).with_part(s, component, part)
}
