//! A proper seminormal scheme as combinatorial gluing data: the components
//! of its normalization and, for each conductor, a cover of a reference
//! curve (or point) by pieces lying on those components.

mod file;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use serde::Serialize;

pub use file::{ComponentSpec, ConductorSpec, LocusSpec, MapSpec, PieceSpec, PointSpec, RulingSpec, SchemeFile};

use crate::abelian::{cokernel_mod, FiniteAbelianPresentation, IntMatrix};
use crate::components::{ComponentKind, ComponentModel, ConductorEmbedding, CoverMap, Locus};
use crate::covers::{CoverDescriptor, CoverKind, QuotientGroupShape, ReferenceKind};
use crate::error::{Error, Result};
use crate::ff_poly::PrimeField;
use crate::proj_line::{MobiusMap, RationalPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub subject: String,
    pub message: String,
}

impl Diagnostic {
    fn new(subject: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            subject: subject.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.message)
    }
}

#[derive(Clone, Debug)]
pub struct Conductor {
    pub name: String,
    pub cover: CoverDescriptor,
    pub pieces: Vec<ConductorEmbedding>,
}

/// A validated glued scheme. Immutable; the piecewise-trivial group is
/// computed once at load.
#[derive(Clone, Debug)]
pub struct GluedScheme {
    name: Option<String>,
    field: PrimeField,
    components: Vec<ComponentModel>,
    conductors: Vec<Conductor>,
    pt_matrix: IntMatrix,
    pt: FiniteAbelianPresentation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualEdge {
    pub conductor: String,
    pub ends: [usize; 2],
}

/// Vertices are components, edges are two-piece conductors; conductors
/// with any other number of pieces are listed as markers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualComplex {
    pub vertices: Vec<String>,
    pub edges: Vec<DualEdge>,
    pub markers: Vec<String>,
    pub connected_components: usize,
    pub b1: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentClassGroup {
    pub name: String,
    pub kind: ComponentKind,
    pub class_group: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackLayer {
    pub rank: usize,
    pub components: Vec<ComponentClassGroup>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientLayer {
    pub conductor: String,
    pub reference: ReferenceKind,
    pub cover: CoverKind,
    pub degree: u64,
    pub shape: QuotientGroupShape,
}

#[derive(Clone, Debug, Serialize)]
pub struct PtLayer {
    pub invariants: Vec<i64>,
    pub order: u128,
    pub trivial: bool,
}

/// The three graded pieces of the class group filtration.
#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub scheme: Option<String>,
    pub p: u64,
    pub dimension: u8,
    pub pullback: PullbackLayer,
    pub quotients: Vec<QuotientLayer>,
    pub free_quotients: usize,
    pub pt: PtLayer,
    pub dual_complex: DualComplex,
}

fn parse_point(field: PrimeField, spec: &PointSpec) -> Option<RationalPoint> {
    match spec {
        PointSpec::Affine(a) => Some(RationalPoint::Affine(field.reduce(*a))),
        PointSpec::Named(s) if s == "inf" => Some(RationalPoint::Infinity),
        PointSpec::Named(_) => None,
    }
}

fn locus_fits(kind: ComponentKind, locus: &LocusSpec) -> bool {
    matches!(
        (kind, locus),
        (ComponentKind::Plane, LocusSpec::Line(_))
            | (ComponentKind::Quadric, LocusSpec::Ruling(_))
            | (ComponentKind::Line, LocusSpec::Point(_))
    )
}

fn build_locus(field: PrimeField, spec: &LocusSpec) -> std::result::Result<Locus, String> {
    match spec {
        LocusSpec::Line(m) => Locus::plane_line(field, *m).map_err(|e| e.to_string()),
        LocusSpec::Ruling(r) => {
            Locus::ruling(field, r.factor, r.at, r.param.unwrap_or([[1, 0], [0, 1]]))
                .map_err(|e| e.to_string())
        }
        LocusSpec::Point(p) => parse_point(field, p)
            .map(Locus::Point)
            .ok_or_else(|| format!("point {p:?} is neither an integer nor \"inf\"")),
    }
}

fn build_map(
    field: PrimeField,
    conductor: &ConductorSpec,
    spec: Option<&MapSpec>,
) -> std::result::Result<CoverMap, String> {
    if conductor.reference == ReferenceKind::Point {
        if spec.is_some() {
            return Err("pieces over a point take no map".into());
        }
        return Ok(CoverMap::identity(field));
    }
    let default_power = match conductor.cover {
        CoverKind::Cyclic => conductor.degree,
        CoverKind::Split => 1,
    };
    let mobius = match spec.and_then(|m| m.mobius) {
        Some(m) => MobiusMap::from_i64(field, m).map_err(|e| e.to_string())?,
        None => MobiusMap::identity(field),
    };
    Ok(CoverMap {
        mobius,
        power: spec.and_then(|m| m.power).unwrap_or(default_power),
    })
}

/// Builds the scheme, collecting every structural violation.
fn build(file: &SchemeFile) -> std::result::Result<GluedScheme, Vec<Diagnostic>> {
    let field = PrimeField::new(file.p).map_err(|e| vec![Diagnostic::new("p", e.to_string())])?;
    let mut diags = Vec::new();

    if file.components.is_empty() {
        diags.push(Diagnostic::new("scheme", "no components"));
    }
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, c) in file.components.iter().enumerate() {
        if index.insert(c.name.as_str(), i).is_some() {
            diags.push(Diagnostic::new(format!("component {}", c.name), "duplicate name"));
        }
    }
    let lines = file.components.iter().filter(|c| c.kind == ComponentKind::Line).count();
    if lines > 0 && lines < file.components.len() {
        diags.push(Diagnostic::new(
            "scheme",
            "not pure dimensional: line components mixed with surfaces",
        ));
    }

    let mut names = BTreeSet::new();
    let mut conductors = Vec::new();
    let mut loci_by_component: Vec<Vec<(String, Locus)>> = vec![Vec::new(); file.components.len()];
    for cond in &file.conductors {
        let subject = format!("conductor {}", cond.name);
        let before = diags.len();
        if !names.insert(cond.name.as_str()) {
            diags.push(Diagnostic::new(&subject, "duplicate name"));
        }
        if cond.pieces.is_empty() {
            diags.push(Diagnostic::new(&subject, "no pieces"));
        }
        let mut pieces = Vec::new();
        for piece in &cond.pieces {
            let Some(&host) = index.get(piece.component.as_str()) else {
                diags.push(Diagnostic::new(
                    &subject,
                    format!("unknown component '{}'", piece.component),
                ));
                continue;
            };
            let kind = file.components[host].kind;
            let host_fits = match cond.reference {
                ReferenceKind::Point => kind == ComponentKind::Line,
                ReferenceKind::Line => kind != ComponentKind::Line,
            };
            if !host_fits {
                diags.push(Diagnostic::new(
                    &subject,
                    format!(
                        "dimension mismatch: {} component '{}' on a {} reference",
                        kind,
                        piece.component,
                        if cond.reference == ReferenceKind::Point { "point" } else { "line" }
                    ),
                ));
                continue;
            }
            if !locus_fits(kind, &piece.locus) {
                diags.push(Diagnostic::new(
                    &subject,
                    format!("locus kind does not fit {} component '{}'", kind, piece.component),
                ));
                continue;
            }
            let locus = match build_locus(field, &piece.locus) {
                Ok(l) => l,
                Err(msg) => {
                    diags.push(Diagnostic::new(&subject, msg));
                    continue;
                }
            };
            let map = match build_map(field, cond, piece.map.as_ref()) {
                Ok(m) => m,
                Err(msg) => {
                    diags.push(Diagnostic::new(&subject, msg));
                    continue;
                }
            };
            pieces.push(ConductorEmbedding {
                component: host,
                locus,
                map,
            });
        }
        if diags.len() > before {
            continue;
        }
        let maps = pieces.iter().map(|p| p.map).collect();
        match CoverDescriptor::new(field, cond.reference, cond.cover, cond.degree, maps) {
            Ok(cover) => {
                for piece in &pieces {
                    loci_by_component[piece.component].push((cond.name.clone(), piece.locus.clone()));
                }
                conductors.push(Conductor {
                    name: cond.name.clone(),
                    cover,
                    pieces,
                });
            }
            Err(e) => diags.push(Diagnostic::new(&subject, e.to_string())),
        }
    }

    for (i, loci) in loci_by_component.iter().enumerate() {
        for (a, (na, la)) in loci.iter().enumerate() {
            for (nb, lb) in &loci[a + 1..] {
                if la.same_subvariety(lb, field) {
                    diags.push(Diagnostic::new(
                        format!("component {}", file.components[i].name),
                        format!("conductors {na} and {nb} share the locus {la}"),
                    ));
                }
            }
        }
    }

    if !diags.is_empty() {
        return Err(diags);
    }
    let components = file
        .components
        .iter()
        .map(|c| ComponentModel::new(c.name.clone(), c.kind))
        .collect();
    GluedScheme::assemble(file.name.clone(), field, components, conductors)
        .map_err(|e| vec![Diagnostic::new("scheme", e.to_string())])
}

/// Every structural violation in a scheme description; empty when valid.
pub fn validate(file: &SchemeFile) -> Vec<Diagnostic> {
    build(file).err().unwrap_or_default()
}

impl GluedScheme {
    pub fn from_file(file: &SchemeFile) -> Result<GluedScheme> {
        build(file).map_err(Error::InvalidScheme)
    }

    pub fn from_json(text: &str) -> Result<GluedScheme> {
        GluedScheme::from_file(&serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<GluedScheme> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        GluedScheme::from_json(&text)
    }

    fn assemble(
        name: Option<String>,
        field: PrimeField,
        components: Vec<ComponentModel>,
        conductors: Vec<Conductor>,
    ) -> Result<GluedScheme> {
        let rows: usize = conductors.iter().map(|c| c.pieces.len()).sum();
        let mut m = IntMatrix::zeros(rows, components.len() + conductors.len());
        let mut row = 0;
        for (j, cond) in conductors.iter().enumerate() {
            for piece in &cond.pieces {
                m[(row, piece.component)] += 1;
                m[(row, components.len() + j)] = 1;
                row += 1;
            }
        }
        let pt = cokernel_mod(&m, field.unit_order() as i64)?;
        let scheme = GluedScheme {
            name,
            field,
            components,
            conductors,
            pt_matrix: m,
            pt,
        };
        let all_edges = scheme
            .conductors
            .iter()
            .all(|c| c.cover.kind() == CoverKind::Split && c.pieces.len() == 2);
        if all_edges {
            let b1 = scheme.dual_complex().b1 as u32;
            let expected = (field.unit_order() as u128).pow(b1);
            if scheme.pt.order() != expected {
                return Err(Error::Internal(format!(
                    "piecewise-trivial group has order {} but (p-1)^b1 = {expected}",
                    scheme.pt.order()
                )));
            }
        }
        Ok(scheme)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn components(&self) -> &[ComponentModel] {
        &self.components
    }

    pub fn conductors(&self) -> &[Conductor] {
        &self.conductors
    }

    pub fn component_index(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| c.name == name)
    }

    pub fn conductor_index(&self, name: &str) -> Option<usize> {
        self.conductors.iter().position(|c| c.name == name)
    }

    /// 1 for curves glued at points, 2 for surfaces glued along lines.
    pub fn dimension(&self) -> u8 {
        if self.components.iter().all(|c| c.kind == ComponentKind::Line) {
            1
        } else {
            2
        }
    }

    /// Conductor loci hosted on a component.
    pub fn loci_on(&self, component: usize) -> Vec<&Locus> {
        self.conductors
            .iter()
            .flat_map(|c| &c.pieces)
            .filter(|p| p.component == component)
            .map(|p| &p.locus)
            .collect()
    }

    /// Incidence of components and conductors on conductor pieces; rows are
    /// pieces in declaration order, columns are components then conductors.
    pub fn pt_matrix(&self) -> &IntMatrix {
        &self.pt_matrix
    }

    pub fn pt_group(&self) -> &FiniteAbelianPresentation {
        &self.pt
    }

    pub fn dual_complex(&self) -> DualComplex {
        let n = self.components.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut edges = Vec::new();
        let mut markers = Vec::new();
        for c in &self.conductors {
            if c.pieces.len() == 2 {
                let ends = [c.pieces[0].component, c.pieces[1].component];
                let (a, b) = (find(&mut parent, ends[0]), find(&mut parent, ends[1]));
                parent[a] = b;
                edges.push(DualEdge {
                    conductor: c.name.clone(),
                    ends,
                });
            } else {
                markers.push(c.name.clone());
            }
        }
        let connected = (0..n).filter(|&i| find(&mut parent, i) == i).count();
        DualComplex {
            vertices: self.components.iter().map(|c| c.name.clone()).collect(),
            b1: edges.len() + connected - n,
            edges,
            markers,
            connected_components: connected,
        }
    }

    pub fn group_report(&self) -> GroupReport {
        let components: Vec<ComponentClassGroup> = self
            .components
            .iter()
            .map(|c| ComponentClassGroup {
                name: c.name.clone(),
                kind: c.kind,
                class_group: if c.kind.class_rank() == 1 { "Z".into() } else { "Z^2".into() },
            })
            .collect();
        let quotients: Vec<QuotientLayer> = self
            .conductors
            .iter()
            .map(|c| QuotientLayer {
                conductor: c.name.clone(),
                reference: c.cover.reference(),
                cover: c.cover.kind(),
                degree: c.cover.degree(),
                shape: c.cover.shape(),
            })
            .collect();
        GroupReport {
            scheme: self.name.clone(),
            p: self.field.p(),
            dimension: self.dimension(),
            pullback: PullbackLayer {
                rank: self.components.iter().map(|c| c.kind.class_rank()).sum(),
                components,
            },
            free_quotients: quotients.iter().filter(|q| q.shape.free_basis.is_some()).count(),
            quotients,
            pt: PtLayer {
                invariants: self.pt.invariants(),
                order: self.pt.order(),
                trivial: self.pt.is_trivial(),
            },
            dual_complex: self.dual_complex(),
        }
    }
}
