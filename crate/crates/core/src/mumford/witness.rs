use serde::Serialize;
use serde_json::json;

use super::{analyze, report_from, restrictions, Layers, MumfordDivisor};
use crate::abelian::lift_solution;
use crate::components::{ComponentDivisor, FormalFunction};
use crate::covers::{brute_force_class_equal, BruteForceOutcome, CoverKind, ReferenceKind};
use crate::error::{Error, Result};
use crate::ff_poly::RatFunc;
use crate::glued_scheme::GluedScheme;

/// A glued function: one function per component, each already multiplied
/// by its gauge constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub functions: Vec<FormalFunction>,
    pub gauges: Vec<u64>,
}

impl Witness {
    pub fn to_json(&self, s: &GluedScheme) -> serde_json::Value {
        let parts: Vec<_> = s
            .components()
            .iter()
            .zip(&self.functions)
            .zip(&self.gauges)
            .map(|((c, f), g)| json!({ "component": c.name, "gauge": g, "function": f.to_string() }))
            .collect();
        json!(parts)
    }
}

pub(crate) fn synthesize(s: &GluedScheme, layers: &Layers) -> Result<Witness> {
    let (Some(base), Some(v)) = (&layers.witnesses, &layers.pt_vector) else {
        return Err(Error::Internal("witness requested for a nontrivial class".into()));
    };
    let neg: Vec<i64> = v.iter().map(|x| -x).collect();
    let x = lift_solution(s.pt_group(), &neg)?
        .ok_or_else(|| Error::Internal("gluing constants outside the image of the pt matrix".into()))?;
    let field = s.field();
    let gauges: Vec<u64> = x[..base.len()].iter().map(|&w| field.gen_pow(w)).collect();
    Ok(gauged(s, base, &gauges))
}

fn gauged(s: &GluedScheme, base: &[FormalFunction], gauges: &[u64]) -> Witness {
    Witness {
        functions: base.iter().zip(gauges).map(|(f, &g)| f.scale(s.field(), g)).collect(),
        gauges: gauges.to_vec(),
    }
}

/// Verifies from first principles that `w` glues to a function with
/// divisor `d` that is a unit along the conductor: component divisors
/// match, and on each conductor the restrictions come from one function
/// on the reference.
pub fn check_witness(
    w: &Witness,
    d: &MumfordDivisor,
    s: &GluedScheme,
) -> std::result::Result<(), String> {
    if w.functions.len() != s.components().len() {
        return Err("wrong number of component functions".into());
    }
    for ((f, part), c) in w.functions.iter().zip(d.parts()).zip(s.components()) {
        if !same_divisor(&f.divisor(), part) {
            return Err(format!("divisor mismatch on {}", c.name));
        }
    }
    let restricted = restrictions(s, &w.functions).map_err(|e| e.to_string())?;
    for (cond, fs) in s.conductors().iter().zip(&restricted) {
        let c = &cond.cover;
        let ok = match (c.reference(), c.kind()) {
            (ReferenceKind::Point, _) => {
                let values: Vec<_> = fs.iter().map(RatFunc::constant_value).collect();
                values.iter().all(|v| v.is_some() && *v == values[0])
            }
            (ReferenceKind::Line, CoverKind::Split) => {
                let moved: Vec<RatFunc> = (0..fs.len()).map(|a| c.transport(a, &fs[a])).collect();
                moved.iter().all(|h| *h == moved[0])
            }
            (ReferenceKind::Line, CoverKind::Cyclic) => {
                let zeta = c.zeta().map_err(|e| e.to_string())?;
                fs[0].scale_argument(zeta) == fs[0]
            }
        };
        if !ok {
            return Err(format!("restrictions do not glue along {}", cond.name));
        }
    }
    Ok(())
}

fn same_divisor(a: &ComponentDivisor, b: &ComponentDivisor) -> bool {
    match (a, b) {
        (ComponentDivisor::Forms(x), ComponentDivisor::Forms(y)) => {
            x.iter().filter(|(_, &k)| k != 0).eq(y.iter().filter(|(_, &k)| k != 0))
        }
        (ComponentDivisor::Points(x), ComponentDivisor::Points(y)) => x == y,
        _ => false,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConductorSearch {
    pub conductor: String,
    #[serde(flatten)]
    pub outcome: BruteForceOutcome,
}

/// Result of the exhaustive oracle for `B ~ B'`.
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    /// Some gauge of the component witnesses passed [`check_witness`].
    pub found: bool,
    pub gauges_tried: u64,
    pub gauges: Option<Vec<u64>>,
    /// Per-conductor bounded search for a reference function bridging the
    /// restrictions; empty when component classes are nonzero.
    pub brute_force: Vec<ConductorSearch>,
    pub lineq_verdict: String,
    /// The gauge search matches the verdict, and no bounded search finds a
    /// bridge where the quotient class was declared nontrivial.
    pub agrees: bool,
}

const GAUGE_LIMIT: u64 = 1 << 20;

/// Searches every gauge of the component witnesses (the only freedom in a
/// glued function with prescribed divisor) and runs the bounded
/// reference-function search on each conductor.
pub fn witness_search(
    b: &MumfordDivisor,
    b2: &MumfordDivisor,
    s: &GluedScheme,
    height: usize,
) -> Result<OracleReport> {
    let d = b.sub(b2)?;
    let layers = analyze(&d, s)?;
    let verdict = report_from(s, &layers).verdict;
    let Some(base) = &layers.witnesses else {
        return Ok(OracleReport {
            found: false,
            gauges_tried: 0,
            gauges: None,
            brute_force: Vec::new(),
            lineq_verdict: verdict.to_string(),
            agrees: !verdict.is_principal(),
        });
    };
    let field = s.field();
    let n = base.len();
    let units: Vec<u64> = field.units().collect();
    let total = (units.len() as u64)
        .checked_pow(n.saturating_sub(1) as u32)
        .filter(|&t| t <= GAUGE_LIMIT)
        .ok_or_else(|| Error::Unsupported("too many gauges for exhaustive search".into()))?;

    let mut found = None;
    let mut tried = 0;
    let mut idx = vec![0usize; n];
    'outer: loop {
        let gauges: Vec<u64> = idx.iter().map(|&i| units[i]).collect();
        tried += 1;
        if check_witness(&gauged(s, base, &gauges), &d, s).is_ok() {
            found = Some(gauges);
            break;
        }
        // Odometer over every coordinate except the first.
        let mut k = 1;
        loop {
            if k >= n {
                break 'outer;
            }
            idx[k] += 1;
            if idx[k] < units.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
    debug_assert!(tried <= total);

    let restricted = restrictions(s, base)?;
    let mut brute_force = Vec::new();
    let mut bridged_nontrivial = false;
    for ((cond, fs), q) in s.conductors().iter().zip(&restricted).zip(layers.rho.iter().flatten()) {
        let ones = vec![RatFunc::one(field); fs.len()];
        let outcome = brute_force_class_equal(fs, &ones, &cond.cover, height)?;
        bridged_nontrivial |= outcome.equal && !q.is_trivial();
        brute_force.push(ConductorSearch {
            conductor: cond.name.clone(),
            outcome,
        });
    }
    Ok(OracleReport {
        found: found.is_some(),
        gauges_tried: tried,
        agrees: found.is_some() == verdict.is_principal() && !bridged_nontrivial,
        gauges: found,
        brute_force,
        lineq_verdict: verdict.to_string(),
    })
}
