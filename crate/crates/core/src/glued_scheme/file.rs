//! JSON description of a glued scheme.
//!
//! ```json
//! {
//!   "name": "two-planes",
//!   "p": 5,
//!   "components": [{"name": "P1", "kind": "plane"}, {"name": "P2", "kind": "plane"}],
//!   "conductors": [{
//!     "name": "D", "reference": "line", "cover": "split", "degree": 2,
//!     "pieces": [
//!       {"component": "P1", "locus": {"line": [[0, 0], [1, 0], [0, 1]]}},
//!       {"component": "P2", "locus": {"line": [[0, 0], [1, 0], [0, 1]]},
//!        "map": {"mobius": [[1, 0], [0, 1]]}}
//!     ]
//!   }]
//! }
//! ```
//!
//! Loci: `{"line": 3x2 matrix}` on planes, `{"ruling": {"factor": "x"|"y",
//! "at": [a, b], "param"?: 2x2 matrix}}` on quadrics, `{"point": a | "inf"}`
//! on lines. Maps: `{"mobius"?: 2x2 matrix, "power"?: d}`; the power
//! defaults to the cover degree for cyclic covers and to 1 otherwise.

use serde::{Deserialize, Serialize};

use crate::components::{ComponentKind, RulingFactor};
use crate::covers::{CoverKind, ReferenceKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub p: u64,
    pub components: Vec<ComponentSpec>,
    #[serde(default)]
    pub conductors: Vec<ConductorSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub name: String,
    pub kind: ComponentKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConductorSpec {
    pub name: String,
    pub reference: ReferenceKind,
    pub cover: CoverKind,
    pub degree: u64,
    pub pieces: Vec<PieceSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub component: String,
    pub locus: LocusSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum LocusSpec {
    Line([[i64; 2]; 3]),
    Ruling(RulingSpec),
    Point(PointSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RulingSpec {
    pub factor: RulingFactor,
    pub at: [i64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<[[i64; 2]; 2]>,
}

/// A rational point: an affine coordinate or the string `"inf"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Affine(i64),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mobius: Option<[[i64; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<u64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"p": 5, "components": [], "extra": 1}"#;
        assert!(serde_json::from_str::<SchemeFile>(text).is_err());
        let text = r#"{"p": 5, "components": [{"name": "A", "kind": "plane", "colour": 1}]}"#;
        assert!(serde_json::from_str::<SchemeFile>(text).is_err());
    }

    #[test]
    fn loci_parse() {
        let l: LocusSpec = serde_json::from_str(r#"{"point": "inf"}"#).unwrap();
        assert_eq!(l, LocusSpec::Point(PointSpec::Named("inf".into())));
        let l: LocusSpec = serde_json::from_str(r#"{"point": 3}"#).unwrap();
        assert_eq!(l, LocusSpec::Point(PointSpec::Affine(3)));
        let l: LocusSpec =
            serde_json::from_str(r#"{"ruling": {"factor": "y", "at": [1, 0]}}"#).unwrap();
        assert!(matches!(l, LocusSpec::Ruling(RulingSpec { factor: RulingFactor::Y, .. })));
    }
}
