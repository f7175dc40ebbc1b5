//! JSON divisor files.
//!
//! ```json
//! {"scheme": "two-planes",
//!  "support": [
//!    {"component": "P1", "form": [[[1, 0, 0], 1], [[0, 1, 0], 2]], "mult": 1},
//!    {"component": "L0", "point": 3, "mult": -1}
//!  ]}
//! ```
//!
//! Forms are lists of `[exponents, coefficient]`; quadric exponents are
//! ordered `x0, x1, y0, y1`. Points are an affine coordinate, `"inf"`, or
//! the coefficient list (lowest degree first) of a monic irreducible
//! polynomial.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorFile {
    pub scheme: String,
    pub support: Vec<SupportSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportSpec {
    pub component: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<(Vec<u32>, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<PointValue>,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointValue {
    Affine(i64),
    Named(String),
    Poly(Vec<i64>),
}
