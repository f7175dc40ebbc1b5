use std::fmt;

use serde::{Deserialize, Serialize};

use super::Form;
use crate::error::{Error, Result};
use crate::ff_poly::{PrimeField, RatFunc};
use crate::proj_line::{BinaryForm, MobiusMap, RationalPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RulingFactor {
    X,
    Y,
}

/// Where a conductor piece sits inside its host component, together with
/// the coordinate `t = t/s` on the piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locus {
    /// A line in the plane, `(s, t) -> param * (s, t)`.
    PlaneLine { param: [[u64; 2]; 3] },
    /// `{factor = at} x P^1` in `P^1 x P^1`; the other factor is
    /// parameterized by `(s, t) -> param * (s, t)`.
    Ruling {
        factor: RulingFactor,
        at: [u64; 2],
        param: [[u64; 2]; 2],
    },
    /// A rational point on a line component.
    Point(RationalPoint),
}

impl Locus {
    pub fn plane_line(field: PrimeField, param: [[i64; 2]; 3]) -> Result<Locus> {
        let param = param.map(|r| r.map(|x| field.reduce(x)));
        let locus = Locus::PlaneLine { param };
        if locus.line_equation(field).is_none() {
            return Err(Error::InvalidInput(format!(
                "line parameterization {param:?} does not have rank 2"
            )));
        }
        Ok(locus)
    }

    pub fn ruling(
        field: PrimeField,
        factor: RulingFactor,
        at: [i64; 2],
        param: [[i64; 2]; 2],
    ) -> Result<Locus> {
        let at = at.map(|x| field.reduce(x));
        if at == [0, 0] {
            return Err(Error::InvalidInput("ruling point (0:0) is not a point".into()));
        }
        let param = param.map(|r| r.map(|x| field.reduce(x)));
        MobiusMap::new(field, param[0][0], param[0][1], param[1][0], param[1][1])?;
        Ok(Locus::Ruling { factor, at, param })
    }

    /// The parameterization of each ambient variable as a binary form.
    pub fn substitution(&self, field: PrimeField) -> Vec<BinaryForm> {
        let lin = |row: &[u64; 2]| BinaryForm::linear(field, row[0], row[1]);
        match self {
            Locus::PlaneLine { param } => param.iter().map(lin).collect(),
            Locus::Ruling { factor, at, param } => {
                let fixed = at.map(|c| BinaryForm::constant(field, c));
                let moving = param.each_ref().map(lin);
                match factor {
                    RulingFactor::X => [fixed, moving].concat(),
                    RulingFactor::Y => [moving, fixed].concat(),
                }
            }
            Locus::Point(_) => Vec::new(),
        }
    }

    /// The linear form cutting out a plane line, content-normalized.
    pub fn line_equation(&self, field: PrimeField) -> Option<Form> {
        let Locus::PlaneLine { param } = self else {
            return None;
        };
        let c = |i: usize, j: usize| {
            let (a, b) = (param[i][0], param[i][1]);
            let (x, y) = (param[j][0], param[j][1]);
            field.sub(field.mul(a, y), field.mul(b, x)) as i64
        };
        // Cross product of the two parameter columns.
        Form::linear(field, &[c(1, 2), c(2, 0), c(0, 1)]).ok()
    }

    pub fn same_subvariety(&self, other: &Locus, field: PrimeField) -> bool {
        match (self, other) {
            (Locus::PlaneLine { .. }, Locus::PlaneLine { .. }) => {
                self.line_equation(field) == other.line_equation(field)
            }
            (
                Locus::Ruling { factor: f1, at: a1, .. },
                Locus::Ruling { factor: f2, at: a2, .. },
            ) => {
                f1 == f2 && field.mul(a1[0], a2[1]) == field.mul(a1[1], a2[0])
            }
            (Locus::Point(a), Locus::Point(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::PlaneLine { param } => write!(f, "line {param:?}"),
            Locus::Ruling { factor, at, .. } => {
                let n = if *factor == RulingFactor::X { "x" } else { "y" };
                write!(f, "ruling {n} = ({}:{})", at[0], at[1])
            }
            Locus::Point(p) => write!(f, "point {p}"),
        }
    }
}

/// The map from a piece to its conductor's reference line,
/// `t -> mobius(t^power)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverMap {
    pub mobius: MobiusMap,
    pub power: u64,
}

impl CoverMap {
    pub fn identity(field: PrimeField) -> Self {
        CoverMap {
            mobius: MobiusMap::identity(field),
            power: 1,
        }
    }

    /// `g ∘ cover` for a function `g` on the reference.
    pub fn pullback(&self, g: &RatFunc) -> RatFunc {
        self.mobius.pullback(g).compose_power(self.power as usize)
    }
}

/// A conductor piece: a locus on a host component with its cover map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductorEmbedding {
    pub component: usize,
    pub locus: Locus,
    pub map: CoverMap,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_equation_of_coordinate_line() {
        let f = PrimeField::new(5).unwrap();
        let l = Locus::plane_line(f, [[0, 0], [1, 0], [0, 1]]).unwrap();
        assert_eq!(l.line_equation(f), Some(Form::linear(f, &[1, 0, 0]).unwrap()));
        let l2 = Locus::plane_line(f, [[0, 0], [2, 1], [3, 1]]).unwrap();
        assert!(l.same_subvariety(&l2, f));
        assert!(Locus::plane_line(f, [[0, 0], [1, 2], [2, 4]]).is_err());
    }

    #[test]
    fn rulings_compare_projectively() {
        let f = PrimeField::new(7).unwrap();
        let id = [[1, 0], [0, 1]];
        let a = Locus::ruling(f, RulingFactor::X, [1, 2], id).unwrap();
        let b = Locus::ruling(f, RulingFactor::X, [3, 6], id).unwrap();
        let c = Locus::ruling(f, RulingFactor::Y, [1, 2], id).unwrap();
        assert!(a.same_subvariety(&b, f));
        assert!(!a.same_subvariety(&c, f));
        assert!(Locus::ruling(f, RulingFactor::X, [0, 7], id).is_err());
    }
}
