use serde::Serialize;

use super::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// `coker(M ⊗ Z/n) = (Z/n)^r / im(M)`, presented through the Smith form of
/// `[M | n I]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianPresentation {
    modulus: i64,
    generators: usize,
    relations: usize,
    u: IntMatrix,
    v: IntMatrix,
    diagonal: Vec<i64>,
}

#[derive(Serialize)]
struct Shape<'a> {
    invariants: &'a [i64],
    order: u128,
}

impl FiniteAbelianPresentation {
    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    /// Number of rows of `M`, i.e. the rank of the ambient `(Z/n)^r`.
    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Number of columns of `M`.
    pub fn relations(&self) -> usize {
        self.relations
    }

    /// Invariant factors greater than one, each dividing the next.
    pub fn invariants(&self) -> Vec<i64> {
        self.diagonal.iter().copied().filter(|&s| s > 1).collect()
    }

    pub fn order(&self) -> u128 {
        self.diagonal.iter().map(|&s| s as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.diagonal.iter().all(|&s| s == 1)
    }

    /// Coordinates of the class of `v` with respect to the invariant factors.
    pub fn class_in_cokernel(&self, v: &[i64]) -> Result<Vec<i64>> {
        let y = self.transformed(v)?;
        Ok(y.iter()
            .zip(&self.diagonal)
            .filter(|(_, &s)| s > 1)
            .map(|(&yi, &s)| yi.rem_euclid(s))
            .collect())
    }

    pub fn is_zero_class(&self, v: &[i64]) -> Result<bool> {
        Ok(self.class_in_cokernel(v)?.iter().all(|&c| c == 0))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let inv = self.invariants();
        serde_json::to_value(Shape {
            invariants: &inv,
            order: self.order(),
        })
        .expect("serializable")
    }

    fn transformed(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.generators {
            return Err(Error::InvalidInput(format!(
                "vector of length {} for a cokernel on {} generators",
                v.len(),
                self.generators
            )));
        }
        let reduced: Vec<i64> = v.iter().map(|x| x.rem_euclid(self.modulus)).collect();
        Ok(self.u.mul_vec(&reduced))
    }
}

pub fn cokernel_mod(m: &IntMatrix, n: i64) -> Result<FiniteAbelianPresentation> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("cokernel modulus {n} must be positive")));
    }
    let mut n_identity = IntMatrix::identity(m.rows());
    for i in 0..m.rows() {
        n_identity[(i, i)] = n;
    }
    let snf = smith_normal_form(&m.hconcat(&n_identity));
    let diagonal = snf.diagonal();
    debug_assert_eq!(diagonal.len(), m.rows());
    debug_assert!(diagonal.iter().all(|&s| s > 0 && n % s == 0));
    Ok(FiniteAbelianPresentation {
        modulus: n,
        generators: m.rows(),
        relations: m.cols(),
        u: snf.u,
        v: snf.v,
        diagonal,
    })
}

/// Some `x` with `M x ≡ v (mod n)`, entries in `[0, n)`; `None` when `v` is
/// not in the image.
pub fn lift_solution(pres: &FiniteAbelianPresentation, v: &[i64]) -> Result<Option<Vec<i64>>> {
    let y = pres.transformed(v)?;
    let width = pres.relations + pres.generators;
    let mut z = vec![0i64; width];
    for (i, (&yi, &s)) in y.iter().zip(&pres.diagonal).enumerate() {
        if yi % s != 0 {
            return Ok(None);
        }
        z[i] = yi / s;
    }
    let x = pres.v.mul_vec(&z);
    Ok(Some(
        x[..pres.relations]
            .iter()
            .map(|xi| xi.rem_euclid(pres.modulus))
            .collect(),
    ))
}
