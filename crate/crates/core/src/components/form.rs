use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff_poly::PrimeField;
use crate::proj_line::BinaryForm;

/// A nonzero multivariate form with coefficients in `F_p`, content-normalized
/// so the coefficient of its largest monomial is 1.
///
/// Monomials compare lexicographically on the exponent vector, which for
/// homogeneous forms is graded lex with `x0 > x1 > ...`. Terms are kept in
/// descending monomial order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    terms: Vec<(Vec<u32>, u64)>,
}

impl Form {
    pub fn new(
        field: PrimeField,
        terms: impl IntoIterator<Item = (Vec<u32>, i64)>,
    ) -> Result<Form> {
        let mut acc: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        let mut nvars = None;
        for (exps, c) in terms {
            if *nvars.get_or_insert(exps.len()) != exps.len() {
                return Err(Error::InvalidInput(
                    "form terms have different numbers of variables".into(),
                ));
            }
            let entry = acc.entry(exps).or_insert(0);
            *entry = field.add(*entry, field.reduce(c));
        }
        let mut terms: Vec<(Vec<u32>, u64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        if terms.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        terms.reverse();
        let inv = field.inv(terms[0].1);
        for (_, c) in &mut terms {
            *c = field.mul(*c, inv);
        }
        Ok(Form { terms })
    }

    /// `sum_i coeffs[i] * x_i`.
    pub fn linear(field: PrimeField, coeffs: &[i64]) -> Result<Form> {
        let n = coeffs.len();
        Form::new(
            field,
            coeffs.iter().enumerate().map(|(i, &c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c)
            }),
        )
    }

    pub fn nvars(&self) -> usize {
        self.terms[0].0.len()
    }

    pub fn terms(&self) -> &[(Vec<u32>, u64)] {
        &self.terms
    }

    /// Total degree of the exponents in `vars`, if every monomial agrees.
    pub fn partial_degree(&self, vars: std::ops::Range<usize>) -> Option<u32> {
        let mut degs = self.terms.iter().map(|(e, _)| e[vars.clone()].iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn degree(&self) -> Option<u32> {
        self.partial_degree(0..self.nvars())
    }

    /// The form evaluated at binary forms, one per variable. All monomials
    /// must land in the same degree.
    pub fn substitute(&self, field: PrimeField, vars: &[BinaryForm]) -> BinaryForm {
        assert_eq!(vars.len(), self.nvars());
        let mut acc: Option<BinaryForm> = None;
        for (exps, c) in &self.terms {
            let mut term = BinaryForm::constant(field, *c);
            for (v, &e) in vars.iter().zip(exps) {
                if e > 0 {
                    term = term.mul(&v.pow(e));
                }
            }
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.expect("forms are nonzero")
    }

    pub fn eval(&self, field: PrimeField, point: &[u64]) -> u64 {
        self.terms.iter().fold(0, |acc, (exps, c)| {
            let mono = exps
                .iter()
                .zip(point)
                .fold(*c, |m, (&e, &x)| field.mul(m, field.pow(x, e as u64)));
            field.add(acc, mono)
        })
    }
}

fn var_names(n: usize) -> Vec<String> {
    if n == 4 {
        ["x0", "x1", "y0", "y1"].map(String::from).to_vec()
    } else {
        (0..n).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = var_names(self.nvars());
        for (k, (exps, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = exps
                .iter()
                .zip(&names)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
            match (vars.is_empty(), *c) {
                (true, c) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{}", vars.join("*"))?,
                (false, c) => write!(f, "{c}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form({self})")
    }
}

impl Serialize for Form {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_is_canonical() {
        let f = PrimeField::new(5).unwrap();
        let a = Form::new(f, [(vec![0, 1, 0], 2), (vec![1, 0, 0], 3)]).unwrap();
        let b = Form::new(f, [(vec![1, 0, 0], 1), (vec![0, 1, 0], 4)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.terms()[0], (vec![1, 0, 0], 1));
        assert_eq!(a.to_string(), "x0 + 4*x1");
    }

    #[test]
    fn zero_is_rejected() {
        let f = PrimeField::new(5).unwrap();
        assert!(Form::new(f, [(vec![1, 0, 0], 5)]).is_err());
    }

    #[test]
    fn degrees() {
        let f = PrimeField::new(7).unwrap();
        let q = Form::new(f, [(vec![1, 0, 1, 0], 1), (vec![0, 1, 0, 1], 1)]).unwrap();
        assert_eq!(q.partial_degree(0..2), Some(1));
        assert_eq!(q.partial_degree(2..4), Some(1));
        let bad = Form::new(f, [(vec![2, 0, 0], 1), (vec![1, 0, 0], 1)]).unwrap();
        assert_eq!(bad.degree(), None);
    }
}
