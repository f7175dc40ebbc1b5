use super::{ComponentDivisor, ComponentKind, ComponentModel, Form, Locus, RulingFactor};
use crate::error::{Error, Result};
use crate::ff_poly::PrimeField;
use crate::proj_line::{DivisorP1, RationalPoint};

impl ComponentModel {
    /// A divisor of class `target` whose support avoids every locus in
    /// `avoid`. On line components, `prescriptions` fix orders at given
    /// rational points and the remaining degree sits on one free rational
    /// point. `seed` rotates the candidate search.
    pub fn sample_divisor(
        &self,
        field: PrimeField,
        target: &[i64],
        avoid: &[Locus],
        prescriptions: &[(RationalPoint, i64)],
        seed: u64,
    ) -> Result<ComponentDivisor> {
        if target.len() != self.kind.class_rank() {
            return Err(Error::InvalidInput(format!(
                "class {target:?} has the wrong rank for {} component {}",
                self.kind, self.name
            )));
        }
        if self.kind != ComponentKind::Line && !prescriptions.is_empty() {
            return Err(Error::InvalidInput(
                "point prescriptions apply only to line components".into(),
            ));
        }
        match self.kind {
            ComponentKind::Line => sample_on_line(field, target[0], avoid, prescriptions, seed),
            ComponentKind::Plane => {
                if target[0] == 0 {
                    return Ok(ComponentDivisor::zero(self.kind));
                }
                let line = self.first_avoiding(field, avoid, plane_lines(field), seed)?;
                Ok(ComponentDivisor::form(line, target[0]))
            }
            ComponentKind::Quadric => {
                let mut out = ComponentDivisor::zero(self.kind);
                for (factor, &k) in [RulingFactor::X, RulingFactor::Y].iter().zip(target) {
                    if k == 0 {
                        continue;
                    }
                    let ruling =
                        self.first_avoiding(field, avoid, rulings(field, *factor), seed)?;
                    out = out.add(&ComponentDivisor::form(ruling, k))?;
                }
                Ok(out)
            }
        }
    }

    fn first_avoiding(
        &self,
        field: PrimeField,
        avoid: &[Locus],
        candidates: Vec<Form>,
        seed: u64,
    ) -> Result<Form> {
        let n = candidates.len();
        let start = (seed % n as u64) as usize;
        (0..n)
            .map(|i| &candidates[(start + i) % n])
            .find(|f| {
                let d = ComponentDivisor::form((*f).clone(), 1);
                avoid.iter().all(|l| self.avoids(field, &d, l))
            })
            .cloned()
            .ok_or_else(|| {
                Error::SamplingFailed(format!(
                    "all {n} candidate curves on {} meet an avoided locus",
                    self.name
                ))
            })
    }
}

fn plane_lines(field: PrimeField) -> Vec<Form> {
    let p = field.p() as i64;
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            out.push(Form::linear(field, &[a, b, 1]).expect("nonzero"));
        }
        out.push(Form::linear(field, &[a, 1, 0]).expect("nonzero"));
    }
    out.push(Form::linear(field, &[1, 0, 0]).expect("nonzero"));
    out
}

/// Rulings `{b x0 - a x1 = 0}` (or the same in `y`) through every point
/// `(a:b)` of the factor.
fn rulings(field: PrimeField, factor: RulingFactor) -> Vec<Form> {
    RationalPoint::all(field)
        .map(|pt| {
            let (a, b) = match pt {
                RationalPoint::Infinity => (1, 0),
                RationalPoint::Affine(x) => (x as i64, 1),
            };
            let coeffs = match factor {
                RulingFactor::X => [b, -a, 0, 0],
                RulingFactor::Y => [0, 0, b, -a],
            };
            Form::linear(field, &coeffs).expect("nonzero")
        })
        .collect()
}

fn sample_on_line(
    field: PrimeField,
    degree: i64,
    avoid: &[Locus],
    prescriptions: &[(RationalPoint, i64)],
    seed: u64,
) -> Result<ComponentDivisor> {
    let avoided: Vec<RationalPoint> = avoid
        .iter()
        .filter_map(|l| match l {
            Locus::Point(pt) => Some(*pt),
            _ => None,
        })
        .collect();
    let mut div = DivisorP1::new();
    for &(pt, order) in prescriptions {
        if avoided.contains(&pt) {
            return Err(Error::InvalidInput(format!(
                "prescribed point {pt} lies on the conductor"
            )));
        }
        div.add_point(pt.to_closed(field), order);
    }
    let remainder = degree - div.degree();
    if remainder != 0 {
        let free: Vec<RationalPoint> = RationalPoint::all(field)
            .filter(|pt| !avoided.contains(pt) && !prescriptions.iter().any(|(q, _)| q == pt))
            .collect();
        if free.is_empty() {
            return Err(Error::SamplingFailed(format!(
                "no free rational point among the {} points of P^1(F_{})",
                field.p() + 1,
                field.p()
            )));
        }
        let pt = free[(seed % free.len() as u64) as usize];
        div.add_point(pt.to_closed(field), remainder);
    }
    Ok(ComponentDivisor::Points(div))
}
