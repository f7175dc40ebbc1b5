use super::{ClosedPoint, DivisorP1};
use crate::error::{Error, Result};
use crate::ff_poly::{poly_factor, PrimeField, Poly};

/// A homogeneous binary form `G(s, t)` of fixed degree, stored through its
/// dehomogenization `G(1, t)`. The affine coordinate is `t/s`; the point
/// `s = 0` is infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    poly: Poly,
}

impl BinaryForm {
    pub fn new(degree: usize, poly: Poly) -> Self {
        assert!(
            poly.is_zero() || poly.degree() <= degree,
            "dehomogenization exceeds form degree"
        );
        BinaryForm { degree, poly }
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        BinaryForm::new(0, Poly::constant(field, c))
    }

    /// `alpha * s + beta * t`.
    pub fn linear(field: PrimeField, alpha: u64, beta: u64) -> Self {
        BinaryForm::new(1, Poly::new(field, vec![alpha, beta]))
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn dehomogenized(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        BinaryForm::new(self.degree + other.degree, &self.poly * &other.poly)
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        BinaryForm::new(self.degree, &self.poly + &other.poly)
    }

    pub fn scale(&self, c: u64) -> BinaryForm {
        BinaryForm::new(self.degree, self.poly.scale(c))
    }

    pub fn pow(&self, e: u32) -> BinaryForm {
        BinaryForm::new(self.degree * e as usize, self.poly.pow(e as u64))
    }

    /// Evaluates the degree-`degree` homogenization of `g` at
    /// `(s, t) = (s_form, t_form)`: the sum of `g_k s^(degree-k) t^k`.
    pub fn substitute(g: &Poly, degree: usize, s_form: &BinaryForm, t_form: &BinaryForm) -> Self {
        assert!(g.is_zero() || g.degree() <= degree);
        assert_eq!(s_form.degree, t_form.degree);
        let field = g.field();
        let out_degree = degree * s_form.degree;
        let mut acc = BinaryForm::new(out_degree, Poly::zero(field));
        for k in 0..=degree {
            let c = g.coeff(k);
            if c == 0 {
                continue;
            }
            let term = s_form
                .pow((degree - k) as u32)
                .mul(&t_form.pow(k as u32))
                .scale(c);
            acc = acc.add(&term);
        }
        acc
    }

    /// Zero scheme of the form. Errors if the form vanishes identically.
    pub fn divisor(&self) -> Result<DivisorP1> {
        if self.is_zero() {
            return Err(Error::SupportContainsConductor(
                "form vanishes identically on the locus".into(),
            ));
        }
        let mut div = DivisorP1::new();
        if self.poly.degree() > 0 {
            for (g, m) in poly_factor(&self.poly)?.factors {
                div.add_point(ClosedPoint::Finite(g), m as i64);
            }
        }
        div.add_point(
            ClosedPoint::Infinity,
            (self.degree - self.poly.degree()) as i64,
        );
        Ok(div)
    }
}
