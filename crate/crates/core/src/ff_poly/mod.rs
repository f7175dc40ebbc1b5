//! Prime fields, univariate polynomials, their factorization, and reduced
//! rational functions.

mod dlog;
mod factor;
mod field;
mod poly;
mod ratfunc;

pub use dlog::discrete_log;
pub use factor::{is_irreducible, poly_factor, squarefree_decomposition, Factorization};
pub use field::PrimeField;
pub use poly::Poly;
pub use ratfunc::RatFunc;

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn field() -> impl Strategy<Value = PrimeField> {
        prop::sample::select(vec![3u64, 5, 7, 11, 13]).prop_map(|p| PrimeField::new(p).unwrap())
    }

    fn poly_in(f: PrimeField, max_deg: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(0..f.p(), 1..=max_deg + 1).prop_map(move |c| Poly::new(f, c))
    }

    /// Irreducibility by exhaustive trial division against all monic
    /// polynomials of degree at most deg/2.
    fn irreducible_by_trial_division(g: &Poly) -> bool {
        let f = g.field();
        let n = g.degree();
        for d in 1..=n / 2 {
            let count = f.p().pow(d as u32);
            for idx in 0..count {
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut k = idx;
                for _ in 0..d {
                    coeffs.push(k % f.p());
                    k /= f.p();
                }
                coeffs.push(1);
                if g.rem(&Poly::new(f, coeffs)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    proptest! {
        #[test]
        fn factorization_round_trip((f, g) in field().prop_flat_map(|f| (Just(f), poly_in(f, 8)))) {
            prop_assume!(!g.is_zero());
            let fac = poly_factor(&g).unwrap();
            prop_assert_eq!(fac.expand(f), g);
            for (h, m) in &fac.factors {
                prop_assert!(h.is_monic());
                prop_assert!(*m >= 1);
                if h.degree() <= 3 {
                    prop_assert!(h.degree() == 1 || !h.has_root());
                } else {
                    prop_assert!(irreducible_by_trial_division(h));
                }
            }
        }

        #[test]
        fn product_order_is_irrelevant(
            (f, a, b, c) in field().prop_flat_map(|f| (Just(f), poly_in(f, 3), poly_in(f, 3), poly_in(f, 3)))
        ) {
            prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
            let ra = RatFunc::from_poly(a).unwrap();
            let rb = RatFunc::from_poly(b).unwrap().inv();
            let rc = RatFunc::from_poly(c).unwrap();
            let left = &(&ra * &rb) * &rc;
            let right = &rc * &(&rb * &ra);
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(left.inv().inv(), left.clone());
            prop_assert!(f.p() > 2);
        }

        #[test]
        fn discrete_log_inverts_power(f in field(), e in 0u64..1000) {
            let e = e % f.unit_order();
            prop_assert_eq!(discrete_log(f, f.pow(f.generator(), e)).unwrap(), e);
        }
    }
}
