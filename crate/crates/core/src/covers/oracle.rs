use serde::Serialize;

use super::{CoverDescriptor, ReferenceKind};
use crate::error::Result;
use crate::ff_poly::{Poly, PrimeField, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteForceOutcome {
    pub equal: bool,
    /// A reference function `g` with `f_a / g_a` equal to a constant times
    /// the pullback of `g` on every piece.
    #[serde(serialize_with = "serialize_witness")]
    pub witness: Option<RatFunc>,
    pub height_bound: usize,
}

fn serialize_witness<S: serde::Serializer>(
    w: &Option<RatFunc>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match w {
        Some(f) => s.serialize_str(&f.to_string()),
        None => s.serialize_none(),
    }
}

/// Monic polynomials of exactly degree `deg`.
fn monic_polys(field: PrimeField, deg: usize) -> impl Iterator<Item = Poly> {
    let p = field.p();
    (0..p.pow(deg as u32)).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            coeffs.push(idx % p);
            idx /= p;
        }
        coeffs.push(1);
        Poly::new(field, coeffs)
    })
}

/// Reference functions `N/D` with monic `N`, `D` and `deg N + deg D <= h`.
pub(crate) fn reference_functions(field: PrimeField, h: usize) -> impl Iterator<Item = RatFunc> {
    (0..=h).flat_map(move |total| {
        (0..=total).flat_map(move |dn| {
            monic_polys(field, dn).flat_map(move |n| {
                monic_polys(field, total - dn).filter_map(move |d| {
                    (n.gcd(&d).is_one()).then(|| RatFunc::new(n.clone(), d).expect("nonzero"))
                })
            })
        })
    })
}

/// Exhaustive search for `g` of height at most `h` with `f_a / g_a` a
/// constant multiple of the pullback of `g` on every piece. Finding one
/// proves the classes equal; failing proves nothing beyond the bound.
pub fn brute_force_class_equal(
    fs: &[RatFunc],
    gs: &[RatFunc],
    c: &CoverDescriptor,
    h: usize,
) -> Result<BruteForceOutcome> {
    c.check_tuple(fs)?;
    c.check_tuple(gs)?;
    let ratios: Vec<RatFunc> = fs.iter().zip(gs).map(|(f, g)| f / g).collect();
    if c.reference() == ReferenceKind::Point {
        return Ok(BruteForceOutcome {
            equal: true,
            witness: Some(RatFunc::one(c.field())),
            height_bound: h,
        });
    }
    let witness = reference_functions(c.field(), h).find(|g| {
        c.pullback(g)
            .iter()
            .zip(&ratios)
            .all(|(pg, r)| (r / pg).is_constant())
    });
    Ok(BruteForceOutcome {
        equal: witness.is_some(),
        witness,
        height_bound: h,
    })
}
