//! Factorization over `F_p`: square-free decomposition, distinct-degree
//! factorization and Cantor-Zassenhaus equal-degree splitting.
//!
//! The splitting step draws random polynomials from a ChaCha stream with a
//! fixed seed, so factorizations are reproducible run to run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use crate::error::{Error, Result};

const SPLIT_SEED: u64 = 0x6d75_6d63_6c00_0001;

/// `scalar * prod(factor^multiplicity)` with monic irreducible factors,
/// sorted by degree and then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub scalar: u64,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self, field: super::PrimeField) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.scalar), |acc, (g, m)| {
                &acc * &g.pow(*m as u64)
            })
    }
}

pub fn poly_factor(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (scalar, monic) = f.monic_parts();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ f.field().p());
    let mut factors = Vec::new();
    for (sqf, mult) in squarefree_decomposition(&monic) {
        for (part, degree) in distinct_degree(&sqf) {
            for g in equal_degree(&part, degree, &mut rng) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(Factorization { scalar, factors })
}

pub fn is_irreducible(f: &Poly) -> bool {
    if f.is_zero() || f.degree() == 0 {
        return false;
    }
    match poly_factor(f) {
        Ok(fac) => fac.factors.len() == 1 && fac.factors[0].1 == 1,
        Err(_) => false,
    }
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with
/// `f = prod g^m`, each `g` square-free and the `g` pairwise coprime.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    debug_assert!(f.is_monic() || f.is_zero());
    let field = f.field();
    let p = field.p() as u32;
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        // What is left is a polynomial in t^p; take its p-th root.
        let root = c
            .decompose_power(p as usize)
            .expect("remaining cofactor is a p-th power");
        // Frobenius is the identity on F_p, so coefficients stay put.
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial:
/// `(product of all irreducible factors of degree d, d)`.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let p = field.p();
    let t = Poly::t(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = t.rem(&rest);
    let mut d = 1;
    while rest.degree() >= 2 * d {
        h = h.pow_mod(p, &rest);
        let g = rest.gcd(&(&h - &t));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree() > 0 {
        let deg = rest.degree();
        out.push((rest, deg));
    }
    out
}

/// Splits a monic square-free product of irreducibles of degree `d`.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let p = field.p();
    loop {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let a = Poly::new(field, coeffs);
        if a.degree() == 0 {
            continue;
        }
        // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
        let mut frob = a.clone();
        let mut acc = a.clone();
        for _ in 1..d {
            frob = frob.pow_mod(p, f);
            acc = acc.mul_mod(&frob, f);
        }
        let b = &acc.pow_mod((p - 1) / 2, f) - &Poly::one(field);
        let g = f.gcd(&b);
        if g.degree() > 0 && g.degree() < n {
            let mut left = equal_degree(&g, d, rng);
            left.extend(equal_degree(&f.div_exact(&g), d, rng));
            return left;
        }
    }
}
