//! Shared inputs for the criterion benches.

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mumcl_core::abelian::IntMatrix;
use mumcl_core::ff_poly::{Poly, PrimeField};
use mumcl_core::GluedScheme;

pub fn fixture_scheme(name: &str) -> GluedScheme {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    GluedScheme::load(path).expect("fixture loads")
}

/// A monic polynomial of exactly degree `deg` with seeded coefficients.
pub fn random_monic(field: PrimeField, deg: usize, seed: u64) -> Poly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..field.p())).collect();
    c.push(1);
    Poly::new(field, c)
}

pub fn random_matrix(rows: usize, cols: usize, bound: i64, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(&data)
}
