use std::collections::HashMap;

use super::field::PrimeField;
use crate::error::{Error, Result};

/// Exponent `e` in `[0, p-1)` with `generator^e = x`, by baby-step
/// giant-step.
pub fn discrete_log(field: PrimeField, x: u64) -> Result<u64> {
    let x = x % field.p();
    if x == 0 {
        return Err(Error::ZeroLogarithm);
    }
    let n = field.unit_order();
    let m = (n as f64).sqrt().ceil() as u64;
    let g = field.generator();

    let mut baby = HashMap::with_capacity(m as usize);
    let mut cur = 1u64;
    for j in 0..m {
        baby.entry(cur).or_insert(j);
        cur = field.mul(cur, g);
    }
    let giant = field.inv(field.pow(g, m));
    let mut gamma = x;
    for i in 0..=m {
        if let Some(&j) = baby.get(&gamma) {
            return Ok((i * m + j) % n);
        }
        gamma = field.mul(gamma, giant);
    }
    Err(Error::Internal(format!(
        "no discrete logarithm for {x} in {field}"
    )))
}
