use super::{ClosedPoint, MobiusMap};
use crate::error::{Error, Result};
use crate::ff_poly::PrimeField;

/// Orbit of a closed point under the deck transformation `σ: t -> ζ_d t`.
///
/// Successive entries are successive pullbacks `σ^* P`, and the list is
/// rotated to start at its smallest member. Requires `d >= 2`, `d | p - 1`.
pub fn sigma_orbit(field: PrimeField, point: &ClosedPoint, d: u64) -> Result<Vec<ClosedPoint>> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("cover degree {d} < 2")));
    }
    let zeta = field.root_of_unity(d)?;
    // σ^* moves a root r to r / ζ.
    let pullback = MobiusMap::scaling(field, field.inv(zeta))?;
    let mut orbit = vec![point.clone()];
    loop {
        let next = pullback.pushforward_point(orbit.last().expect("nonempty"));
        if &next == point {
            break;
        }
        orbit.push(next);
        debug_assert!(orbit.len() as u64 <= d);
    }
    let start = orbit
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
        .expect("nonempty");
    orbit.rotate_left(start);
    Ok(orbit)
}
