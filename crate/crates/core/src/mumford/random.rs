use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MumfordDivisor;
use crate::components::{ComponentDivisor, ComponentKind, ComponentModel, Form, Locus};
use crate::error::{Error, Result};
use crate::glued_scheme::GluedScheme;
use crate::proj_line::{ClosedPoint, DivisorP1};

const ATTEMPTS: usize = 10_000;

/// A random Mumford divisor with zero component classes: on each component,
/// `pairs` differences of two random lines, rulings of one family, or
/// rational points, all avoiding the conductor. About half of the surface
/// pairs are drawn to meet every conductor locus in the same points, so
/// that later layers of the classification get exercised.
pub fn random_divisor(s: &GluedScheme, pairs: usize, seed: u64) -> Result<MumfordDivisor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parts = (0..s.components().len())
        .map(|i| {
            let avoid: Vec<Locus> = s.loci_on(i).into_iter().cloned().collect();
            let model = &s.components()[i];
            let mut out = ComponentDivisor::zero(model.kind);
            for _ in 0..pairs {
                let family = rng.gen_range(0..2);
                let first = random_prime(s, model, &avoid, family, &mut rng)?;
                let mut second = random_prime(s, model, &avoid, family, &mut rng)?;
                if model.kind != ComponentKind::Line && rng.gen_bool(0.5) {
                    let meets = |d: &ComponentDivisor| -> Result<Vec<DivisorP1>> {
                        avoid.iter().map(|l| model.restrict_divisor(s.field(), d, l)).collect()
                    };
                    let target = meets(&first)?;
                    for _ in 0..ATTEMPTS {
                        if meets(&second)? == target {
                            break;
                        }
                        second = random_prime(s, model, &avoid, family, &mut rng)?;
                    }
                }
                out = out.add(&first)?.sub(&second)?;
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    MumfordDivisor::from_parts(s, parts)
}

fn random_prime(
    s: &GluedScheme,
    model: &ComponentModel,
    avoid: &[Locus],
    family: usize,
    rng: &mut ChaCha8Rng,
) -> Result<ComponentDivisor> {
    let field = s.field();
    let p = field.p() as i64;
    for _ in 0..ATTEMPTS {
        let candidate = match model.kind {
            ComponentKind::Line => {
                let a = rng.gen_range(0..=field.p());
                let pt = if a == field.p() { ClosedPoint::Infinity } else { ClosedPoint::rational(field, a) };
                ComponentDivisor::Points(DivisorP1::point(pt, 1))
            }
            ComponentKind::Plane => {
                let c: Vec<i64> = (0..3).map(|_| rng.gen_range(0..p)).collect();
                let Ok(g) = Form::linear(field, &c) else { continue };
                ComponentDivisor::form(g, 1)
            }
            ComponentKind::Quadric => {
                let (a, b) = (rng.gen_range(0..p), rng.gen_range(0..p));
                let mut c = vec![0; 4];
                c[2 * family] = a;
                c[2 * family + 1] = b;
                let Ok(g) = Form::linear(field, &c) else { continue };
                ComponentDivisor::form(g, 1)
            }
        };
        if avoid.iter().all(|l| model.avoids(field, &candidate, l)) {
            return Ok(candidate);
        }
    }
    Err(Error::SamplingFailed(format!("no random prime divisor on {} avoids the conductor", model.name)))
}
