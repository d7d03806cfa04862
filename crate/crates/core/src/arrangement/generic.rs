//! Certified generic line addition.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::incidence::join;
use super::{intersection_points, Arrangement, Hyperplane};
use crate::exactalg::normalize_primitive;
use crate::{Error, Result};

/// Number of sampled candidates before giving up.
pub const GENERIC_RETRY_BUDGET: usize = 10_000;

/// Adds a line that avoids every intersection point of `a` (other than
/// `through`, when given, which the line is forced to contain). The result is
/// a deterministic function of `a`, `seed` and `through`.
pub fn add_generic_line(a: &Arrangement, seed: u64, through: Option<&[BigInt]>) -> Result<Arrangement> {
    a.require_planar("add_generic_line")?;
    let anchor = through.map(|p| {
        let mut p = p.to_vec();
        normalize_primitive(&mut p);
        p
    });
    if let Some(p) = &anchor {
        if p.len() != 3 || p.iter().all(|c| c.sign() == num_bigint::Sign::NoSign) {
            return Err(Error::Precondition("anchor must be a nonzero point of the plane".into()));
        }
    }
    let points = if a.degree() >= 2 { intersection_points(a)?.points } else { Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..GENERIC_RETRY_BUDGET {
        let bound = 8 + (attempt / 50) as i64;
        let mut sample = || -> Vec<BigInt> {
            (0..3).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()
        };
        let coeffs = match &anchor {
            Some(p) => join(p, &sample()),
            None => sample(),
        };
        let Ok(line) = Hyperplane::new(coeffs) else {
            continue;
        };
        if a.position(&line).is_some() {
            continue;
        }
        let hits_other = points
            .iter()
            .any(|q| line.contains(&q.coords) && anchor.as_ref() != Some(&q.coords));
        if hits_other {
            continue;
        }
        let mut hs = a.hyperplanes().to_vec();
        hs.push(line);
        return Arrangement::new(3, hs);
    }
    Err(Error::GenericExhausted(GENERIC_RETRY_BUDGET))
}
