//! Restriction `A^H` with Ziegler multiplicities.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{Arrangement, Hyperplane};
use crate::exactalg::normalize_primitive;
use crate::{Error, Result};

/// Restricted arrangement on `H`, in the coordinates of a fixed basis of `H`,
/// with `multiplicities[i]` preimages for its `i`-th hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub arrangement: Arrangement,
    pub multiplicities: Vec<usize>,
    /// Basis vectors of `H` in ambient coordinates.
    pub basis: Vec<Vec<BigInt>>,
}

/// Integer basis of `{v : α·v = 0}`: with `p` the first nonzero coordinate of
/// `α`, one vector `α_p e_f - α_f e_p` for every other coordinate `f`.
pub(crate) fn kernel_basis_of_form(alpha: &[BigInt]) -> Vec<Vec<BigInt>> {
    let p = alpha.iter().position(|c| !c.is_zero()).expect("nonzero form");
    (0..alpha.len())
        .filter(|&f| f != p)
        .map(|f| {
            let mut v = vec![BigInt::zero(); alpha.len()];
            v[f] = alpha[p].clone();
            v[p] = -&alpha[f];
            v
        })
        .collect()
}

pub fn restrict(a: &Arrangement, h_index: usize) -> Result<Restriction> {
    let h = a.hyperplane(h_index)?;
    if a.degree() < 2 {
        return Err(Error::Precondition("restriction needs at least 2 hyperplanes".into()));
    }
    let basis = kernel_basis_of_form(h.coeffs());
    let mut images: Vec<Hyperplane> = Vec::new();
    let mut mult: Vec<usize> = Vec::new();
    for (i, g) in a.hyperplanes().iter().enumerate() {
        if i == h_index {
            continue;
        }
        let pulled: Vec<BigInt> = basis.iter().map(|v| g.eval(v)).collect();
        let image = Hyperplane::new(pulled)
            .map_err(|_| Error::Consistency(format!("{g} restricts to zero on {h}")))?;
        match images.iter().position(|x| *x == image) {
            Some(k) => mult[k] += 1,
            None => {
                images.push(image);
                mult.push(1);
            }
        }
    }
    let arrangement = Arrangement::new(a.nvars() - 1, images)?;
    Ok(Restriction { arrangement, multiplicities: mult, basis })
}

/// A point of the projective line with a positive weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedPoint {
    #[serde(serialize_with = "super::families::ser_bigints")]
    pub point: Vec<BigInt>,
    pub multiplicity: usize,
}

/// A multiarrangement of points on the projective line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multiarrangement1D {
    pub points: Vec<WeightedPoint>,
}

impl Multiarrangement1D {
    /// Points are normalized to primitive, sign-normalized pairs; repeated
    /// points and zero weights are rejected.
    pub fn new(points: Vec<(Vec<BigInt>, usize)>) -> Result<Self> {
        let mut out: Vec<WeightedPoint> = Vec::new();
        for (mut p, m) in points {
            if p.len() != 2 {
                return Err(Error::Arity { expected: 2, found: p.len() });
            }
            if p.iter().all(Zero::is_zero) {
                return Err(Error::ZeroForm);
            }
            if m == 0 {
                return Err(Error::Precondition("multiplicities must be positive".into()));
            }
            normalize_primitive(&mut p);
            if out.iter().any(|w| w.point == p) {
                return Err(Error::Precondition(format!("repeated point ({}:{})", p[0], p[1])));
            }
            out.push(WeightedPoint { point: p, multiplicity: m });
        }
        if out.is_empty() {
            return Err(Error::Precondition("multiarrangement needs at least one point".into()));
        }
        Ok(Multiarrangement1D { points: out })
    }

    pub fn from_ints(points: &[([i64; 2], usize)]) -> Result<Self> {
        Self::new(points.iter().map(|(p, m)| (p.iter().map(|&c| BigInt::from(c)).collect(), *m)).collect())
    }

    /// `|m|`.
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|w| w.multiplicity).sum()
    }

    /// The Ziegler restriction of a 3-variable arrangement viewed on the
    /// projective line `H`: each image line becomes the point where it vanishes.
    pub fn from_restriction(r: &Restriction) -> Result<Self> {
        if r.arrangement.nvars() != 2 {
            return Err(Error::Precondition("Ziegler restriction of a line arrangement expected".into()));
        }
        Self::new(
            r.arrangement
                .hyperplanes()
                .iter()
                .zip(&r.multiplicities)
                .map(|(h, &m)| (vec![h.coeffs()[1].clone(), -&h.coeffs()[0]], m))
                .collect(),
        )
    }
}
