//! Intersection points of a line arrangement (`ℓ = 3`).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use serde::Serialize;

use super::Arrangement;
use crate::exactalg::normalize_primitive;
use crate::{Error, Result};

/// A point of the projective plane where at least two lines meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionPoint {
    #[serde(serialize_with = "super::families::ser_bigints")]
    pub coords: Vec<BigInt>,
    /// Sorted indices of the lines through the point.
    pub lines: Vec<usize>,
}

impl IntersectionPoint {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }

    pub fn contains_line(&self, i: usize) -> bool {
        self.lines.binary_search(&i).is_ok()
    }
}

/// Incidence structure and lattice invariants of a line arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceData {
    pub d: usize,
    /// Sorted by canonical coordinates.
    pub points: Vec<IntersectionPoint>,
    /// Weak combinatorics `j -> n_j`.
    pub n: BTreeMap<usize, usize>,
    pub b2: i64,
    pub b2_zero: i64,
    /// Ascending coefficients of `χ(A; t)`.
    pub char_poly: Vec<i64>,
}

fn cross(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Canonical coordinates of the intersection of two distinct lines.
pub(crate) fn meet(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut p = cross(a, b);
    normalize_primitive(&mut p);
    p
}

/// Canonical form of the line through two distinct points.
pub(crate) fn join(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    meet(p, q)
}

pub fn intersection_points(a: &Arrangement) -> Result<IncidenceData> {
    a.require_planar("intersection_points")?;
    let d = a.degree();
    if d < 2 {
        return Err(Error::Precondition("intersection_points needs at least 2 lines".into()));
    }
    let hs = a.hyperplanes();
    let mut map: HashMap<Vec<BigInt>, BTreeSet<usize>> = HashMap::new();
    for i in 0..d {
        for j in i + 1..d {
            let p = meet(hs[i].coeffs(), hs[j].coeffs());
            let e = map.entry(p).or_default();
            e.insert(i);
            e.insert(j);
        }
    }
    let mut points: Vec<IntersectionPoint> = map
        .into_iter()
        .map(|(coords, lines)| IntersectionPoint { coords, lines: lines.into_iter().collect() })
        .collect();
    points.sort_by(|p, q| p.coords.cmp(&q.coords));
    let mut n = BTreeMap::new();
    for p in &points {
        *n.entry(p.multiplicity()).or_insert(0) += 1;
    }
    let b2: i64 = points.iter().map(|p| p.multiplicity() as i64 - 1).sum();
    let b2_zero = b2 - d as i64 + 1;
    // (t - 1)(t^2 - (d - 1)t + b2_zero)
    let dd = d as i64;
    let char_poly = vec![-b2_zero, b2_zero + dd - 1, -dd, 1];
    Ok(IncidenceData { d, points, n, b2, b2_zero, char_poly })
}

/// `m(A)` and the first point (in canonical order) attaining it.
pub fn max_multiplicity(a: &Arrangement) -> Result<(usize, Vec<BigInt>)> {
    let inc = intersection_points(a)?;
    let (m, p) = inc.max_point();
    Ok((m, p.coords.clone()))
}

impl IncidenceData {
    pub fn max_point(&self) -> (usize, &IntersectionPoint) {
        let m = self.max_multiplicity();
        (m, self.points.iter().find(|p| p.multiplicity() == m).expect("at least one point"))
    }

    pub fn max_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity()).max().unwrap_or(0)
    }

    pub fn n_j(&self, j: usize) -> usize {
        self.n.get(&j).copied().unwrap_or(0)
    }

    /// Indices of the points lying on line `i`.
    pub fn points_on(&self, i: usize) -> Vec<usize> {
        (0..self.points.len()).filter(|&k| self.points[k].contains_line(i)).collect()
    }

    pub fn find_point(&self, coords: &[BigInt]) -> Option<&IntersectionPoint> {
        self.points.iter().find(|p| p.coords == coords)
    }

    /// `χ(A; t)` from the Möbius function of the lattice, computed flat by flat.
    pub fn char_poly_mobius(&self) -> Vec<i64> {
        // μ(V) = 1, μ(H) = -1, μ(p) = -(μ(V) + Σ_{H ∋ p} μ(H)).
        let mu_lines = -(self.d as i64);
        let mu_points: i64 = self.points.iter().map(|p| -(1 - p.multiplicity() as i64)).sum();
        let essential = self.points.len() > 1;
        let mu_origin = if essential { -(1 + mu_lines + mu_points) } else { 0 };
        vec![mu_origin, mu_points, mu_lines, 1]
    }

    /// `Σ_p binom(m_p, 2)`, which equals `binom(d, 2)`.
    pub fn pair_count(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity() * (p.multiplicity() - 1) / 2).sum()
    }
}
