//! Graded pieces of `D0(A)`, the minimal degree `mdr(A)` of a Jacobian
//! relation, minimal generator degrees and exponents of multiarrangements on
//! the projective line.

mod engine;
mod jacobian;
mod multi;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

pub use engine::{AuditRecord, Strategy, SyzygyEngine};
pub use multi::{multi_dimension, multi_exponents};

use crate::arrangement::Arrangement;
use crate::exactalg::{basis_len, normalize_primitive, HomogeneousPolynomial};
use crate::{Error, IntegerPolynomial, Result};

/// `θ = Σ a_i ∂_i` with all `a_i` homogeneous of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    components: Vec<IntegerPolynomial>,
}

impl Derivation {
    pub fn new(components: Vec<IntegerPolynomial>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::Precondition("a derivation needs at least one component".into()));
        };
        let (n, deg) = (components.len(), first.degree());
        if components.iter().any(|c| c.nvars() != n || c.degree() != deg) {
            return Err(Error::Precondition("components must share variables and degree".into()));
        }
        Ok(Derivation { components })
    }

    /// `θ_E = Σ x_i ∂_i`.
    pub fn euler(nvars: usize) -> Self {
        let components = (0..nvars)
            .map(|i| {
                let c: Vec<BigInt> = (0..nvars).map(|j| BigInt::from(u8::from(i == j))).collect();
                IntegerPolynomial::linear(&c)
            })
            .collect();
        Derivation { components }
    }

    /// Reads the coordinates used by the Jacobian system at degree `degree`.
    pub fn from_vector(nvars: usize, degree: usize, v: &[BigInt]) -> Result<Self> {
        let len = basis_len(degree, nvars);
        if v.len() != nvars * len {
            return Err(Error::Arity { expected: nvars * len, found: v.len() });
        }
        let components = v
            .chunks(len)
            .map(|c| HomogeneousPolynomial::from_coeffs(nvars, degree, c.to_vec()))
            .collect::<Result<_>>()?;
        Ok(Derivation { components })
    }

    pub fn to_vector(&self) -> Vec<BigInt> {
        self.components.iter().flat_map(|c| c.coeffs().iter().cloned()).collect()
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> usize {
        self.components[0].degree()
    }

    pub fn components(&self) -> &[IntegerPolynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// `θ(p) = Σ a_i ∂p/∂x_i`.
    pub fn apply(&self, p: &IntegerPolynomial) -> Result<IntegerPolynomial> {
        if p.nvars() != self.nvars() {
            return Err(Error::Arity { expected: self.nvars(), found: p.nvars() });
        }
        let out_degree = (self.degree() + p.degree()).saturating_sub(1);
        let mut acc = IntegerPolynomial::zero(self.nvars(), out_degree);
        if p.degree() == 0 {
            return Ok(acc);
        }
        for (i, a) in self.components.iter().enumerate() {
            acc = acc.add(&a.mul(&p.partial_derivative(i)?))?;
        }
        Ok(acc)
    }

    /// Divides out the content and fixes the sign of the leading coordinate.
    pub fn normalized(&self) -> Self {
        let mut v = self.to_vector();
        normalize_primitive(&mut v);
        Derivation::from_vector(self.nvars(), self.degree(), &v).expect("same shape")
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            let var = crate::arrangement::var_name(i, self.nvars());
            write!(f, "({c})∂{var}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for Derivation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.components.iter().map(|c| c.to_string()))
    }
}

/// Exponents `(e1, e2)`, `e1 <= e2`, of a rank-2 multiarrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MultiExponents {
    pub e1: usize,
    pub e2: usize,
}

/// Graded data of `D0(A)` up to a degree bound.
#[derive(Clone, Debug, Serialize)]
pub struct SyzygyProfile {
    pub d: usize,
    /// `dims[r] = dim D0(A)_r` for `0 <= r <= bound`.
    pub dims: Vec<usize>,
    pub mdr: usize,
    pub basis_at_mdr: Vec<Derivation>,
    /// Degrees of a minimal generating set of the truncation of `D0(A)` in
    /// degrees `<= bound`; generators above the bound are not seen.
    pub mingen_degrees: Vec<usize>,
    pub bound: usize,
}

/// The relation `(D_p h) θ_E - d h ∂_p` of degree `d - m`, where `p` is a
/// point of multiplicity `m` and `h` is the product of the lines missing `p`.
pub fn point_syzygy(a: &Arrangement, p: &[BigInt]) -> Result<Derivation> {
    a.require_planar("point_syzygy")?;
    let n = a.nvars();
    let mut h = IntegerPolynomial::constant(n, BigInt::one());
    for l in a.hyperplanes().iter().filter(|l| !l.contains(p)) {
        h = h.mul(&l.to_polynomial());
    }
    let mut dph = IntegerPolynomial::zero(n, h.degree().saturating_sub(1));
    if h.degree() > 0 {
        for (j, pj) in p.iter().enumerate() {
            dph = dph.add(&h.partial_derivative(j)?.scale(pj))?;
        }
    }
    let dd = BigInt::from(a.degree());
    let components = (0..n)
        .map(|i| {
            let mut xi = vec![BigInt::zero(); n];
            xi[i] = BigInt::one();
            let left = if h.degree() > 0 {
                dph.mul(&IntegerPolynomial::linear(&xi))
            } else {
                IntegerPolynomial::zero(n, 0)
            };
            left.sub(&h.scale(&(&dd * &p[i])))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Derivation::new(components)?.normalized())
}

/// A relation of degree `d - 1` (or 0 when some partial vanishes): the
/// Koszul relation between two nonzero partials of `Q`.
pub(crate) fn koszul_syzygy(a: &Arrangement) -> Result<Derivation> {
    let n = a.nvars();
    let q = a.defining_polynomial();
    let partials = (0..n).map(|i| q.partial_derivative(i)).collect::<Result<Vec<_>>>()?;
    if let Some(i) = partials.iter().position(|p| p.is_zero()) {
        let comps = (0..n)
            .map(|j| IntegerPolynomial::constant(n, BigInt::from(u8::from(i == j))))
            .collect();
        return Derivation::new(comps);
    }
    let deg = a.degree() - 1;
    let mut comps: Vec<IntegerPolynomial> = (0..n).map(|_| IntegerPolynomial::zero(n, deg)).collect();
    comps[0] = partials[1].clone();
    comps[1] = partials[0].scale(&BigInt::from(-1));
    Ok(Derivation::new(comps)?.normalized())
}

/// `dim D0(A)_r` with the default engine.
pub fn d0_dimension(a: &Arrangement, r: usize) -> Result<usize> {
    SyzygyEngine::new().d0_dimension(a, r)
}

/// `mdr(A)` and a normalized witness relation, with the default engine.
pub fn mdr(a: &Arrangement) -> Result<(usize, Derivation)> {
    SyzygyEngine::new().mdr(a)
}

/// Minimal generator degrees of `D0(A)` up to `bound`, with the default engine.
pub fn minimal_generator_degrees(a: &Arrangement, bound: usize) -> Result<Vec<usize>> {
    Ok(SyzygyEngine::new().profile(a, bound)?.mingen_degrees)
}

/// Default mingen bound `2d`.
pub fn default_mingen_bound(a: &Arrangement) -> usize {
    2 * a.degree()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(rows: &[&[i64]]) -> Arrangement {
        Arrangement::from_ints(3, rows).unwrap()
    }

    #[test]
    fn euler_is_not_a_relation() {
        let t = arr(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let q = t.defining_polynomial();
        let e = Derivation::euler(3).apply(&q).unwrap();
        assert_eq!(e, q.scale(&BigInt::from(3)));
    }

    #[test]
    fn point_syzygy_kills_q() {
        let a = arr(&[&[1, 0, 0], &[1, 0, -1], &[0, 1, 0], &[0, 1, -1], &[0, 0, 1]]);
        let p = vec![BigInt::from(0), BigInt::from(1), BigInt::from(0)];
        let th = point_syzygy(&a, &p).unwrap();
        assert_eq!(th.degree(), 2);
        assert!(!th.is_zero());
        assert!(th.apply(&a.defining_polynomial()).unwrap().is_zero());
    }

    #[test]
    fn koszul_relation() {
        let a = arr(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let th = koszul_syzygy(&a).unwrap();
        assert_eq!(th.degree(), 3);
        assert!(th.apply(&a.defining_polynomial()).unwrap().is_zero());
        let pencil = arr(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        assert_eq!(koszul_syzygy(&pencil).unwrap().degree(), 0);
    }

    #[test]
    fn vector_round_trip() {
        let th = Derivation::euler(3);
        let v = th.to_vector();
        assert_eq!(Derivation::from_vector(3, 1, &v).unwrap(), th);
        assert!(Derivation::from_vector(3, 1, &v[1..]).is_err());
    }
}
