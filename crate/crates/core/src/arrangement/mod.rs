//! Arrangements of linear hyperplanes with integer coefficients: data model,
//! text format, intersection points for `ℓ = 3`, restriction with Ziegler
//! multiplicities, incidence isomorphism and the explicit families.

mod families;
mod generic;
mod incidence;
mod io;
mod lattice;
mod restrict;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

pub use families::{generate_family, parse_family_spec, FamilySpec, Modifier, FAMILY_NAMES};
pub use generic::{add_generic_line, GENERIC_RETRY_BUDGET};
pub use incidence::{intersection_points, max_multiplicity, IncidenceData, IntersectionPoint};
pub use io::{parse_arrangement, write_arrangement};
pub use lattice::{same_lattice, weak_combinatorics_equal};
pub use restrict::{restrict, Multiarrangement1D, Restriction, WeightedPoint};

use crate::exactalg::{normalize_primitive, rank_exact, Matrix};
use crate::{Error, Rational, Result};

/// A linear form `Σ c_i x_i` in primitive, sign-normalized integer form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    coeffs: Vec<BigInt>,
}

impl Hyperplane {
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroForm);
        }
        normalize_primitive(&mut coeffs);
        Ok(Hyperplane { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    /// Value of the form at a point given in coordinates.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        self.coeffs.iter().zip(point).map(|(a, b)| a * b).sum()
    }

    pub fn contains(&self, point: &[BigInt]) -> bool {
        self.eval(point).is_zero()
    }

    pub fn to_polynomial(&self) -> crate::IntegerPolynomial {
        crate::IntegerPolynomial::linear(&self.coeffs)
    }
}

pub(crate) fn var_name(i: usize, nvars: usize) -> String {
    if nvars <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = var_name(i, self.coeffs.len());
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if abs.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{abs}{name}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for Hyperplane {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

/// A finite set of distinct hyperplanes through the origin, in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    nvars: usize,
    hyperplanes: Vec<Hyperplane>,
    essential: bool,
}

impl Arrangement {
    pub fn new(nvars: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        if nvars < 2 {
            return Err(Error::Precondition(format!("need at least 2 variables, got {nvars}")));
        }
        let mut seen = HashSet::new();
        for h in &hyperplanes {
            if h.nvars() != nvars {
                return Err(Error::Arity { expected: nvars, found: h.nvars() });
            }
            if !seen.insert(h) {
                return Err(Error::DuplicateHyperplane(h.to_string()));
            }
        }
        let essential = if hyperplanes.is_empty() {
            false
        } else {
            let m = Matrix::from_rows(
                hyperplanes
                    .iter()
                    .map(|h| h.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
                    .collect(),
            )?;
            rank_exact(&m) == nvars
        };
        Ok(Arrangement { nvars, hyperplanes, essential })
    }

    /// Builds from integer coefficient rows.
    pub fn from_ints(nvars: usize, rows: &[&[i64]]) -> Result<Self> {
        let hs = rows.iter().map(|r| Hyperplane::from_ints(r)).collect::<Result<Vec<_>>>()?;
        Self::new(nvars, hs)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of hyperplanes, the degree of the defining polynomial.
    pub fn degree(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> Result<&Hyperplane> {
        self.hyperplanes.get(i).ok_or(Error::IndexOutOfRange { index: i, len: self.degree() })
    }

    pub fn is_essential(&self) -> bool {
        self.essential
    }

    pub fn position(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.iter().position(|g| g == h)
    }

    /// `Q(A)`, the product of the forms.
    pub fn defining_polynomial(&self) -> crate::IntegerPolynomial {
        self.hyperplanes.iter().fold(
            crate::IntegerPolynomial::constant(self.nvars, BigInt::one()),
            |acc, h| acc.mul(&h.to_polynomial()),
        )
    }

    /// `A ∖ {H_i}`.
    pub fn delete(&self, i: usize) -> Result<Arrangement> {
        self.hyperplane(i)?;
        let mut hs = self.hyperplanes.clone();
        hs.remove(i);
        Arrangement::new(self.nvars, hs)
    }

    /// `A ∪ {H}` together with `|A^H|`, the number of distinct traces of the
    /// old hyperplanes on `H`.
    pub fn add_line(&self, line: Hyperplane) -> Result<(Arrangement, usize)> {
        let mut hs = self.hyperplanes.clone();
        hs.push(line);
        let a = Arrangement::new(self.nvars, hs)?;
        let count = restrict(&a, a.degree() - 1)?.arrangement.degree();
        Ok((a, count))
    }

    /// Sub-arrangement on the given indices, in the given order.
    pub fn subarrangement(&self, indices: &[usize]) -> Result<Arrangement> {
        let hs = indices.iter().map(|&i| self.hyperplane(i).cloned()).collect::<Result<_>>()?;
        Arrangement::new(self.nvars, hs)
    }

    /// Order-independent key: the sorted canonical forms.
    pub fn canonical_key(&self) -> Vec<Hyperplane> {
        let mut hs = self.hyperplanes.clone();
        hs.sort();
        hs
    }

    pub fn incidence(&self) -> Result<IncidenceData> {
        intersection_points(self)
    }

    pub(crate) fn require_planar(&self, what: &str) -> Result<()> {
        if self.nvars != 3 {
            return Err(Error::Precondition(format!("{what} needs 3 variables, got {}", self.nvars)));
        }
        Ok(())
    }

    pub(crate) fn require_essential_planar(&self, what: &str) -> Result<()> {
        self.require_planar(what)?;
        if !self.essential {
            return Err(Error::Precondition(format!("{what} needs an essential arrangement")));
        }
        Ok(())
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.hyperplanes.iter().enumerate() {
            if i > 0 {
                write!(f, " · ")?;
            }
            write!(f, "({h})")?;
        }
        Ok(())
    }
}
