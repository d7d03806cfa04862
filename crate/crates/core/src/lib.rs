//! Exact computation of the minimal degree of a Jacobian relation, `mdr(A)`,
//! for hyperplane and line arrangements, together with Tjurina numbers,
//! freeness classification, Ziegler restrictions and mechanical checks of
//! the addition-deletion behaviour of `mdr`.
//!
//! All arithmetic is exact. Polynomials and matrices are generic over their
//! scalar type; the aliases below fix the two instantiations used throughout
//! (integers for coefficient storage, rationals for user-facing linear algebra).

pub mod arrangement;
pub mod error;
pub mod exactalg;
pub mod invariants;
pub mod syzygy;
pub mod verify;

pub use error::{Error, Result};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Arbitrary precision integer scalar.
pub type Integer = num_bigint::BigInt;

pub type RationalPolynomial = exactalg::HomogeneousPolynomial<Rational>;
pub type IntegerPolynomial = exactalg::HomogeneousPolynomial<Integer>;
pub type RationalMatrix = exactalg::Matrix<Rational>;
pub type IntegerMatrix = exactalg::Matrix<Integer>;

pub use arrangement::{Arrangement, Hyperplane, IncidenceData, Multiarrangement1D};
pub use syzygy::{Derivation, MultiExponents, SyzygyEngine, SyzygyProfile};
