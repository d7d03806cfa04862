//! Exact arithmetic substrate: monomial bases, homogeneous polynomials,
//! dense matrices, fraction-free elimination and a certified modular path
//! (elimination mod p followed by p-adic lifting and exact verification).

mod bareiss;
mod lifting;
mod matrix;
mod modular;
mod monomial;
mod polynomial;

pub use bareiss::{kernel_basis, kernel_basis_integer, rank_exact};
pub use lifting::{
    is_kernel_vector, lift_kernel_vectors, rational_reconstruction, solve_lifted, LiftError,
    LiftedSolution,
};
pub use matrix::Matrix;
pub use modular::{
    is_prime, next_prime, rank_mod_p, random_prime, ModEchelon, ModElimination, ModMatrix, Modulus,
    ModularError, DEFAULT_PRIMES,
};
pub use monomial::{basis_len, binomial, monomial_basis, monomial_index, Monomial};
pub use polynomial::HomogeneousPolynomial;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Divides by the gcd of the entries and makes the first nonzero entry positive.
/// The zero vector is returned unchanged.
pub fn normalize_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
        }
    }
    if g.is_zero() {
        return;
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if negate {
            *x = -&*x;
        }
    }
}
