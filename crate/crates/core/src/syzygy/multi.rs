//! Logarithmic derivations of a multiarrangement of points on the projective line.

use num_bigint::BigInt;
use num_traits::Zero;

use super::MultiExponents;
use crate::arrangement::Multiarrangement1D;
use crate::exactalg::{binomial, kernel_basis_integer, Matrix};
use crate::{Error, Result};

/// Coefficients in `t` of `(u0 + u1 t)^e`.
fn binomial_power(u0: &BigInt, u1: &BigInt, e: usize) -> Vec<BigInt> {
    (0..=e)
        .map(|i| BigInt::from(binomial(e, i)) * num_traits::pow(u0.clone(), e - i) * num_traits::pow(u1.clone(), i))
        .collect()
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Linear conditions on `(a, b)` in degree `k`: one row per vanishing
/// Taylor coefficient of `p2 a - p1 b` along the point `(p1 : p2)`.
fn condition_matrix(m: &Multiarrangement1D, k: usize) -> Result<Matrix<BigInt>> {
    let cols = 2 * (k + 1);
    let mut rows = Vec::new();
    for wp in &m.points {
        let (p1, p2) = (&wp.point[0], &wp.point[1]);
        // x = s p1 + t p2, y = s p2 - t p1; the point's form becomes a multiple of t.
        let expansions: Vec<Vec<BigInt>> = (0..=k)
            .map(|j| poly_mul(&binomial_power(p1, p2, k - j), &binomial_power(p2, &-p1, j)))
            .collect();
        for i in 0..wp.multiplicity.min(k + 1) {
            let mut row = vec![BigInt::zero(); cols];
            for (j, ex) in expansions.iter().enumerate() {
                row[j] = p2 * &ex[i];
                row[k + 1 + j] = -(p1 * &ex[i]);
            }
            rows.push(row);
        }
    }
    Matrix::from_rows_with_cols(rows, cols)
}

/// `dim D(m)_k` for derivations `a ∂_x + b ∂_y` with coefficients of degree `k`.
pub fn multi_dimension(m: &Multiarrangement1D, k: usize) -> Result<usize> {
    Ok(kernel_basis_integer(&condition_matrix(m, k)?).len())
}

/// The exponents `(e1, e2)` of the free module `D(m)`, with `e1 <= e2`.
pub fn multi_exponents(m: &Multiarrangement1D) -> Result<MultiExponents> {
    let total = m.total_multiplicity();
    let e1 = (0..=total / 2)
        .map(|k| multi_dimension(m, k).map(|n| (k, n)))
        .find(|r| !matches!(r, Ok((_, 0))))
        .transpose()?
        .map(|(k, _)| k)
        .ok_or_else(|| Error::Consistency("no derivation up to half the total multiplicity".into()))?;
    let e2 = total - e1;
    let expected = if e1 == e2 { 2 } else { e2 - e1 + 2 };
    let found = multi_dimension(m, e2)?;
    if found != expected {
        return Err(Error::Consistency(format!(
            "dimension {found} in degree {e2} does not match exponents ({e1}, {e2})"
        )));
    }
    Ok(MultiExponents { e1, e2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_points_balanced() {
        // Three simple points: exponents (1, 2).
        let m = Multiarrangement1D::from_ints(&[([1, 0], 1), ([0, 1], 1), ([1, 1], 1)]).unwrap();
        assert_eq!(multi_exponents(&m).unwrap(), MultiExponents { e1: 1, e2: 2 });
    }

    #[test]
    fn heavy_point_dominates() {
        // One point of multiplicity 5 and one simple point: (1, 5).
        let m = Multiarrangement1D::from_ints(&[([1, 0], 5), ([0, 1], 1)]).unwrap();
        assert_eq!(multi_exponents(&m).unwrap(), MultiExponents { e1: 1, e2: 5 });
        assert_eq!(multi_dimension(&m, 0).unwrap(), 0);
    }

    #[test]
    fn two_points_equal_weights() {
        let m = Multiarrangement1D::from_ints(&[([1, 0], 2), ([0, 1], 2)]).unwrap();
        assert_eq!(multi_exponents(&m).unwrap(), MultiExponents { e1: 2, e2: 2 });
    }
}
