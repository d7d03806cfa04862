//! Fraction-free Gauss-Jordan elimination over the integers.
//!
//! Columns are processed left to right; the pivot of a column is the first
//! nonzero entry at or below the current row. Every intermediate entry is a
//! minor of the input, so the division by the previous pivot is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::normalize_primitive;
use crate::RationalMatrix;

pub(crate) struct Reduced {
    pub matrix: Matrix<BigInt>,
    pub pivot_cols: Vec<usize>,
    /// Common value of every pivot entry after reduction.
    pub pivot_value: BigInt,
}

pub(crate) fn reduce(mut a: Matrix<BigInt>) -> Reduced {
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = BigInt::one();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let piv = a.get(r, c).clone();
        let pivot_row = a.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            let row = a.row_mut(i);
            for (x, pr) in row.iter_mut().zip(&pivot_row) {
                let v = &piv * &*x - &f * pr;
                *x = if prev.is_one() { v } else { v.div_floor(&prev) };
            }
        }
        prev = piv;
        pivot_cols.push(c);
        r += 1;
    }
    Reduced { matrix: a, pivot_cols, pivot_value: prev }
}

fn clear_denominators(m: &RationalMatrix) -> Matrix<BigInt> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for r in 0..m.rows() {
        let lcm = m.row(r).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for c in 0..m.cols() {
            let x = m.get(r, c);
            out.set(r, c, x.numer() * (&lcm / x.denom()));
        }
    }
    out
}

/// Exact rank over the rationals.
pub fn rank_exact(m: &RationalMatrix) -> usize {
    reduce(clear_denominators(m)).pivot_cols.len()
}

/// Basis of the right kernel of an integer matrix: one vector per non-pivot
/// column, each primitive with a positive leading entry.
pub fn kernel_basis_integer(m: &Matrix<BigInt>) -> Vec<Vec<BigInt>> {
    let cols = m.cols();
    let red = reduce(m.clone());
    let mut is_pivot = vec![false; cols];
    for &c in &red.pivot_cols {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![BigInt::zero(); cols];
        v[f] = red.pivot_value.clone();
        for (i, &pc) in red.pivot_cols.iter().enumerate() {
            v[pc] = -red.matrix.get(i, f).clone();
        }
        normalize_primitive(&mut v);
        basis.push(v);
    }
    basis
}

/// Basis of the right kernel of a rational matrix with cleared, gcd-1,
/// sign-normalized integer vectors. Deterministic for identical input.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    kernel_basis_integer(&clear_denominators(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rat(rows: &[&[i64]]) -> RationalMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = rat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(kernel_basis(&m).is_empty());
        assert_eq!(rank_exact(&m), 3);
    }

    #[test]
    fn all_ones_row() {
        let m = rat(&[&[1, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: BigInt = v.iter().sum();
            assert!(s.is_zero());
        }
        // free columns 1 and 2: (-1, 1, 0) normalized to (1, -1, 0)
        assert_eq!(k[0], vec![BigInt::from(1), BigInt::from(-1), BigInt::from(0)]);
    }

    #[test]
    fn rational_entries() {
        let half = BigRational::new(1.into(), 2.into());
        let m = Matrix::from_rows(vec![vec![half.clone(), BigRational::from_integer(1.into())]])
            .unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![BigInt::from(2), BigInt::from(-1)]]);
    }

    #[test]
    fn dependent_rows() {
        let m = rat(&[&[2, 4, 6], &[1, 2, 3], &[0, 1, 1]]);
        assert_eq!(rank_exact(&m), 2);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![BigInt::from(1), BigInt::from(1), BigInt::from(-1)]]);
    }
}
