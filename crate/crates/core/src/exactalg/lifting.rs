//! p-adic (Dixon) lifting for square nonsingular integer systems, with
//! rational reconstruction and exact verification of every returned solution.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use super::matrix::Matrix;
use super::modular::{ModElimination, ModMatrix, Modulus};
use super::normalize_primitive;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("system matrix is singular modulo {0}")]
    Singular(u64),
    #[error("prime {0} is unlucky for this matrix")]
    UnluckyPrime(u64),
    #[error("lifting exceeded the determinant bound without a verified solution")]
    BoundExceeded,
}

/// Solution `numerators / denominator` of one right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedSolution {
    pub numerators: Vec<BigInt>,
    pub denominator: BigInt,
}

/// Returns `(n, d)` with `n/d = a mod m`, `|n|, d <= sqrt(m/2)`, if such a pair exists.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r2) = r0.div_rem(&r1);
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

fn symmetric(x: BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2u32 > *m {
        r - m
    } else {
        r
    }
}

/// Reconstructs a whole vector with a shared denominator.
fn reconstruct_vector(x: &[BigInt], m: &BigInt) -> Option<LiftedSolution> {
    let bound = (m / 2u32).sqrt();
    let mut den = BigInt::one();
    let mut nums = Vec::with_capacity(x.len());
    for xi in x {
        let scaled = symmetric(xi * &den, m);
        if scaled.abs() <= bound {
            nums.push(scaled);
            continue;
        }
        let (n, e) = rational_reconstruction(&scaled, m)?;
        for prev in nums.iter_mut() {
            *prev *= &e;
        }
        den *= &e;
        if den > bound {
            return None;
        }
        nums.push(n);
    }
    Some(LiftedSolution { numerators: nums, denominator: den })
}

fn log2_norm(v: impl Iterator<Item = BigInt>) -> u64 {
    let sq: BigInt = v.map(|x| &x * &x).sum();
    sq.bits() / 2 + 1
}

enum Residual {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

/// Square system with its mod-p inverse; `small` mirrors the entries when they fit in `i64`.
struct Lifter<'a> {
    n: usize,
    a: &'a Matrix<BigInt>,
    small: Option<Vec<i64>>,
    inv: ModMatrix,
    md: Modulus,
    col_bits: u64,
}

impl<'a> Lifter<'a> {
    fn new(a: &'a Matrix<BigInt>, md: Modulus) -> Result<Self, LiftError> {
        let n = a.rows();
        assert_eq!(n, a.cols());
        let inv = ModMatrix::from_integer(a, md).inverse().ok_or(LiftError::Singular(md.value()))?;
        let small = (0..n * n)
            .map(|i| a.get(i / n, i % n).to_i64().filter(|v| v.unsigned_abs() < 1 << 62))
            .collect();
        let col_bits = (0..n).map(|c| log2_norm((0..n).map(|r| a.get(r, c).clone()))).sum();
        Ok(Lifter { n, a, small, inv, md, col_bits })
    }

    fn solve(&self, b: &[BigInt]) -> Result<LiftedSolution, LiftError> {
        let md = self.md;
        let p = BigInt::from(md.value());
        let bound_bits = 2 * (self.col_bits + log2_norm(b.iter().cloned())) + 2;
        let mut residual = match b.iter().map(|v| v.to_i128()).collect::<Option<Vec<_>>>() {
            Some(r) if self.small.is_some() => Residual::Small(r),
            _ => Residual::Big(b.to_vec()),
        };
        let mut x = vec![BigInt::zero(); self.n];
        let mut modulus = BigInt::one();
        let mut next_check = 4usize;
        let mut step = 0usize;
        loop {
            let res_mod: Vec<u64> = match &residual {
                Residual::Small(r) => {
                    r.iter().map(|&v| v.rem_euclid(md.value() as i128) as u64).collect()
                }
                Residual::Big(r) => r.iter().map(|v| md.from_bigint(v)).collect(),
            };
            let y: Vec<i64> =
                self.inv.mul_vec(&res_mod).into_iter().map(|v| md.to_signed(v)).collect();
            for (xi, &yi) in x.iter_mut().zip(&y) {
                if yi != 0 {
                    *xi += &modulus * yi;
                }
            }
            modulus *= &p;
            step += 1;
            residual = match residual {
                Residual::Small(r) => match self.update_small(&r, &y) {
                    Some(next) => Residual::Small(next),
                    None => {
                        let mut big: Vec<BigInt> = r.into_iter().map(BigInt::from).collect();
                        self.update_big(&mut big, &y, &p);
                        Residual::Big(big)
                    }
                },
                Residual::Big(mut r) => {
                    self.update_big(&mut r, &y, &p);
                    Residual::Big(r)
                }
            };
            let exhausted = modulus.bits() > bound_bits;
            if step >= next_check || exhausted {
                if let Some(sol) = self.try_accept(&x, &modulus, b) {
                    return Ok(sol);
                }
                if exhausted {
                    return Err(LiftError::BoundExceeded);
                }
                next_check = step + step / 4 + 1;
            }
        }
    }

    /// `(r - A y) / p` in `i128`, or `None` on overflow.
    fn update_small(&self, res: &[i128], y: &[i64]) -> Option<Vec<i128>> {
        let a = self.small.as_ref()?;
        let n = self.n;
        let p = self.md.value() as i128;
        res.iter()
            .enumerate()
            .map(|(r, &ri)| {
                let mut acc = ri;
                for (&aij, &yj) in a[r * n..(r + 1) * n].iter().zip(y) {
                    if aij != 0 && yj != 0 {
                        acc = acc.checked_sub(aij as i128 * yj as i128)?;
                    }
                }
                debug_assert_eq!(acc % p, 0);
                Some(acc / p)
            })
            .collect()
    }

    fn update_big(&self, res: &mut [BigInt], y: &[i64], p: &BigInt) {
        for (r, ri) in res.iter_mut().enumerate() {
            for (c, &yc) in y.iter().enumerate() {
                if yc != 0 {
                    let a = self.a.get(r, c);
                    if !a.is_zero() {
                        *ri -= a * yc;
                    }
                }
            }
            debug_assert!((&*ri % p).is_zero());
            *ri = &*ri / p;
        }
    }

    /// Reconstructs and checks `A x = b` exactly.
    fn try_accept(&self, x: &[BigInt], modulus: &BigInt, b: &[BigInt]) -> Option<LiftedSolution> {
        let sol = reconstruct_vector(x, modulus)?;
        for (r, br) in b.iter().enumerate() {
            let mut acc = -(br * &sol.denominator);
            for (c, num) in sol.numerators.iter().enumerate() {
                let a = self.a.get(r, c);
                if !a.is_zero() && !num.is_zero() {
                    acc += a * num;
                }
            }
            if !acc.is_zero() {
                return None;
            }
        }
        Some(sol)
    }
}

/// Solves `A x = b` exactly for each right-hand side, where `A` is square and
/// nonsingular modulo `modulus`. Solutions are verified exactly before return.
pub fn solve_lifted(
    a: &Matrix<BigInt>,
    rhs: &[Vec<BigInt>],
    modulus: Modulus,
) -> Result<Vec<LiftedSolution>, LiftError> {
    if a.rows() == 0 {
        return Ok(rhs
            .iter()
            .map(|_| LiftedSolution { numerators: Vec::new(), denominator: BigInt::one() })
            .collect());
    }
    let lifter = Lifter::new(a, modulus)?;
    rhs.par_iter().map(|b| lifter.solve(b)).collect()
}

/// Lifts the mod-p kernel vectors of `m` attached to the free columns `free`
/// (as produced by `elim`) to exact primitive integer kernel vectors.
///
/// Each returned vector is checked against every row of `m`; a failure means
/// the prime does not preserve the rank of `m`.
pub fn lift_kernel_vectors(
    m: &Matrix<BigInt>,
    elim: &ModElimination,
    free: &[usize],
) -> Result<Vec<Vec<BigInt>>, LiftError> {
    let rho = elim.rank;
    let mut a = Matrix::zeros(rho, rho);
    for (i, &r) in elim.pivot_rows.iter().enumerate() {
        for (j, &c) in elim.pivot_cols.iter().enumerate() {
            a.set(i, j, m.get(r, c).clone());
        }
    }
    let rhs: Vec<Vec<BigInt>> = free
        .iter()
        .map(|&f| elim.pivot_rows.iter().map(|&r| -m.get(r, f)).collect())
        .collect();
    let sols = solve_lifted(&a, &rhs, elim.modulus)?;
    let p = elim.modulus.value();
    free.par_iter()
        .zip(sols)
        .map(|(&f, sol)| {
            let mut v = vec![BigInt::zero(); m.cols()];
            v[f] = sol.denominator;
            for (&c, num) in elim.pivot_cols.iter().zip(sol.numerators) {
                v[c] = num;
            }
            if !is_kernel_vector(m, &v) {
                return Err(LiftError::UnluckyPrime(p));
            }
            normalize_primitive(&mut v);
            Ok(v)
        })
        .collect()
}

/// Exact check `m v = 0`.
pub fn is_kernel_vector(m: &Matrix<BigInt>, v: &[BigInt]) -> bool {
    let support: Vec<usize> = (0..v.len()).filter(|&c| !v[c].is_zero()).collect();
    (0..m.rows()).into_par_iter().all(|r| {
        let row = m.row(r);
        let mut acc = BigInt::zero();
        for &c in &support {
            if row[c].sign() != Sign::NoSign {
                acc += &row[c] * &v[c];
            }
        }
        acc.is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::modular::DEFAULT_PRIMES;

    fn int(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn reconstruction_recovers_fraction() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let inv3 = BigInt::from(3).extended_gcd(&m).x.mod_floor(&m);
        let a = (BigInt::from(-7) * inv3).mod_floor(&m);
        assert_eq!(rational_reconstruction(&a, &m), Some((BigInt::from(-7), BigInt::from(3))));
        assert_eq!(rational_reconstruction(&BigInt::from(5), &m), Some((BigInt::from(5), BigInt::one())));
    }

    #[test]
    fn solves_small_system() {
        let a = int(&[&[2, 1], &[1, 3]]);
        let md = Modulus::new(DEFAULT_PRIMES[0]).unwrap();
        let sol = solve_lifted(&a, &[vec![BigInt::from(1), BigInt::from(2)]], md).unwrap();
        // x = (1/5, 3/5)
        assert_eq!(sol[0].denominator, BigInt::from(5));
        assert_eq!(sol[0].numerators, vec![BigInt::from(1), BigInt::from(3)]);
    }

    #[test]
    fn solves_system_with_huge_entries() {
        let big = BigInt::from(3).pow(80u32);
        let a = Matrix::from_rows(vec![
            vec![big.clone(), BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(2), big.clone() + 1, BigInt::from(5)],
            vec![BigInt::from(7), BigInt::from(-1), big.clone() - 4],
        ])
        .unwrap();
        let b = vec![BigInt::from(1), -big.clone(), BigInt::from(11)];
        let md = Modulus::new(DEFAULT_PRIMES[1]).unwrap();
        let sol = solve_lifted(&a, std::slice::from_ref(&b), md).unwrap().remove(0);
        for (r, br) in b.iter().enumerate() {
            let lhs: BigInt = (0..3).map(|c| a.get(r, c) * &sol.numerators[c]).sum();
            assert_eq!(lhs, br * &sol.denominator);
        }
    }

    #[test]
    fn lifts_kernel_of_ones_row() {
        let m = int(&[&[1, 1, 1], &[2, 2, 2]]);
        let md = Modulus::new(DEFAULT_PRIMES[0]).unwrap();
        let elim = ModMatrix::from_integer(&m, md).eliminate();
        let free = elim.free_cols.clone();
        let k = lift_kernel_vectors(&m, &elim, &free).unwrap();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![BigInt::from(1), BigInt::from(-1), BigInt::from(0)]);
    }

    #[test]
    fn unlucky_prime_detected() {
        let p = DEFAULT_PRIMES[0] as i64;
        // rank 2 over Q, rank 1 mod p
        let m = int(&[&[1, 1], &[1, 1 + p]]);
        let md = Modulus::new(p as u64).unwrap();
        let elim = ModMatrix::from_integer(&m, md).eliminate();
        assert_eq!(elim.rank, 1);
        let free = elim.free_cols.clone();
        assert_eq!(lift_kernel_vectors(&m, &elim, &free), Err(LiftError::UnluckyPrime(p as u64)));
    }
}
