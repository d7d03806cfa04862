//! Linear algebra over `Z/pZ` for word-sized primes `2^20 < p < 2^32`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

use super::matrix::Matrix;
use crate::RationalMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("prime {0} divides a denominator")]
    BadPrime(u64),
    #[error("modulus {0} must be a prime in (2^20, 2^32)")]
    InvalidModulus(u64),
}

/// Fixed primes used by the deterministic elimination path.
pub const DEFAULT_PRIMES: [u64; 8] = [
    4_294_967_291,
    4_294_967_279,
    4_294_967_231,
    4_294_967_197,
    4_294_967_189,
    4_294_967_161,
    4_294_967_143,
    4_294_967_111,
];

const MIN_MODULUS: u64 = 1 << 20;
const MAX_MODULUS: u64 = 1 << 32;

/// A prime modulus with a precomputed Barrett constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Modulus {
    p: u64,
    barrett: u64,
}

impl Modulus {
    pub fn new(p: u64) -> Result<Self, ModularError> {
        if p <= MIN_MODULUS || p >= MAX_MODULUS || !is_prime(p) {
            return Err(ModularError::InvalidModulus(p));
        }
        Ok(Modulus { p, barrett: u64::MAX / p })
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.p
    }

    /// Reduces any `x < 2^64`.
    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn from_bigint(&self, x: &BigInt) -> u64 {
        let r = x.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits u64")
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        (x as i128).rem_euclid(self.p as i128) as u64
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn to_signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn mulmod_u128(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u128(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u128(acc, b, m);
        }
        b = mulmod_u128(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(mut n: u64) -> u64 {
    while !is_prime(n) {
        n += 1;
    }
    n
}

/// A uniformly drawn prime in `(2^20, 2^31)`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let candidate = next_prime(rng.gen_range(MIN_MODULUS + 1..(1u64 << 31)));
        if candidate < MAX_MODULUS {
            return candidate;
        }
    }
}

/// Dense matrix of residues.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    pub(crate) rows: usize,
    pub(crate) cols: usize,
    pub(crate) data: Vec<u64>,
    pub(crate) modulus: Modulus,
}

/// Outcome of a reduced row echelon elimination mod p.
#[derive(Clone, Debug)]
pub struct ModElimination {
    pub modulus: Modulus,
    pub rank: usize,
    /// Original row index used as pivot for each pivot column, in order.
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
    pub free_cols: Vec<usize>,
    /// First `rank` rows of the reduced row echelon form (pivot entries 1).
    pub(crate) rref: Vec<Vec<u64>>,
    pub(crate) cols: usize,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: Modulus) -> Self {
        ModMatrix { rows, cols, data: vec![0; rows * cols], modulus }
    }

    pub fn from_integer(m: &Matrix<BigInt>, modulus: Modulus) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols(), modulus);
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = m.get(r, c);
                if !v.is_zero() {
                    out.data[r * m.cols() + c] = modulus.from_bigint(v);
                }
            }
        }
        out
    }

    pub fn from_rows(rows: Vec<Vec<u64>>, cols: usize, modulus: Modulus) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        ModMatrix { rows: nrows, cols, data, modulus }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: u64) {
        let i = r * self.cols + c;
        self.data[i] = self.modulus.add(self.data[i], v);
    }

    /// Gauss-Jordan elimination with first-nonzero pivoting per column.
    pub fn eliminate(mut self) -> ModElimination {
        let (rows, cols) = (self.rows, self.cols);
        let md = self.modulus;
        let mut order: Vec<usize> = (0..rows).collect();
        let mut pivot_cols = Vec::new();
        let mut pivot_rows = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
                order.swap(p, r);
            }
            let inv = md.inv(self.data[r * cols + c]);
            for j in c..cols {
                let idx = r * cols + j;
                self.data[idx] = md.mul(self.data[idx], inv);
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate_row = |row: &mut [u64]| {
                let f = row[c];
                if f == 0 {
                    return;
                }
                let nf = md.neg(f);
                for j in c..cols {
                    let pv = pivot_row[j];
                    if pv != 0 {
                        row[j] = md.reduce(row[j] + nf * pv);
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate_row);
            after.chunks_mut(cols).for_each(eliminate_row);
            pivot_cols.push(c);
            pivot_rows.push(order[r]);
            r += 1;
        }
        let mut is_pivot = vec![false; cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let free_cols = (0..cols).filter(|&c| !is_pivot[c]).collect();
        let rref = (0..r).map(|i| self.data[i * cols..(i + 1) * cols].to_vec()).collect();
        ModElimination { modulus: md, rank: r, pivot_rows, pivot_cols, free_cols, rref, cols }
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<ModMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let md = self.modulus;
        let mut aug = ModMatrix::zeros(n, 2 * n, md);
        for r in 0..n {
            aug.data[r * 2 * n..r * 2 * n + n].copy_from_slice(&self.data[r * n..(r + 1) * n]);
            aug.data[r * 2 * n + n + r] = 1;
        }
        let el = aug.eliminate();
        if el.pivot_cols.len() < n || el.pivot_cols[n - 1] != n - 1 {
            return None;
        }
        let mut inv = ModMatrix::zeros(n, n, md);
        for (r, row) in el.rref.iter().enumerate() {
            inv.data[r * n..(r + 1) * n].copy_from_slice(&row[n..]);
        }
        Some(inv)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let md = self.modulus;
        (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                // each product < 2^64; reduce after every addition
                row.iter().zip(v).fold(0u64, |acc, (&a, &b)| md.add(acc, md.mul(a, b)))
            })
            .collect()
    }
}

impl ModElimination {
    pub fn nullity(&self) -> usize {
        self.cols - self.rank
    }

    /// Kernel vector mod p with a 1 in free column `f` and zeros in the other free columns.
    pub fn kernel_vector(&self, f: usize) -> Vec<u64> {
        let md = self.modulus;
        let mut v = vec![0u64; self.cols];
        v[f] = 1;
        for (row, &pc) in self.rref.iter().zip(&self.pivot_cols) {
            v[pc] = md.neg(row[f]);
        }
        v
    }

    /// Reduces `v` against the row space; returns the residue (zero iff `v` lies in it).
    pub fn reduce_against_rows(&self, v: &mut [u64]) {
        let md = self.modulus;
        for (row, &pc) in self.rref.iter().zip(&self.pivot_cols) {
            let f = v[pc];
            if f == 0 {
                continue;
            }
            let nf = md.neg(f);
            for (x, &r) in v.iter_mut().zip(row) {
                if r != 0 {
                    *x = md.reduce(*x + nf * r);
                }
            }
        }
    }
}

/// Incrementally built row echelon basis mod p.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    modulus: Modulus,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    pub fn new(modulus: Modulus) -> Self {
        ModEchelon { modulus, rows: Vec::new() }
    }

    /// Starts from the rows of an elimination, which are already reduced.
    pub fn from_elimination(e: &ModElimination) -> Self {
        ModEchelon {
            modulus: e.modulus,
            rows: e.pivot_cols.iter().copied().zip(e.rref.iter().cloned()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u64]) {
        let md = self.modulus;
        for (pc, row) in &self.rows {
            let f = v[*pc];
            if f == 0 {
                continue;
            }
            let nf = md.neg(f);
            for (x, &r) in v.iter_mut().zip(row) {
                if r != 0 {
                    *x = md.reduce(*x + nf * r);
                }
            }
        }
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.modulus.inv(v[pc]);
        for x in v.iter_mut() {
            *x = self.modulus.mul(*x, inv);
        }
        self.rows.push((pc, v));
        true
    }
}

/// Rank of a rational matrix reduced mod `prime`.
pub fn rank_mod_p(m: &RationalMatrix, prime: u64) -> Result<usize, ModularError> {
    let md = Modulus::new(prime)?;
    let mut mm = ModMatrix::zeros(m.rows(), m.cols(), md);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let x = m.get(r, c);
            if x.is_zero() {
                continue;
            }
            let den = md.from_bigint(x.denom());
            if den == 0 {
                return Err(ModularError::BadPrime(prime));
            }
            let v = md.mul(md.from_bigint(x.numer()), md.inv(den));
            mm.set(r, c, v);
        }
    }
    Ok(mm.eliminate().rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn primes() {
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(4_294_967_293));
        assert_eq!(next_prime((1 << 20) + 1), 1_048_583);
        for p in DEFAULT_PRIMES {
            assert!(Modulus::new(p).is_ok());
        }
        assert!(Modulus::new(101).is_err());
    }

    #[test]
    fn barrett_reduction_matches_remainder() {
        let md = Modulus::new(4_294_967_291).unwrap();
        let mut x: u64 = 0x9e37_79b9_7f4a_7c15;
        for _ in 0..10_000 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            assert_eq!(md.reduce(x), x % md.value());
        }
        assert_eq!(md.reduce(u64::MAX), u64::MAX % md.value());
    }

    #[test]
    fn rank_of_identity_and_ones() {
        let p = next_prime((1 << 20) + 7);
        let id: RationalMatrix = Matrix::identity(3);
        assert_eq!(rank_mod_p(&id, p).unwrap(), 3);
        let ones = Matrix::from_rows(vec![vec![BigRational::from_integer(1.into()); 3]]).unwrap();
        assert_eq!(rank_mod_p(&ones, p).unwrap(), 1);
    }

    #[test]
    fn bad_prime_detected() {
        let p = 1_048_583u64;
        let m = Matrix::from_rows(vec![vec![BigRational::new(1.into(), p.into())]]).unwrap();
        assert_eq!(rank_mod_p(&m, p), Err(ModularError::BadPrime(p)));
    }

    #[test]
    fn echelon_detects_dependence() {
        let md = Modulus::new(DEFAULT_PRIMES[0]).unwrap();
        let mut e = ModEchelon::new(md);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(e.insert(vec![0, 1, 1]));
        assert!(!e.insert(vec![2, 5, 7]));
        assert!(e.insert(vec![0, 0, 5]));
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn inverse_roundtrip() {
        let md = Modulus::new(DEFAULT_PRIMES[0]).unwrap();
        let m = ModMatrix::from_rows(vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]], 3, md);
        let inv = m.inverse().unwrap();
        for c in 0..3 {
            let col: Vec<u64> = (0..3).map(|r| inv.get(r, c)).collect();
            let e = m.mul_vec(&col);
            for (r, x) in e.iter().enumerate() {
                assert_eq!(*x, u64::from(r == c));
            }
        }
        let singular = ModMatrix::from_rows(vec![vec![1, 2], vec![2, 4]], 2, md);
        assert!(singular.inverse().is_none());
    }
}
