//! The linear map `(a_1, ..., a_ℓ) ↦ Σ a_i ∂_i Q` from `(S_r)^ℓ` to `S_{d-1+r}`.
//!
//! Unknowns are laid out component by component, each over the graded-lex
//! basis of `S_r`; rows follow the basis of `S_{d-1+r}`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arrangement::Arrangement;
use crate::exactalg::{basis_len, monomial_basis, monomial_index, Matrix, ModMatrix, Modulus};

pub(crate) struct Jacobian {
    pub nvars: usize,
    pub d: usize,
    /// Terms of `∂_i Q` as (exponents, coefficient).
    partials: Vec<Vec<(Vec<u32>, BigInt)>>,
}

impl Jacobian {
    pub fn new(a: &Arrangement) -> Self {
        let q = a.defining_polynomial();
        let partials = (0..a.nvars())
            .map(|i| {
                let p = q.partial_derivative(i).expect("index in range");
                p.terms()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
                    .collect()
            })
            .collect();
        Jacobian { nvars: a.nvars(), d: a.degree(), partials }
    }

    pub fn rows(&self, r: usize) -> usize {
        basis_len((self.d + r).saturating_sub(1), self.nvars)
    }

    pub fn cols(&self, r: usize) -> usize {
        self.nvars * basis_len(r, self.nvars)
    }

    /// Calls `f(row, col, coefficient)` for every nonzero entry at degree `r`.
    fn for_each_entry(&self, r: usize, mut f: impl FnMut(usize, usize, &BigInt)) {
        let basis = monomial_basis(r, self.nvars);
        let len = basis.len();
        let mut exps = vec![0u32; self.nvars];
        for (i, terms) in self.partials.iter().enumerate() {
            for (mi, mu) in basis.iter().enumerate() {
                for (nu, c) in terms {
                    for (k, e) in exps.iter_mut().enumerate() {
                        *e = mu.exponents()[k] + nu[k];
                    }
                    f(monomial_index(&exps), i * len + mi, c);
                }
            }
        }
    }

    pub fn integer_matrix(&self, r: usize) -> Matrix<BigInt> {
        let mut m = Matrix::zeros(self.rows(r), self.cols(r));
        self.for_each_entry(r, |row, col, c| m.set(row, col, c.clone()));
        m
    }

    pub fn mod_matrix(&self, r: usize, md: Modulus) -> ModMatrix {
        let residues: Vec<Vec<u64>> = self
            .partials
            .iter()
            .map(|ts| ts.iter().map(|(_, c)| md.from_bigint(c)).collect())
            .collect();
        let mut m = ModMatrix::zeros(self.rows(r), self.cols(r), md);
        let basis = monomial_basis(r, self.nvars);
        let len = basis.len();
        let mut exps = vec![0u32; self.nvars];
        for (i, terms) in self.partials.iter().enumerate() {
            for (mi, mu) in basis.iter().enumerate() {
                for (t, (nu, _)) in terms.iter().enumerate() {
                    for (k, e) in exps.iter_mut().enumerate() {
                        *e = mu.exponents()[k] + nu[k];
                    }
                    m.set(monomial_index(&exps), i * len + mi, residues[i][t]);
                }
            }
        }
        m
    }
}

/// Coordinates of `μ·θ` in the degree `k` layout, for `θ` given in the degree
/// `e` layout and every monomial `μ` of degree `k - e`.
pub(crate) fn monomial_multiples(nvars: usize, e: usize, theta: &[BigInt], k: usize) -> Vec<Vec<BigInt>> {
    let src = monomial_basis(e, nvars);
    let (src_len, dst_len) = (src.len(), basis_len(k, nvars));
    let mut exps = vec![0u32; nvars];
    monomial_basis(k - e, nvars)
        .iter()
        .map(|mu| {
            let mut v = vec![BigInt::zero(); nvars * dst_len];
            for i in 0..nvars {
                for (si, nu) in src.iter().enumerate() {
                    let c = &theta[i * src_len + si];
                    if c.is_zero() {
                        continue;
                    }
                    for (t, x) in exps.iter_mut().enumerate() {
                        *x = mu.exponents()[t] + nu.exponents()[t];
                    }
                    v[i * dst_len + monomial_index(&exps)] = c.clone();
                }
            }
            v
        })
        .collect()
}
