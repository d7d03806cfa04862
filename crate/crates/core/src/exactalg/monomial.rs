use std::cmp::Ordering;
use std::fmt;

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Number of monomials of total degree `degree` in `nvars` variables.
pub fn basis_len(degree: usize, nvars: usize) -> usize {
    if nvars == 0 {
        return usize::from(degree == 0);
    }
    binomial(degree + nvars - 1, nvars - 1)
}

/// Exponent vector of a monomial in `x_1, ..., x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    /// Position of this monomial inside `monomial_basis(self.degree(), self.nvars())`.
    pub fn index(&self) -> usize {
        monomial_index(&self.exps)
    }
}

/// Graded lexicographic order with `x_1 > x_2 > ... > x_n`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if wrote {
                write!(f, "*")?;
            }
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of the given degree, strictly decreasing in graded-lex order.
pub fn monomial_basis(degree: usize, nvars: usize) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(basis_len(degree, nvars));
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    let mut current = vec![0u32; nvars];
    fill(&mut current, 0, degree as u32, &mut out);
    out
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// Rank of an exponent vector within the decreasing graded-lex basis of its degree.
pub fn monomial_index(exps: &[u32]) -> usize {
    let n = exps.len();
    let mut remaining: usize = exps.iter().map(|&e| e as usize).sum();
    let mut index = 0;
    for (i, &e) in exps.iter().enumerate() {
        if i + 1 == n {
            break;
        }
        let e = e as usize;
        // monomials agreeing on the prefix but with a larger exponent here
        for larger in (e + 1)..=remaining {
            index += basis_len(remaining - larger, n - i - 1);
        }
        remaining -= e;
    }
    index
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        assert_eq!(monomial_basis(0, 3), vec![Monomial::one(3)]);
        let lin: Vec<Vec<u32>> =
            monomial_basis(1, 3).into_iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(lin, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let quad = monomial_basis(2, 3);
        assert_eq!(quad.len(), 6);
        assert_eq!(quad[0].exponents(), &[2, 0, 0]);
        assert_eq!(quad[1].exponents(), &[1, 1, 0]);
        assert_eq!(quad[5].exponents(), &[0, 0, 2]);
    }

    #[test]
    fn decreasing_with_binomial_length() {
        for nvars in 2..=5 {
            for degree in 0..=30 {
                let basis = monomial_basis(degree, nvars);
                assert_eq!(basis.len(), binomial(degree + nvars - 1, nvars - 1));
                for w in basis.windows(2) {
                    assert!(w[0] > w[1]);
                }
                if degree <= 12 {
                    for (i, m) in basis.iter().enumerate() {
                        assert_eq!(m.index(), i);
                    }
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(44, 2), 946);
        assert_eq!(basis_len(3, 0), 0);
        assert_eq!(basis_len(0, 0), 1);
    }
}
