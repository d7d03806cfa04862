use std::fmt;

use num_traits::{FromPrimitive, Num, Signed};

use super::monomial::{basis_len, monomial_basis, monomial_index, Monomial};
use crate::{Error, Result};

/// A homogeneous polynomial stored densely over the graded-lex monomial basis
/// of its degree. The zero polynomial exists at every degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousPolynomial<T> {
    nvars: usize,
    degree: usize,
    coeffs: Vec<T>,
}

impl<T> HomogeneousPolynomial<T>
where
    T: Num + Clone,
{
    pub fn zero(nvars: usize, degree: usize) -> Self {
        HomogeneousPolynomial { nvars, degree, coeffs: vec![T::zero(); basis_len(degree, nvars)] }
    }

    pub fn from_coeffs(nvars: usize, degree: usize, coeffs: Vec<T>) -> Result<Self> {
        let expected = basis_len(degree, nvars);
        if coeffs.len() != expected {
            return Err(Error::Arity { expected, found: coeffs.len() });
        }
        Ok(HomogeneousPolynomial { nvars, degree, coeffs })
    }

    /// The linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[T]) -> Self {
        HomogeneousPolynomial { nvars: coeffs.len(), degree: 1, coeffs: coeffs.to_vec() }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        HomogeneousPolynomial { nvars, degree: 0, coeffs: vec![c] }
    }

    pub fn from_terms(nvars: usize, degree: usize, terms: &[(Monomial, T)]) -> Result<Self> {
        let mut p = Self::zero(nvars, degree);
        for (m, c) in terms {
            if m.nvars() != nvars || m.degree() != degree {
                return Err(Error::Precondition(format!("monomial {m} does not fit degree {degree}")));
            }
            let i = m.index();
            p.coeffs[i] = p.coeffs[i].clone() + c.clone();
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        if m.degree() != self.degree || m.nvars() != self.nvars {
            return T::zero();
        }
        self.coeffs[m.index()].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &T)> + '_ {
        monomial_basis(self.degree, self.nvars)
            .into_iter()
            .zip(self.coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(HomogeneousPolynomial { nvars: self.nvars, degree: self.degree, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(HomogeneousPolynomial { nvars: self.nvars, degree: self.degree, coeffs })
    }

    pub fn scale(&self, c: &T) -> Self {
        HomogeneousPolynomial {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials over different rings");
        let mut out = Self::zero(self.nvars, self.degree + other.degree);
        let left = monomial_basis(self.degree, self.nvars);
        let right = monomial_basis(other.degree, other.nvars);
        let mut exps = vec![0u32; self.nvars];
        for (ma, a) in left.iter().zip(&self.coeffs) {
            if a.is_zero() {
                continue;
            }
            for (mb, b) in right.iter().zip(&other.coeffs) {
                if b.is_zero() {
                    continue;
                }
                for (k, e) in exps.iter_mut().enumerate() {
                    *e = ma.exponents()[k] + mb.exponents()[k];
                }
                let i = monomial_index(&exps);
                out.coeffs[i] = out.coeffs[i].clone() + a.clone() * b.clone();
            }
        }
        out
    }

    /// Multiplies by a single monomial, shifting coefficients.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut out = Self::zero(self.nvars, self.degree + m.degree());
        for (mono, c) in monomial_basis(self.degree, self.nvars).iter().zip(&self.coeffs) {
            if !c.is_zero() {
                out.coeffs[mono.mul(m).index()] = c.clone();
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[T]) -> T {
        let mut acc = T::zero();
        for (m, c) in self.terms() {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    term = term * x.clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    pub fn map<U, F>(&self, f: F) -> HomogeneousPolynomial<U>
    where
        F: Fn(&T) -> U,
    {
        HomogeneousPolynomial {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::Precondition(format!(
                "shape mismatch: ({}, deg {}) vs ({}, deg {})",
                self.nvars, self.degree, other.nvars, other.degree
            )));
        }
        Ok(())
    }
}

impl<T> HomogeneousPolynomial<T>
where
    T: Num + Clone + FromPrimitive,
{
    /// `∂p/∂x_var`. The derivative of a constant is the zero polynomial of degree 0.
    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::IndexOutOfRange { index: var, len: self.nvars });
        }
        if self.degree == 0 {
            return Ok(Self::zero(self.nvars, 0));
        }
        let mut out = Self::zero(self.nvars, self.degree - 1);
        for (m, c) in monomial_basis(self.degree, self.nvars).iter().zip(&self.coeffs) {
            let e = m.exponents()[var];
            if e == 0 || c.is_zero() {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            let factor = T::from_u32(e).expect("exponent fits the scalar type");
            out.coeffs[monomial_index(&exps)] = c.clone() * factor;
        }
        Ok(out)
    }
}

impl<T> fmt::Display for HomogeneousPolynomial<T>
where
    T: Num + Clone + Signed + fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            let mono = if m.degree() == 0 { String::new() } else { m.to_string() };
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IntegerPolynomial, RationalPolynomial};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn lin(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::linear(&c.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>())
    }

    #[test]
    fn derivative_of_xyz() {
        let xyz = lin(&[1, 0, 0]).mul(&lin(&[0, 1, 0])).mul(&lin(&[0, 0, 1]));
        let dx = xyz.partial_derivative(0).unwrap();
        assert_eq!(dx, lin(&[0, 1, 0]).mul(&lin(&[0, 0, 1])));
    }

    #[test]
    fn derivative_of_difference_of_squares() {
        let x2 = lin(&[1, 0, 0]).mul(&lin(&[1, 0, 0]));
        let y2 = lin(&[0, 1, 0]).mul(&lin(&[0, 1, 0]));
        let p = x2.sub(&y2).unwrap();
        assert_eq!(p.partial_derivative(1).unwrap(), lin(&[0, -2, 0]));
    }

    #[test]
    fn derivative_errors_and_constants() {
        let p = lin(&[1, 2, 3]);
        assert!(matches!(p.partial_derivative(3), Err(Error::IndexOutOfRange { .. })));
        let c = IntegerPolynomial::constant(3, BigInt::from(7));
        let d = c.partial_derivative(1).unwrap();
        assert!(d.is_zero());
        assert_eq!(d.degree(), 0);
    }

    #[test]
    fn euler_identity_rational() {
        // x^2 y + z^3
        let q = |v: [i64; 3]| -> RationalPolynomial {
            RationalPolynomial::linear(&v.map(|c| BigRational::from_integer(c.into())))
        };
        let (x, y, z) = (q([1, 0, 0]), q([0, 1, 0]), q([0, 0, 1]));
        let p = x.mul(&x).mul(&y).add(&z.mul(&z).mul(&z)).unwrap();
        let vars = [x, y, z];
        let mut acc = RationalPolynomial::zero(3, 3);
        for (i, v) in vars.iter().enumerate() {
            acc = acc.add(&v.mul(&p.partial_derivative(i).unwrap())).unwrap();
        }
        assert_eq!(acc, p.scale(&BigRational::from_integer(3.into())));
    }

    #[test]
    fn display() {
        let p = lin(&[1, -1, 0]).mul(&lin(&[0, 0, 2]));
        assert_eq!(p.to_string(), "2*x1*x3 - 2*x2*x3");
    }
}
