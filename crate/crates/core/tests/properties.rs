//! Property tests for the stated invariants.

use logder_core::arrangement::{
    intersection_points, parse_arrangement, restrict, write_arrangement, Arrangement, Hyperplane, Multiarrangement1D,
};
use logder_core::exactalg::{basis_len, kernel_basis, monomial_basis, rank_exact, rank_mod_p, Matrix};
use logder_core::invariants::{
    determined_by_weak_combinatorics, predict_r_from_combinatorics, tau_max, tjurina, tjurina_from_points,
};
use logder_core::syzygy::multi_exponents;
use logder_core::{IntegerPolynomial, Rational, SyzygyEngine};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn poly_strategy() -> impl Strategy<Value = IntegerPolynomial> {
    (2usize..=4, 0usize..=6).prop_flat_map(|(n, deg)| {
        prop::collection::vec(-20i64..=20, basis_len(deg, n)).prop_map(move |c| {
            IntegerPolynomial::from_coeffs(n, deg, c.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

/// Distinct lines with small coefficients; `None` when a draw repeats a line.
fn arrangement_strategy(max_lines: usize) -> impl Strategy<Value = Option<Arrangement>> {
    prop::collection::vec(prop::array::uniform3(-3i64..=3), 3..=max_lines).prop_map(|rows| {
        let mut hs: Vec<Hyperplane> = Vec::new();
        for r in rows {
            let h = Hyperplane::from_ints(&r).ok()?;
            if !hs.contains(&h) {
                hs.push(h);
            }
        }
        let a = Arrangement::new(3, hs).ok()?;
        (a.is_essential() && a.degree() >= 3).then_some(a)
    })
}

fn rational_matrix(rows: &[Vec<i64>]) -> Matrix<Rational> {
    Matrix::from_rows(
        rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()).collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn euler_relation(p in poly_strategy()) {
        let n = p.nvars();
        let mut sum = IntegerPolynomial::zero(n, p.degree());
        if p.degree() > 0 {
            for i in 0..n {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::from(1);
                sum = sum.add(&p.partial_derivative(i).unwrap().mul(&IntegerPolynomial::linear(&e))).unwrap();
            }
        }
        prop_assert_eq!(sum, p.scale(&BigInt::from(p.degree())));
    }

    #[test]
    fn kernel_vectors_vanish_and_mod_p_bounds_rank(
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 1..6)
    ) {
        let m = rational_matrix(&rows);
        let basis = kernel_basis(&m);
        for v in &basis {
            for r in &rows {
                let dot: BigInt = r.iter().zip(v).map(|(&a, b)| BigInt::from(a) * b).sum();
                prop_assert!(dot.is_zero());
            }
        }
        let rank = rank_exact(&m);
        prop_assert_eq!(rank + basis.len(), 5);
        for p in [1_048_583u64, 3_000_017] {
            prop_assert!(rank_mod_p(&m, p).unwrap() <= rank);
        }
    }

    #[test]
    fn line_arrangement_invariants(a in arrangement_strategy(7)) {
        let Some(a) = a else { return Ok(()) };
        let d = a.degree();
        let inc = intersection_points(&a).unwrap();
        prop_assert_eq!(inc.pair_count(), d * (d - 1) / 2);
        prop_assert_eq!(tjurina(&inc.n), tjurina_from_points(&inc));
        prop_assert_eq!(inc.char_poly.clone(), inc.char_poly_mobius());
        for h in 0..d {
            let r = restrict(&a, h).unwrap();
            prop_assert_eq!(r.multiplicities.iter().sum::<usize>(), d - 1);
            prop_assert_eq!(r.multiplicities.len(), inc.points_on(h).len());
        }
        let text = write_arrangement(&a);
        prop_assert_eq!(parse_arrangement(&text).unwrap(), a);
    }

    #[test]
    fn mdr_properties(a in arrangement_strategy(6)) {
        let Some(a) = a else { return Ok(()) };
        let modular = SyzygyEngine::new();
        let exact = SyzygyEngine::exact();
        let r = modular.mdr(&a).unwrap().0;
        prop_assert_eq!(r, exact.mdr(&a).unwrap().0);
        let tau = tjurina(&a.incidence().unwrap().n);
        if r >= 1 {
            prop_assert!(tau <= tau_max(a.degree(), r).unwrap());
        }
        if let Some(v) = predict_r_from_combinatorics(&a).unwrap().value() {
            prop_assert_eq!(v, r);
        }
        if let Some(v) = determined_by_weak_combinatorics(&a).unwrap() {
            prop_assert_eq!(v, r);
        }
        for h in 0..a.degree() {
            let del = a.delete(h).unwrap();
            if del.is_essential() {
                let rp = modular.mdr(&del).unwrap().0;
                prop_assert!(rp <= r && r <= rp + 1);
            }
        }
    }

    #[test]
    fn multi_exponents_sum_and_dominant_weight(
        weights in prop::collection::vec(1usize..=5, 2..=4)
    ) {
        let pts: Vec<([i64; 2], usize)> =
            weights.iter().enumerate().map(|(i, &w)| ([1, i as i64], w)).collect();
        let m = Multiarrangement1D::from_ints(&pts).unwrap();
        let total: usize = weights.iter().sum();
        let e = multi_exponents(&m).unwrap();
        prop_assert_eq!(e.e1 + e.e2, total);
        prop_assert!(e.e1 <= e.e2);
        let max = *weights.iter().max().unwrap();
        if 2 * max >= total {
            prop_assert_eq!((e.e1, e.e2), (total - max, max));
        }
    }
}

#[test]
fn monomial_basis_order_and_length() {
    for n in 2..=5 {
        for deg in 0..=30 {
            let b = monomial_basis(deg, n);
            assert_eq!(b.len(), basis_len(deg, n));
            assert!(b.windows(2).all(|w| w[0].exponents() > w[1].exponents()), "n={n} deg={deg}");
        }
    }
}
