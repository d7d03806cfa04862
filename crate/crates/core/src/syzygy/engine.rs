//! Certified computation of `D0(A)` data.
//!
//! The modular strategy eliminates modulo a word-sized prime and certifies
//! every reported number exactly:
//!
//! - a mod-p nullity of zero is exact, because reduction mod p cannot raise
//!   the rank of an integer matrix;
//! - a positive nullity is confirmed by lifting the mod-p kernel vectors to
//!   exact rational vectors (Dixon lifting) and checking them against every
//!   row; a failed check marks the prime as unlucky and the next one is used;
//! - minimal generator counts are confirmed with exact annihilators of the
//!   span of lower-degree multiples.
//!
//! The exact strategy runs fraction-free elimination on the same matrices
//! and serves as the reference implementation.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::jacobian::{monomial_multiples, Jacobian};
use super::{koszul_syzygy, point_syzygy, Derivation, SyzygyProfile};
use crate::arrangement::{intersection_points, Arrangement, Hyperplane};
use crate::exactalg::{
    kernel_basis_integer, lift_kernel_vectors, random_prime, rank_exact, LiftError, Matrix,
    ModEchelon, ModMatrix, Modulus, DEFAULT_PRIMES,
};
use crate::{Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Elimination mod p with exact certification.
    Modular,
    /// Fraction-free elimination over the integers.
    Exact,
}

/// Comparison of one certified nullity with three random primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRecord {
    pub d: usize,
    pub degree: usize,
    pub nullity: usize,
    pub primes: [u64; 3],
    pub nullities: [usize; 3],
    pub agreeing: usize,
}

struct Audit {
    rng: ChaCha8Rng,
    records: Vec<AuditRecord>,
}

type Key = Vec<Hyperplane>;
/// Generators as (degree, coefficient vector).
type Generators = Vec<(usize, Vec<BigInt>)>;

pub struct SyzygyEngine {
    strategy: Strategy,
    primes: Vec<u64>,
    audit: Option<Mutex<Audit>>,
    mdr_cache: Mutex<HashMap<Key, (usize, Derivation)>>,
    dim_cache: Mutex<HashMap<(Key, usize), usize>>,
    profile_cache: Mutex<HashMap<(Key, usize), SyzygyProfile>>,
}

impl Default for SyzygyEngine {
    fn default() -> Self {
        Self::new()
    }
}

fn unlucky_or_bug(e: LiftError) -> Result<()> {
    match e {
        LiftError::UnluckyPrime(_) => Ok(()),
        other => Err(Error::Consistency(format!("lifting failed: {other}"))),
    }
}

impl SyzygyEngine {
    pub fn new() -> Self {
        SyzygyEngine {
            strategy: Strategy::Modular,
            primes: DEFAULT_PRIMES.to_vec(),
            audit: None,
            mdr_cache: Mutex::new(HashMap::new()),
            dim_cache: Mutex::new(HashMap::new()),
            profile_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn exact() -> Self {
        SyzygyEngine { strategy: Strategy::Exact, ..Self::new() }
    }

    pub fn with_primes(mut self, primes: Vec<u64>) -> Result<Self> {
        for &p in &primes {
            Modulus::new(p)?;
        }
        self.primes = primes;
        Ok(self)
    }

    /// Cross-checks every certified nullity against three random primes
    /// above `2^20`; fewer than two agreements is a consistency error.
    pub fn with_audit(mut self, seed: u64) -> Self {
        self.audit = Some(Mutex::new(Audit { rng: ChaCha8Rng::seed_from_u64(seed), records: Vec::new() }));
        self
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn audit_records(&self) -> Vec<AuditRecord> {
        self.audit.as_ref().map(|a| a.lock().unwrap().records.clone()).unwrap_or_default()
    }

    fn modulus(&self, i: usize) -> Result<Modulus> {
        let p = self.primes.get(i).ok_or_else(|| {
            Error::Consistency(format!("all {} primes were unlucky", self.primes.len()))
        })?;
        Ok(Modulus::new(*p)?)
    }

    fn record(&self, jac: &Jacobian, r: usize, nullity: usize) -> Result<()> {
        let Some(audit) = &self.audit else {
            return Ok(());
        };
        let primes: [u64; 3] = {
            let mut a = audit.lock().unwrap();
            std::array::from_fn(|_| random_prime(&mut a.rng))
        };
        let nullities = primes.map(|p| {
            let md = Modulus::new(p).expect("random primes are valid");
            jac.mod_matrix(r, md).eliminate().nullity()
        });
        let agreeing = nullities.iter().filter(|&&n| n == nullity).count();
        let rec = AuditRecord { d: jac.d, degree: r, nullity, primes, nullities, agreeing };
        audit.lock().unwrap().records.push(rec.clone());
        if agreeing < 2 {
            return Err(Error::Consistency(format!("mod-p audit disagrees with certified nullity: {rec:?}")));
        }
        Ok(())
    }

    /// `dim D0(A)_r`.
    pub fn d0_dimension(&self, a: &Arrangement, r: usize) -> Result<usize> {
        let key = (a.canonical_key(), r);
        if let Some(&n) = self.dim_cache.lock().unwrap().get(&key) {
            return Ok(n);
        }
        let jac = Jacobian::new(a);
        let n = match self.strategy {
            Strategy::Exact => kernel_basis_integer(&jac.integer_matrix(r)).len(),
            Strategy::Modular => self.certified_nullity(&jac, r)?,
        };
        self.record(&jac, r, n)?;
        self.dim_cache.lock().unwrap().insert(key, n);
        Ok(n)
    }

    fn certified_nullity(&self, jac: &Jacobian, r: usize) -> Result<usize> {
        for i in 0.. {
            let elim = jac.mod_matrix(r, self.modulus(i)?).eliminate();
            let n = elim.nullity();
            if n == 0 {
                return Ok(0);
            }
            match lift_kernel_vectors(&jac.integer_matrix(r), &elim, &elim.free_cols) {
                Ok(_) => return Ok(n),
                Err(e) => unlucky_or_bug(e)?,
            }
        }
        unreachable!()
    }

    /// `mdr(A)` with a normalized witness relation of that degree.
    pub fn mdr(&self, a: &Arrangement) -> Result<(usize, Derivation)> {
        if a.degree() == 0 {
            return Err(Error::Precondition("mdr needs at least one hyperplane".into()));
        }
        let key = a.canonical_key();
        if let Some(hit) = self.mdr_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let jac = Jacobian::new(a);
        let (r, w) = match self.strategy {
            Strategy::Exact => self.mdr_exact(a, &jac)?,
            Strategy::Modular => self.mdr_modular(a, &jac)?,
        };
        if w.is_zero() || !w.apply(&a.defining_polynomial())?.is_zero() {
            return Err(Error::Consistency(format!("witness of degree {r} is not a relation")));
        }
        if r > 0 {
            self.record(&jac, r - 1, 0)?;
        }
        if self.audit.is_some() {
            let n = self.d0_dimension(a, r)?;
            if n == 0 {
                return Err(Error::Consistency(format!("D0 vanishes at the computed mdr {r}")));
            }
        }
        self.mdr_cache.lock().unwrap().insert(key, (r, w.clone()));
        Ok((r, w))
    }

    fn mdr_exact(&self, a: &Arrangement, jac: &Jacobian) -> Result<(usize, Derivation)> {
        for r in 0..a.degree() {
            if let Some(v) = kernel_basis_integer(&jac.integer_matrix(r)).into_iter().next() {
                return Ok((r, Derivation::from_vector(a.nvars(), r, &v)?));
            }
        }
        Err(Error::Consistency(format!("no relation up to degree {}", a.degree() - 1)))
    }

    /// A verified relation of low degree: the point relation of a point of
    /// maximal multiplicity for line arrangements, the Koszul relation otherwise.
    fn upper_witness(&self, a: &Arrangement) -> Result<Derivation> {
        if a.nvars() == 3 && a.degree() >= 2 {
            let inc = intersection_points(a)?;
            let (_, p) = inc.max_point();
            let w = point_syzygy(a, &p.coords)?;
            if !w.is_zero() && w.apply(&a.defining_polynomial())?.is_zero() {
                return Ok(w);
            }
        }
        koszul_syzygy(a)
    }

    /// Binary search for the first degree with a mod-p relation below the
    /// upper witness, then an exact lift of the first free-column kernel
    /// vector there. Nullity mod p is monotone in the degree, and a zero
    /// nullity mod p is exact, so only the final lift needs certification.
    fn mdr_modular(&self, a: &Arrangement, jac: &Jacobian) -> Result<(usize, Derivation)> {
        let hi = self.upper_witness(a)?.degree();
        // D0_r = 0 is certified for every r < known_zero.
        let mut known_zero = 0;
        for i in 0.. {
            let md = self.modulus(i)?;
            let elim = |r: usize| jac.mod_matrix(r, md).eliminate();
            let (mut lo, mut up) = (known_zero, hi);
            let mut up_elim = None;
            if lo < hi {
                let top = elim(hi - 1);
                if top.nullity() == 0 {
                    lo = hi;
                } else {
                    up = hi - 1;
                    up_elim = Some(top);
                }
            }
            while lo < up {
                let mid = (lo + up) / 2;
                let e = elim(mid);
                if e.nullity() > 0 {
                    up = mid;
                    up_elim = Some(e);
                } else {
                    lo = mid + 1;
                }
            }
            known_zero = up;
            let up_elim = match up_elim {
                Some(e) => e,
                None => elim(up),
            };
            let Some(&f) = up_elim.free_cols.first() else {
                return Err(Error::Consistency(format!("relation of degree {up} vanishes mod p")));
            };
            match lift_kernel_vectors(&jac.integer_matrix(up), &up_elim, &[f]) {
                Ok(mut v) => return Ok((up, Derivation::from_vector(a.nvars(), up, &v.remove(0))?)),
                Err(e) => unlucky_or_bug(e)?,
            }
        }
        unreachable!()
    }

    /// Dimensions and minimal generator degrees of `D0(A)` in degrees `<= bound`.
    pub fn profile(&self, a: &Arrangement, bound: usize) -> Result<SyzygyProfile> {
        if a.degree() == 0 {
            return Err(Error::Precondition("profile needs at least one hyperplane".into()));
        }
        if bound + 1 < a.degree() {
            return Err(Error::Precondition(format!("bound {bound} is below d - 1 = {}", a.degree() - 1)));
        }
        let key = (a.canonical_key(), bound);
        if let Some(hit) = self.profile_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let jac = Jacobian::new(a);
        let (dims, gens) = match self.strategy {
            Strategy::Exact => profile_exact(&jac, bound)?,
            Strategy::Modular => self.profile_modular(&jac, bound)?,
        };
        for (k, &n) in dims.iter().enumerate() {
            self.record(&jac, k, n)?;
        }
        let mdr = gens.first().map(|g| g.0).ok_or_else(|| {
            Error::Consistency(format!("no relation up to degree {bound}"))
        })?;
        let basis_at_mdr = gens
            .iter()
            .filter(|g| g.0 == mdr)
            .map(|(k, v)| Derivation::from_vector(a.nvars(), *k, v))
            .collect::<Result<_>>()?;
        let profile = SyzygyProfile {
            d: a.degree(),
            dims,
            mdr,
            basis_at_mdr,
            mingen_degrees: gens.iter().map(|g| g.0).collect(),
            bound,
        };
        self.profile_cache.lock().unwrap().insert(key, profile.clone());
        Ok(profile)
    }

    fn profile_modular(&self, jac: &Jacobian, bound: usize) -> Result<(Vec<usize>, Generators)> {
        let mut gens: Generators = Vec::new();
        let mut dims = Vec::with_capacity(bound + 1);
        let mut prime = 0;
        for k in 0..=bound {
            loop {
                let md = self.modulus(prime)?;
                match self.profile_step(jac, k, md, &gens)? {
                    Some((nk, new)) => {
                        dims.push(nk);
                        gens.extend(new.into_iter().map(|v| (k, v)));
                        break;
                    }
                    None => prime += 1,
                }
            }
        }
        Ok((dims, gens))
    }

    /// One degree of the incremental computation; `None` means the prime was unlucky.
    fn profile_step(
        &self,
        jac: &Jacobian,
        k: usize,
        md: Modulus,
        gens: &[(usize, Vec<BigInt>)],
    ) -> Result<Option<(usize, Vec<Vec<BigInt>>)>> {
        let ej = jac.mod_matrix(k, md).eliminate();
        let nk = ej.nullity();
        let multiples: Vec<Vec<BigInt>> = gens
            .iter()
            .flat_map(|(e, v)| monomial_multiples(jac.nvars, *e, v, k))
            .collect();
        if nk == 0 {
            if !multiples.is_empty() {
                return Err(Error::Consistency(format!("exact relations vanish mod p in degree {k}")));
            }
            return Ok(Some((0, Vec::new())));
        }
        let cols = jac.cols(k);
        let umod = ModMatrix::from_rows(
            multiples.iter().map(|v| v.iter().map(|x| md.from_bigint(x)).collect()).collect(),
            cols,
            md,
        );
        let eu = umod.eliminate();
        let s = eu.rank;
        if s > nk {
            return Err(Error::Consistency(format!("multiples exceed the kernel in degree {k}")));
        }
        if s == nk {
            return Ok(Some((nk, Vec::new())));
        }
        let t = nk - s;
        let mut span = ModEchelon::from_elimination(&eu);
        let picked: Vec<usize> =
            ej.free_cols.iter().copied().filter(|&f| span.insert(ej.kernel_vector(f))).take(t).collect();
        if picked.len() < t {
            return Err(Error::Consistency(format!("kernel too small for new generators in degree {k}")));
        }
        let new = match lift_kernel_vectors(&jac.integer_matrix(k), &ej, &picked) {
            Ok(v) => v,
            Err(e) => {
                unlucky_or_bug(e)?;
                return Ok(None);
            }
        };
        if s > 0 {
            // Annihilators of the multiples that stay independent on the new
            // vectors bound the rank of the multiples from above.
            let vmod: Vec<Vec<u64>> =
                new.iter().map(|v| v.iter().map(|x| md.from_bigint(x)).collect()).collect();
            let values = |w: &[u64]| -> Vec<u64> {
                vmod.iter()
                    .map(|v| w.iter().zip(v).fold(0, |acc, (&a, &b)| md.add(acc, md.mul(a, b))))
                    .collect()
            };
            let mut independent = ModEchelon::new(md);
            let chosen: Vec<usize> = eu
                .free_cols
                .iter()
                .copied()
                .filter(|&f| independent.insert(values(&eu.kernel_vector(f))))
                .take(t)
                .collect();
            if chosen.len() < t {
                return Err(Error::Consistency(format!("no separating annihilators in degree {k}")));
            }
            let uint = Matrix::from_rows_with_cols(multiples, cols)?;
            let ws = match lift_kernel_vectors(&uint, &eu, &chosen) {
                Ok(w) => w,
                Err(e) => {
                    unlucky_or_bug(e)?;
                    return Ok(None);
                }
            };
            let mut check = ModEchelon::new(md);
            for w in &ws {
                let wm: Vec<u64> = w.iter().map(|x| md.from_bigint(x)).collect();
                if !check.insert(values(&wm)) {
                    return Ok(None);
                }
            }
        }
        Ok(Some((nk, new)))
    }
}

/// Reference computation: kernel bases by fraction-free elimination, and
/// `g_k = dim D0_k - rank{x_i θ : θ in a basis of D0_(k-1)}`.
fn profile_exact(jac: &Jacobian, bound: usize) -> Result<(Vec<usize>, Generators)> {
    let n = jac.nvars;
    let mut dims = Vec::new();
    let mut gens = Vec::new();
    let mut prev: Vec<Vec<BigInt>> = Vec::new();
    for k in 0..=bound {
        let basis = kernel_basis_integer(&jac.integer_matrix(k));
        let rows: Vec<Vec<Rational>> = prev
            .iter()
            .flat_map(|v| monomial_multiples(n, k - 1, v, k))
            .map(|v| v.into_iter().map(Rational::from_integer).collect())
            .collect();
        let rank = if rows.is_empty() { 0 } else { rank_exact(&Matrix::from_rows(rows)?) };
        if rank > basis.len() {
            return Err(Error::Consistency(format!("multiples exceed the kernel in degree {k}")));
        }
        // Basis vectors not in the span of the multiples serve as generators.
        let g = basis.len() - rank;
        let mut chosen = Vec::new();
        if g > 0 {
            let mut current: Vec<Vec<Rational>> = prev
                .iter()
                .flat_map(|v| monomial_multiples(n, k - 1, v, k))
                .map(|v| v.into_iter().map(Rational::from_integer).collect())
                .collect();
            let mut r0 = rank;
            for v in &basis {
                current.push(v.iter().cloned().map(Rational::from_integer).collect());
                let r1 = rank_exact(&Matrix::from_rows(current.clone())?);
                if r1 > r0 {
                    chosen.push(v.clone());
                    r0 = r1;
                } else {
                    current.pop();
                }
                if chosen.len() == g {
                    break;
                }
            }
        }
        gens.extend(chosen.into_iter().map(|v| (k, v)));
        dims.push(basis.len());
        prev = basis;
    }
    Ok((dims, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::parse_family_spec;

    fn fam(s: &str) -> Arrangement {
        parse_family_spec(s).unwrap().build().unwrap()
    }

    #[test]
    fn triangle_and_pencil() {
        let t = fam("triangle");
        let e = SyzygyEngine::new();
        assert_eq!(e.d0_dimension(&t, 0).unwrap(), 0);
        assert_eq!(e.d0_dimension(&t, 1).unwrap(), 2);
        assert_eq!(e.mdr(&t).unwrap().0, 1);
        let pencil = Arrangement::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap();
        assert_eq!(e.mdr(&pencil).unwrap().0, 0);
    }

    #[test]
    fn modular_matches_exact() {
        let modular = SyzygyEngine::new();
        let exact = SyzygyEngine::exact();
        for s in ["triangle", "boolean:4", "a223", "b7", "ex10a", "thm100:k=3,j=1", "generic:d=6,seed=3"] {
            let a = fam(s);
            let (rm, wm) = modular.mdr(&a).unwrap();
            let (re, we) = exact.mdr(&a).unwrap();
            assert_eq!(rm, re, "{s}");
            assert_eq!(wm, we, "{s}");
            let bound = a.degree() + 1;
            let pm = modular.profile(&a, bound).unwrap();
            let pe = exact.profile(&a, bound).unwrap();
            assert_eq!(pm.dims, pe.dims, "{s}");
            assert_eq!(pm.mingen_degrees, pe.mingen_degrees, "{s}");
            assert_eq!(pm.mdr, rm, "{s}");
            assert_eq!(pm.basis_at_mdr, pe.basis_at_mdr, "{s}");
        }
    }

    #[test]
    fn free_arrangement_generators() {
        // a223 is the braid arrangement, free with exponents (1, 2, 3).
        let p = SyzygyEngine::new().profile(&fam("a223"), 12).unwrap();
        assert_eq!(p.mingen_degrees, vec![2, 3]);
        assert_eq!(p.dims[..5], [0, 0, 1, 4, 9]);
        // b7 is nearly free: generators in degrees r, d - r, d - r.
        let p = SyzygyEngine::new().profile(&fam("b7"), 14).unwrap();
        assert_eq!(p.mingen_degrees, vec![3, 4, 4]);
    }

    #[test]
    fn audit_records_agree() {
        let e = SyzygyEngine::new().with_audit(11);
        e.mdr(&fam("ziegler:1")).unwrap();
        let recs = e.audit_records();
        assert!(!recs.is_empty());
        assert!(recs.iter().all(|r| r.agreeing >= 2));
    }

    #[test]
    fn ziegler_pair() {
        let e = SyzygyEngine::new();
        assert_eq!(e.mdr(&fam("ziegler:1")).unwrap().0, 5);
        assert_eq!(e.mdr(&fam("ziegler:2")).unwrap().0, 6);
    }

    #[test]
    fn profile_rejects_small_bound() {
        assert!(SyzygyEngine::new().profile(&fam("a223"), 2).is_err());
    }
}
