//! Theorem checkers bound to a syzygy engine.

use super::CheckResult;
use crate::arrangement::{add_generic_line, restrict, Arrangement, Hyperplane};
use crate::invariants::{classify_freeness_with, tau_max, tjurina};
use crate::syzygy::SyzygyEngine;
use crate::{Error, Result};

#[derive(Clone, Copy)]
pub struct Verifier<'e> {
    engine: &'e SyzygyEngine,
}

/// Data shared by the deletion checkers.
struct Pair {
    d: usize,
    r: usize,
    r_prime: usize,
    restriction_size: usize,
}

impl<'e> Verifier<'e> {
    pub fn new(engine: &'e SyzygyEngine) -> Self {
        Verifier { engine }
    }

    pub fn engine(&self) -> &'e SyzygyEngine {
        self.engine
    }

    fn mdr(&self, a: &Arrangement) -> Result<usize> {
        Ok(self.engine.mdr(a)?.0)
    }

    fn tau(&self, a: &Arrangement) -> Result<usize> {
        Ok(tjurina(&a.incidence()?.n))
    }

    /// `None` when the deletion is not essential.
    fn pair(&self, a: &Arrangement, h_index: usize) -> Result<Option<Pair>> {
        let deleted = a.delete(h_index)?;
        if !deleted.is_essential() {
            return Ok(None);
        }
        Ok(Some(Pair {
            d: a.degree(),
            r: self.mdr(a)?,
            r_prime: self.mdr(&deleted)?,
            restriction_size: restrict(a, h_index)?.arrangement.degree(),
        }))
    }

    fn start(&self, name: &str, id: &str, a: &Arrangement, h_index: usize) -> Result<CheckResult> {
        a.hyperplane(h_index)?;
        let mut res = CheckResult::new(name, id);
        res.detail("h_index", h_index);
        res.detail("d", a.degree());
        Ok(res)
    }

    fn record_pair(res: &mut CheckResult, p: &Pair) {
        res.detail("r", p.r);
        res.detail("r_prime", p.r_prime);
        res.detail("restriction_size", p.restriction_size);
    }

    pub fn check_fundamental(&self, a: &Arrangement, id: &str, h_index: usize) -> Result<CheckResult> {
        let mut res = self.start("fundamental", id, a, h_index)?;
        if a.degree() < 3 {
            return Ok(res.skip("needs d >= 3"));
        }
        let Some(p) = self.pair(a, h_index)? else {
            return Ok(res.skip("deletion is not essential"));
        };
        Self::record_pair(&mut res, &p);
        res.implication("bounds", true, p.r_prime <= p.r && p.r <= p.r_prime + 1);
        res.implication("large_complement", p.d - p.restriction_size > p.r, p.r == p.r_prime);
        res.implication(
            "large_deleted_complement",
            p.d - 1 - p.restriction_size > p.r_prime,
            p.r == p.r_prime,
        );
        Ok(res)
    }

    pub fn check_addition_deletion_l3(&self, a: &Arrangement, id: &str, h_index: usize) -> Result<CheckResult> {
        let mut res = self.start("addition_deletion_l3", id, a, h_index)?;
        if a.nvars() != 3 || a.degree() < 3 {
            return Ok(res.skip("needs a line arrangement with d >= 3"));
        }
        let Some(p) = self.pair(a, h_index)? else {
            return Ok(res.skip("deletion is not essential"));
        };
        Self::record_pair(&mut res, &p);
        res.implication("addition", p.restriction_size >= p.r_prime + 2, p.r == p.r_prime + 1);
        res.implication("deletion", p.restriction_size >= p.r + 2, p.r_prime + 1 == p.r);
        Ok(res)
    }

    pub fn check_general_addition(&self, a: &Arrangement, id: &str, h_index: usize) -> Result<CheckResult> {
        let mut res = self.start("general_addition", id, a, h_index)?;
        let restriction = restrict(a, h_index)?.arrangement;
        if restriction.degree() < 2 || !restriction.is_essential() {
            return Ok(res.skip("restriction is degenerate"));
        }
        let Some(p) = self.pair(a, h_index)? else {
            return Ok(res.skip("deletion is not essential"));
        };
        Self::record_pair(&mut res, &p);
        let r2 = self.mdr(&restriction)?;
        res.detail("r_restriction", r2);
        res.implication("addition", p.r_prime < r2, p.r == p.r_prime + 1);
        res.implication("equal", p.r == p.r_prime, r2 <= p.r);
        Ok(res)
    }

    pub fn check_free_deletion(&self, a: &Arrangement, id: &str, h_index: usize) -> Result<CheckResult> {
        let mut res = self.start("free_deletion", id, a, h_index)?;
        if a.nvars() != 3 || !a.is_essential() {
            return Ok(res.skip("needs an essential line arrangement"));
        }
        let Some([_, d2, d3]) = classify_freeness_with(self.engine, a)?.free_exponents() else {
            return Ok(res.skip("arrangement is not free"));
        };
        res.detail("d2", d2);
        res.detail("d3", d3);
        let Some(p) = self.pair(a, h_index)? else {
            return Ok(res.skip("deletion is not essential"));
        };
        Self::record_pair(&mut res, &p);
        let expected = if p.restriction_size == 1 + d3 { d2 - 1 } else { d2 };
        res.detail("expected_r_prime", expected);
        res.implication("free", true, p.r_prime == expected);
        Ok(res)
    }

    pub fn check_maximal_tjurina_addition(
        &self,
        a_prime: &Arrangement,
        id: &str,
        line: &Hyperplane,
    ) -> Result<CheckResult> {
        a_prime.require_essential_planar("check_maximal_tjurina_addition")?;
        let mut res = CheckResult::new("maximal_tjurina_addition", id);
        let (d1, r1, t1) = (a_prime.degree(), self.mdr(a_prime)?, self.tau(a_prime)?);
        res.detail("d_prime", d1);
        res.detail("r_prime", r1);
        res.detail("tau_prime", t1);
        let premise = r1 >= 1 && t1 == tau_max(d1, r1)? && 2 * r1 + 1 >= d1;
        res.detail("premise", i64::from(premise));
        let (a, meet) = a_prime.add_line(line.clone())?;
        res.detail("restriction_size", meet);
        if !premise || meet != r1 + 2 {
            res.implication("maximal_tjurina", false, true);
            return Ok(res);
        }
        let (r, t) = (self.mdr(&a)?, self.tau(&a)?);
        res.detail("r", r);
        res.detail("tau", t);
        let tm = tau_max(d1 + 1, r1 + 1)?;
        res.detail("tau_max", tm);
        res.implication(
            "maximal_tjurina",
            true,
            r == r1 + 1 && t == tm && t + r1 + 2 == t1 + 2 * d1,
        );
        Ok(res)
    }

    pub fn check_generic_addition(
        &self,
        a_prime: &Arrangement,
        id: &str,
        seed: u64,
        through_max_point: bool,
    ) -> Result<CheckResult> {
        a_prime.require_planar("check_generic_addition")?;
        if a_prime.degree() < 2 {
            return Err(Error::Precondition("check_generic_addition needs d' >= 2".into()));
        }
        let name = if through_max_point { "generic_addition_through_max" } else { "generic_addition" };
        let mut res = CheckResult::new(name, id);
        let inc = a_prime.incidence()?;
        let (m1, p) = inc.max_point();
        let (d1, r1, t1) = (a_prime.degree(), self.mdr(a_prime)?, tjurina(&inc.n));
        let a = add_generic_line(a_prime, seed, through_max_point.then_some(&p.coords[..]))?;
        let (r, t) = (self.mdr(&a)?, self.tau(&a)?);
        let meet = restrict(&a, a.degree() - 1)?.arrangement.degree();
        for (k, v) in [("d_prime", d1), ("m_prime", m1), ("r_prime", r1), ("r", r)] {
            res.detail(k, v);
        }
        res.detail("tau_prime", t1);
        res.detail("tau", t);
        res.detail("restriction_size", meet);
        if through_max_point {
            res.implication("tau_increment", true, t == t1 + d1 + m1 - 1 && meet == 1 + d1 - m1);
            res.implication("below_bound", r1 + m1 < d1, r == r1 + 1);
            res.implication("at_bound", r1 + m1 == d1, r == r1);
        } else {
            res.implication("tau_increment", true, t == t1 + d1 && meet == d1);
            res.implication("transversal", true, r == r1 + 1);
        }
        Ok(res)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::parse_family_spec;

    fn fam(s: &str) -> Arrangement {
        parse_family_spec(s).unwrap().build().unwrap()
    }

    fn pos(a: &Arrangement, c: &[i64]) -> usize {
        a.position(&Hyperplane::from_ints(c).unwrap()).unwrap()
    }

    #[test]
    fn fundamental_examples() {
        let e = SyzygyEngine::new();
        let v = Verifier::new(&e);
        let a = fam("triangle+line:1,-1,0");
        let r = v.check_fundamental(&a, "t", pos(&a, &[1, -1, 0])).unwrap();
        assert_eq!((r.details["r"], r.details["r_prime"]), (1, 1));
        assert_eq!(r.details["large_complement_hypothesis"], 1);
        assert_eq!(r.verdict(), "PASS");
        let b = fam("boolean:3");
        assert!(v.check_fundamental(&b, "b", 0).unwrap().is_skipped());
    }

    #[test]
    fn ziegler_additions() {
        let e = SyzygyEngine::new();
        let v = Verifier::new(&e);
        for (s, r_prime, r) in [("ziegler:1", 5, 6), ("ziegler:2", 6, 7)] {
            let a = fam(&format!("{s}+genericthrough:double:seed3"));
            let res = v.check_addition_deletion_l3(&a, s, a.degree() - 1).unwrap();
            assert_eq!(res.details["restriction_size"], 8);
            assert_eq!((res.details["r_prime"], res.details["r"]), (r_prime, r));
            assert_eq!(res.details["addition_hypothesis"], 1);
            assert!(!res.is_failure());
        }
    }

    #[test]
    fn free_deletions_of_a223() {
        let e = SyzygyEngine::new();
        let v = Verifier::new(&e);
        let a = fam("a223");
        for h in 0..6 {
            let res = v.check_free_deletion(&a, "a223", h).unwrap();
            assert_eq!(res.verdict(), "PASS", "{res:?}");
        }
        assert!(v.check_free_deletion(&fam("triangle"), "t", 0).unwrap().is_skipped());
    }

    #[test]
    fn general_addition_in_four_variables() {
        let e = SyzygyEngine::new();
        let v = Verifier::new(&e);
        let a = fam("boolean:4");
        let res = v.check_general_addition(&a, "b4", 0).unwrap();
        // The deletion is not essential in four variables.
        assert!(res.is_skipped());
        let a = fam("boolean:4+line:1,1,1,1");
        let res = v.check_general_addition(&a, "b4", 0).unwrap();
        // The restriction is four generic planes in three variables.
        assert_eq!(res.details["r_restriction"], 2);
        assert!(!res.is_failure());
    }

    #[test]
    fn maximal_tjurina_step() {
        let e = SyzygyEngine::new();
        let v = Verifier::new(&e);
        let a0 = fam("thm100:k=4,j=0");
        let line = Hyperplane::from_ints(&[1, -1, 1]).unwrap();
        let res = v.check_maximal_tjurina_addition(&a0, "thm100", &line).unwrap();
        assert_eq!(res.details["tau_prime"], 27);
        if res.details["restriction_size"] == res.details["r_prime"] + 2 {
            assert_eq!(res.details["tau"], 36);
            assert_eq!(res.verdict(), "PASS");
        }
    }

    #[test]
    fn generic_line_examples() {
        let e = SyzygyEngine::new();
        let v = Verifier::new(&e);
        let z1 = fam("ziegler:1");
        let z2 = fam("ziegler:2");
        let res = v.check_generic_addition(&z1, "z1", 5, true).unwrap();
        assert_eq!((res.details["r_prime"], res.details["r"]), (5, 6));
        let res = v.check_generic_addition(&z2, "z2", 5, true).unwrap();
        assert_eq!((res.details["r_prime"], res.details["r"]), (6, 6));
        let res = v.check_generic_addition(&z2, "z2", 5, false).unwrap();
        assert_eq!((res.details["r_prime"], res.details["r"]), (6, 7));
        assert!(!res.is_failure());
    }
}
