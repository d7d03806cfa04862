//! Multiplicity case analysis and determination of mdr from weak combinatorics.

use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::syzygy::SyzygyEngine;
use crate::{Error, Result};

/// Position of `mdr` relative to the maximal multiplicity `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MultiplicityCase {
    /// `r = d - m`.
    A,
    /// `r = m - 1` with `2m < d + 1`.
    B1,
    /// `m <= r <= d - m - 1`.
    B2,
}

pub fn classify_multiplicity_case(a: &Arrangement) -> Result<MultiplicityCase> {
    classify_multiplicity_case_with(&SyzygyEngine::new(), a)
}

pub fn classify_multiplicity_case_with(engine: &SyzygyEngine, a: &Arrangement) -> Result<MultiplicityCase> {
    a.require_essential_planar("classify_multiplicity_case")?;
    let d = a.degree();
    if d < 3 {
        return Err(Error::Precondition("classify_multiplicity_case needs d >= 3".into()));
    }
    let m = a.incidence()?.max_multiplicity();
    let (r, _) = engine.mdr(a)?;
    let a_case = r + m == d;
    let b1 = r + 1 == m && 2 * m < d + 1;
    let b2 = m <= r && r + m < d;
    match (a_case, b1, b2) {
        (true, false, false) => Ok(MultiplicityCase::A),
        (false, true, false) => Ok(MultiplicityCase::B1),
        (false, false, true) => Ok(MultiplicityCase::B2),
        _ => Err(Error::Consistency(format!("no unique multiplicity case for d = {d}, m = {m}, r = {r}"))),
    }
}

/// `mdr` when the weak combinatorics alone forces it.
pub fn determined_by_weak_combinatorics(a: &Arrangement) -> Result<Option<usize>> {
    a.require_essential_planar("determined_by_weak_combinatorics")?;
    let inc = a.incidence()?;
    let (d, m) = (a.degree(), inc.max_multiplicity());
    if 2 * m > d {
        return Ok(Some(d - m));
    }
    if 2 * m == d {
        let tau = super::tjurina(&inc.n);
        let extremal = (d - 1) * (d - 1) - (m - 1) * (d - m);
        return Ok(Some(if tau == extremal { m - 1 } else { d - m }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::parse_family_spec;

    fn fam(s: &str) -> Arrangement {
        parse_family_spec(s).unwrap().build().unwrap()
    }

    #[test]
    fn cases_of_known_arrangements() {
        assert_eq!(classify_multiplicity_case(&fam("ziegler:1")).unwrap(), MultiplicityCase::B2);
        assert_eq!(classify_multiplicity_case(&fam("ziegler:2")).unwrap(), MultiplicityCase::A);
        assert_eq!(classify_multiplicity_case(&fam("thm100:k=3,j=0")).unwrap(), MultiplicityCase::A);
    }

    #[test]
    fn weak_combinatorics_determination() {
        let near_pencil =
            Arrangement::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[1, 2, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(determined_by_weak_combinatorics(&near_pencil).unwrap(), Some(1));
        assert_eq!(determined_by_weak_combinatorics(&fam("thm100:k=3,j=0")).unwrap(), Some(2));
        assert_eq!(determined_by_weak_combinatorics(&fam("ziegler:1")).unwrap(), None);
    }
}
