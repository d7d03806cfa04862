//! Tjurina numbers, du Plessis–Wall bounds, freeness classification,
//! multiplicity cases, the Yoshinaga test and the combinatorial mdr predictor.

mod cases;
mod freeness;
mod predictor;

use std::collections::BTreeMap;

use serde::Serialize;

pub use cases::{
    classify_multiplicity_case, classify_multiplicity_case_with, determined_by_weak_combinatorics,
    MultiplicityCase,
};
pub use freeness::{
    classify_freeness, classify_freeness_with, tau_labels, yoshinaga_check, yoshinaga_free_check, Classification,
    FreenessLabel, YoshinagaCheck,
};
pub use predictor::{predict_r_from_combinatorics, Prediction};

use crate::arrangement::{Arrangement, IncidenceData};
use crate::syzygy::SyzygyEngine;
use crate::{Error, Result};

/// `τ = Σ_j n_j (j - 1)^2` from the weak combinatorics.
pub fn tjurina(n: &BTreeMap<usize, usize>) -> usize {
    n.iter().map(|(&j, &nj)| nj * (j - 1) * (j - 1)).sum()
}

/// `τ = Σ_p (m_p - 1)^2` summed point by point over the incidence enumeration.
pub fn tjurina_from_points(inc: &IncidenceData) -> usize {
    inc.points.iter().map(|p| (p.multiplicity() - 1).pow(2)).sum()
}

/// The du Plessis–Wall upper bound `τ(d, r)_max`.
pub fn tau_max(d: usize, r: usize) -> Result<usize> {
    if r == 0 || r >= d {
        return Err(Error::Precondition(format!("tau_max needs 1 <= r <= d - 1, got d = {d}, r = {r}")));
    }
    let base = (d - 1) * (d - r - 1) + r * r;
    Ok(if 2 * r < d {
        base
    } else {
        let k = 2 * r - d + 2;
        base - k * (k - 1) / 2
    })
}

/// A named internal cross-check and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyCheck {
    pub name: String,
    pub holds: bool,
}

impl ConsistencyCheck {
    pub(crate) fn new(name: &str, holds: bool) -> Self {
        ConsistencyCheck { name: name.to_string(), holds }
    }
}

/// Every invariant of an essential line arrangement in one value.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub d: usize,
    pub n: BTreeMap<usize, usize>,
    pub max_multiplicity: usize,
    pub b2: i64,
    pub b2_zero: i64,
    pub tau: usize,
    pub mdr: usize,
    pub tau_max: usize,
    pub classification: Classification,
    pub multiplicity_case: MultiplicityCase,
    pub determined_by_weak_combinatorics: Option<usize>,
    pub predicted_r: Prediction,
    pub consistency: Vec<ConsistencyCheck>,
}

impl InvariantReport {
    /// Builds the report with the default engine.
    pub fn compute(a: &Arrangement) -> Result<Self> {
        Self::compute_with(&SyzygyEngine::new(), a)
    }

    pub fn compute_with(engine: &SyzygyEngine, a: &Arrangement) -> Result<Self> {
        a.require_essential_planar("invariant report")?;
        let inc = a.incidence()?;
        let (mdr, _) = engine.mdr(a)?;
        let tau = tjurina(&inc.n);
        let tm = tau_max(a.degree(), mdr)?;
        let classification = classify_freeness_with(engine, a)?;
        let multiplicity_case = classify_multiplicity_case_with(engine, a)?;
        let determined = determined_by_weak_combinatorics(a)?;
        let predicted_r = predict_r_from_combinatorics(a)?;
        let mut consistency = classification.consistency.clone();
        consistency.push(ConsistencyCheck::new("tau_two_routes", tau == tjurina_from_points(&inc)));
        consistency.push(ConsistencyCheck::new("tau_at_most_tau_max", tau <= tm));
        consistency.push(ConsistencyCheck::new(
            "char_poly_two_routes",
            inc.char_poly == inc.char_poly_mobius(),
        ));
        if let Some(r) = determined {
            consistency.push(ConsistencyCheck::new("weak_combinatorics_determination", r == mdr));
        }
        if let Prediction::Value { r } = predicted_r {
            consistency.push(ConsistencyCheck::new("predictor", r == mdr));
        }
        Ok(InvariantReport {
            d: a.degree(),
            n: inc.n.clone(),
            max_multiplicity: inc.max_multiplicity(),
            b2: inc.b2,
            b2_zero: inc.b2_zero,
            tau,
            mdr,
            tau_max: tm,
            classification,
            multiplicity_case,
            determined_by_weak_combinatorics: determined,
            predicted_r,
            consistency,
        })
    }

    pub fn all_consistent(&self) -> bool {
        self.consistency.iter().all(|c| c.holds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tjurina_values() {
        assert_eq!(tjurina(&BTreeMap::from([(2, 18), (3, 6)])), 42);
        assert_eq!(tjurina(&BTreeMap::from([(2, 6)])), 6);
        assert_eq!(tjurina(&BTreeMap::from([(2, 3), (3, 4)])), 19);
    }

    #[test]
    fn tau_max_values() {
        assert_eq!(tau_max(9, 6).unwrap(), 42);
        assert_eq!(tau_max(9, 5).unwrap(), 46);
        assert_eq!(tau_max(6, 2).unwrap(), 19);
        assert_eq!(tau_max(4, 2).unwrap(), 6);
        assert!(tau_max(4, 0).is_err());
        assert!(tau_max(4, 4).is_err());
    }

    #[test]
    fn reports_for_ziegler_pair() {
        let z1 = crate::arrangement::parse_family_spec("ziegler:1").unwrap().build().unwrap();
        let rep = InvariantReport::compute(&z1).unwrap();
        assert_eq!((rep.tau, rep.mdr, rep.tau_max), (42, 5, 46));
        assert!(rep.all_consistent());
        assert_eq!(rep.classification.labels, vec![FreenessLabel::Other]);
    }
}
