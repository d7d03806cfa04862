//! Freeness classification and the Yoshinaga test through Ziegler restrictions.

use serde::Serialize;

use super::{tau_max, tjurina, ConsistencyCheck};
use crate::arrangement::{restrict, Arrangement, Multiarrangement1D};
use crate::syzygy::{default_mingen_bound, multi_exponents, MultiExponents, SyzygyEngine};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum FreenessLabel {
    Free { exponents: [usize; 3] },
    NearlyFree { exponents: [usize; 4] },
    MaximalTjurina { d: usize, r: usize },
    Other,
}

/// All labels that apply, with the generator degrees they were read from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub labels: Vec<FreenessLabel>,
    /// Minimal generator degrees of `D0(A)` up to `2d`; absent when
    /// `2 mdr > d`, where neither free nor nearly free is possible.
    pub mingen_degrees: Option<Vec<usize>>,
    pub consistency: Vec<ConsistencyCheck>,
}

impl Classification {
    pub fn free_exponents(&self) -> Option<[usize; 3]> {
        self.labels.iter().find_map(|l| match l {
            FreenessLabel::Free { exponents } => Some(*exponents),
            _ => None,
        })
    }

    pub fn is_free(&self) -> bool {
        self.free_exponents().is_some()
    }

    pub fn is_nearly_free(&self) -> bool {
        self.labels.iter().any(|l| matches!(l, FreenessLabel::NearlyFree { .. }))
    }

    pub fn is_maximal_tjurina(&self) -> bool {
        self.labels.iter().any(|l| matches!(l, FreenessLabel::MaximalTjurina { .. }))
    }
}

pub fn classify_freeness(a: &Arrangement) -> Result<Classification> {
    classify_freeness_with(&SyzygyEngine::new(), a)
}

/// Free and nearly free are read off the minimal generator degrees; the
/// Tjurina criterion for freeness is a mandatory cross-check.
pub fn classify_freeness_with(engine: &SyzygyEngine, a: &Arrangement) -> Result<Classification> {
    a.require_essential_planar("classify_freeness")?;
    let d = a.degree();
    let (r, _) = engine.mdr(a)?;
    let tau = tjurina(&a.incidence()?.n);
    let tm = tau_max(d, r)?;
    let mingens = if 2 * r <= d {
        Some(engine.profile(a, default_mingen_bound(a))?.mingen_degrees)
    } else {
        None
    };
    let sorted = |mut v: Vec<usize>| {
        v.sort_unstable();
        v
    };
    let gens = mingens.clone().map(sorted);
    let free = gens.as_deref() == Some(&sorted(vec![r, d - 1 - r])[..]);
    let nearly_free = gens.as_deref() == Some(&[r, d - r, d - r][..]);
    let tau_free = tau == tm && 2 * r < d;
    if free != tau_free {
        return Err(Error::Consistency(format!(
            "generator degrees {gens:?} and tau = {tau} (tau_max = {tm}, r = {r}) disagree on freeness"
        )));
    }
    let mut labels = Vec::new();
    if free {
        labels.push(FreenessLabel::Free { exponents: [1, r, d - 1 - r] });
    }
    if nearly_free {
        labels.push(FreenessLabel::NearlyFree { exponents: [1, r, d - r, d - r] });
    }
    if tau == tm {
        labels.push(FreenessLabel::MaximalTjurina { d, r });
    }
    if labels.is_empty() {
        labels.push(FreenessLabel::Other);
    }
    let mut consistency = vec![ConsistencyCheck::new("freeness_generators_vs_tau", true)];
    if nearly_free {
        let expected = (d - 1) * (d - r - 1) + r * r - 1;
        consistency.push(ConsistencyCheck::new("nearly_free_tau", tau == expected));
    }
    Ok(Classification { labels, mingen_degrees: mingens, consistency })
}

/// Labels decided by `τ` alone: freeness through the Tjurina criterion,
/// maximal Tjurina. Nearly free needs generator degrees and is not reported.
pub fn tau_labels(d: usize, r: usize, tau: usize) -> Result<Vec<FreenessLabel>> {
    let tm = tau_max(d, r)?;
    let mut labels = Vec::new();
    if tau == tm && 2 * r < d {
        labels.push(FreenessLabel::Free { exponents: [1, r, d - 1 - r] });
    }
    if tau == tm {
        labels.push(FreenessLabel::MaximalTjurina { d, r });
    }
    if labels.is_empty() {
        labels.push(FreenessLabel::Other);
    }
    Ok(labels)
}

/// Restriction exponents and `b_2^0` for one line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YoshinagaCheck {
    pub h_index: usize,
    pub exponents: MultiExponents,
    pub b2_zero: i64,
    pub equality: bool,
}

pub fn yoshinaga_check(a: &Arrangement, h_index: usize) -> Result<YoshinagaCheck> {
    a.require_essential_planar("yoshinaga_free_check")?;
    let inc = a.incidence()?;
    let m = Multiarrangement1D::from_restriction(&restrict(a, h_index)?)?;
    let exponents = multi_exponents(&m)?;
    let product = (exponents.e1 * exponents.e2) as i64;
    Ok(YoshinagaCheck { h_index, exponents, b2_zero: inc.b2_zero, equality: inc.b2_zero == product })
}

/// `b_2^0(A) = e1 e2` for the Ziegler restriction onto the given line.
pub fn yoshinaga_free_check(a: &Arrangement, h_index: usize) -> Result<bool> {
    Ok(yoshinaga_check(a, h_index)?.equality)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::parse_family_spec;

    fn fam(s: &str) -> Arrangement {
        parse_family_spec(s).unwrap().build().unwrap()
    }

    #[test]
    fn known_classifications() {
        let t = classify_freeness(&fam("triangle")).unwrap();
        assert_eq!(t.free_exponents(), Some([1, 1, 1]));
        let a = classify_freeness(&fam("a223")).unwrap();
        assert_eq!(a.free_exponents(), Some([1, 2, 3]));
        assert!(a.is_maximal_tjurina());
        let z2 = classify_freeness(&fam("ziegler:2")).unwrap();
        assert_eq!(z2.labels, vec![FreenessLabel::MaximalTjurina { d: 9, r: 6 }]);
        assert_eq!(z2.mingen_degrees, None);
        let z1 = classify_freeness(&fam("ziegler:1")).unwrap();
        assert_eq!(z1.labels, vec![FreenessLabel::Other]);
    }

    #[test]
    fn nearly_free_b7() {
        let c = classify_freeness(&fam("b7")).unwrap();
        assert!(c.is_nearly_free());
        assert!(c.consistency.iter().all(|c| c.holds));
    }

    #[test]
    fn yoshinaga_examples() {
        let a = fam("a223");
        let h = a.position(&crate::Hyperplane::from_ints(&[1, -1, 0]).unwrap()).unwrap();
        let y = yoshinaga_check(&a, h).unwrap();
        assert_eq!((y.exponents.e1, y.exponents.e2, y.b2_zero), (2, 3, 6));
        assert!(y.equality);
        assert!(yoshinaga_free_check(&fam("triangle"), 0).unwrap());
        let z1 = fam("ziegler:1");
        for h in 0..z1.degree() {
            let y = yoshinaga_check(&z1, h).unwrap();
            assert_eq!(y.b2_zero, 22);
            assert!(!y.equality);
        }
    }
}
