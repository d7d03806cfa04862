//! Combinatorial determination of mdr for arrangements with only double and
//! triple points and at most five triple points.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arrangement::{generate_family, same_lattice, Arrangement, IncidenceData};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Prediction {
    Value { r: usize },
    Undetermined { reason: String },
}

impl Prediction {
    fn undetermined(reason: impl Into<String>) -> Self {
        Prediction::Undetermined { reason: reason.into() }
    }

    pub fn value(&self) -> Option<usize> {
        match self {
            Prediction::Value { r } => Some(*r),
            Prediction::Undetermined { .. } => None,
        }
    }
}

fn triple_points(inc: &IncidenceData) -> Vec<usize> {
    (0..inc.points.len()).filter(|&k| inc.points[k].multiplicity() == 3).collect()
}

/// Lines through at least one triple point, with their triple point counts.
fn triple_lines(inc: &IncidenceData) -> Vec<(usize, usize)> {
    let lines: BTreeSet<usize> =
        triple_points(inc).into_iter().flat_map(|k| inc.points[k].lines.iter().copied()).collect();
    lines
        .into_iter()
        .map(|l| {
            let count = triple_points(inc).into_iter().filter(|&k| inc.points[k].contains_line(l)).count();
            (l, count)
        })
        .collect()
}

fn triple_subarrangement(a: &Arrangement, inc: &IncidenceData) -> Result<Arrangement> {
    let idx: Vec<usize> = triple_lines(inc).into_iter().map(|(l, _)| l).collect();
    a.subarrangement(&idx)
}

fn pattern(name: &str) -> Result<Arrangement> {
    generate_family(name, &Default::default())
}

/// Four triple points on six lines with the incidences of `A(2,2,3)`, all
/// other points double.
fn is_a223_plus_generic(a: &Arrangement) -> Result<bool> {
    let inc = a.incidence()?;
    if inc.max_multiplicity() > 3 || inc.n_j(3) != 4 {
        return Ok(false);
    }
    if triple_lines(&inc).iter().any(|&(_, c)| c < 2) {
        return Ok(false);
    }
    let sub = triple_subarrangement(a, &inc)?;
    Ok(sub.degree() == 6 && same_lattice(&sub, &pattern("a223")?)?)
}

pub fn predict_r_from_combinatorics(a: &Arrangement) -> Result<Prediction> {
    a.require_essential_planar("predict_r_from_combinatorics")?;
    let inc = a.incidence()?;
    let d = a.degree();
    let m = inc.max_multiplicity();
    if m >= 4 {
        return Ok(Prediction::undetermined(format!("point of multiplicity {m}")));
    }
    let lines = triple_lines(&inc);
    let single: Vec<usize> = lines.iter().filter(|&&(_, c)| c == 1).map(|&(l, _)| l).collect();
    Ok(match inc.n_j(3) {
        0 => Prediction::Value { r: d - 2 },
        1..=3 => Prediction::Value { r: d - 3 },
        4 if !single.is_empty() => Prediction::Value { r: d - 3 },
        4 => {
            if is_a223_plus_generic(a)? {
                Prediction::Value { r: d - 4 }
            } else {
                Prediction::undetermined("four triple points outside the A(2,2,3) pattern")
            }
        }
        5 if !single.is_empty() => {
            // Every admissible line L must lead to the same answer.
            let mut values = BTreeSet::new();
            for &l in &single {
                let special = is_a223_plus_generic(&a.delete(l)?)?;
                values.insert(if special { d - 4 } else { d - 3 });
            }
            match values.len() {
                1 => Prediction::Value { r: *values.first().expect("one value") },
                _ => Prediction::undetermined("deleting different lines gives different answers"),
            }
        }
        5 => {
            let sub = triple_subarrangement(a, &inc)?;
            if sub.degree() == 7 && same_lattice(&sub, &pattern("b7")?)? {
                Prediction::Value { r: d - 4 }
            } else {
                Prediction::undetermined("five triple points outside the B pattern")
            }
        }
        n3 => Prediction::undetermined(format!("{n3} triple points")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::parse_family_spec;

    fn predict(s: &str) -> Prediction {
        predict_r_from_combinatorics(&parse_family_spec(s).unwrap().build().unwrap()).unwrap()
    }

    #[test]
    fn decision_tree() {
        assert_eq!(predict("generic:d=6,seed=1"), Prediction::Value { r: 4 });
        assert_eq!(predict("ex10a"), Prediction::Value { r: 4 });
        assert_eq!(predict("a223+generic:seed1+generic:seed2"), Prediction::Value { r: 4 });
        assert_eq!(predict("b7+generic:seed1"), Prediction::Value { r: 4 });
        assert!(matches!(predict("ziegler:1"), Prediction::Undetermined { .. }));
        assert!(matches!(predict("boolean:3+line:1,1,0+line:1,2,0"), Prediction::Undetermined { .. }));
    }
}
