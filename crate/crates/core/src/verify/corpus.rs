//! Test corpora as code: family specs plus seeds for the generic lines.

use crate::arrangement::{parse_family_spec, Arrangement};
use crate::Result;

/// A corpus member. `id` does not depend on the seed; `spec` does.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub spec: String,
    pub arrangement: Arrangement,
}

impl CorpusEntry {
    pub fn new(id: impl Into<String>, spec: impl Into<String>) -> Result<Self> {
        let spec = spec.into();
        let arrangement = parse_family_spec(&spec)?.build()?;
        Ok(CorpusEntry { id: id.into(), spec, arrangement })
    }
}

/// Seed of the `i`-th generic line of a corpus built with `seed`.
fn line_seed(seed: u64, i: u64) -> u64 {
    seed.wrapping_mul(1000).wrapping_add(i)
}

fn with_generic(base_id: &str, base: &str, count: u64, seed: u64) -> Result<CorpusEntry> {
    let mut spec = base.to_string();
    for i in 0..count {
        spec.push_str(&format!("+generic:seed{}", line_seed(seed, i)));
    }
    let id = if count == 0 { base_id.to_string() } else { format!("{base_id}+{count}generic") };
    CorpusEntry::new(id, spec)
}

/// The Ziegler pair and every member of the explicit families.
pub fn family_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = vec![CorpusEntry::new("ziegler:1", "ziegler:1")?, CorpusEntry::new("ziegler:2", "ziegler:2")?];
    for d in 8..=14 {
        out.push(CorpusEntry::new(format!("dminus4:d={d}"), format!("dminus4:d={d}"))?);
    }
    for d in 7..=13 {
        out.push(CorpusEntry::new(format!("dminus3:d={d}"), format!("dminus3:d={d}"))?);
    }
    for k in 3..=6 {
        for j in 0..k {
            out.push(CorpusEntry::new(format!("thm100:k={k},j={j}"), format!("thm100:k={k},j={j}"))?);
        }
    }
    for k in [5, 7] {
        for j in 0..=2 * k - 2 {
            out.push(CorpusEntry::new(format!("prop101:k={k},j={j}"), format!("prop101:k={k},j={j}"))?);
        }
    }
    Ok(out)
}

/// Arrangements with only double and triple points and at most five triple points.
pub fn predictor_corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for d in 3..=8 {
        out.push(CorpusEntry::new(format!("generic:d={d}"), format!("generic:d={d},seed={}", line_seed(seed, d)))?);
    }
    // One triple point from xyz(x - y), then more through double points.
    let mut base = "boolean:3+line:1,-1,0".to_string();
    for n3 in 1..=3 {
        if n3 > 1 {
            base.push_str(&format!("+genericthrough:double:seed{}", line_seed(seed, 100 + n3)));
        }
        for extra in 0..=2 {
            out.push(with_generic(&format!("pencil3:n3={n3}"), &base, extra, seed + 7 * n3)?);
        }
    }
    for extra in 0..=4 {
        out.push(with_generic("a223", "a223", extra, seed)?);
    }
    out.push(CorpusEntry::new("ex10a", "ex10a")?);
    out.push(CorpusEntry::new("ex10b", "ex10b")?);
    for extra in 0..=3 {
        out.push(with_generic("b7", "b7", extra, seed)?);
    }
    Ok(out)
}

/// The Ziegler pair and extensions on which the predictor must abstain.
pub fn undetermined_corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for z in ["ziegler:1", "ziegler:2"] {
        out.push(CorpusEntry::new(z, z)?);
        out.push(with_generic(z, z, 1, seed)?);
        out.push(with_generic(z, z, 2, seed)?);
        out.push(CorpusEntry::new(
            format!("{z}+through_double"),
            format!("{z}+genericthrough:double:seed{}", line_seed(seed, 50)),
        )?);
        out.push(CorpusEntry::new(
            format!("{z}+through_triple"),
            format!("{z}+genericthrough:triple:seed{}", line_seed(seed, 51)),
        )?);
    }
    Ok(out)
}

/// Every corpus member, deduplicated by id.
pub fn corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut out = family_corpus()?;
    out.extend(predictor_corpus(seed)?);
    out.extend(undetermined_corpus(seed)?);
    out.extend(["triangle", "a223"].iter().map(|s| CorpusEntry::new(*s, *s)).collect::<Result<Vec<_>>>()?);
    let mut seen = std::collections::BTreeSet::new();
    out.retain(|e| seen.insert(e.id.clone()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predictor_corpus_shape() {
        let c = predictor_corpus(0).unwrap();
        for e in &c {
            let inc = e.arrangement.incidence().unwrap();
            assert!(inc.max_multiplicity() <= 3, "{}", e.id);
            assert!(inc.n_j(3) <= 5, "{}", e.id);
        }
        let n3 = |id: &str| c.iter().find(|e| e.id == id).unwrap().arrangement.incidence().unwrap().n_j(3);
        assert_eq!(n3("pencil3:n3=1"), 1);
        assert_eq!(n3("pencil3:n3=2+1generic"), 2);
        assert_eq!(n3("pencil3:n3=3+2generic"), 3);
    }

    #[test]
    fn ids_are_unique_and_seed_free() {
        let a: Vec<String> = corpus(1).unwrap().into_iter().map(|e| e.id).collect();
        let b: Vec<String> = corpus(2).unwrap().into_iter().map(|e| e.id).collect();
        assert_eq!(a, b);
    }
}
