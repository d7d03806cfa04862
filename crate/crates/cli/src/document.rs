//! JSON documents emitted by the CLI and their plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use logder_core::arrangement::{same_lattice, weak_combinatorics_equal, Arrangement};
use logder_core::invariants::{
    classify_freeness_with, classify_multiplicity_case_with, predict_r_from_combinatorics, tau_labels, tjurina,
    tjurina_from_points,
    ConsistencyCheck, FreenessLabel, MultiplicityCase, Prediction,
};
use logder_core::syzygy::default_mingen_bound;
use logder_core::{Result, SyzygyEngine};
use serde::Serialize;

pub const SCHEMA: &str = "logder/1";

#[derive(Debug, Serialize)]
pub struct MingenDegrees {
    pub degrees: Vec<usize>,
    pub bound: usize,
}

/// Projection of the library values for one arrangement. Fields that only
/// make sense for essential line arrangements are `null` otherwise.
#[derive(Debug, Serialize)]
pub struct AnalysisDocument {
    pub schema: &'static str,
    pub input: String,
    pub nvars: usize,
    pub d: usize,
    pub essential: bool,
    pub n: Option<BTreeMap<usize, usize>>,
    pub tau: Option<usize>,
    pub char_poly: Option<Vec<i64>>,
    pub b2_zero: Option<i64>,
    pub mdr: usize,
    pub d0_dims: Vec<usize>,
    pub mingen_degrees: Option<MingenDegrees>,
    pub classification: Option<Vec<FreenessLabel>>,
    pub multiplicity_case: Option<MultiplicityCase>,
    pub predicted_r: Option<Prediction>,
    pub consistency: Vec<ConsistencyCheck>,
}

pub struct AnalyzeOptions {
    pub max_degree: Option<usize>,
    pub skip_mingens: bool,
}

impl AnalysisDocument {
    pub fn build(engine: &SyzygyEngine, input: &str, a: &Arrangement, opts: &AnalyzeOptions) -> Result<Self> {
        let d = a.degree();
        let (mdr, _) = engine.mdr(a)?;
        let cap = opts.max_degree.unwrap_or(d);
        let d0_dims = (0..=cap).map(|r| engine.d0_dimension(a, r)).collect::<Result<Vec<_>>>()?;
        let mut doc = AnalysisDocument {
            schema: SCHEMA,
            input: input.to_string(),
            nvars: a.nvars(),
            d,
            essential: a.is_essential(),
            n: None,
            tau: None,
            char_poly: None,
            b2_zero: None,
            mdr,
            d0_dims,
            mingen_degrees: None,
            classification: None,
            multiplicity_case: None,
            predicted_r: None,
            consistency: Vec::new(),
        };
        if a.nvars() != 3 || !a.is_essential() {
            return Ok(doc);
        }
        let inc = a.incidence()?;
        let tau = tjurina(&inc.n);
        doc.consistency.push(ConsistencyCheck {
            name: "char_poly_two_routes".into(),
            holds: inc.char_poly == inc.char_poly_mobius(),
        });
        doc.consistency.push(ConsistencyCheck { name: "tau_two_routes".into(), holds: tau == tjurina_from_points(&inc) });
        doc.n = Some(inc.n.clone());
        doc.tau = Some(tau);
        doc.char_poly = Some(inc.char_poly.clone());
        doc.b2_zero = Some(inc.b2_zero);
        if opts.skip_mingens {
            doc.classification = Some(tau_labels(d, mdr, tau)?);
        } else {
            let c = classify_freeness_with(engine, a)?;
            if c.mingen_degrees.is_some() {
                let bound = default_mingen_bound(a);
                doc.mingen_degrees =
                    Some(MingenDegrees { degrees: engine.profile(a, bound)?.mingen_degrees, bound });
            }
            doc.consistency.extend(c.consistency);
            doc.classification = Some(c.labels);
        }
        if d >= 3 {
            doc.multiplicity_case = Some(classify_multiplicity_case_with(engine, a)?);
        }
        let prediction = predict_r_from_combinatorics(a)?;
        if let Prediction::Value { r } = prediction {
            doc.consistency.push(ConsistencyCheck { name: "predictor".into(), holds: r == mdr });
        }
        doc.predicted_r = Some(prediction);
        Ok(doc)
    }

    pub fn consistent(&self) -> bool {
        self.consistency.iter().all(|c| c.holds)
    }

    pub fn to_text(&self) -> String {
        let mut rows: Vec<(&str, String)> = vec![
            ("input", self.input.clone()),
            ("variables", self.nvars.to_string()),
            ("hyperplanes", self.d.to_string()),
            ("essential", self.essential.to_string()),
        ];
        if let Some(n) = &self.n {
            let parts: Vec<String> = n.iter().map(|(j, c)| format!("n_{j}={c}")).collect();
            rows.push(("weak combinatorics", parts.join(" ")));
        }
        if let Some(t) = self.tau {
            rows.push(("tau", t.to_string()));
        }
        if let Some(c) = &self.char_poly {
            rows.push(("char poly (ascending)", format!("{c:?}")));
        }
        if let Some(b) = self.b2_zero {
            rows.push(("b2^0", b.to_string()));
        }
        rows.push(("mdr", self.mdr.to_string()));
        rows.push(("dim D0_r", format!("{:?}", self.d0_dims)));
        if let Some(m) = &self.mingen_degrees {
            rows.push(("mingen degrees", format!("{:?} (degrees <= {})", m.degrees, m.bound)));
        }
        if let Some(labels) = &self.classification {
            let text: Vec<String> = labels.iter().map(label_text).collect();
            rows.push(("classification", text.join(", ")));
        }
        if let Some(c) = self.multiplicity_case {
            rows.push(("multiplicity case", format!("{c:?}")));
        }
        if let Some(p) = &self.predicted_r {
            rows.push((
                "predicted r",
                match p {
                    Prediction::Value { r } => r.to_string(),
                    Prediction::Undetermined { reason } => format!("undetermined ({reason})"),
                },
            ));
        }
        for c in &self.consistency {
            rows.push(("check", format!("{} {}", c.name, if c.holds { "ok" } else { "VIOLATED" })));
        }
        table(&rows)
    }
}

fn label_text(l: &FreenessLabel) -> String {
    match l {
        FreenessLabel::Free { exponents: [a, b, c] } => format!("Free, exponents ({a},{b},{c})"),
        FreenessLabel::NearlyFree { exponents: [a, b, c, e] } => format!("NearlyFree, exponents ({a},{b},{c},{e})"),
        FreenessLabel::MaximalTjurina { d, r } => format!("MaximalTjurina({d},{r})"),
        FreenessLabel::Other => "Other".into(),
    }
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

#[derive(Debug, Serialize)]
pub struct CompareDocument {
    pub schema: &'static str,
    pub a: String,
    pub b: String,
    pub identical: bool,
    pub same_lattice: Option<bool>,
    pub weak_combinatorics_equal: Option<bool>,
    pub mdr_a: usize,
    pub mdr_b: usize,
    pub verdict: String,
}

impl CompareDocument {
    pub fn build(engine: &SyzygyEngine, (ia, a): (&str, &Arrangement), (ib, b): (&str, &Arrangement)) -> Result<Self> {
        let identical = a.nvars() == b.nvars() && a.canonical_key() == b.canonical_key();
        let planar = a.nvars() == 3 && b.nvars() == 3;
        let (same, weak) = if planar {
            (Some(same_lattice(a, b)?), Some(weak_combinatorics_equal(a, b)?))
        } else {
            (None, None)
        };
        let (mdr_a, mdr_b) = (engine.mdr(a)?.0, engine.mdr(b)?.0);
        let verdict = if identical {
            "identical"
        } else if same == Some(true) && mdr_a != mdr_b {
            "same-lattice-different-mdr"
        } else if same == Some(true) {
            "same-lattice"
        } else if weak == Some(true) && mdr_a != mdr_b {
            "same-weak-combinatorics-different-mdr"
        } else if weak == Some(true) {
            "same-weak-combinatorics"
        } else {
            "different"
        };
        Ok(CompareDocument {
            schema: SCHEMA,
            a: ia.to_string(),
            b: ib.to_string(),
            identical,
            same_lattice: same,
            weak_combinatorics_equal: weak,
            mdr_a,
            mdr_b,
            verdict: verdict.to_string(),
        })
    }

    pub fn to_text(&self) -> String {
        let opt = |v: Option<bool>| v.map_or("n/a".to_string(), |b| b.to_string());
        table(&[
            ("A", self.a.clone()),
            ("B", self.b.clone()),
            ("identical", self.identical.to_string()),
            ("same lattice", opt(self.same_lattice)),
            ("same weak combinatorics", opt(self.weak_combinatorics_equal)),
            ("mdr(A)", self.mdr_a.to_string()),
            ("mdr(B)", self.mdr_b.to_string()),
            ("verdict", self.verdict.clone()),
        ])
    }
}
