//! Acceptance criteria 1-11. Prints one `[PASS]` or `[FAIL]` line per
//! criterion and fails if any criterion fails.

use std::time::{Duration, Instant};

use logder_core::arrangement::{add_generic_line, parse_family_spec, same_lattice, weak_combinatorics_equal, Arrangement};
use logder_core::invariants::{
    classify_freeness_with, predict_r_from_combinatorics, tau_max, tjurina, tjurina_from_points, FreenessLabel,
    Prediction,
};
use logder_core::verify::{corpus, predictor_corpus, run_suite_with, undetermined_corpus, Verifier};
use logder_core::SyzygyEngine;

const SEED: u64 = 0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&SyzygyEngine) -> Outcome);

fn fam(spec: &str) -> Arrangement {
    parse_family_spec(spec).unwrap().build().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, || format!("took {:?}, limit {limit:?}", t.elapsed()))
}

fn mdr(e: &SyzygyEngine, a: &Arrangement) -> Result<usize, String> {
    Ok(e.mdr(a).map_err(err)?.0)
}

fn tau(a: &Arrangement) -> Result<usize, String> {
    Ok(tjurina(&a.incidence().map_err(err)?.n))
}

fn c1(e: &SyzygyEngine) -> Outcome {
    let t = Instant::now();
    let (z1, z2) = (fam("ziegler:1"), fam("ziegler:2"));
    let (r1, r2) = (mdr(e, &z1)?, mdr(e, &z2)?);
    ensure((r1, r2) == (5, 6), || format!("mdr = ({r1}, {r2})"))?;
    ensure(same_lattice(&z1, &z2).map_err(err)?, || "lattices differ".into())?;
    for z in [&z1, &z2] {
        let inc = z.incidence().map_err(err)?;
        let got = (inc.n_j(2), inc.n_j(3), tjurina(&inc.n));
        ensure(got == (18, 6, 42), || format!("(n2, n3, tau) = {got:?}"))?;
    }
    within(t, Duration::from_secs(10))?;
    Ok(format!("mdr 5 / 6, same lattice, n2=18 n3=6 tau=42, {:?}", t.elapsed()))
}

fn c2(e: &SyzygyEngine) -> Outcome {
    let (z1, z2) = (fam("ziegler:1"), fam("ziegler:2"));
    let (t1, t2) = (tau(&z1)?, tau(&z2)?);
    let (m1, m2) = (tau_max(9, 5).map_err(err)?, tau_max(9, 6).map_err(err)?);
    ensure(t2 == 42 && m2 == 42, || format!("tau(z2) = {t2}, tau_max(9,6) = {m2}"))?;
    ensure(t1 == 42 && m1 == 46, || format!("tau(z1) = {t1}, tau_max(9,5) = {m1}"))?;
    let l2 = classify_freeness_with(e, &z2).map_err(err)?.labels;
    let l1 = classify_freeness_with(e, &z1).map_err(err)?.labels;
    ensure(l2 == vec![FreenessLabel::MaximalTjurina { d: 9, r: 6 }], || format!("ziegler:2 labels {l2:?}"))?;
    ensure(l1 == vec![FreenessLabel::Other], || format!("ziegler:1 labels {l1:?}"))?;
    Ok("ziegler:2 MaximalTjurina(9,6), ziegler:1 Other (42 < 46)".into())
}

fn family_types(e: &SyzygyEngine, name: &str, ds: std::ops::RangeInclusive<usize>, k: usize) -> Result<(), String> {
    for d in ds {
        let a = fam(&format!("{name}:d={d}"));
        let (r, t) = (mdr(e, &a)?, tau(&a)?);
        let tm = tau_max(d, d - k).map_err(err)?;
        ensure(a.degree() == d && r == d - k && t == tm, || {
            format!("{name} d={d}: mdr {r}, tau {t}, tau_max {tm}")
        })?;
    }
    Ok(())
}

fn c3(e: &SyzygyEngine) -> Outcome {
    let t = Instant::now();
    family_types(e, "dminus4", 8..=14, 4)?;
    within(t, Duration::from_secs(120))?;
    Ok(format!("d = 8..14: mdr = d-4, tau = tau_max(d, d-4), {:?}", t.elapsed()))
}

fn c4(e: &SyzygyEngine) -> Outcome {
    family_types(e, "dminus3", 7..=13, 3)?;
    Ok("d = 7..13: mdr = d-3, tau = tau_max(d, d-3)".into())
}

/// Every member of a chain is maximal Tjurina of type `(2k-1+j, k-1+j)` and
/// every step passes the maximal Tjurina addition check.
fn chain(e: &SyzygyEngine, name: &str, k: usize, last_j: usize) -> Result<usize, String> {
    let v = Verifier::new(e);
    let mut prev: Option<Arrangement> = None;
    for j in 0..=last_j {
        let a = fam(&format!("{name}:k={k},j={j}"));
        let (d, r) = (2 * k - 1 + j, k - 1 + j);
        let labels = classify_freeness_with(e, &a).map_err(err)?.labels;
        ensure(a.degree() == d && labels.contains(&FreenessLabel::MaximalTjurina { d, r }), || {
            format!("{name} k={k} j={j}: labels {labels:?}")
        })?;
        if let Some(p) = prev {
            let added: Vec<_> = a.hyperplanes().iter().filter(|h| p.position(h).is_none()).collect();
            ensure(added.len() == 1, || format!("{name} k={k} j={j} is not a one-line extension"))?;
            let res = v.check_maximal_tjurina_addition(&p, name, added[0]).map_err(err)?;
            let dp = (d - 1) as i64;
            let rp = (r - 1) as i64;
            let inc = res.details.get("tau").zip(res.details.get("tau_prime")).map(|(a, b)| a - b);
            ensure(res.hypotheses_hold && !res.is_failure() && inc == Some(2 * dp - rp - 2), || {
                format!("{name} k={k} step to j={j}: {res:?}")
            })?;
        }
        prev = Some(a);
    }
    Ok(last_j + 1)
}

fn c5(e: &SyzygyEngine) -> Outcome {
    let mut n = 0;
    for k in 3..=6 {
        n += chain(e, "thm100", k, k - 1)?;
    }
    Ok(format!("{n} arrangements maximal Tjurina of the stated types, all steps increment tau by 2d'-r'-2"))
}

fn c6(e: &SyzygyEngine) -> Outcome {
    let mut n = 0;
    for k in [5, 7] {
        n += chain(e, "prop101", k, 2 * k - 2)?;
    }
    Ok(format!("{n} arrangements through A_(2k-2) for k = 5, 7"))
}

fn c7(e: &SyzygyEngine) -> Outcome {
    let defined = predictor_corpus(SEED).map_err(err)?;
    for c in &defined {
        let p = predict_r_from_combinatorics(&c.arrangement).map_err(err)?;
        let r = mdr(e, &c.arrangement)?;
        ensure(p.value() == Some(r), || format!("{} ({}): predicted {p:?}, mdr {r}", c.id, c.spec))?;
    }
    let abstain = undetermined_corpus(SEED).map_err(err)?;
    for c in &abstain {
        let p = predict_r_from_combinatorics(&c.arrangement).map_err(err)?;
        ensure(matches!(p, Prediction::Undetermined { .. }), || format!("{}: predicted {p:?}", c.id))?;
    }
    Ok(format!("{} / {} defined and equal, {} undetermined", defined.len(), defined.len(), abstain.len()))
}

fn suite(e: &SyzygyEngine, name: &str, limit: Option<Duration>) -> Outcome {
    let t = Instant::now();
    let rep = run_suite_with(e, name, SEED).map_err(err)?;
    ensure(rep.success(), || rep.to_text())?;
    if let Some(limit) = limit {
        within(t, limit)?;
    }
    Ok(format!(
        "{} checks: {} passed, {} vacuous, {} skipped, 0 violations, {:?}",
        rep.total,
        rep.passed,
        rep.vacuous,
        rep.skipped,
        t.elapsed()
    ))
}

fn c8(e: &SyzygyEngine) -> Outcome {
    suite(e, "addition_deletion", Some(Duration::from_secs(300)))
}

fn c9(e: &SyzygyEngine) -> Outcome {
    suite(e, "freeness", None)
}

fn c10(e: &SyzygyEngine) -> Outcome {
    let v = Verifier::new(e);
    let (z1, z2) = (fam("ziegler:1"), fam("ziegler:2"));
    let seed = 17;
    for (a, through, from, to) in [(&z1, true, 5, 6), (&z2, true, 6, 6), (&z1, false, 5, 6), (&z2, false, 6, 7)] {
        let res = v.check_generic_addition(a, "ziegler", seed, through).map_err(err)?;
        let got = (res.details["r_prime"], res.details["r"]);
        ensure(got == (from, to) && !res.is_failure(), || format!("through={through}: {res:?}"))?;
    }
    let b1 = add_generic_line(&z1, seed, None).map_err(err)?;
    let b2 = add_generic_line(&z2, seed, None).map_err(err)?;
    ensure(weak_combinatorics_equal(&b1, &b2).map_err(err)?, || "weak combinatorics differ".into())?;
    Ok("through triple point 5->6 and 6->6; generic 5->6 and 6->7 with equal weak combinatorics".into())
}

fn c11(e: &SyzygyEngine) -> Outcome {
    let records = e.audit_records();
    ensure(!records.is_empty(), || "no audit records".into())?;
    let bad: Vec<_> = records.iter().filter(|r| r.agreeing < 2).collect();
    ensure(bad.is_empty(), || format!("disagreements: {bad:?}"))?;
    let all = corpus(SEED).map_err(err)?;
    for c in &all {
        let inc = c.arrangement.incidence().map_err(err)?;
        ensure(tjurina(&inc.n) == tjurina_from_points(&inc), || format!("tau routes differ on {}", c.id))?;
    }
    let full = records.iter().filter(|r| r.agreeing == 3).count();
    Ok(format!(
        "{} nullities audited ({full} with 3/3 agreement), tau routes agree on {} arrangements",
        records.len(),
        all.len()
    ))
}

#[test]
fn acceptance() {
    let engine = SyzygyEngine::new().with_audit(2024);
    let criteria: [Criterion; 11] = [
        ("Ziegler pair", c1),
        ("maximal Tjurina bound", c2),
        ("(d, d-4) family", c3),
        ("(d, d-3) family", c4),
        ("thm100 chains", c5),
        ("prop101 extension", c6),
        ("predictor agreement", c7),
        ("addition-deletion suite", c8),
        ("Ziegler restriction / Yoshinaga", c9),
        ("generic line examples", c10),
        ("oracle redundancy", c11),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f(&engine) {
            Ok(msg) => println!("[PASS] {:>2}. {name}: {msg}", i + 1),
            Err(msg) => {
                println!("[FAIL] {:>2}. {name}: {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    println!("total time {:?}", start.elapsed());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
