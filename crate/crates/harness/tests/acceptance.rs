//! One PASS/FAIL line per acceptance criterion. Criteria 2 and 3 test a
//! count that is false as stated; for those the target instead requires the
//! known failure shape (see `literal_failure_shape`) and exits 0 only if it
//! holds.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use charlab::Ambient;
use charlab_harness::dsl;
use charlab_harness::mining::{mine_instances, Limits};
use charlab_harness::{
    run_instances, run_suite, Catalog, InstanceReport, InstanceSpec, Kind, Loader, SuiteOptions,
    Verdict, VerificationReport,
};
use serde_json::{json, Value};

/// Mined specs and their reports, aligned by index.
struct Run {
    specs: Vec<InstanceSpec>,
    report: VerificationReport,
    elapsed: Duration,
}

fn run(kind: Kind) -> Run {
    let start = Instant::now();
    let loader = Loader::default();
    let specs = mine_instances(
        &Catalog::default_catalog(),
        kind,
        &Limits::default(),
        &loader,
    )
    .unwrap();
    let report = run_instances(&loader, &specs, &SuiteOptions::default());
    Run {
        specs,
        report,
        elapsed: start.elapsed(),
    }
}

struct Line {
    ok: bool,
    expected_failure: bool,
}

fn line(n: u32, ok: bool, detail: String) -> Line {
    println!(
        "criterion {n}: {} {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    Line {
        ok,
        expected_failure: false,
    }
}

fn all_pass(r: &VerificationReport) -> bool {
    !r.instances.is_empty() && r.passed()
}

fn order_of(report: &InstanceReport, name: &str) -> usize {
    let prefix = format!("{name} = ");
    let entry = report
        .group_names
        .iter()
        .find(|g| g.starts_with(&prefix))
        .unwrap();
    let tail = entry.rsplit("(order ").next().unwrap();
    tail.trim_end_matches(')').parse().unwrap()
}

/// Every literal failure must still have matching A-orbit counts.
fn literal_failure_shape(r: &VerificationReport) -> (usize, bool) {
    let fails = r.count(Verdict::Fail);
    let orbits = r
        .instances
        .iter()
        .all(|i| i.verdict != Verdict::Error && i.witnesses["orbit_counts_agree"] == json!(true));
    (fails, orbits)
}

fn s3_over_a3() -> InstanceReport {
    let spec: InstanceSpec = serde_json::from_value(json!({
        "kind": "THM_1_3",
        "ambient": "S(3)",
        "subgroups": { "A": "genlist([1,2])", "G": "genlist([3])", "N": "genlist([])" },
        "characters": { "theta": { "on": "N", "row": 0, "degree": 1, "det_order": 1 } }
    }))
    .unwrap();
    let r = run_instances(&Loader::default(), &[spec], &SuiteOptions::default());
    r.instances[0].clone()
}

fn criterion_1() -> Line {
    let r = run(Kind::Counterexample1);
    let got: Vec<(i64, i64)> = r
        .report
        .instances
        .iter()
        .map(|i| (i.lhs.unwrap_or(-1), i.rhs.unwrap_or(-1)))
        .collect();
    let ok = got == [(0, 2)] && all_pass(&r.report) && r.elapsed < Duration::from_secs(1);
    line(
        1,
        ok,
        format!(
            "|Irr_A(G|θ)|, |Irr_Aθ(Gθ|θ)| = {got:?} in {:.2?}",
            r.elapsed
        ),
    )
}

fn criterion_2() -> Line {
    let r = run(Kind::Thm13);
    let n = r.report.instances.len();
    let (fails, orbits) = literal_failure_shape(&r.report);
    let s3 = s3_over_a3();
    let ok = n >= 30 && fails == 0 && r.elapsed < Duration::from_secs(60);
    let mut l = line(
        2,
        ok,
        format!(
            "{n} instances in {:.2?}, {fails} literal mismatches; S3 > A3 > 1 gives {} vs {}; A-orbit counts agree on all: {orbits}",
            r.elapsed,
            s3.lhs.unwrap_or(-1),
            s3.rhs.unwrap_or(-1)
        ),
    );
    l.expected_failure = !ok
        && n >= 30
        && r.elapsed < Duration::from_secs(60)
        && orbits
        && (s3.lhs, s3.rhs) == (Some(1), Some(3))
        && s3.witnesses["orbit_counts_agree"] == json!(true);
    l
}

fn criterion_3() -> Line {
    let r = run(Kind::Cor14);
    let n = r.report.instances.len();
    let (fails, orbits) = literal_failure_shape(&r.report);
    let ok = n > 0 && fails == 0;
    let mut l = line(
        3,
        ok,
        format!(
            "{n} instances, {fails} literal mismatches; A_θ-orbit counts agree on all: {orbits}"
        ),
    );
    l.expected_failure = !ok && n > 0 && orbits;
    l
}

fn criterion_4() -> Line {
    let r = run(Kind::Lem11);
    let checked: i64 = r.report.instances.iter().filter_map(|i| i.rhs).sum();
    line(
        4,
        all_pass(&r.report),
        format!(
            "{} instances, {checked} (element, χ) pairs",
            r.report.instances.len()
        ),
    )
}

fn criterion_5() -> Line {
    let r = run(Kind::Ow21);
    let pairs: i64 = r.report.instances.iter().filter_map(|i| i.rhs).sum();
    let ok = all_pass(&r.report) && pairs >= 20;
    line(
        5,
        ok,
        format!(
            "{} instances, {pairs} (instance, U) pairs",
            r.report.instances.len()
        ),
    )
}

fn criterion_6() -> Line {
    let c22 = run(Kind::Cor22);
    let t24 = run(Kind::Thm24);
    let orders = |i: &InstanceReport, k: &str| i.witnesses["orders"][k].as_u64().unwrap_or(0);
    let z_lambda = t24
        .report
        .instances
        .iter()
        .filter(|i| orders(i, "Z") > 1 && i.witnesses["lambda_trivial"] == json!(false))
        .count();
    let c_nontrivial = t24
        .report
        .instances
        .iter()
        .filter(|i| orders(i, "C") > 1)
        .count();
    let ok = all_pass(&c22.report) && all_pass(&t24.report) && z_lambda > 0 && c_nontrivial > 0;
    line(
        6,
        ok,
        format!(
            "COR_2_2 {}/{}, THM_2_4 {}/{}; Z ≠ 1 with λ ≠ 1: {z_lambda}; C ≠ 1: {c_nontrivial}",
            c22.report.count(Verdict::Pass),
            c22.report.instances.len(),
            t24.report.count(Verdict::Pass),
            t24.report.instances.len()
        ),
    )
}

fn criterion_7() -> Line {
    let r = run(Kind::Thm31);
    let orbits = r
        .report
        .instances
        .iter()
        .all(|i| i.witnesses["orbit_structures_match"] == json!(true));
    let spot = |ambient: &str, p: u64, n: usize, value: i64| {
        r.specs.iter().zip(&r.report.instances).any(|(s, i)| {
            s.ambient == ambient
                && s.prime == Some(p)
                && order_of(i, "A") == order_of(i, "G")
                && order_of(i, "G") == 24
                && order_of(i, "N") == n
                && s.characters["mu"].row == 0
                && i.lhs == Some(value)
                && i.rhs == Some(value)
        })
    };
    let sl = spot("SL(2,3)", 3, 1, 6);
    let s4 = spot("S(4)", 2, 4, 2);
    let ok = all_pass(&r.report) && orbits && sl && s4;
    line(
        7,
        ok,
        format!(
            "{} instances, orbit structures match: {orbits}; SL(2,3) p=3 6=6: {sl}; S4/V4 p=2 2=2: {s4}",
            r.report.instances.len()
        ),
    )
}

fn criterion_8() -> Line {
    let mut slowest = Duration::ZERO;
    let mut tables = 0;
    let mut bad = Vec::new();
    for entry in Catalog::default_catalog().groups {
        let g = dsl::group_from_text(&entry.expr).unwrap();
        if g.order() > 200 {
            continue;
        }
        let start = Instant::now();
        let amb = Ambient::new(g);
        let t = amb.table(&amb.whole()).unwrap();
        let sq: i64 = t.degrees().iter().map(|d| d * d).sum();
        if t.check_orthogonality().is_err() || sq != amb.group().order() as i64 {
            bad.push(entry.expr.clone());
        }
        slowest = slowest.max(start.elapsed());
        tables += 1;
    }
    let mut actions = 0;
    let mut audit_ok = true;
    for kind in [Kind::Ow21, Kind::Cor22, Kind::Thm24] {
        for i in run(kind).report.instances {
            actions += 1;
            audit_ok &= i.verdict != Verdict::Error && i.witnesses["glauberman_audit"].is_object();
        }
    }
    let ok = bad.is_empty() && slowest < Duration::from_secs(5) && audit_ok;
    line(
        8,
        ok,
        format!("{tables} tables (slowest {slowest:.2?}, bad {bad:?}); Glauberman audit on {actions} coprime actions: {audit_ok}"),
    )
}

fn criterion_9() -> Line {
    let opts = SuiteOptions::default();
    let a = run_suite(&Catalog::default_catalog(), &opts)
        .unwrap()
        .to_json();
    let b = run_suite(&Catalog::default_catalog(), &opts)
        .unwrap()
        .to_json();
    let parsed: Value = serde_json::from_str(&a).unwrap();
    line(
        9,
        a == b,
        format!(
            "two default runs, {} bytes, {} instances",
            a.len(),
            parsed["instances"].as_array().unwrap().len()
        ),
    )
}

fn main() -> ExitCode {
    let lines = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    let unexpected = lines
        .iter()
        .filter(|l| !l.ok && !l.expected_failure)
        .count();
    let documented = lines.iter().filter(|l| l.expected_failure).count();
    println!(
        "acceptance: {} PASS, {} FAIL ({documented} with the documented literal-count failure shape)",
        lines.iter().filter(|l| l.ok).count(),
        lines.iter().filter(|l| !l.ok).count()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
