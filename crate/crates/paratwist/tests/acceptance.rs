//! The acceptance suite. Each criterion runs one documented CLI command
//! in-process, reads its JSON report and applies pinned tolerances.
//!
//! One `PASS`/`FAIL` line per criterion is written straight to stderr, so it
//! shows up without `--nocapture`.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use serde_json::Value;

/// Relative deviation allowed in numeric comparisons.
const DEVIATION: f64 = 1e-6;
/// Relative tail allowed in numeric evaluations.
const TAIL: f64 = 1e-10;

/// Criteria whose failure is expected and documented in the README.
const KNOWN_FAILURES: &[&str] = &["6"];

struct Line {
    id: &'static str,
    title: &'static str,
    passed: bool,
    detail: String,
    seconds: Option<f64>,
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("paratwist-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Run `paratwist <args> --report <tmp>` in-process; returns the exit code and report.
fn cli(args: &str) -> (i32, Value) {
    let path = scratch("report.json");
    let mut argv: Vec<String> = vec!["paratwist".into()];
    argv.extend(args.split_whitespace().map(String::from));
    argv.extend(["--report".into(), path.display().to_string()]);
    let code = paratwist::cli::main_with_args(argv.into_iter().map(Into::into));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{args}: no report: {e}"));
    (code, serde_json::from_str(&text).unwrap())
}

fn all(v: &Value, f: impl Fn(&Value) -> bool) -> bool {
    v.as_array().is_some_and(|a| !a.is_empty() && a.iter().all(f))
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or(f64::INFINITY)
}

fn criterion(
    lines: &mut Vec<Line>,
    id: &'static str,
    title: &'static str,
    run: impl FnOnce() -> (bool, String),
) {
    let start = Instant::now();
    let (passed, detail) = run();
    lines.push(Line { id, title, passed, detail, seconds: Some(start.elapsed().as_secs_f64()) });
}

fn gl2_calibration() -> (bool, String) {
    let (code, r) = cli("gl2-twist --p 3 --p 5 --terms 40");
    let twists = &r["result"]["twist"];
    let ok = code == 0
        && all(twists, |t| t["passed"] == true && t["truncation"].as_u64() >= Some(40))
        && twists.as_array().map(Vec::len) == Some(2);
    (ok, "slash sum = W(chi) chi(n) a_n exactly, p = 3, 5, q^40".into())
}

fn gl2_commutation() -> (bool, String) {
    let (code, r) = cli("gl2-twist --p 3 --ell 2 --terms 40");
    let ok = code == 0 && all(&r["result"]["commutation"], |c| c["report"]["passed"] == true);
    (ok, "T(2) T_chi = chi(2) T_chi T(2) on Delta, exact".into())
}

fn cosets() -> (bool, String) {
    let (code, r) = cli("verify cosets");
    let fams = &r["result"]["families"];
    let ok = code == 0
        && fams.as_array().map(Vec::len) == Some(12)
        && all(fams, |f| {
            f["count"] == f["expected_count"]
                && f["disjoint"] == true
                && f["global_disjoint"] == true
                && (f["r"] != 0 || f["divisors_ok"] == true)
        });
    (ok, "T1, T2 x l in {2,3} x r in {0,1,2}: counts, disjointness, divisors".into())
}

fn consistency() -> (bool, String) {
    let (code, r) = cli("verify consistency");
    let fams = &r["result"]["families"];
    let at3 = fams.as_array().map_or(0, |a| a.iter().filter(|f| f["p"] == 3 && f["passed"] == true).count());
    let spot = all(fams, |f| f["p"] != 5 || (f["family"] == 10 && f["passed"] == true));
    let ok = code == 0 && at3 == 14 && spot && all(fams, |f| f["mismatches"] == 0);
    (ok, format!("{at3}/14 families at p = 3, family 10 at p = 5"))
}

fn local() -> (bool, String) {
    let (code, r) = cli("verify local --target all --p 3");
    let ids = &r["result"]["identities"];
    let names: Vec<&str> = ids
        .as_array()
        .map(|a| a.iter().filter_map(|i| i["name"].as_str()).collect())
        .unwrap_or_default();
    let ok = code == 0
        && ["full", "lemma-p1", "lemma-p2", "lemma-p4", "lemma-p3"].iter().all(|n| names.contains(n))
        && all(ids, |i| i["passed"] == true && i["mismatches"] == 0);
    (ok, format!("{} identities incl. P1+P2+P3+P4 = 14 terms, 0 mismatched cosets", names.len()))
}

/// Criterion 6 on chi10, plus the same well-formedness on chi10^2.
fn well_formedness(extra: &mut Vec<String>) -> (bool, String) {
    let (code, r) = cli("twist --form chi10 --p 3 --check");
    let checks = &r["result"]["checks"];
    let a = checks["lattice_support"]["off_lattice_cancels"] == true && r["result"]["output_level"] == 81;
    let b = checks["nonzero"] == true;
    let inv = &checks["invariance"];
    let c = all(inv, |x| x["member"] == true && num(&x["deviation"]) < DEVIATION && num(&x["tail"]) < TAIL);
    let vacuous = all(inv, |x| x["vacuous"] == true);
    let computed = &r["result"]["computed"];
    let requested = &r["result"]["requested"];

    let (sq_code, sq) = cli("twist --form chi10-squared --p 3 --window 81,1");
    let sq_nonzero = sq["result"]["nonzero"].as_u64().unwrap_or(0);
    extra.push(format!(
        "6*  chi10^2 (weight 20): {} of {} outputs computed, {sq_nonzero} nonzero (exit {sq_code})",
        sq["result"]["computed"], sq["result"]["requested"]
    ));
    let detail = format!(
        "(a) {} (b) {} (c) {}{}; {computed}/{requested} outputs computed, exit {code}",
        a,
        b,
        c,
        if vacuous { " vacuously, the twist is identically zero on the window" } else { "" }
    );
    (a && b && c, detail)
}

fn commutation(extra: &mut Vec<String>) -> (bool, String) {
    let (code, r) = cli("verify commutation --p 3 --ell 2 --square");
    let rels = &r["result"]["form"]["relations"];
    let tolerances = all(rels, |x| {
        x["passed"] == true
            && (x["exact"] == true || (num(&x["max_deviation"]) < DEVIATION && num(&x["max_tail"]) < TAIL))
    });
    let vacuous = all(rels, |x| x["vacuous"] == true);
    let sq = &r["result"]["square"];
    let sq_ok = sq["relation"]["passed"] == true && sq["relation"]["vacuous"] == false && sq["control_detects"] == true;
    extra.push(format!(
        "7*  chi10^2: relation (i) {} on {} indices, {}, factor 1 rejected {}",
        sq["relation"]["passed"], sq["relation"]["compared"], sq["relation"]["note"], sq["control_detects"]
    ));
    let detail = format!(
        "(i) exact, (ii) and (iii) within {DEVIATION:e}{}; T(1,2,2,4) eigenvalue spread {}",
        if vacuous { ", all vacuous on chi10" } else { "" },
        r["result"]["form"]["eigenvalue_spread"]
    );
    (code == 0 && tolerances && sq_ok, detail)
}

fn identities(oracle: &mut Option<(bool, String)>) -> (bool, String) {
    let (_, r) = cli("--seed 1 verify identities --p 3 --cases 1000 --oracle-cases 20");
    let props = &r["result"]["properties"];
    let find = |name: &str| {
        props
            .as_array()
            .and_then(|a| a.iter().find(|x| x["name"] == name))
            .cloned()
            .unwrap_or(Value::Null)
    };
    let o = find("oracle-equality");
    *oracle = Some((
        o["passed"] == true && o["cases"].as_u64() >= Some(20),
        format!("{} random single-coefficient inputs, {} failures", o["cases"], o["failures"]),
    ));
    let wanted = [("gauss-law", 3), ("flipup", 100), ("multiplier", 1000), ("hecke-factorization", 1000)];
    let ok = wanted.iter().all(|(n, c)| {
        let x = find(n);
        x["passed"] == true && x["cases"].as_u64() == Some(*c)
    });
    let sums = all(&r["result"]["character_sums"], |s| (s["passed"] == true) != (s["control"] == true));
    (ok && sums, "Gauss law p = 3, 5, 7; flipup 100; multiplier 1000; factorization 1000".into())
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();
    let mut extra = Vec::new();
    let mut oracle = None;
    criterion(&mut lines, "1", "GL(2) calibration", gl2_calibration);
    criterion(&mut lines, "2", "GL(2) commutation", gl2_commutation);
    criterion(&mut lines, "3", "coset decompositions", cosets);
    criterion(&mut lines, "4", "theorem/corollary consistency", consistency);
    criterion(&mut lines, "5", "local integral identity", local);
    criterion(&mut lines, "6", "twist well-formedness on chi10", || well_formedness(&mut extra));
    criterion(&mut lines, "7", "Siegel commutation on chi10", || commutation(&mut extra));
    let start = Instant::now();
    let props = identities(&mut oracle);
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = oracle.expect("oracle result");
    lines.push(Line { id: "8", title: "oracle equality", passed, detail, seconds: Some(seconds) });
    lines.push(Line { id: "9", title: "property suites", passed: props.0, detail: props.1, seconds: None });

    let mut err = std::io::stderr().lock();
    writeln!(err, "\nacceptance summary").unwrap();
    for l in &lines {
        let status = if l.passed { "PASS" } else { "FAIL" };
        let known = if !l.passed && KNOWN_FAILURES.contains(&l.id) { " (known, see README)" } else { "" };
        let time = l.seconds.map_or("same run as 8".to_string(), |s| format!("{s:.1} s"));
        writeln!(err, "{:>2}. {status} {}{known}: {} [{time}]", l.id, l.title, l.detail).unwrap();
    }
    for e in &extra {
        writeln!(err, "{e}").unwrap();
    }
    drop(err);

    for l in &lines {
        let expected = !KNOWN_FAILURES.contains(&l.id);
        assert_eq!(l.passed, expected, "criterion {} ({}): {}", l.id, l.title, l.detail);
    }
    assert!(extra.iter().any(|e| e.starts_with("6*") && !e.contains(" 0 nonzero")));
    assert!(extra.iter().any(|e| e.starts_with("7*") && e.contains("relation (i) true") && e.contains("rejected true")));
}
