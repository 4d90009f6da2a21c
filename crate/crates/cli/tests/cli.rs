//! End-to-end behaviour of the command-line front end.

use std::process::Command;

use e8jacobi_cli::cache::DiskCache;
use e8jacobi_cli::doc::{PolyDoc, ResultDocument, Verdict};
use e8jacobi_cli::{run, EXIT_INCONSISTENT, EXIT_OK, EXIT_USAGE};
use e8jacobi_core::constructor::{BasisStore, Engine};
use e8jacobi_core::graded_ring::{parse_poly, BiDegree, LOWER_AB};

fn ok(args: &[&str]) -> String {
    let mut argv = vec!["e8jacobi"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    out.stdout
}

fn json(args: &[&str]) -> ResultDocument {
    let mut a = args.to_vec();
    a.extend_from_slice(&["--format", "json"]);
    serde_json::from_str(&ok(&a)).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["dim", "-16", "5"]), "2\n");
    assert_eq!(ok(&["profile", "2"]), "x^-4 + x^-2 + 1\n");
    assert_eq!(ok(&["dim", "3", "7"]), "0\n");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(["e8jacobi", "--no-such-flag", "dim", "1", "1"]).code, EXIT_USAGE);
    assert_eq!(run(["e8jacobi", "dim", "1"]).code, EXIT_USAGE);
    assert_eq!(run(["e8jacobi", "profile", "2", "--window", "5:1"]).code, EXIT_USAGE);
    assert_eq!(run(["e8jacobi", "certify", "/nonexistent/form.txt"]).code, EXIT_USAGE);
    assert_eq!(run(["e8jacobi", "frobnicate"]).code, EXIT_USAGE);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_e8jacobi");
    let out = Command::new(bin).args(["dim", "-4", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1\n");
    let out = Command::new(bin).arg("--bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(!out.stderr.is_empty());
}

#[test]
fn documents_round_trip() {
    for args in [
        vec!["basis", "-16", "5"],
        vec!["profile", "3"],
        vec!["module-gens", "2"],
        vec!["lb", "6"],
        vec!["tables", "--max-index", "2"],
    ] {
        let d = json(&args);
        assert_eq!(d.schema_version, 1);
        let again: ResultDocument = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(again, d, "{args:?}");
    }
    let d = json(&["basis", "-16", "5"]);
    let basis = Engine::new().basis(-16, 5).unwrap();
    let forms: Vec<_> = d.forms.iter().map(|f| f.to_poly().unwrap()).collect();
    assert_eq!(forms, basis.forms);
    let certs: Vec<_> = d.certificates.iter().map(|c| c.to_certificate().unwrap()).collect();
    assert_eq!(certs, basis.certificates);
}

#[test]
fn rationals_are_written_in_lowest_terms_with_named_exponents() {
    let p = parse_poly(&LOWER_AB, "6/4 E4^2 b5 - 3 E6 a2 a3").unwrap();
    let v = serde_json::to_value(PolyDoc::from_poly(&p)).unwrap();
    let text = v.to_string();
    assert!(text.contains("\"3/2\""), "{text}");
    assert!(text.contains("\"-3/1\""), "{text}");
    assert!(text.contains("{\"E4\":2,\"b5\":1}"), "{text}");
    assert_eq!(serde_json::from_value::<PolyDoc>(v).unwrap().to_poly().unwrap(), p);
}

#[test]
fn cache_is_transparent_and_used() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let plain = ok(&["basis", "-26", "7", "--format", "json"]);
    let first = ok(&["basis", "-26", "7", "--format", "json", "--cache-dir", d]);
    let cache = DiskCache::open(dir.path()).unwrap();
    let path = cache.path_for(BiDegree::new(-26, 7));
    assert!(path.exists());
    let second = ok(&["basis", "-26", "7", "--format", "json", "--cache-dir", d]);
    // the echoed command differs; everything else must not
    let strip = |s: &str| {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("command");
        v
    };
    assert_eq!(strip(&plain), strip(&first));
    assert_eq!(first, second);
    assert_eq!(cache.load(BiDegree::new(-26, 7)).unwrap(), *Engine::new().basis(-26, 7).unwrap());
    // a corrupt entry is ignored, not trusted
    std::fs::write(&path, "{").unwrap();
    assert!(cache.load(BiDegree::new(-26, 7)).is_none());
    assert_eq!(ok(&["basis", "-26", "7", "--format", "json", "--cache-dir", d]), first);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_e8jacobi");
    let out = Command::new(bin)
        .args(["dim", "-4", "2"])
        .env("E8JACOBI_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
}

#[test]
fn jobs_do_not_change_output() {
    let a = ok(&["profile", "4", "--jobs", "1", "--format", "json"]);
    let b = ok(&["profile", "4", "--jobs", "4", "--format", "json"]);
    let strip = |s: &str| {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("command");
        v
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(ok(&["lb", "6", "--jobs", "1"]), ok(&["lb", "6", "--jobs", "3"]));
}

#[test]
fn certify_reads_text_and_documents() {
    let dir = tempfile::tempdir().unwrap();
    let a3 = dir.path().join("a3.txt");
    std::fs::write(&a3, "a3\n").unwrap();
    let d = json(&["certify", a3.to_str().unwrap()]);
    assert!(matches!(d.verdict, Some(Verdict::Rejected { failing_l: 1, .. })), "{:?}", d.verdict);

    let basis = json(&["basis", "-16", "5"]);
    let f = dir.path().join("phi.json");
    std::fs::write(&f, serde_json::to_string(&basis.forms[1]).unwrap()).unwrap();
    let d = json(&["certify", f.to_str().unwrap()]);
    assert!(matches!(d.verdict, Some(Verdict::Certified { .. })));
    assert_eq!(d.certificates.len(), 1);

    // forms over A_m, B_m are rewritten first
    let upper = dir.path().join("a1.txt");
    std::fs::write(&upper, "A1").unwrap();
    assert!(ok(&["certify", upper.to_str().unwrap()]).starts_with("certified"));
}

#[test]
fn verify_runs_the_numeric_checks() {
    let d = json(&["verify", "4", "1", "--samples", "1"]);
    assert_eq!(d.oracle.len(), 1);
    assert!(d.oracle[0].passed, "{:?}", d.oracle[0]);
    // an impossible tolerance is reported as a failed check
    let out = run(["e8jacobi", "verify", "4", "1", "--samples", "1", "--tol", "1e-300"]);
    assert_eq!(out.code, EXIT_INCONSISTENT);
    assert!(out.stdout.contains("FAIL"));
}

#[test]
fn timing_is_opt_in() {
    assert!(json(&["dim", "0", "1"]).timing_ms.is_none());
    assert!(json(&["dim", "0", "1", "--timing"]).timing_ms.is_some());
}
