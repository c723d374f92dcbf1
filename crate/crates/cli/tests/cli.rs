use std::path::{Path, PathBuf};
use std::process::Command as Proc;

use spbw_cli::corpus::corpus;
use spbw_cli::pipeline::{run, Command, Overrides};
use spbw_cli::report::Report;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn spbw(args: &[&str]) -> (i32, String, String) {
    let out = Proc::new(env!("CARGO_BIN_EXE_spbw")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn tmp(name: &str, text: &str) -> String {
    let p = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

/// Set UPDATE_GOLDEN=1 to rewrite the files.
#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for doc in corpus() {
        let report = run(&doc, Command::Smooth, &Overrides::default()).unwrap();
        let text = report.normalized().to_json().unwrap();
        let path = golden_dir().join(format!("{}.json", doc.name));
        if update {
            std::fs::write(&path, &text).unwrap();
        } else {
            let golden = std::fs::read_to_string(&path).unwrap_or_default();
            assert_eq!(golden, text, "{} differs from {}", doc.name, path.display());
        }
    }
}

#[test]
fn reports_round_trip_and_match_schema() {
    let schema_text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json"))
        .unwrap();
    let schema: serde_json::Value = serde_json::from_str(&schema_text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let docs = corpus();
    let weyl = docs.iter().find(|d| d.name == "weyl").unwrap();
    let mut reports = vec![spbw_cli::pipeline::normalize(weyl, "x2 x1", &Overrides::default()).unwrap()];
    for doc in &docs {
        for cmd in [Command::Smooth, Command::CheckPbw, Command::Gkdim] {
            reports.push(run(doc, cmd, &Overrides::default()).unwrap());
        }
    }
    for r in reports {
        let json = r.to_json().unwrap();
        assert_eq!(Report::from_json(&json).unwrap(), r);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{} {}: {errors:?}", r.algebra, r.command);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(spbw(&["smooth", "weyl"]).0, 0);
    let (code, out, _) = spbw(&["smooth", "broken"]);
    assert_eq!(code, 1);
    assert!(out.contains("verdict: failed(pbw)"));
    assert_eq!(spbw(&["calculus", "check", "broken"]).0, 2);
    assert_eq!(spbw(&["smooth", "no-such-file.spbw"]).0, 2);
    let bad = tmp("bad.spbw", "gens x1 x2\nrel x1 x2 = x2 x1\n");
    let (code, _, err) = spbw(&["check", "pbw", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("relation must have higher generator first"), "{err}");
    let misuse = tmp("misuse.spbw", "coeffs t\ngens x\ndelta x t = t^2\ncalculus theorem\n");
    let (code, out, _) = spbw(&["smooth", &misuse]);
    assert_eq!(code, 0);
    assert!(out.contains("dimension mismatch: N = 1, GK = 2"), "{out}");
}

#[test]
fn commands() {
    assert_eq!(spbw(&["normalize", "weyl", "x2*x1*x1"]).1.trim(), "x1^2*x2 - 2*x1");
    let (code, out, _) = spbw(&["gkdim", "jordan", "--max-degree", "12"]);
    assert_eq!(code, 0);
    assert!(out.contains("GK dimension 2"), "{out}");
    let (_, out, _) = spbw(&["corpus"]);
    assert_eq!(out.lines().count(), 9);
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join("qplane.json");
    let (code, _, _) = spbw(&["smooth", "qplane", "--seed", "5", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.config.seed, 5);
    assert_eq!(r.verdict.unwrap().label, "certified-smooth");
    let (_, out, _) = spbw(&["report", "un2", "--samples", "5"]);
    let r = Report::from_json(&out).unwrap();
    assert_eq!((r.config.samples, r.config.leibniz_samples), (5, 5));
    let (code, out, _) = spbw(&["check", "hypotheses", "qplane"]);
    assert_eq!(code, 0);
    assert!(out.contains("T1 fail"));
    let (_, out, _) = spbw(&["render", "qaffine3"]);
    assert!(out.contains("wedge dx1 dx2 = q12"));
}
