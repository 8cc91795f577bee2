use std::path::Path;

use detsort::cli::run;
use detsort::{format, FloatSeq};

fn detsort(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("detsort").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn field<'a>(stdout: &'a str, key: &str) -> &'a str {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {stdout}"))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_then_sort_is_thread_and_budget_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.bin");
    let (code, out, _) = detsort(&[
        "gen",
        "--output",
        p(&corpus),
        "--width",
        "f64",
        "--dist",
        "special",
        "--count",
        "20000",
        "--seed",
        "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "elements"), "20000");
    assert!(dir.path().join("c.bin.corpus.txt").exists());

    let mut digests = Vec::new();
    for (threads, budget) in [
        ("1", "1073741824"),
        ("8", "1073741824"),
        ("1", "40000"),
        ("3", "40000"),
    ] {
        let sorted = dir.path().join(format!("s{threads}_{budget}.bin"));
        let (code, out, err) = detsort(&[
            "sort",
            "--input",
            p(&corpus),
            "--output",
            p(&sorted),
            "--width",
            "f64",
            "--threads",
            threads,
            "--memory-budget",
            budget,
            "--fan-in",
            "2",
        ]);
        assert_eq!(code, 0, "{err}");
        if budget == "40000" {
            assert_eq!(field(&out, "mode"), "external");
            assert_eq!(field(&out, "runs"), "4");
        } else {
            assert_eq!(field(&out, "mode"), "in-memory");
        }
        digests.push(field(&out, "digest").to_string());
    }
    assert!(digests.iter().all(|d| d == &digests[0]), "{digests:?}");
    assert!(digests[0].starts_with("sha256:"));
}

#[test]
fn metrics_on_reversed_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("r.bin");
    let v: Vec<f64> = (0..100).rev().map(f64::from).collect();
    format::write_file(&f, &FloatSeq::from_f64s(&v)).unwrap();
    let (code, out, _) = detsort(&[
        "metrics",
        "--input",
        p(&f),
        "--width",
        "f64",
        "--curve",
        "unit",
        "--trace",
    ]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "n"), "100");
    assert_eq!(field(&out, "inversions"), "4950");
    assert_eq!(field(&out, "curved.unit"), "4950");
    assert_eq!(field(&out, "residual_tie_entropy_bits"), "0");
    assert_eq!(field(&out, "trace.phi.0"), "-4950");
    let last = out.lines().rfind(|l| l.starts_with("trace.phi.")).unwrap();
    assert!(last.ends_with("=0"), "{last}");
}

#[test]
fn metrics_on_duplicate_heavy_corpus_reports_tie_entropy() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("d.bin");
    let (code, _, _) = detsort(&[
        "gen",
        "--output",
        p(&f),
        "--width",
        "f32",
        "--dist",
        "dup:0.5",
        "--count",
        "2000",
        "--seed",
        "1",
    ]);
    assert_eq!(code, 0);
    let (code, out, _) = detsort(&["metrics", "--input", p(&f), "--width", "f32"]);
    assert_eq!(code, 0);
    let h: f64 = field(&out, "residual_tie_entropy_bits").parse().unwrap();
    let baseline: f64 = field(&out, "permutation_entropy_baseline_bits")
        .parse()
        .unwrap();
    assert!(h > 0.0 && h < baseline, "{out}");
}

#[test]
fn verify_reports_first_difference() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.bin");
    let b = dir.path().join("b.bin");
    let v: Vec<f64> = (0..50).map(f64::from).collect();
    format::write_file(&a, &FloatSeq::from_f64s(&v)).unwrap();
    format::write_file(&b, &FloatSeq::from_f64s(&v)).unwrap();
    let (code, out, _) = detsort(&["verify", p(&a), p(&b), "--width", "f64"]);
    assert_eq!((code, out.trim()), (0, "IDENTICAL"));

    let mut w = v.clone();
    w[37] = -0.0;
    format::write_file(&b, &FloatSeq::from_f64s(&w)).unwrap();
    let (code, out, _) = detsort(&["verify", p(&a), p(&b), "--width", "f64"]);
    assert_eq!((code, out.trim()), (1, "DIFFER at element 37"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.bin");
    std::fs::write(&bad, [0u8; 7]).unwrap();
    let out = dir.path().join("o.bin");

    let (code, _, err) = detsort(&[
        "sort",
        "--input",
        p(&bad),
        "--output",
        p(&out),
        "--width",
        "f64",
    ]);
    assert_eq!(code, 2, "{err}");

    let missing = dir.path().join("missing.bin");
    let (code, _, _) = detsort(&[
        "sort",
        "--input",
        p(&missing),
        "--output",
        p(&out),
        "--width",
        "f64",
    ]);
    assert_eq!(code, 3);

    let (code, _, _) = detsort(&[
        "sort",
        "--input",
        p(&bad),
        "--output",
        p(&out),
        "--width",
        "f16",
    ]);
    assert_eq!(code, 64);
    let (code, _, _) = detsort(&["frobnicate"]);
    assert_eq!(code, 64);
    let (code, _, _) = detsort(&[
        "sort",
        "--input",
        p(&bad),
        "--output",
        p(&out),
        "--width",
        "f32",
        "--threads",
        "0",
    ]);
    assert_eq!(code, 64);
    let (code, out, _) = detsort(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("sort"));
}
