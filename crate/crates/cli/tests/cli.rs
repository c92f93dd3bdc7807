use std::process::{Command, Output};

use serde_json::Value;

fn btoep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_btoep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", stderr(out));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

const EX1: [&str; 6] = ["--p", "2", "--lower", "2", "--band", "1,1,1,1,1"];
const EX2: [&str; 6] = ["--p", "2", "--lower", "2", "--band", "1,1,0,1,1"];

fn with<'a>(cmd: &'a str, band: &[&'a str], rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend_from_slice(band);
    v.extend_from_slice(rest);
    v
}

#[test]
fn period_examples() {
    let out = btoep(&with("period", &EX1, &[]));
    assert!(out.status.success());
    assert!(stdout(&out).contains("period P(f) = 5"), "{}", stdout(&out));

    let v = json(&btoep(&with("period", &EX2, &["--format", "json"])));
    assert_eq!(v["period"], 6);
    assert_eq!(v["factorization"], "(x + 1)^2 (x^2 + x + 1)");
    assert_eq!(v["det_period"], 6);
    let orders: Vec<u64> = v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["order"].as_u64().unwrap())
        .collect();
    assert_eq!(orders, vec![1, 3]);
}

#[test]
fn det_examples() {
    let out = btoep(&with("det", &EX1, &["--n", "2"]));
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "det = 0");

    let v = json(&btoep(&with(
        "det",
        &EX1,
        &["--n", "26", "--format", "json"],
    )));
    assert_eq!(v["det"], 1);
    assert_eq!(v["n"], 26);
    assert_eq!(v["period"], 5);

    let v = json(&btoep(&[
        "det",
        "--p",
        "3",
        "--lower",
        "1",
        "--band",
        "1,2,1",
        "--n",
        "9223372036854775807",
        "--format",
        "json",
    ]));
    // (n + 1) mod 3 with n = 2^63 - 1, which is 1 mod 3
    assert_eq!(v["det"], 2);
}

#[test]
fn usage_errors_exit_two() {
    let out = btoep(&["det", "--p", "2", "--lower", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error[USAGE]"));

    let out = btoep(&[
        "det", "--p", "4", "--lower", "1", "--band", "1,1,1", "--n", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error[NOT_PRIME]"));

    let out = btoep(&[
        "det", "--p", "3", "--lower", "1", "--band", "1,3,1", "--n", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error[INVALID_BAND]"));
    assert!(stderr(&out).contains("residue"));

    let out = btoep(&[
        "det", "--p", "3", "--lower", "1", "--band", "0,2,1", "--n", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("c_{-L}"));

    let out = btoep(&with("det", &EX1, &["--n", "9223372036854775808"]));
    assert_eq!(out.status.code(), Some(2));

    let out = btoep(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn engine_errors_exit_one() {
    let out = btoep(&with("inverse", &EX1, &["--n", "2", "--full"]));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error[SINGULAR]"));

    let out = btoep(&with("inverse", &EX1, &["--n", "9"]));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error[ORDER_TOO_SMALL]"));
}

#[test]
fn full_inverse() {
    let out = btoep(&[
        "inverse", "--p", "3", "--lower", "1", "--band", "1,2,1", "--n", "4", "--full",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2 0 1 1\n0 0 1 1\n1 1 0 0\n1 1 0 2\n");
}

#[test]
fn inverse_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inv.json");
    let p = path.to_str().unwrap();
    let out = btoep(&with(
        "inverse",
        &EX2,
        &["--n", "26", "--format", "json", "--output", p],
    ));
    assert!(out.status.success(), "{}", stderr(&out));

    let text = std::fs::read_to_string(&path).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["period"], 6);
    assert_eq!(doc["n"], 26);
    assert_eq!(
        doc["blocks"]["diag"][0],
        serde_json::json!([0, 1, 0, 0, 1, 0])
    );

    let reread = banded_toeplitz::PeriodicInverse::from_json(&text).unwrap();
    let spec = banded_toeplitz::BandSpec::parse(2, 2, "1,1,0,1,1").unwrap();
    assert_eq!(reread, banded_toeplitz::inverse_compact(&spec, 26).unwrap());

    let out = btoep(&["verify", "--input", p]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("verified"));

    // a corrupted entry is caught
    let mut bad = doc.clone();
    bad["blocks"]["upper"][0][0] = Value::from(1 - doc["blocks"]["upper"][0][0].as_u64().unwrap());
    std::fs::write(&path, bad.to_string()).unwrap();
    let out = btoep(&["verify", "--input", p]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("VERIFY_MISMATCH"));
}

fn read_pgm(path: &std::path::Path) -> banded_toeplitz::pgm::Graymap {
    banded_toeplitz::pgm::decode_pgm(&std::fs::read(path).unwrap()).expect("valid P5")
}

#[test]
fn render_shows_block_periodicity() {
    let dir = tempfile::tempdir().unwrap();
    for (band, period) in [(EX1, 5usize), (EX2, 6)] {
        let path = dir.path().join(format!("inv{period}.pgm"));
        let out = btoep(&with(
            "render",
            &band,
            &["--n", "26", "--output", path.to_str().unwrap()],
        ));
        assert!(out.status.success(), "{}", stderr(&out));
        let img = read_pgm(&path);
        assert_eq!((img.width, img.height, img.maxval), (26, 26, 255));
        assert!(img.pixels.iter().all(|&v| v == 0 || v == 255));
        let full_blocks = 26 / period;
        for i in 0..full_blocks * period - period {
            for j in 0..full_blocks * period - period {
                assert_eq!(
                    img.pixel(i, j),
                    img.pixel(i + period, j + period),
                    "P={period} at ({i},{j})"
                );
            }
        }
    }
}

#[test]
fn render_from_json_matches_render_from_band() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("inv.json");
    let a = dir.path().join("a.pgm");
    let b = dir.path().join("b.pgm");
    assert!(btoep(&with(
        "inverse",
        &EX1,
        &[
            "--n",
            "26",
            "--format",
            "json",
            "--output",
            json_path.to_str().unwrap()
        ]
    ))
    .status
    .success());
    assert!(btoep(&[
        "render",
        "--input",
        json_path.to_str().unwrap(),
        "--output",
        a.to_str().unwrap()
    ])
    .status
    .success());
    assert!(btoep(&with(
        "render",
        &EX1,
        &["--n", "26", "--output", b.to_str().unwrap()]
    ))
    .status
    .success());
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn verify_single_band() {
    let out = btoep(&with(
        "verify",
        &EX2,
        &["--n-max", "40", "--format", "json"],
    ));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["specs"], 1);
}

#[test]
fn verify_default_sweep_exits_zero() {
    let out = btoep(&["verify"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}{}",
        stdout(&out),
        stderr(&out)
    );
    assert!(stdout(&out).contains("418 bands"), "{}", stdout(&out));
    assert!(stdout(&out).contains(" 0 mismatches"));
}

#[test]
fn verify_rejects_bad_ranges() {
    let out = btoep(&["verify", "--n-min", "10", "--n-max", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_reports_ratios() {
    let v = json(&btoep(&["bench", "--reps", "5", "--format", "json"]));
    let timings = v["timings"].as_array().unwrap();
    assert_eq!(timings.len(), 4);
    assert_eq!(timings[3]["n"], 1_000_000_000_000u64);
    assert_eq!(timings[0]["ratio"], 1.0);
}
