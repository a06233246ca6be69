//! End-to-end tests of the binary: deterministic JSON output, the
//! expansion cache (truncation, corruption recovery, healing), the
//! wrapped computations, and the exit-code contract.

use std::fs;
use std::process::{Command, Output};

use drinfeld_core::expand::delta_expansion;
use drinfeld_core::field::Gf;
use drinfeld_core::poly::{PolyA, RatK};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drinfeld"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_drinfeld"));
    c.args(args);
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn expand_is_deterministic_and_matches_library() {
    let args = ["expand", "--q", "2", "--r", "2", "--form", "delta", "--order", "10"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-identical across runs");

    let v = stdout_json(&a);
    assert_eq!(v["header"]["q"], 2);
    assert_eq!(v["header"]["r"], 2);
    assert_eq!(v["header"]["form"], "delta");
    assert_eq!(v["header"]["weight"], 3);
    assert_eq!(v["header"]["type"], 0);
    assert_eq!(v["header"]["order"], 10);

    let f = Gf::of_order(2).unwrap();
    let delta = delta_expansion(&f, 2, 10).unwrap();
    let coeffs = v["coefficients"].as_array().unwrap();
    let want: Vec<(i64, String)> = delta.coeffs().map(|(n, c)| (n, c.to_string())).collect();
    assert_eq!(coeffs.len(), want.len());
    for (pair, (n, text)) in coeffs.iter().zip(&want) {
        assert_eq!(pair[0].as_i64().unwrap(), *n);
        assert_eq!(pair[1].as_str().unwrap(), text);
    }
}

#[test]
fn expand_eisenstein_off_the_grading_is_zero() {
    let out = run(&["expand", "--q", "3", "--r", "2", "--form", "E:3", "--order", "5"]);
    let v = stdout_json(&out);
    assert_eq!(v["header"]["weight"], 3);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 0);
}

#[test]
fn cache_truncates_and_output_stays_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let big = run(&[
        "expand", "--q", "2", "--r", "2", "--form", "delta", "--order", "12", "--cache", cache,
    ]);
    assert!(big.status.success());
    let names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert_eq!(names, ["2-2-delta-12-v1.json"]);

    // a smaller request is served from the larger entry, truncated, and
    // the bytes match a cache-less run exactly
    let small_cached = run(&[
        "expand", "--q", "2", "--r", "2", "--form", "delta", "--order", "8", "--cache", cache,
    ]);
    let small_plain = run(&["expand", "--q", "2", "--r", "2", "--form", "delta", "--order", "8"]);
    assert!(small_cached.status.success());
    assert_eq!(small_cached.stdout, small_plain.stdout);
    let names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert_eq!(names, ["2-2-delta-12-v1.json"], "cache hits do not add entries");
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_env(
        &["expand", "--q", "2", "--r", "2", "--form", "h", "--order", "6"],
        &[("DRINFELD_CACHE", dir.path().to_str().unwrap())],
    );
    assert!(out.status.success());
    assert!(dir.path().join("2-2-h-6-v1.json").exists());
}

#[test]
fn corrupted_cache_recomputes_exits_3_and_heals() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let reference = run(&["expand", "--q", "2", "--r", "2", "--form", "delta", "--order", "9"]);
    fs::write(dir.path().join("2-2-delta-9-v1.json"), b"not json").unwrap();

    let hurt = run(&[
        "expand", "--q", "2", "--r", "2", "--form", "delta", "--order", "9", "--cache", cache,
    ]);
    assert_eq!(hurt.status.code(), Some(3), "cache corruption is reported");
    assert_eq!(hurt.stdout, reference.stdout, "output is still correct");
    assert!(String::from_utf8_lossy(&hurt.stderr).contains("corrupted cache entry"));

    // the recomputation rewrote the entry, so the next run is clean
    let healed = run(&[
        "expand", "--q", "2", "--r", "2", "--form", "delta", "--order", "9", "--cache", cache,
    ]);
    assert_eq!(healed.status.code(), Some(0));
    assert_eq!(healed.stdout, reference.stdout);
}

#[test]
fn hecke_second_operator_scales_by_prime_power() {
    let out = run(&[
        "hecke", "--q", "2", "--prime", "T", "--i", "2", "--form", "delta", "--order", "6",
        "--json", "-",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["header"]["form"], "hecke:2:T:delta");
    assert_eq!(v["header"]["weight"], 3);

    // the second operator acts on weight-3 forms as multiplication by
    // pi^3; compare against the library
    let f = Gf::of_order(2).unwrap();
    let t3 = RatK::from_poly(PolyA::t(&f)).pow(3).unwrap();
    let want = delta_expansion(&f, 2, 6).unwrap().mul_scalar(&t3);
    let want: Vec<(i64, String)> = want.coeffs().map(|(n, c)| (n, c.to_string())).collect();
    let got = v["coefficients"].as_array().unwrap();
    assert_eq!(got.len(), want.len());
    for (pair, (n, text)) in got.iter().zip(&want) {
        assert_eq!(pair[0].as_i64().unwrap(), *n);
        assert_eq!(pair[1].as_str().unwrap(), text);
    }
}

#[test]
fn count_and_norms_print_exact_values() {
    let out = run(&["count", "--r", "3", "--i", "1", "--P", "2"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "7\n");

    let out = run(&["count", "--r", "4", "--i", "2", "--P", "3", "--check"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "130\n");

    let out = run(&["norms", "--q", "2", "--r", "2", "--findex", "1,0"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.starts_with("log|t| = -2\n"), "got: {text}");

    let out = run(&[
        "norms", "--q", "2", "--findex", "2,1,0", "--denominator", "T^2+T+1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("log|t| + log|d_u| <= -1: ok"), "got: {text}");
}

#[test]
fn verify_suites_report_and_exit_zero() {
    let out = run(&["verify", "--suite", "counting", "--P", "3", "--r", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("suite counting: 5 checks, all pass"), "got: {text}");

    let out = run(&["verify", "--suite", "eigen", "--q", "2", "--prime", "T", "--order", "8"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("suite eigen: 6 checks, all pass"), "got: {text}");
}

#[test]
fn growth_suite_emits_certified_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("growth.json");
    let out = run(&[
        "verify", "--suite", "growth", "--q", "2", "--r", "2", "--order", "40",
        "--json", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    let rep = &v["growth_reports"][0];
    assert_eq!(rep["q"], 2);
    assert_eq!(rep["rank"], 2);
    assert_eq!(rep["c"], -1);
    assert_eq!(rep["all_pass"], true);
    assert_eq!(rep["series"][0]["name"], "product");
    assert_eq!(rep["series"][0]["lines"].as_array().unwrap().len(), 41);
}

#[test]
fn bad_parameters_exit_2() {
    // 6 is not a prime power
    let out = run(&["expand", "--q", "6", "--r", "2", "--form", "delta", "--order", "5"]);
    assert_eq!(out.status.code(), Some(2));

    // unknown form name
    let out = run(&["expand", "--q", "2", "--r", "2", "--form", "phi:1", "--order", "5"]);
    assert_eq!(out.status.code(), Some(2));

    // rank out of range for symbolic expansions
    let out = run(&["expand", "--q", "2", "--r", "5", "--form", "delta", "--order", "5"]);
    assert_eq!(out.status.code(), Some(2));

    // clap usage error: missing required flag
    let out = run(&["expand", "--q", "2", "--r", "2", "--order", "5"]);
    assert_eq!(out.status.code(), Some(2));

    // unknown verification suite
    let out = run(&["verify", "--suite", "everything"]);
    assert_eq!(out.status.code(), Some(2));
}
