use std::fs;
use std::path::PathBuf;

use blowup_cli::{run, Outcome, EXIT_INPUT, EXIT_OK};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str, text: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn blowup(args: &[&str]) -> Outcome {
    run(std::iter::once("blowup").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> serde_json::Value {
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn analyze_toy_scene() {
    let out = blowup(&["analyze", &fixture("quadric-2-linear.toml")]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v = json(&out);
    assert_eq!(v["verdicts"]["hypothesis_route"]["status"], "smooth");
    assert_eq!(v["verdicts"]["linear_route"]["status"], "smooth");
    assert_eq!(v["verdicts"]["chart_oracle"]["status"], "smooth");
    assert_eq!(v["verdicts"]["consistent"], true);
    assert_eq!(v["centers"][0]["multiplicity"], 1);
    assert_eq!(v["centers"][0]["section"], "x1*Y1 + x2*Y2");
    assert_eq!(v["divisors"]["strict_transform"]["E_X"], -1);
    assert!(out.stderr.starts_with("analyze: hypothesis route smooth"));
}

#[test]
fn overlapping_centers_are_rejected() {
    let path = scratch(
        "overlap.toml",
        "schema = 1\nvariables = [\"x\", \"y\"]\nhypersurface = \"x*y\"\n\
         [[centers]]\nname = \"A\"\nvanishing = [\"x\"]\n\
         [[centers]]\nname = \"B\"\nvanishing = [\"y\"]\n",
    );
    let out = blowup(&["analyze", &path]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("'A' and 'B'"), "{}", out.stderr);
}

#[test]
fn sod_reports_guard_when_k_equals_d() {
    let out = blowup(&["sod", &fixture("quadric-1-origin.toml")]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v = json(&out);
    let l = &v["sod"]["lefschetz"][0];
    assert_eq!(l["status"], "not-applicable");
    assert!(l["reason"].as_str().unwrap().contains("k < d"));
    assert_eq!(v["sod"]["decomposition"]["status"], "not-applicable");
}

#[test]
fn sod_blocks_for_quadric_origin() {
    let out = blowup(&["sod", &fixture("quadric-2-origin.toml")]);
    assert_eq!(out.code, EXIT_OK);
    let v = json(&out);
    let blocks = v["sod"]["decomposition"]["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 2);
    assert_eq!(blocks[0]["twist"], -1);
    assert_eq!(blocks[1]["kind"], "residual");
    assert_eq!(v["sod"]["twist_order"], "ascending");
}

#[test]
fn identical_invocations_are_byte_identical() {
    for cmd in ["analyze", "charts", "sod", "oracle"] {
        for name in ["two-nodes.toml", "cusp.toml"] {
            let a = blowup(&[cmd, &fixture(name)]);
            let b = blowup(&[cmd, &fixture(name)]);
            assert_eq!(a, b);
            let p = blowup(&["--format", "plain", cmd, &fixture(name)]);
            assert_eq!(p, blowup(&["--format", "plain", cmd, &fixture(name)]));
        }
    }
}

#[test]
fn quiet_silences_summary() {
    let out = blowup(&["--quiet", "oracle", &fixture("cusp.toml")]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stderr.is_empty());
    assert_eq!(json(&out)["oracle"]["verdict"]["status"], "smooth");
}

#[test]
fn plain_format() {
    let out = blowup(&["--format", "plain", "analyze", &fixture("cusp.toml")]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("hypothesis route: inconclusive"));
    assert!(out.stdout.contains("chart oracle: smooth"));
}

#[test]
fn charts_dump() {
    let out = blowup(&["charts", &fixture("cusp.toml")]);
    assert_eq!(out.code, EXIT_OK);
    let v = json(&out);
    let charts = v["charts"].as_array().unwrap();
    assert_eq!(charts.len(), 2);
    assert_eq!(charts[0]["strict_transform"], "-t*u_y^3 + 1");
    assert_eq!(charts[1]["strict_transform"], "u_x^2 - t");
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(blowup(&["analyze", "/nonexistent/scene.toml"]).code, EXIT_INPUT);
    let bad = scratch(
        "bad.toml",
        "schema = 1\nvariables = [\"x\"]\nhypersurface = \"x^(-1)\"\n",
    );
    let out = blowup(&["analyze", &bad]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("1:"), "{}", out.stderr);
    assert_eq!(blowup(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(blowup(&["--format", "xml", "selftest"]).code, EXIT_INPUT);
}

#[test]
fn degree_guardrail_exits_two() {
    let out = blowup(&["--max-degree", "1", "analyze", &fixture("two-nodes.toml")]);
    assert_eq!(out.code, EXIT_INPUT, "{}", out.stderr);
    assert!(out.stderr.contains("bound 1"));
}

#[test]
fn help_and_version_exit_zero() {
    let out = blowup(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("selftest"));
    assert_eq!(blowup(&["--version"]).code, EXIT_OK);
}

#[test]
fn selftest_passes_and_is_seeded() {
    let a = blowup(&["--quiet", "--seed", "3", "selftest"]);
    assert_eq!(a.code, EXIT_OK, "{}", a.stdout);
    let v = json(&a);
    assert_eq!(v["selftest"]["passed"], true);
    assert_eq!(v["selftest"]["seed"], 3);
    assert_eq!(a, blowup(&["--quiet", "--seed", "3", "selftest"]));
}
