use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transtan")).args(args).output().expect("spawn transtan")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn classify(name: &str) -> Value {
    json(&["classify", "--input", &fixture(name)])
}

#[test]
fn tangent_spheres_are_infinite() {
    let v = classify("fig3-1-tangent-spheres.json");
    assert_eq!(v["verdict"], "INFINITE");
    assert_eq!(v["cases"][0]["tag"], "affine-1");
    assert_eq!(v["family_samples"].as_array().unwrap().len(), 5);
    assert!(v["tangents"].is_null());
}

#[test]
fn hyperboloid_rulings_are_infinite() {
    let v = classify("fig3-2-hyperboloid.json");
    assert_eq!(v["verdict"], "INFINITE");
    assert_eq!(v["cases"][0]["tag"], "affine-2");
}

#[test]
fn mirror_spheres_are_infinite() {
    let v = classify("mirror-spheres.json");
    assert_eq!(v["mode"], "projective");
    assert_eq!(v["cases"][0]["tag"], "projective-2");
}

#[test]
fn generic_configuration_has_eight_solutions() {
    let v = classify("generic.json");
    assert_eq!(v["verdict"], "FINITE");
    let t = &v["tangents"];
    assert_eq!(t["total_multiplicity"], 8);
    let real = t["solutions"].as_array().unwrap().iter().filter(|s| s["real"] == true).count();
    assert_eq!(t["real_solutions"], real);
    assert!(t["solutions"].as_array().unwrap().iter().all(|s| s["certified"] == true));
}

#[test]
fn output_is_deterministic() {
    for fmt in ["json", "text", "csv"] {
        let args = ["--format", fmt, "classify", "--input", &fixture("generic.json")];
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = run(&["--format", "text", "classify", "--input", &fixture("mirror-spheres.json"), "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
    assert!(String::from_utf8(out.stdout).unwrap().contains("verdict: INFINITE"));
}

#[test]
fn csv_report_has_paths() {
    let out = run(&["--format", "csv", "classify", "--input", &fixture("fig3-1-tangent-spheres.json")]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("path,value\n"));
    assert!(s.contains("cases[0].tag,affine-1\n"));
}

#[test]
fn malformed_input_exits_2_with_field() {
    let out = run(&["classify", "--input", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("spheres[0].center[2]"), "{err}");
}

#[test]
fn json_syntax_error_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"lines\": [\n    {\"point\": [\"1\",]}\n").unwrap();
    let out = run(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 3"));
}

#[test]
fn missing_file_exits_2_with_path() {
    let out = run(&["classify", "--input", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("/nonexistent/config.json"));
}

#[test]
fn intersecting_lines_exit_3() {
    let out = run(&["classify", "--input", &fixture("intersecting.json")]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn mode_override_is_checked() {
    let out = run(&["classify", "--input", &fixture("mirror-spheres.json"), "--mode", "affine"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["classify", "--input", &fixture("mirror-spheres.json"), "--mode", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sphere_beyond_axis_is_symmetric_with_imaginary_s() {
    let v = json(&["normal-form", "--input", &fixture("sphere-y0-2.json")]);
    let nf = &v["normal_form"];
    assert_eq!(nf["symmetric"], true);
    assert_eq!(nf["form"]["s2"], "-3");
    assert_eq!(nf["form"]["sign"], 1);
}

#[test]
fn fiber_point_has_asymmetric_normal_form() {
    let v = json(&["normal-form", "--input", &fixture("fiber-point-4-9.json")]);
    assert_eq!(v["normal_form"]["form"]["kind"], "asymmetric");
    assert_eq!(v["normal_form"]["form"]["s"], "4");
    assert_eq!(v["normal_form"]["form"]["t"], "9");
}

#[test]
fn plane_pair_is_a_perfect_square() {
    let v = json(&["normal-form", "--input", &fixture("rank2.json")]);
    assert_eq!(v["singular"], "class 5");
    assert_eq!(v["class"]["perfect_square"], true);
    assert!(v.get("normal_form").is_none());
}

#[test]
fn fiber_verify_at_4_9() {
    let v = json(&["fiber-verify", "--s", "4", "--t", "9", "--samples", "25"]);
    for b in v["branches"].as_array().unwrap() {
        assert_eq!(b["verified"], true);
        assert_eq!(b["point_p_generators_vanish"], true);
        assert_eq!(b["w2z2_coefficient"], "-144");
        assert_eq!(b["w2z2_expected"], "-144");
    }
}

#[test]
fn fiber_verify_rejects_excluded_parameters() {
    for (s, t, factor) in [("1", "9", "s-1"), ("4", "4", "s-t")] {
        let out = run(&["fiber-verify", "--s", s, "--t", t]);
        assert_eq!(out.status.code(), Some(3));
        assert!(String::from_utf8(out.stderr).unwrap().contains(factor));
    }
    let out = run(&["fiber-verify", "--s", "x", "--t", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

fn plot(name: &str) -> (tempfile::TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["plot-data", "--input", &fixture(name), "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let ram = std::fs::read_to_string(dir.path().join("ramification.csv")).unwrap();
    (dir, ram)
}

#[test]
fn far_sphere_has_no_vertical_tangents() {
    let (dir, ram) = plot("sphere-y0-3.json");
    let rows: Vec<&str> = ram.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.split(',').nth(2) == Some("0.0")));
    let curves = std::fs::read_to_string(dir.path().join("curves.csv")).unwrap();
    assert!(curves.lines().count() > 1);
}

#[test]
fn sphere_meeting_axis_has_four_ramification_lines() {
    let (_dir, ram) = plot("sphere-y0-1_2.json");
    let rows: Vec<&str> = ram.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows.iter().filter(|r| r.split(',').nth(2) == Some("inf")).count(), 2);
}

#[test]
fn plot_without_real_points_writes_headers() {
    // x² + y² + z² + w² has no real points
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.json");
    std::fs::write(
        &input,
        r#"{"lines": [{"plucker": ["1","0","0","0","0","0"]}, {"plucker": ["0","0","0","0","0","1"]}],
            "quadric": {"symmetric": ["1","0","0","0","1","0","0","1","0","1"]}}"#,
    )
    .unwrap();
    let out = run(&["plot-data", "--input", input.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(dir.path().join("curves.csv")).unwrap(), "quadric,x,z\n");
    assert_eq!(std::fs::read_to_string(dir.path().join("locus.csv")).unwrap(), "quadric,x,z,px,py,pz\n");
}
