use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn secohom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_secohom")).args(args).env_remove("SECOHOM_MAX_BASIS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn validate_bundled_specs() {
    for name in ["t2.json", "t3.json", "t4.json", "t5.json", "t5_gf7.json", "m2.json"] {
        let o = secohom(&["validate", "--spec", &data(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
    }
    let o = secohom(&["validate", "--spec", &data("noncentral.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("image not central"), "{}", stderr(&o));
    assert!(stderr(&o).contains("noncentral.json: eps"));
}

#[test]
fn malformed_specs_report_locations() {
    let dir = std::env::temp_dir().join(format!("secohom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("syntax.json", "{\n  \"format\": \"secohom-triple/1\",\n  \"field\": \n}", "line 4"),
        ("field.json", r#"{"format":"secohom-triple/1","field":"GF(4)","A":{"dim":1,"mult":[[[1]]],"unit":[1]}}"#, "not a prime"),
        ("unit.json", r#"{"format":"secohom-triple/1","field":"Q","A":{"dim":1,"mult":[[[1]]],"unit":[2]}}"#, "unit law"),
        ("shape.json", r#"{"format":"secohom-triple/1","field":"Q","A":{"dim":2,"mult":[[[1,0]]],"unit":[1,0]}}"#, "A.mult"),
        ("version.json", r#"{"format":"secohom-triple/9","field":"Q","A":{"dim":1,"mult":[[[1]]],"unit":[1]}}"#, "unsupported format"),
    ];
    for (name, text, needle) in cases {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        let o = secohom(&["validate", "--spec", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(stderr(&o).contains(needle), "{name}: {}", stderr(&o));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn t5_cohomology_matches_golden() {
    let golden = std::fs::read_to_string(data("golden/t5_cohomology.json")).unwrap();
    let o = secohom(&["cohomology", "--spec", &data("t5.json"), "--degrees", "0..2", "--flavor", "secondary", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden);
    let human = stdout(&secohom(&["cohomology", "--spec", &data("t5.json")]));
    let row2: Vec<&str> = human.lines().find(|l| l.starts_with("2 ")).unwrap().split_whitespace().collect();
    assert_eq!(row2, ["2", "54", "10", "8", "2", "1", "1"]);
}

#[test]
fn size_cap_flag_and_environment() {
    let o = secohom(&["cohomology", "--spec", &data("t5.json"), "--degrees", "3", "--max-basis", "100"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("C^3 needs 648"));
    let o = Command::new(env!("CARGO_BIN_EXE_secohom"))
        .args(["cohomology", "--spec", &data("t5.json"), "--degrees", "3"])
        .env("SECOHOM_MAX_BASIS", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn hodge_and_phi() {
    let o = secohom(&["hodge", "--degree", "2", "--spec", &data("t5.json"), "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sum"], 2);
    assert_eq!(v["components"][0]["dim"], 2);
    let o = secohom(&["hodge", "--degree", "1", "--spec", &data("m2.json")]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("not commutative"));
    let o = secohom(&["phi", "--degree", "2", "--spec", &data("t5.json"), "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kernel_dim"], 1);
}

#[test]
fn products_extensions_obstructions() {
    let spec = data("t5.json");
    let (id, chi) = (data("t5_identity.json"), data("t5_chi.json"));
    let o = secohom(&["cup", "--spec", &spec, "--cochain", &id, "--cochain", &id, "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["degree"], 2);
    let o = secohom(&["bracket", "--spec", &spec, "--cochain", &chi, "--cochain", &id]);
    assert_eq!(o.status.code(), Some(0));
    let o = secohom(&["cup", "--spec", &spec, "--cochain", &id]);
    assert_eq!(o.status.code(), Some(2));
    let o = secohom(&["extension", "--spec", &spec, "--cocycle", &chi, "--roundtrip", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["roundtrip"]["exact"], true);
    assert_eq!(v["dim_x"], 6);
    let o = secohom(&["obstruction", "--spec", &spec, "--cocycle", &chi]);
    assert_eq!(o.status.code(), Some(0));
    let o = secohom(&["obstruction", "--spec", &spec, "--cocycle", &id]);
    assert_eq!(o.status.code(), Some(4));
    let o = secohom(&["extension", "--spec", &spec, "--module", "quotient", "--cocycle", &chi]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn poly_commands() {
    for n in 2..=6 {
        let o = secohom(&["poly", "kerphi", "--f", &format!("X^{n}"), "--output", "json"]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["dim_ker_phi2"]["finite"], n - 1);
    }
    let o = secohom(&["poly", "kerphi", "--f", "X^4"]);
    assert_eq!(stdout(&o).lines().last(), Some("3"));
    let o = secohom(&["poly", "kerphi", "--f", "X^5", "--field", "GF(5)"]);
    assert_eq!(stdout(&o).lines().last(), Some("infinite"));
    let o = secohom(&["poly", "jacobian", "--f", "X^2", "--g", "Y^2", "--degree", "3"]);
    assert_eq!(stdout(&o).lines().last(), Some("8"));
    let o = secohom(&["poly", "sigma", "--f", "X^3", "--r", "X^2", "--bound", "6", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bounded_coboundary"], true);
    let o = secohom(&["poly", "kerphi", "--f", "X^^2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(secohom(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(secohom(&["--help"]).status.code(), Some(0));
    assert_eq!(secohom(&["cohomology", "--spec", &data("t5.json"), "--degrees", "2..1"]).status.code(), Some(2));
}
