use std::io::Write;
use std::process::{Command, Output, Stdio};

fn cobord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobord")).args(args).env_remove("COBORD_CATALOG").output().unwrap()
}

fn cobord_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cobord"))
        .args(args)
        .env_remove("COBORD_CATALOG")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn lazard_coefficients() {
    let o = cobord(&["lazard", "--order", "3", "--show", "aij", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "i,j,coefficient\n1,1,-2*m1\n1,2,4*m1^2 - 3*m2\n");
}

#[test]
fn lazard_json_carries_exact_terms() {
    let o = cobord(&["lazard", "--order", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["coefficient"], "-2*m1");
    assert_eq!(v[0]["terms"][0]["num"], "-2");
}

#[test]
fn lazard_axioms_and_order_bounds() {
    let o = cobord(&["lazard", "--order", "2", "--show", "axioms"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("associativity  true"));
    assert_eq!(cobord(&["lazard", "--order", "1"]).status.code(), Some(2));
    assert_eq!(cobord(&["lazard", "--order", "99"]).status.code(), Some(2));
    assert_eq!(cobord(&["lazard", "--show", "nonsense"]).status.code(), Some(2));
}

#[test]
fn variety_rows() {
    let o = cobord(&["variety", "--show", "chern-numbers", "--label", "cubic3", "--format", "csv"]);
    assert_eq!(stdout(&o), "label,dimension,chern_number,value\ncubic3,2,c2,9\ncubic3,2,c1^2,3\n");
    let o = cobord(&["variety", "--show", "sd", "--label", "cubic3", "--label", "P3", "--format", "csv"]);
    assert_eq!(stdout(&o), "label,dimension,s_d\ncubic3,2,-15\nP3,3,4\n");
    let o = cobord(&["variety", "--show", "lazard-class", "--label", "cubic3", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "label,dimension,basis_expression,lazard_class\ncubic3,2,6*[P1xP1] - 5*[P2],24*m1^2 - 15*m2\n"
    );
    assert_eq!(cobord(&["variety", "--label", "nope"]).status.code(), Some(2));
}

#[test]
fn catalogs_from_files_stdin_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mine.json");
    std::fs::write(&path, r#"[{"label": "K3", "ambient": [3], "cuts": [[4]]}]"#).unwrap();
    let o = cobord(&["variety", "--catalog", path.to_str().unwrap(), "--show", "sd", "--format", "csv"]);
    assert_eq!(stdout(&o), "label,dimension,s_d\nK3,2,-48\n");

    let o = Command::new(env!("CARGO_BIN_EXE_cobord"))
        .args(["variety", "--show", "sd", "--format", "csv"])
        .env("COBORD_CATALOG", &path)
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "label,dimension,s_d\nK3,2,-48\n");

    let o = cobord_stdin(
        &["variety", "--catalog", "-", "--show", "sd", "--format", "csv"],
        r#"[{"label": "L", "ambient": [1]}]"#,
    );
    assert_eq!(stdout(&o), "label,dimension,s_d\nL,1,2\n");
}

#[test]
fn empty_and_malformed_catalogs() {
    let o = cobord_stdin(&["variety", "--catalog", "-", "--format", "csv"], "[]");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "label,dimension,chern_number,value\n");
    let o = cobord_stdin(&["variety", "--catalog", "-"], "[\n  {\"label\": \"P1\" \"ambient\": [1]}\n]");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2 column"), "{}", stderr(&o));
    let o = cobord(&["variety", "--catalog", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_adams_passes_on_the_standard_catalog() {
    let o = cobord(&["check", "adams", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("H2_3,4,5,-10,-2,true"), "{text}");
    assert!(!text.contains("false"));
}

#[test]
fn check_rost() {
    let o = cobord(&[
        "check", "rost", "--source", "cubic3", "--target", "P2", "--deg", "1", "--p", "3", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"]["implied_eta_degree"], -6);
    let o = cobord(&["check", "rost", "--source", "cubic3", "--target", "P2", "--deg", "1", "--p", "3", "--eta", "-5"]);
    assert_eq!(o.status.code(), Some(1));
    let o = cobord(&["check", "rost", "--source", "cubic3", "--target", "P2", "--deg", "1", "--p", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = cobord(&["check", "rost", "--source", "cubic3", "--target", "P2", "--p", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_gdf() {
    let base = ["check", "gdf", "--source", "cubic3", "--target", "P2", "--deg", "1", "--term", "6:P1xP1"];
    let mut good = base.to_vec();
    good.extend(["--term", "-6:P2"]);
    assert_eq!(cobord(&good).status.code(), Some(0));
    let mut bad = base.to_vec();
    bad.extend(["--term", "-5:P2", "--format", "csv"]);
    let o = cobord(&bad);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness.chern_number,c2"), "{}", stdout(&o));
    let mut malformed = base.to_vec();
    malformed.extend(["--term", "0.5:P2"]);
    assert_eq!(cobord(&malformed).status.code(), Some(2));
    let o = cobord(&["check", "gdf", "--source", "quadric3", "--target", "P1xP1", "--deg", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = cobord(&["check", "gdf", "--source", "cubic3", "--target", "P2", "--deg", "1", "--term", "1/2:P3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_round_trip_and_products() {
    assert_eq!(cobord(&["check", "fgl-roundtrip", "--order", "6"]).status.code(), Some(0));
    assert_eq!(cobord(&["check", "fgl-roundtrip", "--order", "1"]).status.code(), Some(2));
    let o = cobord(&["check", "products", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 654);
}

#[test]
fn shipped_catalog_is_the_standard_catalog() {
    let o = cobord(&["catalog"]);
    let shipped = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../std.json")).unwrap();
    assert_eq!(stdout(&o), shipped);
}
