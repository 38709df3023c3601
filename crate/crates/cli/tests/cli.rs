use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn coreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coreg")).args(args).output().expect("binary runs")
}

fn coreg_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_coreg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn assert_valid(v: &Value) {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report.schema.json"))
        .unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let compiled = jsonschema::JSONSchema::options()
        .with_draft(jsonschema::Draft::Draft202012)
        .compile(&schema)
        .expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(v) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "schema violation in {v}: {}", msgs.join("; "));
}

#[test]
fn classify_text_report() {
    let o = coreg(&["classify", "w^2 + z^3 + x^3*y^3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in [
        "fibers: 2I0*",
        "sing: 2D4",
        "rho: 1",
        "isotrivial: yes, j = 0",
        "coreg1: 1",
        "coreg: 0",
        "toric model: no",
    ] {
        assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
    }
}

#[test]
fn non_minimal_place_exits_2() {
    let o = coreg(&["classify", "--json", "w^2 + z^3 + x^6"]);
    assert_eq!(o.status.code(), Some(2));
    let v = &json_lines(&o)[0];
    assert_valid(v);
    assert_eq!(v["errors"][0]["message"], "non-minimal place at x: not du Val");
    assert_eq!(v["errors"][0]["code"], "non_minimal_place");
}

#[test]
fn invalid_surface_codes() {
    for (eq, code) in [
        ("w*x^3 + z^3 + x^6", "missing_w2"),
        ("w^2 + z^2*x*y + x^6", "missing_z3"),
        ("w^2 - z^3", "zero_discriminant"),
    ] {
        let o = coreg(&["classify", "--json", eq]);
        assert_eq!(o.status.code(), Some(2), "{eq}");
        let v = &json_lines(&o)[0];
        assert_valid(v);
        assert_eq!(v["errors"][0]["code"], code);
    }
}

#[test]
fn parse_error_exits_1() {
    let o = coreg(&["classify", "--json", "w^2 + z^3 + x^5*q"]);
    assert_eq!(o.status.code(), Some(1));
    let v = &json_lines(&o)[0];
    assert_valid(v);
    assert_eq!(v["errors"][0]["stage"], "parse");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(coreg(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(coreg(&["enumerate"]).status.code(), Some(1));
    assert_eq!(coreg(&["classify", "--f4", "x^4"]).status.code(), Some(1));
    assert_eq!(coreg(&["classify", "--degree", "12"]).status.code(), Some(1));
    assert_eq!(coreg(&["--help"]).status.code(), Some(0));
}

#[test]
fn catalog_witnesses_validate_against_schema() {
    let o = coreg(&["catalog", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let list = &json_lines(&o)[0];
    let equations: Vec<&str> =
        list.as_array().unwrap().iter().map(|w| w["equation"].as_str().unwrap()).collect();
    assert_eq!(equations.len(), 22);
    let mut args = vec!["classify", "--json"];
    args.extend(equations);
    let o = coreg(&args);
    assert_eq!(o.status.code(), Some(0));
    let reports = json_lines(&o);
    assert_eq!(reports.len(), 22);
    for r in &reports {
        assert_valid(r);
    }
}

#[test]
fn degree_rule_report() {
    for d in 2..=9 {
        let o = coreg(&["classify", "--json", "--degree", &d.to_string()]);
        assert_eq!(o.status.code(), Some(0));
        let v = &json_lines(&o)[0];
        assert_valid(v);
        assert_eq!((v["coreg"].as_u64(), v["coreg1"].as_u64()), (Some(0), Some(0)));
        assert_eq!(v["toric_model"], true);
        assert!(v["fibers"].is_null());
    }
}

#[test]
fn enumerate_counts() {
    for (args, count) in [
        (vec!["enumerate", "--j", "0"], 10),
        (vec!["enumerate", "--j", "1728"], 4),
        (vec!["enumerate", "--j", "generic"], 1),
        (vec!["enumerate", "--instar"], 5),
        (vec!["enumerate", "--instar", "--rank-cap", "10"], 6),
        (vec!["enumerate", "--instar", "--rank-cap", "4"], 0),
    ] {
        let mut json_args = args.clone();
        json_args.push("--json");
        let o = coreg(&json_args);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(json_lines(&o)[0].as_array().unwrap().len(), count, "{args:?}");
    }
    let text = stdout(&coreg(&["enumerate", "--j", "1728"]));
    assert!(text.starts_with("4 configurations"));
}

#[test]
fn instar_annotations() {
    let o = coreg(&["enumerate", "--instar", "--json"]);
    let list = json_lines(&o).remove(0);
    let get = |n: &str| list.as_array().unwrap().iter().find(|c| c["notation"] == n).unwrap().clone();
    assert_eq!(get("I2* + IV")["excluded"], true);
    assert_eq!(get("I1* + III + II")["excluded"], false);
    assert_eq!(get("I1* + III + II")["witnesses"], serde_json::json!(["instar/D5+A1"]));
}

#[test]
fn catalog_verify_passes() {
    let o = coreg(&["catalog", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("22/22 witnesses verified"));
    let o = coreg(&["catalog", "--verify", "--parallel", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_lines(&o).remove(0);
    assert!(rows.as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn tables_text_and_json() {
    let o = coreg(&["tables"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3IV            3A2"));
    let o = coreg(&["tables", "--json"]);
    let v = json_lines(&o).remove(0);
    assert_eq!(v["tables"][0]["rows"].as_array().unwrap().len(), 10);
    assert_eq!(v["tables"][1]["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn stdin_and_file_inputs_match_arguments() {
    let input = "# two surfaces\nw^2 + z^3 + x^5*y\n\nw^2 + z^3 + x^3*y*z\n";
    let from_stdin = coreg_stdin(&["classify", "--json"], input);
    let from_args = coreg(&["classify", "--json", "w^2 + z^3 + x^5*y", "w^2 + z^3 + x^3*y*z"]);
    assert_eq!(from_stdin.stdout, from_args.stdout);

    let dir = std::env::temp_dir().join(format!("coreg-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("inputs.txt");
    std::fs::write(&path, input).unwrap();
    let from_file = coreg(&["classify", "--json", "--file", path.to_str().unwrap()]);
    assert_eq!(from_file.stdout, from_args.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn short_form_entry_agrees_with_equation() {
    let a = coreg(&["classify", "--json", "--f4", "x^4", "--f6", "-x^5*y"]);
    let b = coreg(&["classify", "--json", "w^2 + z^3 + x^4*z + x^5*y"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn parallel_preserves_order_and_bytes() {
    let eqs = [
        "w^2 + z^3 + x^5*y",
        "w^2 + z^3 + x^6",
        "w^2 + z^3 - 3*x^3*(x+4*y)*z + 2*x^4*(x^2+6*x*y+6*y^2)",
        "w^2 = z*(z+x*y)*(z+2*x*y)",
    ];
    let mut seq = vec!["classify", "--json"];
    seq.extend(eqs);
    let mut par = seq.clone();
    par.push("--parallel");
    let a = coreg(&seq);
    let b = coreg(&par);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(2));
    assert_eq!(coreg(&seq).stdout, a.stdout);
}

#[test]
fn library_entry_point() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = coreg_cli::run(["coreg", "enumerate", "--j", "generic"], &mut &b""[..], &mut out, &mut err);
    assert_eq!(code, 0);
    assert!(String::from_utf8(out).unwrap().contains("2I0*"));
}
