use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use jsonschema::JSONSchema;
use modlex::io::{parse_edge_list, Dataset};
use modlex::{are_isomorphic, Graph};
use serde_json::Value;

struct Run {
    code: i32,
    json: Value,
    stdout: String,
    stderr: String,
}

fn run_with(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_modlex"));
    cmd.args(args).env_remove("MODLEX_BUDGET_MS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn modlex");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    Run { code: out.status.code().unwrap_or(-1), json, stdout, stderr: String::from_utf8(out.stderr).unwrap() }
}

fn run(args: &[&str]) -> Run {
    run_with(args, None, &[])
}

fn schema() -> JSONSchema {
    let text = include_str!("../schema/output.schema.json");
    let value: Value = serde_json::from_str(text).unwrap();
    JSONSchema::compile(&value).expect("schema compiles")
}

fn assert_valid(schema: &JSONSchema, v: &Value) {
    if let Err(errors) = schema.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("output does not match schema: {msgs:?}\n{v}");
    }
}

fn graph_of(v: &Value) -> Graph {
    let n = v["n"].as_u64().unwrap() as usize;
    let edges = v["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e[0].as_u64().unwrap() as usize, e[1].as_u64().unwrap() as usize));
    Graph::new(n, edges).unwrap()
}

fn write_temp(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn cycle_file(n: usize) -> tempfile::NamedTempFile {
    let mut text = format!("n {n}\n");
    for i in 0..n {
        text.push_str(&format!("{i} {}\n", (i + 1) % n));
    }
    write_temp(&text)
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn strip_timing(mut v: Value) -> Value {
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timing");
    }
    v
}

/// Deterministic outputs, compared without timing. `UPDATE_GOLDEN=1` rewrites them.
#[test]
fn golden_outputs() {
    let cases: &[(&str, &[&str])] = &[
        ("check-dp-fig2", &["check-dp", "--dataset", "fig2"]),
        ("check-dp-fig1", &["check-dp", "--dataset", "fig1"]),
        ("check-sdp-fig1", &["check-sdp", "--dataset", "fig1"]),
        ("ndp-fig1", &["ndp", "--dataset", "fig1"]),
        ("modules-fig1", &["modules", "--dataset", "fig1"]),
        ("minquotient-fig2", &["minquotient", "--dataset", "fig2"]),
        ("quotient-fig1", &["quotient", "--dataset", "fig1", "--part", "0,1,2,3,4,8,9", "--part", "5,6,7"]),
        ("lexprod-fig2-k2", &["lexprod", "--dataset", "fig2", "--uniform", "K2"]),
        ("cartprod-fig2-k2", &["cartprod", "--dataset", "fig2", "--with", "K2"]),
        ("dataset-list", &["dataset", "--list"]),
        ("dataset-fig2", &["dataset", "fig2"]),
        ("verify-conjecture-3", &["verify", "--conjecture-cartesian-dp", "--max-order", "3"]),
    ];
    let schema = schema();
    let dir = golden_dir();
    let bless = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in cases {
        let r = run(args);
        assert!(r.code == 0 || r.code == 1, "{name}: exit {} {}", r.code, r.stderr);
        assert_valid(&schema, &r.json);
        let got = strip_timing(r.json);
        let path = dir.join(format!("{name}.json"));
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
        let want: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn exit_codes() {
    let c5 = cycle_file(5);
    let c5 = c5.path().to_str().unwrap();
    assert_eq!(run(&["check-dp", "--dataset", "fig2"]).code, 0);
    let not_dp = run(&["check-dp", "--input", c5]);
    assert_eq!(not_dp.code, 1);
    assert_eq!(not_dp.json["result"], Value::Bool(false));
    assert_eq!(not_dp.json["ndp"], serde_json::json!([4]));
    assert_eq!(run(&["check-sdp", "--input", c5]).code, 1);

    // usage and parse errors
    assert_eq!(run(&["no-such-command"]).code, 2);
    assert_eq!(run(&["check-dp"]).code, 2);
    assert_eq!(run(&["check-dp", "--dataset", "nope"]).code, 2);
    let looped = run_with(&["check-dp", "--input", "-"], Some("0 0\n"), &[]);
    assert_eq!(looped.code, 2);
    assert!(looped.json["error"].is_string());

    // library errors
    let empty = write_temp("n 3\n");
    assert_eq!(run(&["lexprod", "--input", empty.path().to_str().unwrap(), "--uniform", "K2"]).code, 3);
    assert_eq!(run(&["quotient", "--dataset", "fig1", "--part", "0,5", "--part", "1,2,3,4,6,7,8,9"]).code, 3);

    // exhausted search
    let c40 = cycle_file(40);
    let capped = run(&["--max-subset-size", "3", "check-dp", "--input", c40.path().to_str().unwrap()]);
    assert_eq!(capped.code, 4);
    assert_eq!(capped.json["indeterminate"], Value::Bool(true));
    assert_eq!(capped.json["result"], Value::Null);
}

#[test]
fn every_output_matches_the_schema() {
    let schema = schema();
    let c5 = cycle_file(5);
    let c5 = c5.path().to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["check-dp", "--input", c5],
        vec!["check-sdp", "--dataset", "fig3"],
        vec!["ndp", "--input", c5],
        vec!["modules", "--dataset", "fig3"],
        vec!["minquotient", "--dataset", "fig3"],
        vec!["lexprod", "--input", c5, "--component", "K2", "--component", "K1", "--component", "P3",
             "--component", "K1", "--component", "E2"],
        vec!["cartprod", "--input", c5, "--with", "P3"],
        vec!["transfer-check", "--input", c5, "--uniform", "K2", "--subset", "0,1,2"],
        vec!["export-dot", "--dataset", "fig1", "--partition"],
        vec!["dataset", "fig3"],
        vec!["check-dp"],
        vec!["check-dp", "--dataset", "nope"],
    ];
    for args in runs {
        let r = run(&args);
        assert_valid(&schema, &r.json);
        assert_eq!(r.json["command"], Value::String(args[0].to_string()));
    }
}

#[test]
fn fig3_minimal_quotient_is_the_drawn_one() {
    let r = run(&["minquotient", "--dataset", "fig3"]);
    assert_eq!(r.code, 0);
    let q = graph_of(&r.json["result"]["graph"]);
    let drawn = Dataset::Fig3Quotient.graph().unwrap();
    assert_eq!(q.vertex_count(), 21);
    assert!(are_isomorphic(&q, &drawn).unwrap());
}

#[test]
fn certificates_round_trip_through_verify() {
    let fig2 = run(&["check-dp", "--dataset", "fig2"]);
    let file = write_temp(&fig2.stdout);
    let path = file.path().to_str().unwrap();
    let ok = run(&["verify", "--dataset", "fig2", "--certificate", path]);
    assert_eq!(ok.code, 0);
    assert_eq!(ok.json["result"], Value::Bool(true));

    // the same witnesses do not fit a different graph
    let wrong = run(&["verify", "--dataset", "fig1", "--certificate", path]);
    assert_eq!(wrong.code, 1);
    assert_eq!(wrong.json["result"], Value::Bool(false));

    // a tampered witness is rejected
    let mut cert = fig2.json["certificate"].clone();
    cert["witnesses"][2] = serde_json::json!([0, 3, 4]);
    let tampered = write_temp(&cert.to_string());
    let bad = run(&["verify", "--dataset", "fig2", "--certificate", tampered.path().to_str().unwrap()]);
    assert_eq!(bad.code, 1);

    // sdp orders go through the same path
    let p4 = write_temp("0 1\n1 2\n2 3\n");
    let p4 = p4.path().to_str().unwrap();
    let sdp = run(&["check-sdp", "--input", p4]);
    assert_eq!(sdp.code, 0);
    assert_eq!(sdp.json["certificate"]["kind"], Value::String("sdp".into()));
    let order = write_temp(&sdp.stdout);
    assert_eq!(run(&["verify", "--input", p4, "--certificate", order.path().to_str().unwrap()]).code, 0);
}

#[test]
fn budget_env_var_is_honoured() {
    let c40 = cycle_file(40);
    let path = c40.path().to_str().unwrap();
    let starved = run_with(&["check-dp", "--input", path], None, &[("MODLEX_BUDGET_MS", "1")]);
    assert_eq!(starved.code, 4, "{}", starved.stderr);
    assert_eq!(starved.json["indeterminate"], Value::Bool(true));
    // the flag overrides the environment
    let fig2 = run_with(&["--time-budget-ms", "60000", "check-dp", "--dataset", "fig2"], None, &[("MODLEX_BUDGET_MS", "1")]);
    assert_eq!(fig2.code, 0);
}

#[test]
fn products_carry_certificates() {
    let r = run(&["lexprod", "--dataset", "fig2", "--uniform", "P3"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["result"]["dp"], Value::Bool(true));
    let g = graph_of(&r.json["result"]["graph"]);
    assert_eq!(g.vertex_count(), 18);
    let w = r.json["certificate"]["witnesses"].as_array().unwrap();
    assert_eq!(w.len(), 18);

    let p3 = write_temp("0 1\n1 2\n");
    let cart = run(&["cartprod", "--input", p3.path().to_str().unwrap(), "--with", "fig2"]);
    assert_eq!(cart.code, 0);
    assert_eq!(graph_of(&cart.json["result"]["graph"]).vertex_count(), 18);
    assert_eq!(cart.json["certificate"]["witnesses"].as_array().unwrap().len(), 18);
    // C5 is not dp, so there is nothing to build from
    let none = run(&["cartprod", "--input", p3.path().to_str().unwrap(), "--with", "C5"]);
    assert!(none.json.get("certificate").is_none());
}

#[test]
fn transfer_check_agrees_with_itself() {
    // {(0,0),(2,0)} projects onto the ends of P3 in the base
    let p3 = write_temp("0 1\n1 2\n");
    let p = p3.path().to_str().unwrap();
    let r = run(&["transfer-check", "--input", p, "--uniform", "K2", "--subset", "0,4"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["result"], Value::Bool(false));
    let r = run(&["transfer-check", "--input", p, "--uniform", "K2", "--subset", "0,2,4"]);
    assert_eq!(r.json["result"], Value::Bool(true));
}

#[test]
fn dot_and_raw_outputs() {
    let dot = run(&["export-dot", "--dataset", "fig1", "--partition", "--raw"]);
    assert_eq!(dot.code, 0);
    assert!(dot.stdout.starts_with("graph"));
    assert_eq!(dot.stdout.matches("subgraph cluster_").count(), 2);
    assert_eq!(dot.stdout.matches('{').count(), dot.stdout.matches('}').count());

    let raw = run(&["dataset", "fig3", "--raw"]);
    let g = parse_edge_list(&raw.stdout).unwrap();
    assert_eq!(g, Dataset::Fig3.graph().unwrap());

    let edges = run(&["lexprod", "--dataset", "fig1", "--uniform", "K1", "--raw"]);
    assert_eq!(parse_edge_list(&edges.stdout).unwrap(), Dataset::Fig1.graph().unwrap());
}

#[test]
fn duplicate_edges_warn() {
    let r = run_with(&["modules", "--input", "-"], Some("0 1\n1 0\n1 2\n"), &[]);
    assert_eq!(r.code, 0);
    let warnings = r.json["warnings"].as_array().unwrap();
    assert_eq!(warnings.len(), 1);
    assert!(warnings[0].as_str().unwrap().contains("duplicate"));
}
