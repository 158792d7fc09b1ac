use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn birat(args: &[&str], stdin: &str) -> (i32, Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_birat"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let Output { status, stdout, .. } = child.wait_with_output().unwrap();
    let body = serde_json::from_slice(&stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&stdout)));
    (status.code().unwrap(), body)
}

fn request(v: Value) -> (i32, Value) {
    birat(&[], &v.to_string())
}

#[test]
fn verify_square_of_sigma1() {
    let (code, out) = request(json!({"command":"verify","payload":{"lhs":"compose(sigma1,sigma1)","rhs":"id:P2"}}));
    assert_eq!(code, 0);
    assert_eq!(out, json!({"equal": true, "factor": "x*(y^2+z^2)"}));
}

#[test]
fn apply_projection() {
    let (code, out) = request(json!({"command":"apply","payload":{"map":"pi_N","point":[2,1,0,1]}}));
    assert_eq!(code, 0);
    assert_eq!(out, json!({"point": ["1", "0", "1"]}));
}

#[test]
fn solve_then_reapply() {
    let (code, out) = request(json!({"command":"solve","payload":{"P":[[1,0,0]],"Q":[[0,1,0]]}}));
    assert_eq!(code, 0);
    assert_eq!(out["stages"].as_array().unwrap().len(), 1);
    assert_eq!(out["certificates"], json!({"hits": true, "involutions": true}));
    let (code, inv) = request(json!({"command":"invert-twist","payload":{"twist": out["stages"][0]}}));
    assert_eq!((code, &inv["certificate"]), (0, &json!(true)));
}

#[test]
fn command_argument_takes_bare_payload() {
    let (code, out) = birat(&["compose"], r#"{"g":"sigma0","f":"sigma0"}"#);
    assert_eq!(code, 0);
    assert_eq!(out["map"]["coords"], json!(["x^2*y*z", "x*y^2*z", "x*y*z^2"]));
}

#[test]
fn inequality_exits_2() {
    let (code, out) = request(json!({"command":"verify","payload":{"lhs":"sigma0","rhs":"sigma1"}}));
    assert_eq!(code, 2);
    assert_eq!(out["equal"], false);
    assert!(out["witness"].is_array());
}

#[test]
fn errors_exit_3() {
    for (input, code) in [
        ("not json", "invalid_json"),
        (r#"{"command":"nope","payload":{}}"#, "unknown_command"),
        (r#"{"command":"apply","payload":{"map":"sigma9","point":[1,0,0]}}"#, "unknown_name"),
        (r#"{"command":"compose","payload":{"g":"pi_N","f":"sigma0"}}"#, "surface_mismatch"),
    ] {
        let (exit, out) = birat(&[], input);
        assert_eq!(exit, 3, "{input}");
        assert_eq!(out["error"], code, "{input}");
        assert!(out["detail"].is_string());
    }
}

#[test]
fn files_in_and_out() {
    let dir = std::env::temp_dir().join(format!("birat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (input, output) = (dir.join("req.json"), dir.join("resp.json"));
    std::fs::write(&input, json!({"command":"catalog","payload":{"name":"sigma0"}}).to_string()).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_birat"))
        .args(["--in", input.to_str().unwrap(), "--out", output.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(status.success());
    let out: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(out["map"]["coords"], json!(["y*z", "x*z", "x*y"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn regulous_eval_flags() {
    let (code, out) = birat(&["regulous-eval", "--fn", "cartan_canopy", "--point", "0,0"], "");
    assert_eq!((code, &out["result"], &out["value"]), (0, &json!("value"), &json!("0")));

    let f = r#"{"vars":["x","y"],"num":"x*y","den":"x^2+y^2"}"#;
    let (code, out) = birat(&["regulous-eval", "--fn", f, "--point", "0,0"], "");
    assert_eq!((code, &out["result"]), (2, &json!("not-continuous")));

    let (code, out) = birat(&["regulous-eval", "--fn", "k_family(2)", "--point", "0,0", "--k", "3", "--pencil", "12"], "");
    assert_eq!(code, 2);
    assert_eq!(out["k_check"]["fail_at"], 3);
}

#[test]
fn seeded_output_is_reproducible() {
    let req = json!({"command":"verify","payload":{"lhs":"compose(tau0,tau0)","rhs":"id:P1xP1"}}).to_string();
    let a = birat(&["--seed", "11"], &req);
    let b = birat(&["--seed", "11"], &req);
    assert_eq!(a, b);
    assert_eq!(a.1["samples"]["agree"], true);
}

#[test]
fn no_floats_in_output() {
    fn has_float(v: &Value) -> bool {
        match v {
            Value::Number(n) => n.is_f64(),
            Value::Array(a) => a.iter().any(has_float),
            Value::Object(o) => o.values().any(has_float),
            _ => false,
        }
    }
    for req in [
        json!({"command":"dehn","payload":{"levels":["1/2"],"eps":"1/4","tol":"1/2"}}),
        json!({"command":"interp-circle","payload":{"nodes":[[0,["3/5","4/5"]],["1/2",[0,1]]]}}),
        json!({"command":"solve","payload":{"P":[[1,0,0],[0,1,0]],"Q":[[0,0,1],[0,-1,0]]}}),
    ] {
        let (code, out) = request(req.clone());
        assert_eq!(code, 0, "{req}: {out}");
        assert!(!has_float(&out), "{out}");
    }
}
