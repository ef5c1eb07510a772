use std::path::PathBuf;
use std::process::Command;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use euler_pade::Error;
use euler_pade_cli::output::*;
use euler_pade_cli::{Failure, EXIT_NOT_CERTIFIED, EXIT_OK, EXIT_SOUNDNESS, EXIT_USAGE};

struct Run {
    stdout: String,
    stderr: String,
    code: u8,
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_euler-pade"));
    cmd.args(args).env_remove("EULER_PADE_DIGITS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().expect("exited normally") as u8,
    }
}

fn run(args: &[&str]) -> Run {
    run_env(args, &[])
}

fn ok(args: &[&str]) -> String {
    let r = run(args);
    assert_eq!(r.code, EXIT_OK, "{args:?}: {}", r.stderr);
    r.stdout
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let r = run(&a);
    assert!(r.code <= 1, "{args:?}: {}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn line<'a>(out: &'a str, prefix: &str) -> &'a str {
    out.lines().find(|l| l.starts_with(prefix)).unwrap_or_else(|| panic!("no line {prefix} in\n{out}"))
}

fn num(v: &Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

/// Convergents of the continued fraction at an integer point, by the
/// three-term recurrence in machine integers.
fn convergent_i128(t: i128, l: u32) -> (i128, i128) {
    let (mut a_prev, mut a) = (1i128, 0i128);
    let (mut b_prev, mut b) = (0i128, 1i128);
    for k in 1..=l as i128 {
        let ak = if k == 1 { 1 } else { -(k - 1) * (k - 1) * t * t };
        let bk = 1 - (2 * k - 1) * t;
        (a_prev, a) = (a, bk * a + ak * a_prev);
        (b_prev, b) = (b, bk * b + ak * b_prev);
    }
    (a, b)
}

#[test]
fn pade_two() {
    let out = ok(&["pade", "2"]);
    assert_eq!(line(&out, "P_2"), "P_2(t) = 1 - 3*t");
    assert_eq!(line(&out, "Q_2"), "Q_2(t) = 1 - 4*t + 2*t^2");
}

#[test]
fn pade_zero() {
    let out = ok(&["pade", "0"]);
    assert_eq!(line(&out, "P_0"), "P_0(t) = 0");
    assert_eq!(line(&out, "Q_0"), "Q_0(t) = 1");
}

#[test]
fn pade_one_json() {
    let v = json(&["pade", "1"]);
    assert_eq!(v["command"], "pade");
    assert_eq!(v["result"]["p"], serde_json::json!(["1"]));
    assert_eq!(v["result"]["q"], serde_json::json!(["1", "-1"]));
    assert_eq!(v["result"]["r_start"], 2);
    // l!^2 k! C(l+k, k)^2 at l = 1: 1, 4, 18, 96
    let v = json(&["pade", "1", "--extra", "3"]);
    assert_eq!(v["result"]["r_prefix"], serde_json::json!(["1", "4", "18", "96"]));
}

#[test]
fn eval_padic_examples() {
    assert_eq!(ok(&["eval-padic", "--p", "2", "--t", "2", "--prec", "4"]), "E_2(2) = 11 (mod 2^4)\n");
    let out = ok(&["eval-padic", "--p", "2", "--t", "2", "--prec", "6", "--c", "11", "--d", "1"]);
    assert_eq!(line(&out, "v_2"), "v_2 = Exact(4)");
    assert_eq!(ok(&["eval-padic", "--p", "3", "--t", "3", "--prec", "1"]), "E_3(3) = 1 (mod 3^1)\n");

    // sum of k! 2^k modulo 2^4
    let direct = (0..8u64).map(|k| (1..=k).product::<u64>() << k).sum::<u64>() % 16;
    let v = json(&["eval-padic", "--p", "2", "--t", "2", "--prec", "4"]);
    assert_eq!(v["result"]["residue"], direct.to_string());
    assert_eq!(v["result"]["modulus"], "16");
}

#[test]
fn hardy_examples() {
    let out = ok(&["hardy", "--t", "-1", "--prec", "10"]);
    assert_eq!(line(&out, "H("), "H(-1) = 0.5963473623");

    let v = json(&["hardy", "--t", "1", "--route", "ray", "--b", "1", "--prec", "30"]);
    let im = num(&v["result"]["im"]);
    let pi_over_e = std::f64::consts::PI / std::f64::consts::E;
    assert!((im.abs() - pi_over_e).abs() < 1e-12, "{im}");

    let e = json(&["hardy", "--t", "-2", "--route", "explicit", "--prec", "30"]);
    let q = json(&["hardy", "--t", "-2", "--route", "quadrature", "--prec", "30"]);
    assert_eq!(e["result"]["re"], q["result"]["re"]);
    assert!(num(&e["result"]["im"]).abs() < 1e-25);
}

#[test]
fn cf_examples() {
    let (a, b) = convergent_i128(-1, 5);
    let out = ok(&["cf", "--t", "-1", "--l", "5", "--domain", "rational"]);
    assert_eq!(line(&out, "A_5 ="), format!("A_5 = {a}"));
    assert_eq!(line(&out, "B_5 ="), format!("B_5 = {b}"));

    let v = json(&["cf", "--t", "2", "--l", "3", "--domain", "padic", "--p", "2", "--prec", "8"]);
    let (a, b) = convergent_i128(2, 3);
    assert_eq!(b % 2, 1);
    let r: i128 = v["result"]["value"].as_str().unwrap().parse().unwrap();
    assert_eq!((r * b - a).rem_euclid(256), 0);
    assert_eq!(v["result"]["numerator"], a.rem_euclid(256).to_string());
    assert_eq!(v["result"]["denominator"], b.rem_euclid(256).to_string());
    assert_eq!(v["metadata"]["padic_precision"], 8);

    let cf = ok(&["cf", "--l", "2"]);
    let pade = ok(&["pade", "2"]);
    assert_eq!(line(&cf, "A_2").split(" = ").nth(1), line(&pade, "P_2").split(" = ").nth(1));
    assert_eq!(line(&cf, "B_2").split(" = ").nth(1), line(&pade, "Q_2").split(" = ").nth(1));
}

#[test]
fn cf_real_matches_gompertz() {
    let v = json(&["cf", "--t", "-1", "--l", "25", "--domain", "real", "--prec", "20"]);
    let h = json(&["hardy", "--t", "-1", "--prec", "20"]);
    let bound: Vec<f64> = v["result"]["distance_bound"]
        .as_str()
        .unwrap()
        .split('/')
        .map(|s| s.parse().unwrap())
        .collect();
    assert!((num(&v["result"]["value"]) - num(&h["result"]["re"])).abs() <= bound[0] / bound[1]);
}

#[test]
fn certify_examples() {
    let r = run(&["certify", "--p", "2", "--a", "10", "--c", "1", "--d", "1", "--l", "2"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("certified: |1*E_2(1024) - 1|_2 >= 2^-40"), "{}", r.stdout);

    let r = run(&["certify", "--p", "2", "--a", "1", "--c", "1", "--d", "1", "--H", "1000000", "--l", "2"]);
    assert_eq!(r.code, EXIT_NOT_CERTIFIED);
    assert!(r.stdout.contains("not certified"));

    let v = json(&["certify", "--p", "2", "--a", "10", "--c", "1", "--d", "1", "--strategy", "search", "--cross-check"]);
    let res = &v["result"];
    assert_eq!(res["certified"], true);
    let bound = res["certified_exponent"].as_u64().unwrap();
    assert_eq!(bound, 2 * 10 * res["l"].as_u64().unwrap());
    assert_eq!(res["cross_check"]["kind"], "exact");
    assert!(res["cross_check"]["value"].as_u64().unwrap() <= bound);
}

#[test]
fn certify_negative_sign() {
    let v = json(&["certify", "--p", "3", "--a", "4", "--sign", "-", "--c", "2", "--d", "-1", "--cross-check"]);
    assert_eq!(v["result"]["t"], "-81");
    assert_eq!(v["inputs"]["sign"], "-");
    if v["result"]["certified"] == true {
        assert_eq!(v["result"]["cross_check"]["kind"], "exact");
    }
}

#[test]
fn selftest_passes_and_catches_fault() {
    let out = ok(&["selftest", "--level", "quick"]);
    assert!(out.ends_with("9 of 9 checks passed\n"), "{out}");
    let r = run(&["selftest", "--inject-fault"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("FAIL determinant"));
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &[],
        &["frobnicate"],
        &["pade"],
        &["pade", "-1"],
        &["pade", "x"],
        &["eval-padic", "--p", "2", "--t", "3", "--prec", "4"],
        &["eval-padic", "--p", "4", "--t", "4", "--prec", "4"],
        &["eval-padic", "--p", "2", "--t", "2", "--prec", "4", "--c", "1"],
        &["hardy", "--t", "1", "--route", "quadrature"],
        &["hardy", "--t", "-1", "--route", "ray"],
        &["hardy", "--t", "0", "--route", "explicit"],
        &["hardy", "--t", "-1", "--prec", "0"],
        &["cf", "--t", "0", "--l", "3"],
        &["cf", "--t", "2", "--l", "3", "--domain", "padic", "--prec", "8"],
        &["cf", "--t", "3", "--l", "3", "--domain", "padic", "--p", "2", "--prec", "8"],
        &["certify", "--p", "2", "--a", "3", "--c", "1", "--d", "1", "--l", "2", "--strategy", "search"],
        &["certify", "--p", "2", "--a", "3", "--sign", "*", "--c", "1", "--d", "1"],
        &["selftest", "--level", "huge"],
    ];
    for args in cases {
        let r = run(args);
        assert_eq!(r.code, EXIT_USAGE, "{args:?}: {}{}", r.stdout, r.stderr);
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn exit_code_mapping() {
    let sound = Failure::from(Error::SoundnessViolation("v = 9 > 8".into()));
    assert_eq!(sound.code, EXIT_SOUNDNESS);
    assert_eq!(Failure::from(Error::NotPrime(4)).code, EXIT_USAGE);
    assert_eq!(Failure::from(Error::Unresolved(100)).code, 1);
}

fn round_trip<I, R>(args: &[&str])
where
    I: Serialize + DeserializeOwned,
    R: Serialize + DeserializeOwned,
{
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let text = run(&a).stdout;
    let env: Envelope<I, R> = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    let again = serde_json::to_string_pretty(&serde_json::to_value(&env).unwrap()).unwrap() + "\n";
    assert_eq!(text, again, "{args:?}");
}

#[test]
fn json_round_trips() {
    round_trip::<PadeInputs, PadeResult>(&["pade", "4", "--extra", "2"]);
    round_trip::<EvalPadicInputs, EvalPadicResult>(&["eval-padic", "--p", "5", "--t", "-25", "--prec", "9"]);
    round_trip::<EvalPadicInputs, EvalPadicResult>(&[
        "eval-padic", "--p", "2", "--t", "2", "--prec", "6", "--c", "11", "--d", "1",
    ]);
    round_trip::<HardyInputs, HardyResult>(&["hardy", "--t", "-3/2", "--prec", "25"]);
    round_trip::<HardyInputs, HardyResult>(&["hardy", "--t", "1/2", "--route", "explicit", "--branch", "2"]);
    round_trip::<CfInputs, CfResult>(&["cf", "--l", "3"]);
    round_trip::<CfInputs, CfResult>(&["cf", "--t", "-1", "--l", "6", "--domain", "real"]);
    round_trip::<CfInputs, CfResult>(&["cf", "--t", "9", "--l", "4", "--domain", "padic", "--p", "3", "--prec", "12"]);
    round_trip::<CertifyInputs, CertifyResult>(&["certify", "--p", "2", "--a", "10", "--c", "1", "--d", "1", "--cross-check"]);
    round_trip::<CertifyInputs, CertifyResult>(&["certify", "--p", "2", "--a", "1", "--c", "1", "--d", "1", "--H", "1000000", "--l", "2"]);
    round_trip::<SelftestInputs, SelftestResult>(&["selftest"]);
}

#[test]
fn identical_invocations_identical_bytes() {
    let cases: &[&[&str]] = &[
        &["hardy", "--t", "-7/3", "--prec", "40", "--format", "json"],
        &["hardy", "--t", "3", "--route", "ray", "--b", "2", "--prec", "30"],
        &["cf", "--t", "-1/2", "--l", "12", "--domain", "real", "--prec", "35"],
        &["certify", "--p", "5", "--a", "2", "--c", "-3", "--d", "7", "--cross-check", "--format", "json"],
        &["selftest", "--format", "json"],
    ];
    for args in cases {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn digits_from_environment() {
    let r = run_env(&["hardy", "--t", "-1", "--format", "json"], &[("EULER_PADE_DIGITS", "15")]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["metadata"]["digits"], 15);
    assert_eq!(v["result"]["re"], "0.596347362323194");

    let r = run_env(&["hardy", "--t", "-1", "--prec", "12"], &[("EULER_PADE_DIGITS", "15")]);
    assert_eq!(line(&r.stdout, "H("), "H(-1) = 0.596347362323");

    let v = json(&["hardy", "--t", "-1"]);
    assert_eq!(v["metadata"]["digits"], 50);

    let r = run_env(&["hardy", "--t", "-1"], &[("EULER_PADE_DIGITS", "many")]);
    assert_eq!(r.code, EXIT_USAGE);
}

#[test]
fn out_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("pade3.json");
    let _ = std::fs::remove_file(&path);
    let r = run(&["pade", "3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, run(&["pade", "3", "--format", "json"]).stdout);

    let r = run(&["certify", "--p", "2", "--a", "1", "--c", "1", "--d", "1", "--H", "1000000", "--l", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_NOT_CERTIFIED);
    assert!(std::fs::read_to_string(&path).unwrap().contains("not certified"));
}

/// Checks `v` against the subset of JSON Schema used by the shipped schema.
fn conforms(v: &Value, s: &Value, root: &Value) -> Result<(), String> {
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        let name = r.strip_prefix("#/$defs/").ok_or("unsupported $ref")?;
        return conforms(v, &root["$defs"][name], root);
    }
    if let Some(alts) = s.get("oneOf").and_then(Value::as_array) {
        let n = alts.iter().filter(|a| conforms(v, a, root).is_ok()).count();
        return if n == 1 { Ok(()) } else { Err(format!("{n} alternatives match {v}")) };
    }
    if let Some(c) = s.get("const") {
        if v != c {
            return Err(format!("{v} != {c}"));
        }
    }
    if let Some(e) = s.get("enum").and_then(Value::as_array) {
        if !e.contains(v) {
            return Err(format!("{v} not in {e:?}"));
        }
    }
    if let Some(t) = s.get("type") {
        let types: Vec<&str> = match t {
            Value::String(t) => vec![t.as_str()],
            Value::Array(ts) => ts.iter().filter_map(Value::as_str).collect(),
            _ => return Err("bad type".into()),
        };
        let ok = types.iter().any(|t| match *t {
            "null" => v.is_null(),
            "boolean" => v.is_boolean(),
            "integer" => v.is_i64() || v.is_u64(),
            "string" => v.is_string(),
            "array" => v.is_array(),
            "object" => v.is_object(),
            _ => false,
        });
        if !ok {
            return Err(format!("{v} is not {types:?}"));
        }
    }
    if let (Some(x), Some(min)) = (v.as_i64(), s.get("minimum").and_then(Value::as_i64)) {
        if x < min {
            return Err(format!("{x} < {min}"));
        }
    }
    if let (Some(x), Some(pat)) = (v.as_str(), s.get("pattern").and_then(Value::as_str)) {
        let digits = |d: &str| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit());
        let body = x.strip_prefix('-').unwrap_or(x);
        let matches = match pat {
            "^-?[0-9]+$" => digits(body),
            "^-?[0-9]+(/[0-9]+)?$" => body.split('/').count() <= 2 && body.split('/').all(digits),
            _ => return Err(format!("unsupported pattern {pat}")),
        };
        if !matches {
            return Err(format!("{x} does not match {pat}"));
        }
    }
    if let (Some(items), Some(arr)) = (s.get("items"), v.as_array()) {
        for x in arr {
            conforms(x, items, root)?;
        }
    }
    if let Some(obj) = v.as_object() {
        let props = s.get("properties").and_then(Value::as_object);
        for key in s.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(key.as_str().unwrap()) {
                return Err(format!("missing {key}"));
            }
        }
        for (k, x) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(ps) => conforms(x, ps, root).map_err(|e| format!("{k}: {e}"))?,
                None if s.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return Err(format!("unexpected key {k}"))
                }
                None => {}
            }
        }
    }
    Ok(())
}

#[test]
fn outputs_match_shipped_schema() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../book/src/output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let cases: &[&[&str]] = &[
        &["pade", "3", "--extra", "2"],
        &["eval-padic", "--p", "2", "--t", "2", "--prec", "6", "--c", "11", "--d", "1"],
        &["eval-padic", "--p", "3", "--t", "-3", "--prec", "5"],
        &["hardy", "--t", "-1", "--prec", "10"],
        &["hardy", "--t", "1", "--route", "ray", "--b", "1/2", "--prec", "12"],
        &["hardy", "--t", "2", "--route", "explicit", "--branch", "-1", "--prec", "12"],
        &["cf", "--t", "-1", "--l", "5"],
        &["cf", "--t", "1", "--l", "1"],
        &["cf", "--l", "3"],
        &["cf", "--t", "-1/2", "--l", "4", "--domain", "real", "--prec", "20"],
        &["cf", "--t", "2", "--l", "3", "--domain", "padic", "--p", "2", "--prec", "8"],
        &["certify", "--p", "2", "--a", "10", "--c", "1", "--d", "1", "--strategy", "search", "--cross-check"],
        &["certify", "--p", "3", "--a", "1", "--c", "1", "--d", "1", "--H", "1000000", "--l", "2"],
        &["certify", "--p", "2", "--a", "5", "--sign", "-", "--c", "3", "--d", "2", "--strategy", "remmal"],
        &["selftest"],
        &["selftest", "--inject-fault"],
    ];
    for args in cases {
        let v = json(args);
        conforms(&v, &schema, &schema).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
    let mut bad = json(&["pade", "1"]);
    bad["result"]["extra_key"] = Value::Bool(true);
    assert!(conforms(&bad, &schema, &schema).is_err());
}
