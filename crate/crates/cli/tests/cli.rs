use std::f64::consts::PI;
use std::io::Write;
use std::process::{Command, Output};

use besselrec::format::{read_csv, read_json, write_csv, write_json};
use serde_json::Value;

fn besselrec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_besselrec"))
        .args(args)
        .env_remove("BESSELREC_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(stdout(o).trim()).unwrap()
}

fn field(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap()
}

#[test]
fn closed_value_and_dump() {
    let v = json(&besselrec(&["eval", "--family", "F", "--N", "2", "--nu", "1", "--z", "2", "--method", "closed"]));
    let expected = PI / 2.0 * (-2.0f64).exp() * 1.5 / 2.0;
    assert!((field(&v, "value") - expected).abs() <= 1e-15 * expected);
    assert_eq!(v["exact"]["poly"], serde_json::json!(["1", "1"]));
    assert_eq!(v["exact"]["pi_factor"], "1/2");
}

#[test]
fn product_matches_quadrature() {
    let run = |m| json(&besselrec(&["eval", "--family", "G", "--N", "3", "--nu", "1", "--z", "5", "--method", m, "--tol", "1e-10"]));
    let (p, q) = (field(&run("product"), "value"), field(&run("quad"), "value"));
    assert!((p - q).abs() <= 1e-8 * q);
}

#[test]
fn exit_codes() {
    let parity = besselrec(&["eval", "--family", "F", "--N", "2", "--nu", "2", "--z", "1", "--method", "closed"]);
    assert_eq!(parity.status.code(), Some(3));
    let flag = besselrec(&["eval", "--family", "H", "--N", "2", "--nu", "1", "--z", "1", "--method", "closed"]);
    assert_eq!(flag.status.code(), Some(2));
    let missing = besselrec(&["eval", "--family", "F", "--N", "2", "--nu", "1", "--method", "closed"]);
    assert_eq!(missing.status.code(), Some(2));
    let tolerance = besselrec(&["eval", "--family", "F", "--N", "1", "--nu", "0", "--z", "1", "--method", "quad", "--tol", "1e-14"]);
    assert_eq!(tolerance.status.code(), Some(4));
    let domain = besselrec(&["rate", "--T", "1"]);
    assert_eq!(domain.status.code(), Some(4));
    for o in [parity, flag, missing, tolerance, domain] {
        assert!(o.stdout.is_empty(), "partial output: {}", stdout(&o));
    }
}

#[test]
fn failure_late_in_z_list_prints_nothing() {
    let o = besselrec(&["eval", "--family", "F", "--N", "1", "--nu", "0", "--z", "1,2,0.01", "--method", "quad"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(o.stdout.is_empty());
}

#[test]
fn coefficient_dumps() {
    let v = json(&besselrec(&["coeffs", "--family", "F", "--N", "2", "--nu", "1", "--exact"]));
    assert_eq!(v["unit"], "pi/2");
    assert_eq!(v["poly"], serde_json::json!(["1", "1"]));
    assert_eq!(v["terminating"], true);

    let v = json(&besselrec(&["coeffs", "--family", "G", "--N", "3", "--nu", "1", "--order", "4"]));
    let c: Vec<f64> = v["coeffs"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(c, vec![1.0, 4.5, 10.125, 10.3125]);
    assert_eq!(v["terminating"], false);

    let v = json(&besselrec(&["coeffs", "--family", "F", "--N", "0", "--nu", "1", "--exact"]));
    assert_eq!(v["poly"], serde_json::json!(["1"]));

    let v = json(&besselrec(&["coeffs", "--family", "G", "--N", "5", "--nu", "1", "--order", "4", "--exact"]));
    assert_eq!(v["coeffs"], serde_json::json!(["1", "15/2", "285/8", "1875/16"]));
}

#[test]
fn json_and_csv_round_trip() {
    for method in ["closed", "asymp", "product", "quad"] {
        let args = ["eval", "--family", "G", "--N", "4", "--nu", "-3", "--z", "0.5,1.25,7", "--method", method];
        let text = stdout(&besselrec(&args));
        assert_eq!(text.lines().count(), 3);
        let mut again = Vec::new();
        write_json(&read_json(text.as_bytes()).unwrap(), &mut again).unwrap();
        assert_eq!(String::from_utf8(again).unwrap(), text, "{method}");

        let mut csv_args = args.to_vec();
        csv_args.extend(["--format", "csv"]);
        let text = stdout(&besselrec(&csv_args));
        assert!(text.starts_with("method,family,N,nu,z,value,error_estimate\n"));
        let mut again = Vec::new();
        write_csv(&read_csv(text.as_bytes()).unwrap(), &mut again).unwrap();
        assert_eq!(String::from_utf8(again).unwrap(), text, "{method}");
    }
}

#[test]
fn rate_routes_fugacities_and_scaling() {
    let me = "0.00051099895";
    let exact = json(&besselrec(&["rate", "--T", me, "--route", "exact"]));
    let quad = json(&besselrec(&["rate", "--T", me, "--route", "quad"]));
    let (a, b) = (field(&exact, "inverse_tau"), field(&quad, "inverse_tau"));
    assert!((a - b).abs() <= 1e-7 * a);
    assert!(exact.get("R").is_none());

    let eq = json(&besselrec(&["rate", "--T", me, "--upsilon", "1,1,1,1"]));
    assert_eq!(field(&eq, "R"), 0.0);

    let doubled = json(&besselrec(&["rate", "--T", me, "--GF", "2.3327574e-5"]));
    assert!((field(&doubled, "inverse_tau") / a - 4.0).abs() < 1e-12);

    let bad = besselrec(&["rate", "--T", me, "--upsilon", "1,1,1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn config_file_and_environment() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# doubled coupling\nfermi_constant = 2.3327574e-5").unwrap();
    let path = file.path().to_str().unwrap();
    let base = field(&json(&besselrec(&["rate", "--T", "0.0005"])), "inverse_tau");
    let flag = field(&json(&besselrec(&["--config", path, "rate", "--T", "0.0005"])), "inverse_tau");
    assert!((flag / base - 4.0).abs() < 1e-12);

    let env = Command::new(env!("CARGO_BIN_EXE_besselrec"))
        .args(["rate", "--T", "0.0005"])
        .env("BESSELREC_CONFIG", path)
        .output()
        .unwrap();
    assert_eq!(field(&json(&env), "inverse_tau"), flag);

    let mut junk = tempfile::NamedTempFile::new().unwrap();
    writeln!(junk, "fermi = 1").unwrap();
    let o = besselrec(&["rate", "--T", "0.0005", "--config", junk.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = besselrec(&["verify"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let table = stdout(&o);
    assert!(table.lines().filter(|l| l.ends_with("pass")).count() >= 7, "{table}");

    let o = besselrec(&["verify", "--nmax", "4", "--tol", "1e-6"]);
    assert!(o.status.success());

    let o = besselrec(&["verify", "--nmax", "4", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("termination"), "{err}");
    assert!(stdout(&o).lines().any(|l| l.starts_with("termination") && l.contains("FAIL")));
}
