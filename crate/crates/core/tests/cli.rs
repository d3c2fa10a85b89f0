//! End-to-end runs of the `hankel-lab` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel-lab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("each line is a JSON object")).collect()
}

#[test]
fn ctx_reports_constants() {
    let o = lab(&["ctx", "--k", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    let big_k: f64 = v["K"].as_f64().unwrap();
    assert!((big_k - 1.685_750_354_812_596).abs() < 1e-15);
    let q = v["q"].as_f64().unwrap();
    let kp = v["Kp"].as_f64().unwrap();
    assert!((q - (-std::f64::consts::PI * kp / big_k).exp()).abs() < 1e-17);
}

#[test]
fn numbers_carry_17_significant_digits() {
    let o = lab(&["ctx", "--k", "0.3", "--format", "csv"]);
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    for field in row.split(',') {
        let mantissa = field.split('e').next().unwrap().replace(['-', '.'], "");
        assert_eq!(mantissa.len(), 17, "{field}");
    }
}

#[test]
fn hankel_csv_header_and_symmetry() {
    let o = lab(&["hankel", "--tag", "qp", "--k", "0.5", "--n", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# tag=qp k=5.0000000000000000e-1 N=5"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 5);
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            assert_eq!(*x, rows[j][i]);
        }
    }
}

#[test]
fn spectrum_and_verify_json_keys() {
    for cmd in ["spectrum", "verify"] {
        let o = lab(&[cmd, "--tag", "s", "--k", "0.5", "--m-max", "4"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        let v = &json_lines(&o)[0];
        for key in ["tag", "k", "truncation", "eigenvalues", "commutator_residual", "trace_gap", "pass"] {
            assert!(v.get(key).is_some(), "{cmd} lacks {key}");
        }
        assert_eq!(v["tag"], "s");
        assert_eq!(v["truncation"], 64);
        assert_eq!(v["pass"], true);
        assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 4);
        assert_eq!(v["eigenvalues"][0]["m"], 1);
    }
}

#[test]
fn verify_all_tags_in_order_and_deterministic() {
    let args = ["verify", "--tag", "all", "--k", "0.5,0.8"];
    let a = lab(&args);
    let b = lab(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let tags: Vec<String> = json_lines(&a).iter().map(|v| v["tag"].as_str().unwrap().to_string()).collect();
    let order = ["p", "q", "r", "s", "f", "g", "qp", "sp", "fp", "fpp", "gp"];
    assert_eq!(tags.len(), 22);
    for (i, t) in tags.iter().enumerate() {
        assert_eq!(t, order[i / 2], "line {i}");
    }
}

#[test]
fn failing_verification_exits_one() {
    // eight eigenvalues at k = 0.3 go below the resolution of the dense solver
    let o = lab(&["verify", "--tag", "fp", "--k", "0.3", "--m-max", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL tag=fp"));
    assert_eq!(json_lines(&o)[0]["pass"], false);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--k", "2"][..],
        &["verify", "--tag", "zz"],
        &["frobnicate"],
        &["hankel", "--format", "xml"],
        &["spectrum", "--tol=-1"],
    ] {
        assert_eq!(lab(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("hankel-lab-test-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let o = lab(&["jacobi", "--tag", "r", "--n", "4", "--format", "csv", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("# tag=r k=5.0000000000000000e-1 N=4\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn poly_values_at_spectral_points() {
    let o = lab(&["poly", "--tag", "f", "--k", "0.5", "--n", "4", "--m-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 3);
    for pt in points {
        let values = pt["values"].as_array().unwrap();
        assert_eq!(values.len(), 4);
        assert_eq!(values[0].as_f64(), Some(1.0));
    }
}
