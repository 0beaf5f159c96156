use std::process::{Command, Output};
use std::str::FromStr;

use hermite_spread::record::{Kind, OutputRecord};
use hermite_spread_core::ExactReal;
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermite-spread"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Vec<u8>, OutputRecord) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let record = serde_json::from_slice(&out.stdout).expect("valid record");
    (out.stdout, record)
}

fn column(record: &OutputRecord, name: &str) -> usize {
    record.columns.iter().position(|c| c.name == name).unwrap()
}

#[test]
fn json_round_trips() {
    let (bytes, record) = json(&["lengths", "--n-max", "3", "--q", "2,3"]);
    assert_eq!(record.schema, 1);
    assert_eq!(record.command, "lengths");
    let mut again = Vec::new();
    record.write_json(&mut again).unwrap();
    assert_eq!(again, bytes);
}

#[test]
fn heller_lengths_are_exact() {
    let (_, record) = json(&["lengths", "--n-max", "2", "--q", "2"]);
    let col = column(&record, "renyi_length_q2_exact");
    let root_two_pi = ExactReal::normalize(BigRational::from_integer(1.into()), BigUint::from(2u32), 1);
    let expected = [(1, 1), (4, 3), (64, 41)];
    assert_eq!(record.rows.len(), 3);
    for (row, (p, q)) in record.rows.iter().zip(expected) {
        let got = ExactReal::from_str(row[col].as_str().unwrap()).unwrap();
        assert_eq!(got, root_two_pi.scale(&BigRational::new(p.into(), q.into())));
    }
}

#[test]
fn exact_columns_reparse_and_match_floats() {
    for args in [
        &["lengths", "--n-max", "4"][..],
        &["moments", "--n-max", "4", "--k", "2,3,6"],
        &["entropic", "--n-max", "3", "--q", "2,3"],
        &["oscillator", "--n-max", "3", "--lambda", "9/4"],
    ] {
        let (_, record) = json(args);
        for (i, c) in record.columns.iter().enumerate() {
            if c.kind != Kind::Exact {
                continue;
            }
            assert_eq!(record.columns[i - 1].name, c.name.trim_end_matches("_exact"));
            for row in &record.rows {
                let text = row[i].as_str().unwrap();
                let exact = ExactReal::from_str(text).unwrap();
                assert_eq!(exact.to_string(), text);
                let float = row[i - 1].as_f64().unwrap();
                let want = exact.to_f64();
                assert!((float - want).abs() <= 1e-15 * want.abs(), "{} {float} {want}", c.name);
            }
        }
    }
}

#[test]
fn output_is_reproducible_across_thread_counts() {
    let args = ["entropic", "--n-max", "6", "--q", "1,2,4"];
    let one = run(&[&args[..], &["--threads", "1"]].concat());
    let four = run(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let n: Vec<u64> = String::from_utf8(one.stdout)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(n.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn csv_header_carries_units() {
    let out = run(&["bounds", "--n-max", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header, "n [1],k_opt [1],shannon_bound [x],bound_warning [1]");
    assert!(text.lines().nth(1).unwrap().starts_with("0,2,2.92"));
}

#[test]
fn bounds_reproduce_optimal_orders() {
    let (_, record) = json(&["bounds", "--n-max", "12"]);
    let k: Vec<u64> = record.rows.iter().map(|r| r[1].as_u64().unwrap()).collect();
    assert_eq!(k, [2, 6, 8, 10, 12, 14, 16, 16, 18, 20, 22, 22, 24]);
    let (_, record) = json(&["bounds", "--n-max", "9", "--k-max", "20"]);
    assert_eq!(record.rows[9][3], Value::Bool(true));
}

#[test]
fn oscillator_identity_matches_hermite() {
    let (_, ho) = json(&["oscillator", "--n-max", "3", "--lambda", "1"]);
    let (_, base) = json(&["lengths", "--n-max", "3", "--q", "2,3"]);
    for name in ["std_dev_exact", "fisher_length_exact", "renyi_length_q2_exact", "renyi_length_q3", "shannon_length"] {
        let (a, b) = (column(&ho, name), column(&base, name));
        for (r, s) in ho.rows.iter().zip(&base.rows) {
            assert_eq!(r[a], s[b], "{name}");
        }
    }
}

#[test]
fn fits_subrange() {
    let (_, record) = json(&["fits", "--range", "0:20"]);
    assert_eq!(record.rows.len(), 2);
    for row in &record.rows {
        let r = row[3].as_f64().unwrap();
        assert!(r > 0.99 && r <= 1.0);
        assert_eq!((row[4].as_u64(), row[5].as_u64()), (Some(0), Some(20)));
    }
}

#[test]
fn asymptotic_ratios() {
    let (_, record) = json(&["asymptotics", "--n", "30", "--q", "1"]);
    let row = &record.rows[0];
    assert!((row[column(&record, "entropic_moment_ratio")].as_f64().unwrap() - 1.0).abs() < 1e-15);
    let z = row[column(&record, "z4_ratio")].as_f64().unwrap();
    assert!((z - 1.0).abs() < 1e-3);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["lengths", "--n-max", "151"]).status.code(), Some(1));
    assert_eq!(run(&["lengths", "--n-max", "2", "--q", "9"]).status.code(), Some(1));
    assert_eq!(run(&["oscillator", "--n-max", "1", "--lambda", "-2"]).status.code(), Some(1));
    assert_eq!(run(&["asymptotics", "--q", "2"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["bounds", "--n-max", "1"]).status.code(), Some(0));
}

#[test]
fn writes_to_file() {
    let dir = std::env::temp_dir().join(format!("hermite-spread-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bounds.csv");
    let out = run(&["bounds", "--n-max", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 5);
    std::fs::remove_dir_all(dir).unwrap();
}
