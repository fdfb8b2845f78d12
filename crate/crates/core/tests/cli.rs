use std::process::{Command, Output};

use quatmodp::RepMultiset;

fn quatmodp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatmodp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn reduce_pi_json_round_trips() {
    let o = quatmodp(&["reduce-pi", "--p", "3", "--f", "1", "--ext", "unram", "--level", "2", "--chi", "1:0/1"]);
    assert_eq!(o.status.code(), Some(0));
    let ms: RepMultiset = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(ms.total_dimension(), 6);
    assert_eq!(ms.len(), 2);
    let again = serde_json::to_string_pretty(&ms).unwrap();
    assert_eq!(again.trim(), stdout(&o).trim());
}

#[test]
fn reduce_r_with_twist() {
    let o = quatmodp(&[
        "reduce-r", "--q", "5", "--ext", "unram", "--level", "2", "--chi", "3:1/2", "--twist", "1:0/1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let ms: RepMultiset = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(ms.total_dimension(), 2);
}

#[test]
fn compare_ramified_needs_delta() {
    let base = ["compare", "--q", "3", "--p", "3", "--ext", "ram", "--level", "1", "--chi", "1:1/4"];
    let o = quatmodp(&base);
    assert_eq!(o.status.code(), Some(2));
    let mut args = base.to_vec();
    args.extend(["--delta-ram", "1/4"]);
    let o = quatmodp(&args);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["case_tag"], "3d");
    assert_eq!(v["occurs"], true);
}

#[test]
fn table_is_csv_with_fixed_columns() {
    let o = quatmodp(&["table", "--q", "3", "--sweep", "--max-n", "2", "--max-order", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        headers,
        ["ext", "level", "chi_exp", "chi_w", "case_tag", "r_red", "pi_red", "image", "occurs", "selector", "selector_unique"]
    );
    assert!(rdr.records().count() > 0);
}

#[test]
fn classify_counts_regular_orbits() {
    let o = quatmodp(&["classify", "--p", "3", "--f", "1", "--side", "D"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["two_dim"], 3);
    assert_eq!(v["one_dim"], 2);
}

#[test]
fn correspond_two_dim_and_character() {
    let o = quatmodp(&["correspond", "--q", "3", "--xi", "1:0/1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["to"]["side"], "D");
    let o = quatmodp(&["correspond", "--q", "3", "--phi", "1:0/1", "--format", "pretty"]);
    assert_eq!(stdout(&o).trim(), "(1:0/1)oArt -> (1:0/1)oNrd");
}

#[test]
fn verify_exit_codes() {
    let o = quatmodp(&["verify", "--p", "3", "--f", "1", "--max-n", "2", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(quatmodp(&["bogus"]).status.code(), Some(2));
    assert_eq!(quatmodp(&["reduce-pi", "--q", "6", "--ext", "unram", "--level", "0", "--chi", "1:0/1"]).status.code(), Some(2));
    assert_eq!(quatmodp(&["reduce-pi", "--q", "3", "--ext", "unram", "--level", "0", "--chi", "1-0/1"]).status.code(), Some(2));
    let o = quatmodp(&["reduce-pi", "--q", "3", "--ext", "unram", "--level", "0", "--chi", "0:0/1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not regular"));
}
