use std::process::{Command, Output};

fn polymix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polymix")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn json_report_has_the_documented_fields() {
    let o = polymix(&["report", "{3,5}*{5,3}", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for key in ["\"expression\"", "\"type\"", "\"faces\"", "\"polytopal\"", "\"rule\"", "\"oracle\""] {
        assert!(out.contains(key), "{key} missing from {out}");
    }
    assert!(out.contains("\"{15,15}\""));
}

#[test]
fn csv_report_has_header_and_row() {
    let o = polymix(&["report", "{3,3}*{3,4}", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "leaves,f0,f1,f2,g,polytopal\n\"{3,3}*{3,4}\",24,144,96,576,Y\n");
}

#[test]
fn parse_errors_exit_with_three() {
    for bad in ["{3,3", "{3,3}*{3,3,3}", "{3,7}", "Q4"] {
        let o = polymix(&["report", bad]);
        assert_eq!(o.status.code(), Some(3), "{bad}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn non_polytope_is_reported_with_exit_zero() {
    let o = polymix(&["report", "{3,3,4}*{4,3,3}", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("| N |"));
}

#[test]
fn budget_exhaustion_exits_with_two() {
    let o = polymix(&["--budget-cosets", "10", "report", "{3,5}*{5,3}"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_verification_matches() {
    let o = polymix(&["verify", "polyhedra"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("26/26 rows match"));
    let o = polymix(&["verify", "rankn", "--max-n", "5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn comix_prints_the_size_identity() {
    let o = polymix(&["comix", "{3,5}", "{5,3}"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("size identity: holds"));
}
