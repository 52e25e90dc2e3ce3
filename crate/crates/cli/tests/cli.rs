use std::fs;
use std::process::{Command, Output};

use matchamg::mmio::write_matrix_market;
use matchamg::problems::poisson_2d;
use matchamg::CsrMatrix;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matchamg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const SOLVE_COLUMNS: [&str; 13] = [
    "problem", "n", "nnz", "cycle", "tbuild_ms", "it", "tsolve_ms", "relres", "converged", "nl", "vcmplx",
    "cratio", "threads",
];

fn csv_solve(args: &[&str]) -> csv::StringRecord {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), SOLVE_COLUMNS);
    let rows: Vec<_> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    rows[0].clone()
}

#[test]
fn table_report_has_solver_columns() {
    let o = run(&["solve", "--gen", "ani:64,64,0.001,0", "--cycle", "v"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    for col in ["tbuild(ms)", "it", "tsolve(ms)", "relres", "Vcmplx", "cratio", "nl="] {
        assert!(s.contains(col), "missing {col} in\n{s}");
    }
}

#[test]
fn w_cycle_needs_no_more_iterations_than_v() {
    let v = csv_solve(&["solve", "--gen", "ani:128,128,0.001,0", "--cycle", "v", "--out", "csv"]);
    let w = csv_solve(&["solve", "--gen", "ani:128,128,0.001,0", "--cycle", "w", "--out", "csv"]);
    let it = |r: &csv::StringRecord| r[5].parse::<usize>().unwrap();
    assert_eq!(&v[8], "true");
    assert_eq!(&w[8], "true");
    assert!(it(&w) <= it(&v));
    assert!(v[7].parse::<f64>().unwrap() <= 1e-6);
}

#[test]
fn json_report_round_trips() {
    let o = run(&["solve", "--gen", "randk:10,10,10,1.5", "--seed", "4", "--out", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let obj = v.as_object().unwrap();
    for col in SOLVE_COLUMNS {
        assert!(obj.contains_key(col), "missing {col}");
    }
    let it = obj["it"].as_u64().unwrap() as usize;
    assert_eq!(obj["residual_history"].as_array().unwrap().len(), it + 1);
    assert_eq!(obj["level_sizes"].as_array().unwrap().len() as u64, obj["nl"].as_u64().unwrap());
    let again = serde_json::to_string(&v).unwrap();
    assert_eq!(serde_json::from_str::<serde_json::Value>(&again).unwrap(), v);
}

#[test]
fn matrix_file_and_history_output() {
    let dir = tempfile::tempdir().unwrap();
    let mtx = dir.path().join("p.mtx");
    write_matrix_market(&poisson_2d(20, 20), &mtx).unwrap();
    let hist = dir.path().join("h.csv");
    let sol = dir.path().join("u.txt");
    let row = csv_solve(&[
        "solve",
        "--matrix",
        mtx.to_str().unwrap(),
        "--out",
        "csv",
        "--history",
        hist.to_str().unwrap(),
        "--save",
        sol.to_str().unwrap(),
        "--agg",
        "pair",
        "--coarse-factor",
        "5",
    ]);
    assert_eq!(&row[1], "400");
    let it: usize = row[5].parse().unwrap();
    let h = fs::read_to_string(&hist).unwrap();
    assert_eq!(h.lines().count(), it + 2);
    assert!(h.starts_with("iteration,residual,relres"));
    assert_eq!(fs::read_to_string(&sol).unwrap().lines().count(), 400);
}

#[test]
fn smooth_vector_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    fs::write(&w, vec!["1.0"; 36].join("\n")).unwrap();
    let row = csv_solve(&["solve", "--gen", "poisson2d:6,6", "--wvec", w.to_str().unwrap(), "--out", "csv"]);
    assert_eq!(&row[8], "true");

    fs::write(&w, "1 2 3").unwrap();
    let o = run(&["solve", "--gen", "poisson2d:6,6", "--wvec", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn missing_matrix_is_an_io_error() {
    let o = run(&["solve", "--matrix", "missing.mtx"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("missing.mtx"));
}

#[test]
fn iteration_cap_reports_non_convergence() {
    let o = run(&["solve", "--gen", "ani:64,64,0.001,pi/8", "--itmax", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn indefinite_matrix_reports_breakdown() {
    let dir = tempfile::tempdir().unwrap();
    let mtx = dir.path().join("indef.mtx");
    write_matrix_market(&CsrMatrix::diag(&[1.0, -1.0]), &mtx).unwrap();
    let o = run(&["solve", "--matrix", mtx.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn configuration_errors_exit_with_input_code() {
    for args in [
        vec!["solve"],
        vec!["solve", "--gen", "ani:4,4"],
        vec!["solve", "--gen", "poisson2d:4,4", "--cycle", "x"],
        vec!["solve", "--gen", "poisson2d:4,4", "--coarsest-sweeps", "0"],
        vec!["solve", "--gen", "poisson2d:4,4", "--rtol", "-1"],
        vec!["solve", "--gen", "poisson2d:4,4", "--matrix", "a.mtx"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(4), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn bench_emits_one_row_per_policy() {
    let o = run(&["bench", "--gen", "ani:48,48,0.001,pi/8", "--reps", "3", "--out", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        r.headers().unwrap().iter().collect::<Vec<_>>(),
        ["kernel", "variant", "group_size", "rows", "nnz", "reps", "median_ms", "min_ms", "max_rel_dev"]
    );
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    let spmv: Vec<&csv::StringRecord> = rows.iter().filter(|r| &r[0] == "spmv").collect();
    let groups: Vec<&str> = spmv.iter().filter(|r| r[1].starts_with("group_")).map(|r| &r[2]).collect();
    assert_eq!(groups, ["1", "2", "4", "8", "16", "32"]);
    let auto = spmv.iter().find(|r| &r[1] == "auto").unwrap();
    // 9-point stencil rows average just under 9 entries
    assert_eq!(&auto[2], "16");

    let p_auto = rows
        .iter()
        .find(|r| &r[0] == "spmv_prolongator" && &r[1] == "auto")
        .unwrap();
    assert_eq!(&p_auto[2], "1");

    for r in &rows {
        let dev: f64 = r[8].parse().unwrap();
        let limit = if r[0].starts_with("pcg_") { 1e-14 } else { 1e-13 };
        assert!(dev <= limit, "{r:?}");
        assert!(r[6].parse::<f64>().unwrap() >= 0.0);
    }
    assert!(rows.iter().any(|r| &r[0] == "pcg_dots" && &r[1] == "fused"));
    assert!(rows.iter().any(|r| &r[0] == "pcg_updates" && &r[1] == "fused"));
}

#[test]
fn bench_is_deterministic_apart_from_timings() {
    let args = ["bench", "--gen", "randk:6,6,6,1", "--seed", "9", "--reps", "1", "--out", "json"];
    let strip = |o: Output| -> Vec<serde_json::Value> {
        let mut v: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
        for row in &mut v {
            let m = row.as_object_mut().unwrap();
            m.remove("median_ms");
            m.remove("min_ms");
        }
        v
    };
    assert_eq!(strip(run(&args)), strip(run(&args)));
}
