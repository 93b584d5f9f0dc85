use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_varkernel")).args(args).output().expect("binary runs")
}

fn body(text: &str) -> Vec<String> {
    text.lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect()
}

fn column(rows: &[String], name: &str) -> Vec<String> {
    let idx = rows[0].split(',').position(|c| c == name).expect("column");
    rows[1..].iter().map(|r| r.split(',').nth(idx).unwrap().to_string()).collect()
}

fn stdout(args: &[&str]) -> Vec<String> {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    body(&String::from_utf8(out.stdout).unwrap())
}

#[test]
fn hilbert_examples() {
    let trig = stdout(&["hilbert", "--variety", "trig:d=100", "--n-max", "5", "--verify", "none"]);
    assert_eq!(column(&trig, "hf_closed")[1..], ["101", "201", "301", "401", "501"]);
    let so3 = stdout(&["hilbert", "--variety", "so3", "--n-max", "2"]);
    assert_eq!(column(&so3, "hf_closed"), ["1", "10", "35"]);
    assert_eq!(column(&so3, "hf_rank"), ["1", "10", "35"]);
    let full = stdout(&["hilbert", "--variety", "full:d=2", "--n-max", "2"]);
    assert_eq!(column(&full, "hf_closed"), ["1", "3", "6"]);
    assert_eq!(column(&full, "hf_monomials"), ["1", "3", "6"]);
}

#[test]
fn fig3_rows() {
    let rows = stdout(&["fig3", "--n-max", "8"]);
    assert!(rows.contains(&"so3,2,35,55".to_string()));
    assert!(rows.contains(&"trig:d=100,1,101,101".to_string()));
    assert_eq!(column(&rows, "hf")[8], "801");
}

#[test]
fn header_records_version_flags_and_seed() {
    let out = run(&["--seed", "7", "fig3", "--n-max", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let head: Vec<&str> = text.lines().take(3).collect();
    assert!(head[0].starts_with("# varkernel "));
    assert_eq!(head[1], "# flags: --seed 7 fig3 --n-max 1");
    assert_eq!(head[2], "# seed: 7");
}

#[test]
fn files_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = ["rff-bench", "--variety", "sparse:d=16,k=1", "--ranks", "8,32", "--pairs", "3000", "--seed", "5"];
    for (p, threads) in [(&a, "1"), (&b, "2")] {
        let mut full = args.to_vec();
        full.extend(["--threads", threads, "--out", p.to_str().unwrap()]);
        assert!(run(&full).status.success());
    }
    let (ta, tb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(body(&ta), body(&tb));
}

#[test]
fn approx_is_reproducible_up_to_timing() {
    let args = ["approx", "--variety", "sphere:d=3", "--method", "cheb", "--eps", "1e-4", "--audit-pairs", "2000", "--seed", "3"];
    let mask = |rows: Vec<String>| -> Vec<String> {
        rows.iter().map(|r| r.rsplit_once(',').map_or(r.clone(), |(head, _)| head.to_string())).collect()
    };
    let first = stdout(&args);
    assert_eq!(mask(first.clone()), mask(stdout(&args)));
    let err: f64 = column(&first, "measured_sup_error")[0].parse().unwrap();
    assert!(err <= 1e-4);
}

#[test]
fn fekete_row() {
    let rows = stdout(&["fekete", "--variety", "sphere:d=3", "--n", "2", "--a", "4", "--sup-sample", "5000"]);
    assert_eq!(column(&rows, "set_size"), ["81"]);
    let slack: f64 = column(&rows, "empirical_slack")[0].parse().unwrap();
    assert!((1.0..=3.0).contains(&slack));
}

fn assert_rejected(args: &[&str], out: &Path) {
    let mut full = args.to_vec();
    full.extend(["--out", out.to_str().unwrap()]);
    let res = run(&full);
    assert_eq!(res.status.code(), Some(2), "{}", String::from_utf8_lossy(&res.stderr));
    assert!(!out.exists(), "partial output for {args:?}");
}

#[test]
fn bad_flags_exit_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    assert_rejected(&["hilbert", "--variety", "sphere:q=3", "--n-max", "2"], &out);
    assert_rejected(&["hilbert", "--variety", "nonsense", "--n-max", "2"], &out);
    assert_rejected(&["approx", "--variety", "sphere:d=3", "--method", "taylor"], &out);
    assert_rejected(&["approx", "--variety", "sphere:d=3", "--method", "taylor", "--kernel", "cauchy", "--rank", "9"], &out);
    assert_rejected(&["rff-bench", "--variety", "sphere:d=3", "--ranks", "0"], &out);
    assert_rejected(&["rff-bench", "--variety", "sphere:d=3", "--eps", "2"], &out);
    assert_rejected(&["fekete", "--variety", "so3", "--n", "1", "--trials", "10"], &out);
    assert_rejected(&["fig2", "--ks", "4", "--ds", "4"], &out);
    assert_rejected(&["--threads", "0", "fig3"], &out);
}
