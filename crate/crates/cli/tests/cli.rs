use std::process::{Command, Output};

fn ionlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ionlink")).args(args).env_remove("IONLINK_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn purify_sweep_is_reproducible() {
    let args = ["purify-sweep", "--eps", "0.05:0.1:0.05", "--trials", "2000", "--seed", "7"];
    let a = stdout(&ionlink(&args));
    assert_eq!(a, stdout(&ionlink(&args)));
    assert!(a.starts_with("# ionlink "));
    assert!(a.contains("--seed 7"));
    let r = rows(&a);
    assert_eq!(r.len(), 6);
    assert_eq!(r[5][0..2], ["0.1", "3"]);
    let inf: f64 = r[5][2].parse().unwrap();
    assert!((inf - 0.006).abs() < 0.0015);
    let other = stdout(&ionlink(&["purify-sweep", "--eps", "0.05:0.1:0.05", "--trials", "2000", "--seed", "8"]));
    assert_ne!(a, other);
}

#[test]
fn header_command_reproduces_output() {
    let a = stdout(&ionlink(&["purify-sweep", "--eps", "0.02", "--levels", "2", "--trials", "500", "--p2", "0"]));
    let line = a.lines().find_map(|l| l.strip_prefix("# command: ionlink ")).unwrap();
    let args: Vec<&str> = line.split(' ').collect();
    assert_eq!(a, stdout(&ionlink(&args)));
}

#[test]
fn zero_noise_sweep_follows_tuple_algebra() {
    let a = stdout(&ionlink(&["purify-sweep", "--eps", "0.01", "--trials", "100", "--p1", "0", "--p2", "0", "--pm", "0", "--no-memory-swap"]));
    let e: f64 = 0.01;
    let want = [2.0 * e / 3.0, 8.0 * e * e / 9.0, 2.0 * e * e / 9.0];
    for (row, w) in rows(&a).iter().zip(want) {
        let got: f64 = row[2].parse().unwrap();
        assert!((got - w).abs() < 5.0 * w * e * 10.0, "{got} vs {w}");
    }
}

#[test]
fn threshold_with_one_trial() {
    let a = stdout(&ionlink(&["threshold", "--level", "1", "--L", "3,4", "--eps", "0.04,0.06", "--trials", "1", "--rounds-per-size", "1", "--quiet"]));
    let r = rows(&a);
    assert_eq!(r.len(), 4);
    for row in &r {
        assert_eq!(row.len(), 6);
        assert_eq!(row[2], "1");
        let stderr: f64 = row[5].parse().unwrap();
        assert_eq!(stderr, 0.0);
    }
    assert!(a.lines().any(|l| l.starts_with("# crossing L 3/4")));
}

#[test]
fn threshold_ignores_thread_count() {
    let base = ["threshold", "--level", "1", "--L", "3,4", "--eps", "0.04:0.06:0.01", "--trials", "30", "--rounds-per-size", "2", "--quiet"];
    let one = stdout(&ionlink(&[&base[..], &["--threads", "1"]].concat()));
    let three = stdout(&ionlink(&[&base[..], &["--threads", "3"]].concat()));
    assert_eq!(one, three);
}

#[test]
fn repeater_rows_and_budget() {
    let a = stdout(&ionlink(&["repeater"]));
    let r = rows(&a);
    let stages: Vec<&str> = r.iter().map(|x| x[0].as_str()).collect();
    assert_eq!(stages, ["i", "ii", "iii", "iv", "v"]);
    let budget = a.lines().find(|l| l.starts_with("# budget")).unwrap();
    let rate: f64 = budget.split(' ').skip_while(|w| *w != "max_cycle_rate_hz").nth(1).unwrap().parse().unwrap();
    assert!((rate - 18e3).abs() < 1.8e3);
    let single = stdout(&ionlink(&["repeater", "--chain", "1"]));
    assert_eq!(rows(&single).len(), 1);
}

#[test]
fn table_dump_is_stable() {
    let ideal = stdout(&ionlink(&["table-dump", "--eps", "0", "--p1", "0", "--p2", "0", "--pm", "0"]));
    assert_eq!(rows(&ideal), vec![vec!["IIII".to_string(), "0".into(), "1.00000000000e0".into()]]);
    let args = ["table-dump", "--level", "1", "--basis", "x"];
    let l1 = stdout(&ionlink(&args));
    assert_eq!(l1, stdout(&ionlink(&args)));
    let mass = |t: &str| -> f64 { t.lines().find(|l| l.starts_with("# error_mass")).unwrap().split(' ').nth(2).unwrap().parse().unwrap() };
    let l3 = stdout(&ionlink(&["table-dump", "--level", "3", "--basis", "x"]));
    assert!(mass(&l3) < mass(&l1));
}

#[test]
fn exit_codes() {
    assert_eq!(ionlink(&["purify-sweep", "--bogus"]).status.code(), Some(2));
    assert_eq!(ionlink(&["purify-sweep", "--eps", "0.2:0.1:0.1"]).status.code(), Some(2));
    let bad = ionlink(&["purify-sweep", "--eps", "0.6"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert_eq!(ionlink(&["repeater", "--chain", "5"]).status.code(), Some(2));
    assert_eq!(ionlink(&["threshold", "--L", "4"]).status.code(), Some(2));
    assert_eq!(ionlink(&["--version"]).status.code(), Some(0));
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "seed = 11\n[purify-sweep]\neps = \"0.05\"\nlevels = [1, 2]\ntrials = 300\n").unwrap();
    let p = path.to_str().unwrap();
    let from_file = stdout(&ionlink(&["purify-sweep", "--config", p]));
    assert!(from_file.contains("--levels 1,2 --eps 0.05 --trials 300") && from_file.contains("--seed 11"));
    let overridden = stdout(&ionlink(&["--seed", "12", "purify-sweep", "--config", p, "--trials", "200"]));
    assert!(overridden.contains("--trials 200") && overridden.contains("--seed 12"));
    let out = dir.path().join("out.csv");
    let o = ionlink(&["purify-sweep", "--config", p, "--output", out.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), from_file);
    std::fs::write(&path, "[nonsense]\nx = 1\n").unwrap();
    assert_eq!(ionlink(&["purify-sweep", "--config", p]).status.code(), Some(2));
}

#[test]
fn seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ionlink"))
        .args(["purify-sweep", "--eps", "0.05", "--levels", "1", "--trials", "100"])
        .env("IONLINK_SEED", "99")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("# seed: 99"));
}
