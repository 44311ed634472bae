use std::path::Path;
use std::process::{Command, Output};

use qlem_cli::csv::{parse_fit_csv, parse_table, Table, CURVE_HEADER, SWEEP_HEADER, TRACE_HEADER};
use qlem_core::deutsch::MachineConfig;
use qlem_core::lab::{fit_exponential_survival, run_ensemble, survival_curve};

fn qlem(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlem"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("spawn qlem")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn deutsch_check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = qlem(&["deutsch-check"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS")).count(), 4);
}

#[test]
fn validation_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["mc", "--trials", "0"],
        vec!["mc", "--memory", "0"],
        vec!["mc", "--no-such-flag"],
        vec!["frobnicate"],
        vec!["sweep", "--n-list", "40,20"],
        vec!["mc", "--memory", "50", "--max-iterations", "10"],
    ] {
        let out = qlem(&args, dir.path());
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(qlem(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn mc_output_is_reproducible_and_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["mc", "--trials", "10", "--memory", "5", "--seed", "7"];
    for (name, threads) in [("a.csv", "1"), ("b.csv", "1"), ("c.csv", "4")] {
        let mut args = base.to_vec();
        args.extend(["--threads", threads, "--out", name]);
        assert_eq!(qlem(&args, dir.path()).status.code(), Some(0));
    }
    let a = read(&dir.path().join("a.csv"));
    assert_eq!(a, read(&dir.path().join("b.csv")));
    assert_eq!(a, read(&dir.path().join("c.csv")));
    assert!(a.starts_with(CURVE_HEADER));

    let Table::Curve(curve) = parse_table(&a).unwrap() else {
        panic!("expected curve table");
    };
    let ns: Vec<u64> = curve.iter().map(|p| p.n).collect();
    assert_eq!(ns, (1..=ns.len() as u64).collect::<Vec<_>>());
}

#[test]
fn mc_without_halts_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = qlem(
        &[
            "mc", "--trials", "3", "--memory", "40", "--max-iterations", "40", "--out", "c.csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(read(&dir.path().join("c.csv")), format!("{CURVE_HEADER}\n"));
}

#[test]
fn analyze_reproduces_in_process_fit() {
    let dir = tempfile::tempdir().unwrap();
    let out = qlem(
        &["mc", "--trials", "150", "--memory", "6", "--seed", "3", "--out", "curve.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let out = qlem(&["analyze", "--input", "curve.csv", "--out", "fit.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let fits = parse_fit_csv(&read(&dir.path().join("fit.csv"))).unwrap();

    let cfg = MachineConfig::default().with_memory_size(6);
    let ens = run_ensemble(&cfg, 150, 3, 0).unwrap();
    let direct = fit_exponential_survival(&survival_curve(&ens)).unwrap();
    assert_eq!(fits.len(), 1);
    assert!(((fits[0].param1 - direct.param1) / direct.param1).abs() < 1e-9);
    assert_eq!(fits[0].points_used, direct.points_used);
}

#[test]
fn sweep_and_power_law_analysis() {
    let dir = tempfile::tempdir().unwrap();
    let out = qlem(
        &[
            "sweep", "--n-list", "2,3,4,6", "--trials", "120", "--seed", "9", "--out", "s.csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = read(&dir.path().join("s.csv"));
    assert!(text.starts_with(SWEEP_HEADER));
    let Table::Sweep(rows) = parse_table(&text).unwrap() else {
        panic!("expected sweep table");
    };
    assert_eq!(rows.iter().map(|r| r.0).collect::<Vec<_>>(), vec![2, 3, 4, 6]);

    let out = qlem(&["analyze", "--input", "s.csv", "--out", "f.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let fit = parse_fit_csv(&read(&dir.path().join("f.csv"))).unwrap()[0];
    assert_eq!(fit.kind.name(), "power_law");
    assert!(fit.param2 > 0.0);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("qlem.conf"),
        "# small run\nmemory_size = 4\ntrials = 5\nmaster_seed = 11\nout_path = from_file.csv\n",
    )
    .unwrap();
    let out = qlem(&["mc", "--config", "qlem.conf"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let from_file = read(&dir.path().join("from_file.csv"));

    let out = qlem(
        &["mc", "--config", "qlem.conf", "--out", "flag.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(read(&dir.path().join("flag.csv")), from_file);

    let out = qlem(
        &["mc", "--trials", "5", "--memory", "4", "--seed", "11", "--out", "flags_only.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(read(&dir.path().join("flags_only.csv")), from_file);
}

#[test]
fn run_writes_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = qlem(
        &["run", "--memory", "5", "--seed", "2", "--trace", "--out", "t.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = read(&dir.path().join("t.csv"));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(TRACE_HEADER));
    let rows: Vec<Vec<u64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r[0], i as u64 + 1);
        assert_eq!(r[3], u64::from(r[2] == u64::from(r[1] == 1 || r[1] == 2)));
        assert_eq!(r[4] + r[5], r[6]);
    }
    let last = rows.last().unwrap();
    assert_eq!((last[4], last[5], last[7]), (0, 5, 1));
}

#[test]
fn missing_input_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = qlem(&["analyze", "--input", "nope.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
