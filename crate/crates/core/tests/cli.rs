use std::process::{Command, Output};

fn bdpim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdpim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bounds_writes_one_row_per_snr() {
    let o = bdpim(&[
        "bounds",
        "--scheme",
        "dpim",
        "--detector",
        "osd",
        "--snr-start",
        "10",
        "--snr-stop",
        "14",
        "--snr-step",
        "2",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("snr_db,scheme,detector,coded,ber_sim"));
    for row in &lines[1..] {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f.len(), 11);
        assert!(f[4].is_empty(), "no simulation in bounds mode");
        assert!(f[7].parse::<f64>().unwrap() <= 0.5);
        assert!(f[8].parse::<f64>().is_ok());
    }
}

#[test]
fn simulate_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let o = bdpim(&[
        "simulate",
        "--scheme",
        "bdpim",
        "--AL",
        "0.86",
        "--packets",
        "200",
        "--snr-start",
        "14",
        "--snr-stop",
        "14",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[1..4], &["bdpim", "bdpim-osd", "false"]);
    assert_eq!(row[9], "200");
    let ber: f64 = row[4].parse().unwrap();
    assert!((0.0..=0.5).contains(&ber));
}

#[test]
fn configuration_errors_exit_with_two() {
    for args in [
        &["simulate", "--scheme", "qam"][..],
        &["simulate", "--scheme", "dhpim"],
        &["simulate", "--scheme", "ppm", "--detector", "mlsd"],
        &["simulate", "--scheme", "bdpim", "--K", "7"],
        &["simulate", "--AL", "1.5", "--scheme", "bdpim"],
        &["bounds", "--channel", "gg:0,1"],
        &["sweep", "fig3"],
    ] {
        let o = bdpim(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn oversized_mlsd_exits_with_three() {
    let o = bdpim(&[
        "simulate",
        "--detector",
        "mlsd",
        "--packets",
        "1",
        "--snr-start",
        "10",
        "--snr-stop",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn optimize_reports_the_barrier() {
    let o = bdpim(&["optimize", "--scheme", "bdpim", "--K", "10", "--snr", "17"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let (low, high): (f64, f64) = (row[3].parse().unwrap(), row[4].parse().unwrap());
    assert!(low > 0.8 && low < 0.95, "{low}");
    assert!((9.0 * low + high - 10.0).abs() < 1e-9);
}

#[test]
fn same_seed_same_bytes() {
    let args = [
        "simulate",
        "--scheme",
        "dpim",
        "--detector",
        "otd",
        "--packets",
        "500",
        "--seed",
        "9",
    ];
    let a = bdpim(&[&args[..], &["--workers", "1"]].concat());
    let b = bdpim(&[&args[..], &["--workers", "4"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = bdpim(&[&args[..6], &["--seed", "10"]].concat());
    assert_ne!(a.stdout, c.stdout);
}
