use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fermat-osc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn fermat-osc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data_rows(path: &Path) -> Vec<Vec<f64>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect()
}

#[test]
fn ft_point_isosceles_shorthand() {
    let o = run(&["ft-point"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("case:       floating"), "{text}");
    assert!(text.contains("|A1O|:      1.9746542182"), "{text}");
}

#[test]
fn ft_point_absorbed_and_degenerate() {
    let o = run(&[
        "ft-point",
        "--vertices",
        "0,0,1,0,0.3,0.9",
        "--weights",
        "10,1,1",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("absorbed at A1"));

    let o = run(&["ft-point", "--vertices", "0,0,1,1,2,2"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("collinear"));
}

#[test]
fn simulate_writes_deterministic_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = run(&["simulate", "--t-max", "12", "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for name in ["trajectory.csv", "events.csv"] {
        assert_eq!(
            std::fs::read(a.join(name)).unwrap(),
            std::fs::read(b.join(name)).unwrap()
        );
    }
    let text = std::fs::read_to_string(a.join("trajectory.csv")).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with('#'));
    assert_eq!(lines.next().unwrap(), "t,x,xdot,phi,energy");
    assert_eq!(lines.next().unwrap(), "0.00000000000000e0,0.00000000000000e0,0.00000000000000e0,6.98131700797732e-1,0.00000000000000e0");
    assert_eq!(data_rows(&a.join("trajectory.csv")).len(), 12_001);

    let events = std::fs::read_to_string(a.join("events.csv")).unwrap();
    let kinds: Vec<&str> = events
        .lines()
        .skip(2)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(kinds, ["crossing+", "turn", "crossing-", "turn"]);
}

#[test]
fn simulate_short_run_and_regime_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "simulate",
        "--t-max",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(data_rows(&dir.path().join("events.csv")).is_empty());

    let o = run(&[
        "simulate",
        "--w2",
        "0.4",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("absorbed"));
}

#[test]
fn analyze_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert!(run(&["simulate", "--out", out]).status.success());
    let o = run(&[
        "analyze",
        dir.path().join("trajectory.csv").to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stderr.is_empty());
    let fit = &data_rows(&dir.path().join("fit.csv"))[0];
    let (d, amp, omega) = (fit[0], fit[1], fit[2]);
    assert!((d - 1.77363).abs() / 1.77363 < 0.01);
    assert!((amp - 1.77363).abs() / 1.77363 < 0.01);
    assert!((omega - 0.61133).abs() / 0.61133 < 0.02);
    let dev = data_rows(&dir.path().join("deviation.csv"));
    assert_eq!(dev.len(), 30_001);
    assert!(dev.iter().any(|r| r[1] != 0.0));
}

#[test]
fn analyze_recovers_synthetic_sinusoid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sine.csv");
    let (d, a, w, t0) = (0.5, 2.0, 1.3, 0.4);
    let mut text = String::from("t,x,xdot,phi,energy\n");
    for i in 0..=2000 {
        let t = i as f64 * 0.01;
        let th = w * (t - t0);
        text += &format!(
            "{t:.14e},{:.14e},{:.14e},0,0\n",
            d + a * th.sin(),
            a * w * th.cos()
        );
    }
    std::fs::write(&path, text).unwrap();
    let o = run(&[
        "analyze",
        path.to_str().unwrap(),
        "--out",
        dir.path().join("fit").to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let fit = &data_rows(&dir.path().join("fit/fit.csv"))[0];
    for (got, want) in fit.iter().zip([d, a, w, t0]) {
        assert!((got - want).abs() < 1e-8, "{got} vs {want}");
    }
    assert!(fit[4] < 1e-10);
}

#[test]
fn analyze_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let o = run(&["analyze", empty.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("empty"));

    let bad = dir.path().join("bad.csv");
    std::fs::write(
        &bad,
        "# units\nt,x,xdot,phi,energy\n0,0,0,0,0\n0.1,oops,0,0,0\n",
    )
    .unwrap();
    let o = run(&["analyze", bad.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("line 4"),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn reproduce_example1_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["reproduce-example1", "--out", dir.path().to_str().unwrap()]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(!text.contains("FAIL"));
    assert!(text.contains("60.000000"));
    assert!(dir.path().join("deviation.csv").exists());
}

#[test]
fn reproduce_example1_reports_coarse_step() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "reproduce-example1",
        "--dt",
        "0.5",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(!o.status.success());
    let text = stdout(&o);
    let drift = text
        .lines()
        .find(|l| l.starts_with("max energy drift"))
        .unwrap();
    assert!(drift.ends_with("FAIL"), "{drift}");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("res");
    std::fs::write(
        &cfg,
        format!(
            "# sweep point\nw2 = 1.5\nt_max = 2\nout = {}\n",
            out.display()
        ),
    )
    .unwrap();
    let o = run(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--t-max",
        "3",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = data_rows(&out.join("trajectory.csv"));
    assert_eq!(rows.len(), 3001);
    // w2 = 1.5 from the file: release force 3 cos 40° − 1
    let first = &rows[1];
    let expected = 0.5 * (3.0 * 40f64.to_radians().cos() - 1.0) * 1e-6;
    assert!((first[1] - expected).abs() < 1e-12);
}
