use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn hypermds(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermds"))
        .args(args)
        .current_dir(dir)
        .env("HYPERMDS_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn ok(out: &Output) -> String {
    assert!(
        out.status.success(),
        "status {:?}: {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn synth_disk(dir: &Path, n: &str) {
    ok(&hypermds(
        dir,
        &[
            "synth",
            "--kind",
            "hyperbolic",
            "--n",
            n,
            "--seed",
            "3",
            "--out",
            "d.csv",
        ],
    ));
}

#[test]
fn embed_writes_all_outputs_and_reports_seed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth_disk(d, "6");
    let stdout = ok(&hypermds(
        d,
        &[
            "embed",
            "--input",
            "d.csv",
            "--replicates",
            "5",
            "--seed",
            "11",
            "--out-config",
            "c.csv",
            "--out-trace",
            "t.csv",
            "--out-path",
            "p.csv",
        ],
    ));
    assert!(stdout.contains("seed: 11"), "{stdout}");
    assert!(stdout.contains("best error:"), "{stdout}");
    let config = fs::read_to_string(d.join("c.csv")).unwrap();
    assert!(config.starts_with("index,re,im\n"));
    assert_eq!(config.lines().count(), 7);
    assert!(fs::read_to_string(d.join("t.csv"))
        .unwrap()
        .starts_with("t,E,r,g_inf,r_over_rM\n"));
    let summary = fs::read_to_string(d.join("c_replicates.csv")).unwrap();
    assert_eq!(summary.lines().count(), 6);
    assert!(fs::read_to_string(d.join("p.csv"))
        .unwrap()
        .starts_with("t,index,re,im\n0,0,"));
}

#[test]
fn fixed_seed_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth_disk(d, "6");
    let run = |tag: &str| {
        let (c, t) = (format!("c{tag}.csv"), format!("t{tag}.csv"));
        ok(&hypermds(
            d,
            &[
                "embed",
                "--input",
                "d.csv",
                "--replicates",
                "4",
                "--seed",
                "5",
                "--out-config",
                &c,
                "--out-trace",
                &t,
            ],
        ));
        (fs::read(d.join(&c)).unwrap(), fs::read(d.join(&t)).unwrap())
    };
    assert_eq!(run("1"), run("2"));
}

#[test]
fn missing_seed_is_drawn_and_printed() {
    let dir = tempfile::tempdir().unwrap();
    let stdout = ok(&hypermds(
        dir.path(),
        &["synth", "--kind", "euclidean", "--n", "4", "--out", "d.csv"],
    ));
    let seed = stdout.strip_prefix("seed: ").expect("seed line");
    assert!(seed.trim().parse::<u64>().is_ok(), "{stdout}");
}

#[test]
fn sweep_and_curve_plot() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth_disk(d, "5");
    ok(&hypermds(
        d,
        &[
            "sweep",
            "--input",
            "d.csv",
            "--scale-min",
            "0.1",
            "--scale-max",
            "10",
            "--scale-steps",
            "3",
            "--replicates",
            "3",
            "--seed",
            "1",
            "--out",
            "s.csv",
            "--svg",
            "s.svg",
        ],
    ));
    let sweep = fs::read_to_string(d.join("s.csv")).unwrap();
    assert!(sweep.starts_with("scale,best_error,iterations,stop_reason\n"));
    assert_eq!(sweep.lines().count(), 4);
    ok(&hypermds(
        d,
        &["plot", "curve", "--input", "s.csv", "--out", "c.svg"],
    ));
    assert_eq!(
        fs::read(d.join("s.svg")).unwrap(),
        fs::read(d.join("c.svg")).unwrap()
    );
}

#[test]
fn disk_plot_draws_trajectories() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth_disk(d, "4");
    ok(&hypermds(
        d,
        &[
            "embed",
            "--input",
            "d.csv",
            "--replicates",
            "2",
            "--seed",
            "2",
            "--out-config",
            "c.csv",
            "--out-trace",
            "t.csv",
            "--out-path",
            "p.csv",
        ],
    ));
    ok(&hypermds(
        d,
        &["plot", "disk", "--input", "p.csv", "--out", "p.svg"],
    ));
    ok(&hypermds(
        d,
        &["plot", "disk", "--input", "c.csv", "--out", "c.svg"],
    ));
    let traj = fs::read_to_string(d.join("p.svg")).unwrap();
    assert_eq!(traj.matches("<polyline").count(), 4);
    let fin = fs::read_to_string(d.join("c.svg")).unwrap();
    assert_eq!(fin.matches("<polyline").count(), 0);
    assert_eq!(fin.matches(r#"r="4" fill="black""#).count(), 4);
}

#[test]
fn compare_report_has_fixed_columns() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth_disk(d, "6");
    ok(&hypermds(
        d,
        &[
            "compare",
            "--input",
            "d.csv",
            "--scale-min",
            "0.5",
            "--scale-max",
            "2",
            "--scale-steps",
            "2",
            "--replicates",
            "3",
            "--seed",
            "4",
            "--out",
            "r.csv",
        ],
    ));
    let report = fs::read_to_string(d.join("r.csv")).unwrap();
    let mut lines = report.lines();
    assert_eq!(
        lines.next(),
        Some("pd_best_scale,pd_best_error,euclid_best_error,ratio")
    );
    let v: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    assert!((v[2] / v[1] - v[3]).abs() <= 1e-12 * v[3]);
}

#[test]
fn graph_keeps_largest_component_with_mapping() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("e.txt"), "# edges\n10 20\n20 30\n7 8\n").unwrap();
    let failed = hypermds(
        d,
        &[
            "graph",
            "--edges",
            "e.txt",
            "--mode",
            "shortest-path",
            "--out",
            "g.csv",
        ],
    );
    assert_eq!(failed.status.code(), Some(2));
    ok(&hypermds(
        d,
        &[
            "graph",
            "--edges",
            "e.txt",
            "--mode",
            "shortest-path",
            "--largest-component",
            "--out",
            "g.csv",
            "--out-mapping",
            "m.csv",
        ],
    ));
    assert_eq!(
        fs::read_to_string(d.join("g.csv")).unwrap(),
        "0,1,2\n1,0,1\n2,1,0\n"
    );
    assert_eq!(
        fs::read_to_string(d.join("m.csv")).unwrap(),
        "index,node_id\n0,10\n1,20\n2,30\n"
    );
}

#[test]
fn features_build_euclidean_distances() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("f.csv"), "x,y\n0,0\n3,4\n").unwrap();
    ok(&hypermds(
        d,
        &["features", "--input", "f.csv", "--out", "m.csv"],
    ));
    assert_eq!(fs::read_to_string(d.join("m.csv")).unwrap(), "0,5\n5,0\n");
}

#[test]
fn usage_and_validation_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth_disk(d, "4");
    fs::write(d.join("bad.csv"), "0,1\n1,zz\n").unwrap();
    let cases: [&[&str]; 5] = [
        &["no-such-command"],
        &[
            "embed",
            "--input",
            "missing.csv",
            "--out-config",
            "c.csv",
            "--out-trace",
            "t.csv",
        ],
        &[
            "embed",
            "--input",
            "bad.csv",
            "--out-config",
            "c.csv",
            "--out-trace",
            "t.csv",
        ],
        &[
            "embed",
            "--input",
            "d.csv",
            "--scale",
            "-1",
            "--out-config",
            "c.csv",
            "--out-trace",
            "t.csv",
        ],
        &[
            "embed",
            "--input",
            "d.csv",
            "--p",
            "2",
            "--out-config",
            "c.csv",
            "--out-trace",
            "t.csv",
        ],
    ];
    for args in cases {
        let out = hypermds(d, args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let bad = hypermds(
        d,
        &[
            "embed",
            "--input",
            "bad.csv",
            "--out-config",
            "c.csv",
            "--out-trace",
            "t.csv",
        ],
    );
    assert!(String::from_utf8_lossy(&bad.stderr).contains("column 2"));
}

#[test]
fn thread_count_must_be_positive() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hypermds"))
        .args([
            "synth",
            "--kind",
            "spherical",
            "--n",
            "3",
            "--seed",
            "1",
            "--out",
            "d.csv",
        ])
        .current_dir(dir.path())
        .env("HYPERMDS_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("HYPERMDS_THREADS"));
}
