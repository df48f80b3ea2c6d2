use std::process::{Command, Output};

use disklattice::commands::AnalyzeReport;
use disklattice::format::SweepJson;
use disklattice_core::geometry::{reduce_basis, LatticeBasis, Vec2};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_disklattice"))
        .args(args)
        .env_remove("DISKLATTICE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(csv: &str, name: &str) -> String {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == name).unwrap();
    row[i].to_string()
}

#[test]
fn analyze_hexagonal_and_square() {
    let o = run(&["analyze", "--t", "1", "--gamma-deg", "60"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(field(&s, "probability"), "0.92820323");
    assert_eq!(field(&s, "case"), "3");
    assert_eq!(field(&s, "rho_eq"), "0.51763809");

    let sq = stdout(&run(&["analyze", "--t", "1", "--gamma-deg", "90"]));
    assert_eq!(field(&sq, "probability"), "0.828427125");
    assert_eq!(field(&sq, "case"), "2");
    let reduced = stdout(&run(&["analyze", "--a", "1,0", "--b", "5,1"]));
    assert_eq!(sq, reduced);
}

#[test]
fn analyze_json_round_trips_the_reduced_basis() {
    let o = run(&[
        "analyze", "--a", "0.3,1.7", "--b", "-2.1,0.4", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: AnalyzeReport = serde_json::from_slice(&o.stdout).unwrap();
    let want = reduce_basis(&LatticeBasis::new(Vec2::new(0.3, 1.7), Vec2::new(-2.1, 0.4)).unwrap())
        .unwrap();
    for (got, w) in [
        (r.a_x, want.a().x),
        (r.a_y, want.a().y),
        (r.b_x, want.b().x),
        (r.b_y, want.b().y),
    ] {
        assert!((got - w).abs() < 1e-12);
    }
    let again =
        reduce_basis(&LatticeBasis::new(Vec2::new(r.a_x, r.a_y), Vec2::new(r.b_x, r.b_y)).unwrap())
            .unwrap();
    assert_eq!((again.a(), again.b()), (want.a(), want.b()));
    assert_eq!(r.voronoi_vertices.len(), 6);
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["analyze"][..],
        &["analyze", "--t", "1"],
        &["analyze", "--t", "1.5", "--gamma-deg", "60"],
        &["analyze", "--t", "1", "--gamma-deg", "30"],
        &["analyze", "--a", "1,0", "--b", "2,0"],
        &[
            "analyze",
            "--t",
            "1",
            "--gamma-deg",
            "60",
            "--a",
            "1,0",
            "--b",
            "0,1",
        ],
        &["sweep", "--grid", "1"],
        &["verify", "--t", "1", "--gamma-deg", "60", "--rho", "0.9"],
        &["optimize", "--seed", "0xnope"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_3() {
    let o = run(&["sweep", "--grid", "3", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn sweep_csv_is_deterministic_and_has_the_fixed_header() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.csv");
    let p2 = dir.path().join("b.csv");
    for p in [&p1, &p2] {
        let o = run(&["sweep", "--grid", "21", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let a = std::fs::read(&p1).unwrap();
    assert_eq!(a, std::fs::read(&p2).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("t,gamma_rad,rho_eq,phi1,phi2,phi3,case,area,probability\n"));
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().count(), 1 + 21 * 21);
}

#[test]
fn sweep_grid_two_has_the_square_corner() {
    let s = stdout(&run(&["sweep", "--grid", "2"]));
    assert_eq!(s.lines().count(), 5);
    assert!(
        s.lines()
            .any(|l| l
                == "1,1.57079633,0.5411961,0.785398163,0.785398163,0,2,0.828427125,0.828427125")
    );
}

#[test]
fn sweep_json_parses() {
    let o = run(&["sweep", "--grid", "5", "--format", "json"]);
    let rows: Vec<SweepJson> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.len(), 25);
    assert!(rows.iter().all(|r| (1..=3).contains(&r.case)));
}

#[test]
fn optimize_reports_the_hexagonal_lattice() {
    let s = stdout(&run(&["optimize"]));
    let line = s.lines().find(|l| l.starts_with("optimum")).unwrap();
    assert!(line.contains("t=1.000000"), "{line}");
    assert!(line.contains("gamma=60.000000 deg"), "{line}");
    assert!(line.contains("P=0.928203"), "{line}");
    for (restrict, p) in [
        ("case1", "P=0.755929"),
        ("case2", "P=0.910180"),
        ("rectangular", "P=0.828427"),
    ] {
        let s = stdout(&run(&["optimize", "--restrict", restrict]));
        let line = s.lines().find(|l| l.starts_with("optimum")).unwrap();
        assert!(line.contains(p), "{restrict}: {line}");
    }
}

#[test]
fn verify_passes_at_known_radii() {
    for args in [
        &["verify", "--t", "1", "--gamma-deg", "60"][..],
        &["verify", "--t", "1", "--gamma-deg", "60", "--rho", "0.5"],
        &[
            "verify",
            "--t",
            "1",
            "--gamma-deg",
            "90",
            "--rho",
            "0.5411961",
        ],
        &[
            "verify",
            "--t",
            "1",
            "--gamma-deg",
            "60",
            "--rho",
            "0.3",
            "--samples",
            "200000",
        ],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).trim_end().ends_with("PASS"));
    }
}

#[test]
fn verify_fails_on_a_degenerate_sample() {
    // one sample gives an estimate of 0 or 1 with zero standard error
    let o = run(&["verify", "--t", "1", "--gamma-deg", "60", "--samples", "1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("FAIL"));
}

#[test]
fn seed_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"t": 1, "gamma_deg": 60, "seed": "0x10", "samples": 1000}"#,
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let seed_of = |out: &Output| {
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v["seed"].as_u64().unwrap()
    };
    let base = ["verify", "--config", cfg, "--format", "json"];
    let with_env = |extra: &[&str], env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_disklattice"));
        c.args(base).args(extra).env_remove("DISKLATTICE_SEED");
        if let Some(e) = env {
            c.env("DISKLATTICE_SEED", e);
        }
        c.output().unwrap()
    };
    assert_eq!(seed_of(&with_env(&[], Some("99"))), 16);
    assert_eq!(seed_of(&with_env(&["--seed", "5"], Some("99"))), 5);

    let no_seed = dir.path().join("plain.json");
    std::fs::write(&no_seed, r#"{"t": 1, "gamma_deg": 60, "samples": 1000}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_disklattice"))
        .args([
            "verify",
            "--config",
            no_seed.to_str().unwrap(),
            "--format",
            "json",
        ])
        .env("DISKLATTICE_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(seed_of(&out), 99);
    let out = run(&[
        "verify",
        "--config",
        no_seed.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(seed_of(&out), 0x5EED);
}

#[test]
fn profile_spans_the_radius_range() {
    let s = stdout(&run(&[
        "profile",
        "--t",
        "1",
        "--gamma-deg",
        "60",
        "--grid",
        "11",
    ]));
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("rho,area,probability"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0][0], 0.5);
    assert_eq!(rows[10][0], 0.577350269);
}
