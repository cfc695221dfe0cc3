use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const SU2: &str = r#"
[manifold]
family = "sphere"
j = 0.5

[drive]
b = 1.0
b0 = 1.0
omega = -2.0
"#;

const SU11: &str = r#"
[manifold]
family = "pseudosphere"
k = 0.25

[drive]
omega0 = 1.0
kappa = 1.0
omega = -10.0
"#;

const PLANE: &str = r#"
[manifold]
family = "plane"

[drive]
omega0 = 1.0
e = 0.5
omega = 3.0
"#;

fn geophase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geophase")).args(args).output().expect("binary runs")
}

fn scenario(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(dir: &TempDir, command: &str, text: &str, extra: &[&str]) -> (Output, PathBuf) {
    let path = scenario(dir, &format!("{command}.toml"), text);
    let out = dir.path().join(format!("out-{command}-{}", extra.len()));
    let mut args = vec![command, "--scenario", path.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    (geophase(&args), out)
}

fn summary(path: &Path) -> toml::Table {
    toml::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn simulate_su2_resonance() {
    let dir = TempDir::new().unwrap();
    let (o, out) = run(&dir, "simulate", SU2, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = summary(&out.join("summary.txt"));
    let gamma = s["gamma"].as_float().unwrap();
    assert!((gamma.abs() - 0.920151).abs() < 1e-6, "gamma = {gamma}");
    assert_eq!(s["closed"].as_bool(), Some(true));

    let text = fs::read_to_string(out.join("trajectory.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# geophase-schema v1"));
    assert_eq!(lines.next(), Some("t,theta,phi,re_z,im_z,gamma_running,delta_running"));
    assert_eq!(lines.count(), 1025);
}

#[test]
fn output_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let path = scenario(&dir, "s.toml", SU11);
    let mut outputs = Vec::new();
    for tag in ["a", "b"] {
        let out = dir.path().join(tag);
        let o = geophase(&["simulate", "--scenario", path.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let o = geophase(&[
            "sweep",
            "--scenario",
            path.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--sweep",
            "omega=-14:-6:9",
            "--sweep",
            "kappa=0.5:1.5:3",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        outputs.push(
            ["trajectory.csv", "summary.txt", "sweep.csv"].map(|f| fs::read(out.join(f)).unwrap()),
        );
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn degenerate_drive_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let (o, _) = run(&dir, "simulate", &SU2.replace("b0 = 1.0", "b0 = 0.0"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degenerate drive"), "{}", stderr(&o));
}

#[test]
fn zero_duration_gives_one_row() {
    let dir = TempDir::new().unwrap();
    let (o, out) = run(&dir, "simulate", &format!("{SU2}\n[run]\nperiods = 0\n"), &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&out.join("trajectory.csv"));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][5].parse::<f64>().unwrap(), 0.0);
    assert_eq!(rows[1][6].parse::<f64>().unwrap(), 0.0);
    let s = summary(&out.join("summary.txt"));
    assert_eq!(s["gamma"].as_float(), Some(0.0));
    assert_eq!(s["delta"].as_float(), Some(0.0));
}

#[test]
fn unknown_keys_are_named() {
    let dir = TempDir::new().unwrap();
    let (o, _) = run(&dir, "simulate", &format!("{SU2}\n[run]\nperiod = 1\n"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("period"), "{}", stderr(&o));

    let (o, _) = run(&dir, "phase", &SU2.replace("omega = -2.0", "omega = -2.0\nkappa = 3.0"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("drive.kappa"), "{}", stderr(&o));
}

#[test]
fn bad_flags_are_validation_errors() {
    let dir = TempDir::new().unwrap();
    for extra in [
        &["--truncation", "lots"][..],
        &["--tol", "-1"],
        &["--sign-convention", "sideways"],
        &["--sweep", "omega=1:2"],
        &["--sign-convention", "paper"],
    ] {
        let (o, _) = run(&dir, "simulate", SU2, extra);
        assert_eq!(o.status.code(), Some(2), "{extra:?}: {}", stderr(&o));
    }
    assert_eq!(geophase(&["simulate"]).status.code(), Some(2));
    assert_eq!(geophase(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(geophase(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_status_flips_at_feasibility_boundary() {
    let dir = TempDir::new().unwrap();
    // |(ω + 2)/4| = 1 at ω = −6
    let (o, out) = run(&dir, "sweep", SU11, &["--sweep", "omega=-9:-3:7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&out.join("sweep.csv"));
    assert_eq!(rows[0][..3], ["index", "omega", "status"]);
    let status: Vec<&str> = rows[1..].iter().map(|r| r[2].as_str()).collect();
    assert_eq!(status, ["ok", "ok", "ok", "no-resonance", "no-resonance", "no-resonance", "no-resonance"]);
    assert_eq!(rows[7][4], "nan");
}

#[test]
fn infeasible_grid_warns_and_succeeds() {
    let dir = TempDir::new().unwrap();
    let (o, out) = run(&dir, "sweep", SU11, &["--sweep", "omega=-5:0:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
    assert_eq!(csv_rows(&out.join("sweep.csv")).len(), 4);
}

#[test]
fn sweep_along_invariant_surface_keeps_gamma() {
    let dir = TempDir::new().unwrap();
    let text = format!(
        "{SU2}\n[sweep]\nsurface_radius = 0.78539816339744831\naxes = [\"b=-1.5:1.8:20\"]\ncolumns = [\"radius\", \"gamma\", \"delta\"]\n"
    );
    let (o, out) = run(&dir, "sweep", &text, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&out.join("sweep.csv"));
    assert_eq!(rows[0], ["index", "b", "omega", "status", "radius", "gamma", "delta"]);
    // the orbit's direction follows the sign of ω, so compare magnitudes
    let gammas: Vec<f64> = rows[1..].iter().map(|r| r[5].parse::<f64>().unwrap().abs()).collect();
    let deltas: Vec<f64> = rows[1..].iter().map(|r| r[6].parse().unwrap()).collect();
    assert_eq!(gammas.len(), 20);
    let spread = |v: &[f64]| v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread(&gammas) < 1e-8, "{gammas:?}");
    assert!(spread(&deltas) > 1e-3);
}

#[test]
fn phi_sweep_gives_interference_fringe() {
    let dir = TempDir::new().unwrap();
    let (o, out) = run(&dir, "sweep", PLANE, &["--sweep", "phi=0:6.283185307179586:9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&out.join("sweep.csv"));
    let header = &rows[0];
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    for r in &rows[1..] {
        let phi: f64 = r[col("phi")].parse().unwrap();
        let intensity: f64 = r[col("intensity")].parse().unwrap();
        assert!((intensity - (0.5 * phi).cos().powi(2)).abs() < 1e-15);
    }
}

#[test]
fn oracle_check_and_interfere_pass_on_resonance() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [("su2", SU2), ("su11", SU11), ("plane", PLANE)] {
        for command in ["oracle-check", "interfere", "phase"] {
            let (o, _) = run(&dir, command, text, &[]);
            assert_eq!(o.status.code(), Some(0), "{name} {command}: {}", stderr(&o));
            let table: toml::Table = toml::from_str(&String::from_utf8_lossy(&o.stdout)).unwrap();
            if command != "phase" {
                assert_eq!(table["status"].as_str(), Some("pass"), "{name} {command}");
            }
        }
    }
}

#[test]
fn coarse_oracle_fails_verification() {
    let dir = TempDir::new().unwrap();
    let (o, _) = run(&dir, "oracle-check", SU2, &["--steps", "3"]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn open_trajectory_phase_is_numeric_failure() {
    let dir = TempDir::new().unwrap();
    let (o, _) = run(&dir, "phase", &format!("{SU2}\n[initial]\nz_re = 0.1\nz_im = 0.3\n"), &[]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("not cyclic"));
}

#[test]
fn stationary_table() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("st");
    let o = geophase(&["stationary", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&out.join("stationary.csv"));
    // J = 1/2 … 3 has 2 + 3 + … + 7 levels
    assert_eq!(rows.len(), 1 + 27);
    assert!(rows[1..].iter().all(|r| r[8] == "true"));
}

#[test]
fn verify_reports_each_check() {
    let o = geophase(&["verify", "stationary"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout);
    let checks: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert_eq!(checks.len(), 27);
    assert!(checks.iter().all(|l| l.starts_with("PASS suite=stationary") && l.contains("residual=")));
    assert_eq!(geophase(&["verify", "bogus"]).status.code(), Some(2));
}

#[test]
fn shipped_scenarios_run() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let dir = TempDir::new().unwrap();
    let mut seen = 0;
    for entry in fs::read_dir(&root).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_stem().unwrap().to_str().unwrap().to_string();
        let command = if name.ends_with("sweep") || name == "interference_fringe" {
            "sweep"
        } else if name.starts_with("stationary") {
            "stationary"
        } else {
            "simulate"
        };
        let out = dir.path().join(&name);
        let o = geophase(&[command, "--scenario", path.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        seen += 1;
    }
    assert_eq!(seen, 7);
}
