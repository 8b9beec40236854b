//! End-to-end runs of the `polyshock` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use polyshock::profile_csv::ProfileTable;

const SHOCK: &str = "[gas]\nalpha = 0.5\n\n[cross_section]\ns = 1.0\n\n[shock]\nmach0 = 1.1\n";

fn run(dir: &Path, command: &str, config: &str, extra: &[&str]) -> Output {
    let path = dir.join(format!("{command}.toml"));
    fs::write(&path, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_polyshock"))
        .arg(command)
        .arg("--config")
        .arg(&path)
        .arg("--out")
        .arg(dir.join("out"))
        .args(extra)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn read_table(path: &Path) -> ProfileTable {
    ProfileTable::read(std::io::BufReader::new(fs::File::open(path).unwrap())).unwrap()
}

#[test]
fn continuous_shock_writes_profile_without_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), "shock", SHOCK, &[]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = dir.path().join("out/profile.csv");
    assert!(!dir.path().join("out/profile.svg").exists());
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("# J="));
    assert!(text.lines().next().unwrap().ends_with("subshock_xi="));
    assert_eq!(
        text.lines().nth(1).unwrap(),
        "xi,rho,u,T,Pi,rho_norm,u_norm,T_norm"
    );

    let table = read_table(&csv);
    assert_eq!(table.meta.subshock_xi, None);
    assert_eq!(table.rows.len(), 800);
    assert!(table.rows.windows(2).all(|w| w[0].xi < w[1].xi));
    let first = &table.rows[0];
    let last = table.rows.last().unwrap();
    assert!(first.rho_norm < 1e-5 && last.rho_norm > 1.0 - 1e-5);
}

#[test]
fn plot_flag_adds_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), "shock", SHOCK, &["--plot"]);
    assert_eq!(code(&out), 0);
    let svg = fs::read_to_string(dir.path().join("out/profile.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn subshock_profile_repeats_the_jump_abscissa() {
    let dir = tempfile::tempdir().unwrap();
    let config = SHOCK.replace("mach0 = 1.1", "mach0 = 2.0");
    let out = run(dir.path(), "shock", &config, &[]);
    assert_eq!(code(&out), 0);
    let table = read_table(&dir.path().join("out/profile.csv"));
    assert_eq!(table.meta.subshock_xi, Some(0.0));
    let at_jump: Vec<_> = table.rows.iter().filter(|r| r.xi == 0.0).collect();
    assert_eq!(at_jump.len(), 2);
    assert_eq!(at_jump[0].rho, 1.0);
    assert!(at_jump[1].rho > 1.5);
    assert!(at_jump[1].pi > 0.0);
}

#[test]
fn profile_csv_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), "shock", SHOCK, &[]);
    let csv = dir.path().join("out/profile.csv");
    let text = fs::read_to_string(&csv).unwrap();
    let table = read_table(&csv);
    assert_eq!(table.to_csv_string().unwrap(), text);
}

#[test]
fn runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let sweep = format!("{SHOCK}\n[sweep]\nmach0 = [1.1, 1.5]\ns = [0.0, 1.0]\n");
    for dir in [&a, &b] {
        assert_eq!(code(&run(dir.path(), "sweep", &sweep, &[])), 0);
    }
    let mut names: Vec<_> = fs::read_dir(a.path().join("out"))
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 5);
    for name in names {
        let x = fs::read(a.path().join("out").join(&name)).unwrap();
        let y = fs::read(b.path().join("out").join(&name)).unwrap();
        assert_eq!(x, y, "{name:?}");
    }
}

fn summary(dir: &Path) -> Vec<csv::StringRecord> {
    csv::Reader::from_path(dir.join("out/summary.csv"))
        .unwrap()
        .records()
        .map(|r| r.unwrap())
        .collect()
}

fn column(rows: &[csv::StringRecord], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn sweep_over_s_thins_the_shock() {
    let dir = tempfile::tempdir().unwrap();
    let sweep = format!("{SHOCK}\n[sweep]\ns = [-1.0, 0.0, 1.0, 2.0]\n");
    assert_eq!(code(&run(dir.path(), "sweep", &sweep, &[])), 0);
    let rows = summary(dir.path());
    assert!(rows.iter().all(|r| &r[7] == "ok"));
    let thickness = column(&rows, 8);
    assert!(thickness.windows(2).all(|w| w[0] > w[1]), "{thickness:?}");
    for r in &rows {
        assert!(dir.path().join("out").join(&r[12]).exists());
    }
}

#[test]
fn sweep_over_alpha_and_mach() {
    let dir = tempfile::tempdir().unwrap();
    // Weak enough that every α stays below its critical Mach number.
    let weak = SHOCK.replace("mach0 = 1.1", "mach0 = 1.05");
    let sweep = format!("{weak}\n[sweep]\nalpha = [-0.5, 0.0, 0.5, 1.5]\n");
    assert_eq!(code(&run(dir.path(), "sweep", &sweep, &[])), 0);
    let rows = summary(dir.path());
    assert!(rows.iter().all(|r| &r[10] == "false"));
    let thickness = column(&rows, 8);
    assert!(thickness.windows(2).all(|w| w[0] < w[1]), "{thickness:?}");
    // More internal degrees of freedom spread the same jump over a wider
    // layer, so the peak dynamic pressure drops.
    let peak = column(&rows, 9);
    assert!(peak.windows(2).all(|w| w[0] > w[1]), "{peak:?}");

    let dir = tempfile::tempdir().unwrap();
    let sweep = format!("{SHOCK}\n[sweep]\nmach0 = [1.5, 2.0, 3.0]\n");
    assert_eq!(code(&run(dir.path(), "sweep", &sweep, &[])), 0);
    let rows = summary(dir.path());
    assert!(rows.iter().all(|r| &r[10] == "true" && !r[11].is_empty()));
    let thickness = column(&rows, 8);
    assert!(thickness.windows(2).all(|w| w[0] > w[1]), "{thickness:?}");
}

#[test]
fn subshock_pi_jump_grows_with_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let strong = SHOCK.replace("mach0 = 1.1", "mach0 = 2.0");
    let sweep = format!("{strong}\n[sweep]\nalpha = [-0.5, 0.0, 0.5, 1.5]\n");
    assert_eq!(code(&run(dir.path(), "sweep", &sweep, &[])), 0);
    let rows = summary(dir.path());
    assert!(rows.iter().all(|r| &r[10] == "true"));
    let jump = column(&rows, 11);
    assert!(jump.windows(2).all(|w| w[0] < w[1]), "{jump:?}");
}

#[test]
fn sweep_over_q_includes_minus_one_and_minus_two() {
    let dir = tempfile::tempdir().unwrap();
    let sweep = format!("{SHOCK}\n[sweep]\nq = [-2.0, -1.0, 0.0]\n");
    assert_eq!(code(&run(dir.path(), "sweep", &sweep, &[])), 0);
    let rows = summary(dir.path());
    let thickness = column(&rows, 8);
    assert!(
        thickness[0] > thickness[1] && thickness[1] > thickness[2],
        "{thickness:?}"
    );
}

#[test]
fn closure_writes_table() {
    let dir = tempfile::tempdir().unwrap();
    let config = "[gas]\nalpha = 0.5\n\n[cross_section]\nkind = \"generalized\"\ns = 0.0\nbeta = 1.0\nq = 1.0\n\n[state]\nrho = 1.0\ne = 1.0\npi = [-0.1, 0.0, 0.1]\n";
    let out = run(dir.path(), "closure", config, &[]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::Reader::from_path(dir.path().join("out/closure.csv")).unwrap();
    assert_eq!(reader.headers().unwrap().len(), 13);
    let rows: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 3);
    let production: f64 = rows[1][7].parse().unwrap();
    assert_eq!(production, 0.0);
}

const VERIFY_FAST: &str =
    "[verify]\nkinematic_samples = 500\njacobian_samples = 50\net_samples = 50\n";

#[test]
fn verify_passes_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), "verify", "", &[]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let table = fs::read_to_string(dir.path().join("out/verify.csv")).unwrap();
    assert!(table.lines().count() > 20);
    assert!(table.lines().skip(1).all(|l| l.contains(",true,")));
}

#[test]
fn verify_passes_with_tighter_quadrature() {
    let dir = tempfile::tempdir().unwrap();
    let config = format!("{VERIFY_FAST}rel_tol = 1e-11\n");
    let out = run(dir.path(), "verify", &config, &[]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn verify_fails_on_perturbed_coefficient() {
    let dir = tempfile::tempdir().unwrap();
    let config = format!(
        "{VERIFY_FAST}groups = [\"production_oracle\"]\nperturb = \"standard_coefficient\"\n"
    );
    let out = run(dir.path(), "verify", &config, &[]);
    assert_eq!(code(&out), 4);
    let table = fs::read_to_string(dir.path().join("out/verify.csv")).unwrap();
    assert!(table.lines().any(|l| l.contains(",false,")));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        "shock",
        "[gas]\nalpha = 0.5\n\n[shock]\nmach0 = 1.1\nbogus = 1\n",
        &[],
    );
    assert_eq!(code(&out), 2);
    let out = run(
        dir.path(),
        "shock",
        "[gas]\nalpha = -2.0\n\n[cross_section]\ns = 1.0\n\n[shock]\nmach0 = 1.1\n",
        &[],
    );
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let missing = Command::new(env!("CARGO_BIN_EXE_polyshock"))
        .args(["shock", "--config", "/nonexistent/polyshock.toml"])
        .output()
        .unwrap();
    assert_eq!(code(&missing), 2);
}

#[test]
fn solver_errors_have_distinct_nonzero_codes() {
    let dir = tempfile::tempdir().unwrap();
    let forced = |regime: &str, mach: &str| {
        SHOCK.replace(
            "mach0 = 1.1",
            &format!("mach0 = {mach}\nregime = \"{regime}\""),
        )
    };
    let no_subshock = run(dir.path(), "shock", &forced("subshock", "1.1"), &[]);
    let sonic = run(dir.path(), "shock", &forced("continuous", "2.0"), &[]);
    let (a, b) = (code(&no_subshock), code(&sonic));
    assert!(a != 0 && b != 0 && a != b && ![2, 4].contains(&a) && ![2, 4].contains(&b));
    assert!(!dir.path().join("out/profile.csv").exists());
}
