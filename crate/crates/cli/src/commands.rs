//! The four sub-commands.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use polyshock_core::closure::{evaluate, multipliers};
use polyshock_core::shock::{
    rh_full, solve, solve_continuous, solve_subshock, ShockProblem, ShockProfile,
};
use polyshock_core::verification::{self, Report};
use polyshock_core::Exec;

use crate::config::{resolve_exponents, Regime, RunConfig};
use crate::error::CliError;
use crate::plot::render_svg;
use crate::profile_csv::{fmt, ProfileTable};

/// Files produced by a command.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(format!("creating {}", dir.display()), e))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(format!("writing {}", path.display()), e))
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Csv(e.to_string())
}

fn io_error(e: std::io::Error) -> CliError {
    CliError::io("writing output", e)
}

/// Closure quantities for every configured state.
pub fn run_closure(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let spec = cfg
        .cross_section
        .ok_or_else(|| CliError::Invalid("closure needs a [cross_section]".into()))?;
    create_dir(&cfg.output.dir)?;
    let path = cfg.output.dir.join("closure.csv");
    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record([
        "rho",
        "e",
        "Pi",
        "trace",
        "h5",
        "h6",
        "kappa",
        "production",
        "tau_pi",
        "entropy_production",
        "lambda0",
        "lambda2",
        "mu2",
    ])
    .map_err(csv_error)?;
    for s in &cfg.states {
        let eval = evaluate(s, &spec, &cfg.gas)?;
        let mult = multipliers(s, &cfg.gas)?;
        csv.write_record(
            [
                s.rho(),
                s.e(),
                s.pi(),
                s.trace(&cfg.gas),
                eval.h5,
                eval.h6,
                eval.kappa,
                eval.source,
                eval.tau_pi,
                eval.entropy_production,
                mult.lambda0,
                mult.lambda2,
                mult.mu2,
            ]
            .map(fmt),
        )
        .map_err(csv_error)?;
        writeln!(
            out,
            "rho={} e={} Pi={}: h6={:.10e} kappa={:.10e} production={:.10e} tau_Pi={:.10e} D={:.10e}",
            s.rho(),
            s.e(),
            s.pi(),
            eval.h6,
            eval.kappa + 0.0,
            eval.source + 0.0,
            eval.tau_pi,
            eval.entropy_production + 0.0
        )
        .map_err(io_error)?;
    }
    let bytes = csv.into_inner().map_err(|e| CliError::Csv(e.to_string()))?;
    write_file(&path, &bytes)?;
    Ok(Outcome { files: vec![path] })
}

fn solve_in_regime(problem: &ShockProblem, regime: Regime) -> polyshock_core::Result<ShockProfile> {
    match regime {
        Regime::Auto => solve(problem),
        Regime::Continuous => solve_continuous(problem),
        Regime::Subshock => solve_subshock(problem),
    }
}

/// Write `<stem>.csv` (and `<stem>.svg` when plotting) for one profile.
fn write_profile(
    profile: &ShockProfile,
    dir: &Path,
    stem: &str,
    plot: bool,
) -> Result<Vec<PathBuf>, CliError> {
    let table = ProfileTable::from_profile(profile);
    let csv_path = dir.join(format!("{stem}.csv"));
    let mut files = vec![csv_path.clone()];
    let file = fs::File::create(&csv_path)
        .map_err(|e| CliError::io(format!("creating {}", csv_path.display()), e))?;
    let mut writer = BufWriter::new(file);
    table.write(&mut writer)?;
    writer
        .flush()
        .map_err(|e| CliError::io(format!("writing {}", csv_path.display()), e))?;
    if plot {
        let svg_path = dir.join(format!("{stem}.svg"));
        write_file(&svg_path, render_svg(&table).as_bytes())?;
        files.push(svg_path);
    }
    Ok(files)
}

/// One shock profile.
pub fn run_shock(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let shock = cfg
        .shock
        .as_ref()
        .ok_or_else(|| CliError::Invalid("shock needs a [shock] section".into()))?;
    let alpha = cfg.gas.alpha();
    let (s_star, alpha_star) = resolve_exponents(shock, &cfg.kernel, alpha);
    let problem =
        ShockProblem::new(shock.mach0, alpha, s_star, alpha_star)?.with_controls(shock.controls);
    let profile = solve_in_regime(&problem, shock.regime)?;
    create_dir(&cfg.output.dir)?;
    let files = write_profile(&profile, &cfg.output.dir, "profile", cfg.output.plot)?;
    writeln!(
        out,
        "M0={} alpha={} s*={} alpha*={}: {} profile, thickness={:.10e}, max|Pi|={:.10e}, {} samples",
        shock.mach0,
        alpha,
        s_star,
        alpha_star,
        if profile.is_discontinuous() { "sub-shock" } else { "continuous" },
        profile.thickness,
        profile.max_abs_pi,
        profile.samples.len()
    )
    .map_err(io_error)?;
    Ok(Outcome { files })
}

/// One point of a sweep grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub mach0: f64,
    pub alpha: f64,
    pub s: f64,
    pub q: f64,
    pub beta: f64,
}

impl GridPoint {
    /// Deterministic file stem from the grid coordinates.
    pub fn stem(&self) -> String {
        format!(
            "profile_m0_{}_alpha_{}_s_{}_q_{}_beta_{}",
            self.mach0, self.alpha, self.s, self.q, self.beta
        )
    }
}

/// Cartesian product of the grids (base values where a grid is absent).
pub fn grid_points(cfg: &RunConfig) -> Result<Vec<GridPoint>, CliError> {
    let shock = cfg
        .shock
        .as_ref()
        .ok_or_else(|| CliError::Invalid("sweep needs a [shock] section".into()))?;
    let axis = |grid: &[f64], base: f64| {
        if grid.is_empty() {
            vec![base]
        } else {
            grid.to_vec()
        }
    };
    let g = &cfg.sweep;
    let mach = axis(&g.mach0, shock.mach0);
    if mach.iter().any(|m| m.is_nan()) {
        return Err(CliError::Invalid(
            "sweep needs shock.mach0 or a sweep.mach0 grid".into(),
        ));
    }
    let mut points = Vec::new();
    for &mach0 in &mach {
        for &alpha in &axis(&g.alpha, cfg.gas.alpha()) {
            for &s in &axis(&g.s, cfg.kernel.s) {
                for &q in &axis(&g.q, cfg.kernel.q) {
                    for &beta in &axis(&g.beta, cfg.kernel.beta) {
                        points.push(GridPoint {
                            mach0,
                            alpha,
                            s,
                            q,
                            beta,
                        });
                    }
                }
            }
        }
    }
    Ok(points)
}

/// Result of one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub point: GridPoint,
    pub s_star: f64,
    pub alpha_star: f64,
    pub outcome: Result<SweepMetrics, String>,
    pub files: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepMetrics {
    pub thickness: f64,
    pub max_abs_pi: f64,
    pub subshock: bool,
    pub subshock_pi: Option<f64>,
}

/// Profiles over a parameter grid plus `summary.csv`. Points run
/// concurrently and write their own files; failures are recorded, not fatal.
pub fn run_sweep(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let shock = cfg
        .shock
        .as_ref()
        .ok_or_else(|| CliError::Invalid("sweep needs a [shock] section".into()))?;
    let points = grid_points(cfg)?;
    create_dir(&cfg.output.dir)?;
    let dir = cfg.output.dir.as_path();
    let plot = cfg.output.plot;
    let rows: Vec<SweepRow> = Exec::default().map(&points, |pt| {
        let (s_star, alpha_star) = (pt.s + pt.q, pt.alpha - 0.5 * pt.beta);
        let solved = ShockProblem::new(pt.mach0, pt.alpha, s_star, alpha_star)
            .map(|p| p.with_controls(shock.controls))
            .and_then(|p| solve_in_regime(&p, shock.regime).map(|profile| (p, profile)));
        let (outcome, files) = match solved {
            Ok((problem, profile)) => {
                let metrics = SweepMetrics {
                    thickness: profile.thickness,
                    max_abs_pi: profile.max_abs_pi,
                    subshock: profile.is_discontinuous(),
                    subshock_pi: profile
                        .is_discontinuous()
                        .then(|| rh_full(&problem).map(|s| s.pi).ok())
                        .flatten(),
                };
                match write_profile(&profile, dir, &pt.stem(), plot) {
                    Ok(files) => (Ok(metrics), files),
                    Err(e) => (Err(e.to_string()), Vec::new()),
                }
            }
            Err(e) => (Err(e.to_string()), Vec::new()),
        };
        SweepRow {
            point: *pt,
            s_star,
            alpha_star,
            outcome,
            files,
        }
    });

    let summary_path = dir.join("summary.csv");
    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record([
        "mach0",
        "alpha",
        "s",
        "q",
        "beta",
        "s_star",
        "alpha_star",
        "status",
        "thickness",
        "max_abs_pi",
        "subshock",
        "pi_s",
        "file",
    ])
    .map_err(csv_error)?;
    let mut files = Vec::new();
    let mut failed = 0;
    for row in &rows {
        let p = row.point;
        let mut record = vec![
            p.mach0,
            p.alpha,
            p.s,
            p.q,
            p.beta,
            row.s_star,
            row.alpha_star,
        ]
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>();
        match &row.outcome {
            Ok(m) => {
                record.extend([
                    "ok".to_string(),
                    fmt(m.thickness),
                    fmt(m.max_abs_pi),
                    m.subshock.to_string(),
                    m.subshock_pi.map(fmt).unwrap_or_default(),
                ]);
                writeln!(
                    out,
                    "{}: thickness={:.6e} max|Pi|={:.6e}{}",
                    p.stem(),
                    m.thickness,
                    m.max_abs_pi,
                    if m.subshock { " (sub-shock)" } else { "" }
                )
                .map_err(io_error)?;
            }
            Err(msg) => {
                failed += 1;
                record.extend([
                    format!("error: {msg}"),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                ]);
                writeln!(out, "{}: failed: {msg}", p.stem()).map_err(io_error)?;
            }
        }
        record.push(
            row.files
                .first()
                .and_then(|f| f.file_name())
                .map(|f| f.to_string_lossy().into_owned())
                .unwrap_or_default(),
        );
        csv.write_record(&record).map_err(csv_error)?;
        files.extend(row.files.iter().cloned());
    }
    let bytes = csv.into_inner().map_err(|e| CliError::Csv(e.to_string()))?;
    write_file(&summary_path, &bytes)?;
    files.push(summary_path);
    writeln!(out, "{} points, {} failed", rows.len(), failed).map_err(io_error)?;
    Ok(Outcome { files })
}

/// Table of a verification report.
pub fn report_csv(report: &Report) -> Result<Vec<u8>, CliError> {
    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record(["group", "check", "achieved", "required", "passed", "detail"])
        .map_err(csv_error)?;
    for c in &report.checks {
        csv.write_record([
            format!("{}:{}", c.group.number(), c.group.name()),
            c.name.clone(),
            format!("{:.6e}", c.achieved),
            format!("{:.0e}", c.required),
            c.passed.to_string(),
            c.detail.clone(),
        ])
        .map_err(csv_error)?;
    }
    csv.into_inner().map_err(|e| CliError::Csv(e.to_string()))
}

/// Run the verification suite; fails with exit code 4 if any check fails.
pub fn run_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let report = verification::run(&cfg.verify)?;
    let table = report_csv(&report)?;
    out.write_all(&table).map_err(io_error)?;
    create_dir(&cfg.output.dir)?;
    let path = cfg.output.dir.join("verify.csv");
    write_file(&path, &table)?;
    let failed = report.failures().count();
    if failed > 0 {
        return Err(CliError::Verification {
            failed,
            total: report.checks.len(),
        });
    }
    Ok(Outcome { files: vec![path] })
}

/// Dispatch on the configured command.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    use crate::config::Command;
    match cfg.command {
        Command::Closure => run_closure(cfg, out),
        Command::Shock => run_shock(cfg, out),
        Command::Sweep => run_sweep(cfg, out),
        Command::Verify => run_verify(cfg, out),
    }
}
