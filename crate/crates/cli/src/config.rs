//! Run configuration: TOML text with flat sections, validated at parse time.
//!
//! ```toml
//! [gas]
//! alpha = 0.5
//!
//! [cross_section]
//! kind = "standard"   # or "generalized" (then beta and q apply)
//! s = 1.0
//!
//! [shock]
//! mach0 = 1.1
//! ```
//!
//! Unknown keys, duplicate keys and out-of-range values are rejected with
//! the line of the offending entry.

use std::ops::Range;
use std::path::PathBuf;

use polyshock_core::shock::IntegrationControls;
use polyshock_core::verification::{Group, Perturbation, VerifyOptions};
use polyshock_core::{CrossSection, GasParameters, MacroState6};
use serde::Deserialize;
use toml::Spanned;

use crate::error::CliError;

/// Sub-command selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Closure,
    Shock,
    Sweep,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Closure => "closure",
            Command::Shock => "shock",
            Command::Sweep => "sweep",
            Command::Verify => "verify",
        }
    }
}

/// Which branch of the shock solver to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Continuous below the critical Mach number, sub-shock above.
    #[default]
    Auto,
    Continuous,
    Subshock,
}

/// Cross-section exponents as written in the file. Only the closure and
/// verify commands build a full [`CrossSection`]; the shock source depends
/// on the exponents alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSettings {
    pub generalized: bool,
    pub k: f64,
    pub s: f64,
    pub beta: f64,
    pub q: f64,
}

impl KernelSettings {
    /// `(s*, α*) = (s + q, α − β/2)`.
    pub fn source_exponents(&self, alpha: f64) -> (f64, f64) {
        (self.s + self.q, alpha - 0.5 * self.beta)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShockSettings {
    pub mach0: f64,
    pub regime: Regime,
    /// Explicit source exponents; default from the cross section.
    pub s_star: Option<f64>,
    pub alpha_star: Option<f64>,
    pub controls: IntegrationControls,
}

/// Grids of a parameter sweep; an empty grid keeps the base value.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepGrid {
    pub mach0: Vec<f64>,
    pub alpha: Vec<f64>,
    pub s: Vec<f64>,
    pub q: Vec<f64>,
    pub beta: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSettings {
    pub dir: PathBuf,
    pub plot: bool,
}

/// Fully validated configuration of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub gas: GasParameters,
    pub kernel: KernelSettings,
    /// Built (and bound-checked) for the closure command.
    pub cross_section: Option<CrossSection>,
    pub states: Vec<MacroState6>,
    pub shock: Option<ShockSettings>,
    pub sweep: SweepGrid,
    pub verify: VerifyOptions,
    pub output: OutputSettings,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    gas: Option<RawGas>,
    cross_section: Option<RawKernel>,
    state: Option<RawState>,
    shock: Option<RawShock>,
    sweep: Option<RawSweep>,
    verify: Option<RawVerify>,
    output: Option<RawOutput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGas {
    alpha: Spanned<f64>,
    mass: Option<Spanned<f64>>,
    boltzmann: Option<Spanned<f64>>,
}

#[derive(Debug, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum KernelKind {
    Standard,
    Generalized,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKernel {
    kind: Option<Spanned<KernelKind>>,
    k: Option<Spanned<f64>>,
    s: Spanned<f64>,
    beta: Option<Spanned<f64>>,
    q: Option<Spanned<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(f64),
    Many(Vec<f64>),
}

impl OneOrMany {
    fn values(&self) -> Vec<f64> {
        match self {
            OneOrMany::One(v) => vec![*v],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    rho: Spanned<f64>,
    e: Spanned<f64>,
    pi: Option<Spanned<OneOrMany>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawShock {
    mach0: Option<Spanned<f64>>,
    regime: Option<Regime>,
    s_star: Option<Spanned<f64>>,
    alpha_star: Option<Spanned<f64>>,
    rel_tol: Option<Spanned<f64>>,
    eps_eq: Option<Spanned<f64>>,
    max_span: Option<Spanned<f64>>,
    samples: Option<Spanned<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    mach0: Option<Spanned<Vec<f64>>>,
    alpha: Option<Spanned<Vec<f64>>>,
    s: Option<Spanned<Vec<f64>>>,
    q: Option<Spanned<Vec<f64>>>,
    beta: Option<Spanned<Vec<f64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVerify {
    rel_tol: Option<Spanned<f64>>,
    seed: Option<u64>,
    kinematic_samples: Option<Spanned<i64>>,
    jacobian_samples: Option<Spanned<i64>>,
    et_samples: Option<Spanned<i64>>,
    groups: Option<Spanned<Vec<String>>>,
    perturb: Option<Spanned<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    dir: Option<PathBuf>,
    plot: Option<bool>,
}

/// 1-based line and column of a byte offset.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// Binds validation errors to the source text.
struct Locator<'a> {
    text: &'a str,
}

impl Locator<'_> {
    fn bound(&self, span: Range<usize>, field: &str, message: impl Into<String>) -> CliError {
        CliError::Bound {
            line: position(self.text, span.start).0,
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// Map a core validation error to the field it names.
    fn core(&self, err: polyshock_core::Error, fields: &[(&str, &str, Range<usize>)]) -> CliError {
        if let polyshock_core::Error::InvalidParameter { name, .. } = &err {
            if let Some((_, field, span)) = fields.iter().find(|(n, _, _)| n == name) {
                return self.bound(span.clone(), field, err.to_string());
            }
        }
        if let Some((_, field, span)) = fields.first() {
            return self.bound(span.clone(), field, err.to_string());
        }
        CliError::Invalid(err.to_string())
    }

    fn count(&self, value: &Spanned<i64>, field: &str, minimum: i64) -> Result<usize, CliError> {
        let v = *value.get_ref();
        if v < minimum {
            return Err(self.bound(
                value.span(),
                field,
                format!("{field} must be at least {minimum} (got {v})"),
            ));
        }
        Ok(v as usize)
    }
}

fn value_or(v: &Option<Spanned<f64>>, default: f64) -> f64 {
    v.as_ref().map_or(default, |s| *s.get_ref())
}

fn span_of<T>(v: &Option<Spanned<T>>, fallback: &Range<usize>) -> Range<usize> {
    v.as_ref().map_or(fallback.clone(), |s| s.span())
}

fn missing(section: &str, command: Command) -> CliError {
    CliError::Invalid(format!(
        "section [{section}] is required by the {} command",
        command.name()
    ))
}

/// Parse and validate a configuration for `command`.
pub fn parse_config(text: &str, command: Command) -> Result<RunConfig, CliError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| position(text, s.start));
        CliError::Parse {
            line,
            column,
            message: e.message().trim().to_string(),
        }
    })?;
    let loc = Locator { text };

    let gas = match &raw.gas {
        Some(g) => {
            let alpha_span = g.alpha.span();
            GasParameters::new(
                *g.alpha.get_ref(),
                value_or(&g.mass, 1.0),
                value_or(&g.boltzmann, 1.0),
            )
            .map_err(|e| {
                loc.core(
                    e,
                    &[
                        ("alpha", "gas.alpha", alpha_span.clone()),
                        ("mass", "gas.mass", span_of(&g.mass, &alpha_span)),
                        (
                            "boltzmann",
                            "gas.boltzmann",
                            span_of(&g.boltzmann, &alpha_span),
                        ),
                    ],
                )
            })?
        }
        None if command == Command::Verify => {
            GasParameters::kinetic(0.5).map_err(|e| CliError::Invalid(e.to_string()))?
        }
        None => return Err(missing("gas", command)),
    };

    let kernel = match &raw.cross_section {
        Some(k) => {
            let generalized = k
                .kind
                .as_ref()
                .is_some_and(|kind| *kind.get_ref() == KernelKind::Generalized);
            if !generalized {
                for (value, name) in [(&k.beta, "beta"), (&k.q, "q")] {
                    if let Some(v) = value {
                        return Err(loc.bound(
                            v.span(),
                            &format!("cross_section.{name}"),
                            format!("{name} requires kind = \"generalized\""),
                        ));
                    }
                }
            }
            let settings = KernelSettings {
                generalized,
                k: value_or(&k.k, 1.0),
                s: *k.s.get_ref(),
                beta: value_or(&k.beta, 0.0),
                q: value_or(&k.q, 0.0),
            };
            let s_span = k.s.span();
            if !(settings.k > 0.0 && settings.k.is_finite()) {
                return Err(loc.bound(
                    span_of(&k.k, &s_span),
                    "cross_section.k",
                    format!("K must be positive (got {})", settings.k),
                ));
            }
            Some((settings, s_span, k))
        }
        None => None,
    };

    // Full kernel validation where the collision model itself is evaluated.
    let cross_section = match (&kernel, command) {
        (Some((settings, s_span, k)), Command::Closure) => {
            let spec = if settings.generalized {
                CrossSection::generalized(settings.k, settings.s, settings.beta, settings.q)
            } else {
                CrossSection::standard(settings.k, settings.s)
            };
            Some(spec.map_err(|e| {
                loc.core(
                    e,
                    &[
                        ("s", "cross_section.s", s_span.clone()),
                        ("beta", "cross_section.beta", span_of(&k.beta, s_span)),
                        ("q", "cross_section.q", span_of(&k.q, s_span)),
                        ("K", "cross_section.k", span_of(&k.k, s_span)),
                        ("K_G", "cross_section.k", span_of(&k.k, s_span)),
                    ],
                )
            })?)
        }
        (None, Command::Closure) => return Err(missing("cross_section", command)),
        _ => None,
    };
    let kernel = kernel
        .map(|(settings, _, _)| settings)
        .unwrap_or(KernelSettings {
            generalized: false,
            k: 1.0,
            s: 0.0,
            beta: 0.0,
            q: 0.0,
        });

    let mut states = Vec::new();
    if let Some(st) = &raw.state {
        let pis = st.pi.as_ref().map_or(vec![0.0], |p| p.get_ref().values());
        let rho_span = st.rho.span();
        for pi in pis {
            let s = MacroState6::at_rest(*st.rho.get_ref(), *st.e.get_ref(), pi, &gas).map_err(
                |e| match e {
                    polyshock_core::Error::Inadmissible { .. } => {
                        loc.bound(span_of(&st.pi, &rho_span), "state.pi", e.to_string())
                    }
                    other => loc.core(
                        other,
                        &[
                            ("rho", "state.rho", rho_span.clone()),
                            ("e", "state.e", st.e.span()),
                        ],
                    ),
                },
            )?;
            states.push(s);
        }
    } else if command == Command::Closure {
        return Err(missing("state", command));
    }

    let shock = match &raw.shock {
        Some(sh) => Some(parse_shock(sh, &loc, &gas, &kernel, command)?),
        None if matches!(command, Command::Shock | Command::Sweep) => {
            return Err(missing("shock", command))
        }
        None => None,
    };

    let sweep = match &raw.sweep {
        Some(sw) => parse_sweep(sw, &loc)?,
        None if command == Command::Sweep => return Err(missing("sweep", command)),
        None => SweepGrid::default(),
    };

    let verify = parse_verify(raw.verify.as_ref(), &loc)?;
    let output = OutputSettings {
        dir: raw
            .output
            .as_ref()
            .and_then(|o| o.dir.clone())
            .unwrap_or_else(|| PathBuf::from(".")),
        plot: raw.output.as_ref().and_then(|o| o.plot).unwrap_or(false),
    };

    Ok(RunConfig {
        command,
        gas,
        kernel,
        cross_section,
        states,
        shock,
        sweep,
        verify,
        output,
    })
}

fn parse_shock(
    sh: &RawShock,
    loc: &Locator<'_>,
    gas: &GasParameters,
    kernel: &KernelSettings,
    command: Command,
) -> Result<ShockSettings, CliError> {
    let mut controls = IntegrationControls::default();
    controls.rel_tol = value_or(&sh.rel_tol, controls.rel_tol);
    controls.eps_eq = value_or(&sh.eps_eq, controls.eps_eq);
    controls.max_span = value_or(&sh.max_span, controls.max_span);
    if let Some(n) = &sh.samples {
        controls.samples = loc.count(n, "shock.samples", 16)?;
    }
    let anchor = sh
        .mach0
        .as_ref()
        .map(|m| m.span())
        .or_else(|| sh.rel_tol.as_ref().map(|s| s.span()))
        .unwrap_or(0..0);
    controls.validate().map_err(|e| {
        loc.core(
            e,
            &[
                ("rel_tol", "shock.rel_tol", span_of(&sh.rel_tol, &anchor)),
                ("eps_eq", "shock.eps_eq", span_of(&sh.eps_eq, &anchor)),
                ("max_span", "shock.max_span", span_of(&sh.max_span, &anchor)),
            ],
        )
    })?;
    if command == Command::Sweep {
        for (v, field) in [
            (&sh.s_star, "shock.s_star"),
            (&sh.alpha_star, "shock.alpha_star"),
        ] {
            if let Some(v) = v {
                return Err(loc.bound(
                    v.span(),
                    field,
                    "sweeps derive the source exponents from s, q and beta",
                ));
            }
        }
    }
    let mach0 = match &sh.mach0 {
        Some(m) => *m.get_ref(),
        None if command == Command::Sweep => f64::NAN,
        None => return Err(CliError::Invalid("shock.mach0 is required".into())),
    };
    let settings = ShockSettings {
        mach0,
        regime: sh.regime.unwrap_or_default(),
        s_star: sh.s_star.as_ref().map(|v| *v.get_ref()),
        alpha_star: sh.alpha_star.as_ref().map(|v| *v.get_ref()),
        controls,
    };
    if !mach0.is_nan() {
        let (s_star, alpha_star) = resolve_exponents(&settings, kernel, gas.alpha());
        polyshock_core::shock::ShockProblem::new(mach0, gas.alpha(), s_star, alpha_star).map_err(
            |e| {
                loc.core(
                    e,
                    &[
                        ("mach0", "shock.mach0", anchor.clone()),
                        ("s_star", "shock.s_star", span_of(&sh.s_star, &anchor)),
                        (
                            "alpha_star",
                            "shock.alpha_star",
                            span_of(&sh.alpha_star, &anchor),
                        ),
                    ],
                )
            },
        )?;
    }
    Ok(settings)
}

/// Source exponents: explicit values win over the cross-section exponents.
pub fn resolve_exponents(shock: &ShockSettings, kernel: &KernelSettings, alpha: f64) -> (f64, f64) {
    let (s_star, alpha_star) = kernel.source_exponents(alpha);
    (
        shock.s_star.unwrap_or(s_star),
        shock.alpha_star.unwrap_or(alpha_star),
    )
}

fn parse_sweep(sw: &RawSweep, loc: &Locator<'_>) -> Result<SweepGrid, CliError> {
    let grid =
        |v: &Option<Spanned<Vec<f64>>>, field: &str, check: fn(f64) -> Option<&'static str>| {
            let Some(values) = v else {
                return Ok(Vec::new());
            };
            if values.get_ref().is_empty() {
                return Err(loc.bound(values.span(), field, format!("{field} must not be empty")));
            }
            for &x in values.get_ref() {
                if let Some(requirement) = check(x) {
                    return Err(loc.bound(
                        values.span(),
                        field,
                        format!("{field} must {requirement} (got {x})"),
                    ));
                }
            }
            Ok(values.get_ref().clone())
        };
    let finite = |x: f64| (!x.is_finite()).then_some("be finite");
    Ok(SweepGrid {
        mach0: grid(&sw.mach0, "sweep.mach0", |x| {
            (!(x > 1.0 && x.is_finite())).then_some("exceed 1")
        })?,
        alpha: grid(&sw.alpha, "sweep.alpha", |x| {
            (!(x > -1.0 && x.is_finite())).then_some("exceed -1")
        })?,
        s: grid(&sw.s, "sweep.s", finite)?,
        q: grid(&sw.q, "sweep.q", finite)?,
        beta: grid(&sw.beta, "sweep.beta", finite)?,
    })
}

fn parse_verify(v: Option<&RawVerify>, loc: &Locator<'_>) -> Result<VerifyOptions, CliError> {
    let mut options = VerifyOptions::default();
    let Some(v) = v else {
        return Ok(options);
    };
    if let Some(t) = &v.rel_tol {
        options.quad.rel_tol = *t.get_ref();
        options
            .quad
            .validate()
            .map_err(|e| loc.core(e, &[("rel_tol", "verify.rel_tol", t.span())]))?;
    }
    if let Some(seed) = v.seed {
        options.seed = seed;
    }
    if let Some(n) = &v.kinematic_samples {
        options.kinematic_samples = loc.count(n, "verify.kinematic_samples", 1)?;
    }
    if let Some(n) = &v.jacobian_samples {
        options.jacobian_samples = loc.count(n, "verify.jacobian_samples", 1)?;
    }
    if let Some(n) = &v.et_samples {
        options.et_samples = loc.count(n, "verify.et_samples", 1)?;
    }
    if let Some(groups) = &v.groups {
        let mut selected = Vec::new();
        for name in groups.get_ref() {
            let group = Group::ALL
                .into_iter()
                .find(|g| g.name() == name)
                .ok_or_else(|| {
                    loc.bound(
                        groups.span(),
                        "verify.groups",
                        format!("unknown check group `{name}`"),
                    )
                })?;
            selected.push(group);
        }
        options.groups = selected;
    }
    if let Some(p) = &v.perturb {
        let target: Perturbation = p.get_ref().parse().map_err(|e: polyshock_core::Error| {
            loc.bound(p.span(), "verify.perturb", e.to_string())
        })?;
        options.perturbation = Some(target);
    }
    Ok(options)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_shock_config() {
        let text = "[gas]\nalpha = 0.5\n[cross_section]\ns = 1\n[shock]\nmach0 = 1.1\n";
        let cfg = parse_config(text, Command::Shock).unwrap();
        assert_eq!(cfg.gas.alpha(), 0.5);
        let shock = cfg.shock.unwrap();
        assert_eq!(shock.mach0, 1.1);
        assert_eq!(resolve_exponents(&shock, &cfg.kernel, 0.5), (1.0, 0.5));
    }

    #[test]
    fn alpha_bound_is_named_with_line() {
        let text = "# comment\n[gas]\nalpha = -1\n";
        let err = parse_config(text, Command::Verify).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "{msg}");
        assert!(msg.contains("alpha must exceed -1"), "{msg}");
    }

    #[test]
    fn duplicate_key_is_a_parse_error() {
        let text = "[gas]\nalpha = 0.5\nalpha = 0.7\n";
        let err = parse_config(text, Command::Verify).unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn unknown_key_is_rejected() {
        let text = "[gas]\nalpha = 0.5\ngamma = 1.4\n";
        let err = parse_config(text, Command::Verify).unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn inadmissible_state_points_at_pi() {
        let text = "[gas]\nalpha = 0.5\n[cross_section]\ns = 0\n[state]\nrho = 1\ne = 1\npi = [0.0, 0.5]\n";
        let err = parse_config(text, Command::Closure).unwrap_err();
        assert!(
            matches!(&err, CliError::Bound { line: 8, field, .. } if field == "state.pi"),
            "{err}"
        );
    }

    #[test]
    fn closure_enforces_kernel_bounds() {
        let text = "[gas]\nalpha = 0.5\n[cross_section]\nkind = \"generalized\"\ns = 0\nq = -2\n[state]\nrho = 1\ne = 1\n";
        let err = parse_config(text, Command::Closure).unwrap_err();
        assert!(
            matches!(&err, CliError::Bound { line: 6, field, .. } if field == "cross_section.q"),
            "{err}"
        );
    }

    #[test]
    fn missing_section_is_reported() {
        let err = parse_config("[gas]\nalpha = 0.5\n", Command::Shock).unwrap_err();
        assert!(err.to_string().contains("[shock]"));
    }

    #[test]
    fn mach_bound() {
        let text = "[gas]\nalpha = 0.5\n[shock]\nmach0 = 0.9\n";
        let err = parse_config(text, Command::Shock).unwrap_err();
        assert!(matches!(&err, CliError::Bound { line: 4, .. }), "{err}");
        assert!(err.to_string().contains("mach0 must exceed 1"));
    }
}
