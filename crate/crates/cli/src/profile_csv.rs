//! Profile CSV: one `#` metadata line, a header, and one row per sample.
//!
//! Values are printed with 17 significant digits, so reading a file back
//! reproduces every `f64` exactly. A sub-shock appears as two rows at
//! `ξ = 0` (before and after the jump).

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use polyshock_core::shock::{normalize_profile, ShockProfile};

use crate::error::CliError;

pub const HEADER: [&str; 8] = ["xi", "rho", "u", "T", "Pi", "rho_norm", "u_norm", "T_norm"];

/// Metadata carried on the comment line.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileMeta {
    pub mass_flux: f64,
    pub momentum_flux: f64,
    pub energy_flux: f64,
    pub mach0: f64,
    pub alpha: f64,
    pub s_star: f64,
    pub alpha_star: f64,
    pub subshock_xi: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileRow {
    pub xi: f64,
    pub rho: f64,
    pub u: f64,
    pub temperature: f64,
    pub pi: f64,
    pub rho_norm: f64,
    pub u_norm: f64,
    pub temperature_norm: f64,
}

/// Tabular form of a profile, as written to and read from CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTable {
    pub meta: ProfileMeta,
    pub rows: Vec<ProfileRow>,
}

impl ProfileTable {
    /// Rows carry the normalized `ξ` (origin at the density midpoint or at
    /// the jump) next to raw and normalized fields.
    pub fn from_profile(profile: &ShockProfile) -> Self {
        let norm = normalize_profile(profile);
        let rows = profile
            .samples
            .iter()
            .zip(&norm.samples)
            .map(|(s, n)| ProfileRow {
                xi: n.xi,
                rho: s.rho,
                u: s.u,
                temperature: s.temperature,
                pi: s.pi,
                rho_norm: n.rho,
                u_norm: n.u,
                temperature_norm: n.temperature,
            })
            .collect();
        let p = profile.problem;
        Self {
            meta: ProfileMeta {
                mass_flux: profile.fluxes.mass,
                momentum_flux: profile.fluxes.momentum,
                energy_flux: profile.fluxes.energy,
                mach0: p.mach0(),
                alpha: p.alpha(),
                s_star: p.s_star(),
                alpha_star: p.alpha_star(),
                subshock_xi: profile.subshock.map(|j| j.xi - norm.xi_origin),
            },
            rows,
        }
    }

    pub fn write<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut out = out;
        let m = &self.meta;
        let mut line = String::new();
        let _ = write!(
            line,
            "# J={} P={} Q={} M0={} alpha={} s_star={} alpha_star={} subshock_xi=",
            fmt(m.mass_flux),
            fmt(m.momentum_flux),
            fmt(m.energy_flux),
            fmt(m.mach0),
            fmt(m.alpha),
            fmt(m.s_star),
            fmt(m.alpha_star),
        );
        if let Some(xi) = m.subshock_xi {
            line.push_str(&fmt(xi));
        }
        writeln!(out, "{line}").map_err(|e| CliError::io("writing profile", e))?;
        let mut csv = csv::Writer::from_writer(out);
        let io = |e: csv::Error| CliError::Csv(e.to_string());
        csv.write_record(HEADER).map_err(io)?;
        for r in &self.rows {
            csv.write_record(
                [
                    r.xi,
                    r.rho,
                    r.u,
                    r.temperature,
                    r.pi,
                    r.rho_norm,
                    r.u_norm,
                    r.temperature_norm,
                ]
                .map(fmt),
            )
            .map_err(io)?;
        }
        csv.flush().map_err(|e| CliError::io("writing profile", e))
    }

    pub fn to_csv_string(&self) -> Result<String, CliError> {
        let mut buf = Vec::new();
        self.write(&mut buf)?;
        String::from_utf8(buf).map_err(|e| CliError::Csv(e.to_string()))
    }

    pub fn read<R: BufRead>(mut input: R) -> Result<Self, CliError> {
        let mut first = String::new();
        input
            .read_line(&mut first)
            .map_err(|e| CliError::io("reading profile", e))?;
        let meta = parse_meta(first.trim_end())?;
        let mut csv = csv::Reader::from_reader(input);
        let header = csv.headers().map_err(|e| CliError::Csv(e.to_string()))?;
        if header.iter().ne(HEADER) {
            return Err(CliError::Csv(format!("unexpected header {header:?}")));
        }
        let mut rows = Vec::new();
        for record in csv.records() {
            let record = record.map_err(|e| CliError::Csv(e.to_string()))?;
            let mut v = [0.0; 8];
            for (slot, field) in v.iter_mut().zip(record.iter()) {
                *slot = field
                    .parse()
                    .map_err(|_| CliError::Csv(format!("not a number: `{field}`")))?;
            }
            rows.push(ProfileRow {
                xi: v[0],
                rho: v[1],
                u: v[2],
                temperature: v[3],
                pi: v[4],
                rho_norm: v[5],
                u_norm: v[6],
                temperature_norm: v[7],
            });
        }
        Ok(Self { meta, rows })
    }
}

/// 17 significant digits in scientific notation.
pub fn fmt(x: f64) -> String {
    // Adding +0 folds −0 into +0 so equal values print identically.
    let x = x + 0.0;
    format!("{x:.16e}")
}

fn parse_meta(line: &str) -> Result<ProfileMeta, CliError> {
    let body = line
        .strip_prefix('#')
        .ok_or_else(|| CliError::Csv("missing metadata line".into()))?;
    let mut fields = std::collections::HashMap::new();
    for item in body.split_whitespace() {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Csv(format!("bad metadata item `{item}`")))?;
        fields.insert(k, v);
    }
    let num = |k: &str| -> Result<f64, CliError> {
        fields
            .get(k)
            .ok_or_else(|| CliError::Csv(format!("metadata lacks {k}")))?
            .parse()
            .map_err(|_| CliError::Csv(format!("metadata {k} is not a number")))
    };
    let subshock_xi = match fields.get("subshock_xi") {
        Some(v) if !v.is_empty() => Some(
            v.parse()
                .map_err(|_| CliError::Csv("metadata subshock_xi is not a number".into()))?,
        ),
        Some(_) => None,
        None => return Err(CliError::Csv("metadata lacks subshock_xi".into())),
    };
    Ok(ProfileMeta {
        mass_flux: num("J")?,
        momentum_flux: num("P")?,
        energy_flux: num("Q")?,
        mach0: num("M0")?,
        alpha: num("alpha")?,
        s_star: num("s_star")?,
        alpha_star: num("alpha_star")?,
        subshock_xi,
    })
}
