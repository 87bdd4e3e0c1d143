//! Command-line front end for `tame2`.
//!
//! [`run`] takes the argument vector and the value of `TAME2_SEARCH_BOUNDS`
//! and returns the exit code together with everything that would be printed,
//! so it can be driven from tests without spawning a process.

pub mod cert;
pub mod grammar;
mod reference;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use tame2::{
    decide_tameness, jvdk_decompose, lift_decompose, sa_to_ea_factors, try_invert, AutoMap,
    Certificate, Ring, RingKind, SearchBounds, TamenessVerdict,
};
use thiserror::Error;

use grammar::{parse_map, parse_ring};

pub const BOUNDS_ENV: &str = "TAME2_SEARCH_BOUNDS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown ring {0}")]
    UnknownRing(String),
    #[error(transparent)]
    Library(#[from] tame2::Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "SyntaxError",
            CliError::UnknownRing(_) => "UnknownRing",
            CliError::Library(e) => e.kind(),
            CliError::Io(_) => "IoError",
            CliError::Usage(_) => "UsageError",
            CliError::InvalidCertificate(_) => "InvalidCertificate",
        }
    }
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "tame2",
    version,
    about = "Automorphisms of the plane over rings"
)]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Report elapsed time on stderr.
    #[arg(long, global = true)]
    timing: bool,
    /// Coefficient ring, e.g. QQ, GF(5), QQ[t]/(t^3).
    #[arg(long, global = true, default_value = "QQ")]
    ring: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compose maps; the first one is applied last.
    Compose {
        #[arg(required = true, num_args = 2.., allow_hyphen_values = true)]
        maps: Vec<String>,
    },
    /// Inverse of an automorphism.
    Invert {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Jacobian determinant.
    Jacobian {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Whether a map is invertible.
    IsAutomorphism {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Tame decomposition over a field or over QQ[t]/(t^m).
    Decompose {
        #[arg(allow_hyphen_values = true)]
        map: String,
        /// Use only elementary factors (the map must have Jacobian 1).
        #[arg(long)]
        elementary: bool,
        /// Also write the certificate to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tameness test over GF(p)[t]/(t^2).
    CharpCheck {
        #[arg(allow_hyphen_values = true)]
        map: String,
        /// Work over GF(p)[t]/(t^2), overriding --ring.
        #[arg(long)]
        p: Option<u64>,
        /// Largest exponent of a basis power (default 24).
        #[arg(long)]
        max_power: Option<u32>,
        /// Range of a in the linear forms X + aY (default 1).
        #[arg(long)]
        coeff_range: Option<u32>,
        /// Largest j in the coordinates Y + X^j and X + Y^j (default 12).
        #[arg(long)]
        aux_degree: Option<u32>,
        /// Largest total degree of a basis power (default 24).
        #[arg(long)]
        max_degree: Option<u32>,
        /// Also write the certificate to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate file.
    VerifyCert { file: PathBuf },
    /// Replay the reference computations and print a summary table.
    #[command(alias = "paper-examples")]
    ReferenceExamples,
}

/// Result of a command before rendering.
struct Report {
    code: i32,
    value: Value,
    human: String,
}

impl Report {
    fn ok(value: Value, human: String) -> Self {
        Self {
            code: 0,
            value,
            human,
        }
    }
}

/// Parses `key=value,...` into search bounds on top of the defaults.
pub fn parse_bounds(text: &str) -> Result<SearchBounds, CliError> {
    let mut b = SearchBounds::default();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("{BOUNDS_ENV}: expected key=value, got {part:?}"))
        })?;
        let value: u32 = value.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{BOUNDS_ENV}: {key} must be a non-negative integer"
            ))
        })?;
        match key.trim() {
            "max_power" => b.max_power = value,
            "coeff_range" => b.coeff_range = value,
            "aux_degree" => b.aux_degree = value,
            "max_degree" => b.max_degree = value,
            other => {
                return Err(CliError::Usage(format!(
                    "{BOUNDS_ENV}: unknown key {other:?}"
                )))
            }
        }
    }
    Ok(b)
}

/// Runs one invocation. `env_bounds` is the value of `TAME2_SEARCH_BOUNDS`.
pub fn run<I, T>(args: I, env_bounds: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let wants_json = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            if code == 1 && wants_json {
                let err = CliError::Usage(e.kind().to_string());
                return Outcome {
                    code,
                    stdout: error_json(&err),
                    stderr: e.render().to_string(),
                };
            }
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let start = Instant::now();
    let result = dispatch(&cli, env_bounds);
    let elapsed = start.elapsed();
    let mut outcome = match result {
        Ok(report) => Outcome {
            code: report.code,
            stdout: if cli.json {
                pretty(&report.value)
            } else {
                report.human
            },
            stderr: String::new(),
        },
        Err(err) => Outcome {
            code: 1,
            stdout: if cli.json {
                error_json(&err)
            } else {
                String::new()
            },
            stderr: format!("error: {err}\n"),
        },
    };
    if cli.timing {
        outcome
            .stderr
            .push_str(&format!("elapsed: {:.3} ms\n", elapsed.as_secs_f64() * 1e3));
    }
    outcome
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn error_json(err: &CliError) -> String {
    pretty(&json!({"error": {"kind": err.kind(), "message": err.to_string()}}))
}

fn dispatch(cli: &Cli, env_bounds: Option<&str>) -> Result<Report, CliError> {
    match &cli.command {
        Command::ReferenceExamples => return Ok(reference::run()),
        Command::VerifyCert { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
            let v = cert::verify_certificate_text(&text)?;
            let value = json!({"valid": true, "verdict": v.verdict, "detail": v.detail});
            return Ok(Report::ok(
                value,
                format!("valid {} certificate: {}\n", v.verdict, v.detail),
            ));
        }
        _ => {}
    }
    if let Command::CharpCheck {
        map,
        p,
        max_power,
        coeff_range,
        aux_degree,
        max_degree,
        out,
    } = &cli.command
    {
        let ring = match p {
            Some(p) => Ring::dual(&Ring::prime_field(*p)?)?,
            None => parse_ring(&cli.ring)?,
        };
        let mut bounds = match env_bounds {
            Some(text) => parse_bounds(text)?,
            None => SearchBounds::default(),
        };
        for (flag, slot) in [
            (max_power, &mut bounds.max_power),
            (coeff_range, &mut bounds.coeff_range),
            (aux_degree, &mut bounds.aux_degree),
            (max_degree, &mut bounds.max_degree),
        ] {
            if let Some(v) = flag {
                *slot = *v;
            }
        }
        let phi = parse_map(map, &ring)?;
        return charp_check(&phi, &bounds, out.as_ref());
    }

    let ring = parse_ring(&cli.ring)?;
    match &cli.command {
        Command::Compose { maps } => {
            let parsed = maps
                .iter()
                .map(|m| parse_map(m, &ring))
                .collect::<Result<Vec<_>, _>>()?;
            let mut acc = parsed.last().expect("at least two maps").clone();
            for outer in parsed.iter().rev().skip(1) {
                acc = outer.compose(&acc)?;
            }
            Ok(Report::ok(
                json!({"ring": ring.to_string(), "result": acc.to_string()}),
                format!("{acc}\n"),
            ))
        }
        Command::Invert { map } => {
            let phi = parse_map(map, &ring)?;
            let inv = try_invert(&phi)?;
            Ok(Report::ok(
                json!({"ring": ring.to_string(), "map": phi.to_string(), "inverse": inv.to_string()}),
                format!("{inv}\n"),
            ))
        }
        Command::Jacobian { map } => {
            let phi = parse_map(map, &ring)?;
            let det = phi.jacobian_det();
            Ok(Report::ok(
                json!({"ring": ring.to_string(), "map": phi.to_string(), "jacobian": det.to_string()}),
                format!("{det}\n"),
            ))
        }
        Command::IsAutomorphism { map } => {
            let phi = parse_map(map, &ring)?;
            is_automorphism(&phi)
        }
        Command::Decompose {
            map,
            elementary,
            out,
        } => {
            let phi = parse_map(map, &ring)?;
            let cert = decompose(&phi, *elementary)?;
            let value = cert::certificate_json(&cert, "tame");
            write_out(out.as_ref(), &value)?;
            let human = render_certificate(&value);
            Ok(Report::ok(value, human))
        }
        Command::CharpCheck { .. } | Command::VerifyCert { .. } | Command::ReferenceExamples => {
            unreachable!("handled above")
        }
    }
}

fn is_automorphism(phi: &AutoMap) -> Result<Report, CliError> {
    let ring = phi.ring();
    let (answer, detail) = if !phi.unit_jacobian() {
        (
            false,
            format!("Jacobian determinant {} is not a unit", phi.jacobian_det()),
        )
    } else {
        match try_invert(phi) {
            Ok(inv) => (true, format!("inverse {inv}")),
            Err(tame2::Error::NotInvertible(reason) | tame2::Error::NotAnAutomorphism(reason)) => {
                (false, reason)
            }
            Err(e) => return Err(e.into()),
        }
    };
    Ok(Report::ok(
        json!({
            "ring": ring.to_string(),
            "map": phi.to_string(),
            "automorphism": answer,
            "detail": detail,
        }),
        format!("{}: {detail}\n", if answer { "yes" } else { "no" }),
    ))
}

fn decompose(phi: &AutoMap, elementary: bool) -> Result<Certificate, CliError> {
    let ring = phi.ring();
    let cert = if ring.is_field() {
        if elementary {
            sa_to_ea_factors(phi)?
        } else {
            jvdk_decompose(phi)?
        }
    } else if ring.is_truncated() && *ring.base().kind() == RingKind::Rationals {
        lift_decompose(phi)?
    } else if ring.is_truncated() && elementary {
        sa_to_ea_factors(phi)?
    } else {
        return Err(tame2::Error::unsupported(
            ring,
            "decompose works over fields and QQ[t]/(t^m); use charp-check over GF(p)[t]/(t^2)",
        )
        .into());
    };
    if !cert.verify() {
        return Err(tame2::Error::Internal("certificate does not recompose".into()).into());
    }
    Ok(cert)
}

fn charp_check(
    phi: &AutoMap,
    bounds: &SearchBounds,
    out: Option<&PathBuf>,
) -> Result<Report, CliError> {
    let verdict = decide_tameness(phi, bounds)?;
    let value = cert::verdict_json(phi, &verdict);
    write_out(out, &value)?;
    let code = match verdict {
        TamenessVerdict::Tame(_) => 0,
        TamenessVerdict::NotTame(_) => 2,
        TamenessVerdict::Inconclusive { .. } => 3,
    };
    let mut human = render_certificate(&value);
    match &verdict {
        TamenessVerdict::NotTame(tame2::Obstruction::Monomial(w)) => {
            human.push_str(&format!("reason: {}\n", w.explanation()));
        }
        TamenessVerdict::Inconclusive { .. } => {
            human.push_str("reason: no obstruction found and no decomposition within the bounds\n");
        }
        _ => {}
    }
    Ok(Report { code, value, human })
}

fn write_out(out: Option<&PathBuf>, value: &Value) -> Result<(), CliError> {
    if let Some(path) = out {
        std::fs::write(path, pretty(value))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Plain-text rendering of a certificate object.
fn render_certificate(v: &Value) -> String {
    let obj = v.as_object().expect("object");
    let mut out = String::new();
    for key in ["ring", "target", "verdict"] {
        if let Some(x) = obj.get(key) {
            out.push_str(&format!("{key}: {}\n", compact(x)));
        }
    }
    if let Some(Value::Array(factors)) = obj.get("factors") {
        if !factors.is_empty() {
            out.push_str(&format!(
                "factors ({}, leftmost applied last):\n",
                factors.len()
            ));
            for (i, f) in factors.iter().enumerate() {
                out.push_str(&format!(
                    "  {:>3}. {:<6} {}\n",
                    i + 1,
                    compact(&f["kind"]),
                    compact(&f["data"])
                ));
            }
        }
    }
    if let Some(w) = obj.get("witness") {
        out.push_str("witness:\n");
        for (k, x) in w.as_object().expect("object") {
            out.push_str(&format!("  {k}: {}\n", compact(x)));
        }
    }
    if let Some(Value::Array(cs)) = obj.get("constraints") {
        out.push_str("constraints:\n");
        for c in cs {
            out.push_str(&format!(
                "  monomial {} congruences {} residues {}\n",
                compact(&c["monomial"]),
                compact(&c["congruences"]),
                compact(&c["residues"])
            ));
        }
    }
    if let Some(b) = obj.get("bounds") {
        out.push_str(&format!("bounds: {}\n", compact(b)));
    }
    out
}
