//! The `ramify2` command line.
//!
//! Exit status is 0 on success, 1 when the input is well formed but the
//! computation fails (infeasible cap, invalid slope, survivors left) and 2
//! on usage errors, malformed slope contents and numbers included. Every
//! number is printed exactly.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::catalog::Catalog;
use crate::composita::{check_compositum_bounds, compose_many};
use crate::pipeline::{self, Mode};
use crate::rational::{format_rational, parse_decimal, parse_rational, Rational};
use crate::slope::{parse_slope_content, SlopeContent, SlopeError, DEFAULT_PRIME};
use crate::tables::order_bound_for_gms;
use crate::towers::{simulate_tower, NuChoice, TowerSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ramify2",
    version,
    about = "Exact 2-adic slope bounds and group elimination"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Paper,
    Exhaustive,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => Mode::Paper,
            ModeArg::Exhaustive => Mode::Exhaustive,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Galois mean slope of a slope content.
    Gms {
        content: String,
        #[arg(short, default_value_t = DEFAULT_PRIME)]
        p: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Slope content bound for a compositum.
    Compose {
        #[arg(required = true, num_args = 1..)]
        contents: Vec<String>,
        #[arg(long)]
        max_wild: Option<usize>,
        #[arg(short, default_value_t = DEFAULT_PRIME)]
        p: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a candidate compositum content against its two factors.
    Check {
        a: String,
        b: String,
        beta: String,
        #[arg(short, default_value_t = DEFAULT_PRIME)]
        p: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Discriminant exponents and average slopes in a tower.
    Tower {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        e: u64,
        #[arg(short)]
        f: u64,
        /// Exponent of the base; defaults to f(e-1).
        #[arg(long, allow_hyphen_values = true)]
        c0: Option<BigInt>,
        /// `min`, `max` or a comma-separated list of integers.
        #[arg(long)]
        nu: String,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Group-order bound implied by a gms bound.
    Bound {
        #[arg(long, allow_hyphen_values = true)]
        gms: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// gms caps per number of wild slopes for a degree.
    Caps {
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value = "paper")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Staged elimination for one degree.
    Eliminate {
        #[arg(long)]
        degree: u32,
        #[arg(long, env = "RAMIFY2_CATALOG")]
        catalog: PathBuf,
        #[arg(long, value_enum, default_value = "paper")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Full run over degrees 9 to 15.
    Report {
        #[arg(long, env = "RAMIFY2_CATALOG")]
        catalog: PathBuf,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "paper")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// A failed command: message for stderr and exit status.
#[derive(Debug)]
struct Failure(String, i32);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string(), EXIT_DOMAIN)
    }
}

fn usage(message: String) -> Failure {
    Failure(message, EXIT_USAGE)
}

type Outcome = Result<i32, Failure>;

fn content(text: &str, p: u64) -> Result<SlopeContent, Failure> {
    parse_slope_content(text, p).map_err(|e| {
        let message = format!("{text:?}: {e}");
        match e {
            SlopeError::Syntax { .. } => usage(message),
            _ => Failure(message, EXIT_DOMAIN),
        }
    })
}

fn emit(out: &mut dyn Write, format: Format, text: &str, value: serde_json::Value) -> Outcome {
    match format {
        Format::Text => write!(out, "{text}")?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?,
    }
    Ok(EXIT_OK)
}

fn gms(out: &mut dyn Write, text: &str, p: u64, format: Format) -> Outcome {
    let sc = content(text, p)?;
    let g = format_rational(&sc.gms());
    emit(
        out,
        format,
        &format!("{g}\n"),
        json!({ "content": sc, "gms": g }),
    )
}

fn compose(
    out: &mut dyn Write,
    texts: &[String],
    max_wild: Option<usize>,
    p: u64,
    format: Format,
) -> Outcome {
    let parts = texts
        .iter()
        .map(|t| content(t, p))
        .collect::<Result<Vec<_>, _>>()?;
    let result = compose_many(&parts, max_wild)?;
    emit(
        out,
        format,
        &format!("{result}\n"),
        json!({ "content": result, "max_wild": max_wild }),
    )
}

fn check(out: &mut dyn Write, a: &str, b: &str, beta: &str, p: u64, format: Format) -> Outcome {
    let (a, b, beta) = (content(a, p)?, content(b, p)?, content(beta, p)?);
    let ok = check_compositum_bounds(&a, &b, &beta)?;
    let word = if ok { "consistent" } else { "inconsistent" };
    emit(
        out,
        format,
        &format!("{word}\n"),
        json!({ "consistent": ok }),
    )?;
    Ok(if ok { EXIT_OK } else { EXIT_DOMAIN })
}

fn parse_nu(text: &str, steps: Option<usize>) -> Result<Vec<NuChoice>, Failure> {
    let fixed = |choice: NuChoice| match steps {
        Some(k) => Ok(vec![choice; k]),
        None => Err(usage(format!("--nu {text} needs --steps"))),
    };
    match text {
        "min" => fixed(NuChoice::Min),
        "max" => fixed(NuChoice::Max),
        list => {
            let values = list
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<BigInt>()
                        .map(NuChoice::Value)
                        .map_err(|_| usage(format!("bad nu value {v:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(k) = steps {
                if k != values.len() {
                    return Err(usage(format!(
                        "--steps {k} but {} nu values given",
                        values.len()
                    )));
                }
            }
            Ok(values)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn tower(
    out: &mut dyn Write,
    p: u64,
    e: u64,
    f: u64,
    c0: Option<BigInt>,
    nu: &str,
    steps: Option<usize>,
    format: Format,
) -> Outcome {
    let mut spec = TowerSpec::over_tame_base(p, e, f, parse_nu(nu, steps)?);
    if let Some(c0) = c0 {
        spec.c0 = c0;
    }
    let trace = simulate_tower(&spec)?;
    let mut text = format!("c0 = {}\n", trace.exponents[0]);
    for i in 0..trace.slopes.len() {
        text.push_str(&format!(
            "step {}: nu={} c={} S={}",
            i + 1,
            trace.nus[i],
            trace.exponents[i + 1],
            format_rational(&trace.slopes[i])
        ));
        if i > 0 {
            text.push_str(&format!(
                " dS={}",
                format_rational(&trace.differences[i - 1])
            ));
        }
        text.push('\n');
    }
    emit(out, format, &text, serde_json::to_value(&trace)?)
}

fn bound(out: &mut dyn Write, text: &str, format: Format) -> Outcome {
    let g: Rational = parse_rational(text)
        .or_else(|| parse_decimal(text))
        .ok_or_else(|| usage(format!("bad rational {text:?}")))?;
    let n = order_bound_for_gms(&g)?;
    emit(
        out,
        format,
        &format!("{n}\n"),
        json!({ "gms": format_rational(&g), "order_bound": n }),
    )
}

fn caps(out: &mut dyn Write, degree: u32, mode: Mode, format: Format) -> Outcome {
    let caps = pipeline::gms_caps_for_degree(degree, mode)?;
    let mut text = format!("degree {degree} ({}, {mode} mode)\n", caps.class);
    for e in &caps.entries {
        text.push_str(&format!(
            "{}: {} {} |G| < {} from {}\n",
            e.bucket,
            format_rational(&e.gms),
            e.content,
            e.order_bound,
            e.source
        ));
    }
    let mut value = serde_json::to_value(&caps)?;
    if mode == Mode::Exhaustive {
        let comparisons = pipeline::compare_modes(degree)?;
        for c in comparisons.iter().filter(|c| c.diverges) {
            text.push_str(&format!(
                "divergence {}: paper {} exhaustive {}{}\n",
                c.bucket,
                format_rational(&c.paper),
                format_rational(&c.exhaustive),
                if c.order_bounds_agree {
                    ", same order bound"
                } else {
                    ", order bounds differ"
                }
            ));
        }
        value["comparison"] = serde_json::to_value(&comparisons)?;
    }
    emit(out, format, &text, value)
}

fn load(path: &PathBuf) -> Result<Catalog, Failure> {
    Ok(Catalog::load(path)?)
}

fn eliminate(
    out: &mut dyn Write,
    degree: u32,
    catalog: &PathBuf,
    mode: Mode,
    format: Format,
) -> Outcome {
    let catalog = load(catalog)?;
    let trace = pipeline::eliminate(degree, &catalog, mode)?;
    emit(out, format, &trace.to_text(), serde_json::to_value(&trace)?)?;
    Ok(if trace.theorem_holds() {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    })
}

fn report(
    out: &mut dyn Write,
    catalog: &PathBuf,
    target: Option<&PathBuf>,
    mode: Mode,
    format: Format,
) -> Outcome {
    let catalog = load(catalog)?;
    let report = pipeline::report(&catalog, mode)?;
    let value = serde_json::to_value(&report)?;
    if let Some(path) = target {
        std::fs::write(path, serde_json::to_string_pretty(&value)? + "\n")
            .map_err(|e| Failure(format!("{}: {e}", path.display()), EXIT_DOMAIN))?;
    }
    emit(out, format, &report.to_text(), value)?;
    Ok(if report.theorem_reproduced {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    })
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Gms { content, p, format } => gms(out, &content, p, format),
        Command::Compose {
            contents,
            max_wild,
            p,
            format,
        } => compose(out, &contents, max_wild, p, format),
        Command::Check {
            a,
            b,
            beta,
            p,
            format,
        } => check(out, &a, &b, &beta, p, format),
        Command::Tower {
            p,
            e,
            f,
            c0,
            nu,
            steps,
            format,
        } => tower(out, p, e, f, c0, &nu, steps, format),
        Command::Bound { gms, format } => bound(out, &gms, format),
        Command::Caps {
            degree,
            mode,
            format,
        } => caps(out, degree, mode.into(), format),
        Command::Eliminate {
            degree,
            catalog,
            mode,
            format,
        } => eliminate(out, degree, &catalog, mode.into(), format),
        Command::Report {
            catalog,
            out: target,
            mode,
            format,
        } => report(out, &catalog, target.as_ref(), mode.into(), format),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure(message, code)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}
