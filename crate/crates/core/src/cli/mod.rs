//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a computation fails (or a theorem sweep finds a
//! counterexample, or a count series is truncated), 2 for usage errors such as unknown flags
//! or malformed polynomials.

pub mod config;
pub mod emit;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::fermat::{flt_orbit_count, flt_orbits};
use crate::field::{find_isomorphism, make_ext_field, roots_of, ExtFieldCtx};
use crate::poly::{parse_coeffs, IntPoly, FIELD_VAR, MAP_VAR};
use crate::theorem::{check_theorem, explore_extended_constants, ConstantRange, SweepSpec};
use crate::zeta::{count_series, CountedSet};
use config::ConfigFile;

/// Field tables print p^n x p^n entries; larger fields are refused.
pub const MAX_TABLE_ORDER: u64 = 1024;

/// Orbits are listed by `fermat --orbits` only up to this many grid points.
pub const MAX_LISTED_FLT_GRID: u64 = 1 << 16;

#[derive(Debug, Parser)]
#[command(name = "ffdyn", version, about = "Polynomial dynamics over finite fields")]
pub struct Cli {
    /// key = value file whose entries fill in flags not given on the command line.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Write output here instead of standard output.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SetArg {
    Periodic,
    Preperiodic,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Addition and multiplication tables of F_{p^n}.
    FieldTable {
        p: u64,
        n: usize,
        #[arg(long, value_name = "POLY")]
        modulus: Option<String>,
    },
    /// Orbit decomposition of a polynomial map on F_{p^n}.
    Orbits {
        p: u64,
        n: usize,
        #[arg(long, value_name = "POLY")]
        map: Option<String>,
        #[arg(long, value_name = "POLY")]
        modulus: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check that t^(p^m) + c has no preperiodic points over every F_{p^n} in the sweep.
    CheckTheorem {
        /// Primes p, comma separated [default: 2,3,5]
        #[arg(long, value_delimiter = ',', value_name = "LIST")]
        primes: Option<Vec<u64>>,
        /// Exponents m [default: 1,2]
        #[arg(long, value_delimiter = ',', value_name = "LIST")]
        m: Option<Vec<u32>>,
        /// Extension degrees n [default: 1,2,3]
        #[arg(long, value_delimiter = ',', value_name = "LIST")]
        n: Option<Vec<usize>>,
        /// Constants c (reduced mod p); all of F_p when omitted.
        #[arg(long, value_delimiter = ',', value_name = "LIST", allow_negative_numbers = true)]
        c: Option<Vec<i64>>,
        /// Also report maps with c ranging over all of F_{p^n}.
        #[arg(long)]
        extended: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Periodic and preperiodic counts over F_p, ..., F_{p^M} as CSV.
    Counts {
        p: u64,
        #[arg(value_name = "M")]
        max_m: u32,
        #[arg(long, value_name = "POLY")]
        map: Option<String>,
        #[arg(long, value_enum)]
        set: Option<SetArg>,
    },
    /// Count T_a orbits on the fixed points of T_(a^p).
    Fermat {
        a: u64,
        p: u64,
        /// List the orbits as fractions.
        #[arg(long)]
        orbits: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Explicit isomorphism between two presentations of F_{p^n}.
    Isomorphism {
        p: u64,
        n: usize,
        #[arg(long = "modulus-a", value_name = "POLY")]
        modulus_a: Option<String>,
        #[arg(long = "modulus-b", value_name = "POLY")]
        modulus_b: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Roots of an integer polynomial in F_{p^n}.
    Roots {
        p: u64,
        n: usize,
        #[arg(long, value_name = "POLY")]
        poly: Option<String>,
        #[arg(long, value_name = "POLY")]
        modulus: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

/// Failure of a CLI invocation, split by exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => CliError::Usage(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

/// Successful output plus whether the run should still exit nonzero.
struct Outcome {
    text: String,
    failed: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, failed: None }
    }
}

/// Runs the CLI with the given arguments (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };

    let result = ConfigFile::default_or_load(cli.config.as_deref())
        .map_err(CliError::Usage)
        .and_then(|cfg| {
            let output = cli
                .output
                .clone()
                .or(cfg.get::<PathBuf>("output").map_err(CliError::Usage)?);
            execute(&cli.command, &cfg).map(|o| (o, output))
        });

    match result {
        Ok((outcome, output)) => {
            let written = match output {
                Some(path) => std::fs::write(&path, outcome.text.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(msg) = written {
                let _ = writeln!(err, "error: {msg}");
                return 1;
            }
            match outcome.failed {
                Some(msg) => {
                    let _ = writeln!(err, "{msg}");
                    1
                }
                None => 0,
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

impl ConfigFile {
    fn default_or_load(path: Option<&std::path::Path>) -> Result<Self, String> {
        match path {
            Some(p) => Self::load(p),
            None => Ok(Self::default()),
        }
    }
}

fn pick<T: std::str::FromStr>(flag: Option<T>, cfg: &ConfigFile, key: &str) -> Result<Option<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => cfg.get(key).map_err(CliError::Usage),
    }
}

fn pick_list<T>(flag: &Option<Vec<T>>, cfg: &ConfigFile, key: &str) -> Result<Option<Vec<T>>, CliError>
where
    T: Clone + std::str::FromStr,
    T::Err: std::fmt::Display,
{
    match flag {
        Some(v) => Ok(Some(v.clone())),
        None => cfg.get_list(key).map_err(CliError::Usage),
    }
}

fn pick_enum<T: ValueEnum>(flag: Option<T>, cfg: &ConfigFile, key: &str) -> Result<Option<T>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    cfg.raw(key)
        .map(|v| T::from_str(v, true).map_err(|e| CliError::Usage(format!("config {key}: {e}"))))
        .transpose()
}

fn pick_flag(flag: bool, cfg: &ConfigFile, key: &str) -> Result<bool, CliError> {
    Ok(flag || pick::<bool>(None, cfg, key)?.unwrap_or(false))
}

fn required(value: Option<String>, flag: &str) -> Result<String, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing required option --{flag}")))
}

fn with_context(what: &str, e: Error) -> CliError {
    match CliError::from(e) {
        CliError::Usage(m) => CliError::Usage(format!("{what}: {m}")),
        CliError::Compute(m) => CliError::Compute(format!("{what}: {m}")),
    }
}

/// Parses modulus text in `x`, reducing coefficients mod p.
fn parse_modulus(text: &str, p: u64, what: &str) -> Result<Vec<u64>, CliError> {
    let coeffs = parse_coeffs(text, FIELD_VAR).map_err(|e| with_context(what, e))?;
    Ok(IntPoly::new(coeffs).reduce_mod(p))
}

fn field(p: u64, n: usize, modulus: Option<&str>, what: &str) -> Result<ExtFieldCtx, CliError> {
    let m = modulus.map(|t| parse_modulus(t, p, what)).transpose()?;
    make_ext_field(p, n, m.as_deref()).map_err(|e| with_context(what, e))
}

fn parse_map(text: &str, what: &str) -> Result<IntPoly, CliError> {
    IntPoly::parse_with_var(text, MAP_VAR).map_err(|e| with_context(what, e))
}

fn unsupported(cmd: &str, f: Format) -> CliError {
    CliError::Usage(format!("{cmd} does not support --format {f:?}").to_lowercase())
}

fn execute(cmd: &Command, cfg: &ConfigFile) -> Result<Outcome, CliError> {
    match cmd {
        Command::FieldTable { p, n, modulus } => {
            let modulus = pick(modulus.clone(), cfg, "modulus")?;
            let ctx = field(*p, *n, modulus.as_deref(), "modulus")?;
            if ctx.order() > MAX_TABLE_ORDER {
                return Err(CliError::Compute(format!(
                    "field of order {} is too large for a table (limit {MAX_TABLE_ORDER})",
                    ctx.order()
                )));
            }
            Ok(Outcome::ok(emit::field_table(&ctx)))
        }
        Command::Orbits {
            p,
            n,
            map,
            modulus,
            format,
        } => {
            let map = required(pick(map.clone(), cfg, "map")?, "map")?;
            let modulus = pick(modulus.clone(), cfg, "modulus")?;
            let format = pick_enum(*format, cfg, "format")?.unwrap_or(Format::Text);
            let f = parse_map(&map, "map")?;
            let ctx = field(*p, *n, modulus.as_deref(), "modulus")?;
            let g = crate::dynamics::build_graph(&f, &ctx);
            let text = match format {
                Format::Dot => emit::emit_dot(&g),
                Format::Json => emit::emit_json(&g, &g.decompose()),
                Format::Text => emit::emit_text(&g, &g.decompose()),
                Format::Csv => return Err(unsupported("orbits", format)),
            };
            Ok(Outcome::ok(text))
        }
        Command::CheckTheorem {
            primes,
            m,
            n,
            c,
            extended,
            format,
        } => {
            let defaults = SweepSpec::default();
            let spec = SweepSpec {
                primes: pick_list(primes, cfg, "primes")?.unwrap_or(defaults.primes),
                m_values: pick_list(m, cfg, "m")?.unwrap_or(defaults.m_values),
                n_values: pick_list(n, cfg, "n")?.unwrap_or(defaults.n_values),
                constants: match pick_list(c, cfg, "c")? {
                    Some(cs) => ConstantRange::Explicit(cs),
                    None => ConstantRange::AllOfFp,
                },
            };
            let extended = pick_flag(*extended, cfg, "extended")?;
            let format = pick_enum(*format, cfg, "format")?.unwrap_or(Format::Text);
            let result = check_theorem(&spec).map_err(|e| with_context("check-theorem", e))?;
            let ext = if extended {
                Some(explore_extended_constants(&spec).map_err(|e| with_context("check-theorem", e))?)
            } else {
                None
            };
            let text = match format {
                Format::Text | Format::Csv => emit::sweep_text(&result, ext.as_deref()),
                Format::Json => emit::sweep_json(&result),
                Format::Dot => return Err(unsupported("check-theorem", format)),
            };
            let failed = (!result.pass()).then(|| {
                format!(
                    "theorem check failed: {} counterexample(s)",
                    result.counterexamples.len()
                )
            });
            Ok(Outcome { text, failed })
        }
        Command::Counts { p, max_m, map, set } => {
            let map = required(pick(map.clone(), cfg, "map")?, "map")?;
            let set = match pick_enum(*set, cfg, "set")? {
                Some(SetArg::Preperiodic) => CountedSet::Preperiodic,
                _ => CountedSet::Periodic,
            };
            let f = parse_map(&map, "map")?;
            let series = count_series(&f, *p, *max_m, set).map_err(|e| with_context("counts", e))?;
            let failed = series.truncated_from.map(|requested| {
                let last = series.rows.len();
                format!(
                    "warning: rows stop at m={last} of {requested} because {p}^{} exceeds the field size bound",
                    last + 1
                )
            });
            Ok(Outcome {
                text: emit::counts_csv(&series),
                failed,
            })
        }
        Command::Fermat { a, p, orbits, format } => {
            let format = pick_enum(*format, cfg, "format")?.unwrap_or(Format::Text);
            let list = pick_flag(*orbits, cfg, "orbits")?;
            let report = flt_orbit_count(*a, *p).map_err(|e| with_context("fermat", e))?;
            let orbit_list = if list {
                if report.total_fixed_of_t_a_pow_p > MAX_LISTED_FLT_GRID {
                    return Err(CliError::Compute(format!(
                        "too many points to list orbits (limit {MAX_LISTED_FLT_GRID})"
                    )));
                }
                Some(flt_orbits(*a, *p).map_err(|e| with_context("fermat", e))?)
            } else {
                None
            };
            let text = match format {
                Format::Text => emit::fermat_text(&report, orbit_list.as_deref()),
                Format::Json => emit::fermat_json(&report, orbit_list.as_deref()),
                other => return Err(unsupported("fermat", other)),
            };
            Ok(Outcome::ok(text))
        }
        Command::Isomorphism {
            p,
            n,
            modulus_a,
            modulus_b,
            format,
        } => {
            let ma = required(pick(modulus_a.clone(), cfg, "modulus-a")?, "modulus-a")?;
            let mb = required(pick(modulus_b.clone(), cfg, "modulus-b")?, "modulus-b")?;
            let format = pick_enum(*format, cfg, "format")?.unwrap_or(Format::Text);
            let a = field(*p, *n, Some(&ma), "modulus-a")?;
            let b = field(*p, *n, Some(&mb), "modulus-b")?;
            let iso = find_isomorphism(&a, &b).map_err(|e| with_context("isomorphism", e))?;
            let text = match format {
                Format::Text => emit::isomorphism_text(&a, &b, &iso),
                Format::Json => emit::isomorphism_json(&a, &b, &iso),
                other => return Err(unsupported("isomorphism", other)),
            };
            Ok(Outcome::ok(text))
        }
        Command::Roots {
            p,
            n,
            poly,
            modulus,
            format,
        } => {
            let poly = required(pick(poly.clone(), cfg, "poly")?, "poly")?;
            let modulus = pick(modulus.clone(), cfg, "modulus")?;
            let format = pick_enum(*format, cfg, "format")?.unwrap_or(Format::Text);
            let f = parse_map(&poly, "poly")?;
            let ctx = field(*p, *n, modulus.as_deref(), "modulus")?;
            let roots = roots_of(&f, &ctx).map_err(|e| with_context("roots", e))?;
            let text = match format {
                Format::Text => emit::roots_text(&roots),
                Format::Json => emit::roots_json(&ctx, &f, &roots),
                other => return Err(unsupported("roots", other)),
            };
            Ok(Outcome::ok(text))
        }
    }
}
