//! Command-line front end. Every report carries a header with the canonical
//! configuration, the seed and the program version so runs can be replayed.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::criteria::{
    bad_set_lemma21, bad_sets, check_main_theorem, conjecture_scan, morse_scan, report_json,
    scan_json,
};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::parse::parse_unipoly;
use crate::stats::{count_bad_s, interval_distribution, Mode};
use crate::unipoly::UniPoly;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "factype", version, about = "Factorization types of f(T) + sT + b over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Field as "p^k" or "p".
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Defining polynomial as base-p digits "c0,c1,...,1".
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    /// Polynomial in T, e.g. "T^12+T^3" or "(g+1)*T^2+g".
    #[arg(long, global = true)]
    pub poly: Option<String>,
    /// Number of free low coefficients minus one (0 or 1).
    #[arg(long, global = true, default_value_t = 0)]
    pub m: u32,
    /// Fixed coefficient of T (encoding), with m = 0.
    #[arg(long, global = true)]
    pub s: Option<u64>,
    /// Sample size instead of exhaustive enumeration.
    #[arg(long, global = true)]
    pub sample: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Constant C in the deviation threshold C / sqrt(q).
    #[arg(long, global = true, default_value_t = 3.0)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; written atomically. Defaults to standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest degree for the conjecture scan.
    #[arg(long, global = true)]
    pub dmax: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Hypotheses of the equidistribution criteria for one polynomial.
    Check,
    /// Factorization-type distribution over a short interval.
    Dist,
    /// Exceptional loci B1 and B2 and their bounds.
    Badset {
        /// Also sweep s for geometric reducibility of tilde(f) + s.
        #[arg(long)]
        geometric: bool,
    },
    /// Count the s whose slice f + sT + b deviates beyond the tolerance.
    Badsweep,
    /// Search for nonconstant gcds among all monic f with f'' != 0.
    Conjecture,
    /// List the s for which f + sT is Morse.
    MorseScan,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Dist => "dist",
            Command::Badset { .. } => "badset",
            Command::Badsweep => "badsweep",
            Command::Conjecture => "conjecture",
            Command::MorseScan => "morse-scan",
        }
    }
}

/// A validated invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub field: Arc<Field>,
    pub poly: Option<UniPoly>,
    pub m: u32,
    pub s: Option<Elem>,
    pub sample: Option<u64>,
    pub seed: u64,
    pub tolerance: f64,
    pub format: Format,
    pub dmax: Option<usize>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<RunConfig> {
        let spec = cli
            .field
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("--field is required".into()))?;
        let modulus = cli
            .modulus
            .as_deref()
            .map(|m| {
                m.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad modulus {m:?}")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .transpose()?;
        let field = Field::from_spec(spec, modulus.as_deref())?;
        let needs_poly = cli.command != Command::Conjecture;
        let poly = match (&cli.poly, needs_poly) {
            (Some(text), true) => Some(parse_unipoly(&field, text)?),
            (None, true) => return Err(Error::InvalidArgument("--poly is required".into())),
            (_, false) => None,
        };
        if cli.command == Command::Conjecture && cli.dmax.is_none() {
            return Err(Error::InvalidArgument("--dmax is required".into()));
        }
        let s = cli.s.map(|s| field.elem(s)).transpose()?;
        Ok(RunConfig {
            command: cli.command.clone(),
            field,
            poly,
            m: cli.m,
            s,
            sample: cli.sample,
            seed: cli.seed,
            tolerance: cli.tolerance,
            format: cli.format,
            dmax: cli.dmax,
        })
    }

    /// Parses a string produced by [`RunConfig::canonical`].
    pub fn from_canonical(text: &str) -> Result<RunConfig> {
        let cli = Cli::try_parse_from(text.split_whitespace())
            .map_err(|e| Error::Parse(e.to_string()))?;
        RunConfig::from_cli(&cli)
    }

    /// The invocation as a normalized command line.
    pub fn canonical(&self) -> String {
        let modulus: Vec<String> = self.field.modulus().iter().map(u32::to_string).collect();
        let mut parts = vec![
            "factype".to_string(),
            self.command.name().to_string(),
            format!("--field {}", self.field),
            format!("--modulus {}", modulus.join(",")),
        ];
        if let Command::Badset { geometric: true } = self.command {
            parts.push("--geometric".into());
        }
        if let Some(p) = &self.poly {
            parts.push(format!("--poly {p}"));
        }
        if self.command == Command::Dist {
            parts.push(format!("--m {}", self.m));
        }
        if let Some(s) = self.s {
            parts.push(format!("--s {}", s.encoding()));
        }
        if let Some(n) = self.sample {
            parts.push(format!("--sample {n}"));
        }
        if let Some(d) = self.dmax {
            parts.push(format!("--dmax {d}"));
        }
        parts.push(format!("--seed {}", self.seed));
        parts.push(format!("--tolerance {}", self.tolerance));
        let format = match self.format {
            Format::Json => "json",
            Format::Csv => "csv",
        };
        parts.push(format!("--format {format}"));
        parts.join(" ")
    }

    fn poly(&self) -> &UniPoly {
        self.poly.as_ref().expect("validated")
    }
}

enum Body {
    Json(Value),
    /// CSV text together with its JSON rendering.
    Table(String, Value),
}

/// Runs a validated configuration, returning the exit code and the report text.
pub fn execute(cfg: &RunConfig) -> Result<(i32, String)> {
    let mut code = 0;
    let body = match &cfg.command {
        Command::Check => {
            let r = check_main_theorem(cfg.poly())?;
            if !r.verdicts.main_theorem {
                code = 1;
            }
            Body::Json(report_json(&r, None))
        }
        Command::Dist => {
            let mode = match cfg.sample {
                Some(n) => Mode::Sampled { n, seed: cfg.seed },
                None => Mode::Exhaustive,
            };
            let r = interval_distribution(cfg.poly(), cfg.m, cfg.s, mode)?;
            Body::Table(r.to_csv(), r.to_json())
        }
        Command::Badset { geometric } => {
            let f = cfg.poly();
            let check = check_main_theorem(f)?;
            let mut bad = bad_sets(f)?;
            if *geometric {
                bad.lemma21_bad_s = Some(bad_set_lemma21(f, &cfg.field)?);
            }
            Body::Json(report_json(&check, Some(&bad)))
        }
        Command::Badsweep => {
            let r = count_bad_s(cfg.poly(), cfg.tolerance)?;
            Body::Table(r.to_csv(), r.to_json())
        }
        Command::Conjecture => {
            let r = conjecture_scan(&cfg.field, cfg.dmax.expect("validated"))?;
            Body::Json(scan_json(&r))
        }
        Command::MorseScan => {
            let f = cfg.poly();
            let good = morse_scan(f)?;
            let mut csv = String::from("s;morse\n");
            for s in cfg.field.elements() {
                csv.push_str(&format!("{};{}\n", s.encoding(), good.contains(&s)));
            }
            let v = json!({
                "f": f.to_string(),
                "field": cfg.field.to_string(),
                "q": cfg.field.size(),
                "morse_count": good.len(),
                "morse_s": good.iter().map(|e| e.encoding()).collect::<Vec<_>>(),
            });
            Body::Table(csv, v)
        }
    };
    let text = match (cfg.format, body) {
        (Format::Json, Body::Json(v) | Body::Table(_, v)) => {
            let doc = json!({
                "header": {"config": cfg.canonical(), "seed": cfg.seed, "version": VERSION},
                "report": v,
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        (Format::Csv, Body::Table(csv, _)) => format!(
            "# config: {}\n# seed: {}\n# version: {}\n{csv}",
            cfg.canonical(),
            cfg.seed,
            VERSION
        ),
        (Format::Csv, Body::Json(_)) => {
            return Err(Error::InvalidArgument(format!(
                "csv output is not available for {}",
                cfg.command.name()
            )))
        }
    };
    Ok((code, text))
}

fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Entry point: parses arguments, runs, writes the report, returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = RunConfig::from_cli(&cli).and_then(|cfg| execute(&cfg));
    let (code, text) = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let written = match &cli.out {
        Some(path) => write_atomically(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    code
}
