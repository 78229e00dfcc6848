//! Command-line front end.
//!
//! Every invocation is turned into a [`RunConfig`], optionally layered on
//! top of a JSON config file, and executed by [`run`]. Exit codes: 0 on
//! success, 1 on invalid input, 2 when a `verify` suite fails.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bar_homology::{nonvanishing_check, CupForm};
use crate::char_classes::{
    a_hat, chern_character, family_ch_torus, index_from_pontryagin, odd_family_ch, Algebra, ExteriorElement,
    PontryaginNumbers,
};
use crate::clifford::{build_clifford, GaussMatrix};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, serialize_f64, Rational};
use crate::family_index::{build_w_construction, family_index_t2, FamilyIndexReport, GridSpec};
use crate::spectral_flow::{exact_flow, FlowReport, ParamPath};
use crate::torus_dirac::{spectrum_with, Grouping, SpectrumOptions, TwistParameter};
use crate::verify::{verify_suite, Suite, VerifyOptions};

pub const THREADS_ENV: &str = "DIRAC_FAMILIES_THREADS";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    Torus,
    Pontryagin,
    OddFamily,
}

/// Every parameter of a run. Unset fields take per-command defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    pub dim: Option<usize>,
    pub cutoff: Option<i64>,
    pub twist: Option<String>,
    pub tolerance: Option<f64>,
    pub path: Option<PathBuf>,
    pub grid: Option<usize>,
    pub radius: Option<f64>,
    pub samples: Option<usize>,
    pub rank: Option<i64>,
    pub c1: Option<String>,
    pub c2: Option<String>,
    pub betti: Option<usize>,
    pub cup: Option<String>,
    pub formula: Option<Formula>,
    pub p1: Option<String>,
    pub p1_squared: Option<String>,
    pub p2: Option<String>,
    pub suite: Option<String>,
    pub max_dim: Option<usize>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merged(self, over: RunConfig) -> RunConfig {
        macro_rules! pick {
            ($($f:ident),*) => { RunConfig { $($f: over.$f.or(self.$f)),* } };
        }
        pick!(command, dim, cutoff, twist, tolerance, path, grid, radius, samples, rank, c1, c2, betti, cup, formula, p1,
              p1_squared, p2, suite, max_dim, format, output, threads)
    }
}

#[derive(Debug, Parser)]
#[command(name = "dirac-families", version, about = "Twisted Dirac operators on flat tori: spectra, spectral flow, family indices")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// JSON file with default parameters; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for parallel loops.
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum of the twisted Dirac operator on the mode box |k| <= K.
    Spectrum {
        #[arg(long)]
        dim: Option<usize>,
        /// Comma-separated coordinates, exact (`1/3`) or decimal.
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<String>,
        #[arg(long)]
        cutoff: Option<i64>,
        /// Merge eigenvalues closer than this.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Exact spectral flow along a piecewise-linear path read from a JSON file.
    Flow {
        #[arg(long)]
        path: Option<PathBuf>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        cutoff: Option<i64>,
    },
    /// First Chern number of the index bundle over the parameter torus.
    IndexFamily {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        cutoff: Option<i64>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Chern character rank + c1 + (c1^2 - 2 c2)/2 of formal classes.
    Chern {
        #[arg(long, allow_hyphen_values = true)]
        rank: Option<i64>,
        /// Name of the degree-2 class, or 0.
        #[arg(long)]
        c1: Option<String>,
        /// Name of the degree-4 class, or 0.
        #[arg(long)]
        c2: Option<String>,
    },
    /// The A-hat series truncated at the manifold dimension.
    Ahat {
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Index formulas: torus family, Pontryagin numbers, odd family.
    IndexFormula {
        #[arg(value_enum)]
        formula: Option<Formula>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        betti: Option<usize>,
        #[arg(long)]
        cup: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p1_squared: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p2: Option<String>,
    },
    /// Ranks of the twisted de Rham complex of a triple cup product.
    Bar {
        #[arg(long)]
        betti: Option<usize>,
        /// For example "1,2,3:1; 4,5,6:1" (one-based indices).
        #[arg(long)]
        cup: Option<String>,
    },
    /// Clifford generators and their relations.
    Clifford {
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Run a named verification suite.
    Verify {
        suite: Option<String>,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
    },
}

impl Cli {
    fn into_config(self) -> RunConfig {
        let mut c = RunConfig { format: self.format, output: self.output, threads: self.threads, ..Default::default() };
        let Some(cmd) = self.command else { return c };
        match cmd {
            Command::Spectrum { dim, twist, cutoff, tolerance } => {
                c.command = Some("spectrum".into());
                (c.dim, c.twist, c.cutoff, c.tolerance) = (dim, twist, cutoff, tolerance);
            }
            Command::Flow { path, dim, cutoff } => {
                c.command = Some("flow".into());
                (c.path, c.dim, c.cutoff) = (path, dim, cutoff);
            }
            Command::IndexFamily { dim, cutoff, grid, radius, samples } => {
                c.command = Some("index-family".into());
                (c.dim, c.cutoff, c.grid, c.radius, c.samples) = (dim, cutoff, grid, radius, samples);
            }
            Command::Chern { rank, c1, c2 } => {
                c.command = Some("chern".into());
                (c.rank, c.c1, c.c2) = (rank, c1, c2);
            }
            Command::Ahat { dim } => {
                c.command = Some("ahat".into());
                c.dim = dim;
            }
            Command::IndexFormula { formula, dim, betti, cup, p1, p1_squared, p2 } => {
                c.command = Some("index-formula".into());
                (c.formula, c.dim, c.betti, c.cup, c.p1, c.p1_squared, c.p2) = (formula, dim, betti, cup, p1, p1_squared, p2);
            }
            Command::Bar { betti, cup } => {
                c.command = Some("bar".into());
                (c.betti, c.cup) = (betti, cup);
            }
            Command::Clifford { dim } => {
                c.command = Some("clifford".into());
                c.dim = dim;
            }
            Command::Verify { suite, max_dim, dim } => {
                c.command = Some("verify".into());
                (c.suite, c.max_dim, c.dim) = (suite, max_dim, dim);
            }
        }
        c
    }
}

/// Result of one run: exit code and the text destined for stdout/stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn invalid(e: &Error) -> Self {
        #[derive(Serialize)]
        struct Body<'a> {
            error: &'a str,
            message: String,
        }
        let body = serde_json::to_string(&Body { error: e.reason(), message: e.to_string() }).expect("serializable");
        Outcome { code: 1, stdout: String::new(), stderr: body + "\n" }
    }
}

/// Parses arguments (including the program name) into a merged config.
pub fn parse_args<I, T>(args: I) -> std::result::Result<RunConfig, Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return Err(match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    Outcome { code: 0, stdout: e.to_string(), stderr: String::new() }
                }
                _ => {
                    let mut o = Outcome::invalid(&Error::Parse(e.kind().to_string()));
                    o.stderr.push_str(&e.to_string());
                    o
                }
            });
        }
    };
    let config_path = cli.config.clone();
    let over = cli.into_config();
    match config_path {
        None => Ok(over),
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| Outcome::invalid(&Error::Parse(format!("cannot read {}: {e}", p.display()))))?;
            let base = RunConfig::from_json(&text).map_err(|e| Outcome::invalid(&e))?;
            Ok(base.merged(over))
        }
    }
}

/// Parses, runs, and writes the report (to `--output` if given).
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(args) {
        Ok(cfg) => run(&cfg),
        Err(o) => o,
    }
}

/// Executes a config. The report goes to `config.output` when set and to
/// the returned stdout otherwise.
pub fn run(config: &RunConfig) -> Outcome {
    let (code, report) = match execute(config) {
        Ok(r) => r,
        Err(e) => return Outcome::invalid(&e),
    };
    let mut stderr = String::new();
    if code == 2 {
        stderr.push_str("{\"error\":\"verify_failed\",\"message\":\"one or more checks failed\"}\n");
    }
    match &config.output {
        Some(p) => match std::fs::write(p, &report) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr },
            Err(e) => Outcome::invalid(&Error::Parse(format!("cannot write {}: {e}", p.display()))),
        },
        None => Outcome { code, stdout: report, stderr },
    }
}

fn require<T: Clone>(v: &Option<T>, name: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::Parse(format!("missing required parameter --{name}")))
}

fn check_range<T: PartialOrd + std::fmt::Display>(v: T, lo: T, hi: T, name: &str) -> Result<T> {
    if v < lo || v > hi {
        return Err(Error::Parse(format!("--{name} = {v} outside {lo}..={hi}")));
    }
    Ok(v)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable") + "\n"
}

fn csv_unsupported(cmd: &str) -> Error {
    Error::Unsupported(format!("csv output is not available for {cmd}"))
}

fn execute(cfg: &RunConfig) -> Result<(i32, String)> {
    let format = cfg.format.unwrap_or_default();
    let command = cfg.command.as_deref().ok_or_else(|| Error::Parse("no command given".into()))?;
    if let Some(t) = cfg.threads {
        check_range(t, 1, 4096, "threads")?;
    }
    let ok = |s: String| Ok((0, s));
    match command {
        "spectrum" => ok(cmd_spectrum(cfg, format)?),
        "flow" => ok(cmd_flow(cfg, format)?),
        "index-family" => ok(cmd_index_family(cfg, format)?),
        "chern" => ok(cmd_chern(cfg, format)?),
        "ahat" => ok(cmd_ahat(cfg, format)?),
        "index-formula" => ok(cmd_index_formula(cfg, format)?),
        "bar" => ok(cmd_bar(cfg, format)?),
        "clifford" => ok(cmd_clifford(cfg, format)?),
        "verify" => cmd_verify(cfg, format),
        other => Err(Error::Parse(format!("unknown command {other:?}"))),
    }
}

fn cmd_spectrum(cfg: &RunConfig, format: Format) -> Result<String> {
    let twist = match &cfg.twist {
        Some(t) => Some(TwistParameter::parse(t)?),
        None => None,
    };
    let dim = match (cfg.dim, &twist) {
        (Some(d), _) => d,
        (None, Some(t)) => t.dim(),
        (None, None) => return Err(Error::Parse("missing required parameter --dim".into())),
    };
    let twist = twist.unwrap_or_else(|| TwistParameter::zero(dim));
    let cutoff = cfg.cutoff.unwrap_or(3);
    let mut opts = SpectrumOptions::default();
    if let Some(t) = cfg.tolerance {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::Parse(format!("--tolerance = {t} must be a nonnegative number")));
        }
        opts.grouping = Grouping::Tolerance(t);
    }
    let s = spectrum_with(dim, &twist, cutoff, &opts)?;
    Ok(match format {
        Format::Json => s.to_json() + "\n",
        Format::Csv => s.to_csv(),
        Format::Table => {
            let mut out = format!("n = {}, c = {}, K = {}, complete for |lambda| <= {}\n", s.dim, s.twist, s.cutoff, s.completeness_radius);
            out.push_str("lambda                  multiplicity\n");
            for e in &s.entries {
                let _ = writeln!(out, "{:<24}{}", crate::exact::format_f64(e.value.value()), e.multiplicity);
            }
            out
        }
    })
}

#[derive(Serialize)]
struct FlowOutput<'a> {
    dim: usize,
    cutoff: i64,
    closed: bool,
    #[serde(flatten)]
    report: &'a FlowReport,
}

fn cmd_flow(cfg: &RunConfig, format: Format) -> Result<String> {
    let p = require(&cfg.path, "path")?;
    let text = std::fs::read_to_string(&p).map_err(|e| Error::InvalidPath(format!("cannot read {}: {e}", p.display())))?;
    let path = ParamPath::from_json(&text)?;
    if let Some(d) = cfg.dim {
        if d != path.dim() {
            return Err(Error::WrongDimension { expected: d, got: path.dim() });
        }
    }
    let cutoff = match cfg.cutoff {
        Some(k) => k,
        None => {
            let needed = (path.sup_norm() + crate::exact::int(1)).ceil().to_integer();
            i64::try_from(needed).map_err(|_| Error::InvalidPath("path is too long".into()))?.max(1)
        }
    };
    let report = exact_flow(path.dim(), &path, cutoff)?;
    Ok(match format {
        Format::Json => json(&FlowOutput { dim: path.dim(), cutoff, closed: path.is_closed(), report: &report }),
        Format::Csv | Format::Table => {
            let sep = if format == Format::Csv { "," } else { "  " };
            let mut out = if format == Format::Csv {
                String::from("segment,branch,at,direction\n")
            } else {
                format!("flow = {} ({} crossings, {} touches)\n", report.flow, report.crossings.len(), report.touches.len())
            };
            for c in &report.crossings {
                let branch: Vec<String> = c.branch.iter().map(i64::to_string).collect();
                let _ = writeln!(out, "{}{sep}{}{sep}{}{sep}{}", c.segment, branch.join(";"), crate::exact::format_f64(c.at), c.direction);
            }
            out
        }
    })
}

#[derive(Serialize)]
struct WSummary {
    grid: usize,
    w_modes: Vec<Vec<i64>>,
    w_dim: usize,
    fiber_dims: Vec<usize>,
    index_rank: Option<i64>,
    #[serde(serialize_with = "serialize_f64")]
    min_certificate: f64,
}

#[derive(Serialize)]
struct IndexFamilyOutput {
    #[serde(flatten)]
    report: FamilyIndexReport,
    #[serde(serialize_with = "serialize_f64")]
    radius: f64,
    samples: usize,
    w_construction: WSummary,
}

fn cmd_index_family(cfg: &RunConfig, format: Format) -> Result<String> {
    let dim = cfg.dim.unwrap_or(2);
    if dim != 2 {
        return Err(Error::WrongDimension { expected: 2, got: dim });
    }
    let cutoff = check_range(cfg.cutoff.unwrap_or(3), 1, 50, "cutoff")?;
    let grid = check_range(cfg.grid.unwrap_or(16), 2, 512, "grid")?;
    let samples = check_range(cfg.samples.unwrap_or(64), 8, 1 << 20, "samples")?;
    let radius = cfg.radius.unwrap_or(0.1);
    let report = family_index_t2(cutoff, radius, samples)?;
    let w_modes = vec![vec![0, 0]];
    let w = build_w_construction(2, cutoff, GridSpec { m: grid, offset: 0.0 }, &w_modes)?;
    let mut fiber_dims: Vec<usize> = w.fibers.iter().map(|f| f.dim()).collect();
    fiber_dims.sort_unstable();
    fiber_dims.dedup();
    let out = IndexFamilyOutput {
        report,
        radius,
        samples,
        w_construction: WSummary {
            grid,
            w_dim: w.w_dim,
            index_rank: w.index_rank(),
            min_certificate: w.min_certificate(),
            fiber_dims,
            w_modes,
        },
    };
    match format {
        Format::Json => Ok(json(&out)),
        Format::Csv => Err(csv_unsupported("index-family")),
        Format::Table => {
            let mut s = String::new();
            for (j, d) in out.report.jump_points.iter().zip(&out.report.local_degrees) {
                let _ = writeln!(s, "jump at c = ({}), modes {:?}, local degree {d}", j.location, j.modes);
            }
            let _ = writeln!(s, "total c1 = {} ({})", out.report.total_c1, out.report.convention);
            let _ = writeln!(s, "rank = {}", out.report.rank);
            let _ = writeln!(
                s,
                "W-construction on {g}x{g} grid: dim W = {}, fiber dims {:?}, min certificate {}",
                out.w_construction.w_dim,
                out.w_construction.fiber_dims,
                crate::exact::format_f64(out.w_construction.min_certificate),
                g = grid
            );
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct ClassOutput<'a> {
    class: &'a ExteriorElement,
    rendered: String,
}

fn render_class(format: Format, label: &str, class: &ExteriorElement, extra: impl Serialize) -> Result<String> {
    #[derive(Serialize)]
    struct Wrapped<'a, E: Serialize> {
        #[serde(flatten)]
        extra: E,
        #[serde(flatten)]
        class: ClassOutput<'a>,
    }
    match format {
        Format::Json => Ok(json(&Wrapped { extra, class: ClassOutput { class, rendered: class.to_string() } })),
        Format::Csv => Err(csv_unsupported(label)),
        Format::Table => Ok(format!("{label} = {class}\n")),
    }
}

fn symbol(name: &Option<String>, default: &str) -> Result<Option<String>> {
    let n = name.clone().unwrap_or_else(|| default.into());
    let n = n.trim().to_string();
    if n == "0" {
        return Ok(None);
    }
    if n.is_empty() || !n.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(Error::Parse(format!("{n:?} is not a class name or 0")));
    }
    Ok(Some(n))
}

fn cmd_chern(cfg: &RunConfig, format: Format) -> Result<String> {
    let rank = cfg.rank.unwrap_or(1);
    let c1 = symbol(&cfg.c1, "c1")?;
    let c2 = symbol(&cfg.c2, "c2")?;
    let mut even = Vec::new();
    if let Some(n) = &c1 {
        even.push((n.clone(), 2));
    }
    if let Some(n) = &c2 {
        even.push((n.clone(), 4));
    }
    let alg = Algebra::new(Vec::new(), even, Some(4))?;
    let get = |n: &Option<String>| match n {
        Some(n) => ExteriorElement::generator(&alg, n),
        None => Ok(ExteriorElement::zero(&alg)),
    };
    let class = chern_character(rank, &get(&c1)?, &get(&c2)?)?;
    #[derive(Serialize)]
    struct Extra {
        rank: i64,
    }
    render_class(format, "ch", &class, Extra { rank })
}

fn cmd_ahat(cfg: &RunConfig, format: Format) -> Result<String> {
    let dim = check_range(require(&cfg.dim, "dim")?, 0, 8, "dim")?;
    let class = a_hat(dim as u32)?;
    #[derive(Serialize)]
    struct Extra {
        dim: usize,
    }
    render_class(format, "A-hat", &class, Extra { dim })
}

fn rational_arg(v: &Option<String>) -> Result<Rational> {
    v.as_deref().map_or_else(|| Ok(crate::exact::int(0)), parse_rational)
}

fn cmd_index_formula(cfg: &RunConfig, format: Format) -> Result<String> {
    match require(&cfg.formula, "formula")? {
        Formula::Torus => {
            let dim = require(&cfg.dim, "dim")?;
            let r = family_ch_torus(dim)?;
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<'a> {
                        dim: usize,
                        #[serde(flatten)]
                        report: &'a crate::char_classes::IndexFormulaReport,
                        rendered: String,
                    }
                    Ok(json(&Out { dim, report: &r, rendered: r.class.to_string() }))
                }
                Format::Csv => Err(csv_unsupported("index-formula")),
                Format::Table => Ok(format!("{} = {}\nrank part = {}\n", r.description, r.class, r.rank_part)),
            }
        }
        Formula::Pontryagin => {
            let dim = require(&cfg.dim, "dim")?;
            let numbers = PontryaginNumbers { p1: rational_arg(&cfg.p1)?, p1_squared: rational_arg(&cfg.p1_squared)?, p2: rational_arg(&cfg.p2)? };
            let r = index_from_pontryagin(dim, &numbers)?;
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<'a> {
                        dim: usize,
                        #[serde(flatten)]
                        index: &'a crate::char_classes::PontryaginIndex,
                    }
                    Ok(json(&Out { dim, index: &r }))
                }
                Format::Csv => Err(csv_unsupported("index-formula")),
                Format::Table => Ok(format!("ind(D+) = {} (integral: {})\n", r.value, r.integral)),
            }
        }
        Formula::OddFamily => {
            let betti = require(&cfg.betti, "betti")?;
            let cup = CupForm::parse(betti, cfg.cup.as_deref().unwrap_or(""))?;
            let class = odd_family_ch(&cup)?;
            #[derive(Serialize)]
            struct Extra {
                betti: usize,
                cup: String,
                degree_one_vanishes: bool,
            }
            let extra = Extra { betti, cup: cup.to_string(), degree_one_vanishes: class.degree_part(1).is_zero() };
            render_class(format, "ch(ind D)", &class, extra)
        }
    }
}

fn cmd_bar(cfg: &RunConfig, format: Format) -> Result<String> {
    let betti = require(&cfg.betti, "betti")?;
    let cup = CupForm::parse(betti, cfg.cup.as_deref().unwrap_or(""))?;
    let r = nonvanishing_check(&cup)?;
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                betti: usize,
                cup: String,
                #[serde(flatten)]
                report: &'a crate::bar_homology::NonvanishingReport,
            }
            Ok(json(&Out { betti, cup: cup.to_string(), report: &r }))
        }
        Format::Csv => Err(csv_unsupported("bar")),
        Format::Table => {
            let mut s = format!("rank H^even = {}, rank H^odd = {}, nonvanishing = {}\n", r.ranks[0], r.ranks[1], r.nonvanishing);
            for w in &r.witnesses {
                let _ = writeln!(s, "  Lambda^{}: {}", w.degree, w.element);
            }
            Ok(s)
        }
    }
}

fn gauss_json(m: &GaussMatrix) -> Vec<Vec<[i64; 2]>> {
    m.rows().iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect()
}

fn gauss_text(m: &GaussMatrix) -> String {
    let fmt = |re: i64, im: i64| match (re, im) {
        (0, 0) => "0".to_string(),
        (r, 0) => r.to_string(),
        (0, 1) => "i".into(),
        (0, -1) => "-i".into(),
        (0, i) => format!("{i}i"),
        (r, i) => format!("{r}{i:+}i"),
    };
    m.rows().iter().map(|r| r.iter().map(|z| format!("{:>3}", fmt(z.re, z.im))).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
}

fn cmd_clifford(cfg: &RunConfig, format: Format) -> Result<String> {
    let dim = require(&cfg.dim, "dim")?;
    let rep = build_clifford(dim)?;
    let relations = rep.check_relations();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                dim: usize,
                spinor_rank: usize,
                generators: Vec<Vec<Vec<[i64; 2]>>>,
                chirality: Option<Vec<Vec<[i64; 2]>>>,
                relations: crate::clifford::RelationReport,
                all_hold: bool,
            }
            Ok(json(&Out {
                dim,
                spinor_rank: rep.spinor_rank(),
                generators: rep.generators().iter().map(gauss_json).collect(),
                chirality: rep.chirality().map(gauss_json),
                all_hold: relations.all_hold(),
                relations,
            }))
        }
        Format::Csv => Err(csv_unsupported("clifford")),
        Format::Table => {
            let mut s = String::new();
            for (j, a) in rep.generators().iter().enumerate() {
                let _ = writeln!(s, "a{}:\n{}\n", j + 1, gauss_text(a));
            }
            if let Some(w) = rep.chirality() {
                let _ = writeln!(s, "chirality:\n{}\n", gauss_text(w));
            }
            let _ = writeln!(s, "relations hold: {}", relations.all_hold());
            Ok(s)
        }
    }
}

fn cmd_verify(cfg: &RunConfig, format: Format) -> Result<(i32, String)> {
    let suite: Suite = require(&cfg.suite, "suite")?.parse().map_err(|e: Error| Error::Parse(e.to_string()))?;
    let mut opts = VerifyOptions::default();
    if let Some(m) = cfg.max_dim {
        opts.max_dim = m;
    }
    if let Some(d) = cfg.dim {
        opts.dim = d;
    }
    let report = verify_suite(suite, opts)?;
    let code = if report.passed { 0 } else { 2 };
    let text = match format {
        Format::Json => json(&report),
        Format::Csv => return Err(csv_unsupported("verify")),
        Format::Table => {
            let mut s = String::new();
            for c in &report.checks {
                let _ = writeln!(s, "{} [{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.suite, c.name, c.detail);
            }
            let _ = writeln!(s, "{}", if report.passed { "all checks passed" } else { "some checks failed" });
            s
        }
    };
    Ok((code, text))
}

/// Entry point of the binary.
pub fn main_entry() -> i32 {
    let cfg = match parse_args(std::env::args_os()) {
        Ok(c) => c,
        Err(o) => return emit(o),
    };
    if let Some(n) = cfg.threads {
        if n >= 1 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    emit(run(&cfg))
}

fn emit(o: Outcome) -> i32 {
    use std::io::Write;
    let _ = std::io::stdout().write_all(o.stdout.as_bytes());
    let _ = std::io::stderr().write_all(o.stderr.as_bytes());
    o.code
}
