//! Command-line grammar, flat `key = value` config files and the validated
//! run configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use kantorlab_core::analysis::{BoundKind, DIVERGENCE_LEVELS, SOBOLEV_LEVELS};
use kantorlab_core::{corpus, DensityKernel, PhiFunction};
use thiserror::Error;

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "KANTORLAB_OUT";

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("{path}:{line}: expected `key = value`")]
    Syntax { path: String, line: usize },
    #[error("cannot read {path}: {reason}")]
    Read { path: String, reason: String },
    #[error("invalid value for `{key}`: {reason}")]
    Value { key: String, reason: String },
    #[error("`{key}` is required for `{command}`")]
    Missing { key: &'static str, command: Command },
    #[error("`{0}` and `{1}` are mutually exclusive")]
    Conflict(&'static str, &'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    Moments,
    Norm,
    Approx,
    Rates,
    Bounds,
    Lipschitz,
    Inverse,
    Examples,
    Report,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Moments => "moments",
            Command::Norm => "norm",
            Command::Approx => "approx",
            Command::Rates => "rates",
            Command::Bounds => "bounds",
            Command::Lipschitz => "lipschitz",
            Command::Inverse => "inverse",
            Command::Examples => "examples",
            Command::Report => "report",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "kantorlab",
    version,
    about = "Kantorovich neural-network operators in Orlicz spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Discrete absolute moments of a density kernel.
    Moments(Options),
    /// Modular and Luxemburg norm of a corpus function.
    Norm(Options),
    /// Approximation errors of K_n f.
    Approx(Options),
    /// Error curve with a log-log rate fit.
    Rates(Options),
    /// Check one or more inequalities.
    Bounds(Options),
    /// Lipschitz exponent from strong or weak moduli.
    Lipschitz(Options),
    /// Direct rate against the Lipschitz exponent.
    Inverse(Options),
    /// The weak-Lipschitz and Sobolev-Orlicz worked examples.
    Examples(Options),
    /// Rates, explicit bounds and the inverse check for one configuration.
    Report(Options),
}

impl CliCommand {
    pub fn split(self) -> (Command, Options) {
        match self {
            CliCommand::Moments(o) => (Command::Moments, o),
            CliCommand::Norm(o) => (Command::Norm, o),
            CliCommand::Approx(o) => (Command::Approx, o),
            CliCommand::Rates(o) => (Command::Rates, o),
            CliCommand::Bounds(o) => (Command::Bounds, o),
            CliCommand::Lipschitz(o) => (Command::Lipschitz, o),
            CliCommand::Inverse(o) => (Command::Inverse, o),
            CliCommand::Examples(o) => (Command::Examples, o),
            CliCommand::Report(o) => (Command::Report, o),
        }
    }
}

/// Every option can also be set in a config file under the same name.
#[derive(Debug, Default, Clone, Args)]
pub struct Options {
    /// Flat `key = value` file; command-line flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// φ-function, e.g. `power:p=2` or `zygmund:beta=2,gamma=1`.
    #[arg(long)]
    pub phi: Option<String>,
    /// Sigmoidal kernel, e.g. `logistic` or `sigma_theta:theta=3`.
    #[arg(long)]
    pub kernel: Option<String>,
    /// Corpus function, e.g. `sin` or `abs_pow:nu=0.5`.
    #[arg(long = "fn")]
    pub function: Option<String>,
    /// List of n: `4:512:x2`, `8:64:+8` or `4,16,64`.
    #[arg(long)]
    pub ns: Option<String>,
    /// A single n.
    #[arg(long)]
    pub n: Option<String>,
    /// Decreasing step sizes: `0.04:0.0025:/2` or a comma list.
    #[arg(long)]
    pub deltas: Option<String>,
    /// Scale of the modular, or a comma list of candidates for weak fits.
    #[arg(long)]
    pub lambda: Option<String>,
    /// Slack for explicit-constant bounds.
    #[arg(long)]
    pub tol: Option<String>,
    /// Bound kinds, comma separated, or `explicit` / `all`.
    #[arg(long)]
    pub kind: Option<String>,
    /// Moment order.
    #[arg(long)]
    pub nu: Option<String>,
    /// Power inside φ for hybrid moments (requires `--phi`).
    #[arg(long)]
    pub mu: Option<String>,
    /// Steklov step sizes.
    #[arg(long)]
    pub hs: Option<String>,
    /// Steklov order, 1 or 2.
    #[arg(long = "steklov-order")]
    pub steklov_order: Option<String>,
    /// Length of the parameter interval for the Minkowski checks.
    #[arg(long)]
    pub window: Option<String>,
    /// Smallest n used by rate fits.
    #[arg(long = "n-min")]
    pub n_min: Option<String>,
    /// `strong` or `weak`.
    #[arg(long)]
    pub modulus: Option<String>,
    /// `inclusion`, `sobolev` or `all`.
    #[arg(long)]
    pub which: Option<String>,
    /// Shifts for the inclusion example.
    #[arg(long)]
    pub t: Option<String>,
    /// Exponent of the Sobolev-Orlicz example.
    #[arg(long)]
    pub p: Option<String>,
    /// Log-cutoffs for the examples.
    #[arg(long)]
    pub levels: Option<String>,
    /// Relative multiplicative noise applied to measured errors before fitting.
    #[arg(long)]
    pub noise: Option<String>,
    /// Grid size for `--dump-grid` and `--dump-kernel`.
    #[arg(long)]
    pub points: Option<String>,
    /// Output directory (default: $KANTORLAB_OUT or the working directory).
    #[arg(long)]
    pub out: Option<String>,
    /// Worker threads.
    #[arg(long)]
    pub threads: Option<String>,
    /// Seed for noise fixtures.
    #[arg(long)]
    pub seed: Option<String>,
    /// Also write kernel samples.
    #[arg(long = "dump-kernel")]
    pub dump_kernel: bool,
    /// Also write K_n f and its derivative on a grid.
    #[arg(long = "dump-grid")]
    pub dump_grid: bool,
}

/// Keys accepted in config files.
pub const KEYS: [&str; 27] = [
    "phi",
    "kernel",
    "fn",
    "ns",
    "n",
    "deltas",
    "lambda",
    "tol",
    "kind",
    "nu",
    "mu",
    "hs",
    "steklov-order",
    "window",
    "n-min",
    "modulus",
    "which",
    "t",
    "p",
    "levels",
    "noise",
    "points",
    "out",
    "threads",
    "seed",
    "dump-kernel",
    "dump-grid",
];

fn canonical_key(raw: &str) -> Result<&'static str, ConfigError> {
    let k = raw.trim().replace('_', "-");
    KEYS.iter()
        .find(|key| **key == k)
        .copied()
        .ok_or_else(|| ConfigError::UnknownKey(raw.trim().to_string()))
}

/// Parses a flat `key = value` file; `#` starts a comment.
pub fn parse_config_text(text: &str, path: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax {
            path: path.to_string(),
            line: i + 1,
        })?;
        let key = canonical_key(k)?;
        map.insert(key.to_string(), v.trim().to_string());
    }
    Ok(map)
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    parse_config_text(&text, &path.display().to_string())
}

impl Options {
    /// Flags that were given, as canonical `(key, value)` pairs.
    pub fn flags(&self) -> Vec<(&'static str, String)> {
        let fields: [(&'static str, &Option<String>); 25] = [
            ("phi", &self.phi),
            ("kernel", &self.kernel),
            ("fn", &self.function),
            ("ns", &self.ns),
            ("n", &self.n),
            ("deltas", &self.deltas),
            ("lambda", &self.lambda),
            ("tol", &self.tol),
            ("kind", &self.kind),
            ("nu", &self.nu),
            ("mu", &self.mu),
            ("hs", &self.hs),
            ("steklov-order", &self.steklov_order),
            ("window", &self.window),
            ("n-min", &self.n_min),
            ("modulus", &self.modulus),
            ("which", &self.which),
            ("t", &self.t),
            ("p", &self.p),
            ("levels", &self.levels),
            ("noise", &self.noise),
            ("points", &self.points),
            ("out", &self.out),
            ("threads", &self.threads),
            ("seed", &self.seed),
        ];
        let mut out: Vec<(&'static str, String)> = fields
            .into_iter()
            .filter_map(|(k, v)| v.clone().map(|v| (k, v)))
            .collect();
        if self.dump_kernel {
            out.push(("dump-kernel", "true".into()));
        }
        if self.dump_grid {
            out.push(("dump-grid", "true".into()));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusChoice {
    Strong,
    Weak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleChoice {
    Inclusion,
    Sobolev,
    All,
}

/// A validated run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub phi: PhiFunction,
    pub kernel: DensityKernel,
    pub function: Option<String>,
    pub ns: Vec<usize>,
    pub deltas: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub tol: f64,
    pub kinds: Vec<BoundKind>,
    pub nu: f64,
    pub mu: Option<f64>,
    pub hs: Vec<f64>,
    pub steklov_order: u32,
    pub window: f64,
    pub n_min: usize,
    pub modulus: ModulusChoice,
    pub which: ExampleChoice,
    pub ts: Vec<f64>,
    pub p: f64,
    pub levels: Option<Vec<f64>>,
    pub noise: f64,
    pub points: usize,
    pub out_dir: PathBuf,
    pub threads: Option<usize>,
    pub seed: u64,
    pub dump_kernel: bool,
    pub dump_grid: bool,
    /// Effective settings, defaults included, for the summary.
    pub settings: BTreeMap<String, String>,
}

fn value_err(key: &str, reason: impl fmt::Display) -> ConfigError {
    ConfigError::Value {
        key: key.to_string(),
        reason: reason.to_string(),
    }
}

fn number<T: FromStr>(key: &str, text: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    text.trim()
        .parse::<T>()
        .map_err(|e| value_err(key, format!("`{text}`: {e}")))
}

fn boolean(key: &str, text: &str) -> Result<bool, ConfigError> {
    match text.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(value_err(key, format!("`{other}` is not a boolean"))),
    }
}

/// `start:end:xF` (geometric), `start:end:+S` (arithmetic) or a comma list;
/// the result must be positive and strictly increasing.
pub fn parse_ns(text: &str) -> Result<Vec<usize>, ConfigError> {
    let key = "ns";
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let ns: Vec<usize> = match parts.as_slice() {
        [start, end, step] => {
            let (start, end): (usize, usize) = (number(key, start)?, number(key, end)?);
            if start == 0 || end < start {
                return Err(value_err(key, "range needs 0 < start <= end"));
            }
            let mut out = Vec::new();
            let mut n = start;
            if let Some(f) = step.strip_prefix('x') {
                let f: usize = number(key, f)?;
                if f < 2 {
                    return Err(value_err(key, "geometric factor must be at least 2"));
                }
                while n <= end {
                    out.push(n);
                    n = n.checked_mul(f).ok_or_else(|| value_err(key, "overflow"))?;
                }
            } else if let Some(s) = step.strip_prefix('+') {
                let s: usize = number(key, s)?;
                if s == 0 {
                    return Err(value_err(key, "step must be positive"));
                }
                while n <= end {
                    out.push(n);
                    n += s;
                }
            } else {
                return Err(value_err(key, format!("step `{step}` must start with `x` or `+`")));
            }
            out
        }
        [_] => text.split(',').map(|s| number(key, s)).collect::<Result<_, _>>()?,
        _ => return Err(value_err(key, format!("cannot parse `{text}`"))),
    };
    if ns.is_empty() || ns[0] == 0 || ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(value_err(key, "must be positive and strictly increasing"));
    }
    Ok(ns)
}

/// `start:end:/F` (geometric, decreasing), `start:end:xF` (increasing) or a
/// comma list of positive reals.
pub fn parse_reals(key: &str, text: &str) -> Result<Vec<f64>, ConfigError> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let xs: Vec<f64> = match parts.as_slice() {
        [start, end, step] => {
            let (start, end): (f64, f64) = (number(key, start)?, number(key, end)?);
            let (factor, grows) = if let Some(f) = step.strip_prefix('/') {
                (number::<f64>(key, f)?, false)
            } else if let Some(f) = step.strip_prefix('x') {
                (number::<f64>(key, f)?, true)
            } else {
                return Err(value_err(key, format!("step `{step}` must start with `/` or `x`")));
            };
            if !(start > 0.0 && end > 0.0 && factor > 1.0 && factor.is_finite()) {
                return Err(value_err(key, "range needs positive ends and a factor above 1"));
            }
            let mut out = Vec::new();
            let mut x = start;
            let stop = |x: f64| {
                if grows {
                    x > end * (1.0 + 1e-12)
                } else {
                    x < end * (1.0 - 1e-12)
                }
            };
            while !stop(x) && out.len() < 10_000 {
                out.push(x);
                x = if grows { x * factor } else { x / factor };
            }
            out
        }
        [_] => text.split(',').map(|s| number(key, s)).collect::<Result<_, _>>()?,
        _ => return Err(value_err(key, format!("cannot parse `{text}`"))),
    };
    if xs.is_empty() || xs.iter().any(|x| !x.is_finite()) {
        return Err(value_err(key, "must be a nonempty list of finite numbers"));
    }
    Ok(xs)
}

fn strictly_decreasing(key: &str, xs: &[f64]) -> Result<(), ConfigError> {
    if xs.iter().any(|x| *x <= 0.0) || xs.windows(2).any(|w| w[1] >= w[0]) {
        return Err(value_err(key, "must be positive and strictly decreasing"));
    }
    Ok(())
}

fn parse_kinds(text: &str) -> Result<Vec<BoundKind>, ConfigError> {
    match text.trim() {
        "all" => Ok(BoundKind::ALL.to_vec()),
        "explicit" => Ok(BoundKind::ALL.into_iter().filter(|k| k.explicit()).collect()),
        list => list
            .split(',')
            .map(|s| s.trim().parse::<BoundKind>().map_err(|e| value_err("kind", e)))
            .collect(),
    }
}

/// Merges the config file (if any) with the flags, flags winning.
pub fn merged_settings(opts: &Options) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut map = match &opts.config {
        Some(path) => read_config_file(path)?,
        None => BTreeMap::new(),
    };
    for (k, v) in opts.flags() {
        map.insert(k.to_string(), v);
    }
    Ok(map)
}

/// Builds the validated configuration for `command` from `opts` and the
/// optional config file it names.
pub fn parse_config(command: Command, opts: &Options) -> Result<RunConfig, ConfigError> {
    let map = merged_settings(opts)?;
    let default_out = std::env::var(OUT_ENV).unwrap_or_else(|_| ".".into());
    build_config(command, map, &default_out)
}

/// Like [`parse_config`] but from explicit settings and output default.
pub fn build_config(
    command: Command,
    map: BTreeMap<String, String>,
    default_out: &str,
) -> Result<RunConfig, ConfigError> {
    for k in map.keys() {
        canonical_key(k)?;
    }
    let mut settings = map.clone();

    let phi_text = setting(&mut settings, "phi", "power:p=2");
    let phi = PhiFunction::parse(&phi_text).map_err(|e| value_err("phi", e))?;
    let kernel_text = setting(&mut settings, "kernel", "logistic");
    let kernel = DensityKernel::parse(&kernel_text).map_err(|e| value_err("kernel", e))?;

    let function = map.get("fn").cloned();
    if let Some(f) = &function {
        corpus(f).map_err(|e| value_err("fn", e))?;
    }
    let needs_fn = matches!(
        command,
        Command::Norm
            | Command::Approx
            | Command::Rates
            | Command::Bounds
            | Command::Lipschitz
            | Command::Inverse
            | Command::Report
    );
    if needs_fn && function.is_none() {
        return Err(ConfigError::Missing { key: "fn", command });
    }

    let ns = match (map.get("n"), map.get("ns")) {
        (Some(_), Some(_)) => return Err(ConfigError::Conflict("n", "ns")),
        (Some(n), None) => {
            let n: usize = number("n", n)?;
            if n == 0 {
                return Err(value_err("n", "must be positive"));
            }
            vec![n]
        }
        (None, Some(ns)) => parse_ns(ns)?,
        (None, None) => {
            let default = if command == Command::Bounds || command == Command::Report {
                "8:64:x2"
            } else {
                "4:512:x2"
            };
            parse_ns(&setting(&mut settings, "ns", default))?
        }
    };

    let deltas = parse_reals("deltas", &setting(&mut settings, "deltas", "0.04:0.0025:/2"))?;
    strictly_decreasing("deltas", &deltas)?;
    let modulus = match setting(&mut settings, "modulus", "strong").as_str() {
        "strong" => ModulusChoice::Strong,
        "weak" => ModulusChoice::Weak,
        other => return Err(value_err("modulus", format!("`{other}` is neither strong nor weak"))),
    };
    // Weak fits search λ = 2^0, …, 2^-20 unless told otherwise.
    let lambda_default = if command == Command::Lipschitz && modulus == ModulusChoice::Weak {
        "1:9.5367431640625e-7:/2"
    } else {
        "1"
    };
    let lambdas = parse_reals("lambda", &setting(&mut settings, "lambda", lambda_default))?;
    if lambdas.iter().any(|l| *l <= 0.0) {
        return Err(value_err("lambda", "must be positive"));
    }
    let tol: f64 = number("tol", &setting(&mut settings, "tol", "1e-6"))?;
    if !(tol >= 0.0) {
        return Err(value_err("tol", "must be nonnegative"));
    }

    let kinds = match map.get("kind") {
        Some(k) => parse_kinds(k)?,
        None if command == Command::Bounds => return Err(ConfigError::Missing { key: "kind", command }),
        None => parse_kinds(&setting(&mut settings, "kind", "explicit"))?,
    };

    let nu: f64 = number("nu", &setting(&mut settings, "nu", "0"))?;
    if !(nu >= 0.0 && nu.is_finite()) {
        return Err(value_err("nu", "must be finite and nonnegative"));
    }
    let mu = match map.get("mu") {
        Some(m) => {
            let m: f64 = number("mu", m)?;
            if !(m >= 0.0 && m.is_finite()) {
                return Err(value_err("mu", "must be finite and nonnegative"));
            }
            Some(m)
        }
        None => None,
    };

    let hs = parse_reals("hs", &setting(&mut settings, "hs", "0.2,0.1,0.05"))?;
    strictly_decreasing("hs", &hs)?;
    let steklov_order: u32 = number("steklov-order", &setting(&mut settings, "steklov-order", "1"))?;
    if !(1..=2).contains(&steklov_order) {
        return Err(value_err("steklov-order", "must be 1 or 2"));
    }
    let window: f64 = number("window", &setting(&mut settings, "window", "0.1"))?;
    if !(window > 0.0 && window <= 1.0) {
        return Err(value_err("window", "must lie in (0, 1]"));
    }
    let n_min: usize = number("n-min", &setting(&mut settings, "n-min", "8"))?;

    let which = match setting(&mut settings, "which", "all").as_str() {
        "inclusion" => ExampleChoice::Inclusion,
        "sobolev" => ExampleChoice::Sobolev,
        "all" => ExampleChoice::All,
        other => return Err(value_err("which", format!("unknown example `{other}`"))),
    };
    let ts = parse_reals("t", &setting(&mut settings, "t", "0.1,0.25,0.4"))?;
    if ts.iter().any(|t| !(*t > 0.0 && *t <= 0.5)) {
        return Err(value_err("t", "each t must lie in (0, 1/2]"));
    }
    let p: f64 = number("p", &setting(&mut settings, "p", "2"))?;
    if !(p > 1.0 && p.is_finite()) {
        return Err(value_err("p", "must exceed 1"));
    }
    let levels = match map.get("levels") {
        Some(l) => {
            let l = parse_reals("levels", l)?;
            if l.windows(2).any(|w| w[1] <= w[0]) {
                return Err(value_err("levels", "must be strictly increasing"));
            }
            Some(l)
        }
        None => {
            if which == ExampleChoice::Sobolev {
                settings.insert("levels".into(), join(&SOBOLEV_LEVELS));
            } else if which == ExampleChoice::Inclusion {
                settings.insert("levels".into(), join(&DIVERGENCE_LEVELS));
            }
            None
        }
    };
    let noise: f64 = number("noise", &setting(&mut settings, "noise", "0"))?;
    if !(0.0..1.0).contains(&noise) {
        return Err(value_err("noise", "must lie in [0, 1)"));
    }
    let points: usize = number("points", &setting(&mut settings, "points", "101"))?;
    if points < 2 {
        return Err(value_err("points", "must be at least 2"));
    }
    let out_dir = PathBuf::from(setting(&mut settings, "out", default_out));
    let threads = match map.get("threads") {
        Some(t) => {
            let t: usize = number("threads", t)?;
            if t == 0 {
                return Err(value_err("threads", "must be positive"));
            }
            Some(t)
        }
        None => None,
    };
    let seed: u64 = number("seed", &setting(&mut settings, "seed", "0"))?;
    let dump_kernel = boolean("dump-kernel", &setting(&mut settings, "dump-kernel", "false"))?;
    let dump_grid = boolean("dump-grid", &setting(&mut settings, "dump-grid", "false"))?;

    if mu.is_some() && !map.contains_key("phi") {
        return Err(value_err("mu", "hybrid moments need an explicit `phi`"));
    }

    let relevant = relevant_keys(command);
    settings.retain(|k, _| k != "out" && k != "threads" && (map.contains_key(k) || relevant.contains(&k.as_str())));
    Ok(RunConfig {
        command,
        phi,
        kernel,
        function,
        ns,
        deltas,
        lambdas,
        tol,
        kinds,
        nu,
        mu,
        hs,
        steklov_order,
        window,
        n_min,
        modulus,
        which,
        ts,
        p,
        levels,
        noise,
        points,
        out_dir,
        threads,
        seed,
        dump_kernel,
        dump_grid,
        settings,
    })
}

/// Keys whose defaults are restated in the summary of `command`.
fn relevant_keys(command: Command) -> &'static [&'static str] {
    match command {
        Command::Moments => &["kernel", "nu", "mu", "dump-kernel", "points"],
        Command::Norm => &["fn", "phi", "lambda"],
        Command::Approx => &["fn", "phi", "kernel", "ns", "lambda", "dump-grid", "points"],
        Command::Rates => &["fn", "phi", "kernel", "ns", "lambda", "n-min", "noise", "seed"],
        Command::Bounds => &[
            "fn",
            "phi",
            "kernel",
            "ns",
            "kind",
            "hs",
            "steklov-order",
            "window",
            "tol",
        ],
        Command::Lipschitz => &["fn", "phi", "modulus", "deltas", "lambda"],
        Command::Inverse => &["fn", "phi", "kernel", "ns", "deltas"],
        Command::Examples => &["which", "t", "p", "levels"],
        Command::Report => &[
            "fn",
            "phi",
            "kernel",
            "ns",
            "lambda",
            "n-min",
            "kind",
            "hs",
            "steklov-order",
            "window",
            "tol",
            "deltas",
        ],
    }
}

/// The value for `key`, recording `default` when absent.
fn setting(settings: &mut BTreeMap<String, String>, key: &str, default: &str) -> String {
    settings
        .entry(key.to_string())
        .or_insert_with(|| default.to_string())
        .clone()
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
