//! Command execution: each command produces CSV tables, summary lines and
//! an exit status.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use kantorlab_core::analysis::{
    error_curve, inclusion_example, inverse_consistency, lipschitz_fit, rate_fit, sobolev_counterexample, verify_bound,
    BoundReport, BoundSetup, ModulusKind, DIVERGENCE_LEVELS, SOBOLEV_LEVELS,
};
use kantorlab_core::kernels::{hybrid_moment, moment};
use kantorlab_core::operators::{sample_table, KantorovichEval};
use kantorlab_core::orlicz::{luxemburg_norm, modular};
use kantorlab_core::report::{self, Table};
use kantorlab_core::{corpus, Error, IntervalFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Command, ExampleChoice, ModulusChoice, RunConfig};

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    BoundFailure = 1,
    HypothesisNotMet = 2,
    Usage = 3,
    Numeric = 4,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }

    /// Combines two outcomes; a bound failure outranks an unmet hypothesis.
    pub fn worst(self, other: Status) -> Status {
        let rank = |s: Status| match s {
            Status::Pass => 0,
            Status::HypothesisNotMet => 1,
            Status::BoundFailure => 2,
            Status::Usage => 3,
            Status::Numeric => 4,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

/// Exit status for an engine error.
pub fn status_of(e: &Error) -> Status {
    match e {
        Error::HypothesisNotMet(_) | Error::MissingDerivative(_) => Status::HypothesisNotMet,
        Error::UnknownName { .. } | Error::InvalidParameter { .. } | Error::InvalidArgument(_) => Status::Usage,
        Error::NotInWeakClass => Status::BoundFailure,
        _ => Status::Numeric,
    }
}

/// Result of one command before anything is written.
#[derive(Debug, Default)]
pub struct Outcome {
    /// `(file stem, table)`; the first table is `<command>.csv`.
    pub tables: Vec<(String, Table)>,
    pub results: Vec<String>,
    pub status: Option<Status>,
}

impl Outcome {
    fn status(&self) -> Status {
        self.status.unwrap_or(Status::Pass)
    }

    fn mark(&mut self, s: Status) {
        self.status = Some(self.status().worst(s));
    }

    fn line(&mut self, text: impl Into<String>) {
        self.results.push(text.into());
    }
}

fn function(cfg: &RunConfig) -> Result<IntervalFunction, Error> {
    corpus(cfg.function.as_deref().unwrap_or("const"))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome, Error> {
    match cfg.command {
        Command::Moments => moments(cfg),
        Command::Norm => norm(cfg),
        Command::Approx => approx(cfg),
        Command::Rates => rates(cfg),
        Command::Bounds => bounds(cfg),
        Command::Lipschitz => lipschitz(cfg),
        Command::Inverse => inverse(cfg),
        Command::Examples => examples(cfg),
        Command::Report => full_report(cfg),
    }
}

fn moments(cfg: &RunConfig) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    let k = &cfg.kernel;
    let mut t = Table::new([
        "kernel",
        "nu",
        "mu",
        "phi",
        "value",
        "argmax",
        "radius",
        "tail_bound_met",
    ]);
    let (estimate, mu, phi) = match cfg.mu {
        Some(mu) => (
            hybrid_moment(k, &cfg.phi, cfg.nu, mu),
            mu.to_string(),
            cfg.phi.to_string(),
        ),
        None => (moment(k, cfg.nu), String::new(), String::new()),
    };
    match estimate {
        Ok(m) => {
            t.push([
                k.to_string(),
                cfg.nu.to_string(),
                mu,
                phi,
                m.value.to_string(),
                m.argmax.to_string(),
                m.radius.to_string(),
                m.tail_bound_met.to_string(),
            ]);
            out.line(format!("moment = {:?}", m.value));
        }
        Err(Error::PotentiallyInfinite(why)) => {
            t.push([
                k.to_string(),
                cfg.nu.to_string(),
                mu,
                phi,
                "inf".into(),
                String::new(),
                String::new(),
                "false".into(),
            ]);
            out.line(format!("moment = inf ({why})"));
        }
        Err(e) => return Err(e),
    }
    out.tables.push(("moments".into(), t));
    if cfg.dump_kernel {
        let r = k.compact_radius().unwrap_or_else(|| k.sum_radius(1e-8).min(64.0));
        let mut d = Table::new(["x", "phi_sigma", "derivative"]);
        let m = cfg.points;
        for i in 0..m {
            let x = -r + 2.0 * r * i as f64 / (m - 1) as f64;
            let dx = if k.has_derivative() {
                k.derivative(x).to_string()
            } else {
                String::new()
            };
            d.push([x.to_string(), k.eval(x).to_string(), dx]);
        }
        out.tables.push(("moments_kernel".into(), d));
    }
    Ok(out)
}

fn norm(cfg: &RunConfig) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    let f = function(cfg)?;
    let mut t = Table::new(["f", "phi", "quantity", "lambda", "value"]);
    let lux = match luxemburg_norm(&cfg.phi, &f) {
        Err(Error::BracketExpansion { .. }) => f64::INFINITY,
        other => other?,
    };
    t.push([
        f.label().to_string(),
        cfg.phi.to_string(),
        "luxemburg".into(),
        String::new(),
        lux.to_string(),
    ]);
    out.line(format!("luxemburg = {lux}"));
    for &lambda in &cfg.lambdas {
        let m = modular(&cfg.phi, &f, lambda)?;
        t.push([
            f.label().to_string(),
            cfg.phi.to_string(),
            "modular".into(),
            lambda.to_string(),
            m.to_string(),
        ]);
        out.line(format!("modular(lambda = {lambda}) = {m}"));
    }
    out.tables.push(("norm".into(), t));
    Ok(out)
}

fn approx(cfg: &RunConfig) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    let f = function(cfg)?;
    let curve = error_curve(&f, &cfg.phi, &cfg.kernel, &cfg.ns, cfg.lambdas[0])?;
    for (n, e) in curve.ns.iter().zip(&curve.lux_errors) {
        out.line(format!("n = {n}: luxemburg error = {e}"));
    }
    out.tables.push(("approx".into(), report::error_curve_table(&curve)));
    if cfg.dump_grid {
        let mut g = Table::new(["n", "x", "f", "kn_f", "dkn_f"]);
        for &n in &cfg.ns {
            let op = KantorovichEval::new(&cfg.kernel, &f, n)?;
            for r in sample_table(&op, &f, cfg.points)? {
                g.push([
                    n.to_string(),
                    r.x.to_string(),
                    r.f.to_string(),
                    r.kn.to_string(),
                    r.dkn.map_or_else(String::new, |v| v.to_string()),
                ]);
            }
        }
        out.tables.push(("approx_grid".into(), g));
    }
    Ok(out)
}

fn rates(cfg: &RunConfig) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    let f = function(cfg)?;
    let curve = error_curve(&f, &cfg.phi, &cfg.kernel, &cfg.ns, cfg.lambdas[0])?;
    let mut table = report::error_curve_table(&curve);
    let mut errors = curve.lux_errors.clone();
    if cfg.noise > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for (n, e) in curve.ns.iter().zip(errors.iter_mut()) {
            *e *= 1.0 + cfg.noise * rng.gen_range(-1.0..1.0);
            table.push([
                curve.phi.clone(),
                curve.kernel.clone(),
                curve.f.clone(),
                n.to_string(),
                "luxemburg_noisy".into(),
                e.to_string(),
                String::new(),
            ]);
        }
    }
    match rate_fit(&curve.ns, &errors, cfg.n_min) {
        Ok(fit) => {
            out.line(format!("slope = {}", fit.slope));
            out.line(format!("intercept = {}", fit.intercept));
            out.line(format!("r2 = {}", fit.r2));
            out.line(format!("points = {}", fit.points));
        }
        Err(e) => out.line(format!("fit unavailable: {e}")),
    }
    out.tables.push(("rates".into(), table));
    Ok(out)
}

fn setup<'a>(cfg: &'a RunConfig, f: &'a IntervalFunction) -> BoundSetup<'a> {
    BoundSetup::new(f, &cfg.phi, &cfg.kernel)
        .with_ns(cfg.ns.clone())
        .with_hs(cfg.hs.clone())
        .with_steklov_order(cfg.steklov_order)
        .with_window(cfg.window)
        .with_tol(cfg.tol)
}

/// Runs every requested kind, collecting reports and unmet hypotheses.
fn run_bounds(cfg: &RunConfig, f: &IntervalFunction, out: &mut Outcome) -> Result<Vec<BoundReport>, Error> {
    let s = setup(cfg, f);
    let mut reports = Vec::new();
    for &kind in &cfg.kinds {
        match verify_bound(kind, &s) {
            Ok(rs) => {
                let failed = rs.iter().filter(|r| !r.pass).count();
                out.line(format!("{kind}: {} checked, {failed} failed", rs.len()));
                if failed > 0 {
                    out.mark(Status::BoundFailure);
                }
                reports.extend(rs);
            }
            Err(e @ (Error::HypothesisNotMet(_) | Error::MissingDerivative(_))) => {
                out.line(format!("{kind}: {e}"));
                out.mark(Status::HypothesisNotMet);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(reports)
}

fn bounds(cfg: &RunConfig) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    let f = function(cfg)?;
    let reports = run_bounds(cfg, &f, &mut out)?;
    out.tables.push(("bounds".into(), report::bound_table(&reports)));
    Ok(out)
}

fn lipschitz(cfg: &RunConfig) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    let f = function(cfg)?;
    let (kind, label) = match cfg.modulus {
        ModulusChoice::Strong => (ModulusKind::Strong, "strong"),
        ModulusChoice::Weak => (
            ModulusKind::Weak {
                lambdas: cfg.lambdas.clone(),
            },
            "weak",
        ),
    };
    let mut t = Table::new(["f", "phi", "modulus", "lambda", "delta", "value"]);
    match lipschitz_fit(&f, &cfg.phi, &kind, &cfg.deltas) {
        Ok(fit) => {
            let lambda = fit.lambda.map_or_else(String::new, |l| l.to_string());
            for (d, m) in fit.deltas.iter().zip(&fit.moduli) {
                t.push([
                    f.label().to_string(),
                    cfg.phi.to_string(),
                    label.to_string(),
                    lambda.clone(),
                    d.to_string(),
                    m.to_string(),
                ]);
            }
            out.line(format!("nu_hat = {}", fit.nu_hat));
            out.line(format!("r2 = {}", fit.r2));
            if let Some(l) = fit.lambda {
                out.line(format!("lambda = {l}"));
            }
        }
        Err(Error::NotInWeakClass) => {
            out.line(format!("{}", Error::NotInWeakClass));
            out.mark(Status::BoundFailure);
        }
        Err(e) => return Err(e),
    }
    out.tables.push(("lipschitz".into(), t));
    Ok(out)
}

fn inverse_rows(r: &kantorlab_core::analysis::InverseReport) -> Table {
    let mut t = Table::new(["quantity", "x", "value"]);
    for (n, e) in r.curve.ns.iter().zip(&r.curve.lux_errors) {
        t.push(["luxemburg_error".to_string(), n.to_string(), e.to_string()]);
    }
    for (d, m) in r.lipschitz.deltas.iter().zip(&r.lipschitz.moduli) {
        t.push(["modulus".to_string(), d.to_string(), m.to_string()]);
    }
    t
}

fn describe_inverse(r: &kantorlab_core::analysis::InverseReport, out: &mut Outcome) {
    match r.error_slope {
        Some(s) => out.line(format!("error slope = {s}")),
        None => out.line("error slope = none (errors vanish)"),
    }
    out.line(format!("nu_hat = {}", r.nu_hat));
    out.line(format!("gap = {}", r.gap));
    out.line(format!("degenerate = {}", r.degenerate));
    out.line(format!("boundary = {}", r.boundary));
    out.line(format!("pass = {}", r.pass));
}

fn inverse(cfg: &RunConfig) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    let f = function(cfg)?;
    match inverse_consistency(&f, &cfg.phi, &cfg.kernel, &cfg.ns, &cfg.deltas) {
        Ok(r) => {
            describe_inverse(&r, &mut out);
            if !r.pass {
                out.mark(Status::BoundFailure);
            }
            out.tables.push(("inverse".into(), inverse_rows(&r)));
        }
        Err(e @ Error::HypothesisNotMet(_)) => {
            out.line(e.to_string());
            out.mark(Status::HypothesisNotMet);
            out.tables
                .push(("inverse".into(), Table::new(["quantity", "x", "value"])));
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}

fn examples(cfg: &RunConfig) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    let mut t = Table::new(["example", "parameter", "quantity", "level", "value", "reference"]);
    if matches!(cfg.which, ExampleChoice::Inclusion | ExampleChoice::All) {
        let levels = match (&cfg.levels, cfg.which) {
            (Some(l), ExampleChoice::Inclusion) => l.clone(),
            _ => DIVERGENCE_LEVELS.to_vec(),
        };
        let mut t2_ratios = Vec::new();
        let mut ok = true;
        for &s in &cfg.ts {
            let r = inclusion_example(s, &levels)?;
            let ts = s.to_string();
            t.push([
                "inclusion".into(),
                ts.clone(),
                "T1".into(),
                String::new(),
                r.t1_quadrature.to_string(),
                r.t1_closed.to_string(),
            ]);
            t.push([
                "inclusion".into(),
                ts.clone(),
                "T2".into(),
                String::new(),
                r.t2_quadrature.to_string(),
                r.t2_closed.to_string(),
            ]);
            for d in &r.divergence {
                t.push([
                    "inclusion".into(),
                    ts.clone(),
                    "lambda2".into(),
                    d.level.to_string(),
                    d.quadrature.to_string(),
                    d.closed.to_string(),
                ]);
            }
            let dev = r.max_deviation();
            let diverges = r.diverges_past(1e3);
            out.line(format!(
                "t = {s}: max deviation = {dev:e}, lambda=2 probe past 1e3 = {diverges}"
            ));
            ok &= dev < 1e-6 && diverges;
            t2_ratios.push(r.t2_quadrature / s.sqrt());
        }
        if t2_ratios.len() >= 2 {
            let max = t2_ratios.iter().copied().fold(f64::MIN, f64::max);
            let min = t2_ratios.iter().copied().fold(f64::MAX, f64::min);
            out.line(format!("T2/sqrt(t) spread = {}", max / min));
        }
        if !ok {
            out.mark(Status::BoundFailure);
        }
    }
    if matches!(cfg.which, ExampleChoice::Sobolev | ExampleChoice::All) {
        let levels = match (&cfg.levels, cfg.which) {
            (Some(l), ExampleChoice::Sobolev) => l.clone(),
            _ => SOBOLEV_LEVELS.to_vec(),
        };
        let r = sobolev_counterexample(cfg.p, &levels)?;
        let ps = cfg.p.to_string();
        for row in &r.rows {
            t.push([
                "sobolev".into(),
                ps.clone(),
                "modular".into(),
                row.level.to_string(),
                row.modular.to_string(),
                String::new(),
            ]);
            t.push([
                "sobolev".into(),
                ps.clone(),
                "lp".into(),
                row.level.to_string(),
                row.lp.to_string(),
                row.lp_closed.to_string(),
            ]);
        }
        let (change, lp) = (r.last_change(), r.last_lp());
        out.line(format!("sobolev: last modular change = {change:e}, last lp = {lp}"));
        if !(change < 1e-6 && lp > 100.0) {
            out.mark(Status::BoundFailure);
        }
    }
    out.tables.push(("examples".into(), t));
    Ok(out)
}

fn full_report(cfg: &RunConfig) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    let f = function(cfg)?;
    let mut t = Table::new(["check", "detail", "value", "pass"]);
    let curve = error_curve(&f, &cfg.phi, &cfg.kernel, &cfg.ns, cfg.lambdas[0])?;
    for (n, e) in curve.ns.iter().zip(&curve.lux_errors) {
        t.push([
            "luxemburg_error".to_string(),
            format!("n={n}"),
            e.to_string(),
            String::new(),
        ]);
    }
    match rate_fit(&curve.ns, &curve.lux_errors, cfg.n_min) {
        Ok(fit) => {
            t.push([
                "rate_fit".to_string(),
                format!("r2={}", fit.r2),
                fit.slope.to_string(),
                String::new(),
            ]);
            out.line(format!("slope = {} (r2 = {})", fit.slope, fit.r2));
        }
        Err(e) => out.line(format!("fit unavailable: {e}")),
    }
    for r in run_bounds(cfg, &f, &mut out)? {
        t.push([
            r.kind.to_string(),
            r.params.to_string(),
            r.ratio.to_string(),
            r.pass.to_string(),
        ]);
    }
    match inverse_consistency(&f, &cfg.phi, &cfg.kernel, &cfg.ns, &cfg.deltas) {
        Ok(r) => {
            t.push([
                "inverse".to_string(),
                format!("nu_hat={}", r.nu_hat),
                r.gap.to_string(),
                r.pass.to_string(),
            ]);
            describe_inverse(&r, &mut out);
            if !r.pass {
                out.mark(Status::BoundFailure);
            }
        }
        Err(e @ Error::HypothesisNotMet(_)) => {
            out.line(format!("inverse: {e}"));
            out.mark(Status::HypothesisNotMet);
        }
        Err(Error::TooFewPoints(k)) => out.line(format!("inverse: too few points for a fit ({k})")),
        Err(e) => return Err(e),
    }
    out.tables.push(("report".into(), t));
    Ok(out)
}

/// Summary text: the effective configuration followed by the results.
pub fn summary(cfg: &RunConfig, outcome: &Outcome) -> String {
    let mut s = format!("command = {}\n", cfg.command);
    for (k, v) in &cfg.settings {
        s.push_str(&format!("{k} = {v}\n"));
    }
    s.push_str(&format!("resolved ns = {}\n", join(&cfg.ns)));
    s.push('\n');
    for line in &outcome.results {
        s.push_str(line);
        s.push('\n');
    }
    s.push_str(&format!("status = {}\n", outcome.status().code()));
    s
}

/// Writes every table and the summary into the output directory.
pub fn write_outputs(cfg: &RunConfig, outcome: &Outcome) -> Result<Vec<PathBuf>, Error> {
    fs::create_dir_all(&cfg.out_dir)?;
    let mut written = Vec::new();
    for (stem, table) in &outcome.tables {
        let path = cfg.out_dir.join(format!("{stem}.csv"));
        let file = fs::File::create(&path)?;
        table.write(std::io::BufWriter::new(file))?;
        written.push(path);
    }
    let path = cfg.out_dir.join(format!("{}_summary.txt", cfg.command));
    let mut file = fs::File::create(&path)?;
    file.write_all(summary(cfg, outcome).as_bytes())?;
    written.push(path);
    Ok(written)
}

/// Runs the command, writes its artifacts and returns the exit status.
pub fn run(cfg: &RunConfig) -> (Status, String) {
    match execute(cfg) {
        Ok(outcome) => {
            let text = summary(cfg, &outcome);
            match write_outputs(cfg, &outcome) {
                Ok(_) => (outcome.status(), text),
                Err(e) => (Status::Numeric, format!("{text}error: {e}\n")),
            }
        }
        Err(e) => (status_of(&e), format!("error: {e}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_failure_outranks_hypothesis() {
        assert_eq!(
            Status::HypothesisNotMet.worst(Status::BoundFailure),
            Status::BoundFailure
        );
        assert_eq!(
            Status::BoundFailure.worst(Status::HypothesisNotMet),
            Status::BoundFailure
        );
        assert_eq!(Status::Pass.worst(Status::HypothesisNotMet), Status::HypothesisNotMet);
        assert_eq!(Status::Numeric.code(), 4);
    }

    #[test]
    fn error_statuses() {
        assert_eq!(
            status_of(&Error::HypothesisNotMet("x".into())),
            Status::HypothesisNotMet
        );
        assert_eq!(status_of(&Error::InvalidArgument("x".into())), Status::Usage);
        assert_eq!(status_of(&Error::NotANumber { x: 0.0 }), Status::Numeric);
    }
}
