//! Batch front end: verification suites and table dumps as JSON or CSV.
//!
//! Exit codes: 0 when every check passes, 1 when a numerical check fails,
//! 2 for usage or configuration errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::algebra::{matrix_from_z, random_point, CartanPoint};
use crate::basis::{bergman_kernel, cs_overlap, indices_up_to, kernel_partial_sum, mc_gram, BasisIndex};
use crate::fock::{
    exchange, exciton_cs, exciton_order_expansion, exciton_orders, mass_spectrum_action, occupancy_constraints,
    CompoundCache,
};
use crate::generators::{
    apply_generator_diff, casimir2, dropped_coefficient_max, generator_matrix_elements, symbol, symbol_operator,
    symbol_series, GeneratorName, SymbolName,
};
use crate::{basis::basis_poly, Error, Polynomial, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "ccs", version, about = "U(2,2) discrete-series verification suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Partial sums of the basis expansion against the closed-form kernel.
    KernelCheck,
    /// Monte Carlo Gram matrix of the low-degree basis.
    OrthoCheck,
    /// Quadratic Casimir on every basis index up to the degree cutoff.
    Casimir,
    /// Closed-form matrix elements, checked against the differential action.
    GeneratorsDump,
    /// Eight-mode realization: orthonormality, constraints, exchange, cross-model rows.
    FockVerify,
    /// Exciton coherent state order by order against the analytic expansion.
    CsExpand,
    /// Closed-form coherent-state symbols against the series oracle.
    Symbols,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::KernelCheck => "kernel-check",
            Command::OrthoCheck => "ortho-check",
            Command::Casimir => "casimir",
            Command::GeneratorsDump => "generators-dump",
            Command::FockVerify => "fock-verify",
            Command::CsExpand => "cs-expand",
            Command::Symbols => "symbols",
        }
    }

    fn default_lambda(&self) -> i64 {
        match self {
            Command::OrthoCheck | Command::Casimir => 5,
            Command::FockVerify | Command::CsExpand => 3,
            _ => 4,
        }
    }

    fn default_degree(&self) -> u32 {
        match self {
            Command::KernelCheck | Command::Symbols => 40,
            Command::OrthoCheck | Command::GeneratorsDump => 2,
            Command::Casimir => 6,
            Command::FockVerify => 3,
            Command::CsExpand => 4,
        }
    }

    fn default_tolerance(&self) -> f64 {
        match self {
            Command::KernelCheck => 1e-8,
            // in standard errors
            Command::OrthoCheck => 3.0,
            Command::Symbols => 1e-6,
            _ => 1e-10,
        }
    }
}

fn parse_samples(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let x: f64 = s.parse().map_err(|_| format!("not a sample count: {s}"))?;
    if x.is_finite() && x >= 1.0 && x.fract() == 0.0 && x <= u64::MAX as f64 {
        Ok(x as u64)
    } else {
        Err(format!("not a sample count: {s}"))
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct RunConfig {
    /// Scale dimension λ.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lambda: Option<i64>,
    /// Degree cutoff 2j + 2m (or exciton number for cs-expand).
    #[arg(long, global = true)]
    pub degree: Option<u32>,
    /// Monte Carlo sample count; accepts forms like 1e6.
    #[arg(long, global = true, value_parser = parse_samples, default_value = "1000000")]
    pub mc_samples: u64,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Pass threshold (standard errors for ortho-check).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Threshold for the truncated exciton overlap in cs-expand.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub overlap_tolerance: f64,
}

/// Resolved settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub command: Command,
    pub lambda: i64,
    pub degree: u32,
    pub mc_samples: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub overlap_tolerance: f64,
}

impl Settings {
    pub fn resolve(command: Command, c: &RunConfig) -> Self {
        Self {
            command,
            lambda: c.lambda.unwrap_or(command.default_lambda()),
            degree: c.degree.unwrap_or(command.default_degree()),
            mc_samples: c.mc_samples,
            seed: c.seed,
            tolerance: c.tolerance.unwrap_or(command.default_tolerance()),
            overlap_tolerance: c.overlap_tolerance,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda,
            "degree": self.degree,
            "mc_samples": self.mc_samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
        })
    }
}

/// A table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Text(v) => json!(v),
            Cell::Bool(v) => json!(v),
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(v) if v.contains([',', '"']) => format!("\"{}\"", v.replace('"', "\"\"")),
            Cell::Text(v) => v.clone(),
            Cell::Bool(v) => v.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub settings: Settings,
    pub pass: bool,
    pub summary: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    fn new(settings: &Settings, columns: &[&'static str]) -> Self {
        Self { settings: settings.clone(), pass: true, summary: Map::new(), columns: columns.to_vec(), rows: Vec::new() }
    }

    fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    fn note(&mut self, key: &str, v: impl Into<Value>) {
        self.summary.insert(key.to_string(), v.into());
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().zip(r).map(|(k, c)| (k.to_string(), c.to_json())).collect()))
            .collect();
        json!({
            "schema": 1,
            "command": self.settings.command.name(),
            "config": self.settings.to_json(),
            "pass": self.pass,
            "summary": self.summary,
            "rows": rows,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.iter().map(Cell::to_csv).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
        }
    }
}

fn label(idx: &BasisIndex) -> String {
    format!("{}/{}/{}/{}", idx.two_j, idx.m, idx.two_qa, idx.two_qb)
}

fn require_lambda(lambda: i64, min: i64) -> Result<(), Error> {
    if lambda < min {
        return Err(Error::InvalidScaleDimension {
            lambda,
            reason: if min == 2 { "needs lambda >= 2" } else { "needs lambda >= 3" },
        });
    }
    Ok(())
}

fn kernel_check(s: &Settings) -> Result<Report, Error> {
    require_lambda(s.lambda, 2)?;
    let mut r = Report::new(s, &["pair", "norm_z", "norm_zp", "n", "residual"]);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let diag = CartanPoint::new(matrix_from_z([C64::new(0.3, 0.0), C64::default(), C64::default(), C64::default()]))?;
    let mut pairs = vec![(diag, diag), (random_point(&mut rng, 0.5), CartanPoint::origin())];
    pairs.extend((0..20).map(|_| (random_point(&mut rng, 0.5), random_point(&mut rng, 0.5))));
    let mut steps: Vec<u32> = (0..s.degree).step_by(10).collect();
    steps.push(s.degree);
    let mut worst = 0.0f64;
    for (p, (z, zp)) in pairs.iter().enumerate() {
        let exact = bergman_kernel(z, zp, s.lambda)?;
        let norm = |x: &CartanPoint| crate::algebra::hermitian_eigenvalues(&(x.matrix().adjoint() * x.matrix()))[1].sqrt();
        for &n in &steps {
            let res = (kernel_partial_sum(z, zp, s.lambda, n)? - exact).norm();
            if n == s.degree {
                worst = worst.max(res);
            }
            r.row(vec![p.into(), norm(z).into(), norm(zp).into(), n.into(), res.into()]);
        }
    }
    r.pass = worst < s.tolerance;
    r.note("max_residual", worst);
    Ok(r)
}

fn ortho_check(s: &Settings) -> Result<Report, Error> {
    require_lambda(s.lambda, 2)?;
    let mut r = Report::new(s, &["row", "col", "re", "im", "stderr", "z_score"]);
    let idx = indices_up_to(s.lambda, s.degree);
    let g = mc_gram(&idx, s.lambda, s.mc_samples, s.seed)?;
    let n = idx.len();
    for a in 0..n {
        for b in 0..n {
            let e = g.entries[a * n + b];
            let target = C64::new(if a == b { 1.0 } else { 0.0 }, 0.0);
            r.row(vec![
                label(&idx[a]).into(),
                label(&idx[b]).into(),
                e.estimate.re.into(),
                e.estimate.im.into(),
                e.stderr.into(),
                e.z_score(target).into(),
            ]);
        }
    }
    let mass_z = g.total_mass.z_score(C64::new(1.0, 0.0));
    r.pass = g.max_z_score() <= s.tolerance && mass_z <= s.tolerance;
    r.note("max_deviation", g.max_deviation());
    r.note("max_z_score", g.max_z_score());
    r.note("total_mass", g.total_mass.estimate.re);
    r.note("total_mass_stderr", g.total_mass.stderr);
    r.note("acceptance", g.acceptance);
    Ok(r)
}

fn casimir(s: &Settings) -> Result<Report, Error> {
    require_lambda(s.lambda, 2)?;
    let mut r = Report::new(s, &["index", "eigenvalue", "off_diagonal", "closed_form"]);
    let expect = (s.lambda * (s.lambda - 4)) as f64;
    let mut worst = 0.0f64;
    for idx in indices_up_to(s.lambda, s.degree) {
        let c = casimir2(&idx);
        worst = worst.max((c.eigenvalue - expect).abs()).max(c.off_diagonal).max((c.closed_form - expect).abs());
        r.row(vec![label(&idx).into(), c.eigenvalue.into(), c.off_diagonal.into(), c.closed_form.into()]);
    }
    r.pass = worst < s.tolerance;
    r.note("expected", expect);
    r.note("max_residual", worst);
    Ok(r)
}

fn generators_dump(s: &Settings) -> Result<Report, Error> {
    require_lambda(s.lambda, 2)?;
    let mut r = Report::new(s, &["generator", "row", "col", "re", "im"]);
    let (mut dropped, mut oracle) = (0.0f64, 0.0f64);
    for idx in indices_up_to(s.lambda, s.degree) {
        let phi = basis_poly(&idx)?;
        for g in GeneratorName::all() {
            let row = generator_matrix_elements(g, &idx);
            dropped = dropped.max(dropped_coefficient_max(g, &idx));
            let mut rhs = Polynomial::zero();
            for (t, c) in &row.targets {
                rhs = &rhs + &basis_poly(t)?.scale(*c);
                r.row(vec![g.to_string().into(), label(&idx).into(), label(t).into(), c.re.into(), c.im.into()]);
            }
            oracle = oracle.max(apply_generator_diff(g, &phi, s.lambda).max_abs_diff(&rhs));
        }
    }
    r.pass = dropped < s.tolerance && oracle < s.tolerance;
    r.note("max_dropped_coefficient", dropped);
    r.note("max_differential_residual", oracle);
    Ok(r)
}

fn fock_verify(s: &Settings) -> Result<Report, Error> {
    require_lambda(s.lambda, 2)?;
    let mut r = Report::new(s, &["check", "index", "residual", "pass"]);
    let cache = CompoundCache::new();
    let idx = indices_up_to(s.lambda, s.degree);
    let add = |r: &mut Report, check: &str, i: Option<&BasisIndex>, res: f64, ok: bool| {
        r.pass &= ok;
        r.row(vec![check.into(), i.map(label).unwrap_or_default().into(), res.into(), ok.into()]);
    };
    let mut gram = 0.0f64;
    for a in &idx {
        for b in &idx {
            let e = if a == b { 1.0 } else { 0.0 };
            gram = gram.max((cache.state(a)?.inner(&cache.state(b)?) - C64::new(e, 0.0)).norm());
        }
    }
    add(&mut r, "orthonormality", None, gram, gram < s.tolerance);
    let parity = if s.lambda % 2 == 0 { 1.0 } else { -1.0 };
    let mut parity_ok = true;
    for i in &idx {
        let v = cache.state(i)?;
        let c = occupancy_constraints(&v, s.lambda, Some(i))?;
        let bad = c.tuples.iter().filter(|t| !t.pass).count();
        add(&mut r, "occupancy", Some(i), bad as f64, c.pass);
        let ex = exchange(&v)?.max_abs_diff(&v.scale(C64::new(parity, 0.0)));
        parity_ok &= ex < s.tolerance;
        add(&mut r, "exchange", Some(i), ex, ex < s.tolerance);
        let cross = GeneratorName::all()
            .into_iter()
            .map(|g| cache.generator_residual(g, i))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .fold(0.0, f64::max);
        add(&mut r, "cross_model", Some(i), cross, cross < s.tolerance);
        let mass = mass_spectrum_action(i)?;
        let m = mass.fock_residual.max(mass.analytic_residual);
        add(&mut r, "mass", Some(i), m, m < s.tolerance);
        let mut hel = 0.0f64;
        for p in &cache.ops.constituents {
            let w = p.pauli_lubanski();
            hel = hel.max(p.p_squared().apply(&v)?.norm());
            for mu in 0..4 {
                let rhs = p.p[mu].apply(&v)?.scale(C64::new((s.lambda - 2) as f64 / 2.0, 0.0));
                hel = hel.max(w[mu].apply(&v)?.max_abs_diff(&rhs));
            }
        }
        add(&mut r, "helicity", Some(i), hel, hel < s.tolerance);
    }
    r.note("exchange_parity", if parity_ok { json!(parity) } else { Value::Null });
    Ok(r)
}

fn cs_expand(s: &Settings) -> Result<Report, Error> {
    require_lambda(s.lambda, 2)?;
    let mut r = Report::new(s, &["point", "order", "residual"]);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut worst = 0.0f64;
    for p in 0usize..3 {
        let z = random_point(&mut rng, 0.5);
        let orders = exciton_orders(&z, s.lambda, s.degree)?;
        for (n, term) in orders.iter().enumerate() {
            let res = term.max_abs_diff(&exciton_order_expansion(&z, s.lambda, n as u32)?);
            worst = worst.max(res);
            r.row(vec![p.into(), n.into(), res.into()]);
        }
    }
    let z1 = random_point(&mut rng, 0.25);
    let z2 = random_point(&mut rng, 0.25);
    let ov = exciton_cs(&z1, s.lambda, 6)?.inner(&exciton_cs(&z2, s.lambda, 6)?);
    let ov_res = (ov - cs_overlap(&z2, &z1, s.lambda)?).norm();
    r.pass = worst < s.tolerance && ov_res < s.overlap_tolerance;
    r.note("max_order_residual", worst);
    r.note("overlap_residual", ov_res);
    Ok(r)
}

fn symbols(s: &Settings) -> Result<Report, Error> {
    require_lambda(s.lambda, 2)?;
    let mut r = Report::new(s, &["point", "symbol", "closed_re", "closed_im", "series_re", "series_im", "residual"]);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut worst = 0.0f64;
    for p in 0usize..5 {
        let z = random_point(&mut rng, 0.4);
        for name in SymbolName::all() {
            let closed = symbol(name, &z, s.lambda);
            let series = symbol_series(&z, s.lambda, s.degree, symbol_operator(name))?;
            let res = (closed - series).norm();
            worst = worst.max(res);
            r.row(vec![
                p.into(),
                name.to_string().into(),
                closed.re.into(),
                closed.im.into(),
                series.re.into(),
                series.im.into(),
                res.into(),
            ]);
        }
    }
    r.pass = worst < s.tolerance;
    r.note("max_residual", worst);
    Ok(r)
}

pub fn execute(s: &Settings) -> Result<Report, Error> {
    match s.command {
        Command::KernelCheck => kernel_check(s),
        Command::OrthoCheck => ortho_check(s),
        Command::Casimir => casimir(s),
        Command::GeneratorsDump => generators_dump(s),
        Command::FockVerify => fock_verify(s),
        Command::CsExpand => cs_expand(s),
        Command::Symbols => symbols(s),
    }
}

/// Parses arguments, runs the command, writes the report and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let settings = Settings::resolve(cli.command, &cli.config);
    let report = match execute(&settings) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = report.render(cli.config.format);
    let written = match &cli.config.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return 2;
    }
    if report.pass {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_counts() {
        assert_eq!(parse_samples("1e6"), Ok(1_000_000));
        assert_eq!(parse_samples("250"), Ok(250));
        assert!(parse_samples("1.5").is_err());
        assert!(parse_samples("x").is_err());
    }

    #[test]
    fn csv_cells() {
        assert_eq!(Cell::Float(0.1).to_csv(), "1.0000000000000001e-1");
        assert_eq!(Cell::Text("a,b".into()).to_csv(), "\"a,b\"");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["ccs", "kernel-check", "--lambda", "1"]), 2);
        assert_eq!(run(["ccs", "no-such-command"]), 2);
    }
}
