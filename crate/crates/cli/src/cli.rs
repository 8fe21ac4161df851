//! Subcommand front end. Exit codes: 0 success, 1 usage or I/O error,
//! 2 input parse error, 3 Gröbner budget exhausted (a partial report is
//! still written).

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ltv_core::classifier::{
    classify, classify_rational, complexification_compare, lipschitz_gradient_probe, sample_values, tube_distance_probe, Config, Field,
    GradientSchedule, TubeSchedule,
};
use ltv_core::critical::{critical_ideal, real_critical_values};
use ltv_core::dependence::factor_through_projection;
use ltv_core::groebner::GbBudget;
use ltv_core::infinity::{cone_constancy_from_reports, fiber_infinity};
use ltv_core::numeric::NumericMap;
use ltv_core::poly::{rational_from_f64, rational_to_f64};
use ltv_core::properness::{is_proper_at_complex, jelonek_ideal, probe_numeric, ProbeSchedule};
use ltv_core::{PolyMap, Rational};
use serde_json::{json, Map, Value};

use crate::parser::{parse_source, InputMap, MapSource};
use crate::report::{self, cone_constancy_json, empty_document, emit_report, render_text, set_factorization, set_generators};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ltv", version, about = "Lipschitz trivial values of polynomial mappings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full classification of the values of the mapping.
    Analyze(Common),
    /// Invariance directions and the factorization f = g ∘ π.
    Factor(Common),
    /// Generators of the non-properness set of the reduced mapping.
    Jelonek(Common),
    /// Generators of the critical-value set of the reduced mapping.
    Critical(Common),
    /// Fibres at infinity and their cones at the given values.
    Infinity {
        #[command(flatten)]
        common: Common,
        /// A value `c1,c2,...`; repeat for several. Sampled when omitted.
        #[arg(long = "at", allow_hyphen_values = true)]
        at: Vec<String>,
    },
    /// Numeric probes at one value.
    Probe {
        #[command(flatten)]
        common: Common,
        /// The value `c1,c2,...`.
        #[arg(long = "at", allow_hyphen_values = true)]
        at: String,
        /// Also measure the distance between the levels at `c` and at this value.
        #[arg(long = "tube-to", allow_hyphen_values = true)]
        tube_to: Option<String>,
        /// Also sample the Jacobian norm over preimages near `c`.
        #[arg(long)]
        gradient: bool,
    },
    /// Compare the complex and real classifications.
    Compare(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Real,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input file in the `ring Q[...]; map f: (...)` format.
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = FieldArg::Complex)]
    pub field: FieldArg,
    #[arg(long, env = "LTV_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Increasing probe radii, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    #[arg(long)]
    pub tol_zero: Option<f64>,
    #[arg(long)]
    pub mu_floor: Option<f64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_basis: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_degree: Option<u32>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Also write the JSON report to this file.
    #[arg(long)]
    pub json_path: Option<PathBuf>,
}

impl Common {
    pub fn field(&self) -> Field {
        match self.field {
            FieldArg::Real => Field::Real,
            FieldArg::Complex => Field::Complex,
        }
    }

    pub fn config(&self) -> Result<Config, String> {
        let mut budget = GbBudget::default();
        if let Some(b) = self.max_basis {
            budget.max_basis = b as usize;
        }
        if let Some(d) = self.max_degree {
            budget.max_degree = d;
        }
        let mut schedule = ProbeSchedule { seed: self.seed, ..ProbeSchedule::default() };
        if let Some(r) = &self.radii {
            schedule.radii = r.clone();
        }
        if let Some(t) = self.tol_zero {
            schedule.tol_zero = t;
        }
        if let Some(m) = self.mu_floor {
            schedule.mu_floor = m;
        }
        schedule.validate().map_err(|e| e.to_string())?;
        Ok(Config { budget, schedule, ..Config::default() })
    }
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Analyze(c) | Command::Factor(c) | Command::Jelonek(c) | Command::Critical(c) | Command::Compare(c) => c,
            Command::Infinity { common, .. } | Command::Probe { common, .. } => common,
        }
    }
}

/// Parses `c1,c2,...` as exact rationals; decimals are read as the binary
/// value of the nearest double.
pub fn parse_value(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<Rational>()
                .ok()
                .or_else(|| part.parse::<f64>().ok().and_then(rational_from_f64))
                .ok_or_else(|| format!("`{part}` is not a number"))
        })
        .collect()
}

enum Failure {
    Usage(String),
    Core(ltv_core::Error),
}

impl From<ltv_core::Error> for Failure {
    fn from(e: ltv_core::Error) -> Self {
        Failure::Core(e)
    }
}

fn polynomial<'a>(src: &'a MapSource, what: &str) -> Result<&'a PolyMap, Failure> {
    match &src.map {
        InputMap::Polynomial(f) => Ok(f),
        InputMap::Rational(_) => Err(Failure::Usage(format!("`{what}` needs a polynomial map"))),
    }
}

fn check_arity(c: &[Rational], p: usize) -> Result<(), Failure> {
    if c.len() == p {
        Ok(())
    } else {
        Err(Failure::Usage(format!("value has {} components, the map has {p}", c.len())))
    }
}

/// Fills `doc`; returns whether a budget was exhausted along the way.
fn execute(cmd: &Command, src: &MapSource, config: &Config, doc: &mut Map<String, Value>) -> Result<bool, Failure> {
    let field = cmd.common().field();
    let budget = &config.budget;
    match cmd {
        Command::Analyze(_) => {
            let rep = match &src.map {
                InputMap::Polynomial(f) => classify(f, field, config)?,
                InputMap::Rational(r) => classify_rational(r, field, config)?,
            };
            let Value::Object(full) = emit_report(src, &rep) else { unreachable!() };
            *doc = full;
            Ok(rep.budget_exceeded)
        }
        Command::Factor(_) => {
            let f = polynomial(src, "factor")?;
            set_factorization(doc, f, &factor_through_projection(f)?);
            Ok(false)
        }
        Command::Jelonek(_) => {
            let f = polynomial(src, "jelonek")?;
            let fact = factor_through_projection(f)?;
            set_factorization(doc, f, &fact);
            let jel = jelonek_ideal(&fact.g, budget)?;
            set_generators(doc, "jelonek_generators", jel.ideal.generators());
            doc.insert("jelonek_unit".into(), Value::Bool(jel.is_unit()));
            Ok(false)
        }
        Command::Critical(_) => {
            let f = polynomial(src, "critical")?;
            let fact = factor_through_projection(f)?;
            set_factorization(doc, f, &fact);
            let crit = critical_ideal(&fact.g, budget)?;
            set_generators(doc, "critical_generators", crit.ideal.generators());
            if field == Field::Real && fact.g.codomain_dim() == 1 {
                let vals = real_critical_values(&fact.g, &crit, config.schedule.seed)?;
                doc.insert("real_critical_values".into(), Value::Array(vals.iter().map(report::critical_value_json).collect()));
            }
            Ok(false)
        }
        Command::Infinity { at, .. } => {
            let f = polynomial(src, "infinity")?;
            let p = f.codomain_dim();
            let values = if at.is_empty() {
                sample_values(p, config.samples, |_| Ok(false))?
            } else {
                at.iter().map(|s| parse_value(s).map_err(Failure::Usage)).collect::<Result<Vec<_>, _>>()?
            };
            let mut reports = Vec::new();
            for c in &values {
                check_arity(c, p)?;
                reports.push(fiber_infinity(f, c, budget)?);
            }
            doc.insert("infinity".into(), Value::Array(reports.iter().map(report::infinity_json).collect()));
            if reports.len() >= 2 {
                let outcome = cone_constancy_from_reports(&reports);
                let verdict = if outcome.passed() { "PASS" } else { "FAIL" };
                doc.insert(
                    "checks".into(),
                    json!([{ "name": "cone_constancy", "verdict": verdict, "data": cone_constancy_json(&outcome) }]),
                );
            }
            Ok(false)
        }
        Command::Probe { at, tube_to, gradient, .. } => {
            let c = parse_value(at).map_err(Failure::Usage)?;
            let cf: Vec<f64> = c.iter().map(rational_to_f64).collect();
            let numeric: Box<dyn NumericMap> = match &src.map {
                InputMap::Polynomial(f) => Box::new(f.to_float()),
                InputMap::Rational(r) => Box::new(r.to_float()),
            };
            check_arity(&c, numeric.codomain_dim())?;
            let mut block = Map::new();
            let properness = match (&src.map, field) {
                (InputMap::Polynomial(f), Field::Complex) => {
                    let fact = factor_through_projection(f)?;
                    let jel = jelonek_ideal(&fact.g, budget)?;
                    is_proper_at_complex(&fact.g, &jel, &c, budget)?
                }
                _ => probe_numeric(numeric.as_ref(), &cf, &config.schedule),
            };
            block.insert("properness".into(), report::properness_json(&properness));
            if let Some(t) = tube_to {
                let t: Vec<f64> = parse_value(t).map_err(Failure::Usage)?.iter().map(rational_to_f64).collect();
                let sched = TubeSchedule { seed: config.schedule.seed, ..TubeSchedule::default() };
                block.insert("tube".into(), report::tube_json(&tube_distance_probe(numeric.as_ref(), &cf, &t, &sched)?));
            }
            if *gradient {
                let sched = GradientSchedule { seed: config.schedule.seed, ..GradientSchedule::default() };
                block.insert("gradient".into(), report::gradient_json(&lipschitz_gradient_probe(numeric.as_ref(), &cf, &sched)));
            }
            doc.insert("probe".into(), Value::Object(block));
            Ok(false)
        }
        Command::Compare(_) => {
            let f = polynomial(src, "compare")?;
            let cmp = complexification_compare(f, config)?;
            let Value::Object(mut full) = emit_report(src, &cmp.complex) else { unreachable!() };
            let check = report::check_json(&cmp.to_check());
            if let Some(Value::Array(checks)) = full.get_mut("checks") {
                checks.push(check);
            }
            full.insert("real_report".into(), emit_report(src, &cmp.real));
            *doc = full;
            Ok(cmp.complex.budget_exceeded || cmp.real.budget_exceeded)
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let common = cli.command.common();
    let config = match common.config() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAILURE;
        }
    };
    let text = match std::fs::read_to_string(&common.input) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", common.input.display());
            return EXIT_FAILURE;
        }
    };
    let src = match parse_source(&text) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "{}:{e}", common.input.display());
            return EXIT_PARSE;
        }
    };

    let mut doc = empty_document(&src, common.field().as_str());
    let code = match execute(&cli.command, &src, &config, &mut doc) {
        Ok(false) => EXIT_OK,
        Ok(true) => {
            let _ = writeln!(err, "warning: Gröbner budget exhausted; the report is partial");
            EXIT_BUDGET
        }
        Err(Failure::Core(e)) if e.is_budget() => {
            let _ = writeln!(err, "error: {e}");
            doc.insert("error".into(), Value::String(e.to_string()));
            EXIT_BUDGET
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAILURE;
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_FAILURE;
        }
    };

    let doc = Value::Object(doc);
    let json = serde_json::to_string_pretty(&doc).expect("JSON values always serialize") + "\n";
    if let Some(path) = &common.json_path {
        if let Err(e) = std::fs::write(path, &json) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return EXIT_FAILURE;
        }
    }
    let shown = match common.output {
        OutputFormat::Json => json,
        OutputFormat::Text => render_text(&doc),
    };
    if out.write_all(shown.as_bytes()).is_err() {
        return EXIT_FAILURE;
    }
    code
}
