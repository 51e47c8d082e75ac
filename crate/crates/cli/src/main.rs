//! `markov-shap`: SHAP scores for weighted automata and boolean models
//! under Markov background distributions.

mod load;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use markov_shap::json;
use markov_shap::oracle::{oracle_shap_patterns, oracle_shap_subsets, OracleConfig};
use markov_shap::shap::ShapEngine;
use markov_shap::{boolean, BooleanModel, Error, Pipeline, ShapReport, WeightMode};

use report::{Report, Verify};

#[derive(Debug, Parser)]
#[command(name = "markov-shap", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Scores for a weighted automaton under a Markov chain.
    ShapWa(ShapArgs),
    /// Scores for a disjoint DNF under a boolean Markov chain.
    ShapDnf(ShapArgs),
    /// Scores for a decision tree under a boolean Markov chain.
    ShapDt(ShapArgs),
    /// Scores plus the maximum deviation from brute-force enumeration.
    Verify(VerifyArgs),
    /// Operator constructions on automaton and transducer files.
    #[command(subcommand)]
    Algebra(AlgebraCommand),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    /// Classical Shapley kernel.
    Classic,
    /// Pattern-form weights 1/m over m = 1..n-1 free positions.
    Paper,
}

impl From<Mode> for WeightMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Classic => WeightMode::ClassicShapley,
            Mode::Paper => WeightMode::PaperLiteral,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelKind {
    Wa,
    Dnf,
    Dt,
}

#[derive(Debug, Args)]
struct ShapArgs {
    /// Model file.
    #[arg(long)]
    model: PathBuf,
    /// Distribution file.
    #[arg(long)]
    distribution: PathBuf,
    /// Explained instance.
    #[arg(long)]
    instance: String,
    /// 1-based position; all positions when omitted.
    #[arg(long)]
    position: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Classic)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include the per-k expectation terms.
    #[arg(long)]
    verbose: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = ModelKind::Wa)]
    kind: ModelKind,
    #[arg(long, default_value_t = 1e-8)]
    tolerance: f64,
    #[command(flatten)]
    shap: ShapArgs,
}

#[derive(Debug, Subcommand)]
enum AlgebraCommand {
    /// Hadamard product of two automata.
    Product { a: PathBuf, b: PathBuf },
    /// Sum of two automata.
    Sum { a: PathBuf, b: PathBuf },
    /// Projection of an automaton through a transducer.
    Project { a: PathBuf, t: PathBuf },
    /// Sum of an automaton's values over all words of one length.
    Partition {
        a: PathBuf,
        #[arg(long)]
        length: usize,
    },
}

/// Diagnostic plus exit status.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: String) -> Self {
        Failure { code: 1, message }
    }

    pub fn from_error(e: Error) -> Self {
        let code = if matches!(e, Error::Scale(_)) { 3 } else { 1 };
        Failure { code, message: e.to_string() }
    }

    pub fn context(mut self, what: &str) -> Self {
        self.message = format!("{what}: {}", self.message);
        self
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from_error(e)
    }
}

fn positions(requested: Option<usize>, n: usize) -> Result<Vec<usize>, Failure> {
    match requested {
        None => Ok((1..=n).collect()),
        Some(i) if (1..=n).contains(&i) => Ok(vec![i]),
        Some(i) => Err(Failure::input(format!("position {i} outside 1..={n}"))),
    }
}

/// Engine scores and, when asked, the oracle scores for the same positions.
fn scores(kind: ModelKind, args: &ShapArgs, with_oracle: bool) -> Result<(Report, Option<Vec<f64>>), Failure> {
    let mode: WeightMode = args.mode.into();
    let cfg = OracleConfig::default();
    match kind {
        ModelKind::Wa => {
            let model = load::parse(&args.model, json::parse_wa)?;
            let chain = load::parse(&args.distribution, json::parse_markov)?;
            let word = load::instance(chain.alphabet(), &args.instance)?;
            let pos = positions(args.position, word.len())?;
            let reports = ShapEngine::new(&model, &word, &chain)?.shap_positions(&pos, mode, args.verbose)?;
            let oracle = if with_oracle {
                let f = |u: &[usize]| model.evaluate(u);
                Some(pos.iter().map(|&i| oracle_shap_patterns(&f, &word, i, &chain, mode, &cfg)).collect::<Result<_, _>>()?)
            } else {
                None
            };
            Ok((Report::new(chain.alphabet().decode(&word), &reports), oracle))
        }
        ModelKind::Dnf | ModelKind::Dt => {
            let x = load::bits(&args.instance)?;
            let model = match kind {
                ModelKind::Dnf => BooleanModel::Dnf(load::parse(&args.model, json::parse_dnf)?),
                _ => {
                    let tree = load::parse(&args.model, json::parse_tree)?;
                    BooleanModel::Tree { tree, num_vars: x.len() }
                }
            };
            if model.num_vars() != x.len() {
                return Err(Failure::input(format!(
                    "instance has {} variables, model has {}",
                    x.len(),
                    model.num_vars()
                )));
            }
            let pv = load::vector_markov(&args.distribution, x.len())?;
            let pos = positions(args.position, x.len())?;
            let engine = boolean::boolean_engine(&model, &x, &pv)?;
            let reports: Vec<ShapReport<f64>> = engine.shap_positions(&pos, mode, args.verbose)?;
            let oracle = if with_oracle {
                let f = |z: &[bool]| if model.evaluate(z) { 1.0 } else { 0.0 };
                Some(pos.iter().map(|&i| oracle_shap_subsets(&f, &x, i, &pv, mode, &cfg)).collect::<Result<_, _>>()?)
            } else {
                None
            };
            Ok((Report::new(args.instance.trim().to_string(), &reports), oracle))
        }
    }
}

fn algebra(cmd: &AlgebraCommand) -> Result<String, Failure> {
    let wa = |p: &PathBuf| load::parse(p, json::parse_wa);
    let doc = |a| serde_json::to_string_pretty(&json::wa_to_doc(&a)).expect("automaton serialises");
    Ok(match cmd {
        AlgebraCommand::Product { a, b } => doc(wa(a)?.product(&wa(b)?)?),
        AlgebraCommand::Sum { a, b } => doc(wa(a)?.sum(&wa(b)?)?),
        AlgebraCommand::Project { a, t } => {
            let t = load::parse(t, json::parse_wt)?;
            doc(wa(a)?.project(&t)?)
        }
        AlgebraCommand::Partition { a, length } => {
            let value = Pipeline::from(wa(a)?).partition_constant(*length)?;
            serde_json::to_string(&value).expect("number serialises")
        }
    })
}

fn run(cli: Cli) -> Result<String, Failure> {
    let shap = |kind, args: &ShapArgs| {
        let (report, _) = scores(kind, args, false)?;
        Ok(report.render(matches!(args.format, Format::Json)))
    };
    match &cli.command {
        Command::ShapWa(args) => shap(ModelKind::Wa, args),
        Command::ShapDnf(args) => shap(ModelKind::Dnf, args),
        Command::ShapDt(args) => shap(ModelKind::Dt, args),
        Command::Verify(v) => {
            if v.tolerance.is_nan() || v.tolerance < 0.0 {
                return Err(Failure::input(format!("tolerance {} must be non-negative", v.tolerance)));
            }
            let (mut report, oracle) = scores(v.kind, &v.shap, true)?;
            let dev = report
                .scores
                .iter()
                .zip(oracle.iter().flatten())
                .map(|(s, o)| (s.score - o).abs())
                .fold(0.0, f64::max);
            report.verify = Some(Verify { max_abs_dev: dev, tolerance: v.tolerance });
            let text = report.render(matches!(v.shap.format, Format::Json));
            if dev > v.tolerance || dev.is_nan() {
                emit(&text);
                return Err(Failure { code: 2, message: format!("deviation {dev:.3e} exceeds tolerance {:.1e}", v.tolerance) });
            }
            Ok(text)
        }
        Command::Algebra(cmd) => algebra(cmd),
    }
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("SHAP_MARKOV_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| Failure::input(format!("SHAP_MARKOV_THREADS={value:?} is not a thread count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::input(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are input errors; exit code 2 is reserved for verify.
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
