//! `siclab` command-line front end.
//!
//! Exit codes: 0 success, 1 invalid POVM or bound violation, 2 I/O, parse or
//! usage error.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use siclab::io as sio;
use siclab::report::{self, BoundReport, Summary};
use siclab::sic::{self, GeneralSicPovm};
use siclab::suite::{self, PairConfig, SuiteConfig, SweepConfig};
use siclab::{linalg, tol, EntropyOrder, Error, ExecMode};

#[derive(Parser)]
#[command(name = "siclab", version, about = "General SIC-POVM toolkit: construction, validation and entropic bound suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a POVM file holds a general SIC and print its parameters.
    Validate {
        povm: PathBuf,
    },
    /// Build a (depolarized) rank-one SIC and write it as JSON.
    Build {
        #[arg(long)]
        dim: usize,
        /// Depolarization strength in (0, 1]; 1 keeps the rank-one SIC.
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Weyl-Heisenberg fiducial vector file, required outside d = 2, 3.
        #[arg(long)]
        fiducial: Option<PathBuf>,
        /// Conjugate the result by a Haar-random unitary from this seed.
        #[arg(long)]
        rotate_seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate every single-POVM bound over a family and a state ensemble.
    Sweep {
        #[arg(long, value_delimiter = ',')]
        dim: Vec<usize>,
        /// Base general SIC replacing the built-in rank-one SIC.
        #[arg(long)]
        povm: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        orders: Vec<EntropyOrder>,
        #[arg(long, value_delimiter = ',')]
        etas: Vec<f64>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Evaluate the pair bounds for two POVMs.
    Pair {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_delimiter = ',')]
        s_values: Vec<f64>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Reconstruct states from exact probabilities through the dual basis.
    Tomo {
        povm: PathBuf,
        /// Reconstruct from this probability CSV instead of sampling states.
        #[arg(long)]
        probs: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Leave out the maximally mixed state.
    #[arg(long)]
    no_mixed: bool,
    #[arg(long)]
    sequential: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Show Rényi-family values in bits instead of nats.
    #[arg(long)]
    bits: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_)
            | Error::Json(_)
            | Error::Parse(_)
            | Error::DimensionMismatch { .. }
            | Error::InvalidDimension(_)
            | Error::UnsupportedDimension(_)
            | Error::InvalidLambda(_)
            | Error::InvalidEta(_)
            | Error::InvalidOrder(_)
            | Error::UnsupportedOrder { .. }
            | Error::InvalidDistribution(_)
            | Error::ArgumentOutOfRange(_)
            | Error::InvalidSymmetrization(_) => 2,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Validate { povm } => validate(&povm),
        Command::Build {
            dim,
            lambda,
            fiducial,
            rotate_seed,
            out,
        } => build(dim, lambda, fiducial.as_deref(), rotate_seed, out.as_deref()),
        Command::Sweep {
            dim,
            povm,
            lambda,
            orders,
            etas,
            run,
        } => sweep(dim, povm.as_deref(), lambda, orders, etas, &run),
        Command::Pair {
            first,
            second,
            s_values,
            run,
        } => pair(&first, &second, s_values, &run),
        Command::Tomo {
            povm,
            probs,
            samples,
            seed,
            out,
        } => tomo(&povm, probs.as_deref(), samples, seed, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn tol_bound() -> Result<f64, Failure> {
    match std::env::var("SICLAB_TOL") {
        Err(_) => Ok(tol::BOUND),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
            _ => Err(Failure::usage(format!("SICLAB_TOL={s:?} is not a non-negative number"))),
        },
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(Error::from)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_sic(path: &Path) -> Result<GeneralSicPovm, Failure> {
    let file = sio::read_povm_file(path)?;
    Ok(sic::validate_general_sic(file.to_povm()?)?)
}

fn exec_mode(run: &RunArgs) -> ExecMode {
    if run.sequential {
        ExecMode::Sequential
    } else {
        ExecMode::Parallel
    }
}

fn emit(rows: &[BoundReport], run: &RunArgs) -> CmdResult {
    let shown: Vec<BoundReport>;
    let rows = if run.bits {
        shown = rows.iter().map(BoundReport::in_bits).collect();
        &shown[..]
    } else {
        rows
    };
    let mut out = output(run.out.as_deref())?;
    match run.format {
        Format::Csv => report::write_csv(rows, &mut out)?,
        Format::Json => report::write_jsonl(rows, &mut out)?,
    }
    out.flush().map_err(Error::from)?;
    let summary = Summary::of(rows);
    eprintln!("summary: {summary}");
    Ok(if summary.passed() { 0 } else { 1 })
}

fn validate(path: &Path) -> CmdResult {
    let file = sio::read_povm_file(path)?;
    let elements = file.operators()?;
    let diag = sic::diagnose(&elements)?;
    println!("dim = {}", diag.dim);
    println!("elements = {}", diag.count);
    println!("a = {}", diag.a);
    println!("b = {}", diag.b);
    println!("gram_spread = {:e}", diag.gram_spread());
    println!("completeness_residual = {:e}", diag.completeness_residual);
    println!("min_eigenvalue = {:e}", diag.min_eigenvalue);
    let verdict = siclab::Povm::new(elements).and_then(sic::validate_general_sic);
    match verdict {
        Ok(s) => {
            println!("valid general SIC (rank one: {})", s.is_rank_one());
            Ok(0)
        }
        Err(e) => {
            println!("invalid: {e}");
            Ok(1)
        }
    }
}

fn build(
    dim: usize,
    lambda: f64,
    fiducial: Option<&Path>,
    rotate_seed: Option<u64>,
    out: Option<&Path>,
) -> CmdResult {
    let base = match fiducial {
        Some(p) => {
            let v = sio::read_fiducial_file(p)?;
            if v.len() != dim {
                return Err(Failure::usage(format!(
                    "fiducial has {} entries but --dim is {dim}",
                    v.len()
                )));
            }
            sic::sic_from_vectors(&sic::wh_orbit(&v)?)?
        }
        None => sic::rank_one_sic(dim)?,
    };
    let mut built = sic::depolarize_sic(&base, lambda)?;
    if let Some(seed) = rotate_seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        built = built.conjugate_by(&linalg::random_unitary(dim, &mut rng))?;
    }
    let mut w = output(out)?;
    sio::write_povm_json(&built, &mut w)?;
    w.flush().map_err(Error::from)?;
    eprintln!("a = {}", built.a());
    eprintln!("b = {}", built.b());
    Ok(0)
}

fn sweep(
    dims: Vec<usize>,
    povm: Option<&Path>,
    lambdas: Vec<f64>,
    orders: Vec<EntropyOrder>,
    etas: Vec<f64>,
    run: &RunArgs,
) -> CmdResult {
    let base = povm.map(load_sic).transpose()?;
    let dims = match (&base, dims.is_empty()) {
        (Some(b), true) => vec![b.dim()],
        (None, true) => vec![2, 3],
        (_, false) => dims,
    };
    let defaults = SweepConfig::default();
    let cfg = SweepConfig {
        dims,
        base,
        lambdas: if lambdas.is_empty() { defaults.lambdas } else { lambdas },
        samples: run.samples,
        seed: run.seed,
        include_maximally_mixed: !run.no_mixed,
        suite: SuiteConfig {
            orders: if orders.is_empty() { suite::default_orders() } else { orders },
            etas: if etas.is_empty() { suite::default_etas() } else { etas },
            tol_bound: tol_bound()?,
            mode: exec_mode(run),
        },
    };
    let rows = suite::run_sweep(&cfg)?;
    emit(&rows, run)
}

fn pair(first: &Path, second: &Path, s_values: Vec<f64>, run: &RunArgs) -> CmdResult {
    let m = load_sic(first)?;
    let n = load_sic(second)?;
    let defaults = PairConfig::default();
    let cfg = PairConfig {
        samples: run.samples,
        s_values: if s_values.is_empty() { defaults.s_values } else { s_values },
        seed: run.seed,
        include_maximally_mixed: !run.no_mixed,
        tol_bound: tol_bound()?,
        mode: exec_mode(run),
    };
    let rows = suite::run_pair(&m, &n, &cfg)?;
    emit(&rows, run)
}

fn tomo(path: &Path, probs: Option<&Path>, samples: usize, seed: u64, out: Option<&Path>) -> CmdResult {
    let s = load_sic(path)?;
    eprintln!("condition = {:e}", sic::dual_condition(&s));
    let mut w = output(out)?;
    match probs {
        Some(p) => {
            let file = File::open(p).map_err(Error::from)?;
            let dist = sio::read_probabilities_csv(BufReader::new(file))?;
            let rho = sic::dual_basis(&s)?.reconstruct(&dist)?;
            writeln!(w, "row,col,re,im").map_err(Error::from)?;
            let m = rho.matrix();
            for i in 0..rho.dim() {
                for j in 0..rho.dim() {
                    writeln!(
                        w,
                        "{i},{j},{},{}",
                        report::fmt_f64(m[(i, j)].re),
                        report::fmt_f64(m[(i, j)].im)
                    )
                    .map_err(Error::from)?;
                }
            }
            eprintln!("min_eigenvalue = {:e}", rho.min_eigenvalue());
        }
        None => {
            let outcome = suite::run_tomo(&s, samples, seed, ExecMode::Parallel)?;
            suite::write_tomo_csv(&outcome, &mut w)?;
            eprintln!("max_error = {:e}", outcome.max_error);
        }
    }
    w.flush().map_err(Error::from)?;
    Ok(0)
}
