use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pkp_core::bench::{run_bench, write_csv, BenchConfig};
use pkp_core::generate::{gen_example1, gen_random, RandomParams};
use pkp_core::io::{parse_instance, parse_ppp, to_json, to_text};
use pkp_core::reduction::{reduce_ppp_to_pkp, verify_correspondence, PppInstance, DEFAULT_VERIFY_LIMIT};
use pkp_core::report::{solve_raw, Algorithm, RunReport};
use pkp_core::{enforce_assumptions, PkpError, Rational};

#[derive(Parser)]
#[command(name = "pkp", version, about = "Product knapsack solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Exact,
    Fptas,
    Greedy,
    Brute,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Exact => Algorithm::Exact,
            AlgoArg::Fptas => Algorithm::Fptas,
            AlgoArg::Greedy => Algorithm::Greedy,
            AlgoArg::Brute => Algorithm::Brute,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance (JSON or plain text) and print a run report.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        algo: AlgoArg,
        /// Approximation parameter for fptas, as `num/den` or a decimal.
        #[arg(long)]
        eps: Option<Rational>,
        /// Include the greedy trace in the report.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Compare solvers on seeded random instances, CSV output.
    Bench {
        /// Comma-separated instance sizes.
        #[arg(long, value_delimiter = ',', default_value = "")]
        n: Vec<String>,
        /// Comma-separated epsilons.
        #[arg(long, value_delimiter = ',', default_value = "1/10")]
        eps: Vec<Rational>,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a Product Partition instance (whitespace-separated integers) to PKP JSON.
    ReducePpp {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the Product Partition / PKP answer correspondence by enumeration.
    VerifyPpp {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_VERIFY_LIMIT)]
        limit: usize,
    },
    /// Preprocess an instance and report which items were removed or forced.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Random(RandomArgs),
    Example1 {
        #[arg(long, default_value_t = 10)]
        m: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    p_min: i64,
    #[arg(long, default_value_t = 9)]
    p_max: i64,
    #[arg(long, default_value_t = 0)]
    w_min: i64,
    #[arg(long, default_value_t = 15)]
    w_max: i64,
    #[arg(long, default_value_t = 30)]
    capacity: i64,
    #[arg(long, default_value_t = 0.5)]
    neg_fraction: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Io(String),
}

impl From<PkpError> for Failure {
    fn from(e: PkpError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, body: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, body).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serialization");
    s.push('\n');
    s
}

fn instance_body(inst: &pkp_core::Instance, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(inst) + "\n",
        OutputFormat::Text => to_text(inst),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Solve { file, algo, eps, trace, format, out } => {
            let raw = parse_instance(&read(&file)?)?;
            let algo = Algorithm::from(algo);
            let outcome = solve_raw(&raw, algo, eps)?;
            let mut report = RunReport::new(&raw, algo, eps, &outcome)?;
            if !trace {
                report.trace = None;
            }
            let body = match format {
                OutputFormat::Json => json_line(&report),
                OutputFormat::Text => report.to_text(),
            };
            emit(out.as_deref(), &body)?;
            Ok(if report.value.is_zero() { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Command::Gen { kind } => {
            let (inst, format, out) = match kind {
                GenKind::Example1 { m, format, out } => (gen_example1(m)?, format, out),
                GenKind::Random(a) => {
                    let params = RandomParams {
                        n: a.n,
                        profit: (a.p_min, a.p_max),
                        weight: (a.w_min, a.w_max),
                        capacity: a.capacity,
                        neg_fraction: a.neg_fraction,
                        seed: a.seed,
                    };
                    (gen_random(&params)?, a.format, a.out)
                }
            };
            emit(out.as_deref(), &instance_body(&inst, format))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { n, eps, seeds, out } => {
            let n_list = n
                .iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| Failure::Input(format!("bad size {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let rows = run_bench(&BenchConfig { n_list, eps_list: eps, seeds })?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            emit(out.as_deref(), &String::from_utf8(buf).expect("csv is utf-8"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ReducePpp { file, out } => {
            let ppp = PppInstance::new(parse_ppp(&read(&file)?)?)?;
            let red = reduce_ppp_to_pkp(&ppp)?;
            emit(out.as_deref(), &(to_json(&red.pkp) + "\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPpp { file, limit } => {
            let ppp = PppInstance::new(parse_ppp(&read(&file)?)?)?;
            let report = verify_correspondence(&ppp, limit)?;
            emit(None, &json_line(&report))?;
            Ok(if report.holds() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Check { file, format } => {
            let raw = parse_instance(&read(&file)?)?;
            let pre = enforce_assumptions(&raw)?;
            #[derive(Serialize)]
            struct CheckReport<'a> {
                items_in: usize,
                items_kept: usize,
                removed: &'a [usize],
                forced: &'a [usize],
                kept: &'a [usize],
            }
            let rep = CheckReport {
                items_in: raw.len(),
                items_kept: pre.instance.len(),
                removed: &pre.removed,
                forced: &pre.forced,
                kept: &pre.remap,
            };
            let body = match format {
                OutputFormat::Json => json_line(&rep),
                OutputFormat::Text => format!(
                    "items: {}\nkept: {:?}\nremoved: {:?}\nforced: {:?}\n",
                    raw.len(),
                    pre.remap,
                    pre.removed,
                    pre.forced
                ),
            };
            emit(None, &body)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Input(msg)) | Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
