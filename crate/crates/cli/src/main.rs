//! `pof`: exact price of envy-freeness from the command line.
//!
//! Every number is printed as an exact fraction. `--approx` adds decimal
//! columns, always named `*_approx`.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;

use pof_core::bounds::BoundReport;
use pof_core::explore::{explore_p_nm, ExploreOptions};
use pof_core::io::{read_instance, support_string, write_witness, InstanceFile, WitnessFile};
use pof_core::oracle::{oracle_p_nn, Fuzzer};
use pof_core::solver::solve_p_nn;
use pof_core::structure::build_witness_matrix;
use pof_core::welfare::price_ratio;
use pof_core::{Rational, SearchKind, SolveMode, SolveOptions, Witness};

/// Values of `p(n, n)` for `n = 1..=9` as published.
const PUBLISHED: [&str; 9] = ["1", "1", "8/7", "4/3", "60/43", "3/2", "63/40", "72/43", "9/5"];

#[derive(Parser)]
#[command(name = "pof", version, about = "Exact price of envy-freeness for indivisible items")]
struct Cli {
    /// Worker threads for parallel searches.
    #[arg(long, global = true, env = "POF_WORKERS")]
    workers: Option<usize>,
    /// Add approximate decimal columns next to exact fractions.
    #[arg(long, global = true)]
    approx: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute p(n, n).
    Nn {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Search::Lemma4)]
        search: Search,
    },
    /// Table of p(n, n) for a range of n.
    Table {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the solver, the oracle and the published value.
    Verify {
        #[arg(long)]
        n: usize,
    },
    /// Write the optimal witness and certify its matrix.
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Welfare report for an instance file (items are rows, agents are columns).
    Check { path: PathBuf },
    /// Bound report for one n or for 1..=to.
    Bounds {
        #[command(flatten)]
        range: BoundRange,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Heuristic lower bound for m > n by local search.
    Explore {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// Ratios of seeded random instances against p(n, n).
    Fuzz {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BoundRange {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    to: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Bisect,
}

#[derive(Clone, Copy, ValueEnum)]
enum Search {
    Lemma4,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    /// Exit 1.
    Verification(String),
    /// Exit 2.
    Input(String),
}

impl From<pof_core::Error> for Failure {
    fn from(e: pof_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn approx(r: &Rational) -> String {
    format!("{:.6}", r.to_f64().unwrap_or(f64::NAN))
}

fn solve(n: usize, options: &SolveOptions) -> Result<Witness, Failure> {
    Ok(solve_p_nn::<Rational>(n, options)?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data");
    text.push('\n');
    text
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| Failure::Input(e.to_string()))?).expect("utf-8"))
}

fn with_approx<'a>(mut header: Vec<&'a str>, column: &'a str, approx: bool) -> Vec<&'a str> {
    if approx {
        header.push(column);
    }
    header
}

fn run(cli: &Cli) -> Outcome {
    let options = SolveOptions { workers: cli.workers, ..Default::default() };
    match &cli.command {
        Command::Nn { n, mode, search } => {
            let options = SolveOptions {
                mode: match mode {
                    Mode::Exact => SolveMode::ExactFractional,
                    Mode::Bisect => SolveMode::Bisection,
                },
                search: match search {
                    Search::Lemma4 => SearchKind::Lemma4Restricted,
                    Search::Full => SearchKind::FullEnumeration,
                },
                ..options
            };
            let w = solve(*n, &options)?;
            if cli.approx {
                println!("{} {}", w.ratio, approx(&w.ratio));
            } else {
                println!("{}", w.ratio);
            }
        }
        Command::Table { from, to, format, out } => {
            if from > to || *from == 0 {
                return Err(Failure::Input(format!("need 1 <= from <= to, got {from}..{to}")));
            }
            let witnesses = (*from..=*to).map(|n| solve(n, &options)).collect::<Result<Vec<_>, _>>()?;
            let text = match format {
                Format::Json => json(&witnesses.iter().map(WitnessFile::from_witness).collect::<Vec<_>>()),
                Format::Csv => {
                    let header =
                        with_approx(vec!["n", "p_num", "p_den", "s_support", "r_support"], "p_approx", cli.approx);
                    let rows = witnesses
                        .iter()
                        .map(|w| {
                            let mut row = vec![
                                w.n().to_string(),
                                w.ratio.numer().to_string(),
                                w.ratio.denom().to_string(),
                                support_string(&w.s),
                                support_string(&w.r),
                            ];
                            if cli.approx {
                                row.push(approx(&w.ratio));
                            }
                            row
                        })
                        .collect();
                    csv_text(&header, rows)?
                }
            };
            emit(out, &text)?;
        }
        Command::Verify { n } => {
            let solver = solve(*n, &options)?.ratio.to_string();
            let oracle = oracle_p_nn::<Rational>(*n).0.to_string();
            let published = PUBLISHED.get(n - 1).copied();
            println!("solver={solver} oracle={oracle} paper={}", published.unwrap_or("-"));
            if solver != oracle || published.is_some_and(|p| p != solver) {
                return Err(Failure::Verification(format!("n = {n}: values disagree")));
            }
        }
        Command::Witness { n, out } => {
            let w = solve(*n, &options)?;
            w.validate()?;
            let certified = if w.is_realizable() {
                let x = build_witness_matrix::<Rational>(&w.s, &w.r, *n)?;
                let got = price_ratio(&x)?.ratio;
                if got.as_ref() != Some(&w.ratio) {
                    return Err(Failure::Verification(format!(
                        "witness matrix ratio {} differs from {}",
                        got.map_or("none".into(), |r| r.to_string()),
                        w.ratio
                    )));
                }
                true
            } else {
                eprintln!("n = {n}: witness needs {} block items for {n} items; matrix not built", w.block_items());
                false
            };
            emit(out, &(write_witness(&w) + "\n"))?;
            if out.is_some() {
                println!("n={n} ratio={} certified={certified}", w.ratio);
            }
        }
        Command::Check { path } => {
            let text = fs::read_to_string(path)?;
            let x = read_instance(&text)?;
            let report = price_ratio(&x)?;
            if cli.approx {
                #[derive(Serialize)]
                struct WithApprox<'a> {
                    #[serde(flatten)]
                    report: &'a pof_core::WelfareReport<Rational>,
                    ratio_approx: Option<String>,
                }
                let ratio_approx = report.ratio.as_ref().map(approx);
                print!("{}", json(&WithApprox { report: &report, ratio_approx }));
            } else {
                print!("{}", json(&report));
            }
        }
        Command::Bounds { range, format } => {
            let ns: Vec<usize> = match (range.n, range.to) {
                (Some(n), _) => vec![n],
                (_, Some(to)) => (1..=to).collect(),
                _ => unreachable!("clap enforces one of --n and --to"),
            };
            if ns.contains(&0) || ns.is_empty() {
                return Err(Failure::Input("n must be at least 1".into()));
            }
            let reports = ns
                .iter()
                .map(|&n| Ok(BoundReport::new(n, Some(solve(n, &options)?.ratio))))
                .collect::<Result<Vec<_>, Failure>>()?;
            let text = match format {
                Format::Json if range.n.is_some() => json(&reports[0]),
                Format::Json => json(&reports),
                Format::Csv => {
                    let header = with_approx(vec!["n", "lower", "upper", "p", "holds"], "p_approx", cli.approx);
                    let rows = reports
                        .iter()
                        .map(|r| {
                            let p = r.p_exact.as_ref().expect("solved");
                            let mut row = vec![
                                r.n.to_string(),
                                r.lower_construction_ratio.to_string(),
                                r.upper_g_max.to_string(),
                                p.to_string(),
                                r.holds().to_string(),
                            ];
                            if cli.approx {
                                row.push(approx(p));
                            }
                            row
                        })
                        .collect();
                    csv_text(&header, rows)?
                }
            };
            print!("{text}");
            if let Some(r) = reports.iter().find(|r| !r.holds()) {
                return Err(Failure::Verification(format!("n = {}: a bound check failed", r.n)));
            }
        }
        Command::Explore { n, m, budget, seed, restarts } => {
            let opts = ExploreOptions { budget: *budget, seed: *seed, restarts: *restarts, initial: Vec::new() };
            let report = pool(cli.workers).install(|| explore_p_nm(*n, *m, &opts))?;
            #[derive(Serialize)]
            struct Out {
                label: &'static str,
                n: usize,
                m: usize,
                lower_bound: String,
                #[serde(skip_serializing_if = "Option::is_none")]
                lower_bound_approx: Option<String>,
                evaluations: usize,
                witness: InstanceFile,
            }
            print!(
                "{}",
                json(&Out {
                    label: "heuristic lower bound",
                    n: report.n,
                    m: report.m,
                    lower_bound: report.lower_bound.to_string(),
                    lower_bound_approx: cli.approx.then(|| approx(&report.lower_bound)),
                    evaluations: report.evaluations,
                    witness: InstanceFile::from_matrix(&report.witness),
                })
            );
        }
        Command::Fuzz { n, count, seed } => {
            let bound = solve(*n, &options)?.ratio;
            let header =
                with_approx(vec!["instance_id", "ratio_num", "ratio_den", "bound_holds"], "ratio_approx", cli.approx);
            let mut rows = Vec::with_capacity(*count);
            let mut violated = false;
            for (id, x) in Fuzzer::<Rational>::new(*n, *count, *seed).enumerate() {
                let ratio = price_ratio(&x?)?.ratio.expect("fuzz instances admit an envy-free allocation");
                let holds = ratio <= bound;
                violated |= !holds;
                let mut row =
                    vec![id.to_string(), ratio.numer().to_string(), ratio.denom().to_string(), holds.to_string()];
                if cli.approx {
                    row.push(approx(&ratio));
                }
                rows.push(row);
            }
            print!("{}", csv_text(&header, rows)?);
            if violated {
                return Err(Failure::Verification(format!("a ratio exceeds p({n}, {n}) = {bound}")));
            }
        }
    }
    Ok(())
}

fn pool(workers: Option<usize>) -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w.max(1));
    }
    builder.build().expect("thread pool")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
