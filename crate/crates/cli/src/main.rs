//! `stacksort` command-line tool.

mod render;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stacksort::hook::DEFAULT_EXTENSION_GUARD;
use stacksort::oracle::{self, DEFAULT_ORACLE_GUARD};
use stacksort::{build_tableau, DpOptions, Error, Permutation};

use crate::render::{CountRows, Report};

#[derive(Debug, Parser)]
#[command(
    name = "stacksort",
    version,
    about = "Stack-sorting traces, tableaux and exact counts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for parallel steps (0 = one per core).
    #[arg(long, global = true, env = "STACKSORT_THREADS")]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every stack-sorting iterate, with blocks in parentheses.
    Trace(PermArgs),
    /// Print the shape and tableau of a permutation ending in 0.
    Tableau(PermArgs),
    /// Count t-stack-sortable permutations of length n+1 ending in 0.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        /// Also print every smaller n.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        dp: DpArgs,
    },
    /// Print counts for n = 1..=max-n.
    Table {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        dp: DpArgs,
    },
    /// Brute-force count, optionally checked against the dynamic program.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        compare_dp: bool,
        /// Also group all permutations by tableau and check the hook products.
        #[arg(long)]
        census: bool,
        #[command(flatten)]
        guards: GuardArgs,
    },
    /// Run the exhaustive property suites for every size 1..=n.
    Verify {
        #[arg(long, required_unless_present = "perm")]
        n: Option<usize>,
        /// Check a single permutation instead.
        #[arg(long, conflicts_with = "n")]
        perm: Option<String>,
        #[command(flatten)]
        guards: GuardArgs,
    },
    /// Compare the t = 2 counts with the Motzkin numbers.
    Motzkin {
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        dp: DpArgs,
    },
}

#[derive(Debug, Args)]
struct PermArgs {
    /// Entries separated by spaces or commas, e.g. "9 3 10 7 8 2 6 1 4 5 0".
    #[arg(required = true, num_args = 1..)]
    perm: Vec<String>,
}

impl PermArgs {
    fn parse(&self) -> Result<Permutation, Error> {
        self.perm.join(" ").parse()
    }
}

#[derive(Debug, Args)]
struct DpArgs {
    /// Abort once a layer of the dynamic program holds more states.
    #[arg(long)]
    max_states: Option<usize>,
}

impl DpArgs {
    fn options(&self) -> DpOptions {
        DpOptions {
            max_states: self.max_states,
        }
    }
}

#[derive(Debug, Args)]
struct GuardArgs {
    /// Largest n enumerated exhaustively.
    #[arg(long, default_value_t = DEFAULT_ORACLE_GUARD)]
    guard_oracle: usize,
    /// Largest diagram whose linear extensions are enumerated.
    #[arg(long, default_value_t = DEFAULT_EXTENSION_GUARD)]
    guard_extensions: usize,
}

/// Process outcome, mapped onto the exit status.
enum Outcome {
    Ok,
    Counterexample,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };

    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("stacksort: {e}");
            return ExitCode::from(2);
        }
    }

    let mut out = io::stdout().lock();
    match run(&cli, &mut out) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Counterexample) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("stacksort: {e}");
            ExitCode::from(match e {
                Error::GuardExceeded { .. } => 3,
                _ => 2,
            })
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<Outcome, Error> {
    let fmt = cli.format;
    match &cli.command {
        Command::Trace(args) => {
            let p = args.parse()?;
            render::trace(out, fmt, &p);
        }
        Command::Tableau(args) => {
            let p = args.parse()?;
            let t = build_tableau(&p)?;
            render::tableau(out, fmt, &t);
        }
        Command::Count { n, t, all, dp } => {
            let counts = stacksort::dp::count_all(*n, *t, dp.options())?;
            let first = if *all { 0 } else { *n };
            let rows = CountRows {
                t: *t,
                rows: (first..=*n).map(|k| (k, counts[k].clone())).collect(),
            };
            render::counts(out, fmt, &rows, !*all);
        }
        Command::Table { t, max_n, dp } => {
            let rows = CountRows {
                t: *t,
                rows: stacksort::count_table(*max_n, *t, dp.options())?,
            };
            render::counts(out, fmt, &rows, false);
        }
        Command::Oracle {
            n,
            t,
            compare_dp,
            census,
            guards,
        } => {
            let mut report = Report::default();
            let brute = oracle::brute_count(*n, *t, guards.guard_oracle)?;
            let dp = compare_dp.then(|| stacksort::count_sortable(*n, *t));
            report.oracle = Some(render::OracleRow {
                n: *n,
                t: *t,
                brute,
                dp,
            });
            if *census {
                report.census =
                    oracle::shape_census(*n, guards.guard_oracle, guards.guard_extensions)?;
            }
            render::report(out, fmt, &report);
            return Ok(outcome(report.passed()));
        }
        Command::Verify { n, perm, guards } => {
            let mut report = Report::default();
            if let Some(text) = perm {
                let p: Permutation = text.parse()?;
                report.properties = oracle::verify_permutation(&p);
            } else {
                let n = n.expect("clap enforces --n or --perm");
                for k in 1..=n {
                    report
                        .properties
                        .extend(oracle::verify_lemmas(k, guards.guard_oracle)?);
                    report.census.extend(oracle::shape_census(
                        k,
                        guards.guard_oracle,
                        guards.guard_extensions,
                    )?);
                    report
                        .classic
                        .push(oracle::classic_counts(k, guards.guard_oracle)?);
                }
            }
            render::report(out, fmt, &report);
            return Ok(outcome(report.passed()));
        }
        Command::Motzkin { max_n, dp } => {
            let counts = stacksort::count_table(*max_n, 2, dp.options())?;
            let motzkin = oracle::motzkin_sequence(*max_n);
            let rows: Vec<render::MotzkinRow> = counts
                .into_iter()
                .map(|(n, count)| render::MotzkinRow {
                    n,
                    motzkin: motzkin[n].clone(),
                    count,
                })
                .collect();
            render::motzkin(out, fmt, &rows);
            for r in rows.iter().filter(|r| !r.matches()) {
                eprintln!(
                    "WARN: n={} count {} differs from Motzkin number {}",
                    r.n, r.count, r.motzkin
                );
            }
        }
    }
    Ok(Outcome::Ok)
}

fn outcome(passed: bool) -> Outcome {
    if passed {
        Outcome::Ok
    } else {
        Outcome::Counterexample
    }
}
