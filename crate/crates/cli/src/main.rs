//! `cmcls`: CSV experiment harness for the constrained mock-Chebyshev
//! least-squares library.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cmcls::differentiation::derivative;
use cmcls::experiments::{
    bounds_csv, coefficients_csv, nodal_csv, regression_csv, run_bounds, run_nodal_norms, run_sweep,
    run_table2, sweep_csv, table2_csv, SweepConfig, TestFunction, MAX_ORDER, TABLE1_EXTENDED_N,
    TABLE1_N,
};
use cmcls::{Problem, Strategy};

#[derive(Parser, Debug)]
#[command(name = "cmcls", version, about = "Constrained mock-Chebyshev least-squares experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mean/max derivative errors of f1 on 67 equispaced nodes.
    Table2 {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Error statistics over n = 50k, k = 1..=nmax, at random points.
    Sweep {
        #[arg(long = "fn", value_enum)]
        function: FnArg,
        #[arg(long, default_value_t = 80)]
        nmax: usize,
        #[arg(long, default_value_t = 100_000)]
        points: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Both)]
        strategy: StrategyArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Condition number, inverse norm and norm bound per n, plus the log-log fit.
    Bounds {
        #[arg(long, value_delimiter = ',')]
        nlist: Option<Vec<usize>>,
        /// Append n = 50000 and n = 100000 (slow).
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the regression plot data; omitted if not given.
        #[arg(long)]
        regression_out: Option<PathBuf>,
    },
    /// Sup norms of the nodal polynomials of the primary and combined sets.
    Nodal {
        #[arg(long, value_delimiter = ',', default_values_t = vec![100, 1000, 10000])]
        nlist: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chebyshev coefficients of the fit of a catalog function.
    Fit {
        #[arg(long)]
        n: usize,
        #[arg(long = "fn", value_enum)]
        function: FnArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chebyshev coefficients of a derivative of the fit.
    Diff {
        #[arg(long)]
        n: usize,
        #[arg(long = "fn", value_enum)]
        function: FnArg,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = SingleStrategy::S2)]
        strategy: SingleStrategy,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FnArg {
    F1,
    F2,
    F3,
    F4,
}

impl From<FnArg> for TestFunction {
    fn from(f: FnArg) -> Self {
        match f {
            FnArg::F1 => TestFunction::F1,
            FnArg::F2 => TestFunction::F2,
            FnArg::F3 => TestFunction::F3,
            FnArg::F4 => TestFunction::F4,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum StrategyArg {
    S1,
    S2,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SingleStrategy {
    S1,
    S2,
}

impl From<SingleStrategy> for Strategy {
    fn from(s: SingleStrategy) -> Self {
        match s {
            SingleStrategy::S1 => Strategy::S1,
            SingleStrategy::S2 => Strategy::S2,
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Table2 { out } => emit(out.as_deref(), &table2_csv(&run_table2()?)),
        Command::Sweep {
            function,
            nmax,
            points,
            seed,
            strategy,
            out,
        } => {
            if nmax == 0 {
                bail!("--nmax must be at least 1");
            }
            if points == 0 {
                bail!("--points must be at least 1");
            }
            let mut cfg = SweepConfig::standard(function.into(), nmax, points, seed);
            cfg.strategies = match strategy {
                StrategyArg::S1 => vec![Strategy::S1],
                StrategyArg::S2 => vec![Strategy::S2],
                StrategyArg::Both => vec![Strategy::S1, Strategy::S2],
            };
            let rows = run_sweep(&cfg)?;
            emit(out.as_deref(), &sweep_csv(&cfg, &rows))
        }
        Command::Bounds {
            nlist,
            extended,
            out,
            regression_out,
        } => {
            let mut n_list = nlist.unwrap_or_else(|| TABLE1_N.to_vec());
            if extended {
                n_list.extend(TABLE1_EXTENDED_N);
            }
            let result = run_bounds(&n_list)?;
            emit(out.as_deref(), &bounds_csv(&result.reports))?;
            if let Some(path) = regression_out {
                emit(Some(&path), &regression_csv(&result.regression))?;
            }
            log::info!(
                "ln B_n = {:.4} + {:.4} ln n",
                result.regression.intercept,
                result.regression.slope
            );
            Ok(())
        }
        Command::Nodal { nlist, out } => emit(out.as_deref(), &nodal_csv(&run_nodal_norms(&nlist)?)),
        Command::Fit { n, function, out } => {
            let f: TestFunction = function.into();
            let problem = Problem::build(n)?;
            let fit = problem.fit_fn(|x| f.eval(x))?;
            let c = problem.config();
            let header = format!("function={} n={} m={} p={} r={}", f.name(), c.n, c.m, c.p, c.r);
            emit(out.as_deref(), &coefficients_csv(&header, fit.series()))
        }
        Command::Diff {
            n,
            function,
            order,
            strategy,
            out,
        } => {
            if order > MAX_ORDER {
                log::warn!("order {order} is above the orders used by the experiments ({MAX_ORDER})");
            }
            let f: TestFunction = function.into();
            let strategy: Strategy = strategy.into();
            let problem = Problem::build(n)?;
            let fit = problem.fit_fn(|x| f.eval(x))?;
            let d = derivative(&problem, &fit, order, strategy)?;
            let header = format!(
                "function={} n={} order={} strategy={}",
                f.name(),
                n,
                order,
                strategy.name()
            );
            emit(out.as_deref(), &coefficients_csv(&header, d.series()))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
