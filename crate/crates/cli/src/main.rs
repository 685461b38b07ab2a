use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gkz_cli::pipeline::{run_analyze, run_check_sufficiency, run_solve, Method, NPrime, SolveOptions};
use gkz_cli::plot::plot_config;
use gkz_cli::report::{Report, SearchBounds};
use gkz_cli::search::run_search;
use gkz_cli::selftest::{run_selftest, SelftestSizes};
use gkz_cli::{CliError, CliResult, ProblemConfig};
use gkz_core::apolarity::star;
use gkz_core::rational::parse_rational;
use gkz_core::Rational;

#[derive(Parser)]
#[command(name = "gkz", version, about = "Frobenius's method for A-hypergeometric systems in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Lattice window radius (overrides the config).
    #[arg(long, global = true)]
    radius: Option<i64>,
    /// Largest weight w·u kept in series (overrides the config).
    #[arg(long, global = true)]
    weight_cap: Option<String>,
    /// Degree cap for dual spaces (overrides the config).
    #[arg(long, global = true)]
    degree_cap: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Seed for search and selftest.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Text,
    Structured,
}

#[derive(Args)]
struct SolveArgs {
    config: PathBuf,
    /// Comma-separated rationals; defaults to the config's exponent.
    #[arg(long, allow_hyphen_values = true)]
    exponent: Option<String>,
    /// `nv`, `i0`, or 1-based sets such as `{3};{1,3}`.
    #[arg(long, default_value = "nv")]
    n_prime: String,
    /// An operator in the perp space, or `spanning`.
    #[arg(long, default_value = "spanning")]
    q: String,
    #[arg(long, default_value = "extended")]
    method: String,
}

#[derive(Subcommand)]
enum Command {
    /// Gröbner basis, standard pairs, fake exponents, supports, ideals and duals.
    Analyze { config: PathBuf },
    /// Series solutions at one exponent.
    Solve(SolveArgs),
    /// Like solve, but exits with status 2 when any equation fails.
    Verify(SolveArgs),
    /// Compares L-perturbation with the extended method at one exponent.
    CheckSufficiency {
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        exponent: Option<String>,
        #[arg(long, default_value = "nv")]
        n_prime: String,
        #[arg(long, default_value = "nv")]
        n_double: String,
    },
    /// Random sweep for instances where L-perturbation falls short.
    Search {
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        d_min: usize,
        #[arg(long, default_value_t = 3)]
        d_max: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        entry_max: i64,
        #[arg(long, default_value_t = 3)]
        beta_max: i64,
    },
    /// Runs the property suites.
    Selftest,
    /// SVG of the hyperplane arrangement for a rank-2 lattice.
    Plot {
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        exponent: Option<String>,
        /// Write the SVG here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(cli: &Cli, path: &PathBuf) -> CliResult<ProblemConfig> {
    let text = std::fs::read_to_string(path)?;
    let mut cfg = ProblemConfig::parse(&text)?;
    if let Some(r) = cli.radius {
        cfg.radius = r;
    }
    if let Some(c) = &cli.weight_cap {
        cfg.weight_cap = c.clone();
    }
    if let Some(d) = cli.degree_cap {
        cfg.degree_cap = d;
    }
    Ok(cfg)
}

fn parse_vector(s: &str) -> CliResult<Vec<Rational>> {
    s.split(',').map(|x| parse_rational(x.trim()).map_err(|e| CliError::Config(format!("exponent: {e}")))).collect()
}

fn solve_options(a: &SolveArgs) -> CliResult<SolveOptions> {
    Ok(SolveOptions {
        exponent: a.exponent.as_deref().map(parse_vector).transpose()?,
        n_prime: a.n_prime.parse()?,
        q: (a.q != "spanning").then(|| a.q.clone()),
        method: a.method.parse::<Method>()?,
    })
}

fn run(cli: &Cli) -> CliResult<(String, bool)> {
    let report = match &cli.command {
        Command::Analyze { config } => Report::Analyze(run_analyze(&load(cli, config)?)?),
        Command::Solve(a) => Report::Solve(run_solve(&load(cli, &a.config)?, &solve_options(a)?)?),
        Command::Verify(a) => Report::Verify(run_solve(&load(cli, &a.config)?, &solve_options(a)?)?),
        Command::CheckSufficiency { config, exponent, n_prime, n_double } => {
            let v = exponent.as_deref().map(parse_vector).transpose()?;
            let n1: NPrime = n_prime.parse()?;
            let n2: NPrime = n_double.parse()?;
            Report::CheckSufficiency(run_check_sufficiency(&load(cli, config)?, v.as_ref(), &n1, &n2)?)
        }
        Command::Search { count, d_min, d_max, n_max, entry_max, beta_max } => {
            let bounds = SearchBounds {
                d_min: *d_min,
                d_max: *d_max,
                n_max: *n_max,
                entry_max: *entry_max,
                beta_max: *beta_max,
                radius: cli.radius.unwrap_or(4),
                count: *count,
            };
            Report::Search(run_search(cli.seed, &bounds)?)
        }
        Command::Selftest => Report::Selftest(run_selftest(star, cli.seed, &SelftestSizes::default())),
        Command::Plot { config, exponent, out } => {
            let v = exponent.as_deref().map(parse_vector).transpose()?;
            let svg = plot_config(&load(cli, config)?, v.as_ref())?;
            match out {
                Some(p) => std::fs::write(p, svg)?,
                None => print!("{svg}"),
            }
            return Ok((String::new(), true));
        }
    };
    let healthy = match &report {
        Report::Verify(r) => r.all_verified,
        Report::Search(r) => r.skipped.iter().all(|s| !s.internal),
        Report::Selftest(r) => r.all_passed,
        _ => true,
    };
    let text = match cli.output {
        Output::Text => report.to_text(),
        Output::Structured => report.to_json(),
    };
    Ok((text, healthy))
}

fn main() -> ExitCode {
    // Usage errors are input errors; status 2 is kept for broken invariants.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok((text, healthy)) => {
            print!("{text}");
            if healthy { ExitCode::SUCCESS } else { ExitCode::from(2) }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
