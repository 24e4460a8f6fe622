use clap::{Parser, ValueEnum};
use std::process::ExitCode;

use homalg::linalg::{parse_rational, Rational};
use homalg_cli::{run, Mode, OutputFormat, RunConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Poisson,
    Hochschild,
    KoszulCheck,
    JacobiCheck,
    CompareAll,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

/// Exact homology engine: Poisson homology of the Sklyanin bracket and
/// Hochschild homology of the Sklyanin algebra, verified degree by degree
/// against their closed-form Poincaré series.
#[derive(Parser, Debug)]
#[command(name = "homalg", version)]
struct Args {
    /// Pipeline to run.
    #[arg(long, value_enum, default_value = "compare-all")]
    mode: ModeArg,

    /// Largest weight degree computed (hard cap 12 unless --unsafe-weight).
    #[arg(long, default_value_t = 8)]
    max_weight: usize,

    /// Poisson parameters J1,J2,J3 (rationals, comma separated).
    #[arg(long = "J", value_name = "J1,J2,J3", default_value = "1,2,5")]
    j: String,

    /// Algebra parameters alpha1,alpha2 (rationals, comma separated).
    #[arg(long, value_name = "A1,A2", default_value = "1/4,1/9")]
    alpha: String,

    /// Seed for random parameter draws.
    #[arg(long, default_value_t = 7)]
    seed: u64,

    /// Number of random parameter draws when --random is given.
    #[arg(long, default_value_t = 3)]
    trials: usize,

    /// Also run at randomly drawn generic parameters.
    #[arg(long)]
    random: bool,

    /// Output format.
    #[arg(long = "output", value_enum, default_value = "text")]
    output: FormatArg,

    /// Write the report here instead of stdout.
    #[arg(long)]
    output_path: Option<String>,

    /// Lift the hard cap on --max-weight.
    #[arg(long)]
    unsafe_weight: bool,
}

fn parse_list<const N: usize>(s: &str, what: &str) -> Result<[Rational; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated rationals for {what}, got {:?}", s));
    }
    let mut out = Vec::with_capacity(N);
    for p in parts {
        out.push(parse_rational(p).map_err(|e| e.to_string())?);
    }
    Ok(out.try_into().expect("length checked"))
}

fn build_config(args: &Args) -> Result<RunConfig, String> {
    Ok(RunConfig {
        mode: match args.mode {
            ModeArg::Poisson => Mode::Poisson,
            ModeArg::Hochschild => Mode::Hochschild,
            ModeArg::KoszulCheck => Mode::KoszulCheck,
            ModeArg::JacobiCheck => Mode::JacobiCheck,
            ModeArg::CompareAll => Mode::CompareAll,
        },
        max_weight: args.max_weight,
        j: parse_list::<3>(&args.j, "--J")?,
        alpha: parse_list::<2>(&args.alpha, "--alpha")?,
        seed: args.seed,
        trials: args.trials,
        random: args.random,
        output: match args.output {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        },
        output_path: args.output_path.clone(),
        unsafe_weight: args.unsafe_weight,
    })
}

fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Ok(v) = std::env::var("HOMALG_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("warning: ignoring invalid HOMALG_THREADS={v}"),
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    configure_threads();
    let config = match build_config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let rendered = report.render(config.output);
    match &config.output_path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
