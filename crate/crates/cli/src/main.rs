use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use trendlab_cli::error::{HarnessError, HarnessResult, EXIT_CHECK};
use trendlab_cli::fit::{fit_files, render, FitOptions};
use trendlab_cli::oracle_check::oracle_check;
use trendlab_cli::simulate::{simulate, RunConfig};
use trendlab_cli::sweep::sweep;
use trendlab_cli::urn::{urn, UrnConfig};
use trendlab_core::analysis::Estimator;
use trendlab_core::oracle::parse_ratio;
use trendlab_core::{ModelParams, UrnParams};

#[derive(Parser)]
#[command(name = "trendlab", version, about = "Retweet-graph and Polya-urn simulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replicated runs of the retweet-graph model.
    Simulate(SimulateArgs),
    /// Replicated runs of the generalized Polya urn.
    Urn(UrnArgs),
    /// Fit tail exponents to histogram files.
    Fit(FitArgs),
    /// Exact RG (p = 1) versus urn comparison for small horizons.
    OracleCheck(OracleArgs),
    /// `simulate` over every (lambda, p) pair.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct LambdaArg {
    /// New-topic intensity as a decimal (1/3 ≈ 0.3333333).
    #[arg(long, conflicts_with = "lambda_ratio", required_unless_present = "lambda_ratio")]
    lambda: Option<String>,
    /// New-topic intensity as an exact ratio, e.g. 1/3.
    #[arg(long)]
    lambda_ratio: Option<String>,
}

impl LambdaArg {
    fn exact(&self) -> HarnessResult<BigRational> {
        let text = self.lambda.as_deref().or(self.lambda_ratio.as_deref()).unwrap_or_default();
        parse_ratio(text).map_err(|e| HarnessError::Usage(e.to_string()))
    }

    fn value(&self) -> HarnessResult<(f64, Option<String>)> {
        let v = self.exact()?.to_f64().ok_or_else(|| HarnessError::Usage("lambda out of range".into()))?;
        Ok((v, self.lambda_ratio.clone()))
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 0.9)]
    q: f64,
    #[arg(long, default_value_t = 100_000)]
    steps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    replications: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Write a line-delimited JSON event log per replication.
    #[arg(long)]
    emit_events: bool,
    /// Drop the largest component before fitting (default: only when p < 1).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    exclude_lcc: Option<bool>,
    #[arg(long, default_value = "yule-mle")]
    estimator: Estimator,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    lambda: LambdaArg,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct UrnArgs {
    #[arg(long)]
    p_bar: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 100_000)]
    steps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    replications: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, default_value = "yule-mle")]
    estimator: Estimator,
}

#[derive(Args)]
struct FitArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Overrides the `lambda` header of each file.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    exclude_lcc: Option<bool>,
    #[arg(long, default_value = "yule-mle")]
    estimator: Estimator,
    /// Also write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    lambda: LambdaArg,
    #[arg(long, default_value_t = 5)]
    t_max: u64,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_delimiter = ',', required_unless_present = "lambda_ratio")]
    lambda: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    lambda_ratio: Vec<String>,
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<f64>,
    #[command(flatten)]
    run: RunArgs,
}

fn run_config(params: ModelParams, lambda_ratio: Option<String>, run: &RunArgs) -> RunConfig {
    RunConfig {
        params: params.with_steps(run.steps).with_seed(run.seed),
        lambda_ratio,
        replications: run.replications,
        output_dir: run.out.clone(),
        emit_events: run.emit_events,
        exclude_lcc: run.exclude_lcc,
        estimator: run.estimator,
    }
}

fn model_params(lambda: f64, p: f64, q: f64) -> HarnessResult<ModelParams> {
    ModelParams::new(lambda, p, q).map_err(|e| HarnessError::Usage(e.to_string()))
}

fn dispatch(cli: Cli) -> HarnessResult<()> {
    match cli.command {
        Command::Simulate(args) => {
            let (lambda, ratio) = args.lambda.value()?;
            let config = run_config(model_params(lambda, args.p, args.run.q)?, ratio, &args.run);
            let summary = simulate(&config)?;
            println!(
                "{} replications written to {}; mean alpha_hat = {}",
                summary.replications.len(),
                config.output_dir.display(),
                summary.aggregate.alpha_hat_mean.map_or("NA".into(), |a| format!("{a:.4}"))
            );
        }
        Command::Urn(args) => {
            let params = UrnParams::new(args.gamma, args.p_bar)
                .map_err(|e| HarnessError::Usage(e.to_string()))?
                .with_steps(args.steps)
                .with_seed(args.seed);
            let config = UrnConfig {
                params,
                replications: args.replications,
                output_dir: args.out,
                estimator: args.estimator,
            };
            let summary = urn(&config)?;
            println!(
                "{} replications written to {}; mean alpha_hat = {}",
                summary.replications.len(),
                config.output_dir.display(),
                summary.alpha_hat_mean.map_or("NA".into(), |a| format!("{a:.4}"))
            );
        }
        Command::Fit(args) => {
            let lambda = match &args.lambda {
                Some(text) => Some(
                    parse_ratio(text)
                        .map_err(|e| HarnessError::Usage(e.to_string()))?
                        .to_f64()
                        .unwrap_or(f64::NAN),
                ),
                None => None,
            };
            let options = FitOptions {
                lambda,
                p: args.p,
                exclude_lcc: args.exclude_lcc,
                estimator: args.estimator,
            };
            let fits = fit_files(&args.files, &options)?;
            print!("{}", render(&fits));
            if let Some(path) = &args.json {
                trendlab_cli::output::write_json(path, &fits)?;
            }
        }
        Command::OracleCheck(args) => {
            let report = oracle_check(&args.lambda.exact()?, args.t_max)?;
            print!("{}", report.render());
            if !report.passed() {
                return Err(HarnessError::Check("total-variation distance above tolerance".into()));
            }
        }
        Command::Sweep(args) => {
            let mut lambdas = Vec::new();
            for text in &args.lambda {
                let v = parse_ratio(text).map_err(|e| HarnessError::Usage(e.to_string()))?;
                lambdas.push((v.to_f64().unwrap_or(f64::NAN), None));
            }
            for text in &args.lambda_ratio {
                let v = parse_ratio(text).map_err(|e| HarnessError::Usage(e.to_string()))?;
                lambdas.push((v.to_f64().unwrap_or(f64::NAN), Some(text.clone())));
            }
            let (first_lambda, _) = lambdas[0];
            let base = run_config(model_params(first_lambda, args.p[0], args.run.q)?, None, &args.run);
            for &(l, _) in &lambdas {
                for &p in &args.p {
                    model_params(l, p, args.run.q)?;
                }
            }
            let entries = sweep(&base, &lambdas, &args.p)?;
            println!("{} parameter points written to {}", entries.len(), base.output_dir.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("trendlab: {e}");
            if e.exit_code() == EXIT_CHECK {
                eprintln!("trendlab: one or more checks failed");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
