//! `urn`: replicated Polya-process runs, same outputs as `simulate`.

use std::path::PathBuf;

use serde::Serialize;
use trendlab_core::analysis::{fit_histogram, Estimator};
use trendlab_core::rng::replication_seed;
use trendlab_core::urn::{bin_fractions, run_urn};
use trendlab_core::{UrnParams, VERSION};

use crate::error::{HarnessError, HarnessResult};
use crate::output::{ensure_dir, histogram_path, summary_path, write_histogram, write_json};
use crate::parallel::map_replications;
use crate::simulate::mean_std;

#[derive(Debug, Clone)]
pub struct UrnConfig {
    pub params: UrnParams,
    pub replications: u64,
    pub output_dir: PathBuf,
    pub estimator: Estimator,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UrnReplication {
    pub replication: u64,
    pub seed: u64,
    pub bin_count: u64,
    pub total_balls: u64,
    pub largest_bin_fraction: f64,
    pub alpha_hat: Option<f64>,
    pub n_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UrnSummary {
    pub version: String,
    pub command: String,
    pub params: UrnParams,
    pub replications: Vec<UrnReplication>,
    pub fitted_replications: usize,
    pub alpha_hat_mean: Option<f64>,
    pub alpha_hat_stddev: Option<f64>,
    /// `1 + 1/(1 − p̄)`, defined for γ = 1 and p̄ < 1.
    pub predicted_exponent: Option<f64>,
    pub estimator: Estimator,
}

pub fn predicted_urn_exponent(params: &UrnParams) -> Option<f64> {
    (params.gamma == 1.0 && params.p_bar < 1.0).then(|| 1.0 + 1.0 / (1.0 - params.p_bar))
}

pub fn urn(config: &UrnConfig) -> HarnessResult<UrnSummary> {
    config.params.validate()?;
    if config.replications == 0 {
        return Err(HarnessError::Usage("--replications must be at least 1".into()));
    }
    ensure_dir(&config.output_dir)?;

    let reps = map_replications(config.replications, |r| {
        let seed = replication_seed(config.params.seed, r);
        let state = run_urn(&config.params.with_seed(seed));
        let hist = bin_fractions(&state);
        let headers = vec![
            ("trendlab", VERSION.to_string()),
            ("command", "urn".to_string()),
            ("gamma", config.params.gamma.to_string()),
            ("p_bar", config.params.p_bar.to_string()),
            ("steps", config.params.steps.to_string()),
            ("master_seed", config.params.seed.to_string()),
            ("replication", r.to_string()),
            ("seed", seed.to_string()),
        ];
        write_histogram(&histogram_path(&config.output_dir, r), &hist, &headers)?;
        let fit = fit_histogram(&hist, false, config.estimator);
        Ok(UrnReplication {
            replication: r,
            seed,
            bin_count: state.bin_count() as u64,
            total_balls: state.total_balls(),
            largest_bin_fraction: hist.max_size().unwrap_or(0) as f64 / state.total_balls() as f64,
            alpha_hat: fit.as_ref().ok().map(|f| f.alpha_hat),
            n_used: fit.as_ref().ok().map(|f| f.n_used),
            fit_error: fit.err().map(|e| e.to_string()),
        })
    })?;

    let alphas: Vec<f64> = reps.iter().filter_map(|r| r.alpha_hat).collect();
    let (mean, std) = mean_std(&alphas);
    let summary = UrnSummary {
        version: VERSION.to_string(),
        command: "urn".to_string(),
        params: config.params,
        fitted_replications: alphas.len(),
        alpha_hat_mean: mean,
        alpha_hat_stddev: std,
        predicted_exponent: predicted_urn_exponent(&config.params),
        estimator: config.estimator,
        replications: reps,
    };
    write_json(&summary_path(&config.output_dir), &summary)?;
    Ok(summary)
}
