//! `simulate`: replicated RG runs with per-replication histograms.

use std::path::PathBuf;

use serde::Serialize;
use trendlab_core::analysis::{fit_histogram, predicted_exponent, Estimator};
use trendlab_core::model::run_with;
use trendlab_core::rng::replication_seed;
use trendlab_core::{ModelParams, SizeHistogram, VERSION};

use crate::error::{HarnessError, HarnessResult};
use crate::output::{ensure_dir, events_path, histogram_path, summary_path, write_histogram, write_json, EventWriter};
use crate::parallel::map_replications;

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// `seed` is the master seed; replication seeds derive from it.
    pub params: ModelParams,
    /// Exact form of λ when given as a ratio, echoed into headers.
    pub lambda_ratio: Option<String>,
    pub replications: u64,
    pub output_dir: PathBuf,
    pub emit_events: bool,
    /// `None` excludes the LCC exactly when `p < 1`.
    pub exclude_lcc: Option<bool>,
    pub estimator: Estimator,
}

impl RunConfig {
    pub fn new(params: ModelParams, output_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            params,
            lambda_ratio: None,
            replications: 1,
            output_dir: output_dir.into(),
            emit_events: false,
            exclude_lcc: None,
            estimator: Estimator::default(),
        }
    }

    pub fn exclude_lcc(&self) -> bool {
        self.exclude_lcc.unwrap_or(self.params.p < 1.0)
    }

    pub fn validate(&self) -> HarnessResult<()> {
        self.params.validate()?;
        if self.replications == 0 {
            return Err(HarnessError::Usage("--replications must be at least 1".into()));
        }
        Ok(())
    }

    fn headers(&self, replication: u64, seed: u64) -> Vec<(&'static str, String)> {
        let mut h = vec![
            ("trendlab", VERSION.to_string()),
            ("command", "simulate".to_string()),
            ("lambda", self.params.lambda.to_string()),
        ];
        if let Some(r) = &self.lambda_ratio {
            h.push(("lambda_ratio", r.clone()));
        }
        h.extend([
            ("p", self.params.p.to_string()),
            ("q", self.params.q.to_string()),
            ("steps", self.params.steps.to_string()),
            ("master_seed", self.params.seed.to_string()),
            ("replication", replication.to_string()),
            ("seed", seed.to_string()),
        ]);
        h
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicationSummary {
    pub replication: u64,
    pub seed: u64,
    pub node_count: u64,
    pub component_count: u64,
    pub lcc_fraction: f64,
    pub alpha_hat: Option<f64>,
    pub n_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub fitted_replications: usize,
    pub alpha_hat_mean: Option<f64>,
    pub alpha_hat_stddev: Option<f64>,
    pub predicted_exponent: Option<f64>,
    pub estimator: Estimator,
    pub lcc_excluded: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub version: String,
    pub command: String,
    pub params: ModelParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_ratio: Option<String>,
    pub replications: Vec<ReplicationSummary>,
    pub aggregate: Aggregate,
}

/// Mean and sample standard deviation.
pub(crate) fn mean_std(values: &[f64]) -> (Option<f64>, Option<f64>) {
    if values.is_empty() {
        return (None, None);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std = if values.len() > 1 {
        Some((values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt())
    } else {
        None
    };
    (Some(mean), std)
}

/// Component-size histogram of one replication plus its summary row.
pub struct Replication {
    pub histogram: SizeHistogram,
    pub summary: ReplicationSummary,
}

pub fn run_replication(config: &RunConfig, replication: u64) -> HarnessResult<Replication> {
    let seed = replication_seed(config.params.seed, replication);
    let params = config.params.with_seed(seed);
    let headers = config.headers(replication, seed);

    let mut events = if config.emit_events {
        Some(EventWriter::create(events_path(&config.output_dir, replication), &headers)?)
    } else {
        None
    };
    let graph = run_with(params, |_, e| {
        if let Some(w) = events.as_mut() {
            w.record(e);
        }
    })?;
    if let Some(w) = events {
        w.finish()?;
    }

    let histogram = SizeHistogram::from_sizes(graph.component_sizes())?;
    write_histogram(&histogram_path(&config.output_dir, replication), &histogram, &headers)?;

    let fit = fit_histogram(&histogram, config.exclude_lcc(), config.estimator);
    Ok(Replication {
        summary: ReplicationSummary {
            replication,
            seed,
            node_count: graph.node_count() as u64,
            component_count: graph.component_count() as u64,
            lcc_fraction: graph.lcc_fraction(),
            alpha_hat: fit.as_ref().ok().map(|f| f.alpha_hat),
            n_used: fit.as_ref().ok().map(|f| f.n_used),
            fit_error: fit.err().map(|e| e.to_string()),
        },
        histogram,
    })
}

/// Runs every replication, writing histograms (and event logs if asked)
/// followed by `summary.json`.
pub fn simulate(config: &RunConfig) -> HarnessResult<RunSummary> {
    Ok(simulate_collect(config)?.0)
}

/// Like [`simulate`], also returning each replication's histogram.
pub fn simulate_collect(config: &RunConfig) -> HarnessResult<(RunSummary, Vec<SizeHistogram>)> {
    config.validate()?;
    ensure_dir(&config.output_dir)?;
    let reps = map_replications(config.replications, |r| run_replication(config, r))?;

    let alphas: Vec<f64> = reps.iter().filter_map(|r| r.summary.alpha_hat).collect();
    let (mean, std) = mean_std(&alphas);
    let summary = RunSummary {
        version: VERSION.to_string(),
        command: "simulate".to_string(),
        params: config.params,
        lambda_ratio: config.lambda_ratio.clone(),
        aggregate: Aggregate {
            fitted_replications: alphas.len(),
            alpha_hat_mean: mean,
            alpha_hat_stddev: std,
            predicted_exponent: predicted_exponent(config.params.lambda, config.params.p).ok(),
            estimator: config.estimator,
            lcc_excluded: config.exclude_lcc(),
        },
        replications: reps.iter().map(|r| r.summary.clone()).collect(),
    };
    write_json(&summary_path(&config.output_dir), &summary)?;
    Ok((summary, reps.into_iter().map(|r| r.histogram).collect()))
}
