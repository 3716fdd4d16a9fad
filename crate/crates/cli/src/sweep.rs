//! `sweep`: `simulate` over the cartesian product of λ and p values, one
//! subdirectory per pair.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::HarnessResult;
use crate::output::{ensure_dir, summary_path, write_json};
use crate::simulate::{simulate, RunConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepEntry {
    pub lambda: f64,
    pub p: f64,
    pub directory: PathBuf,
    pub alpha_hat_mean: Option<f64>,
    pub predicted_exponent: Option<f64>,
    pub mean_lcc_fraction: f64,
}

pub fn point_dir(root: &Path, lambda: f64, p: f64) -> PathBuf {
    root.join(format!("lambda_{lambda}_p_{p}"))
}

/// `base` supplies every setting except λ and p.
pub fn sweep(base: &RunConfig, lambdas: &[(f64, Option<String>)], ps: &[f64]) -> HarnessResult<Vec<SweepEntry>> {
    ensure_dir(&base.output_dir)?;
    let mut entries = Vec::new();
    for (lambda, ratio) in lambdas {
        for &p in ps {
            let mut config = base.clone();
            config.params.lambda = *lambda;
            config.params.p = p;
            config.lambda_ratio = ratio.clone();
            config.output_dir = point_dir(&base.output_dir, *lambda, p);
            let summary = simulate(&config)?;
            let lcc: f64 = summary.replications.iter().map(|r| r.lcc_fraction).sum::<f64>()
                / summary.replications.len() as f64;
            entries.push(SweepEntry {
                lambda: *lambda,
                p,
                directory: config.output_dir,
                alpha_hat_mean: summary.aggregate.alpha_hat_mean,
                predicted_exponent: summary.aggregate.predicted_exponent,
                mean_lcc_fraction: lcc,
            });
        }
    }
    write_json(&summary_path(&base.output_dir), &entries)?;
    Ok(entries)
}
