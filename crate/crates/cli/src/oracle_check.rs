//! `oracle-check`: exact RG (p = 1) versus urn (p̄ = λ/(λ+1)) distance per
//! horizon.

use std::fmt::Write as _;

use num_rational::BigRational;
use trendlab_core::oracle::{enumerate_rg, enumerate_urn, ExactDistribution, ExactParams, ENUMERATION_LIMIT};

use crate::error::{HarnessError, HarnessResult};

/// Largest TV distance the check tolerates.
pub const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub lambda: BigRational,
    /// `(t, total variation)` for `t = 1..=t_max`.
    pub distances: Vec<(u64, f64)>,
    pub rg_at_two: Option<ExactDistribution>,
    pub urn_at_two: Option<ExactDistribution>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.distances.iter().all(|&(_, d)| d <= TOLERANCE)
    }

    pub fn render(&self) -> String {
        let mut out = format!("# oracle-check lambda = {}\n# t\ttv_distance\n", self.lambda);
        for (t, d) in &self.distances {
            let _ = writeln!(out, "{t}\t{d:e}");
        }
        for (name, dist) in [("rg", &self.rg_at_two), ("urn", &self.urn_at_two)] {
            if let Some(dist) = dist {
                let _ = writeln!(out, "\n# {name} support at t = 2");
                for (sizes, p) in dist.iter() {
                    let sizes: Vec<String> = sizes.iter().map(u64::to_string).collect();
                    let _ = writeln!(out, "{{{}}}\t{}", sizes.join(","), p);
                }
            }
        }
        let _ = writeln!(out, "\n# result: {}", if self.passed() { "pass" } else { "FAIL" });
        out
    }
}

pub fn oracle_check(lambda: &BigRational, t_max: u64) -> HarnessResult<OracleReport> {
    if t_max > ENUMERATION_LIMIT {
        return Err(HarnessError::Usage(format!(
            "--t-max {t_max} exceeds the enumeration limit {ENUMERATION_LIMIT}"
        )));
    }
    let params = ExactParams::new(lambda.clone(), num_traits::One::one())?;
    let p_bar = params.p_bar();
    let mut report = OracleReport {
        lambda: lambda.clone(),
        distances: Vec::new(),
        rg_at_two: None,
        urn_at_two: None,
    };
    for t in 1..=t_max {
        let rg = enumerate_rg(&params, t)?;
        let urn = enumerate_urn(&p_bar, t)?;
        report.distances.push((t, rg.total_variation(&urn)));
        if t == 2 {
            report.rg_at_two = Some(rg);
            report.urn_at_two = Some(urn);
        }
    }
    Ok(report)
}
