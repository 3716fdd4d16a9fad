//! `fit`: exponent estimates for histogram files, with the Yule pmf over the
//! observed support for overplotting.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use trendlab_core::analysis::{fit_histogram, predicted_exponent, Estimator, YuleModel};
use trendlab_core::SizeHistogram;

use crate::error::{HarnessError, HarnessResult};

#[derive(Debug, Clone, Default)]
pub struct FitOptions {
    pub lambda: Option<f64>,
    pub p: Option<f64>,
    /// `None`: exclude the LCC when the file's `p` is below 1.
    pub exclude_lcc: Option<bool>,
    pub estimator: Estimator,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YuleRow {
    pub size: u64,
    pub empirical: f64,
    pub yule_pdf: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FileFit {
    pub path: PathBuf,
    pub alpha_hat: f64,
    pub n_used: usize,
    pub lcc_excluded: bool,
    pub predicted_exponent: Option<f64>,
    pub estimator: Estimator,
    /// Shape of the overplotted Yule law: predicted when known, else fitted.
    pub yule_rho: f64,
    pub table: Vec<YuleRow>,
}

fn header<'a>(headers: &'a [(String, String)], key: &str) -> Option<&'a str> {
    headers.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn header_f64(headers: &[(String, String)], key: &str) -> Option<f64> {
    header(headers, key).and_then(|v| v.parse().ok())
}

pub fn fit_file(path: &Path, options: &FitOptions) -> HarnessResult<FileFit> {
    let text = std::fs::read_to_string(path).map_err(HarnessError::io(path))?;
    let context = path.display().to_string();
    let (headers, hist) = SizeHistogram::parse_table(&text).map_err(HarnessError::data(context.clone()))?;

    let lambda = options.lambda.or_else(|| header_f64(&headers, "lambda"));
    let p = options.p.or_else(|| header_f64(&headers, "p"));
    let predicted = match (lambda, p, header_f64(&headers, "p_bar")) {
        (Some(l), Some(p), _) => predicted_exponent(l, p).ok(),
        (_, _, Some(p_bar)) if p_bar < 1.0 => Some(1.0 + 1.0 / (1.0 - p_bar)),
        _ => None,
    };
    let exclude = options.exclude_lcc.unwrap_or(matches!(p, Some(p) if p < 1.0));

    let fit = fit_histogram(&hist, exclude, options.estimator).map_err(HarnessError::data(context))?;
    let used = if exclude { hist.without_largest() } else { hist };
    let rho = predicted.map_or(fit.alpha_hat - 1.0, |a| a - 1.0);
    let yule = YuleModel::new(rho)?;
    let table = used
        .fractions()
        .map(|(size, empirical)| YuleRow {
            size,
            empirical,
            yule_pdf: yule.pmf(size),
        })
        .collect();

    Ok(FileFit {
        path: path.to_path_buf(),
        alpha_hat: fit.alpha_hat,
        n_used: fit.n_used,
        lcc_excluded: fit.lcc_excluded,
        predicted_exponent: predicted,
        estimator: fit.estimator,
        yule_rho: rho,
        table,
    })
}

pub fn fit_files(paths: &[PathBuf], options: &FitOptions) -> HarnessResult<Vec<FileFit>> {
    if paths.is_empty() {
        return Err(HarnessError::Usage("fit needs at least one histogram file".into()));
    }
    paths.iter().map(|p| fit_file(p, options)).collect()
}

/// Plain-text report: one summary line per file, then each Yule table.
pub fn render(fits: &[FileFit]) -> String {
    let mut out = String::from("# file\talpha_hat\tn_used\tlcc_excluded\tpredicted_exponent\testimator\n");
    for f in fits {
        let predicted = f.predicted_exponent.map_or_else(|| "NA".to_string(), |a| a.to_string());
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            f.path.display(),
            f.alpha_hat,
            f.n_used,
            f.lcc_excluded,
            predicted,
            f.estimator.name()
        );
    }
    for f in fits {
        let _ = writeln!(out, "\n# yule table: {} (rho = {})", f.path.display(), f.yule_rho);
        out.push_str("# size\tempirical\tyule_pdf\n");
        for row in &f.table {
            let _ = writeln!(out, "{}\t{}\t{}", row.size, row.empirical, row.yule_pdf);
        }
    }
    out
}
