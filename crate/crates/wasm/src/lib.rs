//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Everything returns plain numbers, vectors or strings; errors come back as
//! `Err(String)` so the same functions are testable natively.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use trendlab_core::analysis::{fit_histogram, predicted_exponent, Estimator, YuleModel};
use trendlab_core::model::run_with;
use trendlab_core::oracle::{enumerate_rg, enumerate_urn, parse_ratio, ExactParams, ENUMERATION_LIMIT};
use trendlab_core::urn::{bin_fractions, run_urn};
use trendlab_core::{ModelParams, SizeHistogram, UrnParams};
use wasm_bindgen::prelude::*;

/// Largest horizon the page accepts, to keep the tab responsive.
pub const MAX_STEPS: u32 = 2_000_000;

/// Size distribution of one run, ready for a log-log plot.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct SizeView {
    sizes: Vec<f64>,
    fractions: Vec<f64>,
    yule: Vec<f64>,
    alpha_hat: f64,
    predicted: f64,
    largest_fraction: f64,
    count: u32,
}

#[wasm_bindgen]
impl SizeView {
    #[wasm_bindgen(getter)]
    pub fn sizes(&self) -> Vec<f64> {
        self.sizes.clone()
    }

    /// Empirical fraction of each size (LCC excluded when it was fitted so).
    #[wasm_bindgen(getter)]
    pub fn fractions(&self) -> Vec<f64> {
        self.fractions.clone()
    }

    /// Yule pmf at `sizes` for the predicted exponent; empty if undefined.
    #[wasm_bindgen(getter)]
    pub fn yule(&self) -> Vec<f64> {
        self.yule.clone()
    }

    /// NaN when the estimator is undefined for this sample.
    #[wasm_bindgen(getter)]
    pub fn alpha_hat(&self) -> f64 {
        self.alpha_hat
    }

    /// NaN when no finite prediction exists.
    #[wasm_bindgen(getter)]
    pub fn predicted(&self) -> f64 {
        self.predicted
    }

    #[wasm_bindgen(getter)]
    pub fn largest_fraction(&self) -> f64 {
        self.largest_fraction
    }

    /// Number of components (or bins).
    #[wasm_bindgen(getter)]
    pub fn count(&self) -> u32 {
        self.count
    }
}

fn view(hist: &SizeHistogram, exclude_lcc: bool, predicted: Option<f64>) -> SizeView {
    let total = hist.total_size().max(1) as f64;
    let largest_fraction = hist.max_size().unwrap_or(0) as f64 / total;
    let used = if exclude_lcc { hist.without_largest() } else { hist.clone() };
    let (sizes, fractions): (Vec<f64>, Vec<f64>) = used.fractions().map(|(s, f)| (s as f64, f)).unzip();
    let yule = match predicted.and_then(|a| YuleModel::new(a - 1.0).ok()) {
        Some(model) => sizes.iter().map(|&s| model.pmf(s as u64)).collect(),
        None => Vec::new(),
    };
    let alpha_hat = fit_histogram(hist, exclude_lcc, Estimator::YuleMle).map_or(f64::NAN, |f| f.alpha_hat);
    SizeView {
        sizes,
        fractions,
        yule,
        alpha_hat,
        predicted: predicted.unwrap_or(f64::NAN),
        largest_fraction,
        count: hist.n() as u32,
    }
}

fn check_steps(steps: u32) -> Result<(), String> {
    if steps > MAX_STEPS {
        return Err(format!("steps must be at most {MAX_STEPS}"));
    }
    Ok(())
}

/// Runs the retweet-graph model and returns its component-size view. The
/// LCC is excluded from the fit when `p < 1`.
#[wasm_bindgen]
pub fn simulate_rg(lambda: f64, p: f64, q: f64, steps: u32, seed: u32) -> Result<SizeView, String> {
    check_steps(steps)?;
    let params = ModelParams::new(lambda, p, q)
        .map_err(|e| e.to_string())?
        .with_steps(steps as u64)
        .with_seed(seed as u64);
    let graph = run_with(params, |_, _| {}).map_err(|e| e.to_string())?;
    let hist = SizeHistogram::from_counts(graph.component_size_counts().clone()).map_err(|e| e.to_string())?;
    Ok(view(&hist, p < 1.0, predicted_exponent(lambda, p).ok()))
}

/// Runs the Polya urn with `γ = 1` and returns its bin-size view.
#[wasm_bindgen]
pub fn simulate_urn(p_bar: f64, steps: u32, seed: u32) -> Result<SizeView, String> {
    check_steps(steps)?;
    let params = UrnParams::new(1.0, p_bar)
        .map_err(|e| e.to_string())?
        .with_steps(steps as u64)
        .with_seed(seed as u64);
    let hist = bin_fractions(&run_urn(&params));
    let predicted = (p_bar < 1.0).then(|| 1.0 + 1.0 / (1.0 - p_bar));
    Ok(view(&hist, false, predicted))
}

/// Exact total-variation distance between the RG (p = 1) and urn laws for
/// `t = 1..=t_max`, one `t<TAB>distance` line each. `lambda` accepts
/// `1/3`, `0.25` or `2`.
#[wasm_bindgen]
pub fn oracle_check(lambda: &str, t_max: u32) -> Result<String, String> {
    if t_max as u64 > ENUMERATION_LIMIT {
        return Err(format!("t_max must be at most {ENUMERATION_LIMIT}"));
    }
    let lambda: BigRational = parse_ratio(lambda).map_err(|e| e.to_string())?;
    let params = ExactParams::new(lambda.clone(), BigRational::one()).map_err(|e| e.to_string())?;
    let p_bar = params.p_bar();
    let mut out = format!(
        "lambda = {lambda}, p_bar = {p_bar} (~{:.6})\nt\tsupport\ttv_distance\n",
        p_bar.to_f64().unwrap_or(f64::NAN)
    );
    for t in 1..=t_max as u64 {
        let rg = enumerate_rg(&params, t).map_err(|e| e.to_string())?;
        let urn = enumerate_urn(&p_bar, t).map_err(|e| e.to_string())?;
        out.push_str(&format!("{t}\t{}\t{}\n", rg.len(), rg.total_variation_exact(&urn)));
    }
    Ok(out)
}
