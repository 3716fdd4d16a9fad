//! Component-size statistics and the Yule power-law predictions.
//!
//! With `ρ = (λ+1)/p`, the limiting fraction of components of size `i` is
//! bounded by a sequence proportional to `Γ(i)/Γ(i+ρ+1)`, i.e. a Yule law with
//! tail exponent `α = ρ + 1`. At `p = 1` this is `λ + 2`.

use crate::error::{Error, Result};
use crate::histogram::SizeHistogram;
use crate::oracle::ExactDistribution;
use crate::special::ln_gamma_ratio;

/// Fewest observations (after LCC removal) an exponent fit accepts.
pub const MIN_FIT_SAMPLES: usize = 30;

/// Predicted tail exponent `1 + (λ+1)/p`.
pub fn predicted_exponent(lambda: f64, p: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Domain(format!("no finite exponent for p = {p}")));
    }
    Ok(1.0 + (lambda + 1.0) / p)
}

/// Yule distribution on `{1, 2, ...}` with shape `ρ`:
/// `f(i) = ρ Γ(ρ+1) Γ(i) / Γ(i+ρ+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YuleModel {
    rho: f64,
}

impl YuleModel {
    pub fn new(rho: f64) -> Result<Self> {
        if rho > 0.0 && rho.is_finite() {
            Ok(YuleModel { rho })
        } else {
            Err(Error::Domain(format!("Yule shape must be positive, got {rho}")))
        }
    }

    /// The Yule law predicted for the RG model, `ρ = (λ+1)/p`.
    pub fn for_model(lambda: f64, p: f64) -> Result<Self> {
        Self::new(predicted_exponent(lambda, p)? - 1.0)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn alpha(&self) -> f64 {
        self.rho + 1.0
    }

    pub fn x_min(&self) -> u64 {
        1
    }

    /// `ln f(i)` for `i ≥ 1`.
    pub fn ln_pmf(&self, i: u64) -> f64 {
        debug_assert!(i >= 1);
        // ln ρ + ln Γ(ρ+1) − [ln Γ(i+ρ+1) − ln Γ(i)]
        self.rho.ln() + ln_gamma_ratio(1.0, self.rho) - ln_gamma_ratio(i as f64, self.rho + 1.0)
    }

    pub fn pmf(&self, i: u64) -> f64 {
        self.ln_pmf(i).exp()
    }

    /// `P(X > n) = Γ(n+1) Γ(ρ+1) / Γ(n+ρ+1)`. Telescopes against the pmf:
    /// `f(i) = P(X > i-1) − P(X > i)`.
    pub fn survival(&self, n: u64) -> f64 {
        (ln_gamma_ratio(1.0, self.rho) - ln_gamma_ratio(n as f64 + 1.0, self.rho)).exp()
    }
}

pub fn yule_pdf(i: i64, model: &YuleModel) -> Result<f64> {
    if i < 1 {
        return Err(Error::Domain(format!("Yule support starts at 1, got {i}")));
    }
    Ok(model.pmf(i as u64))
}

/// Mass of the Yule pmf on `1..=n`, with the exact remaining tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedMass {
    pub sum: f64,
    pub tail_bound: f64,
}

pub fn truncated_mass(model: &YuleModel, n: u64) -> TruncatedMass {
    // Smallest terms first.
    let sum = (1..=n).rev().map(|i| model.pmf(i)).sum();
    TruncatedMass {
        sum,
        tail_bound: model.survival(n),
    }
}

/// Normalized `g(i) = Π_{j=2}^{i} (j−1)/(j+ρ)` for `i = 1..=i_max`
/// (element `k` holds `g(k+1)`).
///
/// The mass beyond `i_max` is `g(i_max)·i_max/ρ` (it telescopes), so the
/// normalization is over the whole support, not just the returned prefix.
pub fn fi_product_bound(lambda: f64, p: f64, i_max: usize) -> Result<Vec<f64>> {
    if i_max == 0 {
        return Err(Error::Domain("i_max must be at least 1".into()));
    }
    let rho = predicted_exponent(lambda, p)? - 1.0;
    let mut g = Vec::with_capacity(i_max);
    let mut cur = 1.0f64;
    g.push(cur);
    for j in 2..=i_max {
        let jf = j as f64;
        cur *= (jf - 1.0) / (jf + rho);
        g.push(cur);
    }
    let head: f64 = g.iter().rev().sum();
    let tail = cur * i_max as f64 / rho;
    let z = head + tail;
    for v in &mut g {
        *v /= z;
    }
    Ok(g)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: impl IntoIterator<Item = (f64, f64)>) -> f64 {
    let pts: Vec<(f64, f64)> = points.into_iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Estimator {
    /// Maximum likelihood for the Yule law with `x_min = 1`; `α̂ = ρ̂ + 1`.
    #[default]
    YuleMle,
    /// `α̂ = 1 + n / Σ ln(x_i / (x_min − ½))`, the continuous approximation to
    /// the discrete power-law MLE.
    ContinuousApprox,
}

impl Estimator {
    pub fn name(self) -> &'static str {
        match self {
            Estimator::YuleMle => "yule-mle",
            Estimator::ContinuousApprox => "continuous-approx",
        }
    }
}

impl std::str::FromStr for Estimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "yule-mle" | "yule" => Ok(Estimator::YuleMle),
            "continuous-approx" | "continuous" => Ok(Estimator::ContinuousApprox),
            other => Err(Error::Domain(format!("unknown estimator `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FitResult {
    pub alpha_hat: f64,
    pub n_used: usize,
    pub lcc_excluded: bool,
    pub estimator: Estimator,
}

/// Fits the tail exponent of a component-size sample with the default
/// estimator. `exclude_lcc` drops the single largest observation first.
pub fn fit_exponent(sizes: &[u64], exclude_lcc: bool) -> Result<FitResult> {
    fit_histogram(&SizeHistogram::from_sizes(sizes.iter().copied())?, exclude_lcc, Estimator::default())
}

pub fn fit_histogram(hist: &SizeHistogram, exclude_lcc: bool, estimator: Estimator) -> Result<FitResult> {
    let trimmed;
    let hist = if exclude_lcc {
        trimmed = hist.without_largest();
        &trimmed
    } else {
        hist
    };
    let n = hist.n() as usize;
    if n < MIN_FIT_SAMPLES {
        return Err(Error::TooFewSamples {
            got: n,
            need: MIN_FIT_SAMPLES,
        });
    }
    if hist.max_size() == Some(1) {
        return Err(Error::EstimatorUndefined("every observation equals 1".into()));
    }
    let alpha_hat = match estimator {
        Estimator::YuleMle => yule_mle(hist)? + 1.0,
        Estimator::ContinuousApprox => continuous_approx_alpha(hist),
    };
    Ok(FitResult {
        alpha_hat,
        n_used: n,
        lcc_excluded: exclude_lcc,
        estimator,
    })
}

fn continuous_approx_alpha(hist: &SizeHistogram) -> f64 {
    let log_sum: f64 = hist.counts().iter().map(|(&s, &c)| c as f64 * (s as f64 / 0.5).ln()).sum();
    1.0 + hist.n() as f64 / log_sum
}

/// Yule shape MLE. The score is
/// `n/ρ − Σ_{k≥0} #{x > k} / (ρ + 1 + k)`, which is positive near 0 and
/// negative for large `ρ` whenever some observation exceeds 1.
pub fn yule_mle(hist: &SizeHistogram) -> Result<f64> {
    let n = hist.n() as f64;
    let max = hist.max_size().ok_or(Error::EmptyInput)? as usize;
    if max <= 1 {
        return Err(Error::EstimatorUndefined("every observation equals 1".into()));
    }
    // exceed[k] = #{x > k}, k = 0..max-1
    let mut exceed = vec![0f64; max];
    let mut at_most = 0u64;
    let counts = hist.counts();
    for (k, slot) in exceed.iter_mut().enumerate() {
        at_most += counts.get(&(k as u64)).copied().unwrap_or(0);
        *slot = (hist.n() - at_most) as f64;
    }
    let score = |rho: f64| -> f64 {
        let mut s = 0.0;
        for (k, &e) in exceed.iter().enumerate().rev() {
            s += e / (rho + 1.0 + k as f64);
        }
        n / rho - s
    };
    let (mut lo, mut hi) = (1e-9f64, 1e9f64);
    if score(hi) >= 0.0 {
        return Err(Error::EstimatorUndefined("likelihood increases without bound".into()));
    }
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if score(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi / lo - 1.0 < 1e-13 {
            break;
        }
    }
    Ok((lo * hi).sqrt())
}

/// Two-sample Kolmogorov–Smirnov outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsTest {
    pub statistic: f64,
    pub p_value: f64,
}

/// Largest gap between the two empirical CDFs.
pub fn ks_statistic(a: &SizeHistogram, b: &SizeHistogram) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sizes: Vec<u64> = a.counts().keys().chain(b.counts().keys()).copied().collect();
    sizes.sort_unstable();
    sizes.dedup();
    let (na, nb) = (a.n() as f64, b.n() as f64);
    let (mut ca, mut cb) = (0u64, 0u64);
    let mut d = 0f64;
    for s in sizes {
        ca += a.count(s);
        cb += b.count(s);
        d = d.max((ca as f64 / na - cb as f64 / nb).abs());
    }
    Ok(d)
}

/// Asymptotic p-value of a two-sample KS statistic (Kolmogorov limit law with
/// the Stephens small-sample correction). Conservative for discrete data.
pub fn ks_p_value(statistic: f64, n: u64, m: u64) -> f64 {
    let ne = (n as f64 * m as f64) / (n + m) as f64;
    let sq = ne.sqrt();
    let lambda = (sq + 0.12 + 0.11 / sq) * statistic;
    kolmogorov_sf(lambda)
}

fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=200 {
        let term = (-2.0 * (k * k) as f64 * lambda * lambda).exp();
        sum += sign * term;
        if term < 1e-18 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

pub fn ks_two_sample(a: &SizeHistogram, b: &SizeHistogram) -> Result<KsTest> {
    let statistic = ks_statistic(a, b)?;
    Ok(KsTest {
        statistic,
        p_value: ks_p_value(statistic, a.n(), b.n()),
    })
}

/// Distance between two distributions of the same kind: Kolmogorov–Smirnov
/// for empirical histograms, total variation for exact distributions.
pub trait DistributionDistance {
    fn distance(&self, other: &Self) -> Result<f64>;
}

impl DistributionDistance for SizeHistogram {
    fn distance(&self, other: &Self) -> Result<f64> {
        ks_statistic(self, other)
    }
}

impl DistributionDistance for ExactDistribution {
    fn distance(&self, other: &Self) -> Result<f64> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(self.total_variation(other))
    }
}

pub fn distribution_distance<D: DistributionDistance>(a: &D, b: &D) -> Result<f64> {
    a.distance(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn exponents() {
        assert!((predicted_exponent(1.0 / 3.0, 1.0).unwrap() - 7.0 / 3.0).abs() < 1e-15);
        assert!((predicted_exponent(1.0 / 3.0, 0.8).unwrap() - 8.0 / 3.0).abs() < 1e-15);
        assert!((predicted_exponent(1.0 / 3.0, 0.4).unwrap() - 13.0 / 3.0).abs() < 1e-14);
        assert!(predicted_exponent(1.0 / 3.0, 0.0).is_err());
        for &l in &[0.1, 0.5, 1.0, 7.25] {
            assert_eq!(predicted_exponent(l, 1.0).unwrap(), l + 2.0);
        }
    }

    #[test]
    fn yule_first_mass_and_ratio() {
        let m = YuleModel::new(4.0 / 3.0).unwrap();
        assert!((yule_pdf(1, &m).unwrap() - 4.0 / 7.0).abs() < 1e-12);
        assert!(yule_pdf(0, &m).is_err());
        assert!(yule_pdf(-3, &m).is_err());
        for i in 2..2_000u64 {
            let r = m.pmf(i) / m.pmf(i - 1);
            let expected = (i as f64 - 1.0) / (i as f64 + m.rho());
            assert!((r - expected).abs() < 1e-12, "i = {i}");
        }
        assert!(YuleModel::new(0.0).is_err());
    }

    #[test]
    fn yule_survival_telescopes() {
        let m = YuleModel::new(2.5).unwrap();
        assert!((m.survival(0) - 1.0).abs() < 1e-15);
        for i in 1..500 {
            let diff = m.survival(i - 1) - m.survival(i);
            assert!((diff - m.pmf(i)).abs() < 1e-14, "i = {i}");
        }
    }

    #[test]
    fn product_bound_first_ratio() {
        for &(l, p) in &[(1.0 / 3.0, 1.0), (1.0 / 3.0, 0.8), (2.0, 0.3)] {
            let g = fi_product_bound(l, p, 10).unwrap();
            let rho = (l + 1.0) / p;
            assert!((g[1] / g[0] - 1.0 / (2.0 + rho)).abs() < 1e-15);
        }
        assert!(fi_product_bound(1.0, 1.0, 0).is_err());
    }

    #[test]
    fn continuous_estimator_hand_value() {
        let h = SizeHistogram::from_sizes([1, 1, 2, 4]).unwrap();
        let expected = 1.0 + 4.0 / (7.0 * 2f64.ln());
        assert!((continuous_approx_alpha(&h) - expected).abs() < 1e-14);
        assert!((expected - 1.824).abs() < 1e-3);
    }

    #[test]
    fn fit_errors() {
        let ones = vec![1u64; 100];
        assert!(matches!(fit_exponent(&ones, false), Err(Error::EstimatorUndefined(_))));
        let few = vec![1u64, 2, 3];
        assert!(matches!(fit_exponent(&few, false), Err(Error::TooFewSamples { got: 3, .. })));
        let mut edge = vec![1u64; 30];
        edge.push(5);
        // Removing the single large value leaves only ones.
        assert!(matches!(fit_exponent(&edge, true), Err(Error::EstimatorUndefined(_))));
        assert_eq!(fit_exponent(&edge, false).unwrap().n_used, 31);
    }

    #[test]
    fn duplicating_sample_keeps_estimate() {
        let mut rng = crate::rng::seeded(1);
        let sample: Vec<u64> = (0..500).map(|_| 1 + (rng.gen::<f64>().powf(-1.5) as u64).min(10_000)).collect();
        let doubled: Vec<u64> = sample.iter().chain(sample.iter()).copied().collect();
        for est in [Estimator::YuleMle, Estimator::ContinuousApprox] {
            let a = fit_histogram(&SizeHistogram::from_sizes(sample.iter().copied()).unwrap(), false, est).unwrap();
            let b = fit_histogram(&SizeHistogram::from_sizes(doubled.iter().copied()).unwrap(), false, est).unwrap();
            assert!((a.alpha_hat - b.alpha_hat).abs() < 1e-9, "{est:?}");
        }
    }

    #[test]
    fn yule_mle_maximizes_likelihood() {
        let h = SizeHistogram::from_sizes([1, 1, 1, 2, 2, 3, 5, 9, 1, 1, 4, 1]).unwrap();
        let rho = yule_mle(&h).unwrap();
        let ll = |r: f64| -> f64 {
            let m = YuleModel::new(r).unwrap();
            h.observations().map(|x| m.ln_pmf(x)).sum()
        };
        let best = ll(rho);
        for &f in &[0.9, 0.99, 0.999, 1.001, 1.01, 1.1] {
            assert!(ll(rho * f) <= best + 1e-12, "factor {f}");
        }
    }

    #[test]
    fn ks_basics() {
        let a = SizeHistogram::from_sizes([1, 2, 3]).unwrap();
        assert_eq!(distribution_distance(&a, &a).unwrap(), 0.0);
        let b = SizeHistogram::from_sizes([10, 11]).unwrap();
        assert_eq!(ks_statistic(&a, &b).unwrap(), 1.0);
        assert!(ks_statistic(&a, &SizeHistogram::default()).is_err());
        assert_eq!(ks_p_value(0.0, 100, 100), 1.0);
        assert!(ks_p_value(0.5, 1000, 1000) < 1e-10);
        // Critical value at α = 0.05 is about 1.358 · sqrt(2/n).
        let d = 1.358 * (2.0f64 / 1e6).sqrt();
        assert!((ks_p_value(d, 1_000_000, 1_000_000) - 0.05).abs() < 2e-3);
    }
}
