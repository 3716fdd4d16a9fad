//! Yule pmf, the product-form bound and the exponent estimators against
//! independently generated data.

use rand::Rng;
use trendlab_core::analysis::{
    fi_product_bound, fit_exponent, fit_histogram, loglog_slope, truncated_mass, yule_pdf, Estimator, YuleModel,
};
use trendlab_core::rng::seeded;
use trendlab_core::urn::{bin_fractions, run_urn};
use trendlab_core::{SizeHistogram, UrnParams};

/// Simon's mixture: W ~ Exp(ρ), X | W ~ Geometric(e^{-W}) on {1, 2, ...}.
fn yule_sample(rho: f64, n: usize, seed: u64) -> Vec<u64> {
    let mut rng = seeded(seed);
    (0..n)
        .map(|_| {
            let u: f64 = 1.0 - rng.gen::<f64>();
            let success = u.powf(1.0 / rho);
            let v: f64 = 1.0 - rng.gen::<f64>();
            if success >= 1.0 {
                1
            } else {
                1 + (v.ln() / (1.0 - success).ln()).floor() as u64
            }
        })
        .collect()
}

#[test]
fn sampler_oracle_matches_pmf() {
    let rho = 4.0 / 3.0;
    let model = YuleModel::new(rho).unwrap();
    let n = 400_000;
    let h = SizeHistogram::from_sizes(yule_sample(rho, n, 3)).unwrap();
    for i in 1..=6 {
        let p = yule_pdf(i, &model).unwrap();
        let band = 4.0 * (p * (1.0 - p) / n as f64).sqrt();
        assert!((h.fraction(i as u64) - p).abs() < band, "i = {i}");
    }
}

#[test]
fn yule_mle_recovers_alpha() {
    for (rho, seed) in [(4.0 / 3.0, 1u64), (5.0 / 3.0, 2), (10.0 / 3.0, 3)] {
        let fit = fit_exponent(&yule_sample(rho, 100_000, seed), false).unwrap();
        assert!((fit.alpha_hat - (rho + 1.0)).abs() < 0.05, "rho = {rho}: {}", fit.alpha_hat);
        assert_eq!(fit.n_used, 100_000);
    }
}

#[test]
fn continuous_approximation_is_biased_at_xmin_one() {
    // The estimator converges to 1 + 1/E[ln(2X)], far from ρ + 1.
    let fit = fit_histogram(
        &SizeHistogram::from_sizes(yule_sample(4.0 / 3.0, 100_000, 4)).unwrap(),
        false,
        Estimator::ContinuousApprox,
    )
    .unwrap();
    assert!((fit.alpha_hat - 1.787).abs() < 0.02, "{}", fit.alpha_hat);
}

#[test]
fn pmf_mass_and_tail() {
    let model = YuleModel::new(4.0 / 3.0).unwrap();
    let mass = truncated_mass(&model, 1_000_000);
    assert!(mass.sum >= 1.0 - 1e-3);
    assert!(mass.tail_bound > 0.0 && mass.tail_bound < 1e-7);
    assert!((1.0 - mass.sum - mass.tail_bound).abs() < 1e-12);
}

#[test]
fn product_bound_matches_pmf_and_slope() {
    for &(lambda, p) in &[(1.0 / 3.0, 1.0), (1.0 / 3.0, 0.8), (1.0 / 3.0, 0.4)] {
        let g = fi_product_bound(lambda, p, 10_000).unwrap();
        let model = YuleModel::for_model(lambda, p).unwrap();
        for i in 1..=1_000u64 {
            assert!((g[i as usize - 1] - model.pmf(i)).abs() < 1e-9, "i = {i}");
        }
        let slope = loglog_slope((100..=10_000).map(|i| (i as f64, g[i - 1])));
        assert!((slope + model.alpha()).abs() < 0.05, "p = {p}: slope {slope}");
    }
}

#[test]
fn urn_bins_follow_yule() {
    // p̄ = 1/4 ⇒ α = 1 + 1/(1 − p̄) = 7/3.
    let params = UrnParams::new(1.0, 0.25).unwrap().with_steps(100_000).with_seed(7);
    let fit = fit_histogram(&bin_fractions(&run_urn(&params)), false, Estimator::YuleMle).unwrap();
    assert!((fit.alpha_hat - 7.0 / 3.0).abs() < 0.1, "{}", fit.alpha_hat);
}
