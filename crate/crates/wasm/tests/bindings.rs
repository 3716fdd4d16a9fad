use trendlab_wasm::{oracle_check, simulate_rg, simulate_urn, MAX_STEPS};

#[test]
fn rg_view_is_consistent() {
    let v = simulate_rg(1.0 / 3.0, 1.0, 0.9, 50_000, 3).unwrap();
    assert_eq!(v.sizes().len(), v.fractions().len());
    assert_eq!(v.sizes().len(), v.yule().len());
    assert!((v.fractions().iter().sum::<f64>() - 1.0).abs() < 1e-9);
    assert!((v.predicted() - 7.0 / 3.0).abs() < 1e-12);
    assert!((v.alpha_hat() - 7.0 / 3.0).abs() < 0.3, "{}", v.alpha_hat());
    assert!(v.sizes().windows(2).all(|w| w[0] < w[1]));

    let same = simulate_rg(1.0 / 3.0, 1.0, 0.9, 50_000, 3).unwrap();
    assert_eq!(v.fractions(), same.fractions());
}

#[test]
fn rg_below_one_drops_the_lcc() {
    let v = simulate_rg(1.0 / 3.0, 0.8, 0.9, 20_000, 1).unwrap();
    assert!(v.largest_fraction() > 0.3);
    let largest = *v.sizes().last().unwrap();
    assert!(largest < v.largest_fraction() * 20_000.0);
}

#[test]
fn urn_view() {
    let v = simulate_urn(0.25, 50_000, 4).unwrap();
    assert!((v.predicted() - 7.0 / 3.0).abs() < 1e-12);
    assert!((v.alpha_hat() - 7.0 / 3.0).abs() < 0.3);

    let ones = simulate_urn(1.0, 100, 4).unwrap();
    assert_eq!(ones.sizes(), [1.0]);
    assert_eq!(ones.count(), 101);
    assert!(ones.predicted().is_nan());
    assert!(ones.alpha_hat().is_nan());
    assert!(ones.yule().is_empty());
}

#[test]
fn invalid_input_is_an_error() {
    assert!(simulate_rg(0.0, 1.0, 0.9, 10, 0).is_err());
    assert!(simulate_rg(1.0, 1.0, 0.9, MAX_STEPS + 1, 0).is_err());
    assert!(simulate_urn(1.5, 10, 0).is_err());
    assert!(oracle_check("1/3", 7).is_err());
    assert!(oracle_check("abc", 3).is_err());
}

#[test]
fn oracle_report_is_exact_zero() {
    let report = oracle_check("1/3", 4).unwrap();
    let rows: Vec<&str> = report.lines().skip(2).collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert_eq!(row.split('\t').nth(2), Some("0"));
    }
    assert!(report.starts_with("lambda = 1/3, p_bar = 1/4"));
}
