//! Exact enumeration of the RG process and the Polya urn over every sample
//! path of a short horizon, in rational arithmetic.
//!
//! The RG state cannot be just the component-size multiset once `p < 1`:
//! tree sizes drive both the tree choice and the chance that a T3 retweeter
//! is already in the tree, and which component each tree sits in decides
//! whether a T3 arrival merges. The enumeration therefore tracks, per
//! component, its size and the sizes of the trees rooted in it. The position
//! of the source inside its tree never changes those quantities and is
//! summed out.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Longest horizon the enumerators accept.
pub const ENUMERATION_LIMIT: u64 = 6;

/// Exact law over size multisets (sorted largest first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDistribution {
    support: BTreeMap<Vec<u64>, BigRational>,
    horizon: u64,
}

impl ExactDistribution {
    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn probability(&self, sizes: &[u64]) -> BigRational {
        self.support.get(sizes).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn probability_f64(&self, sizes: &[u64]) -> f64 {
        self.probability(sizes).to_f64().unwrap_or(f64::NAN)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u64>, &BigRational)> {
        self.support.iter()
    }

    pub fn total(&self) -> BigRational {
        self.support.values().fold(BigRational::zero(), |acc, p| acc + p)
    }

    /// `½ Σ |P(s) − Q(s)|`, exactly.
    pub fn total_variation_exact(&self, other: &Self) -> BigRational {
        let mut acc = BigRational::zero();
        for (s, p) in &self.support {
            acc += (p - other.probability(s)).abs();
        }
        for (s, q) in &other.support {
            if !self.support.contains_key(s) {
                acc += q.clone();
            }
        }
        acc / BigRational::from_integer(BigInt::from(2))
    }

    pub fn total_variation(&self, other: &Self) -> f64 {
        self.total_variation_exact(other).to_f64().unwrap_or(f64::NAN)
    }
}

/// RG parameters as exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactParams {
    pub lambda: BigRational,
    pub p: BigRational,
}

impl ExactParams {
    pub fn new(lambda: BigRational, p: BigRational) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::param("lambda", "must be positive"));
        }
        if p.is_negative() || p > BigRational::one() {
            return Err(Error::param("p", "must lie in [0, 1]"));
        }
        Ok(ExactParams { lambda, p })
    }

    /// Exact binary value of the floating-point parameters.
    pub fn from_model(params: &ModelParams) -> Result<Self> {
        params.validate()?;
        Self::new(ratio_from_f64(params.lambda)?, ratio_from_f64(params.p)?)
    }

    pub fn p_bar(&self) -> BigRational {
        &self.lambda / (&self.lambda + BigRational::one())
    }
}

pub fn ratio_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")))
}

/// Parses `"1/3"`, `"0.3333333"` or `"2"` into an exact rational.
pub fn parse_ratio(text: &str) -> Result<BigRational> {
    let bad = || Error::Domain(format!("cannot read `{text}` as a rational"));
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let r = BigRational::new(digits, scale);
    Ok(if neg { -r } else { r })
}

fn check_horizon(t: u64) -> Result<()> {
    if t > ENUMERATION_LIMIT {
        Err(Error::HorizonTooLarge {
            horizon: t,
            limit: ENUMERATION_LIMIT,
        })
    } else {
        Ok(())
    }
}

fn rational(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Component {
    size: u64,
    // Sizes of the message trees rooted here, largest first.
    trees: Vec<u64>,
}

impl Component {
    fn singleton() -> Self {
        Component { size: 1, trees: vec![1] }
    }

    fn normalize(&mut self) {
        self.trees.sort_unstable_by(|a, b| b.cmp(a));
    }
}

type RgState = Vec<Component>;

fn canonical(mut state: RgState) -> RgState {
    for c in &mut state {
        c.normalize();
    }
    state.sort_unstable_by(|a, b| b.cmp(a));
    state
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, BigRational>, key: K, p: BigRational) {
    if p.is_zero() {
        return;
    }
    let slot = map.entry(key).or_insert_with(BigRational::zero);
    *slot += p;
}

/// Exact law of the RG component-size multiset after `t` steps.
pub fn enumerate_rg(params: &ExactParams, t: u64) -> Result<ExactDistribution> {
    check_horizon(t)?;
    let one = BigRational::one();
    let denom = &params.lambda + &one;
    let p_t1 = &params.lambda / &denom;
    let p_t2 = &params.p / &denom;
    let p_t3 = (&one - &params.p) / &denom;
    // Single node: T3 is infeasible and the law is renormalized over {T1, T2}.
    let lp = &params.lambda + &params.p;
    let p_t1_single = &params.lambda / &lp;
    let p_t2_single = &params.p / &lp;

    let mut frontier: BTreeMap<RgState, BigRational> = BTreeMap::new();
    frontier.insert(vec![Component::singleton()], one.clone());

    for _ in 0..t {
        let mut next = BTreeMap::new();
        for (state, mass) in frontier {
            let n: u64 = state.iter().map(|c| c.size).sum();
            let (w1, w2, w3) = if n < 2 {
                (p_t1_single.clone(), p_t2_single.clone(), BigRational::zero())
            } else {
                (p_t1.clone(), p_t2.clone(), p_t3.clone())
            };
            let tree_total: u64 = state.iter().flat_map(|c| c.trees.iter()).sum();
            let tree_total = rational(tree_total);

            // T1
            let mut s = state.clone();
            s.push(Component::singleton());
            accumulate(&mut next, canonical(s), &mass * &w1);

            for (ci, comp) in state.iter().enumerate() {
                for (ti, &h) in comp.trees.iter().enumerate() {
                    let pick = rational(h) / &tree_total;

                    // T2: the new node joins the tree and its component.
                    if !w2.is_zero() {
                        let mut s = state.clone();
                        s[ci].size += 1;
                        s[ci].trees[ti] += 1;
                        accumulate(&mut next, canonical(s), &mass * &w2 * &pick);
                    }

                    if w3.is_zero() {
                        continue;
                    }
                    let base = &mass * &w3 * &pick;
                    let others = rational(n - 1);
                    // Target already in the tree (other than the source).
                    accumulate(&mut next, canonical(state.clone()), &base * rational(h - 1) / &others);
                    // Target in the same component but outside the tree.
                    let mut s = state.clone();
                    s[ci].trees[ti] += 1;
                    accumulate(&mut next, canonical(s), &base * rational(comp.size - h) / &others);
                    // Target in another component: merge.
                    for (di, other) in state.iter().enumerate() {
                        if di == ci {
                            continue;
                        }
                        let mut s = state.clone();
                        let absorbed = s[di].clone();
                        s[ci].size += absorbed.size;
                        s[ci].trees[ti] += 1;
                        s[ci].trees.extend(absorbed.trees);
                        s.remove(di);
                        accumulate(&mut next, canonical(s), &base * rational(other.size) / &others);
                    }
                }
            }
        }
        frontier = next;
    }

    let mut support = BTreeMap::new();
    for (state, mass) in frontier {
        let sizes: Vec<u64> = state.iter().map(|c| c.size).collect();
        accumulate(&mut support, sorted_desc(sizes), mass);
    }
    Ok(ExactDistribution { support, horizon: t })
}

fn sorted_desc(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Exact law of the urn's bin-size multiset after `t` balls (γ = 1).
pub fn enumerate_urn(p_bar: &BigRational, t: u64) -> Result<ExactDistribution> {
    check_horizon(t)?;
    if p_bar.is_negative() || *p_bar > BigRational::one() {
        return Err(Error::param("p_bar", "must lie in [0, 1]"));
    }
    let stay = BigRational::one() - p_bar;
    let mut frontier: BTreeMap<Vec<u64>, BigRational> = BTreeMap::new();
    frontier.insert(vec![1], BigRational::one());
    for _ in 0..t {
        let mut next = BTreeMap::new();
        for (bins, mass) in frontier {
            let total = rational(bins.iter().sum());
            let mut s = bins.clone();
            s.push(1);
            accumulate(&mut next, sorted_desc(s), &mass * p_bar);
            for (i, &x) in bins.iter().enumerate() {
                let mut s = bins.clone();
                s[i] += 1;
                accumulate(&mut next, sorted_desc(s), &mass * &stay * rational(x) / &total);
            }
        }
        frontier = next;
    }
    Ok(ExactDistribution {
        support: frontier,
        horizon: t,
    })
}

/// TV distance between the RG law at `p = 1` and the urn with
/// `p̄ = λ/(λ+1)`. Zero when the two processes coincide.
pub fn check_equivalence(lambda: &BigRational, t: u64) -> Result<f64> {
    let params = ExactParams::new(lambda.clone(), BigRational::one())?;
    let rg = enumerate_rg(&params, t)?;
    let urn = enumerate_urn(&params.p_bar(), t)?;
    Ok(rg.total_variation(&urn))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rg(lambda: BigRational, p: BigRational, t: u64) -> ExactDistribution {
        enumerate_rg(&ExactParams::new(lambda, p).unwrap(), t).unwrap()
    }

    #[test]
    fn one_and_two_step_laws() {
        let d = rg(q(1, 3), q(1, 1), 1);
        assert_eq!(d.probability(&[1, 1]), q(1, 4));
        assert_eq!(d.probability(&[2]), q(3, 4));

        let d = rg(q(1, 3), q(1, 1), 2);
        assert_eq!(d.len(), 3);
        assert_eq!(d.probability(&[1, 1, 1]), q(1, 16));
        assert_eq!(d.probability(&[2, 1]), q(3, 8));
        assert_eq!(d.probability(&[3]), q(9, 16));

        let u = enumerate_urn(&q(1, 4), 1).unwrap();
        assert_eq!(u.probability(&[1, 1]), q(1, 4));
        assert_eq!(u.probability(&[2]), q(3, 4));
        let u = enumerate_urn(&q(1, 4), 0).unwrap();
        assert_eq!(u.probability(&[1]), q(1, 1));
        assert_eq!(u.len(), 1);
    }

    #[test]
    fn mass_is_conserved() {
        for t in 0..=4 {
            for (l, p) in [(q(1, 3), q(1, 2)), (q(2, 1), q(0, 1)), (q(1, 7), q(9, 10))] {
                assert_eq!(rg(l, p, t).total(), q(1, 1));
            }
            assert_eq!(enumerate_urn(&q(3, 5), t).unwrap().total(), q(1, 1));
        }
    }

    #[test]
    fn urn_matches_rg_at_p_one() {
        for t in 0..=5 {
            assert_eq!(check_equivalence(&q(1, 3), t).unwrap(), 0.0);
        }
        assert_eq!(check_equivalence(&q(1, 1), 3).unwrap(), 0.0);
    }

    #[test]
    fn merging_breaks_equivalence() {
        let d = rg(q(1, 3), q(1, 2), 3);
        let u = enumerate_urn(&q(1, 4), 3).unwrap();
        assert!(d.total_variation_exact(&u) > BigRational::zero());
    }

    #[test]
    fn refuses_long_horizons() {
        assert!(matches!(
            enumerate_urn(&q(1, 4), 7),
            Err(Error::HorizonTooLarge { horizon: 7, limit: 6 })
        ));
        assert!(check_equivalence(&q(1, 3), 7).is_err());
    }

    #[test]
    fn disjoint_supports_are_at_distance_one() {
        let a = enumerate_urn(&q(1, 1), 2).unwrap(); // always {1,1,1}
        let b = enumerate_urn(&q(0, 1), 2).unwrap(); // always {3}
        assert_eq!(a.total_variation(&b), 1.0);
        assert_eq!(a.total_variation(&a), 0.0);
    }

    #[test]
    fn p_zero_first_step_is_t1() {
        // With p = 0 the only feasible first arrival is T1.
        let d = rg(q(1, 2), q(0, 1), 1);
        assert_eq!(d.probability(&[1, 1]), q(1, 1));
    }

    #[test]
    fn ratio_parsing() {
        assert_eq!(parse_ratio("1/3").unwrap(), q(1, 3));
        assert_eq!(parse_ratio("0.3333333").unwrap(), q(3_333_333, 10_000_000));
        assert_eq!(parse_ratio("2").unwrap(), q(2, 1));
        assert_eq!(parse_ratio(".5").unwrap(), q(1, 2));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("abc").is_err());
        assert!(parse_ratio("1e3").is_err());
    }
}
