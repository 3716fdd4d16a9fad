//! Parameter sets for the RG model and the Polya urn.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the retweet-graph process.
///
/// `lambda` is the new-topic intensity, `p` the probability that a retweet
/// comes from a new user and `q` the superstar probability inside a message
/// tree. Every arrival law is derived from these three numbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub lambda: f64,
    pub p: f64,
    pub q: f64,
    pub steps: u64,
    pub seed: u64,
}

impl ModelParams {
    pub fn new(lambda: f64, p: f64, q: f64) -> Result<Self> {
        let params = ModelParams {
            lambda,
            p,
            q,
            steps: 0,
            seed: 0,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_steps(mut self, steps: u64) -> Self {
        self.steps = steps;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(Error::param("lambda", format!("must be a positive finite number, got {}", self.lambda)));
        }
        check_unit("p", self.p)?;
        check_unit("q", self.q)
    }

    /// Probabilities of (T1, T2, T3): `λ/(λ+1)`, `p/(λ+1)`, `(1-p)/(λ+1)`.
    pub fn arrival_probabilities(&self) -> [f64; 3] {
        let denom = self.lambda + 1.0;
        [self.lambda / denom, self.p / denom, (1.0 - self.p) / denom]
    }

    /// New-bin probability of the urn this model maps onto when `p = 1`.
    pub fn equivalent_p_bar(&self) -> f64 {
        self.lambda / (self.lambda + 1.0)
    }
}

/// Parameters of the generalized Polya process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UrnParams {
    pub gamma: f64,
    pub p_bar: f64,
    pub steps: u64,
    pub seed: u64,
}

impl UrnParams {
    pub fn new(gamma: f64, p_bar: f64) -> Result<Self> {
        let params = UrnParams {
            gamma,
            p_bar,
            steps: 0,
            seed: 0,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_steps(mut self, steps: u64) -> Self {
        self.steps = steps;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.gamma.is_finite() {
            return Err(Error::param("gamma", "must be finite"));
        }
        check_unit("p_bar", self.p_bar)
    }
}

fn check_unit(name: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::param(name, format!("must lie in [0, 1], got {x}")))
    }
}
