//! Generalized Polya process.
//!
//! Start with one bin holding one ball. Each new ball opens a new bin with
//! probability `p̄`; otherwise it lands in an existing bin of size `m` with
//! probability proportional to `m^γ`. A retweet graph maps onto an urn state
//! by turning each connected component into a bin of the same size.

use std::collections::BTreeMap;

use rand::Rng;

use crate::histogram::SizeHistogram;
use crate::model::RetweetGraph;
use crate::params::UrnParams;
use crate::rng::{seeded, SimRng};
use crate::sampling::WeightIndex;

#[derive(Debug, Clone)]
enum BinIndex {
    // γ = 1: integer weights equal to bin sizes.
    Linear(WeightIndex<u64>),
    Power { gamma: f64, index: WeightIndex<f64> },
}

impl BinIndex {
    fn build(bins: &[u64], gamma: f64) -> Self {
        if gamma == 1.0 {
            BinIndex::Linear(WeightIndex::from_weights(bins.iter().copied()))
        } else {
            BinIndex::Power {
                gamma,
                index: WeightIndex::from_weights(bins.iter().map(|&m| (m as f64).powf(gamma))),
            }
        }
    }

    fn matches(&self, gamma: f64) -> bool {
        match self {
            BinIndex::Linear(_) => gamma == 1.0,
            BinIndex::Power { gamma: g, .. } => *g == gamma,
        }
    }
}

/// Bin sizes of the urn. Bin identity beyond size is not tracked: two states
/// compare equal when their size multisets agree.
#[derive(Debug, Clone)]
pub struct UrnState {
    bins: Vec<u64>,
    total_balls: u64,
    index: Option<BinIndex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UrnEvent {
    NewBin,
    /// Bin `bin` now holds `size` balls.
    Increment { bin: usize, size: u64 },
}

impl UrnState {
    /// One bin containing one ball.
    pub fn new() -> Self {
        UrnState {
            bins: vec![1],
            total_balls: 1,
            index: None,
        }
    }

    pub fn from_bins(bins: Vec<u64>) -> Self {
        assert!(bins.iter().all(|&b| b > 0), "bins must be nonempty");
        let total_balls = bins.iter().sum();
        UrnState {
            bins,
            total_balls,
            index: None,
        }
    }

    pub fn bins(&self) -> &[u64] {
        &self.bins
    }

    /// Bin sizes, largest first.
    pub fn sorted_bins(&self) -> Vec<u64> {
        let mut b = self.bins.clone();
        b.sort_unstable_by(|x, y| y.cmp(x));
        b
    }

    pub fn bin_count(&self) -> usize {
        self.bins.len()
    }

    pub fn total_balls(&self) -> u64 {
        self.total_balls
    }

    pub fn size_counts(&self) -> BTreeMap<u64, u64> {
        let mut counts = BTreeMap::new();
        for &b in &self.bins {
            *counts.entry(b).or_insert(0) += 1;
        }
        counts
    }

    pub fn step<R: Rng + ?Sized>(&mut self, params: &UrnParams, rng: &mut R) -> UrnEvent {
        if !self.index.as_ref().is_some_and(|ix| ix.matches(params.gamma)) {
            self.index = Some(BinIndex::build(&self.bins, params.gamma));
        }
        let index = self.index.as_mut().expect("index built above");
        self.total_balls += 1;

        if rng.gen_bool(params.p_bar) {
            self.bins.push(1);
            match index {
                BinIndex::Linear(ix) => {
                    ix.push(1);
                }
                BinIndex::Power { index, .. } => {
                    index.push(1.0);
                }
            }
            return UrnEvent::NewBin;
        }

        let bin = match index {
            BinIndex::Linear(ix) => {
                let k = ix.sample(rng);
                ix.add(k, 1);
                k
            }
            BinIndex::Power { gamma, index } => {
                let k = index.sample(rng);
                index.set(k, ((self.bins[k] + 1) as f64).powf(*gamma));
                k
            }
        };
        self.bins[bin] += 1;
        UrnEvent::Increment {
            bin,
            size: self.bins[bin],
        }
    }
}

impl Default for UrnState {
    fn default() -> Self {
        Self::new()
    }
}

impl PartialEq for UrnState {
    fn eq(&self, other: &Self) -> bool {
        self.total_balls == other.total_balls && self.sorted_bins() == other.sorted_bins()
    }
}

pub fn urn_init() -> UrnState {
    UrnState::new()
}

pub fn urn_step<R: Rng + ?Sized>(state: &mut UrnState, params: &UrnParams, rng: &mut R) -> UrnEvent {
    state.step(params, rng)
}

/// Runs `params.steps` balls from the initial state.
pub fn run_urn(params: &UrnParams) -> UrnState {
    let mut rng: SimRng = seeded(params.seed);
    let mut state = UrnState::new();
    for _ in 0..params.steps {
        state.step(params, &mut rng);
    }
    state
}

/// One bin per connected component, sized like the component.
pub fn map_graph_to_urn(graph: &RetweetGraph) -> UrnState {
    let mut bins = Vec::with_capacity(graph.component_count());
    for (&size, &count) in graph.component_size_counts().iter().rev() {
        bins.extend(std::iter::repeat_n(size, count as usize));
    }
    UrnState::from_bins(bins)
}

/// `f_i`: fraction of bins holding `i` balls.
pub fn bin_fractions(state: &UrnState) -> SizeHistogram {
    SizeHistogram::from_counts(state.size_counts()).expect("bin sizes are positive")
}
