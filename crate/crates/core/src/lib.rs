//! Simulation and analysis toolkit for the retweet-graph (RG) growth model.
//!
//! The model grows a directed graph of users one arrival at a time: a new
//! tweeter starts a message tree (T1), a new user retweets into an existing
//! tree (T2), or an existing user retweets (T3), possibly merging two
//! connected components. With no T3 arrivals the component sizes evolve
//! exactly like a generalized Polya urn with linear reinforcement, which is
//! what [`urn`] simulates and what [`oracle`] checks by exhaustive
//! enumeration. [`analysis`] holds the Yule/power-law predictions and the
//! exponent estimators used to validate long runs.

pub mod analysis;
pub mod error;
pub mod histogram;
pub mod model;
pub mod oracle;
pub mod params;
pub mod rng;
pub mod sampling;
pub mod special;
pub mod union_find;
pub mod urn;

pub use error::{Error, Result};
pub use histogram::SizeHistogram;
pub use model::{ArrivalEvent, ArrivalKind, MessageTree, NodeId, RetweetGraph, TreeId};
pub use params::{ModelParams, UrnParams};
pub use urn::UrnState;

/// Crate version, echoed into every output file header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
