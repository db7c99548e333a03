//! First-return-time distributions of random walks on undirected sparse networks.
//!
//! The crate computes, for a node `i` of a connected graph, the distribution
//! `Y_i(t)` of the time at which a random walk started at `i` first revisits
//! `i`. It provides:
//!
//! - an exact oracle by sparse matrix iteration with an absorbing start node
//!   ([`exact`]);
//! - a heterogeneous mean-field approximation, a tree (cavity) message-passing
//!   approximation, and a combined approximation that restores recurrence and
//!   the Kac mean `2m/k_i` ([`approx`]);
//! - a cycle-aware refinement that replaces the tree recursion with walk sums
//!   over `r`-neighbourhoods, evaluated by linear solves over a truncated
//!   power-series ring ([`cycle`]);
//! - an ensemble (population dynamics) solver for the distribution of cavity
//!   messages under a degree law, used to predict tail-slope distributions
//!   without generating a graph ([`popdyn`]);
//! - exponential tail fitting utilities ([`tailfit`]) and graph generators for
//!   the experiment families we benchmark against ([`graph`]).
//!
//! All distribution machinery runs on truncated power series and on
//! value/derivative pairs at `z = 1` ([`series`]); both are plain `f64`
//! containers and every operation is deterministic given the RNG seed.
//!
//! With the default `parallel` feature, per-node and per-edge loops run on
//! rayon; disabling it yields a dependency-free sequential build with
//! identical outputs.

#![forbid(unsafe_code)]

pub mod approx;
pub mod cycle;
pub mod exact;
mod exec;
pub mod graph;
pub mod popdyn;
pub mod report;
pub mod series;
pub mod tailfit;

pub use graph::{DegreeLaw, Graph, GraphError};
pub use report::ReturnReport;
pub use series::{DualPair, PowerSeries, SeriesError};
