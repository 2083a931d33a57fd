//! Quantitative dependency syntax on trees: word-order metrics, minimum and
//! expected baselines, tree and arrangement generation, isomorphism, and
//! treebank processing.

pub mod baselines;
pub mod conllu;
mod error;
pub mod generate;
pub mod graphs;
pub mod io;
pub mod linarr;
pub mod properties;
pub mod utilities;

pub use error::MetricError;
pub use graphs::{Arrangement, FreeTree, GraphError, HeadVector, RootedTree, Tree, Vertex};

/// Exact rational used for ratio-valued metrics.
pub type Rational = num_rational::Rational64;
