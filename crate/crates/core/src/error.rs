use thiserror::Error;

/// Errors raised by metrics, solvers, generators and estimators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("arrangement has {arrangement} positions but the tree has {tree} vertices")]
    SizeMismatch { tree: usize, arrangement: usize },
    #[error("metric undefined on a tree without edges")]
    NoEdges,
    #[error("metric needs at least {min} vertices, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("exhaustive search limited to n <= {bound}, got n = {n}")]
    SizeLimitExceeded { n: usize, bound: usize },
    #[error("ensemble of {size} items exceeds the exact-mode bound {bound}")]
    EnsembleTooLarge { size: String, bound: u64 },
    #[error("Monte Carlo estimation needs at least one sample")]
    NoSamples,
    #[error("unknown metric {0:?}")]
    UnknownMetric(String),
    #[error("{0:?} needs a rooted tree")]
    KindMismatch(String),
    #[error("metric {0:?} depends on the arrangement")]
    OrderDependent(String),
    #[error("metric {0:?} does not depend on the arrangement")]
    OrderIndependent(String),
}
