//! Expected value and variance of any registered metric over an ensemble of
//! arrangements of a tree, or of trees of a given kind, computed exactly by
//! enumeration or estimated by Monte Carlo sampling.
//!
//! Metric names are those of [`crate::io::features`]. Monte Carlo samples are
//! drawn in fixed-size chunks; chunk `i` uses a ChaCha8 stream seeded with
//! the user seed and stream number `i`, and chunk statistics are merged in
//! chunk order, so a result depends only on the seed and the sample count,
//! never on the number of worker threads.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::generate::{
    count_trees, exhaustive_arrangements, exhaustive_trees, num_planar_arrangements,
    num_projective_arrangements, random_arrangement, random_tree, AnyTree, Constraint,
    GeneratedTree, TreeKind,
};
use crate::graphs::{Arrangement, Tree};
use crate::io::features::{lookup, Feature, FeatureInput, FeatureValue};
use crate::MetricError;

/// Largest arrangement ensemble enumerated in exact mode by default.
pub const DEFAULT_ARRANGEMENT_BOUND: u64 = 10_000_000;
/// Largest tree ensemble enumerated in exact mode by default.
pub const DEFAULT_TREE_BOUND: u64 = 1_000_000;
/// Samples drawn per Monte Carlo chunk.
pub const CHUNK: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimationMode {
    /// Enumerate the whole ensemble if it has at most `bound` members.
    Exact {
        bound: u64,
    },
    MonteCarlo {
        samples: u64,
        seed: u64,
    },
}

impl EstimationMode {
    pub fn exact_arrangements() -> Self {
        EstimationMode::Exact {
            bound: DEFAULT_ARRANGEMENT_BOUND,
        }
    }

    pub fn exact_trees() -> Self {
        EstimationMode::Exact {
            bound: DEFAULT_TREE_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Moment {
    Exact(BigRational),
    Approximate(f64),
}

impl Moment {
    pub fn to_f64(&self) -> f64 {
        match self {
            Moment::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Moment::Approximate(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Moment::Exact(r) => Some(r),
            Moment::Approximate(_) => None,
        }
    }
}

impl std::fmt::Display for Moment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Moment::Exact(r) => write!(f, "{r}"),
            Moment::Approximate(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimationResult {
    pub mode: EstimationMode,
    pub mean: Moment,
    /// Population variance in exact mode, sample variance otherwise.
    pub variance: Moment,
    /// `sqrt(variance / samples)`, Monte Carlo only.
    pub std_error: Option<f64>,
    /// Ensemble size in exact mode.
    pub samples: u64,
}

fn find_metric(name: &str) -> Result<&'static Feature, MetricError> {
    lookup(name).ok_or_else(|| MetricError::UnknownMetric(name.to_string()))
}

fn check_bound(size: BigUint, bound: u64) -> Result<(), MetricError> {
    if size > BigUint::from(bound) {
        return Err(MetricError::EnsembleTooLarge {
            size: size.to_string(),
            bound,
        });
    }
    Ok(())
}

/// Mean and variance of `metric` over the arrangements of `t` satisfying
/// `constraint`.
pub fn estimate_over_arrangements<'a>(
    t: impl Into<AnyTree<'a>>,
    metric: &str,
    constraint: Constraint,
    mode: EstimationMode,
) -> Result<EstimationResult, MetricError> {
    let t = t.into();
    let f = find_metric(metric)?;
    if !f.order_dependent {
        return Err(MetricError::OrderIndependent(metric.to_string()));
    }
    let rooted = match t {
        AnyTree::Rooted(r) => Some(r),
        AnyTree::Free(_) => None,
    };
    if f.needs_root && rooted.is_none() {
        return Err(MetricError::KindMismatch(metric.to_string()));
    }
    let tree = t.free();
    let eval = |a: &Arrangement| {
        f.evaluate(&FeatureInput {
            tree,
            rooted,
            arrangement: Some(a),
        })
    };
    match mode {
        EstimationMode::Exact { bound } => {
            let n = tree.num_vertices();
            let size = match constraint {
                Constraint::Unconstrained => (1..=n).map(BigUint::from).product(),
                Constraint::Planar => num_planar_arrangements(tree),
                Constraint::Projective => match rooted {
                    Some(r) => num_projective_arrangements(r),
                    None => return Err(MetricError::KindMismatch("projective".to_string())),
                },
            };
            check_bound(size, bound)?;
            let stream = exhaustive_arrangements(t, constraint, usize::MAX)?;
            let mut histogram = HashMap::new();
            for a in stream {
                *histogram.entry(eval(&a)?).or_insert(0u64) += 1;
            }
            Ok(exact_result(mode, &histogram))
        }
        EstimationMode::MonteCarlo { samples, seed } => monte_carlo(mode, samples, seed, |rng| {
            eval(&random_arrangement(t, constraint, rng)?)
        }),
    }
}

/// Mean and variance of a word-order independent `metric` over the trees of
/// `kind` on `n` vertices.
pub fn estimate_over_trees(
    kind: TreeKind,
    n: usize,
    metric: &str,
    mode: EstimationMode,
) -> Result<EstimationResult, MetricError> {
    let f = find_metric(metric)?;
    if f.order_dependent {
        return Err(MetricError::OrderDependent(metric.to_string()));
    }
    if f.needs_root && !kind.is_rooted() {
        return Err(MetricError::KindMismatch(metric.to_string()));
    }
    let eval = |t: &GeneratedTree| {
        f.evaluate(&FeatureInput {
            tree: t.as_free(),
            rooted: t.as_rooted(),
            arrangement: None,
        })
    };
    match mode {
        EstimationMode::Exact { bound } => {
            check_bound(count_trees(kind, n), bound)?;
            let mut histogram = HashMap::new();
            for t in exhaustive_trees(kind, n) {
                *histogram.entry(eval(&t)?).or_insert(0u64) += 1;
            }
            Ok(exact_result(mode, &histogram))
        }
        EstimationMode::MonteCarlo { samples, seed } => {
            monte_carlo(mode, samples, seed, |rng| eval(&random_tree(kind, n, rng)))
        }
    }
}

fn exact_result(mode: EstimationMode, histogram: &HashMap<FeatureValue, u64>) -> EstimationResult {
    let total: u64 = histogram.values().sum();
    let count = |c: u64| BigRational::from_integer(BigInt::from(c));
    let mut sum = BigRational::zero();
    let mut sum_sq = BigRational::zero();
    for (v, &c) in histogram {
        let x = v.to_big_rational();
        sum_sq += &x * &x * count(c);
        sum += x * count(c);
    }
    let n = count(total.max(1));
    let mean = &sum / &n;
    let variance = sum_sq / &n - &mean * &mean;
    EstimationResult {
        mode,
        mean: Moment::Exact(mean),
        variance: Moment::Exact(variance),
        std_error: None,
        samples: total,
    }
}

/// Running count, mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Welford) -> Welford {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        Welford {
            n,
            mean: self.mean + delta * other.n as f64 / n as f64,
            m2: self.m2 + other.m2 + delta * delta * (self.n as f64 * other.n as f64) / n as f64,
        }
    }
}

fn monte_carlo(
    mode: EstimationMode,
    samples: u64,
    seed: u64,
    draw: impl Fn(&mut ChaCha8Rng) -> Result<FeatureValue, MetricError> + Sync,
) -> Result<EstimationResult, MetricError> {
    if samples == 0 {
        return Err(MetricError::NoSamples);
    }
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<Result<Welford, MetricError>> = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let mut w = Welford::default();
            for _ in 0..CHUNK.min(samples - i * CHUNK) {
                w.push(draw(&mut rng)?.to_f64());
            }
            Ok(w)
        })
        .collect();
    let mut total = Welford::default();
    for w in partial {
        total = total.merge(w?);
    }
    let variance = if total.n > 1 {
        total.m2 / (total.n - 1) as f64
    } else {
        0.0
    };
    Ok(EstimationResult {
        mode,
        mean: Moment::Approximate(total.mean),
        variance: Moment::Approximate(variance),
        std_error: Some((variance / total.n as f64).sqrt()),
        samples: total.n,
    })
}
