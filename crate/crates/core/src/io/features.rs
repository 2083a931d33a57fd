//! Registry of named per-sentence features, shared by treebank processing
//! and baseline estimation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::graphs::{Arrangement, FreeTree, RootedTree, Tree};
use crate::linarr::{
    self, classify_arrangement, flux, min_sum_edge_lengths_planar, min_sum_edge_lengths_projective,
    min_sum_edge_lengths_unconstrained, num_crossings, CrossingAlgorithm, DminPlanar,
    DminProjective, DminUnconstrained,
};
use crate::properties::{self, DegreeKind};
use crate::{MetricError, Rational};

/// Value of a feature on one sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeatureValue {
    Int(u64),
    Ratio(Rational),
    Bool(bool),
}

impl FeatureValue {
    pub fn to_big_rational(self) -> BigRational {
        match self {
            FeatureValue::Int(x) => BigRational::from_integer(BigInt::from(x)),
            FeatureValue::Ratio(r) => {
                BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
            }
            FeatureValue::Bool(b) => BigRational::from_integer(BigInt::from(b as u8)),
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            FeatureValue::Int(x) => x as f64,
            FeatureValue::Ratio(r) => *r.numer() as f64 / *r.denom() as f64,
            FeatureValue::Bool(b) => b as u8 as f64,
        }
    }
}

impl fmt::Display for FeatureValue {
    /// Integers as integers, booleans as `0`/`1`, ratios as exact `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureValue::Int(x) => write!(f, "{x}"),
            FeatureValue::Ratio(r) => write!(f, "{r}"),
            FeatureValue::Bool(b) => write!(f, "{}", *b as u8),
        }
    }
}

/// What a feature is evaluated on. `rooted` is absent for free trees and
/// `arrangement` is absent when only structure is known.
#[derive(Debug, Clone, Copy)]
pub struct FeatureInput<'a> {
    pub tree: &'a FreeTree,
    pub rooted: Option<&'a RootedTree>,
    pub arrangement: Option<&'a Arrangement>,
}

impl<'a> FeatureInput<'a> {
    /// A sentence: the rooted tree in its own word order.
    pub fn sentence(t: &'a RootedTree, a: &'a Arrangement) -> Self {
        FeatureInput {
            tree: t.as_free(),
            rooted: Some(t),
            arrangement: Some(a),
        }
    }
}

type Eval = fn(&Feature, &FeatureInput) -> Result<FeatureValue, MetricError>;

/// A registered feature.
pub struct Feature {
    pub name: &'static str,
    pub description: &'static str,
    /// Depends on the arrangement, not only on the tree.
    pub order_dependent: bool,
    pub needs_root: bool,
    /// Part of the default feature set.
    pub default: bool,
    eval: Eval,
}

impl fmt::Debug for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Feature").field("name", &self.name).finish()
    }
}

impl PartialEq for Feature {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Feature {
    /// Evaluates the feature; missing inputs are reported as errors.
    pub fn evaluate(&self, input: &FeatureInput) -> Result<FeatureValue, MetricError> {
        if self.needs_root && input.rooted.is_none() {
            return Err(MetricError::KindMismatch(self.name.to_string()));
        }
        if self.order_dependent && input.arrangement.is_none() {
            return Err(MetricError::OrderDependent(self.name.to_string()));
        }
        (self.eval)(self, input)
    }
}

fn rooted<'a>(input: &FeatureInput<'a>) -> &'a RootedTree {
    input.rooted.expect("checked by Feature::evaluate")
}

fn arr<'a>(input: &FeatureInput<'a>) -> &'a Arrangement {
    input.arrangement.expect("checked by Feature::evaluate")
}

fn int(x: impl TryInto<u64>) -> FeatureValue {
    FeatureValue::Int(x.try_into().ok().expect("non-negative count"))
}

fn needs_edges(t: &FreeTree) -> Result<(), MetricError> {
    if t.num_edges() == 0 {
        return Err(MetricError::NoEdges);
    }
    Ok(())
}

macro_rules! feature {
    ($name:expr, $desc:expr, order = $order:expr, root = $root:expr, default = $default:expr, $eval:expr) => {
        Feature {
            name: $name,
            description: $desc,
            order_dependent: $order,
            needs_root: $root,
            default: $default,
            eval: $eval,
        }
    };
}

/// Every registered feature, in canonical column order.
pub static FEATURES: &[Feature] = &[
    feature!(
        "n",
        "number of vertices",
        order = false,
        root = false,
        default = true,
        |_, i| Ok(int(i.tree.num_vertices()))
    ),
    feature!(
        "D",
        "sum of edge lengths",
        order = true,
        root = false,
        default = true,
        |_, i| linarr::sum_edge_lengths(i.tree, arr(i)).map(int)
    ),
    feature!(
        "C",
        "number of edge crossings",
        order = true,
        root = false,
        default = true,
        |_, i| num_crossings(i.tree, arr(i), CrossingAlgorithm::Sweep).map(int)
    ),
    feature!(
        "Q",
        "pairs of independent edges",
        order = false,
        root = false,
        default = true,
        |_, i| Ok(int(properties::num_independent_edge_pairs(i.tree)))
    ),
    feature!(
        "D_min_unconstrained",
        "minimum sum of edge lengths, unconstrained",
        order = false,
        root = false,
        default = false,
        |_, i| min_sum_edge_lengths_unconstrained(i.tree, DminUnconstrained::Chung2)
            .map(|r| int(r.value))
    ),
    feature!(
        "D_min_planar",
        "minimum sum of edge lengths over planar arrangements",
        order = false,
        root = false,
        default = true,
        |_, i| min_sum_edge_lengths_planar(i.tree, DminPlanar::HsAlemany).map(|r| int(r.value))
    ),
    feature!(
        "D_min_projective",
        "minimum sum of edge lengths over projective arrangements",
        order = false,
        root = true,
        default = true,
        |_, i| min_sum_edge_lengths_projective(rooted(i), DminProjective::GtAlemany)
            .map(|r| int(r.value))
    ),
    feature!(
        "ED_unconstrained",
        "expected sum of edge lengths, uniform arrangements",
        order = false,
        root = false,
        default = true,
        |_, i| properties::expected_sum_edge_lengths(i.tree).map(FeatureValue::Ratio)
    ),
    feature!(
        "EC_unconstrained",
        "expected number of crossings, uniform arrangements",
        order = false,
        root = false,
        default = true,
        |_, i| properties::expected_num_crossings(i.tree).map(FeatureValue::Ratio)
    ),
    feature!(
        "head_initial_ratio",
        "share of edges whose head precedes the dependent",
        order = true,
        root = true,
        default = true,
        |_, i| linarr::head_initial_ratio(rooted(i), arr(i)).map(FeatureValue::Ratio)
    ),
    feature!(
        "projective",
        "arrangement is projective",
        order = true,
        root = true,
        default = true,
        |_, i| classify_arrangement(rooted(i), arr(i)).map(|f| FeatureValue::Bool(f.projective))
    ),
    feature!(
        "planar",
        "arrangement has no crossings",
        order = true,
        root = false,
        default = true,
        |_, i| num_crossings(i.tree, arr(i), CrossingAlgorithm::Sweep)
            .map(|c| FeatureValue::Bool(c == 0))
    ),
    feature!(
        "one_endpoint_crossing",
        "arrangement is 1-endpoint-crossing",
        order = true,
        root = true,
        default = true,
        |_, i| classify_arrangement(rooted(i), arr(i))
            .map(|f| FeatureValue::Bool(f.one_endpoint_crossing))
    ),
    feature!(
        "MHD",
        "mean hierarchical distance",
        order = false,
        root = true,
        default = true,
        |_, i| properties::mean_hierarchical_distance(rooted(i)).map(FeatureValue::Ratio)
    ),
    feature!(
        "k2",
        "second moment of degree",
        order = false,
        root = false,
        default = true,
        |_, i| Ok(FeatureValue::Ratio(properties::degree_moment(i.tree, 2)))
    ),
    feature!(
        "k3",
        "third moment of degree",
        order = false,
        root = false,
        default = true,
        |_, i| Ok(FeatureValue::Ratio(properties::degree_moment(i.tree, 3)))
    ),
    feature!(
        "k2_out",
        "second moment of out-degree",
        order = false,
        root = true,
        default = true,
        |_, i| Ok(FeatureValue::Ratio(properties::degree_moment_rooted(
            rooted(i),
            2,
            DegreeKind::Out
        )))
    ),
    feature!(
        "hubiness",
        "normalized second moment of degree",
        order = false,
        root = false,
        default = true,
        |_, i| properties::hubiness(i.tree).map(FeatureValue::Ratio)
    ),
    feature!(
        "flux_max_size",
        "largest flux size over gaps",
        order = true,
        root = false,
        default = true,
        |_, i| {
            needs_edges(i.tree)?;
            flux(i.tree, arr(i)).map(|f| int(f.max_size()))
        }
    ),
    feature!(
        "flux_max_weight",
        "largest flux weight over gaps",
        order = true,
        root = false,
        default = true,
        |_, i| {
            needs_edges(i.tree)?;
            flux(i.tree, arr(i)).map(|f| int(f.max_weight()))
        }
    ),
    feature!(
        "flux_mean_size",
        "mean flux size over gaps",
        order = true,
        root = false,
        default = true,
        |_, i| {
            needs_edges(i.tree)?;
            flux(i.tree, arr(i)).map(|f| FeatureValue::Ratio(f.mean_size()))
        }
    ),
    feature!(
        "flux_mean_weight",
        "mean flux weight over gaps",
        order = true,
        root = false,
        default = true,
        |_, i| {
            needs_edges(i.tree)?;
            flux(i.tree, arr(i)).map(|f| FeatureValue::Ratio(f.mean_weight()))
        }
    ),
    feature!(
        "centre_size",
        "number of centre vertices",
        order = false,
        root = false,
        default = true,
        |_, i| Ok(int(properties::centre(i.tree).vertices.len()))
    ),
    feature!(
        "centroid_size",
        "number of centroidal vertices",
        order = false,
        root = false,
        default = true,
        |_, i| Ok(int(properties::centroid(i.tree).vertices.len()))
    ),
    feature!(
        "linear",
        "tree is a path",
        order = false,
        root = false,
        default = true,
        |_, i| Ok(FeatureValue::Bool(properties::tree_shape(i.tree).linear))
    ),
    feature!(
        "star",
        "tree is a star",
        order = false,
        root = false,
        default = true,
        |_, i| Ok(FeatureValue::Bool(properties::tree_shape(i.tree).star))
    ),
    feature!(
        "quasistar",
        "tree is a quasistar",
        order = false,
        root = false,
        default = true,
        |_, i| Ok(FeatureValue::Bool(properties::tree_shape(i.tree).quasistar))
    ),
    feature!(
        "bistar",
        "tree is a bistar",
        order = false,
        root = false,
        default = true,
        |_, i| Ok(FeatureValue::Bool(properties::tree_shape(i.tree).bistar))
    ),
    feature!(
        "caterpillar",
        "tree is a caterpillar",
        order = false,
        root = false,
        default = true,
        |_, i| Ok(FeatureValue::Bool(
            properties::tree_shape(i.tree).caterpillar
        ))
    ),
    feature!(
        "spider",
        "tree is a spider",
        order = false,
        root = false,
        default = true,
        |_, i| Ok(FeatureValue::Bool(properties::tree_shape(i.tree).spider))
    ),
];

pub fn lookup(name: &str) -> Option<&'static Feature> {
    FEATURES.iter().find(|f| f.name == name)
}

pub fn feature_names() -> impl Iterator<Item = &'static str> {
    FEATURES.iter().map(|f| f.name)
}

/// An ordered, duplicate-free list of registered features.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSpec {
    features: Vec<&'static Feature>,
}

impl FeatureSpec {
    /// Every default feature, in registry order.
    pub fn default_set() -> Self {
        FeatureSpec {
            features: FEATURES.iter().filter(|f| f.default).collect(),
        }
    }

    pub fn all() -> Self {
        FeatureSpec {
            features: FEATURES.iter().collect(),
        }
    }

    /// Fails on the first unknown name, or on an empty list or a repeat.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self, FeatureSpecError> {
        if names.is_empty() {
            return Err(FeatureSpecError::Empty);
        }
        let mut features: Vec<&'static Feature> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            let f = lookup(name).ok_or_else(|| FeatureSpecError::Unknown(name.to_string()))?;
            if features.contains(&f) {
                return Err(FeatureSpecError::Duplicate(name.to_string()));
            }
            features.push(f);
        }
        Ok(FeatureSpec { features })
    }

    pub fn features(&self) -> &[&'static Feature] {
        &self.features
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.features.iter().map(|f| f.name)
    }
}

impl std::str::FromStr for FeatureSpec {
    type Err = FeatureSpecError;

    /// Comma-separated feature names.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let names: Vec<&str> = s
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .collect();
        FeatureSpec::from_names(&names)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FeatureSpecError {
    #[error("unknown feature {0:?}")]
    Unknown(String),
    #[error("feature {0:?} listed twice")]
    Duplicate(String),
    #[error("no features requested")]
    Empty,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::HeadVector;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = feature_names().collect();
        let total = names.len();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), total);
    }

    #[test]
    fn expensive_minimum_is_opt_in() {
        let d = FeatureSpec::default_set();
        assert!(!d.names().any(|n| n == "D_min_unconstrained"));
        assert!(FeatureSpec::all()
            .names()
            .any(|n| n == "D_min_unconstrained"));
    }

    #[test]
    fn spec_parsing() {
        let s: FeatureSpec = "n, D,C".parse().unwrap();
        assert_eq!(s.names().collect::<Vec<_>>(), ["n", "D", "C"]);
        assert_eq!(
            "n,bogus".parse::<FeatureSpec>(),
            Err(FeatureSpecError::Unknown("bogus".into()))
        );
        assert_eq!(
            "D,D".parse::<FeatureSpec>(),
            Err(FeatureSpecError::Duplicate("D".into()))
        );
        assert_eq!("".parse::<FeatureSpec>(), Err(FeatureSpecError::Empty));
    }

    #[test]
    fn crossed_sentence_values() {
        let t = "2 3 0 3 2 7 5 4 3".parse::<HeadVector>().unwrap().to_tree();
        let a = Arrangement::identity(9);
        let input = FeatureInput::sentence(&t, &a);
        let get = |name| lookup(name).unwrap().evaluate(&input).unwrap();
        assert_eq!(get("D"), FeatureValue::Int(19));
        assert_eq!(get("C"), FeatureValue::Int(2));
        assert_eq!(
            get("head_initial_ratio"),
            FeatureValue::Ratio(Rational::new(5, 8))
        );
        assert_eq!(get("planar"), FeatureValue::Bool(false));
    }

    #[test]
    fn missing_inputs() {
        let t = FreeTree::path(3);
        let input = FeatureInput {
            tree: &t,
            rooted: None,
            arrangement: None,
        };
        assert!(matches!(
            lookup("MHD").unwrap().evaluate(&input),
            Err(MetricError::KindMismatch(_))
        ));
        assert!(matches!(
            lookup("D").unwrap().evaluate(&input),
            Err(MetricError::OrderDependent(_))
        ));
        assert_eq!(
            lookup("n").unwrap().evaluate(&input),
            Ok(FeatureValue::Int(3))
        );
    }
}
