//! Constraint evaluators and the registry that resolves them by id.
//!
//! Built-in ids:
//!
//! | id                     | kind  | value                              |
//! |------------------------|-------|------------------------------------|
//! | `same-component`       | crisp | 1 iff all seeds share a weak component |
//! | `cardinality:<lo>:<hi>`| crisp | 1 iff `lo <= n <= hi`              |
//! | `require:<id,...>`     | crisp | 1 iff every listed node is a seed  |
//! | `forbid:<id,...>`      | crisp | 1 iff no listed node is a seed     |
//! | `fuzzy-small:<scale>`  | fuzzy | `max(0, 1 - (n-1)/scale)`          |

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::taint::SeedSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    /// Values are exactly 0 or 1.
    Crisp,
    /// Values lie in [0, 1].
    Fuzzy,
}

pub trait ConstraintEvaluator: Debug + Send + Sync {
    fn id(&self) -> &str;

    fn kind(&self) -> ConstraintKind;

    /// Checks that the evaluator can run against `g`.
    fn check(&self, _g: &Graph) -> Result<()> {
        Ok(())
    }

    fn evaluate(&self, g: &Graph, seeds: &SeedSet) -> Result<f64>;
}

pub type SharedConstraint = Arc<dyn ConstraintEvaluator>;

fn crisp(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// 1 iff every seed lies in the same weak component of `g`.
pub fn same_component(g: &Graph, seeds: &SeedSet) -> f64 {
    let parts = g.components();
    let mut it = seeds.nodes().iter().map(|&n| parts.component_of(n));
    let first = it.next();
    crisp(it.all(|c| Some(c) == first))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SameComponent;

impl ConstraintEvaluator for SameComponent {
    fn id(&self) -> &str {
        "same-component"
    }

    fn kind(&self) -> ConstraintKind {
        ConstraintKind::Crisp
    }

    fn evaluate(&self, g: &Graph, seeds: &SeedSet) -> Result<f64> {
        Ok(same_component(g, seeds))
    }
}

#[derive(Debug, Clone)]
pub struct CardinalityBetween {
    id: String,
    min: usize,
    max: usize,
}

pub fn cardinality_between(min: usize, max: usize) -> Result<CardinalityBetween> {
    if min < 1 || min > max {
        return Err(Error::InvalidConstraint {
            id: format!("cardinality:{min}:{max}"),
            reason: "bounds must satisfy 1 <= min <= max".to_string(),
        });
    }
    Ok(CardinalityBetween {
        id: format!("cardinality:{min}:{max}"),
        min,
        max,
    })
}

impl ConstraintEvaluator for CardinalityBetween {
    fn id(&self) -> &str {
        &self.id
    }

    fn kind(&self) -> ConstraintKind {
        ConstraintKind::Crisp
    }

    fn evaluate(&self, _g: &Graph, seeds: &SeedSet) -> Result<f64> {
        Ok(crisp((self.min..=self.max).contains(&seeds.len())))
    }
}

#[derive(Debug, Clone)]
pub struct NodeMembership {
    id: String,
    nodes: Vec<String>,
    forbid: bool,
}

/// 1 iff every node in `required` is a seed.
pub fn require_nodes<I, S>(required: I) -> NodeMembership
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    membership(required, false)
}

/// 1 iff no node in `forbidden` is a seed.
pub fn forbid_nodes<I, S>(forbidden: I) -> NodeMembership
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    membership(forbidden, true)
}

fn membership<I, S>(nodes: I, forbid: bool) -> NodeMembership
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let nodes: Vec<String> = nodes.into_iter().map(Into::into).collect();
    let prefix = if forbid { "forbid" } else { "require" };
    NodeMembership {
        id: format!("{prefix}:{}", nodes.join(",")),
        nodes,
        forbid,
    }
}

impl ConstraintEvaluator for NodeMembership {
    fn id(&self) -> &str {
        &self.id
    }

    fn kind(&self) -> ConstraintKind {
        ConstraintKind::Crisp
    }

    fn check(&self, g: &Graph) -> Result<()> {
        self.nodes.iter().try_for_each(|id| g.require(id).map(drop))
    }

    fn evaluate(&self, g: &Graph, seeds: &SeedSet) -> Result<f64> {
        let mut hits = self.nodes.iter().map(|id| g.require(id).map(|n| seeds.contains(n)));
        let ok = if self.forbid {
            !hits.try_fold(false, |any, hit| hit.map(|h| any || h))?
        } else {
            hits.try_fold(true, |all, hit| hit.map(|h| all && h))?
        };
        Ok(crisp(ok))
    }
}

/// Linear "the subset is small" membership.
#[derive(Debug, Clone)]
pub struct FuzzySmallSubset {
    id: String,
    scale: f64,
}

pub fn fuzzy_small_subset(scale: f64) -> Result<FuzzySmallSubset> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidConstraint {
            id: format!("fuzzy-small:{scale}"),
            reason: "scale must be positive".to_string(),
        });
    }
    Ok(FuzzySmallSubset {
        id: format!("fuzzy-small:{scale}"),
        scale,
    })
}

impl FuzzySmallSubset {
    pub fn degree(&self, n: usize) -> f64 {
        let d = 1.0 - (n as f64 - 1.0) / self.scale;
        d.clamp(0.0, 1.0)
    }
}

impl ConstraintEvaluator for FuzzySmallSubset {
    fn id(&self) -> &str {
        &self.id
    }

    fn kind(&self) -> ConstraintKind {
        ConstraintKind::Fuzzy
    }

    fn evaluate(&self, _g: &Graph, seeds: &SeedSet) -> Result<f64> {
        Ok(self.degree(seeds.len()))
    }
}

/// Builds an evaluator from the argument part of an id (after the first `:`).
pub type Factory = Box<dyn Fn(&str, Option<&str>) -> Result<SharedConstraint> + Send + Sync>;

/// Maps constraint names to factories. An id is `name` or `name:args`.
pub struct ConstraintRegistry {
    factories: BTreeMap<String, Factory>,
}

impl Debug for ConstraintRegistry {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_set().entries(self.factories.keys()).finish()
    }
}

impl Default for ConstraintRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

fn invalid(id: &str, reason: &str) -> Error {
    Error::InvalidConstraint {
        id: id.to_string(),
        reason: reason.to_string(),
    }
}

fn id_list(args: Option<&str>) -> Vec<String> {
    args.unwrap_or("")
        .split(',')
        .filter(|s| !s.is_empty())
        .map(ToString::to_string)
        .collect()
}

impl ConstraintRegistry {
    pub fn empty() -> Self {
        ConstraintRegistry {
            factories: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register("same-component", |id, args| match args {
            None => Ok(Arc::new(SameComponent) as SharedConstraint),
            Some(_) => Err(invalid(id, "takes no arguments")),
        });
        r.register("cardinality", |id, args| {
            let (lo, hi) = args
                .and_then(|a| a.split_once(':'))
                .ok_or_else(|| invalid(id, "expected cardinality:<min>:<max>"))?;
            let lo = lo.parse().map_err(|_| invalid(id, "min is not an integer"))?;
            let hi = hi.parse().map_err(|_| invalid(id, "max is not an integer"))?;
            Ok(Arc::new(cardinality_between(lo, hi)?) as SharedConstraint)
        });
        r.register("require", |_, args| {
            Ok(Arc::new(require_nodes(id_list(args))) as SharedConstraint)
        });
        r.register("forbid", |_, args| {
            Ok(Arc::new(forbid_nodes(id_list(args))) as SharedConstraint)
        });
        r.register("fuzzy-small", |id, args| {
            let scale = args
                .and_then(|a| a.parse::<f64>().ok())
                .ok_or_else(|| invalid(id, "expected fuzzy-small:<scale>"))?;
            Ok(Arc::new(fuzzy_small_subset(scale)?) as SharedConstraint)
        });
        r
    }

    /// Adds or replaces the factory for `name`.
    pub fn register<F>(&mut self, name: &str, factory: F)
    where
        F: Fn(&str, Option<&str>) -> Result<SharedConstraint> + Send + Sync + 'static,
    {
        self.factories.insert(name.to_string(), Box::new(factory));
    }

    pub fn resolve(&self, id: &str) -> Result<SharedConstraint> {
        let (name, args) = match id.split_once(':') {
            Some((name, args)) => (name, Some(args)),
            None => (id, None),
        };
        let factory = self
            .factories
            .get(name)
            .ok_or_else(|| Error::UnknownConstraint(id.to_string()))?;
        factory(id, args)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }
}
