//! Spanning-set search and decision-class learning.
//!
//! All searchers maximise a span objective under the same constraints: a
//! must-cover set of objects and an optional cap on the subset size. Ties are
//! broken towards smaller sets, then towards the lexicographically smallest
//! ascending index sequence, so every method agrees on what "best" means.

mod exact;
mod learn;
mod local;
mod pso;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::object_set::ObjectSet;
use crate::rough::{attribute_partitions, AttributeSubset};
use crate::span::{self, mean};
use crate::table::{ClassWeights, DecisionTable, Partition, SpanWeights};

pub use exact::{spanning_search_exact, EXACT_UNIVERSE_CAP};
pub use learn::{learn_decision, LEARN_EXACT_BUDGET};
pub use local::spanning_search_local;
pub use pso::spanning_search_pso;

/// Span values closer than this are treated as tied.
pub const SPAN_TIE_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Local,
    Pso,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Local => "local",
            Method::Pso => "pso",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Method::Exact),
            "local" => Ok(Method::Local),
            "pso" => Ok(Method::Pso),
            other => Err(Error::InvalidConfig(format!("unknown method {other}"))),
        }
    }
}

/// Binary particle swarm coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsoParams {
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Velocities are clamped to `[-velocity_clamp, velocity_clamp]` before the sigmoid.
    pub velocity_clamp: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            inertia: 0.729,
            cognitive: 1.49445,
            social: 1.49445,
            velocity_clamp: 6.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub method: Method,
    /// Cardinality cap on the selected set (the number of available teams).
    pub max_size: Option<usize>,
    /// Object indices every candidate must contain.
    pub required: Vec<usize>,
    pub seed: u64,
    /// Hill-climbing steps for `local`, generations for `pso`.
    pub iterations: usize,
    pub swarm_size: usize,
    pub pso: PsoParams,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            method: Method::Exact,
            max_size: None,
            required: Vec::new(),
            seed: 0,
            iterations: 100,
            swarm_size: 30,
            pso: PsoParams::default(),
        }
    }
}

impl SearchConfig {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_iterations(mut self, iterations: usize) -> Self {
        self.iterations = iterations;
        self
    }

    pub fn with_swarm_size(mut self, swarm_size: usize) -> Self {
        self.swarm_size = swarm_size;
        self
    }

    pub fn with_max_size(mut self, max_size: usize) -> Self {
        self.max_size = Some(max_size);
        self
    }

    pub fn with_required(mut self, required: impl IntoIterator<Item = usize>) -> Self {
        self.required = required.into_iter().collect();
        self
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn check_heuristic(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::InvalidConfig("iterations must be at least 1".into()));
        }
        if self.method == Method::Pso && self.swarm_size == 0 {
            return Err(Error::InvalidConfig("swarm size must be at least 1".into()));
        }
        Ok(())
    }
}

/// What a search returns: a subset of objects or a class labeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Solution {
    Set(ObjectSet),
    /// Class index per object in canonical form: classes are numbered from 0
    /// in order of first use.
    Labeling(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub best: Solution,
    pub span: f64,
    pub evaluations: u64,
    pub method: Method,
    pub seed: u64,
    pub optimal: bool,
}

impl SearchResult {
    pub fn best_set(&self) -> Option<&ObjectSet> {
        match &self.best {
            Solution::Set(s) => Some(s),
            Solution::Labeling(_) => None,
        }
    }

    pub fn best_labeling(&self) -> Option<&[usize]> {
        match &self.best {
            Solution::Labeling(l) => Some(l),
            Solution::Set(_) => None,
        }
    }
}

/// The set function a spanning search maximises.
#[derive(Debug, Clone)]
pub enum SetObjective {
    /// Span under one fixed partition, attribute-induced or expert supplied.
    Partition {
        partition: Partition,
        weights: SpanWeights,
    },
    /// Mean of the single-attribute spans of a table.
    Complete {
        partitions: Vec<Partition>,
        weights: SpanWeights,
    },
}

impl SetObjective {
    pub fn partition(partition: Partition, weights: SpanWeights) -> Self {
        SetObjective::Partition { partition, weights }
    }

    pub fn complete(table: &DecisionTable, weights: SpanWeights) -> Self {
        SetObjective::Complete {
            partitions: attribute_partitions(table),
            weights,
        }
    }

    pub fn universe(&self) -> usize {
        match self {
            SetObjective::Partition { partition, .. } => partition.universe(),
            SetObjective::Complete { partitions, .. } => partitions[0].universe(),
        }
    }

    pub fn weights(&self) -> SpanWeights {
        match self {
            SetObjective::Partition { weights, .. } | SetObjective::Complete { weights, .. } => {
                *weights
            }
        }
    }

    /// Evaluates the objective. `set` must come from this objective's universe.
    pub fn evaluate(&self, set: &ObjectSet) -> f64 {
        match self {
            SetObjective::Partition { partition, weights } => {
                span::set_span(partition, set, *weights).expect("set from objective universe")
            }
            SetObjective::Complete {
                partitions,
                weights,
            } => {
                let terms: Vec<f64> = partitions
                    .iter()
                    .map(|p| span::set_span(p, set, *weights).expect("set from objective universe"))
                    .collect();
                mean(&terms)
            }
        }
    }
}

/// Validated must-cover set and size cap.
#[derive(Debug, Clone)]
pub(crate) struct Constraints {
    pub required: ObjectSet,
    pub cap: usize,
}

impl Constraints {
    pub fn new(universe: usize, config: &SearchConfig) -> Result<Self> {
        let required = ObjectSet::from_indices(universe, config.required.iter().copied())
            .map_err(|_| Error::Infeasible("required objects lie outside the universe".into()))?;
        let cap = match config.max_size {
            Some(0) => return Err(Error::InvalidConfig("max size must be at least 1".into())),
            Some(m) => m.min(universe),
            None => universe,
        };
        if required.len() > cap {
            return Err(Error::Infeasible(format!(
                "{} required objects exceed the size cap {cap}",
                required.len()
            )));
        }
        Ok(Self { required, cap })
    }

    pub fn admits(&self, set: &ObjectSet) -> bool {
        self.required.is_subset(set) && set.len() <= self.cap
    }
}

/// Total order on candidates: higher span, then fewer objects, then lexicographically smaller.
pub(crate) fn set_order(a_span: f64, a: &ObjectSet, b_span: f64, b: &ObjectSet) -> Ordering {
    if a_span > b_span + SPAN_TIE_EPSILON {
        return Ordering::Less;
    }
    if b_span > a_span + SPAN_TIE_EPSILON {
        return Ordering::Greater;
    }
    a.len().cmp(&b.len()).then_with(|| a.cmp_lex(b))
}

pub(crate) fn set_is_better(a_span: f64, a: &ObjectSet, b_span: f64, b: &ObjectSet) -> bool {
    set_order(a_span, a, b_span, b) == Ordering::Less
}

/// Runs the searcher named by `config.method`.
pub fn spanning_search(objective: &SetObjective, config: &SearchConfig) -> Result<SearchResult> {
    match config.method {
        Method::Exact => spanning_search_exact(objective, config),
        Method::Local => spanning_search_local(objective, config),
        Method::Pso => spanning_search_pso(objective, config),
    }
}

/// Ranks decision columns by complete decision span over all attributes.
///
/// `class_weights` is either empty or holds one optional weighting per column;
/// weighted columns use the class-weighted complete span. Ties keep input order.
pub fn compare_decisions<S: AsRef<str>>(
    table: &DecisionTable,
    columns: &[S],
    w: SpanWeights,
    class_weights: &[Option<ClassWeights>],
) -> Result<Vec<(String, f64)>> {
    if columns.is_empty() {
        return Err(Error::InvalidConfig(
            "no decision columns to compare".into(),
        ));
    }
    if !class_weights.is_empty() && class_weights.len() != columns.len() {
        return Err(Error::InvalidConfig(
            "class weights must be given per compared column".into(),
        ));
    }
    let attrs = AttributeSubset::all(table);
    let mut ranked = Vec::with_capacity(columns.len());
    for (i, column) in columns.iter().enumerate() {
        let column = column.as_ref();
        let decision = crate::table::decision_partition(table, column)?;
        let value = match class_weights.get(i).and_then(Option::as_ref) {
            Some(u) => span::complete_weighted_decision_span(table, &attrs, &decision, w, u)?,
            None => span::complete_decision_span(table, &attrs, &decision.partition, w)?,
        };
        ranked.push((column.to_string(), value));
    }
    ranked.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal));
    Ok(ranked)
}
