//! Learning a decision column: search over class labelings of the universe.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Method, SearchConfig, SearchResult, Solution, SPAN_TIE_EPSILON};
use crate::error::{Error, Result};
use crate::rough::attribute_partitions;
use crate::span::{decision_span_under, mean};
use crate::table::{DecisionTable, Partition, SpanWeights};

/// Upper bound on `r^|U|` for exhaustive labeling search.
pub const LEARN_EXACT_BUDGET: u128 = 1 << 24;

/// Renumbers classes in order of first use (a restricted growth string).
fn canonical(labeling: &[usize]) -> Vec<usize> {
    let mut map: Vec<Option<usize>> = Vec::new();
    let mut next = 0;
    labeling
        .iter()
        .map(|&c| {
            if c >= map.len() {
                map.resize(c + 1, None);
            }
            *map[c].get_or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

struct LabelingObjective {
    partitions: Vec<Partition>,
    weights: SpanWeights,
}

impl LabelingObjective {
    /// Complete decision span over all attributes for the labeling's partition.
    fn evaluate(&self, labeling: &[usize]) -> f64 {
        let decision = Partition::from_keys(labeling.iter().copied());
        let terms: Vec<f64> = self
            .partitions
            .iter()
            .map(|p| decision_span_under(p, &decision, self.weights))
            .collect();
        mean(&terms)
    }
}

/// Higher span first, then lexicographically smaller canonical labeling.
fn labeling_order(a_span: f64, a: &[usize], b_span: f64, b: &[usize]) -> Ordering {
    if a_span > b_span + SPAN_TIE_EPSILON {
        Ordering::Less
    } else if b_span > a_span + SPAN_TIE_EPSILON {
        Ordering::Greater
    } else {
        a.cmp(b)
    }
}

/// Searches surjective labelings of the objects into `classes` classes for the
/// one with the highest complete decision span over all attributes.
///
/// `exact` walks canonical labelings only, one per set partition, since the
/// span does not depend on which symbol names a class. `local` hill-climbs by
/// relabeling one object at a time.
pub fn learn_decision(
    table: &DecisionTable,
    classes: usize,
    w: SpanWeights,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let n = table.num_objects();
    if classes < 2 || classes > n {
        return Err(Error::InvalidConfig(format!(
            "class count must lie in [2, {n}], got {classes}"
        )));
    }
    let objective = LabelingObjective {
        partitions: attribute_partitions(table),
        weights: w,
    };
    match config.method {
        Method::Exact => learn_exact(&objective, n, classes, config),
        Method::Local => learn_local(&objective, n, classes, config),
        Method::Pso => Err(Error::InvalidConfig(
            "decision learning supports the exact and local methods".into(),
        )),
    }
}

fn learn_exact(
    objective: &LabelingObjective,
    n: usize,
    classes: usize,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let space = (classes as u128).checked_pow(n as u32);
    if space.is_none_or(|s| s > LEARN_EXACT_BUDGET) {
        return Err(Error::BudgetExceeded(format!(
            "{classes}^{n} labelings exceed the exact budget of 2^24"
        )));
    }
    let mut state = ExactState {
        objective,
        classes,
        labeling: vec![0; n],
        best: None,
        evaluations: 0,
    };
    state.extend(1, 0);
    let (span, labeling) = state
        .best
        .expect("classes <= n admits a surjective labeling");
    Ok(SearchResult {
        best: Solution::Labeling(labeling),
        span,
        evaluations: state.evaluations,
        method: Method::Exact,
        seed: config.seed,
        optimal: true,
    })
}

struct ExactState<'a> {
    objective: &'a LabelingObjective,
    classes: usize,
    labeling: Vec<usize>,
    best: Option<(f64, Vec<usize>)>,
    evaluations: u64,
}

impl ExactState<'_> {
    /// Fills position `pos` onwards given the largest class used so far.
    /// Visits restricted growth strings in lexicographic order.
    fn extend(&mut self, pos: usize, max_used: usize) {
        let n = self.labeling.len();
        let missing = self.classes - 1 - max_used;
        if missing > n - pos {
            return;
        }
        if pos == n {
            let value = self.objective.evaluate(&self.labeling);
            self.evaluations += 1;
            // strict improvement keeps the lexicographically first among ties
            if self
                .best
                .as_ref()
                .is_none_or(|(b, _)| value > b + SPAN_TIE_EPSILON)
            {
                self.best = Some((value, self.labeling.clone()));
            }
            return;
        }
        for c in 0..=(max_used + 1).min(self.classes - 1) {
            self.labeling[pos] = c;
            self.extend(pos + 1, max_used.max(c));
        }
    }
}

fn random_labeling(n: usize, classes: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut labeling = vec![0; n];
    for (k, &object) in order.iter().enumerate() {
        labeling[object] = if k < classes {
            k
        } else {
            rng.gen_range(0..classes)
        };
    }
    labeling
}

fn learn_local(
    objective: &LabelingObjective,
    n: usize,
    classes: usize,
    config: &SearchConfig,
) -> Result<SearchResult> {
    config.check_heuristic()?;
    let mut rng = config.rng();
    let mut evaluations = 0u64;
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut steps = 0;

    while steps < config.iterations {
        let mut current = canonical(&random_labeling(n, classes, &mut rng));
        let mut current_span = objective.evaluate(&current);
        evaluations += 1;
        while steps < config.iterations {
            steps += 1;
            let mut sizes = vec![0usize; classes];
            for &c in &current {
                sizes[c] += 1;
            }
            let mut step: Option<(f64, Vec<usize>)> = None;
            for object in 0..n {
                if sizes[current[object]] == 1 {
                    continue;
                }
                for c in (0..classes).filter(|&c| c != current[object]) {
                    let mut candidate = current.clone();
                    candidate[object] = c;
                    let candidate = canonical(&candidate);
                    let value = objective.evaluate(&candidate);
                    evaluations += 1;
                    if step.as_ref().is_none_or(|(b, bl)| {
                        labeling_order(value, &candidate, *b, bl) == Ordering::Less
                    }) {
                        step = Some((value, candidate));
                    }
                }
            }
            match step {
                Some((value, candidate))
                    if labeling_order(value, &candidate, current_span, &current)
                        == Ordering::Less =>
                {
                    current = candidate;
                    current_span = value;
                }
                _ => break,
            }
        }
        if best
            .as_ref()
            .is_none_or(|(b, bl)| labeling_order(current_span, &current, *b, bl) == Ordering::Less)
        {
            best = Some((current_span, current));
        }
    }

    let (span, labeling) = best.expect("at least one restart runs");
    Ok(SearchResult {
        best: Solution::Labeling(labeling),
        span,
        evaluations,
        method: Method::Local,
        seed: config.seed,
        optimal: false,
    })
}
