//! Span measures for sets, decision systems and weighted decision systems.
//!
//! Every measure combines, per set, the share of the universe certainly
//! covered (lower approximation) and the share possibly covered (boundary):
//! `w1 * |lower| / |U| + w2 * |boundary| / |U|`. Decision spans average that
//! quantity over decision classes, and the "complete" variants average again
//! over single attributes.

use crate::error::{Error, Result};
use crate::object_set::ObjectSet;
use crate::rough::{check_decision_universe, indiscernibility, region_sizes, AttributeSubset};
use crate::table::{ClassWeights, DecisionTable, LabeledPartition, Partition, SpanWeights};

fn term(partition: &Partition, set: &ObjectSet, w: SpanWeights) -> f64 {
    let n = partition.universe() as f64;
    let (lower, boundary) = region_sizes(partition, set);
    w.w1() * lower as f64 / n + w.w2() * boundary as f64 / n
}

/// Span of `set` under a fixed partition, either attribute-induced or supplied by an expert.
pub fn set_span(partition: &Partition, set: &ObjectSet, w: SpanWeights) -> Result<f64> {
    if set.universe() != partition.universe() {
        return Err(Error::UniverseMismatch {
            expected: partition.universe(),
            found: set.universe(),
        });
    }
    Ok(term(partition, set, w))
}

/// Per-attribute set spans over `U/{a}` for every attribute, in attribute order.
pub fn attribute_set_spans(
    table: &DecisionTable,
    set: &ObjectSet,
    w: SpanWeights,
) -> Result<Vec<f64>> {
    (0..table.num_attributes())
        .map(|a| {
            set_span(
                &indiscernibility(table, &AttributeSubset::single(a))?,
                set,
                w,
            )
        })
        .collect()
}

/// Mean of the single-attribute set spans.
pub fn complete_set_span(table: &DecisionTable, set: &ObjectSet, w: SpanWeights) -> Result<f64> {
    Ok(mean(&attribute_set_spans(table, set, w)?))
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Mean over decision blocks of each block's span under `U/P`.
pub fn decision_span(
    table: &DecisionTable,
    attrs: &AttributeSubset,
    decision: &Partition,
    w: SpanWeights,
) -> Result<f64> {
    check_decision_universe(table, decision)?;
    let classes = indiscernibility(table, attrs)?;
    Ok(decision_span_under(&classes, decision, w))
}

pub(crate) fn decision_span_under(
    classes: &Partition,
    decision: &Partition,
    w: SpanWeights,
) -> f64 {
    let total: f64 = decision.blocks().iter().map(|x| term(classes, x, w)).sum();
    total / decision.len() as f64
}

/// Single-attribute decision spans, one per member of `attrs`.
pub fn attribute_decision_spans(
    table: &DecisionTable,
    attrs: &AttributeSubset,
    decision: &Partition,
    w: SpanWeights,
) -> Result<Vec<f64>> {
    if attrs.is_empty() {
        return Err(Error::EmptyAttributeSet);
    }
    attrs
        .indices()
        .iter()
        .map(|&a| decision_span(table, &AttributeSubset::single(a), decision, w))
        .collect()
}

/// Mean of the single-attribute decision spans over `attrs`; the divisor is always `|P|`.
pub fn complete_decision_span(
    table: &DecisionTable,
    attrs: &AttributeSubset,
    decision: &Partition,
    w: SpanWeights,
) -> Result<f64> {
    Ok(mean(&attribute_decision_spans(table, attrs, decision, w)?))
}

/// Class-weighted sum of block spans. Weights are matched to blocks by label.
pub fn weighted_decision_span(
    table: &DecisionTable,
    attrs: &AttributeSubset,
    decision: &LabeledPartition,
    w: SpanWeights,
    u: &ClassWeights,
) -> Result<f64> {
    check_decision_universe(table, &decision.partition)?;
    let weights = u.aligned(&decision.labels)?;
    let classes = indiscernibility(table, attrs)?;
    Ok(decision
        .partition
        .blocks()
        .iter()
        .zip(weights)
        .map(|(x, ui)| ui * term(&classes, x, w))
        .sum())
}

pub fn attribute_weighted_decision_spans(
    table: &DecisionTable,
    attrs: &AttributeSubset,
    decision: &LabeledPartition,
    w: SpanWeights,
    u: &ClassWeights,
) -> Result<Vec<f64>> {
    if attrs.is_empty() {
        return Err(Error::EmptyAttributeSet);
    }
    attrs
        .indices()
        .iter()
        .map(|&a| weighted_decision_span(table, &AttributeSubset::single(a), decision, w, u))
        .collect()
}

pub fn complete_weighted_decision_span(
    table: &DecisionTable,
    attrs: &AttributeSubset,
    decision: &LabeledPartition,
    w: SpanWeights,
    u: &ClassWeights,
) -> Result<f64> {
    Ok(mean(&attribute_weighted_decision_spans(
        table, attrs, decision, w, u,
    )?))
}

/// Rounds half-to-even at four decimals, the precision reports display.
pub fn round4(value: f64) -> f64 {
    (value * 1e4).round_ties_even() / 1e4
}
