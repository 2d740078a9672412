//! Indiscernibility, approximations, positive regions and reducts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::object_set::ObjectSet;
use crate::table::{DecisionTable, Partition};

/// Largest attribute count accepted by [`enumerate_reducts`].
pub const REDUCT_ATTRIBUTE_CAP: usize = 20;

/// A set of condition-attribute indices, kept sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AttributeSubset(Vec<usize>);

impl AttributeSubset {
    pub fn new(num_attributes: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = indices.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&a| a >= num_attributes) {
            return Err(Error::UnknownAttribute(format!("#{bad}")));
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self(members))
    }

    /// Every attribute of the table.
    pub fn all(table: &DecisionTable) -> Self {
        Self((0..table.num_attributes()).collect())
    }

    pub fn single(attribute: usize) -> Self {
        Self(vec![attribute])
    }

    pub fn from_names<S: AsRef<str>>(table: &DecisionTable, names: &[S]) -> Result<Self> {
        let indices = names
            .iter()
            .map(|n| table.attribute_index(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(table.num_attributes(), indices)
    }

    fn from_mask(mask: u32) -> Self {
        Self((0..32).filter(|a| mask & (1 << a) != 0).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names<'t>(&self, table: &'t DecisionTable) -> Vec<&'t str> {
        self.0
            .iter()
            .map(|&a| table.attribute_names()[a].as_str())
            .collect()
    }

    fn without(&self, attribute: usize) -> Self {
        Self(self.0.iter().copied().filter(|&a| a != attribute).collect())
    }
}

/// Lower and upper approximations of a set, with the boundary between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Approximation {
    pub lower: ObjectSet,
    pub upper: ObjectSet,
    pub boundary: ObjectSet,
}

/// The partition `U/P`: objects share a block iff they agree on every attribute in `attrs`.
pub fn indiscernibility(table: &DecisionTable, attrs: &AttributeSubset) -> Result<Partition> {
    if attrs.is_empty() {
        return Err(Error::EmptyAttributeSet);
    }
    if let Some(&bad) = attrs
        .indices()
        .iter()
        .find(|&&a| a >= table.num_attributes())
    {
        return Err(Error::UnknownAttribute(format!("#{bad}")));
    }
    let keys = (0..table.num_objects()).map(|o| {
        attrs
            .indices()
            .iter()
            .map(|&a| table.code(o, a))
            .collect::<Vec<u32>>()
    });
    Ok(Partition::from_keys(keys))
}

/// Single-attribute partitions `U/{a}` for every attribute, in attribute order.
pub fn attribute_partitions(table: &DecisionTable) -> Vec<Partition> {
    (0..table.num_attributes())
        .map(|a| Partition::from_keys((0..table.num_objects()).map(|o| table.code(o, a))))
        .collect()
}

fn check_universe(partition: &Partition, set: &ObjectSet) -> Result<()> {
    if set.universe() != partition.universe() {
        return Err(Error::UniverseMismatch {
            expected: partition.universe(),
            found: set.universe(),
        });
    }
    Ok(())
}

pub fn approximate(partition: &Partition, set: &ObjectSet) -> Result<Approximation> {
    check_universe(partition, set)?;
    let mut lower = ObjectSet::empty(partition.universe());
    let mut upper = ObjectSet::empty(partition.universe());
    for block in partition.blocks() {
        if block.intersects(set) {
            upper.union_with(block);
            if block.is_subset(set) {
                lower.union_with(block);
            }
        }
    }
    let boundary = upper.difference(&lower);
    Ok(Approximation {
        lower,
        upper,
        boundary,
    })
}

/// `(|lower|, |boundary|)` without materialising the approximation sets.
///
/// The caller guarantees `set` lives in the partition's universe.
pub(crate) fn region_sizes(partition: &Partition, set: &ObjectSet) -> (usize, usize) {
    let mut lower = 0;
    let mut boundary = 0;
    for block in partition.blocks() {
        if block.intersects(set) {
            if block.is_subset(set) {
                lower += block.len();
            } else {
                boundary += block.len();
            }
        }
    }
    (lower, boundary)
}

pub(crate) fn check_decision_universe(table: &DecisionTable, decision: &Partition) -> Result<()> {
    if decision.universe() != table.num_objects() {
        return Err(Error::UniverseMismatch {
            expected: table.num_objects(),
            found: decision.universe(),
        });
    }
    Ok(())
}

/// `POS_P(D)`: the union of the lower approximations of every decision block under `U/P`.
pub fn positive_region(
    table: &DecisionTable,
    attrs: &AttributeSubset,
    decision: &Partition,
) -> Result<ObjectSet> {
    check_decision_universe(table, decision)?;
    let classes = indiscernibility(table, attrs)?;
    Ok(positive_region_of(&classes, decision))
}

fn positive_region_of(classes: &Partition, decision: &Partition) -> ObjectSet {
    let mut positive = ObjectSet::empty(classes.universe());
    for block in classes.blocks() {
        if decision.blocks().iter().any(|d| block.is_subset(d)) {
            positive.union_with(block);
        }
    }
    positive
}

/// True iff `attrs` preserves the full positive region and no proper subset does.
///
/// Positive regions grow monotonically with the attribute set, so testing
/// each one-attribute removal is enough to certify minimality.
pub fn is_reduct(
    table: &DecisionTable,
    attrs: &AttributeSubset,
    decision: &Partition,
) -> Result<bool> {
    let target = positive_region(table, &AttributeSubset::all(table), decision)?;
    if positive_region(table, attrs, decision)? != target {
        return Ok(false);
    }
    for &a in attrs.indices() {
        let smaller = attrs.without(a);
        if !smaller.is_empty() && positive_region(table, &smaller, decision)? == target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All reducts, ordered by size and then by attribute indices.
///
/// Exhaustive over the non-empty attribute subsets, so it is capped at
/// [`REDUCT_ATTRIBUTE_CAP`] attributes.
pub fn enumerate_reducts(
    table: &DecisionTable,
    decision: &Partition,
) -> Result<Vec<AttributeSubset>> {
    enumerate_reducts_capped(table, decision, REDUCT_ATTRIBUTE_CAP)
}

pub fn enumerate_reducts_capped(
    table: &DecisionTable,
    decision: &Partition,
    cap: usize,
) -> Result<Vec<AttributeSubset>> {
    let k = table.num_attributes();
    if k > cap.min(31) {
        return Err(Error::TooManyAttributes { count: k, cap });
    }
    check_decision_universe(table, decision)?;
    let target = positive_region(table, &AttributeSubset::all(table), decision)?;

    let mut found: Vec<u32> = Vec::new();
    for size in 1..=k {
        // Gosper's hack walks the size-`size` masks in increasing numeric order.
        let mut mask: u32 = (1u32 << size) - 1;
        let limit: u32 = 1u32 << k;
        while mask < limit {
            if !found.iter().any(|&r| r & !mask == 0) {
                let attrs = AttributeSubset::from_mask(mask);
                let classes = indiscernibility(table, &attrs)?;
                if positive_region_of(&classes, decision) == target {
                    found.push(mask);
                }
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    let mut reducts: Vec<AttributeSubset> =
        found.into_iter().map(AttributeSubset::from_mask).collect();
    reducts.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.indices().cmp(b.indices()))
    });
    Ok(reducts)
}
