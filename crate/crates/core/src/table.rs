//! Decision tables, partitions and the weight vectors the span measures consume.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::object_set::ObjectSet;

/// Token reserved for a missing cell. Missing values are rejected outright.
pub const MISSING_TOKEN: &str = "?";

const WEIGHT_TOLERANCE: f64 = 1e-9;

/// One named decision column: a categorical label per object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionColumn {
    pub name: String,
    pub labels: Vec<String>,
}

/// A universe of named objects described by categorical condition attributes,
/// plus zero or more decision columns.
///
/// Cell symbols are interned per attribute so that indiscernibility reduces to
/// comparing small integer codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTable {
    id_column: String,
    object_names: Vec<String>,
    attribute_names: Vec<String>,
    /// `codes[object][attribute]` indexes into `symbols[attribute]`.
    codes: Vec<Vec<u32>>,
    symbols: Vec<Vec<String>>,
    decisions: Vec<DecisionColumn>,
}

impl DecisionTable {
    pub fn new(
        id_column: impl Into<String>,
        object_names: Vec<String>,
        attribute_names: Vec<String>,
        rows: Vec<Vec<String>>,
        decisions: Vec<DecisionColumn>,
    ) -> Result<Self> {
        if object_names.is_empty() {
            return Err(Error::Malformed("table has no objects".into()));
        }
        if attribute_names.is_empty() {
            return Err(Error::Malformed("table has no condition attributes".into()));
        }
        let mut seen = HashSet::new();
        for name in &object_names {
            if name.is_empty() || name == MISSING_TOKEN {
                return Err(Error::Malformed("object identifier is missing".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateObject(name.clone()));
            }
        }
        let mut seen = HashSet::new();
        for name in attribute_names
            .iter()
            .chain(decisions.iter().map(|d| &d.name))
        {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateAttribute(name.clone()));
            }
        }
        if rows.len() != object_names.len() {
            return Err(Error::Malformed(format!(
                "{} value rows for {} objects",
                rows.len(),
                object_names.len()
            )));
        }

        let width = attribute_names.len();
        let mut dictionaries: Vec<HashMap<String, u32>> = vec![HashMap::new(); width];
        let mut symbols: Vec<Vec<String>> = vec![Vec::new(); width];
        let mut codes = Vec::with_capacity(rows.len());
        for (row_index, row) in rows.into_iter().enumerate() {
            if row.len() != width {
                return Err(Error::RaggedRow {
                    row: row_index + 1,
                    expected: width,
                    found: row.len(),
                });
            }
            let mut coded = Vec::with_capacity(width);
            for (attr, cell) in row.into_iter().enumerate() {
                if is_missing(&cell) {
                    return Err(Error::MissingValue {
                        object: object_names[row_index].clone(),
                        column: attribute_names[attr].clone(),
                    });
                }
                let next = symbols[attr].len() as u32;
                let code = *dictionaries[attr].entry(cell.clone()).or_insert_with(|| {
                    symbols[attr].push(cell);
                    next
                });
                coded.push(code);
            }
            codes.push(coded);
        }

        for column in &decisions {
            if column.labels.len() != object_names.len() {
                return Err(Error::Malformed(format!(
                    "decision column {} has {} labels for {} objects",
                    column.name,
                    column.labels.len(),
                    object_names.len()
                )));
            }
            if let Some(pos) = column.labels.iter().position(|l| is_missing(l)) {
                return Err(Error::MissingValue {
                    object: object_names[pos].clone(),
                    column: column.name.clone(),
                });
            }
        }

        Ok(Self {
            id_column: id_column.into(),
            object_names,
            attribute_names,
            codes,
            symbols,
            decisions,
        })
    }

    pub fn id_column(&self) -> &str {
        &self.id_column
    }

    pub fn object_names(&self) -> &[String] {
        &self.object_names
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn decisions(&self) -> &[DecisionColumn] {
        &self.decisions
    }

    pub fn num_objects(&self) -> usize {
        self.object_names.len()
    }

    pub fn num_attributes(&self) -> usize {
        self.attribute_names.len()
    }

    /// Interned code of the cell at (`object`, `attribute`). Equal codes mean equal symbols.
    pub fn code(&self, object: usize, attribute: usize) -> u32 {
        self.codes[object][attribute]
    }

    pub fn value(&self, object: usize, attribute: usize) -> &str {
        &self.symbols[attribute][self.codes[object][attribute] as usize]
    }

    pub fn decision(&self, name: &str) -> Result<&DecisionColumn> {
        self.decisions
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| Error::UnknownDecision(name.to_string()))
    }

    pub fn attribute_index(&self, name: &str) -> Result<usize> {
        self.attribute_names
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.object_names
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    /// Resolves object names into a set over this table's universe.
    pub fn object_set<S: AsRef<str>>(&self, names: &[S]) -> Result<ObjectSet> {
        object_set_by_name(&self.object_names, names)
    }

    /// Returns a copy restricted to the objects in `keep`, preserving order.
    ///
    /// Used for follow-up dispatch rounds where the already-served objects
    /// leave the universe.
    pub fn restrict(&self, keep: &ObjectSet) -> Result<DecisionTable> {
        let rows: Vec<usize> = keep.iter().collect();
        DecisionTable::new(
            self.id_column.clone(),
            rows.iter().map(|&i| self.object_names[i].clone()).collect(),
            self.attribute_names.clone(),
            rows.iter()
                .map(|&i| {
                    (0..self.num_attributes())
                        .map(|a| self.value(i, a).to_string())
                        .collect()
                })
                .collect(),
            self.decisions
                .iter()
                .map(|d| DecisionColumn {
                    name: d.name.clone(),
                    labels: rows.iter().map(|&i| d.labels[i].clone()).collect(),
                })
                .collect(),
        )
    }

    /// Writes the table back out as CSV with attributes before decision columns.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let mut header = vec![self.id_column.as_str()];
        header.extend(self.attribute_names.iter().map(String::as_str));
        header.extend(self.decisions.iter().map(|d| d.name.as_str()));
        writer.write_record(&header).expect("in-memory write");
        for (i, name) in self.object_names.iter().enumerate() {
            let mut record = vec![name.as_str()];
            record.extend((0..self.num_attributes()).map(|a| self.value(i, a)));
            record.extend(self.decisions.iter().map(|d| d.labels[i].as_str()));
            writer.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

fn is_missing(cell: &str) -> bool {
    cell.is_empty() || cell == MISSING_TOKEN
}

pub(crate) fn object_set_by_name<S: AsRef<str>>(
    universe: &[String],
    names: &[S],
) -> Result<ObjectSet> {
    let mut set = ObjectSet::empty(universe.len());
    for name in names {
        let name = name.as_ref();
        let index = universe
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))?;
        set.insert(index);
    }
    Ok(set)
}

/// Parses a comma-separated decision table.
///
/// The header row names the object-id column, then every attribute. Columns
/// listed in `decision_columns` are split off as decisions; everything else is
/// a condition attribute.
pub fn parse_table<S: AsRef<str>>(text: &str, decision_columns: &[S]) -> Result<DecisionTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Malformed(e.to_string()))?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        records.push(record.iter().map(str::to_string).collect::<Vec<_>>());
    }
    let mut records = records.into_iter();
    let header = records
        .next()
        .ok_or_else(|| Error::Malformed("missing header row".into()))?;
    if header.len() < 2 {
        return Err(Error::Malformed(
            "header needs an id column and at least one attribute".into(),
        ));
    }

    let mut seen = HashSet::new();
    for name in &header {
        if name.is_empty() {
            return Err(Error::Malformed("empty column name in header".into()));
        }
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateAttribute(name.clone()));
        }
    }

    let mut decision_positions = Vec::new();
    for name in decision_columns {
        let name = name.as_ref();
        match header.iter().skip(1).position(|h| h == name) {
            Some(p) => decision_positions.push(p + 1),
            None => return Err(Error::UnknownDecision(name.to_string())),
        }
    }
    let attribute_positions: Vec<usize> = (1..header.len())
        .filter(|p| !decision_positions.contains(p))
        .collect();

    let mut object_names = Vec::new();
    let mut rows = Vec::new();
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); decision_positions.len()];
    for (index, record) in records.enumerate() {
        if record.len() != header.len() {
            return Err(Error::RaggedRow {
                row: index + 1,
                expected: header.len(),
                found: record.len(),
            });
        }
        object_names.push(record[0].clone());
        rows.push(
            attribute_positions
                .iter()
                .map(|&p| record[p].clone())
                .collect(),
        );
        for (column, &p) in labels.iter_mut().zip(&decision_positions) {
            column.push(record[p].clone());
        }
    }

    let decisions = decision_positions
        .iter()
        .zip(labels)
        .map(|(&p, labels)| DecisionColumn {
            name: header[p].clone(),
            labels,
        })
        .collect();
    DecisionTable::new(
        header[0].clone(),
        object_names,
        attribute_positions
            .iter()
            .map(|&p| header[p].clone())
            .collect(),
        rows,
        decisions,
    )
}

/// Disjoint, non-empty blocks covering the universe `{0, .., universe - 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    universe: usize,
    blocks: Vec<ObjectSet>,
}

impl Partition {
    pub fn new(universe: usize, blocks: Vec<ObjectSet>) -> Result<Self> {
        let mut covered = ObjectSet::empty(universe);
        for block in &blocks {
            if block.universe() != universe {
                return Err(Error::UniverseMismatch {
                    expected: universe,
                    found: block.universe(),
                });
            }
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if block.intersects(&covered) {
                let dup = block.intersection(&covered).iter().next().unwrap_or(0);
                return Err(Error::InvalidPartition(format!(
                    "object index {dup} appears in two blocks"
                )));
            }
            covered.union_with(block);
        }
        if covered.len() != universe {
            let missing = covered.complement().iter().next().unwrap_or(0);
            return Err(Error::InvalidPartition(format!(
                "object index {missing} is not covered"
            )));
        }
        Ok(Self { universe, blocks })
    }

    pub fn from_blocks(universe: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let sets = blocks
            .iter()
            .map(|b| ObjectSet::from_indices(universe, b.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(universe, sets)
    }

    /// Groups objects by equal keys; blocks appear in first-occurrence order.
    pub fn from_keys<K: Eq + std::hash::Hash>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut index: HashMap<K, usize> = HashMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut universe = 0;
        for (object, key) in keys.into_iter().enumerate() {
            universe += 1;
            let next = members.len();
            let block = *index.entry(key).or_insert(next);
            if block == next {
                members.push(Vec::new());
            }
            members[block].push(object);
        }
        let blocks = members
            .into_iter()
            .map(|m| ObjectSet::from_indices(universe, m).expect("indices in range"))
            .collect();
        Self { universe, blocks }
    }

    /// The one-block partition `{U}`.
    pub fn trivial(universe: usize) -> Self {
        Self {
            universe,
            blocks: vec![ObjectSet::full(universe)],
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn blocks(&self) -> &[ObjectSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(ObjectSet::to_vec).collect()
    }

    /// True when every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks
            .iter()
            .all(|b| coarser.blocks.iter().any(|c| b.is_subset(c)))
    }
}

/// A decision-induced partition together with the label of each block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledPartition {
    pub partition: Partition,
    pub labels: Vec<String>,
}

/// Parses an expert partition over `universe`.
///
/// Accepts either a JSON array of arrays of object names or plain text with
/// one whitespace-separated block per line. Blocks keep file order.
pub fn parse_partition<S: AsRef<str>>(text: &str, universe: &[S]) -> Result<Partition> {
    let names: Vec<String> = universe.iter().map(|s| s.as_ref().to_string()).collect();
    let blocks = read_partition_blocks(text)?;
    let mut owner: Vec<Option<usize>> = vec![None; names.len()];
    let mut sets = Vec::with_capacity(blocks.len());
    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::InvalidPartition(format!("block {} is empty", b + 1)));
        }
        let mut set = ObjectSet::empty(names.len());
        for name in block {
            let index = names
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| Error::UnknownObject(name.clone()))?;
            if owner[index].is_some() {
                return Err(Error::PartitionDuplicate(name.clone()));
            }
            owner[index] = Some(b);
            set.insert(index);
        }
        sets.push(set);
    }
    if let Some(missing) = owner.iter().position(Option::is_none) {
        return Err(Error::PartitionUncovered(names[missing].clone()));
    }
    Partition::new(names.len(), sets)
}

/// Reads the raw blocks of a partition document without resolving names.
pub fn read_partition_blocks(text: &str) -> Result<Vec<Vec<String>>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        serde_json::from_str(trimmed).map_err(|e| Error::Malformed(e.to_string()))
    } else {
        Ok(text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().map(str::to_string).collect())
            .collect())
    }
}

/// Partitions the universe by the labels of decision column `column`.
pub fn decision_partition(table: &DecisionTable, column: &str) -> Result<LabeledPartition> {
    let labels = &table.decision(column)?.labels;
    let partition = Partition::from_keys(labels.iter());
    let block_labels = partition
        .blocks()
        .iter()
        .map(|b| labels[b.iter().next().expect("non-empty block")].clone())
        .collect();
    Ok(LabeledPartition {
        partition,
        labels: block_labels,
    })
}

/// The (w1, w2) pair weighting lower-approximation and boundary mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpanWeights {
    w1: f64,
    w2: f64,
}

impl SpanWeights {
    pub fn new(w1: f64, w2: f64) -> Result<Self> {
        for (name, w) in [("w1", w1), ("w2", w2)] {
            if !w.is_finite() || !(0.0..=1.0).contains(&w) {
                return Err(Error::InvalidWeights(format!(
                    "{name} = {w} is outside [0, 1]"
                )));
            }
        }
        if (w1 + w2 - 1.0).abs() > WEIGHT_TOLERANCE {
            return Err(Error::InvalidWeights("weights must sum to 1".into()));
        }
        Ok(Self { w1, w2 })
    }

    pub fn w1(&self) -> f64 {
        self.w1
    }

    pub fn w2(&self) -> f64 {
        self.w2
    }
}

impl Default for SpanWeights {
    fn default() -> Self {
        Self { w1: 0.5, w2: 0.5 }
    }
}

/// Per-class importance weights, keyed by decision label.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassWeights {
    weights: Vec<(String, f64)>,
}

impl ClassWeights {
    pub fn new(weights: Vec<(String, f64)>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no class weights given".into()));
        }
        let mut seen = HashSet::new();
        for (label, u) in &weights {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidWeights(format!(
                    "label {label} weighted twice"
                )));
            }
            if !u.is_finite() || *u < 0.0 {
                return Err(Error::InvalidWeights(format!(
                    "weight of {label} must be >= 0"
                )));
            }
        }
        let total: f64 = weights.iter().map(|(_, u)| u).sum();
        if (total - 1.0).abs() > WEIGHT_TOLERANCE {
            return Err(Error::InvalidWeights(format!(
                "class weights sum to {total}, not 1"
            )));
        }
        Ok(Self { weights })
    }

    pub fn uniform<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let u = 1.0 / labels.len() as f64;
        Self::new(labels.iter().map(|l| (l.as_ref().to_string(), u)).collect())
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.weights
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, u)| *u)
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.weights
    }

    /// Weights aligned with `labels`, failing unless the key sets coincide.
    pub fn aligned<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<f64>> {
        let mismatch = || Error::ClassLabelMismatch {
            weights: self.weights.iter().map(|(l, _)| l.clone()).collect(),
            labels: labels.iter().map(|l| l.as_ref().to_string()).collect(),
        };
        if labels.len() != self.weights.len() {
            return Err(mismatch());
        }
        labels
            .iter()
            .map(|l| self.get(l.as_ref()).ok_or_else(mismatch))
            .collect()
    }
}

impl FromStr for ClassWeights {
    type Err = Error;

    /// Parses `label=u,label=u,...`.
    fn from_str(s: &str) -> Result<Self> {
        let mut weights = Vec::new();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (label, value) = item.split_once('=').ok_or_else(|| {
                Error::InvalidWeights(format!("expected label=weight, got {item}"))
            })?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidWeights(format!("bad weight {value}")))?;
            weights.push((label.trim().to_string(), value));
        }
        Self::new(weights)
    }
}

impl fmt::Display for ClassWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .weights
            .iter()
            .map(|(l, u)| format!("{l}={u}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}
