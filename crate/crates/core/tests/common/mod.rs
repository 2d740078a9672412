//! Naive reference implementations used as test oracles.
//!
//! Everything here works on plain `Vec`/`BTreeSet` data straight from the
//! definitions and shares no code with the bitset-backed library paths.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use roughspan::{parse_table, DecisionTable};

pub type Set = BTreeSet<usize>;

pub const TABLE1: &str = include_str!("../../fixtures/table1.csv");

pub fn table1() -> DecisionTable {
    parse_table(TABLE1, &["D", "D1"]).unwrap()
}

/// Raw cell rows of a table as strings.
pub fn rows(table: &DecisionTable) -> Vec<Vec<String>> {
    (0..table.num_objects())
        .map(|o| {
            (0..table.num_attributes())
                .map(|a| table.value(o, a).to_string())
                .collect()
        })
        .collect()
}

/// Blocks of objects agreeing on `attrs`, ordered by first member.
pub fn partition(rows: &[Vec<String>], attrs: &[usize]) -> Vec<Set> {
    let mut blocks: Vec<Set> = Vec::new();
    for o in 0..rows.len() {
        match blocks.iter_mut().find(|b| {
            let first = *b.iter().next().unwrap();
            attrs.iter().all(|&a| rows[first][a] == rows[o][a])
        }) {
            Some(b) => {
                b.insert(o);
            }
            None => blocks.push(Set::from([o])),
        }
    }
    blocks
}

pub fn labels_partition(labels: &[String]) -> Vec<Set> {
    let mut map: BTreeMap<&str, usize> = BTreeMap::new();
    let mut blocks: Vec<Set> = Vec::new();
    for (o, l) in labels.iter().enumerate() {
        let next = blocks.len();
        let b = *map.entry(l).or_insert(next);
        if b == next {
            blocks.push(Set::new());
        }
        blocks[b].insert(o);
    }
    blocks
}

/// (lower, upper) by the textbook definitions.
pub fn approx(blocks: &[Set], x: &Set) -> (Set, Set) {
    let mut lower = Set::new();
    let mut upper = Set::new();
    for b in blocks {
        if b.is_subset(x) {
            lower.extend(b);
        }
        if !b.is_disjoint(x) {
            upper.extend(b);
        }
    }
    (lower, upper)
}

pub fn span(blocks: &[Set], x: &Set, n: usize, w1: f64, w2: f64) -> f64 {
    let (lower, upper) = approx(blocks, x);
    let boundary = upper.len() - lower.len();
    w1 * lower.len() as f64 / n as f64 + w2 * boundary as f64 / n as f64
}

pub fn decision_span(rows: &[Vec<String>], attrs: &[usize], d: &[Set], w1: f64, w2: f64) -> f64 {
    let blocks = partition(rows, attrs);
    d.iter()
        .map(|x| span(&blocks, x, rows.len(), w1, w2))
        .sum::<f64>()
        / d.len() as f64
}

pub fn complete_decision_span(rows: &[Vec<String>], d: &[Set], w1: f64, w2: f64) -> f64 {
    let k = rows[0].len();
    (0..k)
        .map(|a| decision_span(rows, &[a], d, w1, w2))
        .sum::<f64>()
        / k as f64
}

pub fn complete_set_span(rows: &[Vec<String>], x: &Set, w1: f64, w2: f64) -> f64 {
    let k = rows[0].len();
    (0..k)
        .map(|a| span(&partition(rows, &[a]), x, rows.len(), w1, w2))
        .sum::<f64>()
        / k as f64
}

pub fn positive(rows: &[Vec<String>], attrs: &[usize], d: &[Set]) -> Set {
    let blocks = partition(rows, attrs);
    d.iter().flat_map(|x| approx(&blocks, x).0).collect()
}

/// Reducts by definition: POS-preserving subsets with no POS-preserving proper subset.
pub fn reducts(rows: &[Vec<String>], d: &[Set]) -> Vec<Vec<usize>> {
    let k = rows[0].len();
    let full = positive(rows, &(0..k).collect::<Vec<_>>(), d);
    let subsets: Vec<Vec<usize>> = (1u32..(1 << k))
        .map(|m| (0..k).filter(|a| m & (1 << a) != 0).collect())
        .collect();
    let preserving: Vec<&Vec<usize>> = subsets
        .iter()
        .filter(|s| positive(rows, s, d) == full)
        .collect();
    let mut out: Vec<Vec<usize>> = preserving
        .iter()
        .filter(|s| {
            !preserving
                .iter()
                .any(|t| t.len() < s.len() && t.iter().all(|a| s.contains(a)))
        })
        .map(|s| (*s).clone())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Best value over all subsets of `0..n` that contain `required` and respect `cap`.
pub fn brute_force_max(
    n: usize,
    required: &Set,
    cap: usize,
    f: impl Fn(&Set) -> f64,
) -> (f64, u64) {
    let mut best = f64::NEG_INFINITY;
    let mut count = 0;
    for m in 0u64..(1 << n) {
        let x: Set = (0..n).filter(|i| m & (1 << i) != 0).collect();
        if !required.is_subset(&x) || x.len() > cap {
            continue;
        }
        count += 1;
        best = best.max(f(&x));
    }
    (best, count)
}

/// Best complete decision span over every surjective assignment into `r` classes (all r^n).
pub fn brute_force_labeling(rows: &[Vec<String>], r: usize, w1: f64, w2: f64) -> f64 {
    let n = rows.len();
    let mut best = f64::NEG_INFINITY;
    let mut labels = vec![0usize; n];
    loop {
        let used: Set = labels.iter().copied().collect();
        if used.len() == r {
            let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
            best = best.max(complete_decision_span(
                rows,
                &labels_partition(&names),
                w1,
                w2,
            ));
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            labels[i] += 1;
            if labels[i] < r {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
    }
}

/// Random CSV decision table with `n` objects, `k` attributes over `alphabet`
/// symbols and a decision column using exactly `classes` labels.
pub fn random_table_csv(
    rng: &mut ChaCha8Rng,
    n: usize,
    k: usize,
    alphabet: usize,
    classes: usize,
) -> String {
    let mut labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..classes)).collect();
    // force every class to appear
    let mut slots: Vec<usize> = (0..n).collect();
    for c in 0..classes.min(n) {
        let pick = rng.gen_range(0..slots.len());
        labels[slots.swap_remove(pick)] = c;
    }
    let mut text = String::from("id");
    for a in 0..k {
        text.push_str(&format!(",a{}", a + 1));
    }
    text.push_str(",D\n");
    for (o, label) in labels.iter().enumerate() {
        text.push_str(&format!("o{}", o + 1));
        for _ in 0..k {
            text.push_str(&format!(
                ",{}",
                (b'x' + rng.gen_range(0..alphabet) as u8) as char
            ));
        }
        text.push_str(&format!(",T{}\n", label + 1));
    }
    text
}
