use rayon::prelude::*;

use super::{
    set_is_better, Constraints, Method, SearchConfig, SearchResult, SetObjective, Solution,
};
use crate::error::{Error, Result};
use crate::object_set::ObjectSet;

/// Largest universe the exhaustive searcher will enumerate.
pub const EXACT_UNIVERSE_CAP: usize = 24;

const CHUNK: u64 = 1 << 12;

/// Scatters the low bits of `index` into the set bits of `mask`, lowest first.
fn deposit(mut index: u64, mask: u64) -> u64 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 && index != 0 {
        let bit = m & m.wrapping_neg();
        if index & 1 == 1 {
            out |= bit;
        }
        index >>= 1;
        m &= m - 1;
    }
    out
}

/// Exhaustive search over every feasible subset.
///
/// Candidates are enumerated in fixed-size chunks evaluated in parallel; the
/// chunk winners are merged in chunk order, so the answer does not depend on
/// the worker count.
pub fn spanning_search_exact(
    objective: &SetObjective,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let n = objective.universe();
    if n > EXACT_UNIVERSE_CAP {
        return Err(Error::BudgetExceeded(format!(
            "exact search enumerates 2^|U| subsets and is capped at {EXACT_UNIVERSE_CAP} objects, got {n}"
        )));
    }
    let constraints = Constraints::new(n, config)?;
    let required = constraints.required.mask();
    let free = ObjectSet::full(n).mask() & !required;
    let total: u64 = 1 << free.count_ones();
    let chunks = total.div_ceil(CHUNK);

    let winners: Vec<(Option<(f64, ObjectSet)>, u64)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut best: Option<(f64, ObjectSet)> = None;
            let mut evaluations = 0u64;
            for index in chunk * CHUNK..((chunk + 1) * CHUNK).min(total) {
                let mask = required | deposit(index, free);
                if mask.count_ones() as usize > constraints.cap {
                    continue;
                }
                let set = ObjectSet::from_mask(n, mask);
                let value = objective.evaluate(&set);
                evaluations += 1;
                if best
                    .as_ref()
                    .is_none_or(|(b, bs)| set_is_better(value, &set, *b, bs))
                {
                    best = Some((value, set));
                }
            }
            (best, evaluations)
        })
        .collect();

    let mut best: Option<(f64, ObjectSet)> = None;
    let mut evaluations = 0;
    for (candidate, count) in winners {
        evaluations += count;
        if let Some((value, set)) = candidate {
            if best
                .as_ref()
                .is_none_or(|(b, bs)| set_is_better(value, &set, *b, bs))
            {
                best = Some((value, set));
            }
        }
    }
    let (span, set) = best.expect("the required set itself is always feasible");
    Ok(SearchResult {
        best: Solution::Set(set),
        span,
        evaluations,
        method: Method::Exact,
        seed: config.seed,
        optimal: true,
    })
}
