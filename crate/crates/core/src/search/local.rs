use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    set_is_better, Constraints, Method, SearchConfig, SearchResult, SetObjective, Solution,
};
use crate::error::Result;
use crate::object_set::ObjectSet;

/// Random feasible start: the required objects plus a random number of free ones.
fn random_start(constraints: &Constraints, rng: &mut ChaCha8Rng) -> ObjectSet {
    let mut set = constraints.required.clone();
    let mut free: Vec<usize> = constraints.required.complement().to_vec();
    free.shuffle(rng);
    let room = (constraints.cap - set.len()).min(free.len());
    let take = rng.gen_range(0..=room);
    for &i in &free[..take] {
        set.insert(i);
    }
    set
}

/// Every feasible set one add, drop or swap away from `set`.
///
/// Swaps are only generated when the size cap is binding.
fn neighbours(constraints: &Constraints, set: &ObjectSet) -> Vec<ObjectSet> {
    let inside: Vec<usize> = set.difference(&constraints.required).to_vec();
    let outside: Vec<usize> = set.complement().to_vec();
    let mut out = Vec::new();
    if set.len() < constraints.cap {
        for &i in &outside {
            let mut next = set.clone();
            next.insert(i);
            out.push(next);
        }
    }
    for &i in &inside {
        let mut next = set.clone();
        next.remove(i);
        out.push(next);
    }
    if set.len() == constraints.cap {
        for &i in &inside {
            for &j in &outside {
                let mut next = set.clone();
                next.remove(i);
                next.insert(j);
                out.push(next);
            }
        }
    }
    out
}

/// Seeded steepest-ascent hill climbing with random restarts.
///
/// `config.iterations` bounds the number of neighbourhood scans across all
/// restarts; a new restart begins whenever a local optimum is reached.
pub fn spanning_search_local(
    objective: &SetObjective,
    config: &SearchConfig,
) -> Result<SearchResult> {
    config.check_heuristic()?;
    let constraints = Constraints::new(objective.universe(), config)?;
    let mut rng = config.rng();
    let mut evaluations = 0u64;
    let mut best: Option<(f64, ObjectSet)> = None;
    let mut steps = 0;

    while steps < config.iterations {
        let mut current = random_start(&constraints, &mut rng);
        let mut current_span = objective.evaluate(&current);
        evaluations += 1;
        while steps < config.iterations {
            steps += 1;
            let mut step: Option<(f64, ObjectSet)> = None;
            for candidate in neighbours(&constraints, &current) {
                let value = objective.evaluate(&candidate);
                evaluations += 1;
                if step
                    .as_ref()
                    .is_none_or(|(b, bs)| set_is_better(value, &candidate, *b, bs))
                {
                    step = Some((value, candidate));
                }
            }
            match step {
                Some((value, candidate))
                    if set_is_better(value, &candidate, current_span, &current) =>
                {
                    current = candidate;
                    current_span = value;
                }
                _ => break,
            }
        }
        if best
            .as_ref()
            .is_none_or(|(b, bs)| set_is_better(current_span, &current, *b, bs))
        {
            best = Some((current_span, current));
        }
    }

    let (span, set) = best.expect("at least one restart runs");
    debug_assert!(constraints.admits(&set));
    Ok(SearchResult {
        best: Solution::Set(set),
        span,
        evaluations,
        method: Method::Local,
        seed: config.seed,
        optimal: false,
    })
}
