use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    set_is_better, Constraints, Method, SearchConfig, SearchResult, SetObjective, Solution,
};
use crate::error::Result;
use crate::object_set::ObjectSet;

struct Particle {
    position: ObjectSet,
    velocity: Vec<f64>,
    best: ObjectSet,
    best_span: f64,
}

/// Generator for one particle in one generation. Streams never overlap, so
/// particles can be updated in any order without changing the outcome.
fn particle_rng(seed: u64, generation: usize, particle: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((generation as u64) << 32) | particle as u64);
    rng
}

fn sigmoid(v: f64) -> f64 {
    1.0 / (1.0 + (-v).exp())
}

/// Forces the required objects in, then drops the object whose removal costs
/// the least span until the size cap holds. Returns the repaired set, its span
/// and the number of objective calls spent.
fn repair(
    objective: &SetObjective,
    constraints: &Constraints,
    set: &ObjectSet,
) -> (ObjectSet, f64, u64) {
    let mut set = set.union(&constraints.required);
    let mut evaluations = 0;
    while set.len() > constraints.cap {
        let mut drop: Option<(f64, usize)> = None;
        for i in set.difference(&constraints.required).iter() {
            let mut trial = set.clone();
            trial.remove(i);
            let value = objective.evaluate(&trial);
            evaluations += 1;
            if drop.is_none_or(|(best, _)| value > best) {
                drop = Some((value, i));
            }
        }
        let (_, i) = drop.expect("cap is at least the required size");
        set.remove(i);
    }
    let value = objective.evaluate(&set);
    (set, value, evaluations + 1)
}

/// Binary particle swarm over inclusion bitmasks.
///
/// Generation 0 samples and repairs the initial swarm; each further generation
/// applies the inertia/cognitive/social velocity update and resamples bits
/// through a sigmoid. The best feasible particle ever seen is returned.
pub fn spanning_search_pso(
    objective: &SetObjective,
    config: &SearchConfig,
) -> Result<SearchResult> {
    config.check_heuristic()?;
    let n = objective.universe();
    let constraints = Constraints::new(n, config)?;
    let params = config.pso;
    let clamp = params.velocity_clamp;

    let initial: Vec<(Particle, u64)> = (0..config.swarm_size)
        .into_par_iter()
        .map(|p| {
            let mut rng = particle_rng(config.seed, 0, p);
            let mut raw = ObjectSet::empty(n);
            let mut velocity = Vec::with_capacity(n);
            for i in 0..n {
                if rng.gen_bool(0.5) {
                    raw.insert(i);
                }
                velocity.push(rng.gen_range(-1.0..=1.0));
            }
            let (position, span, evaluations) = repair(objective, &constraints, &raw);
            let particle = Particle {
                best: position.clone(),
                position,
                velocity,
                best_span: span,
            };
            (particle, evaluations)
        })
        .collect();

    let mut evaluations: u64 = initial.iter().map(|(_, e)| e).sum();
    let mut swarm: Vec<Particle> = initial.into_iter().map(|(p, _)| p).collect();
    let (mut global_span, mut global) = leader(&swarm, None);

    for generation in 1..config.iterations {
        let spent: u64 = swarm
            .par_iter_mut()
            .enumerate()
            .map(|(p, particle)| {
                let mut rng = particle_rng(config.seed, generation, p);
                let mut raw = ObjectSet::empty(n);
                for i in 0..n {
                    let x = f64::from(u8::from(particle.position.contains(i)));
                    let own = f64::from(u8::from(particle.best.contains(i)));
                    let swarm_best = f64::from(u8::from(global.contains(i)));
                    let r1: f64 = rng.gen();
                    let r2: f64 = rng.gen();
                    let v = params.inertia * particle.velocity[i]
                        + params.cognitive * r1 * (own - x)
                        + params.social * r2 * (swarm_best - x);
                    let v = v.clamp(-clamp, clamp);
                    particle.velocity[i] = v;
                    if rng.gen::<f64>() < sigmoid(v) {
                        raw.insert(i);
                    }
                }
                let (position, span, evaluations) = repair(objective, &constraints, &raw);
                if set_is_better(span, &position, particle.best_span, &particle.best) {
                    particle.best = position.clone();
                    particle.best_span = span;
                }
                particle.position = position;
                evaluations
            })
            .sum();
        evaluations += spent;
        (global_span, global) = leader(&swarm, Some((global_span, global)));
    }

    debug_assert!(constraints.admits(&global));
    Ok(SearchResult {
        best: Solution::Set(global),
        span: global_span,
        evaluations,
        method: Method::Pso,
        seed: config.seed,
        optimal: false,
    })
}

/// Best personal best in particle order, seeded with the previous leader.
fn leader(swarm: &[Particle], previous: Option<(f64, ObjectSet)>) -> (f64, ObjectSet) {
    let mut best = previous;
    for particle in swarm {
        if best
            .as_ref()
            .is_none_or(|(b, bs)| set_is_better(particle.best_span, &particle.best, *b, bs))
        {
            best = Some((particle.best_span, particle.best.clone()));
        }
    }
    best.expect("swarm is non-empty")
}
