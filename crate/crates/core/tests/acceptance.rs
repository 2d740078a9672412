//! Acceptance criteria. Run with `cargo test --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

mod common;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use roughspan::search::{learn_decision, Method, SearchConfig, SetObjective};
use roughspan::span::{attribute_decision_spans, attribute_set_spans};
use roughspan::{
    approximate, compare_decisions, complete_decision_span, complete_set_span, decision_partition,
    decision_span, enumerate_reducts, indiscernibility, parse_table, spanning_search,
    weighted_decision_span, AttributeSubset, ClassWeights, DecisionTable, ObjectSet, SpanWeights,
};

struct Criterion {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Self {
            id,
            title,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        println!("    [{}] {what}", if ok { "ok" } else { "FAIL" });
        if !ok {
            self.failures.push(what);
        }
    }

    fn close(&mut self, what: &str, got: f64, expected: f64, tol: f64) {
        self.check(
            (got - expected).abs() <= tol,
            format!("{what}: got {got:.6}, expected {expected} ± {tol:e}"),
        );
    }

    fn finish(self) {
        let status = if self.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!("criterion {} [{status}] {}", self.id, self.title);
        assert!(
            self.failures.is_empty(),
            "criterion {} failed: {:?}",
            self.id,
            self.failures
        );
    }
}

fn w37() -> SpanWeights {
    SpanWeights::new(0.3, 0.7).unwrap()
}

fn object_blocks(table: &DecisionTable, blocks: &[&[&str]]) -> Vec<Vec<usize>> {
    blocks
        .iter()
        .map(|b| b.iter().map(|o| table.object_index(o).unwrap()).collect())
        .collect()
}

#[test]
fn criterion_1_indiscernibility_regression() {
    let mut c = Criterion::new(1, "Table 1 single-attribute indiscernibility partitions");
    let t = common::table1();
    let expected: [&[&[&str]]; 5] = [
        &[&["o1", "o2", "o5", "o6"], &["o3", "o4"]],
        &[&["o1", "o3"], &["o2"], &["o4", "o5", "o6"]],
        &[&["o1", "o6"], &["o2", "o3", "o4", "o5"]],
        &[&["o1", "o2", "o3"], &["o4", "o5", "o6"]],
        &[&["o1", "o2", "o3", "o5", "o6"], &["o4"]],
    ];
    for (a, blocks) in expected.iter().enumerate() {
        let got = indiscernibility(&t, &AttributeSubset::single(a))
            .unwrap()
            .to_vecs();
        c.check(
            got == object_blocks(&t, blocks),
            format!("U/a{} = {blocks:?}", a + 1),
        );
    }
    c.finish();
}

#[test]
fn criterion_2_decision_span_d1() {
    let mut c = Criterion::new(
        2,
        "decision span regression for D1 = {{o1,o2},{o3,o4,o5,o6}}",
    );
    let t = common::table1();
    let d1 = decision_partition(&t, "D1").unwrap().partition;
    c.check(
        d1.to_vecs() == object_blocks(&t, &[&["o1", "o2"], &["o3", "o4", "o5", "o6"]]),
        "U/D1 blocks",
    );
    let all = AttributeSubset::all(&t);
    let terms = attribute_decision_spans(&t, &all, &d1, w37()).unwrap();
    for (a, (got, expected)) in terms
        .iter()
        .zip([0.5166, 0.3583, 0.7000, 0.4250, 0.6083])
        .enumerate()
    {
        c.close(&format!("Δ_a{}", a + 1), *got, expected, 1e-3);
    }
    let complete = complete_decision_span(&t, &all, &d1, w37()).unwrap();
    c.close("complete span", complete, 0.5216, 1e-3);
    c.finish();
}

#[test]
fn criterion_3_decision_span_d() {
    let mut c = Criterion::new(
        3,
        "decision span regression for D = {{o1,o3,o4},{o2,o5,o6}}",
    );
    let t = common::table1();
    let d = decision_partition(&t, "D").unwrap().partition;
    c.check(
        d.to_vecs() == object_blocks(&t, &[&["o1", "o3", "o4"], &["o2", "o5", "o6"]]),
        "U/D blocks",
    );
    let all = AttributeSubset::all(&t);
    let terms = attribute_decision_spans(&t, &all, &d, w37()).unwrap();
    for (a, (got, expected)) in terms
        .iter()
        .zip([0.5166, 0.4250, 0.7000, 0.7000, 0.6417])
        .enumerate()
    {
        c.close(&format!("Δ_a{}", a + 1), *got, expected, 1e-3);
    }
    let sum: f64 = terms.iter().sum();
    c.close("per-attribute sum", sum, 2.9833, 1e-3);
    let complete = complete_decision_span(&t, &all, &d, w37()).unwrap();
    c.close("complete span (sum / |P|)", complete, 0.59666, 1e-4);
    c.check(terms.len() == 5, "divisor |P| = 5");
    println!(
        "    note: sum / 4 = {:.4} (the printed 0.7458 is 2.9833 / 4 = {:.4})",
        sum / 4.0,
        2.9833 / 4.0
    );
    let ranked = compare_decisions(&t, &["D1", "D"], w37(), &[]).unwrap();
    c.check(
        ranked[0].0 == "D" && ranked[0].1 > ranked[1].1,
        format!("D ranked above D1: {ranked:?}"),
    );
    c.finish();
}

#[test]
fn criterion_4_set_span() {
    let mut c = Criterion::new(4, "set span regression for X = {o1,o2} and Y = {o1,o3,o4}");
    let t = common::table1();
    let cases: [(&[&str], [f64; 5], f64); 2] = [
        (
            &["o1", "o2"],
            [0.4666, 0.3333, 0.7000, 0.3500, 0.5833],
            0.4859,
        ),
        (
            &["o1", "o3", "o4"],
            [0.5666, 0.4500, 0.7000, 0.7000, 0.7000],
            0.6233,
        ),
    ];
    for (members, expected, complete_expected) in cases {
        let x = t.object_set(members).unwrap();
        let terms = attribute_set_spans(&t, &x, w37()).unwrap();
        for (a, (got, expected)) in terms.iter().zip(expected).enumerate() {
            c.close(
                &format!("δ_a{} of {members:?}", a + 1),
                *got,
                expected,
                1e-3,
            );
        }
        let complete = complete_set_span(&t, &x, w37()).unwrap();
        c.close(
            &format!("complete span of {members:?}"),
            complete,
            complete_expected,
            1e-3,
        );
    }
    c.finish();
}

#[test]
fn criterion_5_reduct_invariance() {
    let mut c = Criterion::new(
        5,
        "reduct invariance of decision span over 200 random tables",
    );
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0005);
    let mut pairs = 0;
    let mut violations = Vec::new();
    for case in 0..200 {
        let classes = rng.gen_range(2..=3);
        let n = rng.gen_range(classes..=8);
        let k = rng.gen_range(1..=4);
        let text = common::random_table_csv(&mut rng, n, k, 3, classes);
        let t = parse_table(&text, &["D"]).unwrap();
        let d = decision_partition(&t, "D").unwrap().partition;
        let reducts = enumerate_reducts(&t, &d).unwrap();
        let spans: Vec<f64> = reducts
            .iter()
            .map(|r| decision_span(&t, r, &d, w37()).unwrap())
            .collect();
        for i in 0..spans.len() {
            for j in i + 1..spans.len() {
                pairs += 1;
                if (spans[i] - spans[j]).abs() > 1e-12 {
                    violations.push(format!(
                        "case {case} ({classes} classes): {:?} -> {:.6} vs {:?} -> {:.6}\n{text}",
                        reducts[i].indices(),
                        spans[i],
                        reducts[j].indices(),
                        spans[j]
                    ));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    for v in &violations {
        println!("    violation: {v}");
    }
    c.check(
        violations.is_empty(),
        format!(
            "{pairs} reduct pairs compared, {} differ by more than 1e-12",
            violations.len()
        ),
    );
    c.check(
        elapsed.as_secs_f64() <= 10.0,
        format!("runtime {elapsed:?} <= 10 s"),
    );
    c.finish();
}

#[test]
fn criterion_6_approximation_axioms() {
    let mut c = Criterion::new(
        6,
        "approximation axioms on 1000 random (partition, X) pairs",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0006);
    let mut violations = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=16);
        let k = rng.gen_range(2..=4);
        let text = common::random_table_csv(&mut rng, n, k, 3, 1);
        let t = parse_table(&text, &["D"]).unwrap();
        let x = ObjectSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5))).unwrap();
        let first = rng.gen_range(0..k);
        let p_attrs = AttributeSubset::single(first);
        let q_attrs = AttributeSubset::new(k, [first, rng.gen_range(0..k)]).unwrap();
        let p = indiscernibility(&t, &p_attrs).unwrap();
        let q = indiscernibility(&t, &q_attrs).unwrap();
        let ap = approximate(&p, &x).unwrap();
        let aq = approximate(&q, &x).unwrap();
        let dual = approximate(&p, &x.complement()).unwrap();
        let ok = ap.lower.is_subset(&x)
            && x.is_subset(&ap.upper)
            && ap.boundary == ap.upper.difference(&ap.lower)
            && ap.boundary == dual.boundary
            && ap.lower.is_subset(&aq.lower)
            && aq.upper.is_subset(&ap.upper)
            && q.refines(&p);
        if !ok {
            violations += 1;
        }
    }
    c.check(violations == 0, format!("{violations} violations"));
    c.finish();
}

#[test]
fn criterion_7_oracle_equivalence() {
    let mut c = Criterion::new(7, "local and pso searches reach the exact optimum");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0007);
    let instances = 50;
    let mut hits = [0usize; 2];
    let mut exceeded = 0;
    let mut reproducible = true;
    for case in 0..instances {
        let n = rng.gen_range(4..=10);
        let k = rng.gen_range(1..=4);
        let text = common::random_table_csv(&mut rng, n, k, 3, 1);
        let t = parse_table(&text, &["D"]).unwrap();
        let w1: f64 = rng.gen_range(0.0..=1.0);
        let objective = SetObjective::complete(&t, SpanWeights::new(w1, 1.0 - w1).unwrap());
        let mut base = SearchConfig::default().with_seed(case as u64);
        if case % 2 == 1 {
            let cap = rng.gen_range(1..=n);
            base = base
                .with_max_size(cap)
                .with_required((0..n).filter(|_| rng.gen_bool(0.15)).take(cap));
        }
        let exact = spanning_search(
            &objective,
            &SearchConfig {
                method: Method::Exact,
                ..base.clone()
            },
        )
        .unwrap();
        let heuristics = [
            SearchConfig {
                method: Method::Local,
                iterations: 500,
                ..base.clone()
            },
            SearchConfig {
                method: Method::Pso,
                iterations: 200,
                swarm_size: 30,
                ..base.clone()
            },
        ];
        for (slot, config) in heuristics.iter().enumerate() {
            let result = spanning_search(&objective, config).unwrap();
            if (result.span - exact.span).abs() <= 1e-12 {
                hits[slot] += 1;
            }
            if result.span > exact.span + 1e-12 {
                exceeded += 1;
            }
            if case < 10 {
                let again = spanning_search(&objective, config).unwrap();
                reproducible &= serde_json::to_string(&result).unwrap()
                    == serde_json::to_string(&again).unwrap();
            }
        }
    }
    for (slot, name) in ["local", "pso"].iter().enumerate() {
        let rate = hits[slot] as f64 / instances as f64;
        c.check(
            rate >= 0.9,
            format!(
                "{name} attains the optimum in {}/{instances} runs",
                hits[slot]
            ),
        );
    }
    c.check(
        exceeded == 0,
        format!("{exceeded} heuristic runs exceed the exact optimum"),
    );
    c.check(reproducible, "repeated runs serialize identically");

    let t = common::table1();
    let exact = learn_decision(&t, 2, w37(), &SearchConfig::new(Method::Exact)).unwrap();
    let local = learn_decision(
        &t,
        2,
        w37(),
        &SearchConfig::new(Method::Local)
            .with_iterations(500)
            .with_seed(1),
    )
    .unwrap();
    c.check(
        (exact.span - local.span).abs() <= 1e-12,
        format!(
            "learn_decision on Table 1: exact {:.6}, local {:.6}",
            exact.span, local.span
        ),
    );
    c.finish();
}

#[test]
fn criterion_8_uniform_weight_reduction() {
    let mut c = Criterion::new(8, "uniform class weights reduce to the decision span");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0008);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let classes = rng.gen_range(2..=4);
        let n = rng.gen_range(classes..=12);
        let k = rng.gen_range(1..=5);
        let text = common::random_table_csv(&mut rng, n, k, 3, classes);
        let t = parse_table(&text, &["D"]).unwrap();
        let d = decision_partition(&t, "D").unwrap();
        let attrs = AttributeSubset::new(k, (0..k).filter(|_| rng.gen_bool(0.6))).unwrap();
        let attrs = if attrs.is_empty() {
            AttributeSubset::single(0)
        } else {
            attrs
        };
        let w1: f64 = rng.gen_range(0.0..=1.0);
        let w = SpanWeights::new(w1, 1.0 - w1).unwrap();
        let u = ClassWeights::uniform(&d.labels).unwrap();
        let weighted = weighted_decision_span(&t, &attrs, &d, w, &u).unwrap();
        let plain = decision_span(&t, &attrs, &d.partition, w).unwrap();
        worst = worst.max((weighted - plain).abs());
    }
    c.check(
        worst <= 1e-12,
        format!("max |weighted - plain| = {worst:e}"),
    );
    c.finish();
}

#[test]
fn criterion_9_exhaustive_count() {
    let mut c = Criterion::new(9, "exact search evaluates exactly 2^n subsets");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0009);
    for n in [4, 6, 8] {
        let text = common::random_table_csv(&mut rng, n, 3, 3, 1);
        let t = parse_table(&text, &["D"]).unwrap();
        let objective = SetObjective::complete(&t, w37());
        let result = spanning_search(&objective, &SearchConfig::new(Method::Exact)).unwrap();
        c.check(
            result.evaluations == 1 << n,
            format!("n = {n}: {} evaluations", result.evaluations),
        );
        let oracle = common::brute_force_max(n, &Default::default(), n, |x| {
            common::complete_set_span(&common::rows(&t), x, 0.3, 0.7)
        });
        c.check(
            (result.span - oracle.0).abs() <= 1e-12,
            format!("n = {n}: optimum matches brute force"),
        );
    }
    c.finish();
}
