//! Acceptance suite: one test per shipping criterion, each ending with a
//! visible pass line. Every tolerance here is exact (integer or rational
//! comparison); runtime budgets are asserted with wide margins.
//!
//! Run with `cargo test -p triedge-cli --test acceptance -- --nocapture`.
//! The order-9 verification (a runtime target, not a default gate) is
//! behind `--ignored`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;
use std::time::{Duration, Instant};
use triedge::compress::{
    compress_with_trace, is_compressed, meets_clone_share_threshold, CompressionCheck,
};
use triedge::enumerate::class_counts_by_edges;
use triedge::family::{construct, g_formula, profile, Triple};
use triedge::graph::{classify, Graph};
use triedge::search::{verify_range, SearchOptions};
use triedge::weighted::{
    exchange_edges_for_t, exchange_t_for_edges, reduce_to_triple_free,
    round_to_family, weighted_profile, Weight, WeightedGraph,
};

fn pass(criterion: &str) {
    println!("acceptance {criterion}: PASS");
}

fn rat(n: i64) -> Weight {
    BigRational::from(BigInt::from(n))
}

fn ratio(p: i64, q: i64) -> Weight {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Family-shaped good weighted graph: clique K, u complete to K and v,
/// v adjacent to u only. Returns the graph with the rational parameters
/// (alpha, beta, gamma) and integral total n.
struct GoodInstance {
    graph: WeightedGraph,
    n: u64,
    alpha: Weight,
    beta: Weight,
    gamma: Weight,
}

fn random_good_instance(rng: &mut ChaCha8Rng) -> GoodInstance {
    let n: u64 = rng.gen_range(150..=400);
    let n_rat = rat(n as i64);
    // beta, gamma in [n/4, 7n/16]; beta >= gamma; alpha = n - beta - gamma.
    let pick = |rng: &mut ChaCha8Rng| -> Weight {
        let k = rng.gen_range(16..=28i64);
        &n_rat * ratio(k, 64)
    };
    let (mut beta, mut gamma) = (pick(rng), pick(rng));
    if gamma > beta {
        std::mem::swap(&mut beta, &mut gamma);
    }
    let alpha = &n_rat - &beta - &gamma;
    assert!(alpha > Weight::zero());
    // Split alpha into 2..=4 positive clique weights.
    let parts = rng.gen_range(2..=4usize);
    let mut clique = Vec::with_capacity(parts);
    let mut remaining = alpha.clone();
    for i in 0..parts {
        if i + 1 == parts {
            clique.push(remaining.clone());
        } else {
            let share = ratio(rng.gen_range(1..=3i64), 8);
            let w = &remaining * share;
            remaining -= &w;
            clique.push(w);
        }
    }
    let k = clique.len();
    let mut g = Graph::empty(k + 2);
    for i in 0..k {
        for j in i + 1..k {
            g.add_edge(i, j);
        }
        g.add_edge(i, k);
    }
    g.add_edge(k, k + 1);
    let mut weights = clique;
    weights.push(beta.clone());
    weights.push(gamma.clone());
    let graph = WeightedGraph::new(g, weights).unwrap();
    assert_eq!(graph.total(), n_rat);
    GoodInstance {
        graph,
        n,
        alpha,
        beta,
        gamma,
    }
}

fn assert_within(elapsed: Duration, budget: Duration, what: &str) {
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:?}, budget {budget:?}"
    );
}

/// Criterion 1: g(n, floor(n^2/4)+1) = 2*floor(n/2)+1 for 5 <= n <= 60.
#[test]
fn criterion_1_first_step_bound() {
    let t0 = Instant::now();
    for n in 5..=60usize {
        let e = (n * n / 4) as u64 + 1;
        let r = g_formula(n, e).unwrap();
        assert_eq!(r.value, 2 * (n as u64 / 2) + 1, "n = {n}");
    }
    assert_within(t0.elapsed(), Duration::from_secs(1), "criterion 1");
    pass("criterion 1 (first-step triangular bound, n = 5..60)");
}

/// Criterion 2: for every n <= 8 and every e in (floor(n^2/4), C(n,2)],
/// brute force matches the formula and every minimiser embeds into the
/// family.
#[test]
fn criterion_2_exhaustive_match_to_n8() {
    let t0 = Instant::now();
    let opts = SearchOptions { jobs: 1, max_n: 9 };
    for n in 1..=8usize {
        for report in verify_range(n, &opts).unwrap() {
            assert!(
                report.matches,
                "mismatch at n={} e={}: brute {} vs formula {}",
                report.n, report.e, report.brute_min, report.formula_value
            );
            assert!(
                report.all_minimizers_in_family,
                "minimiser outside the family at n={} e={}",
                report.n, report.e
            );
            assert!(!report.truncated);
        }
    }
    assert_within(t0.elapsed(), Duration::from_secs(120), "criterion 2");
    pass("criterion 2 (exhaustive minimiser check, n <= 8)");
}

/// Criterion 2, runtime target: n = 9 with a worker pool. Run with
/// `-- --ignored`.
#[test]
#[ignore = "runtime target: about half a minute; run with -- --ignored"]
fn criterion_2_order_nine_target() {
    let t0 = Instant::now();
    let opts = SearchOptions { jobs: 0, max_n: 9 };
    let reports = verify_range(9, &opts).unwrap();
    assert_eq!(reports.len(), 16);
    for report in &reports {
        assert!(report.matches, "mismatch at e={}", report.e);
        assert!(report.all_minimizers_in_family);
    }
    assert_within(t0.elapsed(), Duration::from_secs(30 * 60), "criterion 2 (n=9)");
    pass("criterion 2 runtime target (n = 9)");
}

/// Criterion 3: the closed-form profile equals full classification for all
/// 455 triples with a+b+c <= 12, degeneracies included.
#[test]
fn criterion_3_family_closed_forms() {
    let t0 = Instant::now();
    let mut checked = 0usize;
    for n in 0..=12usize {
        for a in 0..=n {
            for b in 0..=(n - a) {
                let t = Triple { a, b, c: n - a - b };
                let p = profile(&t);
                let cl = classify(&construct(&t));
                assert_eq!(p.edges as usize, cl.e(), "edges at {t}");
                assert_eq!(p.non_triangular as usize, cl.t(), "non-triangular at {t}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 455);
    assert_within(t0.elapsed(), Duration::from_secs(5), "criterion 3");
    pass("criterion 3 (family closed forms, 455 triples)");
}

/// Criterion 4: the reduction loop on 1000 seeded unit-weight graphs keeps
/// the total weight and never decreases e or t, in exact rationals.
#[test]
fn criterion_4_weighted_reduction_suite() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for trial in 0..1000usize {
        let n = 3 + trial % 10; // 3..=12
        let p = [0.1, 0.25, 0.5, 0.75, 0.9][trial % 5];
        let g = random_graph(&mut rng, n, p);
        let wg = WeightedGraph::unit(g);
        let initial = weighted_profile(&wg);
        let (reduced, trace) = reduce_to_triple_free(&wg);
        assert!(trace.len() <= n.saturating_sub(2), "trial {trial}");
        let mut prev_e = initial.e.clone();
        let mut prev_t = initial.t.clone();
        for step in &trace {
            assert!(step.e >= prev_e, "e decreased in trial {trial}");
            assert!(step.t >= prev_t, "t decreased in trial {trial}");
            prev_e = step.e.clone();
            prev_t = step.t.clone();
        }
        let p_final = weighted_profile(&reduced);
        assert_eq!(p_final.total, initial.total, "weight lost in trial {trial}");
        assert_eq!(p_final.e, prev_e);
        assert_eq!(p_final.t, prev_t);
    }
    assert_within(t0.elapsed(), Duration::from_secs(30), "criterion 4");
    pass("criterion 4 (weighted reduction suite, 1000 graphs)");
}

/// Criterion 5: rounding 500 seeded good weighted graphs with t > 5n
/// satisfies the three guarantees exactly.
#[test]
fn criterion_5_rounding() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for trial in 0..500usize {
        let inst = random_good_instance(&mut rng);
        assert!(&inst.beta * &inst.gamma > rat(5 * inst.n as i64), "trial {trial}");
        let triple = round_to_family(&inst.graph).unwrap();
        assert_eq!(triple.n() as u64, inst.n, "order at trial {trial}");
        let p = profile(&triple);
        let n_rat = rat(inst.n as i64);
        let needed = &inst.alpha * &inst.alpha / rat(2) + (&n_rat - &inst.beta) * &inst.beta;
        assert!(
            BigRational::from(BigInt::from(p.edges)) >= needed,
            "edge inequality at trial {trial}"
        );
        let bc = rat((triple.b * triple.c) as i64);
        assert!(
            bc >= &inst.beta * &inst.gamma - rat(5) * &n_rat,
            "bc inequality at trial {trial}"
        );
    }
    assert_within(t0.elapsed(), Duration::from_secs(10), "criterion 5");
    pass("criterion 5 (rounding, 500 good instances)");
}

/// Criterion 6: both exchange moves satisfy their exact post-conditions on
/// 200 seeded good instances.
#[test]
fn criterion_6_exchange_moves() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for trial in 0..200usize {
        let inst = random_good_instance(&mut rng);
        let n_rat = rat(inst.n as i64);
        let before = weighted_profile(&inst.graph);

        // Edges for t: x <= alpha*n/2 keeps the precondition.
        let x = &inst.alpha * &n_rat / rat(2) * ratio(rng.gen_range(1..=8), 8);
        let moved = exchange_edges_for_t(&inst.graph, &x).unwrap();
        let after = weighted_profile(&moved);
        assert!(after.e >= &before.e - &x, "e-loss exceeded x at trial {trial}");
        assert_eq!(
            after.t,
            (&inst.beta + &x / &n_rat) * &inst.gamma,
            "t formula (edges-for-t) at trial {trial}"
        );

        // T for edges: x <= gamma*n keeps the precondition.
        let x = &inst.gamma * &n_rat * ratio(rng.gen_range(1..=8), 8);
        let moved = exchange_t_for_edges(&inst.graph, &x).unwrap();
        let after = weighted_profile(&moved);
        let half_shift = &x / (rat(2) * &n_rat);
        assert_eq!(
            after.t,
            &inst.beta * (&inst.gamma - &half_shift),
            "t formula (t-for-edges) at trial {trial}"
        );
        assert!(
            &after.e - &before.e >= &half_shift * &inst.alpha / rat(2),
            "e-gain below (x/2n)(alpha/2) at trial {trial}"
        );
    }
    assert_within(t0.elapsed(), Duration::from_secs(5), "criterion 6");
    pass("criterion 6 (exchange moves, 200 instances)");
}

/// Criterion 7: compression on 200 seeded graphs with n in {32, 64, 128}
/// preserves the order, never decreases e or t, certifies as compressed,
/// and every checked large independent set contains a clone class of at
/// least a fifth of its size.
#[test]
fn criterion_7_compression() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for trial in 0..200usize {
        let n = [32, 64, 128][trial % 3];
        let p = [0.03, 0.08, 0.15, 0.3, 0.5, 0.8][trial % 6];
        let g = random_graph(&mut rng, n, p);
        let before = classify(&g);
        let out = compress_with_trace(&g);
        assert_eq!(out.graph.n(), n, "order changed at trial {trial}");
        let after = classify(&out.graph);
        assert!(after.e() >= before.e(), "e decreased at trial {trial}");
        assert!(after.t() >= before.t(), "t decreased at trial {trial}");
        match is_compressed(&out.graph) {
            CompressionCheck::Compressed(cert) => {
                for set in &cert.checked_sets {
                    if meets_clone_share_threshold(set.vertices.len(), n) {
                        assert!(
                            5 * set.max_class_size >= set.vertices.len(),
                            "clone share violated at trial {trial}"
                        );
                    }
                }
            }
            CompressionCheck::Violation(v) => {
                panic!("not compressed at trial {trial}: {v:?}");
            }
        }
    }
    assert_within(t0.elapsed(), Duration::from_secs(120), "criterion 7");
    pass("criterion 7 (compression, 200 graphs)");
}

/// Independent canonical form: minimum encoding over all n! relabelings.
mod brute {
    use triedge::graph::Graph;

    pub fn encoding(g: &Graph, perm: &[usize]) -> u64 {
        let n = g.n();
        let mut inv = vec![0usize; n];
        for (v, &pos) in perm.iter().enumerate() {
            inv[pos] = v;
        }
        let mut bits = 0u64;
        for j in 1..n {
            for i in 0..j {
                bits <<= 1;
                if g.has_edge(inv[i], inv[j]) {
                    bits |= 1;
                }
            }
        }
        bits
    }

    pub fn min_encoding(g: &Graph) -> u64 {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        heap(&mut perm, n, g, &mut best);
        best
    }

    fn heap(perm: &mut Vec<usize>, k: usize, g: &Graph, best: &mut u64) {
        if k <= 1 {
            let e = encoding(g, perm);
            if e < *best {
                *best = e;
            }
            return;
        }
        for i in 0..k {
            heap(perm, k - 1, g, best);
            if k.is_multiple_of(2) {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
    }
}

/// Criterion 8: class totals match the known counts, cross-validated at
/// n <= 6 by a brute-force canonical pass over all labeled graphs.
#[test]
fn criterion_8_enumeration_counts() {
    let t0 = Instant::now();
    let expected: [(usize, u64); 5] = [(4, 11), (5, 34), (6, 156), (7, 1044), (8, 12346)];
    for (n, want) in expected {
        let total: u64 = class_counts_by_edges(n, 0).iter().sum();
        assert_eq!(total, want, "n = {n}");
    }
    // Independent pass: canonical forms by minimum over all relabelings.
    for n in 1..=6usize {
        let pairs = n * (n - 1) / 2;
        let mut per_edges: Vec<std::collections::HashSet<u64>> = vec![Default::default(); pairs + 1];
        for mask in 0u64..(1 << pairs) {
            let mut g = Graph::empty(n);
            let mut idx = 0;
            for j in 1..n {
                for i in 0..j {
                    if (mask >> idx) & 1 == 1 {
                        g.add_edge(i, j);
                    }
                    idx += 1;
                }
            }
            per_edges[g.edge_count()].insert(brute::min_encoding(&g));
        }
        let counts = class_counts_by_edges(n, 1);
        let brute_counts: Vec<u64> = per_edges.iter().map(|s| s.len() as u64).collect();
        assert_eq!(counts, brute_counts, "per-edge-count classes at n = {n}");
    }
    assert_within(t0.elapsed(), Duration::from_secs(60), "criterion 8");
    pass("criterion 8 (enumeration counts with brute-force cross-check)");
}

/// Criterion 9: verification output is byte-identical across repeated runs
/// and worker counts.
#[test]
fn criterion_9_determinism() {
    let run = |jobs: &str| -> Vec<u8> {
        let out = Command::new(env!("CARGO_BIN_EXE_triedge"))
            .args(["verify", "--n", "7", "--jobs", jobs])
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        out.stdout
    };
    let first = run("1");
    let second = run("1");
    assert_eq!(first, second, "repeated runs differ");
    let parallel = run("8");
    assert_eq!(first, parallel, "--jobs 1 and --jobs 8 differ");
    let auto = run("0");
    assert_eq!(first, auto, "--jobs 0 differs");
    pass("criterion 9 (byte-identical verification output)");
}
