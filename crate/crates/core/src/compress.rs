//! Graph compression: transform any graph into a compressed one without
//! decreasing e or t.
//!
//! A graph on n vertices is *compressed* when every independent set splits
//! into at most 3·log2(n) clone classes of which at most four exceed size
//!,3·n^(1/3), and the triangular vertices induce a clique sharing one
//! outside neighbourhood. The procedure works on an integer-weighted view
//! (a vertex of weight w stands for a set of w clones), repeatedly merging
//! equal-degree-sum subsets of large independent sets and draining heavy
//! independent quintuples, then expands the weights back to clone sets and
//! normalises the triangular clique.
//!
//! All threshold comparisons are exact integer tests: `s > 3·n^(1/3)` is
//! `s^3 > 27n` and `k > 3·log2(n)` is `2^k > n^3`.

use crate::bitset::Bitset;
use crate::graph::{classify, clone_partition, non_triangular_adjacency, Graph};
use std::collections::HashMap;

/// Exact test for `count > 3*log2(n)`.
fn exceeds_log_bound(count: usize, n: usize) -> bool {
    if n <= 1 {
        // Degenerate orders: allow a single clone class.
        return count > 1;
    }
    if count >= 127 {
        return true;
    }
    (1u128 << count) > (n as u128).pow(3)
}

/// Exact test for `w > 3*n^(1/3)`.
fn exceeds_cbrt_bound(w: u64, n: usize) -> bool {
    (w as u128).pow(3) > 27 * (n as u128)
}

/// ceil(3*n^(1/3)): the smallest q with q^3 >= 27n.
fn quintuple_budget(n: usize) -> u64 {
    let target = 27u128 * n as u128;
    let mut q = 1u128;
    while q * q * q < target {
        q += 1;
    }
    q as u64
}

/// Exact test for `len >= 45*n^(1/3)*log2(n)`, with ceil(log2 n) making the
/// threshold conservative for non-powers of two.
pub fn meets_clone_share_threshold(len: usize, n: usize) -> bool {
    if n <= 1 {
        return true;
    }
    let k = usize::BITS - (n - 1).leading_zeros();
    (len as u128).pow(3) >= 91125 * (n as u128) * (k as u128).pow(3)
}

/// A graph with positive integer vertex weights; weight w stands for a set
/// of w clones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntWeightedGraph {
    graph: Graph,
    weights: Vec<u64>,
}

impl IntWeightedGraph {
    pub fn new(graph: Graph, weights: Vec<u64>) -> Self {
        assert_eq!(graph.n(), weights.len());
        let keep: Vec<usize> = (0..graph.n()).filter(|&v| weights[v] > 0).collect();
        if keep.len() == graph.n() {
            IntWeightedGraph { graph, weights }
        } else {
            let g = graph.induced(&keep);
            let w = keep.iter().map(|&v| weights[v]).collect();
            IntWeightedGraph { graph: g, weights: w }
        }
    }

    pub fn unit(graph: Graph) -> Self {
        let weights = vec![1; graph.n()];
        IntWeightedGraph { graph, weights }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }

    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn weighted_degree(&self, u: usize) -> u64 {
        self.graph.neighbors(u).map(|v| self.weights[v]).sum()
    }

    /// Exact weighted (e, t).
    pub fn profile(&self) -> (u128, u128) {
        let classes = classify(&self.graph);
        let sum = |edges: &[(usize, usize)]| -> u128 {
            edges
                .iter()
                .map(|&(u, v)| self.weights[u] as u128 * self.weights[v] as u128)
                .sum()
        };
        let t = sum(&classes.non_triangular);
        (sum(&classes.triangular) + t, t)
    }

    /// Merges vertices with identical neighbourhoods (clone classes of the
    /// weighted graph) into single vertices; e and t are unchanged.
    pub fn dedup_clones(&self) -> IntWeightedGraph {
        let n = self.order();
        let mut class_of = Vec::with_capacity(n);
        let mut reps: Vec<usize> = Vec::new();
        for v in 0..n {
            match reps.iter().position(|&r| self.graph.row(r) == self.graph.row(v)) {
                Some(idx) => class_of.push(idx),
                None => {
                    class_of.push(reps.len());
                    reps.push(v);
                }
            }
        }
        let mut weights = vec![0u64; reps.len()];
        for v in 0..n {
            weights[class_of[v]] += self.weights[v];
        }
        let graph = self.graph.induced(&reps);
        let (e0, t0) = self.profile();
        let out = IntWeightedGraph { graph, weights };
        let (e1, t1) = out.profile();
        assert_eq!((e0, t0), (e1, t1), "clone dedup must preserve e and t");
        out
    }

    /// Expands every vertex into a clone set of its weight.
    pub fn expand(&self) -> Graph {
        let total = self.total() as usize;
        let mut start = Vec::with_capacity(self.order());
        let mut acc = 0usize;
        for &w in &self.weights {
            start.push(acc);
            acc += w as usize;
        }
        let mut g = Graph::empty(total);
        for (u, v) in self.graph.edges() {
            for i in 0..self.weights[u] as usize {
                for j in 0..self.weights[v] as usize {
                    g.add_edge(start[u] + i, start[v] + j);
                }
            }
        }
        g
    }
}

/// Deterministic family of maximal independent sets: exhaustive enumeration
/// (via Bron-Kerbosch on the complement) when the order is at most
/// `max_exhaustive`, otherwise one greedy maximal set per rotated vertex
/// order. Returns the sets and whether the family is exhaustive.
pub fn discover_independent_sets(g: &Graph, max_exhaustive: usize) -> (Vec<Vec<usize>>, bool) {
    let n = g.n();
    if n == 0 {
        return (Vec::new(), true);
    }
    if n <= max_exhaustive && n <= 32 {
        let mut out = Vec::new();
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        bron_kerbosch(g, 0, full, 0, &mut out);
        let mut sets: Vec<Vec<usize>> = out
            .into_iter()
            .map(|m| (0..n).filter(|&v| (m >> v) & 1 == 1).collect())
            .collect();
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        (sets, true)
    } else {
        let mut seen = Vec::new();
        let mut sets = Vec::new();
        for seed in 0..n {
            let mut set: Vec<usize> = Vec::new();
            for i in 0..n {
                let v = (seed + i) % n;
                if set.iter().all(|&u| !g.has_edge(u, v)) {
                    set.push(v);
                }
            }
            set.sort_unstable();
            if !seen.contains(&set) {
                seen.push(set.clone());
                sets.push(set);
            }
        }
        (sets, false)
    }
}

/// Maximal cliques of the complement = maximal independent sets.
fn bron_kerbosch(g: &Graph, r: u32, mut p: u32, mut x: u32, out: &mut Vec<u32>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // pivot: non-neighbourhood in the complement is the closed neighbourhood here
    let pivot = (p | x).trailing_zeros() as usize;
    let mut candidates = p & !complement_row(g, pivot);
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u32 << v;
        candidates &= !bit;
        let nv = complement_row(g, v);
        bron_kerbosch(g, r | bit, p & nv, x & nv, out);
        p &= !bit;
        x |= bit;
    }
}

fn complement_row(g: &Graph, v: usize) -> u32 {
    let n = g.n();
    let mut row = 0u32;
    for u in 0..n {
        if u != v && !g.has_edge(u, v) {
            row |= 1 << u;
        }
    }
    row
}

#[derive(Clone, Debug)]
pub struct MergeStep {
    pub gainers: Vec<usize>,
    pub losers: Vec<usize>,
    pub shifted: u64,
}

/// Searches an independent set for equal-size disjoint subsets with equal
/// weighted-degree sums, then shifts the minimum loser weight across,
/// removing at least one vertex. e is preserved exactly and t never
/// decreases. Returns `None` when no collision exists in the capped subset
/// space (the pigeonhole bound was not met).
pub fn merge_equal_sum_subsets(
    g: &IntWeightedGraph,
    ambient_n: usize,
    indep: &[usize],
) -> Option<(IntWeightedGraph, MergeStep)> {
    assert!(g.graph().is_independent(indep), "vertices must be independent");
    let mut verts: Vec<usize> = indep.to_vec();
    verts.sort_unstable();
    verts.dedup();
    // Cap the batch at 3*log2(n) + 1 vertices: subset space > n^3 suffices.
    let cap = if ambient_n <= 1 {
        2
    } else {
        (ambient_n as u128).pow(3).ilog2() as usize + 1
    };
    let m = verts.len().min(cap);
    if m < 2 {
        return None;
    }
    let verts = &verts[..m];
    let deg: Vec<u64> = verts.iter().map(|&v| g.weighted_degree(v)).collect();
    let nt_rows = non_triangular_adjacency(g.graph());
    let ntd: Vec<u64> = verts
        .iter()
        .map(|&v| nt_rows[v].iter_ones().map(|u| g.weights()[u]).sum())
        .collect();

    let mut sums: Vec<u64> = Vec::with_capacity(1 << m.min(20));
    sums.push(0);
    let mut buckets: HashMap<(u32, u64), u32> = HashMap::new();
    let mut collision: Option<(u32, u32)> = None;
    for mask in 1u32..(1u32 << m) {
        let low = mask.trailing_zeros() as usize;
        let s = sums[(mask & (mask - 1)) as usize] + deg[low];
        sums.push(s);
        if let Some(prev) = buckets.insert((mask.count_ones(), s), mask) {
            collision = Some((prev, mask));
            break;
        }
    }
    let (first, second) = collision?;
    // Disjointify; sizes and degree sums stay equal.
    let a_mask = first & !second;
    let b_mask = second & !first;
    assert!(a_mask != 0 && b_mask != 0);
    let members = |mask: u32| -> Vec<usize> {
        (0..m).filter(|i| (mask >> i) & 1 == 1).map(|i| verts[i]).collect()
    };
    let t_sum = |mask: u32| -> u64 {
        (0..m).filter(|i| (mask >> i) & 1 == 1).map(|i| ntd[i]).sum()
    };
    let (ta, tb) = (t_sum(a_mask), t_sum(b_mask));
    let (gain_mask, lose_mask) = if ta > tb {
        (a_mask, b_mask)
    } else if tb > ta {
        (b_mask, a_mask)
    } else {
        // Tie: shift away from the lexicographically larger set.
        let (ma, mb) = (members(a_mask), members(b_mask));
        if ma > mb {
            (b_mask, a_mask)
        } else {
            (a_mask, b_mask)
        }
    };
    let gainers = members(gain_mask);
    let losers = members(lose_mask);
    let shifted = losers.iter().map(|&v| g.weights()[v]).min().unwrap();
    let mut weights = g.weights().to_vec();
    for &v in &gainers {
        weights[v] += shifted;
    }
    for &v in &losers {
        weights[v] -= shifted;
    }
    let (e0, t0) = g.profile();
    let out = IntWeightedGraph::new(g.graph().clone(), weights);
    let (e1, t1) = out.profile();
    assert_eq!(e0, e1, "merge must preserve e");
    assert!(t1 >= t0, "merge must not decrease t");
    assert!(out.order() < g.order());
    Some((
        out,
        MergeStep {
            gainers,
            losers,
            shifted,
        },
    ))
}

#[derive(Clone, Debug)]
pub struct QuintupleStep {
    pub k: [u64; 5],
    pub l: [u64; 5],
    pub applications: u64,
}

/// Searches for two distinct non-negative quintuples with coordinate sum
/// ceil(3*n^(1/3)) and equal weighted-degree sums, and repeatedly applies
/// their difference while all five weights stay non-negative. Afterwards
/// one of the five is light (or gone); e is preserved and t never
/// decreases.
pub fn reduce_heavy_quintuple(
    g: &IntWeightedGraph,
    ambient_n: usize,
    five: [usize; 5],
) -> Option<(IntWeightedGraph, QuintupleStep)> {
    let verts = five.to_vec();
    assert!(g.graph().is_independent(&verts), "quintuple must be independent");
    for &v in &five {
        assert!(
            exceeds_cbrt_bound(g.weights()[v], ambient_n),
            "quintuple vertices must be heavy"
        );
    }
    let q = quintuple_budget(ambient_n);
    let deg: Vec<u64> = five.iter().map(|&v| g.weighted_degree(v)).collect();
    let nt_rows = non_triangular_adjacency(g.graph());
    let ntd: Vec<u64> = five
        .iter()
        .map(|&v| nt_rows[v].iter_ones().map(|u| g.weights()[u]).sum())
        .collect();

    let mut buckets: HashMap<u64, [u64; 5]> = HashMap::new();
    let mut collision: Option<([u64; 5], [u64; 5])> = None;
    'outer: for k1 in 0..=q {
        for k2 in 0..=q - k1 {
            for k3 in 0..=q - k1 - k2 {
                for k4 in 0..=q - k1 - k2 - k3 {
                    let k5 = q - k1 - k2 - k3 - k4;
                    let tuple = [k1, k2, k3, k4, k5];
                    let s: u64 = tuple.iter().zip(deg.iter()).map(|(a, b)| a * b).sum();
                    if let Some(prev) = buckets.insert(s, tuple) {
                        collision = Some((prev, tuple));
                        break 'outer;
                    }
                }
            }
        }
    }
    let (mut k, mut l) = collision?;
    let t_of = |t: &[u64; 5]| -> u64 { t.iter().zip(ntd.iter()).map(|(a, b)| a * b).sum() };
    if t_of(&k) < t_of(&l) {
        std::mem::swap(&mut k, &mut l);
    }
    let delta: Vec<i64> = k.iter().zip(l.iter()).map(|(a, b)| *a as i64 - *b as i64).collect();
    let reps = five
        .iter()
        .zip(delta.iter())
        .filter(|(_, d)| **d < 0)
        .map(|(&v, d)| g.weights()[v] / (-d) as u64)
        .min()
        .expect("distinct equal-sum quintuples differ in some negative coordinate");
    assert!(reps >= 1, "heavy weights admit at least one application");
    let mut weights = g.weights().to_vec();
    for (i, &v) in five.iter().enumerate() {
        weights[v] = (weights[v] as i64 + reps as i64 * delta[i]) as u64;
    }
    let heavy_before = count_heavy(g, ambient_n);
    let (e0, t0) = g.profile();
    let out = IntWeightedGraph::new(g.graph().clone(), weights);
    let (e1, t1) = out.profile();
    assert_eq!(e0, e1, "quintuple reduction must preserve e");
    assert!(t1 >= t0, "quintuple reduction must not decrease t");
    assert!(count_heavy(&out, ambient_n) < heavy_before);
    Some((
        out,
        QuintupleStep {
            k,
            l,
            applications: reps,
        },
    ))
}

fn count_heavy(g: &IntWeightedGraph, ambient_n: usize) -> usize {
    g.weights()
        .iter()
        .filter(|&&w| exceeds_cbrt_bound(w, ambient_n))
        .count()
}

/// Triangular vertices with at least one edge: isolated vertices are left
/// out so that edgeless graphs stay compressed.
fn triangular_vertices(g: &Graph) -> Vec<usize> {
    let nt = non_triangular_adjacency(g);
    (0..g.n())
        .filter(|&v| g.degree(v) >= 1 && nt[v].is_empty())
        .collect()
}

/// Completes the set of triangular vertices into a clique and rewires each
/// of them to the outside neighbourhood of a maximum-degree member. e never
/// decreases and t never decreases; both are asserted.
pub fn normalize_triangular_clique(g: &Graph) -> Graph {
    let n = g.n();
    let u_set = triangular_vertices(g);
    if u_set.len() <= 1 {
        return g.clone();
    }
    let mut in_u = vec![false; n];
    for &v in &u_set {
        in_u[v] = true;
    }
    // Max degree once U is completed = max outside degree; ties to smallest id.
    let out_degree =
        |v: usize| -> usize { g.neighbors(v).filter(|&w| !in_u[w]).count() };
    let leader = *u_set
        .iter()
        .max_by(|&&p, &&q| out_degree(p).cmp(&out_degree(q)).then(q.cmp(&p)))
        .unwrap();
    let outside: Vec<usize> = g.neighbors(leader).filter(|&w| !in_u[w]).collect();
    let mut h = Graph::empty(n);
    for (x, y) in g.edges() {
        if !in_u[x] && !in_u[y] {
            h.add_edge(x, y);
        }
    }
    for (i, &x) in u_set.iter().enumerate() {
        for &y in u_set.iter().skip(i + 1) {
            h.add_edge(x, y);
        }
        for &w in &outside {
            h.add_edge(x, w);
        }
    }
    let before = classify(g);
    let after = classify(&h);
    assert!(after.e() >= before.e(), "normalisation must not lose edges");
    assert!(after.t() >= before.t(), "normalisation must not lose t");
    h
}

/// Per-set record of the condition-(1) check.
#[derive(Clone, Debug)]
pub struct IndependentSetReport {
    pub vertices: Vec<usize>,
    pub clone_classes: usize,
    pub oversized_classes: usize,
    pub max_class_size: usize,
}

#[derive(Clone, Debug)]
pub struct CompressedCertificate {
    pub checked_sets: Vec<IndependentSetReport>,
    /// True when every maximal independent set was enumerated, false when a
    /// greedy sample was checked.
    pub exhaustive: bool,
    pub triangular_clique: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum CompressionViolation {
    TriangularSetNotClique { u: usize, v: usize },
    OutsideNeighborhoodsDiffer { u: usize, v: usize },
    TooManyCloneClasses { set: Vec<usize>, classes: usize },
    TooManyOversizedClasses { set: Vec<usize>, oversized: usize },
}

#[derive(Clone, Debug)]
pub enum CompressionCheck {
    Compressed(CompressedCertificate),
    Violation(CompressionViolation),
}

impl CompressionCheck {
    pub fn is_compressed(&self) -> bool {
        matches!(self, CompressionCheck::Compressed(_))
    }
}

pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 16;

pub fn is_compressed(g: &Graph) -> CompressionCheck {
    is_compressed_with(g, DEFAULT_EXHAUSTIVE_LIMIT)
}

pub fn is_compressed_with(g: &Graph, max_exhaustive: usize) -> CompressionCheck {
    let n = g.n();
    // Condition (2): the triangular vertices induce a clique with one shared
    // outside neighbourhood. Checked exactly.
    let u_set = triangular_vertices(g);
    for (i, &u) in u_set.iter().enumerate() {
        for &v in u_set.iter().skip(i + 1) {
            if !g.has_edge(u, v) {
                return CompressionCheck::Violation(CompressionViolation::TriangularSetNotClique {
                    u,
                    v,
                });
            }
        }
    }
    if let Some(&first) = u_set.first() {
        let outside = |v: usize| -> Bitset {
            let mut row = Bitset::new(n);
            for w in g.neighbors(v) {
                if !u_set.contains(&w) {
                    row.insert(w);
                }
            }
            row
        };
        let reference = outside(first);
        for &v in &u_set[1..] {
            if outside(v) != reference {
                return CompressionCheck::Violation(
                    CompressionViolation::OutsideNeighborhoodsDiffer { u: first, v },
                );
            }
        }
    }
    // Condition (1) on the discovered family of maximal independent sets.
    let (sets, exhaustive) = discover_independent_sets(g, max_exhaustive);
    let mut checked_sets = Vec::with_capacity(sets.len());
    for set in sets {
        let classes = clone_partition(g, &set);
        let clone_classes = classes.len();
        let oversized = classes
            .iter()
            .filter(|c| exceeds_cbrt_bound(c.vertices.len() as u64, n))
            .count();
        let max_class = classes.iter().map(|c| c.vertices.len()).max().unwrap_or(0);
        if exceeds_log_bound(clone_classes, n) {
            return CompressionCheck::Violation(CompressionViolation::TooManyCloneClasses {
                set,
                classes: clone_classes,
            });
        }
        if oversized > 4 {
            return CompressionCheck::Violation(CompressionViolation::TooManyOversizedClasses {
                set,
                oversized,
            });
        }
        checked_sets.push(IndependentSetReport {
            vertices: set,
            clone_classes,
            oversized_classes: oversized,
            max_class_size: max_class,
        });
    }
    CompressionCheck::Compressed(CompressedCertificate {
        checked_sets,
        exhaustive,
        triangular_clique: u_set,
    })
}

pub struct CompressOutcome {
    pub graph: Graph,
    pub trace: Vec<String>,
    /// Order of the weighted graph at the final fixed point.
    pub weighted_order: usize,
}

pub fn compress(g: &Graph) -> Graph {
    compress_with_trace(g).graph
}

fn fmt_set(vs: &[usize]) -> String {
    let inner = vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    format!("{{{inner}}}")
}

/// Lifts a graph to its clone-deduplicated weighted form together with the
/// vertex-to-weighted-vertex mapping.
fn lift(g: &Graph) -> (IntWeightedGraph, Vec<usize>) {
    let unit = IntWeightedGraph::unit(g.clone());
    let deduped = unit.dedup_clones();
    // Recover the mapping by matching rows in order.
    let mut mapping = Vec::with_capacity(g.n());
    let mut reps: Vec<usize> = Vec::new();
    for v in 0..g.n() {
        match reps.iter().position(|&r| g.row(r) == g.row(v)) {
            Some(idx) => mapping.push(idx),
            None => {
                mapping.push(reps.len());
                reps.push(v);
            }
        }
    }
    (deduped, mapping)
}

pub fn compress_with_trace(g: &Graph) -> CompressOutcome {
    let n = g.n();
    if n == 0 {
        return CompressOutcome {
            graph: g.clone(),
            trace: Vec::new(),
            weighted_order: 0,
        };
    }
    let base = classify(g);
    let (e0, t0) = (base.e(), base.t());
    let mut trace = Vec::new();
    let mut wg = IntWeightedGraph::unit(g.clone()).dedup_clones();
    // Each productive step descends in the (order, heavy-count) lexicographic
    // measure, so this bound is a safety net, not a tuning knob.
    let step_bound = (n + 16) * (n * n + 2 * n + 16);
    let mut steps = 0usize;
    let mut outer = 0usize;
    loop {
        outer += 1;
        assert!(outer <= n + 16, "compression failed to converge");
        // Weighted fixed point: merges first, then heavy quintuples.
        loop {
            steps += 1;
            assert!(steps <= step_bound, "compression step bound exceeded");
            wg = wg.dedup_clones();
            if let Some(next) = try_merge_any(&wg, n, &mut trace) {
                wg = next;
                continue;
            }
            if let Some(next) = try_quintuple_any(&wg, n, &mut trace) {
                wg = next;
                continue;
            }
            break;
        }
        assert_eq!(wg.total() as usize, n);
        let expanded = wg.expand();
        let normalized = normalize_triangular_clique(&expanded);
        match is_compressed(&normalized) {
            CompressionCheck::Compressed(_) => {
                let after = classify(&normalized);
                assert_eq!(normalized.n(), n);
                assert!(after.e() >= e0 && after.t() >= t0);
                return CompressOutcome {
                    weighted_order: wg.order(),
                    graph: normalized,
                    trace,
                };
            }
            CompressionCheck::Violation(v) => {
                // Map the violating set back to the weighted view and let the
                // next round act on it.
                let (lifted, mapping) = lift(&normalized);
                wg = lifted;
                if let CompressionViolation::TooManyCloneClasses { set, .. }
                | CompressionViolation::TooManyOversizedClasses { set, .. } = &v
                {
                    let mut weighted_set: Vec<usize> =
                        set.iter().map(|&x| mapping[x]).collect();
                    weighted_set.sort_unstable();
                    weighted_set.dedup();
                    if let Some((next, step)) = merge_equal_sum_subsets(&wg, n, &weighted_set) {
                        trace.push(format!(
                            "merge A={} B={} w={}",
                            fmt_set(&step.gainers),
                            fmt_set(&step.losers),
                            step.shifted
                        ));
                        wg = next;
                    }
                }
            }
        }
    }
}

fn try_merge_any(
    wg: &IntWeightedGraph,
    ambient_n: usize,
    trace: &mut Vec<String>,
) -> Option<IntWeightedGraph> {
    let (sets, _) = discover_independent_sets(wg.graph(), DEFAULT_EXHAUSTIVE_LIMIT);
    for set in sets {
        if !exceeds_log_bound(set.len(), ambient_n) {
            continue;
        }
        if let Some((next, step)) = merge_equal_sum_subsets(wg, ambient_n, &set) {
            trace.push(format!(
                "merge A={} B={} w={}",
                fmt_set(&step.gainers),
                fmt_set(&step.losers),
                step.shifted
            ));
            return Some(next);
        }
    }
    None
}

fn try_quintuple_any(
    wg: &IntWeightedGraph,
    ambient_n: usize,
    trace: &mut Vec<String>,
) -> Option<IntWeightedGraph> {
    let heavy: Vec<usize> = (0..wg.order())
        .filter(|&v| exceeds_cbrt_bound(wg.weights()[v], ambient_n))
        .collect();
    if heavy.len() < 5 {
        return None;
    }
    let five = first_independent_five(wg.graph(), &heavy)?;
    let (next, step) = reduce_heavy_quintuple(wg, ambient_n, five)?;
    trace.push(format!(
        "quint k=({}) l=({}) reps={}",
        step.k.map(|x| x.to_string()).join(","),
        step.l.map(|x| x.to_string()).join(","),
        step.applications
    ));
    Some(next)
}

fn first_independent_five(g: &Graph, pool: &[usize]) -> Option<[usize; 5]> {
    let m = pool.len();
    let mut chosen = Vec::with_capacity(5);
    fn rec(g: &Graph, pool: &[usize], start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == 5 {
            return true;
        }
        for i in start..pool.len() {
            let v = pool[i];
            if chosen.iter().all(|&u| !g.has_edge(u, v)) {
                chosen.push(v);
                if rec(g, pool, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if m >= 5 && rec(g, pool, 0, &mut chosen) {
        Some([chosen[0], chosen[1], chosen[2], chosen[3], chosen[4]])
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{construct, Triple};

    #[test]
    fn thresholds_are_exact() {
        // 3*log2(64) = 18
        assert!(!exceeds_log_bound(18, 64));
        assert!(exceeds_log_bound(19, 64));
        // 3*64^(1/3) = 12
        assert!(!exceeds_cbrt_bound(12, 64));
        assert!(exceeds_cbrt_bound(13, 64));
        assert_eq!(quintuple_budget(64), 12);
        assert_eq!(quintuple_budget(100), 14); // 3*100^(1/3) = 13.92...
    }

    #[test]
    fn compressed_checks() {
        assert!(is_compressed(&Graph::complete(6)).is_compressed());
        assert!(is_compressed(&Graph::cycle(5)).is_compressed());
        // Two disjoint triangles: all six vertices are triangular but they
        // do not induce a clique.
        let mut g = Graph::empty(6);
        for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            g.add_edge(u, v);
        }
        assert!(matches!(
            is_compressed(&g),
            CompressionCheck::Violation(CompressionViolation::TriangularSetNotClique { .. })
        ));
    }

    #[test]
    fn merge_unit_clones() {
        // Four unit clones with a common neighbour.
        let mut g = Graph::empty(5);
        for v in 0..4 {
            g.add_edge(v, 4);
        }
        let wg = IntWeightedGraph::unit(g);
        let (e0, _) = wg.profile();
        let (out, step) = merge_equal_sum_subsets(&wg, 5, &[0, 1, 2, 3]).unwrap();
        assert_eq!(out.order(), 4);
        assert_eq!(out.profile().0, e0);
        assert_eq!(step.shifted, 1);
    }

    #[test]
    fn merge_size_one_collision() {
        // Independent vertices with weighted degrees 3, 3, 5.
        let mut g = Graph::empty(6);
        g.add_edge(0, 3);
        g.add_edge(1, 4);
        g.add_edge(2, 5);
        let wg = IntWeightedGraph::new(g, vec![1, 1, 1, 3, 3, 5]);
        let (e0, _) = wg.profile();
        assert_eq!(e0, 11);
        let (out, step) = merge_equal_sum_subsets(&wg, 14, &[0, 1, 2]).unwrap();
        assert_eq!(step.gainers, vec![0]);
        assert_eq!(step.losers, vec![1]);
        assert_eq!(out.order(), 5);
        assert_eq!(out.profile().0, 11);
    }

    #[test]
    fn merge_skips_without_collision() {
        // Degree sums 1, 2, 4: all subset sums distinct.
        let mut g = Graph::empty(6);
        g.add_edge(0, 3);
        g.add_edge(1, 4);
        g.add_edge(2, 5);
        let wg = IntWeightedGraph::new(g, vec![1, 1, 1, 1, 2, 4]);
        assert!(merge_equal_sum_subsets(&wg, 100, &[0, 1, 2]).is_none());
    }

    #[test]
    fn quintuple_drains_a_heavy_vertex() {
        // Five heavy clones (weight 13 each, ambient n = 64) and a hub.
        let mut g = Graph::empty(6);
        for v in 0..5 {
            g.add_edge(v, 5);
        }
        let wg = IntWeightedGraph::new(g, vec![13, 13, 13, 13, 13, 1]);
        let (out, _) = reduce_heavy_quintuple(&wg, 64, [0, 1, 2, 3, 4]).unwrap();
        assert!(count_heavy(&out, 64) < 5);
        assert_eq!(out.profile().0, wg.profile().0);
    }

    #[test]
    fn normalize_cases() {
        let k5 = Graph::complete(5);
        assert_eq!(normalize_triangular_clique(&k5), k5);

        let fam = construct(&Triple { a: 4, b: 6, c: 5 });
        assert_eq!(normalize_triangular_clique(&fam), fam);

        let mut two_triangles = Graph::empty(6);
        for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            two_triangles.add_edge(u, v);
        }
        let h = normalize_triangular_clique(&two_triangles);
        assert_eq!(h, Graph::complete(6));
        assert_eq!(classify(&h).t(), 0);
    }

    #[test]
    fn compress_fixed_points() {
        let k7 = Graph::complete(7);
        assert_eq!(compress(&k7), k7);
    }

    #[test]
    fn compress_empty_graph() {
        let g = Graph::empty(64);
        let out = compress_with_trace(&g);
        assert_eq!(out.graph, g);
        assert!(out.weighted_order <= 18);
        assert!(is_compressed(&out.graph).is_compressed());
    }

    #[test]
    fn compress_family_graph() {
        let g = construct(&Triple { a: 2, b: 30, c: 32 });
        let before = classify(&g);
        let h = compress(&g);
        let after = classify(&h);
        assert_eq!(h.n(), 64);
        assert!(after.e() >= before.e());
        assert!(after.t() >= before.t());
        assert!(is_compressed(&h).is_compressed());
    }
}
