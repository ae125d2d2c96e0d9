//! Exhaustive verification at small orders: true minima of triangular
//! edges against the family formula, Pareto frontiers of (e, t), and the
//! local-optimality degree condition.

use crate::canon::canonical_form;
use crate::enumerate::enumerate_fold;
use crate::family::g_formula;
use crate::graph::{classify, is_spanning_subgraph_of_family, non_triangular_adjacency, Graph};
use crate::io::to_graph6;
use thiserror::Error;

pub const DEFAULT_MAX_N: usize = 9;
/// Minimiser certificate lists are capped; the count and family check still
/// cover every minimiser.
pub const MINIMIZER_CAP: usize = 1000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("order {n} exceeds the enumeration limit {max}")]
    OrderLimit { n: usize, max: usize },
    #[error("edge count {e} out of range for order {n}")]
    EdgeRange { n: usize, e: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker count; 0 uses all available cores. Any value produces
    /// byte-identical reports.
    pub jobs: usize,
    /// Largest order accepted for exhaustive enumeration.
    pub max_n: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 0,
            max_n: DEFAULT_MAX_N,
        }
    }
}

/// Outcome of one (n, e) brute-force comparison against the formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: usize,
    pub e: usize,
    /// True minimum number of triangular edges over all classes.
    pub brute_min: usize,
    /// g_formula(n, e).
    pub formula_value: u64,
    pub matches: bool,
    /// Canonical graph6 certificates of the minimising classes (capped).
    pub minimizers: Vec<String>,
    pub minimizer_count: usize,
    pub truncated: bool,
    pub all_minimizers_in_family: bool,
}

pub const REPORT_CSV_HEADER: &str = "n,e,brute_min,formula_g,match,num_minimizers,all_in_family";

impl VerificationReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.e,
            self.brute_min,
            self.formula_value,
            self.matches,
            self.minimizer_count,
            self.all_minimizers_in_family
        )
    }
}

/// A non-dominated (e, t) pair with its lexicographically smallest
/// canonical witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParetoPoint {
    pub e: usize,
    pub t: usize,
    pub witness: String,
}

fn check_order(n: usize, opts: &SearchOptions) -> Result<(), SearchError> {
    if n > opts.max_n {
        return Err(SearchError::OrderLimit { n, max: opts.max_n });
    }
    Ok(())
}

/// Invokes `visitor` once per isomorphism class of n-vertex, e-edge graphs
/// in a deterministic order and returns the class count. Classes are
/// streamed, never stored; the pass is sequential so the visitor may carry
/// state.
pub fn enumerate_graphs<F: FnMut(&Graph)>(
    n: usize,
    e: usize,
    opts: &SearchOptions,
    mut visitor: F,
) -> Result<u64, SearchError> {
    check_order(n, opts)?;
    if e > n * n.saturating_sub(1) / 2 {
        return Err(SearchError::EdgeRange { n, e });
    }
    let mut count = 0u64;
    crate::enumerate::enumerate_sequential(n, &mut |g| {
        if g.edge_count() == e {
            count += 1;
            visitor(g);
        }
    });
    Ok(count)
}

#[derive(Clone)]
struct MinAccumulator {
    min_triangular: usize,
    minimizers: Vec<String>,
    count: usize,
    truncated: bool,
    all_in_family: bool,
}

impl MinAccumulator {
    fn new() -> Self {
        MinAccumulator {
            min_triangular: usize::MAX,
            minimizers: Vec::new(),
            count: 0,
            truncated: false,
            all_in_family: true,
        }
    }

    fn offer(&mut self, triangular: usize, g: &Graph) {
        if triangular > self.min_triangular {
            return;
        }
        if triangular < self.min_triangular {
            self.min_triangular = triangular;
            self.minimizers.clear();
            self.count = 0;
            self.truncated = false;
            self.all_in_family = true;
        }
        self.count += 1;
        self.all_in_family &= is_spanning_subgraph_of_family(g).is_some();
        if self.minimizers.len() < MINIMIZER_CAP {
            self.minimizers.push(canonical_graph6(g));
        } else {
            self.truncated = true;
        }
    }

    fn merge(mut self, other: MinAccumulator) -> MinAccumulator {
        if other.min_triangular < self.min_triangular {
            return other;
        }
        if other.min_triangular == self.min_triangular {
            self.count += other.count;
            self.all_in_family &= other.all_in_family;
            for m in other.minimizers {
                if self.minimizers.len() < MINIMIZER_CAP {
                    self.minimizers.push(m);
                } else {
                    self.truncated = true;
                }
            }
            self.truncated |= other.truncated;
        }
        self
    }

    fn into_report(mut self, n: usize, e: usize) -> VerificationReport {
        let formula_value = g_formula(n, e as u64)
            .expect("edge count validated by caller")
            .value;
        self.minimizers.sort();
        VerificationReport {
            n,
            e,
            brute_min: self.min_triangular,
            formula_value,
            matches: self.min_triangular as u64 == formula_value,
            minimizer_count: self.count,
            truncated: self.truncated,
            all_minimizers_in_family: self.all_in_family,
            minimizers: self.minimizers,
        }
    }
}

pub fn canonical_graph6(g: &Graph) -> String {
    let c = canonical_form(g);
    to_graph6(&g.relabel(&c.labeling))
}

fn edge_range(n: usize) -> std::ops::RangeInclusive<usize> {
    (n * n / 4 + 1)..=(n * n.saturating_sub(1) / 2)
}

/// Enumerates all classes with e edges, records the minimum triangular
/// count and all minimising classes, and compares with g_formula.
pub fn brute_min_triangular(
    n: usize,
    e: usize,
    opts: &SearchOptions,
) -> Result<VerificationReport, SearchError> {
    check_order(n, opts)?;
    if !edge_range(n).contains(&e) {
        return Err(SearchError::EdgeRange { n, e });
    }
    let acc = enumerate_fold(
        n,
        opts.jobs,
        MinAccumulator::new,
        |acc: &mut MinAccumulator, g| {
            if g.edge_count() == e {
                let c = classify(g);
                acc.offer(c.e() - c.t(), g);
            }
        },
        MinAccumulator::merge,
    );
    Ok(acc.into_report(n, e))
}

/// One shared enumeration pass producing a report for every e in
/// (floor(n^2/4), binom(n,2)], bucketed by edge count.
pub fn verify_range(n: usize, opts: &SearchOptions) -> Result<Vec<VerificationReport>, SearchError> {
    check_order(n, opts)?;
    let range = edge_range(n);
    if range.is_empty() {
        return Ok(Vec::new());
    }
    let lo = *range.start();
    let slots = range.end() - lo + 1;
    let accs = enumerate_fold(
        n,
        opts.jobs,
        || vec![MinAccumulator::new(); slots],
        |accs: &mut Vec<MinAccumulator>, g| {
            let e = g.edge_count();
            if e >= lo {
                let c = classify(g);
                accs[e - lo].offer(c.e() - c.t(), g);
            }
        },
        |a, b| {
            a.into_iter()
                .zip(b)
                .map(|(x, y)| x.merge(y))
                .collect()
        },
    );
    Ok(accs
        .into_iter()
        .enumerate()
        .map(|(i, acc)| acc.into_report(n, lo + i))
        .collect())
}

/// Non-dominated (e, t) pairs over all n-vertex graphs, sorted by e.
pub fn pareto_frontier(n: usize, opts: &SearchOptions) -> Result<Vec<ParetoPoint>, SearchError> {
    check_order(n, opts)?;
    let slots = n * n.saturating_sub(1) / 2 + 1;
    // Per edge count: the maximum t and the smallest canonical witness.
    let best: Vec<Option<(usize, String)>> = enumerate_fold(
        n,
        opts.jobs,
        || vec![None; slots],
        |best: &mut Vec<Option<(usize, String)>>, g| {
            let c = classify(g);
            let (e, t) = (c.e(), c.t());
            let entry = &mut best[e];
            let replace = match entry {
                None => true,
                Some((bt, bw)) => t > *bt || (t == *bt && canonical_graph6(g) < *bw),
            };
            if replace {
                *entry = Some((t, canonical_graph6(g)));
            }
        },
        |a, b| {
            a.into_iter()
                .zip(b)
                .map(|(x, y)| match (x, y) {
                    (None, y) => y,
                    (x, None) => x,
                    (Some((tx, wx)), Some((ty, wy))) => {
                        if ty > tx || (ty == tx && wy < wx) {
                            Some((ty, wy))
                        } else {
                            Some((tx, wx))
                        }
                    }
                })
                .collect()
        },
    );
    let mut frontier = Vec::new();
    let mut best_t: Option<usize> = None;
    for e in (0..slots).rev() {
        if let Some((t, witness)) = &best[e] {
            if best_t.is_none_or(|bt| *t > bt) {
                best_t = Some(*t);
                frontier.push(ParetoPoint {
                    e,
                    t: *t,
                    witness: witness.clone(),
                });
            }
        }
    }
    frontier.reverse();
    Ok(frontier)
}

/// Local optimality: every ordered vertex pair (u, v) satisfies
/// deg(u) >= deg(v) - 1 or ntd(u) >= ntd(v) - 1.
pub fn check_local_optimality(g: &Graph) -> bool {
    let nt = non_triangular_adjacency(g);
    let deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let ntd: Vec<usize> = (0..g.n()).map(|v| nt[v].count()).collect();
    for u in 0..g.n() {
        for v in 0..g.n() {
            if u == v {
                continue;
            }
            if deg[u] + 1 < deg[v] && ntd[u] + 1 < ntd[v] {
                return false;
            }
        }
    }
    true
}
