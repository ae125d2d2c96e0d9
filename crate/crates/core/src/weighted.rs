//! Weighted graphs with exact rational vertex weights.
//!
//! Here e(G) is the sum of w(u)w(v) over edges and t(G) the same sum over
//! non-triangular edges. The module implements the independent-triple
//! elimination step, the reduction loop that drives the independence number
//! down to two, detection of good weighted graphs (clique K plus an adjacent
//! pair whose edge is the unique non-triangular one), the integer rounding
//! back into the family, and the two explicit exchange weight-moves.
//!
//! Everything is computed in exact rationals; the monotonicity claims
//! (total weight conserved, e and t never decreasing) are asserted on every
//! elimination step with zero tolerance.

use crate::bitset::Bitset;
use crate::family::Triple;
use crate::graph::{classify, non_triangular_adjacency, Graph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

pub type Weight = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightedError {
    #[error("weight vector length {got} does not match graph order {order}")]
    WeightCountMismatch { got: usize, order: usize },
    #[error("negative weight at vertex {0}")]
    NegativeWeight(usize),
    #[error("total weight is below the number of vertices")]
    TotalBelowOrder,
    #[error("vertices {0}, {1}, {2} are not pairwise non-adjacent")]
    TripleNotIndependent(usize, usize, usize),
    #[error("graph is not good: expected a clique plus one non-triangular edge")]
    NotGood,
    #[error("total weight must be a non-negative integer to round to a family triple")]
    TotalWeightNotInteger,
    #[error("rounding requires t(G) > 5n")]
    RoundingPrecondition,
    #[error("exchange amount must be non-negative")]
    NegativeExchange,
    #[error("clique weight below 2x/n")]
    CliqueTooLight,
    #[error("far vertex weight below x/n")]
    FarVertexTooLight,
    #[error("the clique must contain at least two vertices")]
    CliqueTooSmall,
}

/// A graph with positive rational vertex weights. Zero-weight vertices are
/// removed eagerly and the total weight must be at least the vertex count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<Weight>,
}

impl WeightedGraph {
    /// Validates weights, drops zero-weight vertices and checks that the
    /// total weight covers the surviving order.
    pub fn new(graph: Graph, weights: Vec<Weight>) -> Result<Self, WeightedError> {
        if weights.len() != graph.n() {
            return Err(WeightedError::WeightCountMismatch {
                got: weights.len(),
                order: graph.n(),
            });
        }
        if let Some(v) = weights.iter().position(|w| w.is_negative()) {
            return Err(WeightedError::NegativeWeight(v));
        }
        let keep: Vec<usize> = (0..graph.n()).filter(|&v| !weights[v].is_zero()).collect();
        let (graph, weights) = if keep.len() == graph.n() {
            (graph, weights)
        } else {
            let g = graph.induced(&keep);
            let w = keep.iter().map(|&v| weights[v].clone()).collect();
            (g, w)
        };
        let total: Weight = weights.iter().sum();
        if total < BigRational::from(BigInt::from(graph.n() as u64)) {
            return Err(WeightedError::TotalBelowOrder);
        }
        Ok(WeightedGraph { graph, weights })
    }

    /// All-unit weights; e and t then agree with the plain edge counts.
    pub fn unit(graph: Graph) -> Self {
        let weights = vec![Weight::one(); graph.n()];
        WeightedGraph { graph, weights }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> &Weight {
        &self.weights[v]
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }

    /// Total weight |G|.
    pub fn total(&self) -> Weight {
        self.weights.iter().sum()
    }

    /// Weighted degree: sum of neighbour weights.
    pub fn weighted_degree(&self, u: usize) -> Weight {
        self.graph.neighbors(u).map(|v| &self.weights[v]).sum()
    }

    fn degree_sums(&self, rows: &[Bitset], u: usize) -> Weight {
        rows[u].iter_ones().map(|v| &self.weights[v]).sum()
    }
}

/// Exact weighted edge sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedProfile {
    pub e: Weight,
    pub t: Weight,
    pub total: Weight,
}

pub fn weighted_profile(g: &WeightedGraph) -> WeightedProfile {
    let classes = classify(g.graph());
    let sum = |edges: &[(usize, usize)]| -> Weight {
        edges
            .iter()
            .map(|&(u, v)| g.weight(u) * g.weight(v))
            .sum()
    };
    let t = sum(&classes.non_triangular);
    let e = sum(&classes.triangular) + &t;
    WeightedProfile {
        e,
        t,
        total: g.total(),
    }
}

/// A zero-sum shift applied to the weights of an independent triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftVector {
    pub s: [Weight; 3],
}

impl fmt::Display for ShiftVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.s[0], self.s[1], self.s[2])
    }
}

fn dot(a: &[Weight; 3], b: &[Weight; 3]) -> Weight {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// Scales a rational vector to coprime integers.
fn normalize_integral(s: &mut [Weight; 3]) {
    let lcm = s
        .iter()
        .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    for x in s.iter_mut() {
        *x *= BigRational::from(lcm.clone());
    }
    let gcd = s.iter().fold(BigInt::zero(), |acc, x| {
        num_integer::gcd(acc, x.numer().abs())
    });
    if !gcd.is_zero() {
        for x in s.iter_mut() {
            *x /= BigRational::from(gcd.clone());
        }
    }
}

fn negate(s: &mut [Weight; 3]) {
    for x in s.iter_mut() {
        *x = -x.clone();
    }
}

fn first_nonzero_positive(s: &mut [Weight; 3]) {
    if let Some(first) = s.iter().position(|x| !x.is_zero()) {
        if s[first].is_negative() {
            negate(s);
        }
    }
}

/// Solves for a zero-sum shift with s·d >= 0 and s·t >= 0.
///
/// The vector lies on the boundary s·t = 0 (the cross product of (1,1,1)
/// with t), oriented so s·d >= 0; if the t components are all equal the
/// d boundary is used instead, and if both are degenerate the fixed shift
/// (1,0,-1) is returned. Results are scaled to coprime integers.
pub fn shift_from_degrees(d: &[Weight; 3], t: &[Weight; 3]) -> ShiftVector {
    let cross = |v: &[Weight; 3]| -> [Weight; 3] {
        [&v[2] - &v[1], &v[0] - &v[2], &v[1] - &v[0]]
    };
    let t_degenerate = t[0] == t[1] && t[1] == t[2];
    let d_degenerate = d[0] == d[1] && d[1] == d[2];
    let mut s = if !t_degenerate {
        let mut s = cross(t);
        normalize_integral(&mut s);
        match dot(&s, d).cmp(&Weight::zero()) {
            std::cmp::Ordering::Less => negate(&mut s),
            std::cmp::Ordering::Equal => first_nonzero_positive(&mut s),
            std::cmp::Ordering::Greater => {}
        }
        s
    } else if !d_degenerate {
        // s·t vanishes on the whole plane; pin s·d = 0 instead.
        let mut s = cross(d);
        normalize_integral(&mut s);
        first_nonzero_positive(&mut s);
        s
    } else {
        [Weight::one(), Weight::zero(), -Weight::one()]
    };
    debug_assert!(s.iter().sum::<Weight>().is_zero());
    debug_assert!(!dot(&s, d).is_negative());
    debug_assert!(!dot(&s, t).is_negative());
    normalize_integral(&mut s);
    ShiftVector { s }
}

fn triple_vectors(g: &WeightedGraph, triple: [usize; 3]) -> ([Weight; 3], [Weight; 3]) {
    let nt = non_triangular_adjacency(g.graph());
    let d = [
        g.weighted_degree(triple[0]),
        g.weighted_degree(triple[1]),
        g.weighted_degree(triple[2]),
    ];
    let t = [
        g.degree_sums(&nt, triple[0]),
        g.degree_sums(&nt, triple[1]),
        g.degree_sums(&nt, triple[2]),
    ];
    (d, t)
}

fn check_independent(g: &WeightedGraph, triple: [usize; 3]) -> Result<(), WeightedError> {
    let [a, b, c] = triple;
    if g.graph().has_edge(a, b) || g.graph().has_edge(a, c) || g.graph().has_edge(b, c) {
        return Err(WeightedError::TripleNotIndependent(a, b, c));
    }
    Ok(())
}

pub fn find_shift(g: &WeightedGraph, triple: [usize; 3]) -> Result<ShiftVector, WeightedError> {
    check_independent(g, triple)?;
    let (d, t) = triple_vectors(g, triple);
    Ok(shift_from_degrees(&d, &t))
}

/// One record of the reduction trace.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub triple: [usize; 3],
    pub shift: ShiftVector,
    pub lambda: Weight,
    /// Removed vertices in the pre-step labelling (usually one).
    pub removed: Vec<usize>,
    /// Weighted profile after the step.
    pub e: Weight,
    pub t: Weight,
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let removed = self
            .removed
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(
            f,
            "triple=({},{},{}) s={} lambda={} removed={} e={} t={}",
            self.triple[0], self.triple[1], self.triple[2], self.shift, self.lambda, removed, self.e, self.t
        )
    }
}

/// Shifts the weights of an independent triple along the solved direction
/// with the largest lambda keeping all three weights non-negative, then
/// removes the zeroed vertex. Total weight is conserved and e, t never
/// decrease; all three facts are asserted exactly.
pub fn eliminate_triple(
    g: &WeightedGraph,
    triple: [usize; 3],
) -> Result<(WeightedGraph, ReductionStep), WeightedError> {
    check_independent(g, triple)?;
    let before = weighted_profile(g);
    let shift = find_shift(g, triple)?;
    let lambda = triple
        .iter()
        .zip(shift.s.iter())
        .filter(|(_, s)| s.is_negative())
        .map(|(&v, s)| -(g.weight(v) / s))
        .min()
        .expect("a zero-sum nonzero shift has a negative entry");
    assert!(lambda.is_positive());
    let mut weights = g.weights().to_vec();
    for (&v, s) in triple.iter().zip(shift.s.iter()) {
        weights[v] += &lambda * s;
    }
    let removed: Vec<usize> = triple
        .iter()
        .copied()
        .filter(|&v| weights[v].is_zero())
        .collect();
    assert!(!removed.is_empty());
    let result = WeightedGraph::new(g.graph().clone(), weights)?;
    let after = weighted_profile(&result);
    assert_eq!(after.total, before.total, "total weight must be conserved");
    assert!(after.e >= before.e, "e decreased in a triple elimination");
    assert!(after.t >= before.t, "t decreased in a triple elimination");
    let step = ReductionStep {
        triple,
        shift,
        lambda,
        removed,
        e: after.e,
        t: after.t,
    };
    Ok((result, step))
}

fn first_independent_triple(g: &Graph) -> Option<[usize; 3]> {
    let n = g.n();
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            for k in j + 1..n {
                if !g.has_edge(i, k) && !g.has_edge(j, k) {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}

/// Repeatedly eliminates the lexicographically first independent triple
/// until none exists. The result has independence number at most two and
/// the loop takes at most n-2 steps.
pub fn reduce_to_triple_free(g: &WeightedGraph) -> (WeightedGraph, Vec<ReductionStep>) {
    let mut current = g.clone();
    let mut trace = Vec::new();
    let bound = g.order().saturating_sub(2);
    while let Some(triple) = first_independent_triple(current.graph()) {
        let (next, step) = eliminate_triple(&current, triple).expect("triple is independent");
        trace.push(step);
        current = next;
        assert!(trace.len() <= bound, "reduction exceeded n - 2 steps");
    }
    (current, trace)
}

/// Witness that a weighted graph is good: K induces a clique, uv is an edge
/// and it is the only non-triangular edge. By convention w(u) >= w(v).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodDecomposition {
    pub clique: Vec<usize>,
    pub u: usize,
    pub v: usize,
}

pub fn check_good(g: &WeightedGraph) -> Option<GoodDecomposition> {
    let classes = classify(g.graph());
    if classes.non_triangular.len() != 1 {
        return None;
    }
    let (x, y) = classes.non_triangular[0];
    let clique: Vec<usize> = (0..g.order()).filter(|&w| w != x && w != y).collect();
    if !g.graph().is_clique(&clique) {
        return None;
    }
    let (u, v) = if g.weight(x) >= g.weight(y) {
        (x, y)
    } else {
        (y, x)
    };
    Some(GoodDecomposition { clique, u, v })
}

fn rational(n: u64) -> Weight {
    BigRational::from(BigInt::from(n))
}

/// Rounds a good weighted graph with integral total weight n and t > 5n to
/// a family triple: a = ceil(alpha) + 2, b = floor(beta) when beta >= n/2
/// and ceil(beta) otherwise, c = n - a - b. The three rounding guarantees
/// (order preserved, edge capacity, bc >= beta*gamma - 5n) are asserted
/// exactly.
pub fn round_to_family(g: &WeightedGraph) -> Result<Triple, WeightedError> {
    let good = check_good(g).ok_or(WeightedError::NotGood)?;
    let total = g.total();
    if !total.is_integer() || total.is_negative() {
        return Err(WeightedError::TotalWeightNotInteger);
    }
    let n = total.to_integer();
    let beta = g.weight(good.u).clone();
    let gamma = g.weight(good.v).clone();
    let t = &beta * &gamma;
    if t <= BigRational::from(BigInt::from(5) * &n) {
        return Err(WeightedError::RoundingPrecondition);
    }
    let alpha = &total - &beta - &gamma;
    let a: BigInt = alpha.ceil().to_integer() + 2;
    let half = BigRational::new(n.clone(), BigInt::from(2));
    let b: BigInt = if beta >= half {
        beta.floor().to_integer()
    } else {
        beta.ceil().to_integer()
    };
    let c: BigInt = &n - &a - &b;
    assert!(!c.is_negative(), "rounding produced a negative c");
    let triple = Triple {
        a: usize::try_from(&a).expect("a fits usize"),
        b: usize::try_from(&b).expect("b fits usize"),
        c: usize::try_from(&c).expect("c fits usize"),
    };
    // Rounding guarantees, checked exactly at this instance.
    let p = crate::family::profile(&triple);
    let n_rat = BigRational::from(n.clone());
    let edges_needed = &alpha * &alpha / rational(2) + (&n_rat - &beta) * &beta;
    assert!(
        BigRational::from(BigInt::from(p.edges)) >= edges_needed,
        "edge capacity inequality failed"
    );
    let bc = rational(triple.b as u64) * rational(triple.c as u64);
    assert!(
        bc >= &beta * &gamma - rational(5) * &n_rat,
        "bc >= beta*gamma - 5n failed"
    );
    assert_eq!(triple.n(), usize::try_from(&n).unwrap());
    Ok(triple)
}

/// Trades edges for non-triangular weight: u gains x/n and the clique
/// weights are scaled down so their sum drops by x/n. Afterwards
/// t = (beta + x/n)·gamma exactly and the edge loss is at most x; both are
/// asserted.
pub fn exchange_edges_for_t(g: &WeightedGraph, x: &Weight) -> Result<WeightedGraph, WeightedError> {
    if x.is_negative() {
        return Err(WeightedError::NegativeExchange);
    }
    let good = check_good(g).ok_or(WeightedError::NotGood)?;
    if x.is_zero() {
        return Ok(g.clone());
    }
    let n = g.total();
    let alpha: Weight = good.clique.iter().map(|&w| g.weight(w)).sum();
    let move_amount = x / &n;
    if alpha < rational(2) * &move_amount {
        return Err(WeightedError::CliqueTooLight);
    }
    let before = weighted_profile(g);
    let beta = g.weight(good.u).clone();
    let gamma = g.weight(good.v).clone();
    let factor = (&alpha - &move_amount) / &alpha;
    let mut weights = g.weights().to_vec();
    for &w in &good.clique {
        weights[w] *= &factor;
    }
    weights[good.u] += &move_amount;
    let result = WeightedGraph::new(g.graph().clone(), weights)?;
    let after = weighted_profile(&result);
    assert_eq!(after.total, before.total);
    assert_eq!(after.t, (&beta + &move_amount) * &gamma);
    assert!(after.e >= &before.e - x, "edge loss exceeded x");
    Ok(result)
}

/// Trades non-triangular weight for edges: moves x/2n of weight from v to a
/// clique vertex of weight at most alpha/2. Afterwards
/// t = beta·(gamma - x/2n) exactly (asserted); the edge gain of at least
/// (x/2n)(alpha/2) holds for family-shaped good graphs and is checked by the
/// acceptance suite.
pub fn exchange_t_for_edges(g: &WeightedGraph, x: &Weight) -> Result<WeightedGraph, WeightedError> {
    if x.is_negative() {
        return Err(WeightedError::NegativeExchange);
    }
    let good = check_good(g).ok_or(WeightedError::NotGood)?;
    if x.is_zero() {
        return Ok(g.clone());
    }
    if good.clique.len() < 2 {
        return Err(WeightedError::CliqueTooSmall);
    }
    let n = g.total();
    let gamma = g.weight(good.v).clone();
    if gamma < x / &n {
        return Err(WeightedError::FarVertexTooLight);
    }
    let alpha: Weight = good.clique.iter().map(|&w| g.weight(w)).sum();
    let half_alpha = &alpha / rational(2);
    let recipient = good
        .clique
        .iter()
        .copied()
        .min_by(|&p, &q| g.weight(p).cmp(g.weight(q)).then(p.cmp(&q)))
        .expect("clique is non-empty");
    assert!(g.weight(recipient) <= &half_alpha);
    let before = weighted_profile(g);
    let beta = g.weight(good.u).clone();
    let move_amount = x / (rational(2) * &n);
    let mut weights = g.weights().to_vec();
    weights[good.v] -= &move_amount;
    weights[recipient] += &move_amount;
    let result = WeightedGraph::new(g.graph().clone(), weights)?;
    let after = weighted_profile(&result);
    assert_eq!(after.total, before.total);
    assert_eq!(after.t, &beta * (&gamma - &move_amount));
    Ok(result)
}
