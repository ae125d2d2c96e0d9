//! Simple graphs with bitset adjacency, triangular/non-triangular edge
//! classification, clone detection, and embedding into the extremal family.
//!
//! An edge is *triangular* when it lies in at least one triangle, i.e. when
//! the neighbourhoods of its endpoints intersect. `t(G)` counts the
//! non-triangular edges.

use crate::bitset::Bitset;
use crate::family::Triple;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// An undirected simple graph on vertices `0..n`.
///
/// Adjacency is stored as one neighbour bitset per vertex, so deciding
/// whether an edge is triangular is a single row intersection.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    rows: Vec<Bitset>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: vec![Bitset::new(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, order: n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for u in 0..n {
                g.add_edge(u, (u + 1) % n);
            }
        } else if n == 2 {
            g.add_edge(0, 1);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn row(&self, u: usize) -> &Bitset {
        &self.rows[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[u].iter_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count()).sum::<usize>() / 2
    }

    /// Edges in lexicographic order (min endpoint, then max endpoint).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.rows[u].iter_ones() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Induced subgraph on `keep`; `keep[i]` becomes vertex `i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Extends the graph with a new last vertex adjacent to the set bits of
    /// `mask` (indices into the existing vertices).
    pub fn with_added_vertex(&self, mask: u64) -> Graph {
        let n = self.n + 1;
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for u in 0..self.n {
            if (mask >> u) & 1 == 1 {
                g.add_edge(u, self.n);
            }
        }
        g
    }

    pub fn is_clique(&self, verts: &[usize]) -> bool {
        verts
            .iter()
            .enumerate()
            .all(|(i, &u)| verts[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_independent(&self, verts: &[usize]) -> bool {
        verts
            .iter()
            .enumerate()
            .all(|(i, &u)| verts[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }
}

/// Partition of the edge set into triangular and non-triangular edges,
/// both in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClassification {
    pub triangular: Vec<(usize, usize)>,
    pub non_triangular: Vec<(usize, usize)>,
}

impl EdgeClassification {
    /// Number of non-triangular edges, t(G).
    pub fn t(&self) -> usize {
        self.non_triangular.len()
    }

    /// Total number of edges, e(G).
    pub fn e(&self) -> usize {
        self.triangular.len() + self.non_triangular.len()
    }
}

/// Classifies every edge: `uv` is triangular iff `N(u)` and `N(v)` intersect.
pub fn classify(g: &Graph) -> EdgeClassification {
    let mut triangular = Vec::new();
    let mut non_triangular = Vec::new();
    for (u, v) in g.edges() {
        if g.row(u).intersects(g.row(v)) {
            triangular.push((u, v));
        } else {
            non_triangular.push((u, v));
        }
    }
    EdgeClassification {
        triangular,
        non_triangular,
    }
}

/// Per-vertex sets of non-triangular neighbours.
pub fn non_triangular_adjacency(g: &Graph) -> Vec<Bitset> {
    let mut rows = vec![Bitset::new(g.n()); g.n()];
    for (u, v) in classify(g).non_triangular {
        rows[u].insert(v);
        rows[v].insert(u);
    }
    rows
}

/// Number of non-triangular edges at `u`; a vertex is *triangular* iff this
/// is zero.
pub fn non_triangular_degree(g: &Graph, u: usize) -> Result<usize, GraphError> {
    if u >= g.n() {
        return Err(GraphError::VertexOutOfRange {
            vertex: u,
            order: g.n(),
        });
    }
    Ok(non_triangular_adjacency(g)[u].count())
}

/// A set of vertices with pairwise identical neighbourhoods (hence
/// independent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloneSet {
    pub vertices: Vec<usize>,
}

/// Partitions `s` into maximal classes of equal-neighbourhood vertices.
/// Classes are ordered by decreasing size, ties by smallest member.
pub fn clone_partition(g: &Graph, s: &[usize]) -> Vec<CloneSet> {
    let mut members: Vec<usize> = s.to_vec();
    members.sort_unstable();
    members.dedup();
    let mut classes: Vec<CloneSet> = Vec::new();
    for &v in &members {
        match classes
            .iter_mut()
            .find(|c| g.row(c.vertices[0]) == g.row(v))
        {
            Some(c) => c.vertices.push(v),
            None => classes.push(CloneSet { vertices: vec![v] }),
        }
    }
    classes.sort_by_key(|c| (std::cmp::Reverse(c.vertices.len()), c.vertices[0]));
    classes
}

/// Searches for a triple (a,b,c) with a+b+c = n such that `g` is a spanning
/// subgraph of G(a,b,c); triples are scanned in lexicographic order and the
/// first hit is returned.
///
/// The embedding is a part assignment: edges of `g` must avoid B-B, C-C and
/// A-C pairs, and each vertex needs enough target degree for its part.
pub fn is_spanning_subgraph_of_family(g: &Graph) -> Option<Triple> {
    let n = g.n();
    let e = g.edge_count() as u64;
    for a in 0..=n {
        for b in 0..=(n - a) {
            let c = n - a - b;
            let t = Triple { a, b, c };
            if crate::family::profile(&t).edges < e {
                continue;
            }
            if !degree_sequence_fits(g, &t) {
                continue;
            }
            if embeds(g, &t) {
                return Some(t);
            }
        }
    }
    None
}

fn degree_sequence_fits(g: &Graph, t: &Triple) -> bool {
    let mut gd: Vec<usize> = (0..g.n()).map(|u| g.degree(u)).collect();
    gd.sort_unstable_by(|x, y| y.cmp(x));
    let mut td = Vec::with_capacity(g.n());
    td.extend(std::iter::repeat_n(t.a.saturating_sub(1) + t.b, t.a));
    td.extend(std::iter::repeat_n(t.a + t.c, t.b));
    td.extend(std::iter::repeat_n(t.b, t.c));
    td.sort_unstable_by(|x, y| y.cmp(x));
    gd.iter().zip(td.iter()).all(|(d, m)| d <= m)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    A,
    B,
    C,
}

fn embeds(g: &Graph, t: &Triple) -> bool {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| (std::cmp::Reverse(g.degree(u)), u));
    let mut assign: Vec<Option<Part>> = vec![None; n];
    let mut rem = [t.a, t.b, t.c];
    backtrack(g, t, &order, 0, &mut assign, &mut rem)
}

fn backtrack(
    g: &Graph,
    t: &Triple,
    order: &[usize],
    idx: usize,
    assign: &mut Vec<Option<Part>>,
    rem: &mut [usize; 3],
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    let deg = g.degree(v);
    for (pi, part) in [(0, Part::A), (1, Part::B), (2, Part::C)] {
        if rem[pi] == 0 {
            continue;
        }
        let cap = match part {
            Part::A => t.a - 1 + t.b,
            Part::B => t.a + t.c,
            Part::C => t.b,
        };
        if deg > cap {
            continue;
        }
        let ok = g.neighbors(v).all(|w| match assign[w] {
            None => true,
            Some(p) => match part {
                Part::A => p != Part::C,
                Part::B => p != Part::B,
                Part::C => p != Part::C && p != Part::A,
            },
        });
        if !ok {
            continue;
        }
        assign[v] = Some(part);
        rem[pi] -= 1;
        if backtrack(g, t, order, idx + 1, assign, rem) {
            return true;
        }
        rem[pi] += 1;
        assign[v] = None;
    }
    false
}

#[cfg(test)]
pub(crate) mod test_oracles {
    use super::Graph;

    /// Naive O(n*e) classifier: edge uv is triangular iff some w is adjacent
    /// to both endpoints. Independent of the bitset route.
    pub fn naive_classify(g: &Graph) -> (usize, usize) {
        let mut tri = 0;
        let mut non = 0;
        for (u, v) in g.edges() {
            let mut found = false;
            for w in 0..g.n() {
                if w != u && w != v && g.has_edge(u, w) && g.has_edge(v, w) {
                    found = true;
                    break;
                }
            }
            if found {
                tri += 1;
            } else {
                non += 1;
            }
        }
        (tri, non)
    }
}
