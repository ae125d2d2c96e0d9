//! Canonical forms for small graphs via iterated degree refinement and a
//! backtracking search over individualisations.
//!
//! The canonical encoding is the lexicographically smallest upper-triangle
//! bit string over all relabelings reachable in the refinement tree, packed
//! into a `u128` (column-major pair order, the same order graph6 uses, so
//! the canonical graph6 string is the minimum one). Automorphisms are
//! discovered whenever two leaves produce identical encodings; they both
//! prune the search and yield the vertex orbits needed by the
//! canonical-augmentation generator.
//!
//! Capacity is 16 vertices, plenty for desk-scale exhaustive search.

use crate::graph::Graph;
use std::collections::HashMap;

pub const MAX_CANON_N: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    /// Upper-triangle adjacency bits of the canonical relabeling; earlier
    /// pairs occupy higher bits so `u128` order is lexicographic order.
    pub encoding: u128,
    /// vertex -> canonical position
    pub labeling: Vec<usize>,
    /// vertex -> smallest vertex in its automorphism orbit
    pub orbit: Vec<usize>,
}

pub fn canonical_form(g: &Graph) -> Canonical {
    let n = g.n();
    assert!(n <= MAX_CANON_N, "canonical form supports up to 16 vertices");
    if n == 0 {
        return Canonical {
            encoding: 0,
            labeling: Vec::new(),
            orbit: Vec::new(),
        };
    }
    let mut search = Search {
        g,
        n,
        best: None,
        seen: HashMap::new(),
        auts: Vec::new(),
        dsu: Dsu::new(n),
    };
    let mut partition = vec![(0..n).collect::<Vec<usize>>()];
    refine(g, &mut partition);
    let mut prefix = Vec::new();
    search.recurse(partition, &mut prefix);
    let (encoding, labeling) = search.best.expect("at least one leaf");
    let orbit = (0..n).map(|v| search.dsu.find(v)).collect();
    Canonical {
        encoding,
        labeling,
        orbit,
    }
}

/// Canonical representative graph (the relabeled copy).
pub fn canonical_graph(g: &Graph) -> Graph {
    let c = canonical_form(g);
    g.relabel(&c.labeling)
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    best: Option<(u128, Vec<usize>)>,
    seen: HashMap<u128, Vec<usize>>,
    auts: Vec<Vec<usize>>,
    dsu: Dsu,
}

impl<'a> Search<'a> {
    fn recurse(&mut self, partition: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        let target = partition.iter().position(|c| c.len() >= 2);
        let Some(ci) = target else {
            self.leaf(&partition);
            return;
        };
        let cell = partition[ci].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if self.pruned(prefix, &explored, v) {
                explored.push(v);
                continue;
            }
            let mut child: Vec<Vec<usize>> = Vec::with_capacity(partition.len() + 1);
            for (i, c) in partition.iter().enumerate() {
                if i == ci {
                    child.push(vec![v]);
                    child.push(cell.iter().copied().filter(|&u| u != v).collect());
                } else {
                    child.push(c.clone());
                }
            }
            refine(self.g, &mut child);
            prefix.push(v);
            self.recurse(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    /// A sibling subtree is redundant when a known automorphism fixing the
    /// current prefix maps its root into an explored one.
    fn pruned(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        if explored.is_empty() {
            return false;
        }
        self.auts.iter().any(|a| {
            prefix.iter().all(|&p| a[p] == p) && explored.contains(&a[v])
        })
    }

    fn leaf(&mut self, partition: &[Vec<usize>]) {
        let mut labeling = vec![0usize; self.n];
        for (pos, cell) in partition.iter().enumerate() {
            labeling[cell[0]] = pos;
        }
        let encoding = encode(self.g, &labeling);
        match self.seen.get(&encoding) {
            Some(first) => {
                // first^-1 ∘ labeling is an automorphism.
                let mut inv_first = vec![0usize; self.n];
                for (v, &pos) in first.iter().enumerate() {
                    inv_first[pos] = v;
                }
                let aut: Vec<usize> = (0..self.n).map(|v| inv_first[labeling[v]]).collect();
                if aut.iter().enumerate().any(|(v, &w)| v != w) {
                    for (v, &w) in aut.iter().enumerate() {
                        self.dsu.union(v, w);
                    }
                    self.auts.push(aut);
                }
            }
            None => {
                self.seen.insert(encoding, labeling.clone());
            }
        }
        match &self.best {
            Some((e, _)) if *e <= encoding => {}
            _ => self.best = Some((encoding, labeling)),
        }
    }
}

/// Upper-triangle bits in column-major (graph6) pair order, earlier pairs
/// in higher bits.
pub fn encode(g: &Graph, labeling: &[usize]) -> u128 {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    let mut inv = vec![0usize; n];
    for (v, &pos) in labeling.iter().enumerate() {
        inv[pos] = v;
    }
    let total = n * (n - 1) / 2;
    let mut bits: u128 = 0;
    let mut idx = 0usize;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(inv[i], inv[j]) {
                bits |= 1u128 << (127 - idx);
            }
            idx += 1;
        }
    }
    debug_assert_eq!(idx, total);
    bits
}

/// Iterated equitable refinement: vertices are repeatedly split by their
/// neighbour counts into the current cells; new sub-cells are ordered by
/// signature, which keeps the ordered partition isomorphism-invariant.
fn refine(g: &Graph, partition: &mut Vec<Vec<usize>>) {
    loop {
        let mut cell_of = vec![0usize; g.n()];
        for (ci, cell) in partition.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        let k = partition.len();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(k);
        let mut split = false;
        for cell in partition.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut groups: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
            for &v in cell {
                let mut sig = vec![0u32; k];
                for w in g.neighbors(v) {
                    sig[cell_of[w]] += 1;
                }
                match groups.iter_mut().find(|(s, _)| *s == sig) {
                    Some((_, vs)) => vs.push(v),
                    None => groups.push((sig, vec![v])),
                }
            }
            groups.sort_by(|a, b| a.0.cmp(&b.0));
            if groups.len() > 1 {
                split = true;
            }
            for (_, vs) in groups {
                next.push(vs);
            }
        }
        *partition = next;
        if !split {
            return;
        }
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, v: usize) -> usize {
        if self.parent[v] != v {
            let root = self.find(self.parent[v]);
            self.parent[v] = root;
        }
        self.parent[v]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller id becomes the representative
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
