//! Text formats: graph6, plain edge lists, and weighted graphs.
//!
//! graph6 follows the de-facto specification bit-exactly: an optional
//! `>>graph6<<` header, the order as N(n), then the upper triangle of the
//! adjacency matrix read column by column, packed big-endian into 6-bit
//! groups stored as printable bytes 63..=126.

use crate::graph::Graph;
use crate::weighted::{Weight, WeightedGraph};
use num_traits::Signed;
use std::fmt::Write as _;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty input")]
    Empty,
    #[error("graph6: invalid byte {byte:#x} at position {pos}")]
    InvalidByte { byte: u8, pos: usize },
    #[error("graph6: order too large to decode")]
    OrderTooLarge,
    #[error("graph6: expected {expected} data bytes, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("weighted graph rejected: {0}")]
    InvalidWeights(String),
}

const GRAPH6_HEADER: &str = ">>graph6<<";

fn append_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    } else {
        out.push(126);
        out.push(126);
        for shift in (0..6).rev() {
            out.push(((n >> (6 * shift)) & 0x3f) as u8 + 63);
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes = Vec::new();
    append_size(&mut bytes, n);
    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            if g.has_edge(i, j) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                bytes.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        bytes.push(group + 63);
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable")
}

pub fn from_graph6(s: &str) -> Result<Graph, FormatError> {
    let line = s
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or(FormatError::Empty)?;
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(FormatError::InvalidByte { byte: b, pos });
        }
    }
    let (n, data) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(FormatError::OrderTooLarge);
        }
        let n = ((bytes[1] - 63) as usize) << 12
            | ((bytes[2] - 63) as usize) << 6
            | (bytes[3] - 63) as usize;
        (n, &bytes[4..])
    } else {
        return Err(FormatError::OrderTooLarge);
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if data.len() != expected {
        return Err(FormatError::WrongLength {
            expected,
            found: data.len(),
        });
    }
    let mut g = Graph::empty(n);
    let mut idx = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = data[idx / 6] - 63;
            let bit = (byte >> (5 - (idx % 6))) & 1;
            if bit == 1 {
                g.add_edge(i, j);
            }
            idx += 1;
            if idx == bits {
                break 'outer;
            }
        }
    }
    Ok(g)
}

/// Edge list: first line "n m", then m lines "u v" with 0-based ids.
/// Blank lines and "#" comments are ignored.
pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn content_lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            None
        } else {
            Some((i + 1, l))
        }
    })
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), FormatError> {
    let mut it = text.split_whitespace();
    let bad = |msg: &str| FormatError::Malformed {
        line,
        msg: msg.to_string(),
    };
    let a = it
        .next()
        .ok_or_else(|| bad("expected two integers"))?
        .parse()
        .map_err(|_| bad("expected an integer"))?;
    let b = it
        .next()
        .ok_or_else(|| bad("expected two integers"))?
        .parse()
        .map_err(|_| bad("expected an integer"))?;
    if it.next().is_some() {
        return Err(bad("trailing tokens"));
    }
    Ok((a, b))
}

pub fn from_edge_list(s: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(s);
    let (ln, header) = lines.next().ok_or(FormatError::Empty)?;
    let (n, m) = parse_pair(ln, header)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, text) = lines.next().ok_or_else(|| FormatError::Malformed {
            line: 0,
            msg: format!("expected {m} edge lines"),
        })?;
        let (u, v) = parse_pair(ln, text)?;
        if u >= n {
            return Err(FormatError::VertexOutOfRange { vertex: u, order: n });
        }
        if v >= n {
            return Err(FormatError::VertexOutOfRange { vertex: v, order: n });
        }
        if u == v {
            return Err(FormatError::Malformed {
                line: ln,
                msg: "self-loop".to_string(),
            });
        }
        edges.push((u, v));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(FormatError::Malformed {
            line: ln,
            msg: "unexpected content after edges".to_string(),
        });
    }
    Graph::from_edges(n, &edges).map_err(|e| FormatError::Malformed {
        line: 0,
        msg: e.to_string(),
    })
}

/// Weighted graph text: line 1 "n m", then n lines "vertexId num/den"
/// (plain "k" allowed for integers), then m lines "u v".
pub fn to_weighted_text(g: &WeightedGraph) -> String {
    let edges = g.graph().edges();
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.order(), edges.len());
    for v in 0..g.order() {
        let _ = writeln!(out, "{v} {}", g.weight(v));
    }
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn from_weighted_text(s: &str) -> Result<WeightedGraph, FormatError> {
    let mut lines = content_lines(s);
    let (ln, header) = lines.next().ok_or(FormatError::Empty)?;
    let (n, m) = parse_pair(ln, header)?;
    let mut weights: Vec<Option<Weight>> = vec![None; n];
    for _ in 0..n {
        let (ln, text) = lines.next().ok_or_else(|| FormatError::Malformed {
            line: 0,
            msg: format!("expected {n} weight lines"),
        })?;
        let bad = |msg: &str| FormatError::Malformed {
            line: ln,
            msg: msg.to_string(),
        };
        let mut it = text.split_whitespace();
        let id: usize = it
            .next()
            .ok_or_else(|| bad("expected vertex id"))?
            .parse()
            .map_err(|_| bad("expected an integer id"))?;
        let w = Weight::from_str(it.next().ok_or_else(|| bad("expected a weight"))?)
            .map_err(|_| bad("expected a rational num/den"))?;
        if it.next().is_some() {
            return Err(bad("trailing tokens"));
        }
        if id >= n {
            return Err(FormatError::VertexOutOfRange { vertex: id, order: n });
        }
        if weights[id].is_some() {
            return Err(bad("duplicate vertex id"));
        }
        if w.is_negative() {
            return Err(bad("negative weight"));
        }
        weights[id] = Some(w);
    }
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, text) = lines.next().ok_or_else(|| FormatError::Malformed {
            line: 0,
            msg: format!("expected {m} edge lines"),
        })?;
        let (u, v) = parse_pair(ln, text)?;
        if u >= n {
            return Err(FormatError::VertexOutOfRange { vertex: u, order: n });
        }
        if v >= n {
            return Err(FormatError::VertexOutOfRange { vertex: v, order: n });
        }
        edges.push((u, v));
    }
    let graph = Graph::from_edges(n, &edges).map_err(|e| FormatError::Malformed {
        line: 0,
        msg: e.to_string(),
    })?;
    let weights: Vec<Weight> = weights.into_iter().map(|w| w.unwrap()).collect();
    WeightedGraph::new(graph, weights).map_err(|e| FormatError::InvalidWeights(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn graph6_known_vectors() {
        // 5 vertices, edges 0-2, 0-4, 1-3, 3-4 encodes to "DQc".
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(to_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
    }

    #[test]
    fn graph6_roundtrip() {
        for g in [
            Graph::empty(0),
            Graph::empty(7),
            Graph::complete(7),
            Graph::cycle(9),
            Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap(),
        ] {
            assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }

    #[test]
    fn graph6_header_and_errors() {
        let g = from_graph6(">>graph6<<Bw").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert!(matches!(
            from_graph6("B"),
            Err(FormatError::WrongLength { .. })
        ));
        assert!(matches!(from_graph6(""), Err(FormatError::Empty)));
        assert!(matches!(
            from_graph6("B\u{1}"),
            Err(FormatError::InvalidByte { .. })
        ));
    }

    #[test]
    fn graph6_long_form_order() {
        let g = Graph::empty(100);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn edge_list_roundtrip_and_comments() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
        let text = "# a path\n\n4 3\n0 1\n# middle\n1 2\n2 3\n";
        assert_eq!(from_edge_list(text).unwrap(), g);
        assert!(from_edge_list("4 2\n0 1\n").is_err());
        assert!(from_edge_list("2 1\n0 5\n").is_err());
    }

    #[test]
    fn weighted_text_roundtrip() {
        let graph = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let weights = vec![
            BigRational::new(BigInt::from(3), BigInt::from(2)),
            BigRational::from(BigInt::from(2)),
            BigRational::new(BigInt::from(5), BigInt::from(4)),
        ];
        let wg = WeightedGraph::new(graph, weights).unwrap();
        let text = to_weighted_text(&wg);
        assert!(text.contains("3/2"));
        assert_eq!(from_weighted_text(&text).unwrap(), wg);
        assert!(from_weighted_text("1 0\n0 -1\n").is_err());
    }
}
