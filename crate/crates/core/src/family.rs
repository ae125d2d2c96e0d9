//! The extremal family G(a,b,c) and the exact optimisation of g(n,e) and
//! t(n,e) over integer triples.
//!
//! G(a,b,c) consists of a clique A of size a and independent sets B, C of
//! sizes b and c, where B is complete to A ∪ C and there are no A-C edges.
//! It has binom(a,2) + b(a+c) edges; bc of them are non-triangular, with
//! exact corrections in the degenerate cases a = 1 and (a = 2, b = 0).

use crate::graph::Graph;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("edge count {e} out of range ({lo}, {hi}] for n = {n}")]
    EdgeCountOutOfRange { n: usize, e: u64, lo: u64, hi: u64 },
    #[error("delta must lie strictly between 0 and 1/10")]
    DeltaOutOfRange,
    #[error("n = {0} too small: the witness triple needs b, c >= 1")]
    WitnessTooSmall(usize),
    #[error("infeasible rounding: b + c exceeds n")]
    InfeasibleRounding,
}

/// Parameters (a, b, c) of the family member G(a,b,c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Triple {
    pub fn n(&self) -> usize {
        self.a + self.b + self.c
    }

    /// CSV form "a,b,c".
    pub fn csv(&self) -> String {
        format!("{},{},{}", self.a, self.b, self.c)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Exact edge and non-triangular edge counts of a family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyProfile {
    pub edges: u64,
    pub non_triangular: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaKind {
    G,
    T,
}

impl fmt::Display for FormulaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaKind::G => write!(f, "g"),
            FormulaKind::T => write!(f, "t"),
        }
    }
}

/// Optimal value together with every optimising triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaResult {
    pub value: u64,
    pub argmins: Vec<Triple>,
    pub kind: FormulaKind,
}

pub(crate) fn binom2(x: usize) -> u64 {
    (x as u64) * (x as u64).saturating_sub(1) / 2
}

/// Builds the literal graph: vertices 0..a form A, then b vertices of B,
/// then c vertices of C.
pub fn construct(t: &Triple) -> Graph {
    let (a, b, c) = (t.a, t.b, t.c);
    let n = a + b + c;
    let mut g = Graph::empty(n);
    for u in 0..a {
        for v in u + 1..a {
            g.add_edge(u, v);
        }
    }
    for u in a..a + b {
        for v in 0..a {
            g.add_edge(u, v);
        }
        for v in a + b..n {
            g.add_edge(u, v);
        }
    }
    g
}

/// Closed-form profile, exact in every degenerate case:
/// A-B edges are non-triangular iff a = 1, and the single clique edge of
/// a = 2 is non-triangular iff b = 0.
pub fn profile(t: &Triple) -> FamilyProfile {
    let (a, b, c) = (t.a as u64, t.b as u64, t.c as u64);
    let edges = binom2(t.a) + b * (a + c);
    let mut non_triangular = b * c;
    if a == 1 {
        non_triangular += b;
    }
    if a == 2 && b == 0 {
        non_triangular += 1;
    }
    FamilyProfile {
        edges,
        non_triangular,
    }
}

fn floor_quarter_sq(n: usize) -> u64 {
    ((n as u64) * (n as u64)) / 4
}

fn optimize<F>(n: usize, mut better: F) -> (u64, Vec<Triple>)
where
    F: FnMut(&Triple, &FamilyProfile) -> Option<u64>,
{
    let mut best: Option<u64> = None;
    let mut argmins = Vec::new();
    for a in 0..=n {
        for b in 0..=(n - a) {
            let t = Triple { a, b, c: n - a - b };
            let p = profile(&t);
            if let Some(score) = better(&t, &p) {
                match best {
                    Some(v) if score > v => {}
                    Some(v) if score == v => argmins.push(t),
                    _ => {
                        best = Some(score);
                        argmins = vec![t];
                    }
                }
            }
        }
    }
    (best.expect("feasible triple exists"), argmins)
}

/// g(n,e) = min { e - non_triangular(a,b,c) : a+b+c = n, edges(a,b,c) >= e },
/// using the degeneracy-corrected profile. Requires floor(n^2/4) < e <= C(n,2).
pub fn g_formula(n: usize, e: u64) -> Result<FormulaResult, FamilyError> {
    let lo = floor_quarter_sq(n);
    let hi = binom2(n);
    if e <= lo || e > hi {
        return Err(FamilyError::EdgeCountOutOfRange { n, e, lo, hi });
    }
    let (value, argmins) = optimize(n, |_, p| {
        if p.edges >= e {
            // Feasible capacities never exceed e: bc <= floor(n^2/4) < e and
            // the degeneracy bonuses stay within that bound.
            Some(e.checked_sub(p.non_triangular).expect("capacity below e"))
        } else {
            None
        }
    });
    Ok(FormulaResult {
        value,
        argmins,
        kind: FormulaKind::G,
    })
}

/// The family's conjectured value of t(n,e): for e <= floor(n^2/4) this is
/// floor(n^2/4) with the balanced complete bipartite witness; otherwise the
/// maximum non-triangular count over feasible triples. (Whether this equals
/// the true maximum at small orders is exactly what the search module
/// measures.)
pub fn t_formula(n: usize, e: u64) -> Result<FormulaResult, FamilyError> {
    let hi = binom2(n);
    if e > hi {
        return Err(FamilyError::EdgeCountOutOfRange { n, e, lo: 0, hi });
    }
    let quarter = floor_quarter_sq(n);
    if e <= quarter {
        return Ok(FormulaResult {
            value: quarter,
            argmins: vec![Triple {
                a: 0,
                b: n.div_ceil(2),
                c: n / 2,
            }],
            kind: FormulaKind::T,
        });
    }
    let (neg_value, argmins) = optimize(n, |_, p| {
        if p.edges >= e {
            // optimize minimises, so negate against the ceiling.
            Some(hi - p.non_triangular)
        } else {
            None
        }
    });
    Ok(FormulaResult {
        value: hi - neg_value,
        argmins,
        kind: FormulaKind::T,
    })
}

fn rational_floor(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

/// The density witness triple: c = floor(n*delta/2), b = floor(n*sqrt(delta)),
/// a = n - b - c. For 0 < delta < 1/10 and n large enough that b, c >= 1,
/// its exact profile has at least (1/2 - delta)n^2 - 2n edges and at least
/// (delta^{3/2}/2)n^2 - 2n non-triangular edges.
pub fn witness_construction(n: usize, delta: &BigRational) -> Result<Triple, FamilyError> {
    let tenth = BigRational::new(BigInt::from(1), BigInt::from(10));
    if !delta.is_positive() || *delta >= tenth {
        return Err(FamilyError::DeltaOutOfRange);
    }
    let n_big = BigInt::from(n);
    // b = floor(n * sqrt(delta)) = isqrt(floor(n^2 * delta))
    let scaled = rational_floor(&(delta * BigRational::from(&n_big * &n_big)));
    let b = scaled.sqrt();
    let c = rational_floor(&(delta * BigRational::from(n_big.clone()) / BigInt::from(2)));
    if b.is_zero() || c.is_zero() {
        return Err(FamilyError::WitnessTooSmall(n));
    }
    let (b, c) = (
        b.to_usize().ok_or(FamilyError::InfeasibleRounding)?,
        c.to_usize().ok_or(FamilyError::InfeasibleRounding)?,
    );
    if b + c > n {
        return Err(FamilyError::InfeasibleRounding);
    }
    Ok(Triple { a: n - b - c, b, c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::classify;
    use num_traits::One;

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn construct_shapes() {
        let g = construct(&Triple { a: 4, b: 6, c: 5 });
        assert_eq!(g.n(), 15);
        assert_eq!(g.edge_count(), 60);
        assert_eq!(construct(&Triple { a: 5, b: 0, c: 0 }), Graph::complete(5));
        // G(0,b,c) is complete bipartite.
        let g = construct(&Triple { a: 0, b: 2, c: 3 });
        assert_eq!(g.edge_count(), 6);
        assert_eq!(classify(&g).t(), 6);
    }

    #[test]
    fn profile_matches_classify_small() {
        for a in 0..=8 {
            for b in 0..=(8 - a) {
                for c in 0..=(8 - a - b) {
                    let t = Triple { a, b, c };
                    let p = profile(&t);
                    let cl = classify(&construct(&t));
                    assert_eq!(p.edges as usize, cl.e(), "edges differ at {t}");
                    assert_eq!(p.non_triangular as usize, cl.t(), "t differs at {t}");
                }
            }
        }
    }

    #[test]
    fn profile_degenerate_examples() {
        assert_eq!(
            profile(&Triple { a: 1, b: 3, c: 2 }),
            FamilyProfile {
                edges: 9,
                non_triangular: 9
            }
        );
        // The Erdos-Faudree-Rousseau extremal graph at n = 5.
        assert_eq!(
            profile(&Triple { a: 2, b: 2, c: 1 }),
            FamilyProfile {
                edges: 7,
                non_triangular: 2
            }
        );
    }

    #[test]
    fn g_formula_examples() {
        let r = g_formula(5, 7).unwrap();
        assert_eq!(r.value, 5);
        assert_eq!(r.argmins, vec![Triple { a: 2, b: 2, c: 1 }]);

        let r = g_formula(5, 8).unwrap();
        assert_eq!(r.value, 8);
        assert_eq!(
            r.argmins,
            vec![
                Triple { a: 3, b: 2, c: 0 },
                Triple { a: 4, b: 1, c: 0 },
                Triple { a: 5, b: 0, c: 0 }
            ]
        );

        let r = g_formula(6, 15).unwrap();
        assert_eq!(r.value, 15);
        assert!(r.argmins.contains(&Triple { a: 6, b: 0, c: 0 }));

        assert!(matches!(
            g_formula(5, 6),
            Err(FamilyError::EdgeCountOutOfRange { .. })
        ));
        assert!(matches!(
            g_formula(5, 11),
            Err(FamilyError::EdgeCountOutOfRange { .. })
        ));
    }

    #[test]
    fn t_formula_examples() {
        let r = t_formula(6, 9).unwrap();
        assert_eq!(r.value, 9);
        assert_eq!(r.argmins, vec![Triple { a: 0, b: 3, c: 3 }]);

        let r = t_formula(5, 7).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.argmins, vec![Triple { a: 2, b: 2, c: 1 }]);

        assert_eq!(t_formula(7, 21).unwrap().value, 0);
        assert!(t_formula(7, 22).is_err());
    }

    #[test]
    fn g_t_duality_and_monotonicity() {
        for n in 2..=12usize {
            let lo = (n * n / 4) as u64;
            let hi = binom2(n);
            let mut prev_g = 0u64;
            let mut prev_t = u64::MAX;
            for e in lo + 1..=hi {
                let g = g_formula(n, e).unwrap().value;
                let t = t_formula(n, e).unwrap().value;
                assert_eq!(g + t, e, "duality fails at ({n},{e})");
                assert!(g >= prev_g);
                assert!(t <= prev_t);
                prev_g = g;
                prev_t = t;
            }
        }
    }

    #[test]
    fn erdos_faudree_rousseau_small() {
        for n in 5..=20usize {
            let e = (n * n / 4) as u64 + 1;
            let r = g_formula(n, e).unwrap();
            assert_eq!(r.value, 2 * (n as u64 / 2) + 1, "n = {n}");
        }
    }

    #[test]
    fn witness_examples() {
        assert_eq!(
            witness_construction(100, &ratio(1, 16)).unwrap(),
            Triple { a: 72, b: 25, c: 3 }
        );
        assert_eq!(
            witness_construction(400, &ratio(1, 25)).unwrap(),
            Triple {
                a: 312,
                b: 80,
                c: 8
            }
        );
        assert!(matches!(
            witness_construction(4, &ratio(1, 16)),
            Err(FamilyError::WitnessTooSmall(_))
        ));
        assert!(witness_construction(100, &BigRational::one()).is_err());
    }

    #[test]
    fn witness_profile_bounds() {
        // edges >= (1/2 - d)n^2 - 2n and bc >= (d^{3/2}/2)n^2 - 2n, the latter
        // compared exactly by squaring both sides.
        for (n, num, den) in [(100usize, 1i64, 16i64), (400, 1, 25), (777, 3, 50)] {
            let d = ratio(num, den);
            let t = witness_construction(n, &d).unwrap();
            let p = profile(&t);
            let n2 = ratio((n * n) as i64, 1);
            let lower_e = (ratio(1, 2) - &d) * &n2 - ratio(2 * n as i64, 1);
            assert!(BigRational::from(BigInt::from(p.edges)) >= lower_e, "n={n}");
            let lhs = BigRational::from(BigInt::from(p.non_triangular))
                + ratio(2 * n as i64, 1);
            // lhs >= d^{3/2} n^2 / 2  <=>  (2*lhs/n^2)^2 >= d^3
            let scaled = lhs * ratio(2, (n * n) as i64);
            assert!(&scaled * &scaled >= &d * &d * &d, "n={n}");
        }
    }
}
