//! Exact machinery for minimising the number of triangular edges among
//! n-vertex graphs with a given number of edges.
//!
//! - [`graph`]: bitset graphs, triangular/non-triangular classification,
//!   clone sets, and spanning embedding into the extremal family.
//! - [`family`]: the family G(a,b,c), its exact closed-form profile, and
//!   the g(n,e) / t(n,e) optimisers.
//! - [`weighted`]: rational-weighted graphs, independent-triple
//!   elimination, good decompositions, integer rounding and exchange moves.
//! - [`compress`]: the compression procedure and its certificate checker.
//! - [`canon`], [`enumerate`], [`search`]: canonical forms, isomorphism-free
//!   generation, brute-force verification and Pareto frontiers.
//! - [`io`]: graph6, edge-list and weighted-graph text formats.

pub mod bitset;
pub mod canon;
pub mod compress;
pub mod enumerate;
pub mod family;
pub mod graph;
pub mod io;
pub mod search;
pub mod weighted;

pub use family::{FormulaKind, FormulaResult, Triple};
pub use graph::{classify, EdgeClassification, Graph};
pub use search::{ParetoPoint, SearchOptions, VerificationReport};
pub use weighted::{WeightedGraph, WeightedProfile};
