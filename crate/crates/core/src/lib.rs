//! Toolkit for 2-distance list coloring of sparse graphs.
//!
//! The crate covers exact (list) coloring and choosability checks, the ten
//! list-colorable gadgets and their extension procedures, detectors for the
//! reducible configurations of graphs with maximum average degree below 5/2,
//! girth at least 10 and maximum degree 4, a constructive 6-list-colorer for
//! that class, an exact-rational discharging engine with per-vertex
//! certificates, and generators for the extremal example graphs.

pub mod coloring;
pub mod density;
pub mod discharging;
pub mod gadgets;
pub mod generators;
pub mod graph;
pub mod reducibility;

/// Exact rational number kept in lowest terms with a positive denominator.
pub type Rational = num_rational::Ratio<i64>;

pub use graph::{Graph, GraphError, Vertex};
