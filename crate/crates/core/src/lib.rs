//! Correspondence colouring of plane graphs.
//!
//! The crate covers the combinatorial pieces needed to study DP-4-colouring
//! of plane graphs without a 4-cycle adjacent to two triangles:
//!
//! * [`plane_graph`]: rotation systems, traced faces, an outer face `D`.
//! * [`structure`]: cycle predicates, separating cycles, sinks, special
//!   faces and the minimal-counterexample audit.
//! * [`dp`]: correspondence assignments, exact solving with precolouring
//!   extension, straightening along a forest, brute-force oracles.
//! * [`reductions`]: the two reducible configurations, graph surgery and
//!   lifting colourings back.
//! * [`discharging`]: exact-rational charges, the transfer rules and the
//!   outer-face balance.
//! * [`io`], [`generate`], [`pipeline`]: text formats, seeded instance
//!   generators and batch verification used by the `dpcolor` binary.

pub mod discharging;
pub mod dp;
pub mod generate;
pub mod io;
pub mod pipeline;
pub mod plane_graph;
pub mod reductions;
pub mod structure;

pub use plane_graph::{Face, FaceId, Graph, GraphError, Plane, PlaneGraph, Vertex};
