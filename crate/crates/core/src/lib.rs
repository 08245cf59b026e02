//! Maximum s–t flows in directed networks that decompose as clique-sums of
//! planar and bounded-treewidth pieces.
//!
//! Pieces hanging off the s–t path of the decomposition tree are replaced by
//! small mimicking networks with identical terminal cuts; pieces along the
//! path are then folded into each other the same way, the small remaining
//! network is solved directly, and the replacements are undone one at a time
//! to recover a flow on the original edges.

pub mod flow;
pub mod mimic;
pub mod testkit;
pub mod decomp;
pub mod solver;
