//! Clique-sum decompositions: block and SPQR splitting, planarity, the
//! refinement used by the solver, and decomposers for the K3,3-free and
//! K5-free families.

mod blocks;
mod family;
mod graph;
mod planar;
mod refine;
mod spqr;
mod tree;

pub use blocks::{articulation_points, biconnected_split, is_biconnected, Block, BlockCut};
pub use family::{
    decompose_k33_free, decompose_k5_free, is_k5, is_wagner, label_counts, separating_triples,
};
pub use graph::SimpleGraph;
pub use planar::{
    is_planar, planar_embed, Kuratowski, NonPlanarWitness, PlanarEmbedding, Planarity,
};
pub use refine::{face_condition_violations, refine, separating_triangles};
pub use spqr::{
    check_spqr_axioms, reassemble_spqr, spqr, SkeletonEdge, SkeletonEdgeKind, SpqrKind,
    SpqrLink, SpqrNode, SpqrTree,
};
pub use tree::{
    validate, validate_with_cap, CliqueId, CliqueNode, ComponentId, ComponentNode,
    DecompositionTree, Label, ValidationReport, DEFAULT_SIZE_CAP,
};

use thiserror::Error;

use crate::flow::{FlowError, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("graph is not biconnected")]
    NotBiconnected,
    #[error("graph is not planar")]
    NotPlanar,
    #[error("not K3,3-minor-free: component {component} contains a {witness}")]
    NotK33MinorFree {
        component: ComponentId,
        witness: NonPlanarWitness,
    },
    #[error("not K5-minor-free: component {component} contains a {witness}")]
    NotK5MinorFree {
        component: ComponentId,
        witness: NonPlanarWitness,
    },
    #[error("unknown component {0}")]
    UnknownComponent(ComponentId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("invalid decomposition tree: {}", .0.join("; "))]
    InvalidTree(Vec<String>),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("internal decomposition error: {0}")]
    Internal(String),
}
