//! Minimum nesting of interval graphs.

pub mod cliques;
pub mod codec;
pub mod dp;
pub mod error;
pub mod graph;
pub mod hardness;
pub mod mpq;
pub mod oracle;
mod pqtree;
pub mod repr;

pub use cliques::{maximal_cliques, CliqueList};
pub use codec::{decode, encode, BitCode};
pub use dp::{
    build_minimal_representation, leaf_triple, min_nesting, p_node_triple, q_node_triple, recognize_k_nested, Choice,
    DpAnnotation, QNodeResult, QValues, Triple,
};
pub use error::{Error, Result};
pub use graph::{induced_subgraph, parse_graph, prune_twins, random_interval_graph, Graph, TwinReduction};
pub use hardness::{
    reduce_3partition, reduce_3partition_with, solve_small, verify_extension, HardnessInstance, PartialRepresentation,
    ReduceOptions, Role, ThreePartitionInstance,
};
pub use mpq::{build_mpq_tree, ForcedNestingDag, MpqNode, MpqTree, VertexHome};
pub use oracle::{
    attach_gadget, brute_nesting, brute_nesting_with, brute_triple, brute_triple_with, GadgetKind, OracleConfig,
};
pub use repr::{
    cleaned_representation, parse_representation, Coord, Interval, IntervalRepresentation, LayerLabeling, NestingStats,
};
