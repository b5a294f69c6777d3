//! Modular decomposition, generalised lexicographic products and the
//! distance-preserving (dp) and sequentially distance-preserving (sdp)
//! properties of small graphs.
//!
//! Every decider here either returns a checkable certificate, a definite
//! negative backed by an exhaustive search, or [`Error::BudgetExceeded`].

pub mod budget;
pub mod error;
pub mod graph;
pub mod iso;
pub mod metric;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::{DistanceMatrix, Graph, InducedSubgraph, VertexSubset};
pub use iso::{are_isomorphic, are_isomorphic_capped};
pub use metric::{
    deletion_sets, geodesic, is_dp, is_isometric, ndp_set, sdp_order, DeletionSets, DpCertificate,
    DpVerdict, IsometryIndex, NdpReport, SdpOrder, SearchOptions,
};
pub mod modular;
pub mod products;

pub use modular::{
    co_components, has_k2_quotient, is_module, maximal_modular_partition, minimal_quotient, quotient,
    smallest_module_containing, ModularPartition, QuotientGraph,
};
pub use products::{
    cartesian_product, generalized_lex_product, generalized_lex_product_relaxed, lex_distance,
    lex_product, project_pi, GraphFamily, LexMetric, ProductGraph, ProductKind,
};
pub mod dp;
pub mod enumerate;
pub mod io;

pub use dp::{
    cartesian_dp_construct, construct_product_dp_certificate, cor_lex_dp_check, dp_prime_product_rule,
    dp_prime_product_sides, find_long_induced_cycle, isometry_transfer_check, no_long_induced_cycle,
    non_dp_intervals, partition_dp_certificate, probe_cartesian_dp_conjecture, sdp_inheritance, thm2_check,
    thm2_check_with, ConjectureProbe, NonDpInterval, ProductRuleSides,
};
