//! Edge-list and DOT formats, and the bundled datasets.

pub mod datasets;
pub mod dot;
pub mod edgelist;

pub use datasets::{sha256_hex, Dataset};
pub use dot::{emit_dot, partition_dot, product_dot, quotient_dot, DotOptions};
pub use edgelist::{emit_edge_list, parse_edge_list, parse_edge_list_with_warnings, ParsedEdgeList};
