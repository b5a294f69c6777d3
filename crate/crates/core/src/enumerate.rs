//! Small graphs up to isomorphism.
//!
//! Every graph on `n` vertices is a graph on `n - 1` vertices plus one vertex
//! with some neighbourhood, so each level is generated from the previous one
//! and deduplicated with [`are_isomorphic`] inside invariant buckets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::are_isomorphic;

/// Largest order [`all_graphs`] will generate.
pub const MAX_ENUMERATION_ORDER: usize = 8;

/// One representative of every isomorphism class on `n` vertices.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::TooLarge { actual: n, cap: MAX_ENUMERATION_ORDER });
    }
    let mut level = vec![Graph::empty(0)];
    for m in 1..=n {
        level = extend_level(&level, m);
    }
    Ok(level)
}

/// One representative of every connected isomorphism class on `n` vertices.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(all_graphs(n)?.into_iter().filter(Graph::is_connected).collect())
}

/// Connected classes on `lo..=hi` vertices, ascending by order.
pub fn connected_graphs_between(lo: usize, hi: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in lo..=hi {
        out.extend(connected_graphs(n)?);
    }
    Ok(out)
}

fn extend_level(prev: &[Graph], m: usize) -> Vec<Graph> {
    let new = m - 1;
    let mut buckets: HashMap<Vec<(usize, Vec<usize>)>, Vec<usize>> = HashMap::new();
    let mut out: Vec<Graph> = Vec::new();
    for g in prev {
        for nb in 0u64..1 << new {
            let edges = g
                .edges()
                .iter()
                .copied()
                .chain((0..new).filter(|&v| nb >> v & 1 == 1).map(|v| (v, new)));
            let h = Graph::new(m, edges).expect("valid extension");
            let bucket = buckets.entry(invariant(&h)).or_default();
            let seen = bucket
                .iter()
                .any(|&i| are_isomorphic(&out[i], &h).expect("within iso cap"));
            if !seen {
                bucket.push(out.len());
                out.push(h);
            }
        }
    }
    out
}

fn invariant(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    let mut inv: Vec<(usize, Vec<usize>)> = g
        .vertices()
        .map(|v| {
            let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nb.sort_unstable();
            (g.degree(v), nb)
        })
        .collect();
    inv.sort_unstable();
    inv
}
