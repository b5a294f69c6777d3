//! Modules, modular partitions and quotient graphs.
//!
//! A module is a vertex set `S` such that every vertex outside `S` sees
//! either all of `S` or none of it. The top-level partition is found with a
//! closure engine: the smallest module containing a seed is the least fixed
//! point of "add every outside vertex that sees some but not all of the
//! current set". When both the graph and its complement are connected, the
//! maximal proper module containing `v` is the union of the proper closures
//! of `{v, u}` over all `u`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset};
use crate::products::GraphFamily;

fn count_in(g: &Graph, x: usize, set: &[u64]) -> u32 {
    g.row(x).iter().zip(set).map(|(a, b)| (a & b).count_ones()).sum()
}

/// True iff every vertex outside `s` is adjacent to all of `s` or to none of it.
pub fn is_module(g: &Graph, s: &VertexSubset) -> Result<bool> {
    s.check_host(g)?;
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    let bits = s.bits();
    let full = s.len() as u32;
    Ok(g
        .vertices()
        .filter(|&x| !s.contains(x))
        .all(|x| {
            let c = count_in(g, x, &bits);
            c == 0 || c == full
        }))
}

/// Unique smallest module containing `seed`.
pub fn smallest_module_containing(g: &Graph, seed: &VertexSubset) -> Result<VertexSubset> {
    seed.check_host(g)?;
    if seed.is_empty() {
        return Err(Error::EmptySubset);
    }
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for v in seed.iter() {
        inside[v] = true;
    }
    let mut bits = seed.bits();
    let mut size = seed.len() as u32;
    loop {
        let splitters: Vec<usize> = (0..n)
            .filter(|&x| !inside[x])
            .filter(|&x| {
                let c = count_in(g, x, &bits);
                c > 0 && c < size
            })
            .collect();
        if splitters.is_empty() {
            break;
        }
        for x in splitters {
            inside[x] = true;
            bits[x / 64] |= 1 << (x % 64);
            size += 1;
        }
    }
    Ok(VertexSubset::from_sorted(n, (0..n).filter(|&v| inside[v]).collect()))
}

/// Components of the complement graph, ordered by least vertex id.
pub fn co_components(g: &Graph) -> Vec<VertexSubset> {
    g.complement().components()
}

/// K₂ is a quotient of `g` exactly when the complement of `g` is disconnected.
pub fn has_k2_quotient(g: &Graph) -> Result<bool> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices { required: 2, actual: n });
    }
    Ok(!g.complement().is_connected())
}

/// Disjoint modules covering the host, ordered by least vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModularPartition {
    #[serde(skip)]
    host: Graph,
    parts: Vec<VertexSubset>,
    /// The host's complement is disconnected, so maximal partitions are not unique.
    k2_case: bool,
}

impl ModularPartition {
    /// Validates cover, disjointness and the module property of every part.
    pub fn new(host: Graph, mut parts: Vec<VertexSubset>) -> Result<Self> {
        let n = host.vertex_count();
        let mut owner = vec![usize::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            part.check_host(&host)?;
            if part.is_empty() {
                return Err(Error::InvalidPartition(format!("part {i} is empty")));
            }
            for v in part.iter() {
                if owner[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} lies in parts {} and {i}",
                        owner[v]
                    )));
                }
                owner[v] = i;
            }
            if !is_module(&host, part)? {
                return Err(Error::NotAModule(i));
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        parts.sort_by_key(|p| p.min());
        let k2_case = n >= 2 && !host.complement().is_connected();
        Ok(ModularPartition { host, parts, k2_case })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn parts(&self) -> &[VertexSubset] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn k2_case(&self) -> bool {
        self.k2_case
    }

    /// `part_of()[v]` is the index of the part containing `v`.
    pub fn part_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.host.vertex_count()];
        for (i, part) in self.parts.iter().enumerate() {
            for v in part.iter() {
                owner[v] = i;
            }
        }
        owner
    }

    pub fn quotient(&self) -> QuotientGraph {
        let reps: Vec<usize> = self.parts.iter().map(|p| p.min().expect("nonempty part")).collect();
        let graph = Graph::from_fn(reps.len(), |i, j| self.host.has_edge(reps[i], reps[j]));
        QuotientGraph { graph, part_of: self.part_of(), parts: self.parts.clone() }
    }

    /// The quotient as base of a family whose components are the induced parts.
    ///
    /// The second value maps each vertex id of the family's product back to
    /// its host vertex; the product is isomorphic to the host through it.
    pub fn to_family(&self) -> Result<(GraphFamily, Vec<usize>)> {
        let base = self.quotient().graph;
        let mut components = Vec::with_capacity(self.parts.len());
        let mut to_host = Vec::with_capacity(self.host.vertex_count());
        for part in &self.parts {
            let sub = self.host.induced(part)?;
            to_host.extend_from_slice(&sub.to_host);
            components.push(sub.graph);
        }
        Ok((GraphFamily::new(base, components)?, to_host))
    }
}

/// `M / H`: one vertex per part, adjacent when the parts are completely joined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientGraph {
    #[serde(skip)]
    pub graph: Graph,
    /// Part index of every host vertex.
    pub part_of: Vec<usize>,
    pub parts: Vec<VertexSubset>,
}

/// Quotient of `g` by `parts`; fails when `parts` is not a modular partition.
pub fn quotient(g: &Graph, parts: &[VertexSubset]) -> Result<QuotientGraph> {
    Ok(ModularPartition::new(g.clone(), parts.to_vec())?.quotient())
}

fn require_connected_pair(g: &Graph) -> Result<()> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices { required: 2, actual: n });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Partition whose quotient is the minimal quotient graph.
///
/// Outside the K₂ case the parts are exactly the maximal modules. In the K₂
/// case (co-components `C_1, ..., C_k` sorted by least id) the bipartition
/// `(C_1, C_2 ∪ ... ∪ C_k)` is returned and `k2_case()` is set.
pub fn maximal_modular_partition(g: &Graph) -> Result<ModularPartition> {
    require_connected_pair(g)?;
    let n = g.vertex_count();
    let co = co_components(g);
    if co.len() >= 2 {
        let first = co[0].clone();
        let rest = first.complement();
        return ModularPartition::new(g.clone(), vec![first, rest]);
    }

    let mut part_id = vec![usize::MAX; n];
    let mut parts: Vec<VertexSubset> = Vec::new();
    for v in 0..n {
        if part_id[v] != usize::MAX {
            continue;
        }
        let mut grown = vec![false; n];
        grown[v] = true;
        for u in 0..n {
            if u == v || grown[u] {
                continue;
            }
            let pair = VertexSubset::from_sorted(n, if u < v { vec![u, v] } else { vec![v, u] });
            let closure = smallest_module_containing(g, &pair)?;
            if closure.len() < n {
                for w in closure.iter() {
                    grown[w] = true;
                }
            }
        }
        let members: Vec<usize> = (0..n).filter(|&w| grown[w]).collect();
        for &w in &members {
            part_id[w] = parts.len();
        }
        parts.push(VertexSubset::from_sorted(n, members));
    }
    ModularPartition::new(g.clone(), parts)
}

/// The unique minimal quotient graph; it has no non-trivial module.
pub fn minimal_quotient(g: &Graph) -> Result<QuotientGraph> {
    Ok(maximal_modular_partition(g)?.quotient())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::generalized_lex_product;

    fn sub(g: &Graph, m: &[usize]) -> VertexSubset {
        VertexSubset::new(g, m.iter().copied()).unwrap()
    }

    fn fig1() -> Graph {
        let fam = GraphFamily::new(
            Graph::path(3),
            vec![Graph::cycle(5).unwrap(), Graph::complete(3), Graph::complete(2)],
        )
        .unwrap();
        generalized_lex_product(&fam).unwrap().into_graph()
    }

    #[test]
    fn module_examples() {
        let k4 = Graph::complete(4);
        for m in 1..16u64 {
            assert!(is_module(&k4, &VertexSubset::from_mask(4, m)).unwrap());
        }
        let f = fig1();
        // H_a1 ∪ H_a3 and H_a2
        assert!(is_module(&f, &sub(&f, &[0, 1, 2, 3, 4, 8, 9])).unwrap());
        assert!(is_module(&f, &sub(&f, &[5, 6, 7])).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        assert!(!is_module(&c5, &sub(&c5, &[0, 1])).unwrap());
        assert_eq!(is_module(&c5, &VertexSubset::none(&c5)), Err(Error::EmptySubset));
    }

    #[test]
    fn closure_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let all = VertexSubset::full(&c5);
        assert_eq!(smallest_module_containing(&c5, &all).unwrap(), all);
        assert_eq!(smallest_module_containing(&c5, &sub(&c5, &[0, 1])).unwrap(), all);
        let k4 = Graph::complete(4);
        let pair = sub(&k4, &[0, 1]);
        assert_eq!(smallest_module_containing(&k4, &pair).unwrap(), pair);
    }

    #[test]
    fn maximal_partition_of_fig1() {
        let p = maximal_modular_partition(&fig1()).unwrap();
        assert!(p.k2_case());
        let parts: Vec<&[usize]> = p.parts().iter().map(VertexSubset::members).collect();
        assert_eq!(parts, vec![&[0, 1, 2, 3, 4, 8, 9][..], &[5, 6, 7][..]]);
        assert_eq!(p.quotient().graph, Graph::complete(2));
    }

    #[test]
    fn prime_graphs_have_singleton_parts() {
        let c5 = Graph::cycle(5).unwrap();
        let p = maximal_modular_partition(&c5).unwrap();
        assert!(!p.k2_case());
        assert_eq!(p.len(), 5);
        assert_eq!(minimal_quotient(&c5).unwrap().graph, c5);
    }

    #[test]
    fn quotient_examples() {
        let k4 = Graph::complete(4);
        let q = quotient(&k4, &[sub(&k4, &[0, 1, 2]), sub(&k4, &[3])]).unwrap();
        assert_eq!(q.graph, Graph::complete(2));
        assert_eq!(q.part_of, vec![0, 0, 0, 1]);
        let c5 = Graph::cycle(5).unwrap();
        let singles: Vec<_> = (0..5).map(|v| sub(&c5, &[v])).collect();
        assert_eq!(quotient(&c5, &singles).unwrap().graph, c5);
        let bad = quotient(&c5, &[sub(&c5, &[0, 1]), sub(&c5, &[2, 3, 4])]);
        assert_eq!(bad, Err(Error::NotAModule(0)));
        assert!(matches!(
            quotient(&c5, &[sub(&c5, &[0]), sub(&c5, &[1])]),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn minimal_quotients_of_k2_case() {
        assert_eq!(minimal_quotient(&Graph::complete(4)).unwrap().graph, Graph::complete(2));
        assert_eq!(minimal_quotient(&fig1()).unwrap().graph, Graph::complete(2));
        assert!(matches!(minimal_quotient(&Graph::complete(1)), Err(Error::TooFewVertices { .. })));
        assert_eq!(minimal_quotient(&Graph::empty(3)), Err(Error::Disconnected));
    }

    #[test]
    fn k2_detection() {
        assert!(has_k2_quotient(&Graph::complete(4)).unwrap());
        assert!(!has_k2_quotient(&Graph::cycle(5).unwrap()).unwrap());
        assert!(has_k2_quotient(&fig1()).unwrap());
    }

    #[test]
    fn family_round_trip() {
        let f = fig1();
        let p = maximal_modular_partition(&f).unwrap();
        let (fam, to_host) = p.to_family().unwrap();
        let prod = generalized_lex_product(&fam).unwrap();
        for &(a, b) in prod.graph().edges() {
            assert!(f.has_edge(to_host[a], to_host[b]));
        }
        assert_eq!(prod.graph().edge_count(), f.edge_count());
    }
}
