//! Generalised lexicographic product `G[H]`, the plain lexicographic and
//! Cartesian products, and the projection of product subsets onto the base.

use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset};

/// One component graph per base vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFamily {
    base: Graph,
    components: Vec<Graph>,
}

impl GraphFamily {
    pub fn new(base: Graph, components: Vec<Graph>) -> Result<Self> {
        if components.len() != base.vertex_count() {
            return Err(Error::IncompleteFamily {
                expected: base.vertex_count(),
                actual: components.len(),
            });
        }
        if let Some(v) = components.iter().position(Graph::is_empty) {
            return Err(Error::EmptyComponent(v));
        }
        Ok(GraphFamily { base, components })
    }

    /// The constant family `H_v = h`.
    pub fn uniform(base: Graph, h: &Graph) -> Result<Self> {
        let components = vec![h.clone(); base.vertex_count()];
        Self::new(base, components)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn components(&self) -> &[Graph] {
        &self.components
    }

    pub fn component(&self, v: usize) -> &Graph {
        &self.components[v]
    }

    /// `|H_v|` for every base vertex.
    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Graph::vertex_count).collect()
    }

    pub fn total_order(&self) -> usize {
        self.components.iter().map(Graph::vertex_count).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Lexicographic,
    Cartesian,
}

/// A product graph with its vertex ids tied to `(outer, inner)` pairs.
///
/// Ids are assigned in lexicographic `(outer, inner)` order, so the block of
/// an outer vertex is a contiguous id range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraph {
    graph: Graph,
    kind: ProductKind,
    outer: Graph,
    pairs: Vec<(usize, usize)>,
    offsets: Vec<usize>,
}

impl ProductGraph {
    fn assemble(
        kind: ProductKind,
        outer: &Graph,
        sizes: &[usize],
        adjacent: impl Fn((usize, usize), (usize, usize)) -> bool,
    ) -> Self {
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        let mut pairs = Vec::new();
        offsets.push(0);
        for (u, &s) in sizes.iter().enumerate() {
            pairs.extend((0..s).map(|x| (u, x)));
            offsets.push(pairs.len());
        }
        let graph = Graph::from_fn(pairs.len(), |a, b| adjacent(pairs[a], pairs[b]));
        ProductGraph { graph, kind, outer: outer.clone(), pairs, offsets }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    /// The base graph of a lexicographic product, the left factor of a Cartesian one.
    pub fn outer(&self) -> &Graph {
        &self.outer
    }

    /// `(outer, inner)` pair of product vertex `id`.
    pub fn pair(&self, id: usize) -> (usize, usize) {
        self.pairs[id]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn id_of(&self, outer: usize, inner: usize) -> Option<usize> {
        let block = self.block(outer)?;
        (inner < block.len()).then(|| block.start + inner)
    }

    /// Ids of the vertices with first coordinate `outer`.
    pub fn block(&self, outer: usize) -> Option<Range<usize>> {
        (outer + 1 < self.offsets.len()).then(|| self.offsets[outer]..self.offsets[outer + 1])
    }

    /// Number of outer (base) vertices.
    pub fn outer_order(&self) -> usize {
        self.offsets.len() - 1
    }
}

/// `G[H]` for a connected base.
pub fn generalized_lex_product(fam: &GraphFamily) -> Result<ProductGraph> {
    if !fam.base.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(generalized_lex_product_relaxed(fam))
}

/// `G[H]` without the connectivity requirement on the base.
pub fn generalized_lex_product_relaxed(fam: &GraphFamily) -> ProductGraph {
    ProductGraph::assemble(ProductKind::Lexicographic, &fam.base, &fam.sizes(), |(u, x), (v, y)| {
        if u == v {
            fam.components[u].has_edge(x, y)
        } else {
            fam.base.has_edge(u, v)
        }
    })
}

/// `G[H]` with the same `H` at every base vertex.
pub fn lex_product(g: &Graph, h: &Graph) -> Result<ProductGraph> {
    generalized_lex_product(&GraphFamily::uniform(g.clone(), h)?)
}

/// `G □ H`: one coordinate moves along an edge of its factor, the other stays put.
pub fn cartesian_product(g: &Graph, h: &Graph) -> ProductGraph {
    let sizes = vec![h.vertex_count(); g.vertex_count()];
    ProductGraph::assemble(ProductKind::Cartesian, g, &sizes, |(a, x), (b, y)| {
        (a == b && h.has_edge(x, y)) || (x == y && g.has_edge(a, b))
    })
}

/// Base vertices touched by `m`.
pub fn project_pi(p: &ProductGraph, m: &VertexSubset) -> Result<VertexSubset> {
    if p.kind != ProductKind::Lexicographic {
        return Err(Error::WrongProductKind("lexicographic"));
    }
    m.check_host(&p.graph)?;
    VertexSubset::with_universe(p.outer_order(), m.iter().map(|id| p.pairs[id].0))
}

/// Closed-form distance in `G[H]` between `(u, x)` and `(v, y)`.
///
/// Distinct base vertices keep their base distance; two vertices of the same
/// block are at distance 1 when adjacent inside the block and 2 otherwise.
pub fn lex_distance(fam: &GraphFamily, a: (usize, usize), b: (usize, usize)) -> Result<usize> {
    LexMetric::new(fam)?.distance(a, b)
}

/// [`lex_distance`] with the base distances computed once.
#[derive(Debug, Clone)]
pub struct LexMetric<'a> {
    fam: &'a GraphFamily,
    base: crate::graph::DistanceMatrix,
}

impl<'a> LexMetric<'a> {
    pub fn new(fam: &'a GraphFamily) -> Result<Self> {
        let n = fam.base.vertex_count();
        if n < 2 {
            return Err(Error::TooFewVertices { required: 2, actual: n });
        }
        if !fam.base.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(LexMetric { fam, base: fam.base.distances() })
    }

    pub fn distance(&self, (u, x): (usize, usize), (v, y): (usize, usize)) -> Result<usize> {
        for (w, z) in [(u, x), (v, y)] {
            self.fam.base.check_vertex(w)?;
            self.fam.components[w].check_vertex(z)?;
        }
        Ok(if u != v {
            self.base.get(u, v).expect("connected base")
        } else if x == y {
            0
        } else if self.fam.components[u].has_edge(x, y) {
            1
        } else {
            2
        })
    }
}
