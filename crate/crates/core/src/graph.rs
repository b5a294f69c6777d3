//! Immutable simple undirected graphs on dense vertex ids `0..n`.
//!
//! Adjacency is kept twice: as bitset rows (fast module and neighbourhood
//! tests) and as sorted neighbour lists (fast BFS). Both are built once in
//! the constructor and never change afterwards.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Finite simple undirected graph.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge list; duplicate edges collapse, `(u, u)` is rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let words = words_for(n);
        let mut rows = vec![0u64; n * words];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            rows[u * words + v / WORD] |= 1 << (v % WORD);
            rows[v * words + u / WORD] |= 1 << (u % WORD);
        }
        Ok(Self::from_rows(n, rows))
    }

    fn from_rows(n: usize, rows: Vec<u64>) -> Self {
        let words = words_for(n);
        let mut adj = vec![Vec::new(); n];
        let mut edges = Vec::new();
        for (u, list) in adj.iter_mut().enumerate() {
            let row = &rows[u * words..(u + 1) * words];
            for (w, &bits) in row.iter().enumerate() {
                let mut b = bits;
                while b != 0 {
                    let v = w * WORD + b.trailing_zeros() as usize;
                    b &= b - 1;
                    list.push(v);
                    if u < v {
                        edges.push((u, v));
                    }
                }
            }
        }
        Graph { n, words, rows, adj, edges, labels: None }
    }

    /// Builds a graph whose edges are exactly the pairs `u < v` with `f(u, v)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let words = words_for(n);
        let mut rows = vec![0u64; n * words];
        for u in 0..n {
            for v in (u + 1)..n {
                if f(u, v) {
                    rows[u * words + v / WORD] |= 1 << (v % WORD);
                    rows[v * words + u / WORD] |= 1 << (u % WORD);
                }
            }
        }
        Self::from_rows(n, rows)
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_fn(n, |_, _| false)
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::from_fn(n, |u, v| v == u + 1)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices { required: 3, actual: n });
        }
        Ok(Self::from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1)))
    }

    /// Attaches display labels, one per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Precondition(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / WORD] & (1 << (v % WORD)) != 0
    }

    /// Sorted neighbour list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Bitset row of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Adjacency of `v` as a single word; only meaningful when `n <= 64`.
    #[inline]
    pub(crate) fn mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= WORD);
        if self.words == 0 {
            0
        } else {
            self.rows[v * self.words]
        }
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Hop counts from `source`; `None` for unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// All-pairs shortest hop counts.
    pub fn distances(&self) -> DistanceMatrix {
        let mut data = vec![UNREACHABLE; self.n * self.n];
        for s in 0..self.n {
            for (t, d) in self.bfs(s).into_iter().enumerate() {
                if let Some(d) = d {
                    data[s * self.n + t] = d as u32;
                }
            }
        }
        DistanceMatrix { n: self.n, data }
    }

    /// True when a BFS from vertex 0 reaches everything; the empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    /// Connected components, ordered by least vertex id.
    pub fn components(&self) -> Vec<VertexSubset> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let members: Vec<usize> = self
                .bfs(s)
                .iter()
                .enumerate()
                .filter_map(|(v, d)| d.map(|_| v))
                .collect();
            for &v in &members {
                seen[v] = true;
            }
            out.push(VertexSubset { universe: self.n, members });
        }
        out
    }

    /// Largest finite distance; `None` when disconnected, `Some(0)` for `K_1`.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.bfs(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// Subgraph induced by `s`, relabelled to `0..|s|` in increasing host order.
    pub fn induced(&self, s: &VertexSubset) -> Result<InducedSubgraph> {
        s.check_host(self)?;
        let to_host = s.members.clone();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in to_host.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in to_host.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        let mut graph = Graph::new(to_host.len(), edges)?;
        if let Some(labels) = &self.labels {
            graph.labels = Some(to_host.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(InducedSubgraph { graph, to_host })
    }

    /// `N(v)`.
    pub fn neighborhood(&self, v: usize) -> Result<VertexSubset> {
        self.check_vertex(v)?;
        Ok(VertexSubset { universe: self.n, members: self.adj[v].clone() })
    }

    /// `N(A)`: neighbours of members of `a`, minus `a` itself.
    pub fn set_neighborhood(&self, a: &VertexSubset) -> Result<VertexSubset> {
        a.check_host(self)?;
        let mut hit = vec![false; self.n];
        for &v in &a.members {
            for &w in &self.adj[v] {
                hit[w] = true;
            }
        }
        for &v in &a.members {
            hit[v] = false;
        }
        let members = (0..self.n).filter(|&v| hit[v]).collect();
        Ok(VertexSubset { universe: self.n, members })
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges).finish()
    }
}

/// Induced subgraph together with its map back to host ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `to_host[i]` is the host id of local vertex `i`.
    pub to_host: Vec<usize>,
}

impl InducedSubgraph {
    pub fn host_vertex(&self, local: usize) -> usize {
        self.to_host[local]
    }

    pub fn local_vertex(&self, host: usize) -> Option<usize> {
        self.to_host.binary_search(&host).ok()
    }
}

/// A duplicate-free set of vertex ids of a host graph with `universe` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSubset {
    universe: usize,
    members: Vec<usize>,
}

impl VertexSubset {
    pub fn new<I>(host: &Graph, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        Self::with_universe(host.vertex_count(), members)
    }

    pub fn with_universe<I>(universe: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&v| v >= universe) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: universe });
        }
        members.sort_unstable();
        members.dedup();
        Ok(VertexSubset { universe, members })
    }

    pub fn full(host: &Graph) -> Self {
        VertexSubset { universe: host.vertex_count(), members: host.vertices().collect() }
    }

    pub fn none(host: &Graph) -> Self {
        VertexSubset { universe: host.vertex_count(), members: Vec::new() }
    }

    pub(crate) fn from_mask(universe: usize, mask: u64) -> Self {
        let mut members = Vec::with_capacity(mask.count_ones() as usize);
        let mut m = mask;
        while m != 0 {
            members.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        VertexSubset { universe, members }
    }

    pub(crate) fn from_sorted(universe: usize, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.last().map_or(true, |&v| v < universe));
        VertexSubset { universe, members }
    }

    /// Members as a single word; only for universes of at most 64 vertices.
    pub(crate) fn mask(&self) -> u64 {
        debug_assert!(self.universe <= WORD);
        self.members.iter().fold(0, |m, &v| m | 1 << v)
    }

    pub(crate) fn bits(&self) -> Vec<u64> {
        let mut bits = vec![0u64; words_for(self.universe)];
        for &v in &self.members {
            bits[v / WORD] |= 1 << (v % WORD);
        }
        bits
    }

    pub(crate) fn check_host(&self, host: &Graph) -> Result<()> {
        if self.universe != host.vertex_count() {
            return Err(Error::HostMismatch { subset: self.universe, host: host.vertex_count() });
        }
        Ok(())
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn min(&self) -> Option<usize> {
        self.members.first().copied()
    }

    pub fn complement(&self) -> VertexSubset {
        let members = (0..self.universe).filter(|v| !self.contains(*v)).collect();
        VertexSubset { universe: self.universe, members }
    }

    pub fn union(&self, other: &VertexSubset) -> VertexSubset {
        let mut members: Vec<usize> = self.iter().chain(other.iter()).collect();
        members.sort_unstable();
        members.dedup();
        VertexSubset { universe: self.universe.max(other.universe), members }
    }

    pub fn is_subset(&self, other: &VertexSubset) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSubset) -> bool {
        self.iter().all(|v| !other.contains(v))
    }
}

impl Serialize for VertexSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(serializer)
    }
}

pub(crate) const UNREACHABLE: u32 = u32::MAX;

/// All-pairs hop counts; unreachable pairs read as `None`.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        match self.data[u * self.n + v] {
            UNREACHABLE => None,
            d => Some(d as usize),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|&d| d != UNREACHABLE)
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for u in 0..self.n {
            let row: Vec<Option<usize>> = (0..self.n).map(|v| self.get(u, v)).collect();
            list.entry(&row);
        }
        list.finish()
    }
}
