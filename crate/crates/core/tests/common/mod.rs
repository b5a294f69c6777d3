//! Brute-force oracles shared by the integration tests.
//!
//! Nothing here calls the library's BFS, isometry index or module code; the
//! graphs are read through `vertex_count` and `edges` only.

#![allow(dead_code)]

use modlex::{Graph, VertexSubset};

pub const INF: u32 = u32::MAX;

/// Adjacency bitmasks, one per vertex. Needs at most 64 vertices.
pub fn adjacency(g: &Graph) -> Vec<u64> {
    let mut adj = vec![0u64; g.vertex_count()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// All-pairs distances by Floyd-Warshall.
pub fn floyd(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Distances from `s` inside the subgraph induced by `mask`, by frontier masks.
fn masked_bfs(adj: &[u64], mask: u64, s: usize) -> Vec<u32> {
    let mut dist = vec![INF; adj.len()];
    let mut seen = 1u64 << s;
    let mut frontier = seen;
    let mut level = 0;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            dist[v] = level;
            next |= adj[v];
        }
        next &= mask & !seen;
        seen |= next;
        frontier = next;
        level += 1;
    }
    dist
}

/// Induced subgraph on `mask` preserves every pairwise distance of the host.
pub fn isometric(adj: &[u64], host: &[Vec<u32>], mask: u64) -> bool {
    let mut m = mask;
    while m != 0 {
        let s = m.trailing_zeros() as usize;
        m &= m - 1;
        let local = masked_bfs(adj, mask, s);
        let mut rest = mask;
        while rest != 0 {
            let t = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if local[t] != host[s][t] {
                return false;
            }
        }
    }
    true
}

/// Every `k`-subset of `0..n` as a mask, in increasing numeric order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit: u128 = 1u128 << n;
    let mut cur: Option<u128> = if k <= n { Some((1u128 << k) - 1) } else { None };
    std::iter::from_fn(move || {
        let c = cur?;
        if c >= limit {
            return None;
        }
        cur = if c == 0 {
            None
        } else {
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            Some((((ripple ^ c) >> 2) / low) | ripple)
        };
        Some(c as u64)
    })
}

/// Orders `k` in `1..=n` with no isometric `k`-subset.
pub fn brute_ndp(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let adj = adjacency(g);
    let host = floyd(g);
    (1..=n)
        .filter(|&k| !k_subsets(n, k).any(|m| isometric(&adj, &host, m)))
        .collect()
}

pub fn brute_is_dp(g: &Graph) -> bool {
    brute_ndp(g).is_empty()
}

/// `mask` is a module: every vertex outside sees all of it or none of it.
pub fn module_mask(adj: &[u64], mask: u64) -> bool {
    (0..adj.len())
        .filter(|&v| mask >> v & 1 == 0)
        .all(|v| {
            let seen = adj[v] & mask;
            seen == 0 || seen == mask
        })
}

/// All nonempty modules of `g`.
pub fn all_modules(g: &Graph) -> Vec<u64> {
    let adj = adjacency(g);
    (1u64..1 << g.vertex_count()).filter(|&m| module_mask(&adj, m)).collect()
}

/// Proper modules contained in no larger proper module.
pub fn maximal_modules(g: &Graph) -> Vec<u64> {
    let full = (1u64 << g.vertex_count()) - 1;
    let proper: Vec<u64> = all_modules(g).into_iter().filter(|&m| m != full).collect();
    proper
        .iter()
        .copied()
        .filter(|&m| !proper.iter().any(|&b| b != m && b & m == m))
        .collect()
}

/// A module other than a singleton or the whole vertex set exists.
pub fn has_nontrivial_module(g: &Graph) -> bool {
    let full = (1u64 << g.vertex_count()) - 1;
    all_modules(g).into_iter().any(|m| m != full && m.count_ones() > 1)
}

/// Every set partition of `0..n`, each part a mask.
pub fn set_partitions(n: usize) -> Vec<Vec<u64>> {
    fn rec(v: usize, n: usize, parts: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if v == n {
            out.push(parts.clone());
            return;
        }
        for i in 0..parts.len() {
            parts[i] |= 1 << v;
            rec(v + 1, n, parts, out);
            parts[i] &= !(1 << v);
        }
        parts.push(1 << v);
        rec(v + 1, n, parts, out);
        parts.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

pub fn subset(g: &Graph, mask: u64) -> VertexSubset {
    VertexSubset::new(g, (0..g.vertex_count()).filter(|&v| mask >> v & 1 == 1)).unwrap()
}

pub fn mask_of(s: &VertexSubset) -> u64 {
    s.iter().fold(0, |m, v| m | 1 << v)
}

/// Connected graphs on `n` vertices up to isomorphism, from labelled graphs
/// filtered by a canonical form over all permutations. Only for `n <= 6`.
pub fn connected_classes(n: usize) -> Vec<Graph> {
    assert!(n <= 6);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for bits in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::new(n, edges.iter().copied()).unwrap();
        if floyd(&g).iter().flatten().any(|&d| d == INF) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> =
                    edges.iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}
