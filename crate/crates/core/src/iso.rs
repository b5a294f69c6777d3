//! Exhaustive isomorphism test for small graphs.
//!
//! Colour refinement splits the vertices of both graphs into matching
//! classes first; the backtracking search then only maps vertices within a
//! class and checks adjacency against every vertex mapped so far.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by [`are_isomorphic`].
pub const DEFAULT_ISO_CAP: usize = 24;

/// Isomorphism test with the default size cap.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    are_isomorphic_capped(g, h, DEFAULT_ISO_CAP)
}

pub fn are_isomorphic_capped(g: &Graph, h: &Graph, cap: usize) -> Result<bool> {
    Ok(find_isomorphism_capped(g, h, cap)?.is_some())
}

/// Returns `phi` with `phi[v]` the image in `h` of vertex `v` of `g`.
pub fn find_isomorphism_capped(g: &Graph, h: &Graph, cap: usize) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    if n.max(h.vertex_count()) > cap {
        return Err(Error::TooLarge { actual: n.max(h.vertex_count()), cap });
    }
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let (cg, ch) = refine(g, h);
    let mut hist_g = cg.clone();
    let mut hist_h = ch.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return Ok(None);
    }

    // Map vertices with rare colours and many already-placed neighbours first.
    let mut class_size = BTreeMap::new();
    for &c in &cg {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = g.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (linked, std::cmp::Reverse(class_size[&cg[v]]), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
    }

    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, &cg, &ch, &order, 0, &mut phi, &mut used) {
        Ok(Some(phi))
    } else {
        Ok(None)
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    phi: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for c in 0..h.vertex_count() {
        if used[c] || ch[c] != cg[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| g.has_edge(v, w) == h.has_edge(c, phi[w]));
        if !consistent {
            continue;
        }
        phi[v] = c;
        used[c] = true;
        if extend(g, h, cg, ch, order, depth + 1, phi, used) {
            return true;
        }
        used[c] = false;
        phi[v] = usize::MAX;
    }
    false
}

/// Joint 1-dimensional Weisfeiler-Leman refinement; colours are comparable across graphs.
fn refine(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut cg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut ch: Vec<usize> = h.vertices().map(|v| h.degree(v)).collect();
    let classes = |a: &[usize], b: &[usize]| {
        let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    };
    let mut count = classes(&cg, &ch);
    loop {
        let mut table: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let signature = |graph: &Graph, colours: &[usize]| -> Vec<(usize, Vec<usize>)> {
            graph
                .vertices()
                .map(|v| {
                    let mut nb: Vec<usize> = graph.neighbors(v).iter().map(|&w| colours[w]).collect();
                    nb.sort_unstable();
                    (colours[v], nb)
                })
                .collect()
        };
        let sg = signature(g, &cg);
        let sh = signature(h, &ch);
        for s in sg.iter().chain(sh.iter()) {
            let next = table.len();
            table.entry(s.clone()).or_insert(next);
        }
        let ng: Vec<usize> = sg.iter().map(|s| table[s]).collect();
        let nh: Vec<usize> = sh.iter().map(|s| table[s]).collect();
        let next_count = classes(&ng, &nh);
        cg = ng;
        ch = nh;
        if next_count == count {
            return (cg, ch);
        }
        count = next_count;
    }
}
