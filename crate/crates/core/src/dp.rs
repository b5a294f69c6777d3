//! Deciders and certificate constructors for products.
//!
//! For a connected base `G` with at least two vertices, an induced subgraph
//! `M` of `G[H]` whose projection touches two or more base vertices is
//! isometric exactly when its projection is isometric in `G`; one touching a
//! single base vertex is isometric exactly when it has diameter at most 2.
//! So `G[H]` is dp iff every order `k` missing from `G` is covered by some
//! isometric `L` of `G` with `|L| < k <= sum of |H_u| over L`. Everything here
//! builds on that reduction and re-verifies its output on the product.

use serde::Serialize;

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset};
use crate::metric::{
    for_each_connected_set, is_dp, is_isometric, ndp_set, DpCertificate, IsometryIndex, NdpReport,
    SdpOrder, SearchOptions,
};
use crate::modular::ModularPartition;
use crate::products::{cartesian_product, generalized_lex_product, project_pi, GraphFamily, ProductGraph};

/// Achievable orders `a < b` with every order strictly between them missing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NonDpInterval {
    pub a: usize,
    pub b: usize,
}

/// Bounding pairs of the maximal runs of missing orders, ascending.
pub fn non_dp_intervals(report: &NdpReport) -> Vec<NonDpInterval> {
    let mut out: Vec<NonDpInterval> = Vec::new();
    for &k in report.ndp() {
        match out.last_mut() {
            Some(last) if last.b == k => last.b = k + 1,
            _ => out.push(NonDpInterval { a: k - 1, b: k + 1 }),
        }
    }
    out
}

fn check_sizes(report: &NdpReport, sizes: &[usize]) -> Result<()> {
    let n = report.host().vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices { required: 2, actual: n });
    }
    if sizes.len() != n {
        return Err(Error::IncompleteFamily { expected: n, actual: sizes.len() });
    }
    if let Some(v) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::EmptyComponent(v));
    }
    Ok(())
}

/// Decides whether `G[H]` is dp from the base report and the block sizes alone.
pub fn thm2_check(report: &NdpReport, sizes: &[usize]) -> Result<bool> {
    thm2_check_with(report, sizes, &Budget::unlimited())
}

pub fn thm2_check_with(report: &NdpReport, sizes: &[usize], budget: &Budget) -> Result<bool> {
    check_sizes(report, sizes)?;
    let idx = IsometryIndex::new(report.host())?;
    let meter = budget.meter();
    for &k in report.ndp() {
        if covering_subgraph(report, &idx, sizes, k, &meter)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An isometric `L` of the base with `|L| < k <= weight(L)`.
fn covering_subgraph(
    report: &NdpReport,
    idx: &IsometryIndex,
    sizes: &[usize],
    k: usize,
    meter: &Meter,
) -> Result<Option<u64>> {
    let weight = |m: u64| -> usize { crate::metric::bits(m).map(|v| sizes[v]).sum() };
    for (j, w) in report.witnesses() {
        if j < k && weight(w.mask()) >= k {
            return Ok(Some(w.mask()));
        }
    }
    for j in (2..k).rev() {
        let mut hit = None;
        for_each_connected_set(idx, j, meter, &mut |s| {
            if weight(s) >= k && idx.is_isometric(s) {
                hit = Some(s);
                true
            } else {
                false
            }
        })?;
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// The constant-family criterion: `b <= a * n + 1` for every bounding pair.
pub fn cor_lex_dp_check(report: &NdpReport, n: usize) -> Result<bool> {
    let order = report.host().vertex_count();
    if order < 2 {
        return Err(Error::TooFewVertices { required: 2, actual: order });
    }
    if n == 0 {
        return Err(Error::EmptyComponent(0));
    }
    Ok(non_dp_intervals(report).iter().all(|iv| iv.b <= iv.a * n + 1))
}

/// Isometry of `m` in a lexicographic product, decided through its projection.
pub fn isometry_transfer_check(p: &ProductGraph, m: &VertexSubset) -> Result<bool> {
    let pi = project_pi(p, m)?;
    let base = p.outer();
    if base.vertex_count() < 2 {
        return Err(Error::TooFewVertices { required: 2, actual: base.vertex_count() });
    }
    if !base.is_connected() {
        return Err(Error::Disconnected);
    }
    match pi.len() {
        0 => Ok(true),
        1 => Ok(p.graph().induced(m)?.graph.diameter().is_some_and(|d| d <= 2)),
        _ => is_isometric(base, &pi),
    }
}

/// Certificate for `G[H]` built from isometric subgraphs of the base.
///
/// For order `k` the smallest isometric `L` of the base (then the
/// lexicographically least) with `|L| <= k <= weight(L)` is chosen; the
/// witness takes the lowest inner vertex of every block of `L` and fills up
/// in block order by lowest inner id. Order 2 may instead use an edge inside
/// a single block. Every witness is re-verified on the product.
pub fn construct_product_dp_certificate(fam: &GraphFamily, opts: &SearchOptions) -> Result<DpCertificate> {
    let product = generalized_lex_product(fam)?;
    let report = ndp_set(fam.base(), opts)?;
    let sizes = fam.sizes();
    if !thm2_check_with(&report, &sizes, &opts.budget)? {
        return Err(Error::Precondition(
            "some missing base order is not covered by an isometric subgraph".into(),
        ));
    }
    let idx = IsometryIndex::new(fam.base())?;
    let meter = opts.budget.meter();
    let total = fam.total_order();
    let universe = product.graph().vertex_count();
    let mut witnesses = Vec::with_capacity(total);
    for k in 1..=total {
        if let Some(w) = single_block_witness(fam, &product, k) {
            witnesses.push(w);
            continue;
        }
        let base_set = least_covering_subgraph(&idx, &sizes, k, &meter)?.ok_or_else(|| {
            Error::InvalidCertificate(format!("no isometric base subgraph covers order {k}"))
        })?;
        let mut chosen: Vec<usize> = base_set.iter().map(|&u| product.id_of(u, 0).expect("nonempty block")).collect();
        'fill: for &u in &base_set {
            for x in 1..sizes[u] {
                if chosen.len() == k {
                    break 'fill;
                }
                chosen.push(product.id_of(u, x).expect("inner id in range"));
            }
        }
        chosen.sort_unstable();
        witnesses.push(VertexSubset::with_universe(universe, chosen)?);
    }
    DpCertificate::new(product.into_graph(), witnesses)
}

fn single_block_witness(fam: &GraphFamily, product: &ProductGraph, k: usize) -> Option<VertexSubset> {
    let universe = product.graph().vertex_count();
    match k {
        1 => VertexSubset::with_universe(universe, [0]).ok(),
        2 => fam.components().iter().enumerate().find_map(|(u, h)| {
            let &(x, y) = h.edges().first()?;
            let ids = [product.id_of(u, x)?, product.id_of(u, y)?];
            VertexSubset::with_universe(universe, ids).ok()
        }),
        _ => None,
    }
}

/// Lexicographically least isometric base set of least size `s >= 2` with `s <= k <= weight`.
fn least_covering_subgraph(idx: &IsometryIndex, sizes: &[usize], k: usize, meter: &Meter) -> Result<Option<Vec<usize>>> {
    let n = sizes.len();
    // best[i][r]: largest total weight of r vertices chosen from i..n
    let mut best = vec![vec![0usize; n + 1]; n + 1];
    for i in (0..n).rev() {
        let mut tail: Vec<usize> = sizes[i..].to_vec();
        tail.sort_unstable_by(|a, b| b.cmp(a));
        for r in 1..=tail.len() {
            best[i][r] = best[i][r - 1] + tail[r - 1];
        }
    }
    struct Walk<'a> {
        idx: &'a IsometryIndex,
        sizes: &'a [usize],
        best: &'a [Vec<usize>],
        meter: &'a Meter,
        k: usize,
        target: usize,
        picked: Vec<usize>,
    }
    impl Walk<'_> {
        fn go(&mut self, from: usize, mask: u64, weight: usize) -> Result<bool> {
            self.meter.tick()?;
            let need = self.target - self.picked.len();
            if need == 0 {
                return Ok(weight >= self.k && self.idx.is_isometric(mask));
            }
            let n = self.sizes.len();
            for v in from..n {
                if n - v < need || weight + self.best[v][need] < self.k {
                    break;
                }
                self.picked.push(v);
                if self.go(v + 1, mask | 1 << v, weight + self.sizes[v])? {
                    return Ok(true);
                }
                self.picked.pop();
            }
            Ok(false)
        }
    }
    for target in 2..=k.min(n) {
        let mut walk = Walk { idx, sizes, best: &best, meter, k, target, picked: Vec::new() };
        if walk.go(0, 0, 0)? {
            return Ok(Some(walk.picked));
        }
    }
    Ok(None)
}

/// Certificate for the host of a modular partition, built on `(M/H)[H]` and mapped back.
pub fn partition_dp_certificate(partition: &ModularPartition, opts: &SearchOptions) -> Result<DpCertificate> {
    let (fam, to_host) = partition.to_family()?;
    let product = construct_product_dp_certificate(&fam, opts)?;
    let host = partition.host();
    let witnesses = product
        .witnesses()
        .iter()
        .map(|w| VertexSubset::new(host, w.iter().map(|id| to_host[id])))
        .collect::<Result<Vec<_>>>()?;
    DpCertificate::new(host.clone(), witnesses)
}

/// Lifts a base deletion order to `G[H]`.
///
/// Blocks are emptied in base order. Before the second-to-last block loses
/// its final vertex the last block is shrunk to one vertex, so the run never
/// ends with a lone block of diameter above 2.
pub fn sdp_inheritance(fam: &GraphFamily, base_order: &SdpOrder) -> Result<SdpOrder> {
    if base_order.host() != fam.base() {
        return Err(Error::InvalidOrder("order belongs to a different base graph".into()));
    }
    let n = fam.base().vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices { required: 2, actual: n });
    }
    let product = generalized_lex_product(fam)?;
    let seq = base_order.order();
    let last = seq[n - 1];
    let last_block = product.block(last).expect("base vertex");
    let mut order = Vec::with_capacity(product.graph().vertex_count());
    for (i, &u) in seq[..n - 1].iter().enumerate() {
        let block = product.block(u).expect("base vertex");
        order.extend(block.start..block.end - 1);
        if i == n - 2 {
            order.extend(last_block.start..last_block.end - 1);
        }
        order.push(block.end - 1);
    }
    order.push(last_block.end - 1);
    SdpOrder::new(product.into_graph(), order)
}

/// True means `g` has no induced cycle of length 5 or more.
///
/// That is a sufficient condition for dp, not a characterisation: `false`
/// says nothing about whether `g` is dp.
pub fn no_long_induced_cycle(g: &Graph, budget: &Budget) -> Result<bool> {
    Ok(find_long_induced_cycle(g, budget)?.is_none())
}

/// An induced cycle on at least 5 vertices, if one exists.
///
/// Every chordless cycle is found from its least vertex `s` by growing
/// induced paths through vertices above `s`.
pub fn find_long_induced_cycle(g: &Graph, budget: &Budget) -> Result<Option<Vec<usize>>> {
    fn grow(g: &Graph, path: &mut Vec<usize>, on_path: &mut [bool], meter: &Meter) -> Result<bool> {
        meter.tick()?;
        let s = path[0];
        let last = *path.last().expect("nonempty path");
        for &x in g.neighbors(last) {
            if x <= s || on_path[x] {
                continue;
            }
            let inner = path.get(1..path.len() - 1).unwrap_or(&[]);
            if inner.iter().any(|&p| g.has_edge(x, p)) {
                continue;
            }
            if path.len() >= 2 && g.has_edge(x, s) {
                if path.len() + 1 >= 5 {
                    path.push(x);
                    return Ok(true);
                }
                continue;
            }
            path.push(x);
            on_path[x] = true;
            if grow(g, path, on_path, meter)? {
                return Ok(true);
            }
            on_path[x] = false;
            path.pop();
        }
        Ok(false)
    }

    let meter = budget.meter();
    let mut on_path = vec![false; g.vertex_count()];
    for s in g.vertices() {
        let mut path = vec![s];
        on_path[s] = true;
        if grow(g, &mut path, &mut on_path, &meter)? {
            return Ok(Some(path));
        }
        on_path[s] = false;
    }
    Ok(None)
}

/// Both sides of the deletion-set product rule for `A × B` in `G □ H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductRuleSides {
    /// `G □ H - A × B` is isometric in `G □ H`.
    pub product: bool,
    /// `G - A` and `H - B` are isometric in their factors.
    pub factors: bool,
}

pub fn dp_prime_product_sides(g: &Graph, h: &Graph, a: &VertexSubset, b: &VertexSubset) -> Result<ProductRuleSides> {
    a.check_host(g)?;
    b.check_host(h)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySubset);
    }
    let p = cartesian_product(g, h);
    let universe = p.graph().vertex_count();
    let kept = (0..universe).filter(|&id| {
        let (x, y) = p.pair(id);
        !(a.contains(x) && b.contains(y))
    });
    let kept = VertexSubset::with_universe(universe, kept)?;
    Ok(ProductRuleSides {
        product: is_isometric(p.graph(), &kept)?,
        factors: is_isometric(g, &a.complement())? && is_isometric(h, &b.complement())?,
    })
}

/// `A × B ∈ DP'(G □ H)`, evaluated directly on the product.
pub fn dp_prime_product_rule(g: &Graph, h: &Graph, a: &VertexSubset, b: &VertexSubset) -> Result<bool> {
    Ok(dp_prime_product_sides(g, h, a, b)?.product)
}

/// Certificate for `G □ H` from a deletion order of `G` and a certificate of `H`.
///
/// Order `m` deletes `t = |G||H| - m` vertices: with `t = (s - 1)|H| + j`,
/// `1 <= j <= |H|`, it removes the first `s - 1` rows `{v_i} × V(H)` and
/// `{v_s} × A_j`, where `A_j` is the complement of the order-`(|H| - j)`
/// witness of `H`. The certificate stores the retained vertices.
pub fn cartesian_dp_construct(g_order: &SdpOrder, h_cert: &DpCertificate) -> Result<DpCertificate> {
    let g = g_order.host();
    let h = h_cert.host();
    let (gn, hn) = (g.vertex_count(), h.vertex_count());
    let p = cartesian_product(g, h);
    let total = gn * hn;
    let deletions = |j: usize| -> VertexSubset {
        match h_cert.witness(hn - j) {
            Some(w) => w.complement(),
            None => VertexSubset::full(h),
        }
    };
    let mut witnesses = Vec::with_capacity(total);
    for m in 1..=total {
        let t = total - m;
        let mut deleted = vec![false; total];
        if t > 0 {
            let s = (t - 1) / hn + 1;
            let j = t - (s - 1) * hn;
            for &v in &g_order.order()[..s - 1] {
                for y in 0..hn {
                    deleted[p.id_of(v, y).expect("in range")] = true;
                }
            }
            let vs = g_order.order()[s - 1];
            for y in deletions(j).iter() {
                deleted[p.id_of(vs, y).expect("in range")] = true;
            }
        }
        let kept = (0..total).filter(|&id| !deleted[id]);
        witnesses.push(VertexSubset::with_universe(total, kept)?);
    }
    DpCertificate::new(p.into_graph(), witnesses)
}

/// Result of searching small dp pairs for a non-dp Cartesian product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureProbe {
    pub max_order: usize,
    pub pairs_checked: usize,
    pub indeterminate: usize,
    pub counterexample: Option<(Graph, Graph)>,
}

/// Checks `G □ H` for every pair of connected dp graphs on at most
/// `max_order` vertices (up to isomorphism). Reports, never decides.
pub fn probe_cartesian_dp_conjecture(max_order: usize, opts: &SearchOptions) -> Result<ConjectureProbe> {
    let mut dp_graphs = Vec::new();
    for n in 1..=max_order {
        for g in crate::enumerate::connected_graphs(n)? {
            if is_dp(&g, opts)?.is_dp() {
                dp_graphs.push(g);
            }
        }
    }
    let mut probe = ConjectureProbe { max_order, pairs_checked: 0, indeterminate: 0, counterexample: None };
    for (i, g) in dp_graphs.iter().enumerate() {
        for h in &dp_graphs[i..] {
            let p = cartesian_product(g, h);
            match ndp_set(p.graph(), opts) {
                Ok(r) => {
                    probe.pairs_checked += 1;
                    if !r.is_dp() {
                        probe.counterexample = Some((g.clone(), h.clone()));
                        return Ok(probe);
                    }
                }
                Err(Error::BudgetExceeded) => probe.indeterminate += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(probe)
}
