//! Isometric subgraphs and the distance-preserving searches built on them.
//!
//! Two isometry tests live here. [`is_isometric`] is the reference: it
//! builds the induced subgraph and compares BFS distances pair by pair. The
//! searches use [`IsometryIndex`], which works on 64-bit vertex masks and
//! only asks whether every pair `u, v` of the subset has a neighbour of `u`
//! inside the subset one step closer to `v`. Both are cross-checked in the
//! tests.

use std::collections::HashSet;

use serde::Serialize;

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph, VertexSubset};

/// Largest graph the mask-based searches accept.
pub const MAX_SEARCH_ORDER: usize = 64;

/// `d_H(u, v) = d_G(u, v)` for all `u, v` in `s`, where `H` is induced by `s`.
///
/// The empty subset is isometric by convention.
pub fn is_isometric(g: &Graph, s: &VertexSubset) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    s.check_host(g)?;
    if s.is_empty() {
        return Ok(true);
    }
    let sub = g.induced(s)?;
    for (i, &u) in sub.to_host.iter().enumerate() {
        let host = g.bfs(u);
        let local = sub.graph.bfs(i);
        for (j, &v) in sub.to_host.iter().enumerate() {
            if local[j] != host[v] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lexicographically least shortest path from `u` to `v`.
pub fn geodesic(g: &Graph, u: usize, v: usize) -> Result<Vec<usize>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let to_target = g.bfs(v);
    let mut path = vec![u];
    let mut cur = u;
    while cur != v {
        let d = to_target[cur].expect("connected");
        // neighbour lists are sorted, so the first hit is the lowest id
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| to_target[w] == Some(d - 1))
            .expect("BFS layers are consecutive");
        path.push(cur);
    }
    Ok(path)
}

#[inline]
pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Distance layers of a connected host, for word-sized isometry tests.
#[derive(Debug, Clone)]
pub struct IsometryIndex {
    n: usize,
    adj: Vec<u64>,
    dist: DistanceMatrix,
    layers: usize,
    /// `ring[v * layers + d]`: vertices at distance exactly `d` from `v`.
    ring: Vec<u64>,
}

impl IsometryIndex {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.vertex_count();
        if n > MAX_SEARCH_ORDER {
            return Err(Error::TooLarge { actual: n, cap: MAX_SEARCH_ORDER });
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let dist = g.distances();
        let layers = g.diameter().unwrap_or(0) + 1;
        let mut ring = vec![0u64; n * layers];
        for v in 0..n {
            for w in 0..n {
                let d = dist.get(v, w).expect("connected");
                ring[v * layers + d] |= 1 << w;
            }
        }
        let adj = (0..n).map(|v| g.mask(v)).collect();
        Ok(IsometryIndex { n, adj, dist, layers, ring })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> u64 {
        full_mask(self.n)
    }

    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.dist.get(u, v).expect("connected")
    }

    pub(crate) fn adjacency(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Isometry of the subgraph induced by `s`.
    pub fn is_isometric(&self, s: u64) -> bool {
        for u in bits(s) {
            let step = self.adj[u] & s;
            for v in bits(s & !(1 << u)) {
                let d = self.distance(u, v);
                if d >= 2 && step & self.ring[v * self.layers + d - 1] == 0 {
                    return false;
                }
            }
        }
        true
    }
}

/// Search knobs for the exponential deciders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Steps granted to the cheap extension phase of [`ndp_set`] before it
    /// falls back to exact enumeration.
    pub extension_steps: u64,
    /// Largest order the exact fallback of [`ndp_set`] may enumerate; an
    /// order above it that the extension phase missed is reported as
    /// [`Error::BudgetExceeded`].
    pub max_subset_size: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: Budget::unlimited(), extension_steps: 200_000, max_subset_size: None }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: Budget) -> Self {
        SearchOptions { budget, ..Self::default() }
    }
}

/// Orders at which the host has no isometric subgraph, plus a witness for every other order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NdpReport {
    host: Graph,
    ndp: Vec<usize>,
    witnesses: Vec<Option<VertexSubset>>,
}

impl NdpReport {
    pub fn host(&self) -> &Graph {
        &self.host
    }

    /// Sorted missing orders.
    pub fn ndp(&self) -> &[usize] {
        &self.ndp
    }

    pub fn is_dp(&self) -> bool {
        self.ndp.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.ndp.binary_search(&k).is_ok()
    }

    /// Isometric subset with exactly `k` vertices, if `k` is achievable.
    pub fn witness(&self, k: usize) -> Option<&VertexSubset> {
        self.witnesses.get(k).and_then(Option::as_ref)
    }

    /// `(k, witness)` for every achievable order `k >= 1`.
    pub fn witnesses(&self) -> impl Iterator<Item = (usize, &VertexSubset)> {
        self.witnesses.iter().enumerate().filter_map(|(k, w)| w.as_ref().map(|w| (k, w)))
    }
}

/// Exact `ndp` set of a connected graph.
///
/// A depth-first pass over isometric subsets (shrinking from the whole
/// vertex set, then growing from single vertices) finds most witnesses
/// cheaply. Orders it misses are settled by enumerating every connected
/// vertex set of that order, so a reported missing order is a proof of
/// absence rather than a heuristic failure.
pub fn ndp_set(g: &Graph, opts: &SearchOptions) -> Result<NdpReport> {
    let idx = IsometryIndex::new(g)?;
    let n = g.vertex_count();
    let meter = opts.budget.meter();
    let mut found: Vec<Option<u64>> = vec![None; n + 1];
    if n > 0 {
        found[n] = Some(idx.full());
        found[1] = Some(1);
        if let Some(&(u, v)) = g.edges().first() {
            found[2] = Some(1 << u | 1 << v);
        }
    }

    let mut ext = Extension {
        idx: &idx,
        meter: &meter,
        found: &mut found,
        missing: 0,
        visited: HashSet::new(),
        steps_left: opts.extension_steps,
    };
    ext.missing = ext.found.iter().skip(1).filter(|f| f.is_none()).count();
    if ext.missing > 0 {
        ext.shrink(idx.full())?;
    }
    if ext.missing > 0 {
        ext.visited.clear();
        for v in 0..n {
            if ext.missing == 0 || ext.steps_left == 0 {
                break;
            }
            ext.grow(1 << v)?;
        }
    }

    for k in 1..=n {
        if found[k].is_none() {
            if opts.max_subset_size.is_some_and(|cap| k > cap) {
                return Err(Error::BudgetExceeded);
            }
            found[k] = find_isometric_of_order(&idx, k, &meter)?;
        }
    }

    let ndp = (1..=n).filter(|&k| found[k].is_none()).collect();
    let witnesses = found
        .iter()
        .enumerate()
        .map(|(k, m)| if k == 0 { None } else { m.map(|m| VertexSubset::from_mask(n, m)) })
        .collect();
    Ok(NdpReport { host: g.clone(), ndp, witnesses })
}

struct Extension<'a> {
    idx: &'a IsometryIndex,
    meter: &'a Meter,
    found: &'a mut Vec<Option<u64>>,
    missing: usize,
    visited: HashSet<u64>,
    steps_left: u64,
}

impl Extension<'_> {
    fn record(&mut self, s: u64) {
        let k = s.count_ones() as usize;
        if self.found[k].is_none() {
            self.found[k] = Some(s);
            self.missing -= 1;
        }
    }

    fn step(&mut self) -> Result<bool> {
        self.meter.tick()?;
        if self.steps_left == 0 || self.missing == 0 {
            return Ok(false);
        }
        self.steps_left -= 1;
        Ok(true)
    }

    fn shrink(&mut self, s: u64) -> Result<()> {
        for v in bits(s) {
            if !self.step()? {
                return Ok(());
            }
            let next = s & !(1 << v);
            if next == 0 || !self.visited.insert(next) {
                continue;
            }
            if self.idx.is_isometric(next) {
                self.record(next);
                self.shrink(next)?;
            }
        }
        Ok(())
    }

    fn grow(&mut self, s: u64) -> Result<()> {
        let frontier = bits(s).fold(0, |acc, v| acc | self.idx.adjacency(v)) & !s;
        for w in bits(frontier) {
            if !self.step()? {
                return Ok(());
            }
            let next = s | 1 << w;
            if !self.visited.insert(next) {
                continue;
            }
            if self.idx.is_isometric(next) {
                self.record(next);
                self.grow(next)?;
            }
        }
        Ok(())
    }
}

/// Enumerates connected `k`-sets (ESU scheme, each set exactly once) and
/// returns the first isometric one in enumeration order.
fn find_isometric_of_order(idx: &IsometryIndex, k: usize, meter: &Meter) -> Result<Option<u64>> {
    let mut hit = None;
    for_each_connected_set(idx, k, meter, &mut |s| {
        if idx.is_isometric(s) {
            hit = Some(s);
            true
        } else {
            false
        }
    })?;
    Ok(hit)
}

/// Calls `visit` on every connected vertex set of order `k`; stops early when `visit` returns true.
pub(crate) fn for_each_connected_set(
    idx: &IsometryIndex,
    k: usize,
    meter: &Meter,
    visit: &mut dyn FnMut(u64) -> bool,
) -> Result<bool> {
    fn extend(
        idx: &IsometryIndex,
        k: usize,
        root: usize,
        s: u64,
        closed: u64,
        ext: u64,
        meter: &Meter,
        visit: &mut dyn FnMut(u64) -> bool,
    ) -> Result<bool> {
        meter.tick()?;
        if s.count_ones() as usize == k {
            return Ok(visit(s));
        }
        let above = !full_mask(root + 1);
        let mut ext = ext;
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            let adj = idx.adjacency(w);
            let fresh = adj & !closed & above;
            if extend(idx, k, root, s | 1 << w, closed | adj, ext | fresh, meter, visit)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    if k == 0 || k > idx.order() {
        return Ok(false);
    }
    for v in 0..idx.order() {
        let adj = idx.adjacency(v);
        let above = !full_mask(v + 1);
        if extend(idx, k, v, 1 << v, adj | 1 << v, adj & above, meter, visit)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Isometric subgraphs of every order `1..=|host|`; `witnesses[k - 1]` has `k` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DpCertificate {
    #[serde(skip)]
    host: Graph,
    witnesses: Vec<VertexSubset>,
}

impl DpCertificate {
    /// Validates sizes and re-checks every witness with [`is_isometric`].
    pub fn new(host: Graph, witnesses: Vec<VertexSubset>) -> Result<Self> {
        let cert = DpCertificate { host, witnesses };
        cert.verify()?;
        Ok(cert)
    }

    pub fn verify(&self) -> Result<()> {
        let n = self.host.vertex_count();
        if self.witnesses.len() != n {
            return Err(Error::InvalidCertificate(format!(
                "{} witnesses for a graph on {} vertices",
                self.witnesses.len(),
                n
            )));
        }
        for (i, w) in self.witnesses.iter().enumerate() {
            w.check_host(&self.host)
                .map_err(|e| Error::InvalidCertificate(e.to_string()))?;
            if w.len() != i + 1 {
                return Err(Error::InvalidCertificate(format!(
                    "witness for order {} has {} vertices",
                    i + 1,
                    w.len()
                )));
            }
            if !is_isometric(&self.host, w)? {
                return Err(Error::InvalidCertificate(format!(
                    "witness for order {} is not isometric",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn witnesses(&self) -> &[VertexSubset] {
        &self.witnesses
    }

    pub fn witness(&self, k: usize) -> Option<&VertexSubset> {
        k.checked_sub(1).and_then(|i| self.witnesses.get(i))
    }
}

/// Outcome of [`is_dp`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpVerdict {
    pub report: NdpReport,
    pub certificate: Option<DpCertificate>,
}

impl DpVerdict {
    pub fn is_dp(&self) -> bool {
        self.certificate.is_some()
    }
}

pub fn is_dp(g: &Graph, opts: &SearchOptions) -> Result<DpVerdict> {
    let report = ndp_set(g, opts)?;
    let certificate = if report.is_dp() {
        let witnesses = (1..=g.vertex_count())
            .map(|k| report.witness(k).cloned().expect("dp report has every witness"))
            .collect();
        Some(DpCertificate::new(g.clone(), witnesses)?)
    } else {
        None
    };
    Ok(DpVerdict { report, certificate })
}

/// Deletion order `v_1..v_n`: removing any prefix leaves a subgraph isometric in the host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SdpOrder {
    #[serde(skip)]
    host: Graph,
    order: Vec<usize>,
}

impl SdpOrder {
    /// Checks that `order` is a permutation and re-verifies every prefix deletion.
    pub fn new(host: Graph, order: Vec<usize>) -> Result<Self> {
        let n = host.vertex_count();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidOrder(format!("{order:?} is not a permutation of 0..{n}")));
            }
        }
        if order.len() != n {
            return Err(Error::InvalidOrder(format!("{order:?} is not a permutation of 0..{n}")));
        }
        let mut alive = vec![true; n];
        for (i, &v) in order.iter().enumerate() {
            alive[v] = false;
            let rest = VertexSubset::from_sorted(n, (0..n).filter(|&w| alive[w]).collect());
            if !is_isometric(&host, &rest)? {
                return Err(Error::InvalidOrder(format!(
                    "deleting the first {} vertices leaves a non-isometric subgraph",
                    i + 1
                )));
            }
        }
        Ok(SdpOrder { host, order })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

/// Backtracking search for a deletion order, lowest-id candidate first.
///
/// Returns `Ok(None)` only after the search space is exhausted.
pub fn sdp_order(g: &Graph, opts: &SearchOptions) -> Result<Option<SdpOrder>> {
    let idx = IsometryIndex::new(g)?;
    let meter = opts.budget.meter();
    let mut dead = HashSet::new();
    let mut order = Vec::with_capacity(g.vertex_count());
    if sdp_search(&idx, idx.full(), &mut order, &mut dead, &meter)? {
        Ok(Some(SdpOrder::new(g.clone(), order)?))
    } else {
        Ok(None)
    }
}

fn sdp_search(
    idx: &IsometryIndex,
    remaining: u64,
    order: &mut Vec<usize>,
    dead: &mut HashSet<u64>,
    meter: &Meter,
) -> Result<bool> {
    if remaining == 0 {
        return Ok(true);
    }
    if dead.contains(&remaining) {
        return Ok(false);
    }
    for v in bits(remaining) {
        meter.tick()?;
        let next = remaining & !(1 << v);
        if idx.is_isometric(next) {
            order.push(v);
            if sdp_search(idx, next, order, dead, meter)? {
                return Ok(true);
            }
            order.pop();
        }
    }
    dead.insert(remaining);
    Ok(false)
}

/// Every `A` with `|A| <= max_size` such that `host - A` is isometric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionSets {
    host: Graph,
    sets: Vec<VertexSubset>,
}

impl DeletionSets {
    pub fn host(&self) -> &Graph {
        &self.host
    }

    /// Sets ordered by size, then lexicographically.
    pub fn sets(&self) -> &[VertexSubset] {
        &self.sets
    }

    pub fn contains(&self, a: &VertexSubset) -> bool {
        self.sets.binary_search_by(|s| (s.len(), s).cmp(&(a.len(), a))).is_ok()
    }

    /// Distinct sizes `|A|`, ascending.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.sets.iter().map(VertexSubset::len).collect();
        sizes.dedup();
        sizes
    }

    pub fn count_of_size(&self, k: usize) -> usize {
        self.sets.iter().filter(|s| s.len() == k).count()
    }
}

pub fn deletion_sets(g: &Graph, max_size: usize, opts: &SearchOptions) -> Result<DeletionSets> {
    let idx = IsometryIndex::new(g)?;
    let n = g.vertex_count();
    let meter = opts.budget.meter();
    let full = idx.full();
    let mut sets = Vec::new();
    for k in 0..=max_size.min(n) {
        let mut batch = Vec::new();
        for a in KSubsets::new(n, k) {
            meter.tick()?;
            if idx.is_isometric(full & !a) {
                batch.push(VertexSubset::from_mask(n, a));
            }
        }
        batch.sort();
        sets.extend(batch);
    }
    Ok(DeletionSets { host: g.clone(), sets })
}

/// All `k`-element masks over `n <= 64` bits, in increasing numeric order.
#[derive(Debug, Clone)]
pub(crate) struct KSubsets {
    n: usize,
    next: Option<u64>,
}

impl KSubsets {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        let next = if k > n { None } else { Some(full_mask(k)) };
        KSubsets { n, next }
    }
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            // Gosper's hack, widened so masks touching bit 63 do not overflow
            let c = cur as u128;
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            let nxt = (((ripple ^ c) >> 2) / low) | ripple;
            if nxt >> self.n != 0 {
                None
            } else {
                Some(nxt as u64)
            }
        };
        Some(cur)
    }
}
