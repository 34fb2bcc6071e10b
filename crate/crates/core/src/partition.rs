//! H-partitions and their verifier, star-partitions driven by balanced
//! separators, bounded-tree-depth partitions with their depth schedules,
//! and the treewidth-driven tree-depth partition.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::decomposition::{
    check_normal_conditions, normalize, NormalizedDecomposition, RootedForest, TreeDecomposition,
};
use crate::graph::{Graph, SubgraphView, VertexSet};
use crate::math;
use crate::separators::{separator_from_bags, ClassGuarantee, SeparatorEngine};
use crate::Error;

/// A partition of (a subset of) the vertices, indexed by the vertices of
/// a host graph: every edge stays inside a part or maps to a host edge.
/// The host may be a supergraph of the quotient.
#[derive(Debug, Clone)]
pub struct HPartition {
    pub parts: Vec<VertexSet>,
    pub host: Graph,
}

impl HPartition {
    /// Max part size: the `m` of `H ⊠ K_m`.
    pub fn width(&self) -> usize {
        self.parts.iter().map(|p| p.len()).max().unwrap_or(0)
    }

    /// Part index per vertex, `None` for vertices outside all parts.
    pub fn part_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n];
        for (i, part) in self.parts.iter().enumerate() {
            for v in part.iter() {
                if v < n {
                    out[v] = Some(i);
                }
            }
        }
        out
    }

    pub fn covered(&self) -> VertexSet {
        let mut all = VertexSet::empty();
        for p in &self.parts {
            all = all.union(p);
        }
        all
    }
}

/// A witness for the host's structure: a rooted forest whose closure
/// contains the host (tree-depth), a tree decomposition of the host
/// (treewidth), or a clique in the host (lower bound).
#[derive(Debug, Clone)]
pub enum HostWitness {
    Forest(RootedForest),
    Decomposition(TreeDecomposition),
    Clique(VertexSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionViolation {
    HostSizeMismatch { parts: usize, host: usize },
    EmptyPart { part: usize },
    OverlappingVertex { vertex: usize },
    UncoveredVertex { vertex: usize },
    ForeignVertex { vertex: usize },
    UnmappedEdge { u: usize, v: usize },
}

#[derive(Debug, Clone)]
pub struct PartitionCertificate {
    pub valid: bool,
    pub width: usize,
    pub witness: Option<HostWitness>,
    pub violations: Vec<PartitionViolation>,
}

impl PartitionCertificate {
    pub fn with_witness(mut self, witness: HostWitness) -> Self {
        self.witness = Some(witness);
        self
    }
}

/// Checks an H-partition of the whole graph.
pub fn verify_hpartition(g: &Graph, p: &HPartition) -> PartitionCertificate {
    verify_hpartition_of(g, &VertexSet::full(g.vertex_count()), p)
}

/// Checks an H-partition of the subgraph induced by `cover`; every
/// violation is reported, nothing is trusted.
pub fn verify_hpartition_of(g: &Graph, cover: &VertexSet, p: &HPartition) -> PartitionCertificate {
    let mut violations = Vec::new();
    if p.host.vertex_count() != p.parts.len() {
        violations.push(PartitionViolation::HostSizeMismatch {
            parts: p.parts.len(),
            host: p.host.vertex_count(),
        });
    }
    let n = g.vertex_count();
    let mut owner = vec![usize::MAX; n];
    for (i, part) in p.parts.iter().enumerate() {
        if part.is_empty() {
            violations.push(PartitionViolation::EmptyPart { part: i });
        }
        for v in part.iter() {
            if v >= n || !cover.contains(v) {
                violations.push(PartitionViolation::ForeignVertex { vertex: v });
            } else if owner[v] != usize::MAX {
                violations.push(PartitionViolation::OverlappingVertex { vertex: v });
            } else {
                owner[v] = i;
            }
        }
    }
    for v in cover.iter() {
        if v < n && owner[v] == usize::MAX {
            violations.push(PartitionViolation::UncoveredVertex { vertex: v });
        }
    }
    if violations.is_empty() {
        for (u, v) in g.edges() {
            if !cover.contains(u) || !cover.contains(v) {
                continue;
            }
            let (pu, pv) = (owner[u], owner[v]);
            if pu != pv && !p.host.has_edge(pu, pv) {
                violations.push(PartitionViolation::UnmappedEdge { u, v });
            }
        }
    }
    PartitionCertificate {
        valid: violations.is_empty(),
        width: p.width(),
        witness: None,
        violations,
    }
}

/// Minimal host for a partition: an edge `ij` iff some graph edge joins
/// part `i` and part `j`.
pub fn quotient(g: &Graph, parts: &[VertexSet]) -> Result<Graph, Error> {
    let n = g.vertex_count();
    let mut owner = vec![usize::MAX; n];
    let mut covered = 0usize;
    for (i, part) in parts.iter().enumerate() {
        for v in part.iter() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if owner[v] != usize::MAX {
                return Err(Error::InvalidInput(format!("vertex {v} lies in two parts")));
            }
            owner[v] = i;
            covered += 1;
        }
    }
    if covered != n {
        return Err(Error::InvalidInput(format!(
            "parts cover {covered} of {n} vertices"
        )));
    }
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        if owner[u] != owner[v] {
            edges.push((owner[u], owner[v]));
        }
    }
    Graph::build(parts.len(), &edges)
}

fn star_host(part_count: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..part_count).map(|i| (0, i)).collect();
    Graph::build(part_count.max(1), &edges).expect("star host is well formed")
}

/// Star-partition via fragmentation: the center part is a fragmenting
/// set for `target = n^(1/(1+eps))`, the leaves are the components it
/// leaves behind.
pub fn star_partition(
    g: &Graph,
    engine: &dyn SeparatorEngine,
    guarantee: &ClassGuarantee,
) -> Result<HPartition, Error> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidInput(String::from("empty graph has no partition")));
    }
    let alpha = 1.0 / (1.0 + guarantee.epsilon);
    let target = math::floor_cap(math::powf(n as f64, alpha)).max(1);
    let s = crate::separators::fragment(g, engine, target)?;
    let comps = g.components_within(&s.complement(n));
    let mut parts = Vec::with_capacity(comps.len() + 1);
    if !s.is_empty() {
        parts.push(s);
    }
    parts.extend(comps);
    Ok(HPartition { host: star_host(parts.len()), parts })
}

/// Predicted star-partition width: `max{c 2^eps/(2^eps - 1), 1} * n^(1/(1+eps))`.
pub fn star_width_bound(guarantee: &ClassGuarantee, n: usize) -> f64 {
    let coef = guarantee.fragmentation_coefficient().max(1.0);
    coef * math::powf(n as f64, 1.0 / (1.0 + guarantee.epsilon))
}

/// Predicted width for the depth-`d` partition:
/// `c 2^eps/(2^eps-1) * n^((1-eps)/(1-eps^d))`.
pub fn tdd_width_bound(guarantee: &ClassGuarantee, n: usize, d: usize) -> f64 {
    let eps = guarantee.epsilon;
    let exponent = (1.0 - eps) / (1.0 - math::powf(eps, d as f64));
    guarantee.fragmentation_coefficient() * math::powf(n as f64, exponent)
}

/// Tree-depth-`d` partition: fragment with `target = n^alpha` for
/// `alpha = (1-eps^(d-1))/(1-eps^d)`, recurse on the components with one
/// level less, and hang the component forests under the separator part.
/// When the fragmenter returns an empty set (already fragmented input)
/// the level is skipped and `d` is not consumed.
pub fn tdd_partition(
    g: &Graph,
    engine: &dyn SeparatorEngine,
    guarantee: &ClassGuarantee,
    d: usize,
) -> Result<(HPartition, RootedForest), Error> {
    if d == 0 {
        return Err(Error::InvalidInput(String::from("depth budget must be >= 1")));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidInput(String::from("empty graph has no partition")));
    }
    let mut parts: Vec<VertexSet> = Vec::new();
    let mut parent: Vec<Option<usize>> = Vec::new();
    tdd_build(g, &VertexSet::full(n), engine, guarantee, d, None, &mut parts, &mut parent)?;
    let forest = RootedForest::new(parent)?;
    if forest.vertex_height() > d {
        return Err(Error::InvalidInput(format!(
            "construction exceeded depth budget {d}"
        )));
    }
    let host = forest.closure();
    Ok((HPartition { parts, host }, forest))
}

#[allow(clippy::too_many_arguments)]
fn tdd_build(
    g: &Graph,
    sub: &VertexSet,
    engine: &dyn SeparatorEngine,
    guarantee: &ClassGuarantee,
    d: usize,
    up: Option<usize>,
    parts: &mut Vec<VertexSet>,
    parent: &mut Vec<Option<usize>>,
) -> Result<(), Error> {
    let n_sub = sub.len();
    if n_sub == 0 {
        return Ok(());
    }
    if d == 1 || n_sub == 1 {
        parts.push(sub.clone());
        parent.push(up);
        return Ok(());
    }
    let eps = guarantee.epsilon;
    let alpha = (1.0 - math::powf(eps, (d - 1) as f64)) / (1.0 - math::powf(eps, d as f64));
    let target = math::floor_cap(math::powf(n_sub as f64, alpha)).max(1);
    let view = g.induced(sub)?;
    let local = crate::separators::fragment(&view.graph, engine, target)?;
    let s = view.lift(&local);
    if s.is_empty() {
        // every component already meets the target; skip the level
        let comps = g.components_within(sub);
        if comps.len() == 1 {
            // a connected graph with n >= 2 always gets a nonempty set;
            // consume a level to guarantee progress regardless
            return tdd_build(g, sub, engine, guarantee, d - 1, up, parts, parent);
        }
        for comp in comps {
            tdd_build(g, &comp, engine, guarantee, d, up, parts, parent)?;
        }
        return Ok(());
    }
    let idx = parts.len();
    parts.push(s.clone());
    parent.push(up);
    for comp in g.components_within(&sub.difference(&s)) {
        tdd_build(g, &comp, engine, guarantee, d - 1, Some(idx), parts, parent)?;
    }
    Ok(())
}

/// How to pick the tree-depth budget for a separator guarantee.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DepthSchedule {
    /// Fixed exponent gap `delta`: `d = ceil(log_eps(delta/(1-eps+delta)))`.
    FixedDelta(f64),
    /// Caller-supplied slowly growing `h = h(n)`: `d = ceil(h)` with gap
    /// `delta = (1-eps)((1-eps^h)^{-1} - 1)`.
    SlowH(f64),
    /// `d = ceil(log2(1 + log2 n) / (-log2 eps))`, gap zero, coefficient
    /// `2c/(2^eps - 1)`.
    LogLog,
}

/// A chosen depth with its width bound as an evaluable closed form
/// `coefficient * n^exponent`.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthChoice {
    pub d: usize,
    pub coefficient: f64,
    pub exponent: f64,
}

impl DepthChoice {
    pub fn bound(&self, n: usize) -> f64 {
        self.coefficient * math::powf(n as f64, self.exponent)
    }

    pub fn formula(&self) -> String {
        format!("{:.6} * n^{:.6}", self.coefficient, self.exponent)
    }
}

pub fn choose_depth(
    n: usize,
    guarantee: &ClassGuarantee,
    schedule: DepthSchedule,
) -> Result<DepthChoice, Error> {
    let eps = guarantee.epsilon;
    let gamma = guarantee.fragmentation_coefficient();
    match schedule {
        DepthSchedule::FixedDelta(delta) => {
            if !(delta > 0.0 && delta < eps) {
                return Err(Error::InvalidInput(format!(
                    "delta must lie in (0, eps); got {delta} with eps = {eps}"
                )));
            }
            // smallest d with eps^d <= delta / (1 - eps + delta)
            let ratio = delta / (1.0 - eps + delta);
            let mut d = 1usize;
            while math::powf(eps, d as f64) > ratio * (1.0 + 1e-12) {
                d += 1;
            }
            Ok(DepthChoice { d, coefficient: gamma, exponent: 1.0 - eps + delta })
        }
        DepthSchedule::SlowH(h) => {
            if !(h > 0.0) {
                return Err(Error::InvalidInput(String::from("h must be positive")));
            }
            let d = math::ceil_int(h).max(1);
            let delta = (1.0 - eps) * (1.0 / (1.0 - math::powf(eps, h)) - 1.0);
            Ok(DepthChoice { d, coefficient: gamma, exponent: 1.0 - eps + delta })
        }
        DepthSchedule::LogLog => {
            if n < 2 {
                return Err(Error::InvalidInput(String::from("loglog schedule needs n >= 2")));
            }
            let d = math::ceil_int(math::log2(1.0 + math::log2(n as f64)) / -math::log2(eps)).max(1);
            let coefficient = 2.0 * guarantee.c / (math::powf(2.0, eps) - 1.0);
            Ok(DepthChoice { d, coefficient, exponent: 1.0 - eps })
        }
    }
}

/// Predicted width for the treewidth-driven partition:
/// `(k+1)^(1-1/d) * n^(1/d)`.
pub fn tw_td_width_bound(k: usize, n: usize, d: usize) -> f64 {
    let dd = d as f64;
    math::powf((k + 1) as f64, 1.0 - 1.0 / dd) * math::powf(n as f64, 1.0 / dd)
}

/// Tree-depth-`d` partition of a width-`k` graph with width at most
/// `(k+1)^(1-1/d) n^(1/d)`. Each level removes a union of bags sized by
/// `p = (k+1)^(1-1/d) n^(1/d)`, `q = (k+1)^(1/d) n^(1-1/d)` (so
/// `n(k+1) = pq`), and recurses on the components with `d - 1`. All
/// feasibility arithmetic is integer-exact.
pub fn treewidth_tdd_partition(
    g: &Graph,
    nd: &NormalizedDecomposition,
    d: usize,
) -> Result<(HPartition, RootedForest), Error> {
    if d == 0 {
        return Err(Error::InvalidInput(String::from("depth budget must be >= 1")));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidInput(String::from("empty graph has no partition")));
    }
    check_normal_conditions(g, nd).map_err(Error::InvalidDecomposition)?;
    let mut parts: Vec<VertexSet> = Vec::new();
    let mut parent: Vec<Option<usize>> = Vec::new();
    twtd_build(g, &VertexSet::full(n), nd, nd.k, d, None, &mut parts, &mut parent)?;
    let forest = RootedForest::new(parent)?;
    if forest.vertex_height() > d {
        return Err(Error::InvalidInput(format!(
            "construction exceeded depth budget {d}"
        )));
    }
    let host = forest.closure();
    Ok((HPartition { parts, host }, forest))
}

/// Restricts a decomposition to `sub` in local coordinates and strips
/// empty leaf bags so the normalization below works on a small tree.
fn restrict_pruned(td: &TreeDecomposition, view: &SubgraphView, sub: &VertexSet) -> TreeDecomposition {
    let t = td.node_count();
    let mut bags: Vec<VertexSet> = td
        .bags
        .iter()
        .map(|b| b.intersection(sub).iter().map(|v| view.to_local(v).unwrap()).collect())
        .collect();
    let mut degree: Vec<usize> = (0..t).map(|x| td.tree.degree(x)).collect();
    let mut alive = vec![true; t];
    let mut stack: Vec<usize> = (0..t).filter(|&x| degree[x] <= 1 && bags[x].is_empty()).collect();
    let mut alive_count = t;
    while let Some(x) = stack.pop() {
        if !alive[x] || !bags[x].is_empty() || degree[x] > 1 || alive_count == 1 {
            continue;
        }
        alive[x] = false;
        alive_count -= 1;
        for &y in td.tree.neighbors(x) {
            if alive[y] {
                degree[y] -= 1;
                if degree[y] <= 1 && bags[y].is_empty() {
                    stack.push(y);
                }
            }
        }
    }
    let live: Vec<usize> = (0..t).filter(|&x| alive[x]).collect();
    let mut new_id = vec![usize::MAX; t];
    for (i, &x) in live.iter().enumerate() {
        new_id[x] = i;
    }
    let mut edges = Vec::new();
    for (x, y) in td.tree.edges() {
        if alive[x] && alive[y] {
            edges.push((new_id[x], new_id[y]));
        }
    }
    let tree = Graph::build(live.len().max(1), &edges).expect("pruned tree is well formed");
    let final_bags: Vec<VertexSet> = if live.is_empty() {
        vec![VertexSet::empty()]
    } else {
        live.iter().map(|&x| core::mem::take(&mut bags[x])).collect()
    };
    TreeDecomposition { tree, bags: final_bags }
}

#[allow(clippy::too_many_arguments)]
fn twtd_build(
    g: &Graph,
    sub: &VertexSet,
    top_nd: &NormalizedDecomposition,
    k: usize,
    d: usize,
    up: Option<usize>,
    parts: &mut Vec<VertexSet>,
    parent: &mut Vec<Option<usize>>,
) -> Result<(), Error> {
    let n_sub = sub.len();
    if n_sub == 0 {
        return Ok(());
    }
    if d == 1 || n_sub <= k + 1 {
        parts.push(sub.clone());
        parent.push(up);
        return Ok(());
    }
    // p' = floor(p / (k+1)) with p = (k+1)^(1-1/d) n^(1/d), i.e. the
    // largest integer with (k+1) p'^d <= n; q likewise satisfies
    // q^d = (k+1) n^(d-1). Both are computed in exact integer arithmetic.
    let du = d as u32;
    let mut p_prime = math::int_root(n_sub as u128 / (k as u128 + 1), du);
    while (k as u128 + 1) * (p_prime + 1).pow(du) <= n_sub as u128 {
        p_prime += 1;
    }
    let p_prime = p_prime as usize;
    let q_pow = (k as u128 + 1) * (n_sub as u128).pow(du - 1);
    let q_cap = math::int_root(q_pow, du) as usize;
    let view = g.induced(sub)?;
    let td_local = restrict_pruned(&top_nd.td, &view, sub);
    let nd_local = normalize(&view.graph, &td_local)?;
    let s_local = separator_from_bags(&view.graph, &nd_local, p_prime, q_cap)?;
    let s = view.lift(&s_local);
    debug_assert!(!s.is_empty());
    let idx = parts.len();
    parts.push(s.clone());
    parent.push(up);
    for comp in g.components_within(&sub.difference(&s)) {
        twtd_build(g, &comp, top_nd, k, d - 1, Some(idx), parts, parent)?;
    }
    Ok(())
}

/// Star-partition of a width-`k` graph with width at most
/// `ceil(sqrt((k+1) n))`, by one treewidth-separator call with
/// `p = q = ceil(sqrt((k+1) n))`.
pub fn star_partition_from_treewidth(
    g: &Graph,
    nd: &NormalizedDecomposition,
) -> Result<HPartition, Error> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidInput(String::from("empty graph has no partition")));
    }
    check_normal_conditions(g, nd).map_err(Error::InvalidDecomposition)?;
    let k = nd.k;
    let prod = (k as u128 + 1) * n as u128;
    let root = math::int_root(prod, 2);
    let r = if root * root == prod { root } else { root + 1 } as usize;
    let p_prime = r / (k + 1);
    let s = separator_from_bags(g, nd, p_prime, r)?;
    let comps = g.components_within(&s.complement(n));
    let mut parts = Vec::with_capacity(comps.len() + 1);
    if !s.is_empty() {
        parts.push(s);
    }
    parts.extend(comps);
    let p = HPartition { host: star_host(parts.len()), parts };
    if p.width() > r {
        return Err(Error::InfeasibleBound(format!(
            "star width {} exceeds ceil(sqrt((k+1)n)) = {r}",
            p.width()
        )));
    }
    Ok(p)
}

/// `false` iff `n > (2m)^d`, which certifies that no height-`d` host of
/// width `m` can contain the `n`-vertex path.
pub fn path_lower_bound_check(n: usize, d: usize, m: usize) -> bool {
    if d == 0 {
        return n <= 1; // (2m)^0 = 1
    }
    if m == 0 {
        return n == 0;
    }
    let base = 2u128.saturating_mul(m as u128);
    let mut power: u128 = 1;
    for _ in 0..d {
        power = match power.checked_mul(base) {
            Some(p) => p,
            None => return true,
        };
        if power >= n as u128 {
            return true;
        }
    }
    n as u128 <= power
}
