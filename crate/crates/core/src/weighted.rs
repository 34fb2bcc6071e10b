//! Weighted separability: residue-class separators for path and grid
//! blow-ups, depth-class separators for bounded-degree trees, and the
//! transform that turns containment in `H ⊠ J` into containment in
//! `L ⊠ K_m` via a weighted separator of `J`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::decomposition::{heuristic_tree_decomposition, validate_decomposition, TreeDecomposition};
use crate::graph::{Graph, VertexSet};
use crate::math;
use crate::partition::{verify_hpartition, HPartition};
use crate::Error;

/// A graph with nonnegative real vertex weights. The total weight plays
/// the role of `n` in the separability definition; component sizes stay
/// vertex counts.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    pub graph: Graph,
    pub weights: Vec<f64>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<f64>) -> Result<WeightedGraph, Error> {
        if weights.len() != graph.vertex_count() {
            return Err(Error::InvalidInput(format!(
                "{} weights for {} vertices",
                weights.len(),
                graph.vertex_count()
            )));
        }
        if weights.iter().any(|w| !(*w >= 0.0)) {
            return Err(Error::InvalidInput(String::from("weights must be nonnegative")));
        }
        Ok(WeightedGraph { graph, weights })
    }

    pub fn unit(graph: Graph) -> WeightedGraph {
        let n = graph.vertex_count();
        WeightedGraph { graph, weights: vec![1.0; n] }
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn weight_of(&self, s: &VertexSet) -> f64 {
        s.iter().map(|v| self.weights[v]).sum()
    }
}

/// Strong-product coordinates `P_1 ⊠ ... ⊠ P_d ⊠ K_c`: per-vertex path
/// positions plus a clique index, all 0-based.
#[derive(Debug, Clone)]
pub struct ProductCoordinates {
    pub path_lengths: Vec<usize>,
    pub clique_size: usize,
    pub coords: Vec<(Vec<usize>, usize)>,
}

impl ProductCoordinates {
    /// Trivial coordinates for a bare path (`c = 1`).
    pub fn path(n: usize) -> ProductCoordinates {
        ProductCoordinates {
            path_lengths: vec![n],
            clique_size: 1,
            coords: (0..n).map(|i| (vec![i], 0)).collect(),
        }
    }

    fn validate(&self, g: &Graph, dims: usize, c: usize) -> Result<(), Error> {
        let n = g.vertex_count();
        if self.coords.len() != n {
            return Err(Error::StructureMismatch(format!(
                "{} coordinate rows for {n} vertices",
                self.coords.len()
            )));
        }
        if self.path_lengths.len() != dims || self.clique_size != c {
            return Err(Error::StructureMismatch(format!(
                "coordinates declare {} path factors and clique size {}, structure wants {dims} and {c}",
                self.path_lengths.len(),
                self.clique_size
            )));
        }
        let mut seen = alloc::collections::BTreeSet::new();
        for (v, (xs, l)) in self.coords.iter().enumerate() {
            if xs.len() != dims {
                return Err(Error::StructureMismatch(format!("vertex {v} has {} path coordinates", xs.len())));
            }
            for (i, &x) in xs.iter().enumerate() {
                if x >= self.path_lengths[i] {
                    return Err(Error::StructureMismatch(format!(
                        "vertex {v}: coordinate {x} outside path of length {}",
                        self.path_lengths[i]
                    )));
                }
            }
            if *l >= c {
                return Err(Error::StructureMismatch(format!("vertex {v}: clique index {l} >= {c}")));
            }
            if !seen.insert((xs.clone(), *l)) {
                return Err(Error::StructureMismatch(format!("vertex {v}: duplicate coordinates")));
            }
        }
        // every edge must respect strong-product adjacency
        for (u, v) in g.edges() {
            let (xu, _) = &self.coords[u];
            let (xv, _) = &self.coords[v];
            if xu.iter().zip(xv.iter()).any(|(a, b)| a.abs_diff(*b) > 1) {
                return Err(Error::StructureMismatch(format!(
                    "edge ({u},{v}) spans non-adjacent product columns"
                )));
            }
        }
        Ok(())
    }
}

/// Which separability argument applies.
#[derive(Debug, Clone)]
pub enum SeparableStructure<'a> {
    /// `P ⊠ K_c` with the given coordinates.
    PathBlowup { c: usize, coords: &'a ProductCoordinates },
    /// `P_1 ⊠ ... ⊠ P_d ⊠ K_c`.
    GridBlowup { d: usize, c: usize, coords: &'a ProductCoordinates },
    /// Tree with maximum degree `delta >= 3`.
    Tree { delta: usize },
}

/// A weighted separator with its recomputed measures: the separator is
/// weighed, components are counted in vertices.
#[derive(Debug, Clone)]
pub struct WeightedSeparatorReport {
    pub s: VertexSet,
    pub weight: f64,
    pub max_component: usize,
    pub target_weight: f64,
    pub target_size: f64,
    pub classes: usize,
    pub meets_contract: bool,
}

fn report(
    wg: &WeightedGraph,
    s: VertexSet,
    target_weight: f64,
    target_size: f64,
    classes: usize,
) -> WeightedSeparatorReport {
    let weight = wg.weight_of(&s);
    let max_component = wg.graph.max_component_size(&s);
    let meets_contract = weight <= target_weight + 1e-9 * target_weight.abs().max(1.0)
        && math::size_le(max_component, target_size);
    WeightedSeparatorReport { s, weight, max_component, target_weight, target_size, classes, meets_contract }
}

/// Best residue or depth class for the given structure. Ties go to the
/// lightest class, then the smallest index.
pub fn weighted_separator(
    wg: &WeightedGraph,
    structure: &SeparableStructure<'_>,
) -> Result<WeightedSeparatorReport, Error> {
    let total = wg.total();
    match structure {
        SeparableStructure::PathBlowup { c, coords } => {
            if *c == 0 {
                return Err(Error::InvalidInput(String::from("clique size must be >= 1")));
            }
            coords.validate(&wg.graph, 1, *c)?;
            let m = math::ceil_int(math::sqrt(total / *c as f64)).max(1);
            let class_of = |v: usize| coords.coords[v].0[0] % m;
            let best = best_class(wg, m, class_of);
            let target = math::sqrt(*c as f64 * total);
            Ok(report(wg, best, target, target, m))
        }
        SeparableStructure::GridBlowup { d, c, coords } => {
            if *c == 0 || *d == 0 {
                return Err(Error::InvalidInput(String::from("d and c must be >= 1")));
            }
            coords.validate(&wg.graph, *d, *c)?;
            let df = *d as f64;
            let m = math::ceil_int(math::powf(df * total / *c as f64, 1.0 / (df + 1.0))).max(1);
            // class j collects every vertex with some coordinate = j mod m
            let mut best: Option<(f64, usize, VertexSet)> = None;
            for j in 0..m {
                let class: VertexSet = (0..wg.graph.vertex_count())
                    .filter(|&v| coords.coords[v].0.iter().any(|&x| x % m == j))
                    .collect();
                let w = wg.weight_of(&class);
                if best.as_ref().map(|(bw, _, _)| w < *bw).unwrap_or(true) {
                    best = Some((w, j, class));
                }
            }
            let (_, _, class) = best.expect("m >= 1");
            let target = math::powf(df * total, df / (df + 1.0)) * math::powf(*c as f64, 1.0 / (df + 1.0));
            Ok(report(wg, class, target, target, m))
        }
        SeparableStructure::Tree { delta } => {
            if !wg.graph.is_tree() {
                return Err(Error::StructureMismatch(String::from("tree mode needs a tree")));
            }
            if *delta < 3 {
                return Err(Error::InvalidInput(String::from(
                    "tree separability needs maximum degree >= 3",
                )));
            }
            let actual = (0..wg.graph.vertex_count()).map(|v| wg.graph.degree(v)).max().unwrap_or(0);
            if actual > *delta {
                return Err(Error::StructureMismatch(format!(
                    "tree has maximum degree {actual} > {delta}"
                )));
            }
            let base = (*delta - 1) as f64;
            let logb = |x: f64| math::ln(x) / math::ln(base);
            if total <= 1.0 || logb(total) <= 1.0 {
                return Err(Error::BelowThreshold(String::from(
                    "total weight too small for the depth-class bound",
                )));
            }
            let m = math::ceil_int(logb(total) - logb(logb(total)));
            if m < 2 {
                return Err(Error::BelowThreshold(format!(
                    "class count m = {m} < 2; instance below the formula's range"
                )));
            }
            // root at the smallest-id leaf so every vertex has at most
            // delta - 1 children
            let root = (0..wg.graph.vertex_count())
                .find(|&v| wg.graph.degree(v) <= 1)
                .expect("trees have leaves");
            let dist = wg.graph.distances(root);
            let class_of = |v: usize| dist[v] % m;
            let best = best_class(wg, m, class_of);
            // components have radius <= m - 2 below their top vertex:
            // at most 1 + (delta-1) + ... + (delta-1)^(m-2) vertices
            let mut size_bound: u128 = 0;
            let mut pow: u128 = 1;
            for _ in 0..m - 1 {
                size_bound = size_bound.saturating_add(pow);
                pow = pow.saturating_mul(*delta as u128 - 1);
            }
            Ok(report(wg, best, total / m as f64, size_bound as f64, m))
        }
    }
}

fn best_class(wg: &WeightedGraph, m: usize, class_of: impl Fn(usize) -> usize) -> VertexSet {
    let mut weights = vec![0.0f64; m];
    for v in 0..wg.graph.vertex_count() {
        weights[class_of(v)] += wg.weights[v];
    }
    let mut best = 0usize;
    for j in 1..m {
        if weights[j] < weights[best] {
            best = j;
        }
    }
    (0..wg.graph.vertex_count()).filter(|&v| class_of(v) == best).collect()
}

/// A `(x in V(H), y in V(J))` coordinate per vertex, witnessing
/// containment in `H ⊠ J`.
#[derive(Debug, Clone)]
pub struct ProductEmbedding<'a> {
    pub h: &'a Graph,
    pub j: &'a Graph,
    pub coords: &'a [(usize, usize)],
}

impl ProductEmbedding<'_> {
    fn validate(&self, g: &Graph) -> Result<(), Error> {
        let n = g.vertex_count();
        if self.coords.len() != n {
            return Err(Error::StructureMismatch(format!(
                "{} coordinates for {n} vertices",
                self.coords.len()
            )));
        }
        let mut seen = alloc::collections::BTreeSet::new();
        for (v, &(x, y)) in self.coords.iter().enumerate() {
            if x >= self.h.vertex_count() {
                return Err(Error::StructureMismatch(format!("vertex {v}: H-coordinate {x} out of range")));
            }
            if y >= self.j.vertex_count() {
                return Err(Error::StructureMismatch(format!("vertex {v}: J-coordinate {y} out of range")));
            }
            if !seen.insert((x, y)) {
                return Err(Error::StructureMismatch(format!("vertex {v}: duplicate coordinate")));
            }
        }
        for (u, v) in g.edges() {
            let (xu, yu) = self.coords[u];
            let (xv, yv) = self.coords[v];
            let x_ok = xu == xv || self.h.has_edge(xu, xv);
            let y_ok = yu == yv || self.j.has_edge(yu, yv);
            if !x_ok || !y_ok {
                return Err(Error::StructureMismatch(format!(
                    "edge ({u},{v}) violates strong-product adjacency"
                )));
            }
        }
        Ok(())
    }
}

/// Provides a weighted separator of `J` meeting some separability bound.
pub trait WeightedSeparatorProvider {
    fn separate(&self, wj: &WeightedGraph) -> Result<VertexSet, Error>;
}

/// Provider backed by `weighted_separator` with a fixed structure.
pub struct StructuredProvider<'a> {
    pub structure: SeparableStructure<'a>,
}

impl WeightedSeparatorProvider for StructuredProvider<'_> {
    fn separate(&self, wj: &WeightedGraph) -> Result<VertexSet, Error> {
        weighted_separator(wj, &self.structure).map(|r| r.s)
    }
}

/// Turns containment of `g` in `H ⊠ J` into an `L`-partition where `L`
/// is disjoint copies of `H` (one per component of `J - S`) plus a
/// dominant vertex holding the `S`-columns. Empty parts are suppressed;
/// the attached witness has width at most `width(H-witness) + 1`.
pub fn separable_transform(
    g: &Graph,
    emb: &ProductEmbedding<'_>,
    provider: &dyn WeightedSeparatorProvider,
) -> Result<(HPartition, TreeDecomposition), Error> {
    emb.validate(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidInput(String::from("empty graph has no partition")));
    }
    let nj = emb.j.vertex_count();
    let mut weights = vec![0.0f64; nj];
    for &(_, y) in emb.coords {
        weights[y] += 1.0;
    }
    let wj = WeightedGraph::new(emb.j.clone(), weights)?;
    let s_j = provider.separate(&wj)?;
    let comps = emb.j.components_within(&s_j.complement(nj));

    let nh = emb.h.vertex_count();
    let mut parts: Vec<VertexSet> = Vec::new();
    let mut copy_slots: Vec<Vec<Option<usize>>> = Vec::new();
    for comp in &comps {
        let mut slots: Vec<Vec<usize>> = vec![Vec::new(); nh];
        for (v, &(x, y)) in emb.coords.iter().enumerate() {
            if comp.contains(y) {
                slots[x].push(v);
            }
        }
        let mut ids = vec![None; nh];
        for (x, vs) in slots.into_iter().enumerate() {
            if !vs.is_empty() {
                ids[x] = Some(parts.len());
                parts.push(VertexSet::new(vs));
            }
        }
        copy_slots.push(ids);
    }
    let z_part: VertexSet = emb
        .coords
        .iter()
        .enumerate()
        .filter(|(_, &(_, y))| s_j.contains(y))
        .map(|(v, _)| v)
        .collect();
    let z_id = if z_part.is_empty() {
        None
    } else {
        parts.push(z_part);
        Some(parts.len() - 1)
    };

    let mut host_edges = Vec::new();
    for ids in &copy_slots {
        for (x, xp) in emb.h.edges() {
            if let (Some(a), Some(b)) = (ids[x], ids[xp]) {
                host_edges.push((a, b));
            }
        }
    }
    if let Some(z) = z_id {
        for p in 0..parts.len() - 1 {
            host_edges.push((p, z));
        }
    }
    let host = Graph::build(parts.len(), &host_edges)?;

    // witness: one restricted copy of an H-decomposition per component,
    // chained into a tree, with the dominant part added to every bag
    let td_h = heuristic_tree_decomposition(emb.h);
    let mut bags: Vec<VertexSet> = Vec::new();
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    let mut prev_first: Option<usize> = None;
    for ids in &copy_slots {
        let offset = bags.len();
        for bag in &td_h.bags {
            let mut mapped: Vec<usize> = bag.iter().filter_map(|x| ids[x]).collect();
            if let Some(z) = z_id {
                mapped.push(z);
            }
            bags.push(VertexSet::new(mapped));
        }
        for (a, b) in td_h.tree.edges() {
            tree_edges.push((offset + a, offset + b));
        }
        if let Some(p) = prev_first {
            tree_edges.push((p, offset));
        }
        prev_first = Some(offset);
    }
    if bags.is_empty() {
        bags.push(match z_id {
            Some(z) => VertexSet::singleton(z),
            None => VertexSet::empty(),
        });
    }
    let witness_tree = Graph::build(bags.len(), &tree_edges)?;
    let witness = TreeDecomposition { tree: witness_tree, bags };

    let partition = HPartition { parts, host };
    let cert = verify_hpartition(g, &partition);
    if !cert.valid {
        return Err(Error::InvalidInput(format!(
            "transform produced an invalid partition: {:?}",
            cert.violations[0]
        )));
    }
    let check = validate_decomposition(&partition.host, &witness);
    if !check.ok {
        return Err(Error::InvalidInput(format!(
            "transform witness invalid: {:?}",
            check.violations[0]
        )));
    }
    Ok((partition, witness))
}
