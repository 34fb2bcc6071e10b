//! Balanced separators from tree decompositions, recursive fragmentation
//! into bounded components, and the tree / treewidth separator lemmas
//! with their exact feasibility preconditions.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::decomposition::{
    check_normal_conditions, heuristic_tree_decomposition, validate_decomposition,
    NormalizedDecomposition, TreeDecomposition,
};
use crate::graph::{Graph, VertexSet};
use crate::math;
use crate::Error;

/// The hereditary-class separator promise `sep(G') <= c * n'^(1-eps)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassGuarantee {
    pub c: f64,
    pub epsilon: f64,
}

impl ClassGuarantee {
    pub fn new(c: f64, epsilon: f64) -> Result<ClassGuarantee, Error> {
        if !(c > 0.0) {
            return Err(Error::InvalidInput(String::from("guarantee constant c must be positive")));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidInput(String::from("epsilon must lie in (0,1)")));
        }
        Ok(ClassGuarantee { c, epsilon })
    }

    /// `c * 2^eps / (2^eps - 1)`, the constant of the fragmentation bound.
    pub fn fragmentation_coefficient(&self) -> f64 {
        let t = math::powf(2.0, self.epsilon);
        self.c * t / (t - 1.0)
    }
}

/// A separator together with its recomputed quality measures. Component
/// sizes are always recomputed from the graph, never trusted from the
/// algorithm that produced `s`.
#[derive(Debug, Clone)]
pub struct SeparatorReport {
    pub s: VertexSet,
    pub max_component: usize,
    pub target_p: f64,
    pub target_q: f64,
    pub meets_contract: bool,
}

impl SeparatorReport {
    pub fn measure(g: &Graph, s: VertexSet, target_p: f64, target_q: f64) -> SeparatorReport {
        let max_component = g.max_component_size(&s);
        let meets_contract =
            math::size_le(s.len(), target_p) && math::size_le(max_component, target_q);
        SeparatorReport { s, max_component, target_p, target_q, meets_contract }
    }
}

/// Provides a balanced separator for any (connected) induced subgraph.
pub trait SeparatorEngine {
    fn separate(&self, g: &Graph) -> Result<VertexSet, Error>;
}

/// Returns the first bag (by node id) whose removal leaves components of
/// at most `ceil(n/2)` vertices. Such a bag always exists, so the scan is
/// the simplest certified method; `|S| <= width + 1` for free.
pub fn balanced_separator(g: &Graph, td: &TreeDecomposition) -> Result<SeparatorReport, Error> {
    let check = validate_decomposition(g, td);
    if !check.ok {
        return Err(Error::InvalidDecomposition(format!(
            "{} violation(s)",
            check.violations.len()
        )));
    }
    let n = g.vertex_count();
    let half = n.div_ceil(2);
    for bag in &td.bags {
        if g.max_component_size(bag) <= half {
            return Ok(SeparatorReport::measure(
                g,
                bag.clone(),
                (td.width() + 1) as f64,
                half as f64,
            ));
        }
    }
    Err(Error::InvalidDecomposition(String::from(
        "no balanced bag found; decomposition inconsistent",
    )))
}

/// Balanced bag by tree descent instead of a full scan: start anywhere,
/// step toward the oversized component until the bag is balanced. Same
/// contract as `balanced_separator`, much cheaper on large instances.
fn balanced_bag_descent(g: &Graph, td: &TreeDecomposition) -> Result<VertexSet, Error> {
    let n = g.vertex_count();
    let half = n.div_ceil(2);
    let t = td.node_count();
    // one containing node per vertex
    let mut home = vec![usize::MAX; n];
    for (x, bag) in td.bags.iter().enumerate() {
        for v in bag.iter() {
            if home[v] == usize::MAX {
                home[v] = x;
            }
        }
    }
    let mut x = 0usize;
    let mut visited = vec![false; t];
    loop {
        if visited[x] {
            // cannot happen for a valid decomposition; fall back to the scan
            return balanced_separator(g, td).map(|r| r.s);
        }
        visited[x] = true;
        let bag = &td.bags[x];
        let comps = g.components_within(&bag.complement(n));
        let big = comps.iter().find(|c| c.len() > half);
        let Some(big) = big else {
            return Ok(bag.clone());
        };
        // the oversized component's traces all sit in one subtree of x;
        // step to the neighbor of x on the path toward them
        let v = big.min_vertex().expect("oversized component is nonempty");
        let target = home[v];
        let mut parent = vec![usize::MAX; t];
        let mut queue = alloc::collections::VecDeque::new();
        parent[x] = x;
        queue.push_back(x);
        while let Some(u) = queue.pop_front() {
            if u == target {
                break;
            }
            for &w in td.tree.neighbors(u) {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        let mut step = target;
        while parent[step] != x {
            step = parent[step];
        }
        x = step;
    }
}

/// Balanced-separator engine backed by the min-fill heuristic.
pub struct TreewidthEngine;

impl SeparatorEngine for TreewidthEngine {
    fn separate(&self, g: &Graph) -> Result<VertexSet, Error> {
        let td = heuristic_tree_decomposition(g);
        balanced_bag_descent(g, &td)
    }
}

/// Centroid engine for trees: a single vertex whose removal halves the
/// tree.
pub struct CentroidEngine;

impl SeparatorEngine for CentroidEngine {
    fn separate(&self, g: &Graph) -> Result<VertexSet, Error> {
        if !g.is_tree() {
            return Err(Error::NotATree);
        }
        Ok(VertexSet::singleton(tree_centroid(g, &VertexSet::full(g.vertex_count()))))
    }
}

/// Repeatedly separates the largest oversized component until every
/// component of `G - S` has at most `target` vertices. The engine is
/// invoked on induced subgraphs; its output is lifted back to original
/// coordinates.
pub fn fragment(
    g: &Graph,
    engine: &dyn SeparatorEngine,
    target: usize,
) -> Result<VertexSet, Error> {
    if target == 0 {
        return Err(Error::InvalidInput(String::from("fragmentation target must be >= 1")));
    }
    let n = g.vertex_count();
    let mut s = VertexSet::empty();
    loop {
        let comps = g.components_within(&s.complement(n));
        // largest first; ties by smallest member
        let next = comps
            .iter()
            .filter(|c| c.len() > target)
            .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.min_vertex().cmp(&a.min_vertex())));
        let Some(big) = next else {
            return Ok(s);
        };
        let view = g.induced(big)?;
        let local = engine.separate(&view.graph)?;
        if local.is_empty() {
            return Err(Error::InvalidInput(String::from(
                "engine returned an empty separator for an oversized component",
            )));
        }
        s = s.union(&view.lift(&local));
    }
}

/// Centroid of the subtree induced by `alive`: minimizes the largest
/// component after removal, ties to the smallest id.
fn tree_centroid(t: &Graph, alive: &VertexSet) -> usize {
    let n_alive = alive.len();
    debug_assert!(n_alive > 0);
    let root = alive.min_vertex().unwrap();
    let (order, parent, size) = subtree_sizes(t, alive, root);
    let mut best = (usize::MAX, usize::MAX);
    for &v in &order {
        let mut worst = n_alive - size[v];
        for &w in t.neighbors(v) {
            if alive.contains(w) && parent[w] == v {
                worst = worst.max(size[w]);
            }
        }
        if (worst, v) < best {
            best = (worst, v);
        }
    }
    best.1
}

/// BFS order, parent pointers and subtree sizes of the alive subtree.
fn subtree_sizes(
    t: &Graph,
    alive: &VertexSet,
    root: usize,
) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let n = t.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(alive.len());
    let mut queue = alloc::collections::VecDeque::new();
    parent[root] = root;
    queue.push_back(root);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in t.neighbors(u) {
            if alive.contains(w) && parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut size = vec![0usize; n];
    for &u in order.iter().rev() {
        size[u] += 1;
        if parent[u] != u {
            size[parent[u]] += size[u];
        }
    }
    (order, parent, size)
}

/// The peeling core shared by both separator lemmas: peel the deepest
/// subtree exceeding `q_cap` while at least two removals remain, then
/// finish with the root rule or the centroid. The caller is responsible
/// for feasibility; the postcondition is re-verified here.
fn tree_peel(t: &Graph, budget: usize, q_cap: usize) -> Result<VertexSet, Error> {
    let n = t.vertex_count();
    let root = 0usize;
    let mut alive = VertexSet::full(n);
    let mut s = VertexSet::empty();
    let mut left = budget;
    while left >= 2 {
        let (order, parent, size) = subtree_sizes(t, &alive, root);
        let dist = {
            let mut d = vec![0usize; n];
            for &u in &order {
                if u != root {
                    d[u] = d[parent[u]] + 1;
                }
            }
            d
        };
        let f = |v: usize| -> usize {
            t.neighbors(v)
                .iter()
                .filter(|&&w| alive.contains(w) && parent[w] == v)
                .map(|&w| size[w])
                .max()
                .unwrap_or(0)
        };
        if f(root) <= q_cap {
            s.insert(root);
            return verify_tree_separator(t, s, budget, q_cap);
        }
        // deepest violating vertex, ties to smallest id
        let mut pick: Option<usize> = None;
        for &v in &order {
            if f(v) > q_cap {
                let better = match pick {
                    None => true,
                    Some(u) => dist[v] > dist[u] || (dist[v] == dist[u] && v < u),
                };
                if better {
                    pick = Some(v);
                }
            }
        }
        let v = pick.expect("f(root) > q implies a violator");
        let w = t
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| alive.contains(w) && parent[w] == v && size[w] > q_cap)
            .min()
            .expect("the violating child exists");
        // drop the whole subtree of w; its interior splits into parts of
        // size at most q_cap because w lies below the deepest violator
        let mut stack = vec![w];
        let mut drop = Vec::new();
        while let Some(u) = stack.pop() {
            drop.push(u);
            for &c in t.neighbors(u) {
                if alive.contains(c) && parent[c] == u {
                    stack.push(c);
                }
            }
        }
        alive = alive.difference(&VertexSet::new(drop));
        s.insert(w);
        left -= 1;
    }
    if left == 1 && !alive.is_empty() {
        s.insert(tree_centroid(t, &alive));
    }
    verify_tree_separator(t, s, budget, q_cap)
}

fn verify_tree_separator(
    t: &Graph,
    s: VertexSet,
    budget: usize,
    q_cap: usize,
) -> Result<VertexSet, Error> {
    if s.len() > budget {
        return Err(Error::InfeasibleBound(format!(
            "separator uses {} vertices, budget is {budget}",
            s.len()
        )));
    }
    let worst = t.max_component_size(&s);
    if worst > q_cap {
        return Err(Error::InfeasibleBound(format!(
            "component of size {worst} exceeds cap {q_cap}"
        )));
    }
    Ok(s)
}

/// Integer tree separator: at most `p` vertices whose removal leaves
/// components of at most `q` vertices, feasible whenever
/// `n <= pq + p + q - 1`.
pub fn tree_separator(t: &Graph, p: usize, q: usize) -> Result<VertexSet, Error> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if q == 0 {
        return Err(Error::InvalidInput(String::from("q must be >= 1")));
    }
    let n = t.vertex_count() as u128;
    let (p_, q_) = (p as u128, q as u128);
    if n > p_ * q_ + p_ + q_ - 1 {
        return Err(Error::InfeasibleBound(format!(
            "n = {n} exceeds pq + p + q - 1 = {}",
            p_ * q_ + p_ + q_ - 1
        )));
    }
    tree_peel(t, p, q)
}

/// Real-valued variant: feasible whenever `n <= q(p+1)`. Component sizes
/// are integers, so the cap acts as `floor(q)`.
pub fn tree_separator_real(t: &Graph, p: usize, q: f64) -> Result<VertexSet, Error> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if !(q > 0.0) {
        return Err(Error::InvalidInput(String::from("q must be positive")));
    }
    if !math::size_le(t.vertex_count(), q * (p as f64 + 1.0)) {
        return Err(Error::InfeasibleBound(format!(
            "n = {} exceeds q(p+1) = {}",
            t.vertex_count(),
            q * (p as f64 + 1.0)
        )));
    }
    tree_peel(t, p, math::floor_cap(q))
}

/// Union of whole bags over a tree separator of the decomposition tree.
/// `p_prime` bags may be used; every component of `G - S` has at most
/// `q_cap` vertices by the normalization spill bound.
pub(crate) fn separator_from_bags(
    g: &Graph,
    nd: &NormalizedDecomposition,
    p_prime: usize,
    q_cap: usize,
) -> Result<VertexSet, Error> {
    let s0 = tree_peel(&nd.td.tree, p_prime, q_cap)?;
    let mut s = VertexSet::empty();
    for x in s0.iter() {
        s = s.union(&nd.td.bags[x]);
    }
    let worst = g.max_component_size(&s);
    if worst > q_cap {
        return Err(Error::InfeasibleBound(format!(
            "component of size {worst} exceeds cap {q_cap} after bag expansion"
        )));
    }
    Ok(s)
}

fn require_normalized(g: &Graph, nd: &NormalizedDecomposition) -> Result<(), Error> {
    check_normal_conditions(g, nd).map_err(Error::InvalidDecomposition)
}

/// Integer treewidth separator: `p` vertices, components of at most `q`,
/// feasible whenever `n <= floor(p/(k+1))(q+1) + q + k - 1` and
/// `p >= k+1`.
pub fn treewidth_separator(
    g: &Graph,
    nd: &NormalizedDecomposition,
    p: usize,
    q: usize,
) -> Result<VertexSet, Error> {
    require_normalized(g, nd)?;
    let k = nd.k;
    if p < k + 1 {
        return Err(Error::InfeasibleBound(format!("p = {p} must be at least k+1 = {}", k + 1)));
    }
    if q == 0 {
        return Err(Error::InvalidInput(String::from("q must be >= 1")));
    }
    let p_prime = p / (k + 1);
    let bound = (p_prime as u128) * (q as u128 + 1) + q as u128 + k as u128 - 1;
    if g.vertex_count() as u128 > bound {
        return Err(Error::InfeasibleBound(format!(
            "n = {} exceeds floor(p/(k+1))(q+1) + q + k - 1 = {bound}",
            g.vertex_count()
        )));
    }
    let s = separator_from_bags(g, nd, p_prime, q)?;
    debug_assert!(s.len() <= p);
    Ok(s)
}

/// Real-valued treewidth separator: feasible whenever `n(k+1) <= pq` and
/// `p >= k+1`.
pub fn treewidth_separator_real(
    g: &Graph,
    nd: &NormalizedDecomposition,
    p: f64,
    q: f64,
) -> Result<VertexSet, Error> {
    require_normalized(g, nd)?;
    let k = nd.k;
    if !(p >= (k + 1) as f64) {
        return Err(Error::InfeasibleBound(format!("p = {p} must be at least k+1 = {}", k + 1)));
    }
    if !(q > 0.0) {
        return Err(Error::InvalidInput(String::from("q must be positive")));
    }
    let need = (g.vertex_count() * (k + 1)) as f64;
    if need > p * q {
        return Err(Error::InfeasibleBound(format!(
            "n(k+1) = {need} exceeds pq = {}",
            p * q
        )));
    }
    let p_prime = math::floor_cap(p / (k + 1) as f64);
    let s = separator_from_bags(g, nd, p_prime, math::floor_cap(q))?;
    if !math::size_le(s.len(), p) {
        return Err(Error::InfeasibleBound(format!(
            "separator size {} exceeds p = {p}",
            s.len()
        )));
    }
    Ok(s)
}

/// The path-power block inequality `kn <= pq + k(p+q)`: every valid
/// `p`-vertex separator of `P_n^k` with components of at most `q`
/// vertices satisfies it, so its failure certifies infeasibility.
pub fn path_power_block_inequality(n: usize, k: usize, p: usize, q: usize) -> bool {
    let (n, k, p, q) = (n as u128, k as u128, p as u128, q as u128);
    k * n <= p * q + k * (p + q)
}

/// Checks `s` against `P_n^k` and evaluates the block inequality with
/// `p = |s|`. Errors if `s` is not a separator with components `<= q`.
pub fn path_power_tightness_check(
    n: usize,
    k: usize,
    q: usize,
    s: &VertexSet,
) -> Result<bool, Error> {
    if k == 0 {
        return Err(Error::InvalidInput(String::from("path power requires k >= 1")));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..=(i + k).min(n.saturating_sub(1)) {
            edges.push((i, j));
        }
    }
    let g = Graph::build(n, &edges)?;
    if !s.valid_for(n) {
        return Err(Error::VertexOutOfRange {
            vertex: s.as_slice().last().copied().unwrap_or(0),
            n,
        });
    }
    let worst = g.max_component_size(s);
    if worst > q {
        return Err(Error::InvalidInput(format!(
            "S leaves a component of {worst} > q = {q} vertices"
        )));
    }
    Ok(path_power_block_inequality(n, k, s.len(), q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::build(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    fn path_decomposition(n: usize) -> TreeDecomposition {
        let bags: Vec<VertexSet> = (0..n - 1).map(|i| VertexSet::new(vec![i, i + 1])).collect();
        let tree = Graph::build(n - 1, &(0..n - 2).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
        TreeDecomposition { tree, bags }
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Graph::build(n, &e).unwrap()
    }

    #[test]
    fn balanced_separator_is_first_balanced_bag() {
        let g = path(5);
        let rep = balanced_separator(&g, &path_decomposition(5)).unwrap();
        // bag {0,1} already balances P_5: the rest is a 3-path, 3 <= ceil(5/2)
        assert_eq!(rep.s, VertexSet::new(vec![0, 1]));
        assert!(rep.meets_contract);
        assert!(rep.max_component <= 3);
    }

    #[test]
    fn balanced_separator_whole_bag_for_k4() {
        let g = complete(4);
        let td = TreeDecomposition {
            tree: Graph::build(1, &[]).unwrap(),
            bags: vec![VertexSet::full(4)],
        };
        let rep = balanced_separator(&g, &td).unwrap();
        assert_eq!(rep.s, VertexSet::full(4));
        assert_eq!(rep.max_component, 0);
        assert!(rep.meets_contract);
    }

    #[test]
    fn fragment_path_with_centroid_engine() {
        let g = path(16);
        let s = fragment(&g, &CentroidEngine, 4).unwrap();
        assert!(s.len() <= 4);
        assert!(g.max_component_size(&s) <= 4);
    }

    #[test]
    fn fragment_trivial_when_target_exceeds_n() {
        let g = path(7);
        assert_eq!(fragment(&g, &CentroidEngine, 7).unwrap(), VertexSet::empty());
    }

    #[test]
    fn fragment_is_deterministic() {
        let g = path(16);
        let s1 = fragment(&g, &CentroidEngine, 4).unwrap();
        let s2 = fragment(&g, &CentroidEngine, 4).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn tree_separator_star() {
        let g = Graph::build(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let s = tree_separator(&g, 1, 3).unwrap();
        assert_eq!(s, VertexSet::singleton(0));
    }

    #[test]
    fn tree_separator_path_ten() {
        let s = tree_separator(&path(10), 2, 3).unwrap();
        assert!(s.len() <= 2);
        assert!(path(10).max_component_size(&s) <= 3);
    }

    #[test]
    fn tree_separator_rejects_infeasible() {
        // P_10 with p = 1, q = 3: 10 > 1*3 + 1 + 3 - 1 = 6
        assert!(matches!(
            tree_separator(&path(10), 1, 3),
            Err(Error::InfeasibleBound(_))
        ));
    }

    #[test]
    fn tree_separator_real_feasible_and_not() {
        // 11 <= 3.9 * 3, and components are capped at floor(3.9) = 3
        let s = tree_separator_real(&path(11), 2, 3.9).unwrap();
        assert!(s.len() <= 2);
        assert!(path(11).max_component_size(&s) <= 3);
        // 12 > 3.9 * 3 = 11.7: the bound is genuinely infeasible for P_12
        assert!(matches!(
            tree_separator_real(&path(12), 2, 3.9),
            Err(Error::InfeasibleBound(_))
        ));
    }

    #[test]
    fn tree_separator_rejects_non_tree() {
        let g = complete(4);
        assert!(matches!(tree_separator(&g, 2, 2), Err(Error::NotATree)));
    }

    fn normalized_path(n: usize) -> NormalizedDecomposition {
        NormalizedDecomposition { td: path_decomposition(n), k: 1 }
    }

    #[test]
    fn treewidth_separator_path_nine() {
        let g = path(9);
        let s = treewidth_separator(&g, &normalized_path(9), 2, 4).unwrap();
        assert!(s.len() <= 2);
        assert!(g.max_component_size(&s) <= 4);
    }

    #[test]
    fn treewidth_separator_k4_takes_the_bag() {
        let g = complete(4);
        let nd = NormalizedDecomposition {
            td: TreeDecomposition {
                tree: Graph::build(1, &[]).unwrap(),
                bags: vec![VertexSet::full(4)],
            },
            k: 3,
        };
        let s = treewidth_separator_real(&g, &nd, 4.0, 4.0).unwrap();
        assert_eq!(s, VertexSet::full(4));
    }

    #[test]
    fn treewidth_separator_path_power_real_mode() {
        // P_8^2: width-2 bags {i, i+1, i+2}; n(k+1) = 24 = 3 * 8
        let mut edges = Vec::new();
        for i in 0..8 {
            for j in i + 1..=(i + 2).min(7) {
                edges.push((i, j));
            }
        }
        let g = Graph::build(8, &edges).unwrap();
        let bags: Vec<VertexSet> = (0..6).map(|i| VertexSet::new(vec![i, i + 1, i + 2])).collect();
        let tree = Graph::build(6, &(0..5).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
        let nd = NormalizedDecomposition { td: TreeDecomposition { tree, bags }, k: 2 };
        let s = treewidth_separator_real(&g, &nd, 3.0, 8.0).unwrap();
        assert!(s.len() <= 3);
        assert!(g.max_component_size(&s) <= 8);
    }

    #[test]
    fn block_inequality_matches_examples() {
        // size-4 separators with q = 3 cannot exist on P_20
        assert!(!path_power_block_inequality(20, 1, 4, 3));
        // the explicit size-4, q = 4 separator is consistent
        let s = VertexSet::new(vec![3, 8, 13, 18]);
        assert!(path_power_tightness_check(20, 1, 4, &s).unwrap());
        // q >= n is trivially consistent
        assert!(path_power_tightness_check(6, 2, 6, &VertexSet::empty()).unwrap());
    }

    #[test]
    fn tightness_check_rejects_bad_separator() {
        let s = VertexSet::singleton(0);
        assert!(path_power_tightness_check(20, 1, 3, &s).is_err());
    }
}
