//! Tree decompositions (heuristic and exact), the four-condition
//! normalization used by the treewidth separator, and exact tree-depth
//! with elimination-forest witnesses.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, VertexSet};
use crate::Error;

/// A tree of bags. `tree` is a graph on node ids `0..t` that must be a
/// tree; `bags[x]` is the bag of node `x`.
#[derive(Debug, Clone)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: Vec<VertexSet>,
}

impl TreeDecomposition {
    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Max bag size minus one.
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Restriction to an induced subgraph: every bag intersected with
    /// `keep`. Still a valid decomposition of the induced subgraph.
    pub fn restrict(&self, keep: &VertexSet) -> TreeDecomposition {
        TreeDecomposition {
            tree: self.tree.clone(),
            bags: self.bags.iter().map(|b| b.intersection(keep)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionViolation {
    NotATree,
    BagVertexOutOfRange { node: usize, vertex: usize },
    VertexMissing { vertex: usize },
    EdgeUncovered { u: usize, v: usize },
    TraceDisconnected { vertex: usize },
}

#[derive(Debug, Clone)]
pub struct DecompositionCheck {
    pub ok: bool,
    pub violations: Vec<DecompositionViolation>,
}

/// Checks both decomposition axioms; violations are data, not errors.
pub fn validate_decomposition(g: &Graph, td: &TreeDecomposition) -> DecompositionCheck {
    let mut violations = Vec::new();
    let t = td.node_count();
    if td.tree.vertex_count() != t || !td.tree.is_tree() {
        violations.push(DecompositionViolation::NotATree);
        return DecompositionCheck { ok: false, violations };
    }
    let n = g.vertex_count();
    for (x, bag) in td.bags.iter().enumerate() {
        for v in bag.iter() {
            if v >= n {
                violations.push(DecompositionViolation::BagVertexOutOfRange { node: x, vertex: v });
            }
        }
    }
    if !violations.is_empty() {
        return DecompositionCheck { ok: false, violations };
    }
    // coverage of vertices and edges
    let mut covered = vec![false; n];
    for bag in &td.bags {
        for v in bag.iter() {
            covered[v] = true;
        }
    }
    for v in 0..n {
        if !covered[v] {
            violations.push(DecompositionViolation::VertexMissing { vertex: v });
        }
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
            violations.push(DecompositionViolation::EdgeUncovered { u, v });
        }
    }
    // connected traces
    for v in 0..n {
        let trace: VertexSet = (0..t).filter(|&x| td.bags[x].contains(v)).collect();
        if trace.is_empty() {
            continue;
        }
        if td.tree.components_within(&trace).len() > 1 {
            violations.push(DecompositionViolation::TraceDisconnected { vertex: v });
        }
    }
    DecompositionCheck { ok: violations.is_empty(), violations }
}

/// Simulates an elimination order on `g`, adding fill edges, and returns
/// the decomposition whose bags are the closed elimination neighborhoods.
fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.vertex_count();
    debug_assert_eq!(order.len(), n);
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut bags: Vec<VertexSet> = Vec::with_capacity(n);
    let mut parent_choice: Vec<Option<usize>> = vec![None; n];
    for (i, &v) in order.iter().enumerate() {
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        // fill: the elimination neighborhood becomes a clique
        for (ai, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[ai + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            adj[a].remove(&v);
        }
        let mut bag = nbrs.clone();
        bag.push(v);
        bags.push(VertexSet::new(bag));
        // attach to the neighbor eliminated first after v
        parent_choice[i] = nbrs.iter().copied().min_by_key(|&u| position[u]).map(|u| position[u]);
    }
    let mut edges = Vec::new();
    for i in 0..n {
        match parent_choice[i] {
            Some(p) => edges.push((i, p)),
            // last vertex of its component: chain to the next node so the
            // decomposition tree stays connected
            None => {
                if i + 1 < n {
                    edges.push((i, i + 1));
                }
            }
        }
    }
    let tree = Graph::build(n.max(1), &edges).expect("elimination tree is well formed");
    let bags = if n == 0 { vec![VertexSet::empty()] } else { bags };
    TreeDecomposition { tree, bags }
}

fn row_bits(row: &[u64], out: &mut Vec<usize>) {
    out.clear();
    for (w, &word) in row.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            out.push(w * 64 + x.trailing_zeros() as usize);
            x &= x - 1;
        }
    }
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// Min-fill greedy elimination with exact incremental fill counts.
/// Deterministic: ties break on smallest id.
pub fn heuristic_tree_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.vertex_count();
    if n == 0 {
        return decomposition_from_order(g, &[]);
    }
    let words = n.div_ceil(64);
    let mut adj: Vec<Vec<u64>> = vec![vec![0u64; words]; n];
    for u in 0..n {
        for &v in g.neighbors(u) {
            adj[u][v / 64] |= 1 << (v % 64);
        }
    }
    let bit = |row: &[u64], v: usize| row[v / 64] >> (v % 64) & 1 == 1;
    // fill[v] = number of non-adjacent pairs in N(v)
    let mut fill = vec![0usize; n];
    for v in 0..n {
        let mut non_adjacent = 0;
        for &u in g.neighbors(v) {
            non_adjacent += g.degree(v) - 1 - and_count(&adj[v], &adj[u]);
        }
        fill[v] = non_adjacent / 2;
    }
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut order = Vec::with_capacity(n);
    let mut bags: Vec<VertexSet> = Vec::with_capacity(n);
    let mut elim_nbrs: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut list = Vec::new();
    let mut commons = Vec::new();
    let mut scratch = vec![0u64; words];
    for _ in 0..n {
        let mut best = (usize::MAX, usize::MAX);
        for v in 0..n {
            if alive[v] && fill[v] < best.0 {
                best = (fill[v], v);
            }
        }
        let v = best.1;
        order.push(v);
        row_bits(&adj[v], &mut list);
        // make N(v) a clique, updating fill counts as each edge lands
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let (a, b) = (list[i], list[j]);
                if bit(&adj[a], b) {
                    continue;
                }
                // the pair (a,b) stops being a fill pair of its common
                // neighbors; a and b gain pairs against the far sides
                for (w, s) in scratch.iter_mut().enumerate() {
                    *s = adj[a][w] & adj[b][w];
                }
                row_bits(&scratch, &mut commons);
                for &w in &commons {
                    if w != v {
                        fill[w] -= 1;
                    }
                }
                fill[a] += degree[a] - commons.len();
                fill[b] += degree[b] - commons.len();
                adj[a][b / 64] |= 1 << (b % 64);
                adj[b][a / 64] |= 1 << (a % 64);
                degree[a] += 1;
                degree[b] += 1;
            }
        }
        // detach v: each neighbor loses its pairs (v, u) with u outside
        // the new clique
        for &a in &list {
            let loss = degree[a] - 1 - and_count(&adj[a], &adj[v]);
            fill[a] -= loss;
            adj[a][v / 64] &= !(1 << (v % 64));
            degree[a] -= 1;
        }
        alive[v] = false;
        for w in adj[v].iter_mut() {
            *w = 0;
        }
        let mut bag = list.clone();
        bag.push(v);
        bags.push(VertexSet::new(bag));
        elim_nbrs.push(list.clone());
    }
    // attach each node to the neighbor eliminated first after it; chain
    // component roots so the tree stays connected
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (i, nbrs) in elim_nbrs.iter().enumerate() {
        match nbrs.iter().map(|&u| position[u]).min() {
            Some(p) => edges.push((i, p)),
            None => {
                if i + 1 < n {
                    edges.push((i, i + 1));
                }
            }
        }
    }
    let tree = Graph::build(n, &edges).expect("elimination tree is well formed");
    TreeDecomposition { tree, bags }
}

/// Exact treewidth by dynamic programming over elimination prefixes.
///
/// `q(v, S)` is the number of vertices outside `S ∪ {v}` reachable from
/// `v` through `S`; the optimal order is recovered by backtracking.
pub fn exact_treewidth(g: &Graph, limit: usize) -> Result<(usize, TreeDecomposition), Error> {
    let n = g.vertex_count();
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    if n > 26 {
        return Err(Error::TooLarge { n, limit: 26 });
    }
    if n == 0 {
        return Ok((0, decomposition_from_order(g, &[])));
    }
    let full: u32 = ((1u64 << n) - 1) as u32;
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << w))
        .collect();
    // q(v, s): neighbors-through-s of v, counted outside s
    let q = |v: usize, s: u32| -> usize {
        let inside = s | 1 << v;
        let mut reach: u32 = 1 << v;
        let mut frontier: u32 = 1 << v;
        loop {
            let mut expand = 0u32;
            let mut f = frontier & inside;
            while f != 0 {
                let w = f.trailing_zeros() as usize;
                f &= f - 1;
                expand |= nbr[w];
            }
            let new = expand & !reach;
            if new == 0 {
                break;
            }
            reach |= new;
            frontier = new;
        }
        (reach & !inside).count_ones() as usize
    };
    let size = 1usize << n;
    let mut opt = vec![u8::MAX; size];
    opt[0] = 0;
    for mask in 1u32..=full {
        let mut best = u8::MAX;
        let mut mm = mask;
        while mm != 0 {
            let v = mm.trailing_zeros() as usize;
            mm &= mm - 1;
            let rest = mask & !(1 << v);
            let cost = opt[rest as usize].max(q(v, rest).min(255) as u8);
            if cost < best {
                best = cost;
            }
        }
        opt[mask as usize] = best;
        if mask == full {
            break;
        }
    }
    let width = opt[full as usize] as usize;
    // backtrack an optimal order (last eliminated first), smallest id wins ties
    let mut order_rev = Vec::with_capacity(n);
    let mut mask = full;
    while mask != 0 {
        let mut chosen = None;
        let mut mm = mask;
        while mm != 0 {
            let v = mm.trailing_zeros() as usize;
            mm &= mm - 1;
            let rest = mask & !(1 << v);
            let cost = opt[rest as usize].max(q(v, rest).min(255) as u8);
            if cost as usize <= opt[mask as usize] as usize && chosen.is_none() {
                chosen = Some(v);
            }
        }
        let v = chosen.expect("dp is consistent");
        order_rev.push(v);
        mask &= !(1 << v);
    }
    order_rev.reverse();
    let td = decomposition_from_order(g, &order_rev);
    debug_assert_eq!(td.width(), width);
    Ok((width, td))
}

/// A tree decomposition satisfying the four normalization conditions:
/// all bags of size `k+1`, adjacent bags differing in exactly one vertex,
/// `|V(T)| = n - k`, and the component-spill bound.
#[derive(Debug, Clone)]
pub struct NormalizedDecomposition {
    pub td: TreeDecomposition,
    pub k: usize,
}

/// Rewrites a valid decomposition of width `k` into normalized form:
/// contract nested bags, pad every bag up to `k+1` from a neighbor, then
/// split edges whose bags differ in two or more vertices by inserting
/// intermediate nodes. The removed vertex at each split is the smallest
/// id of the difference.
pub fn normalize(g: &Graph, td: &TreeDecomposition) -> Result<NormalizedDecomposition, Error> {
    let check = validate_decomposition(g, td);
    if !check.ok {
        return Err(Error::InvalidDecomposition(format!(
            "{} violation(s) in input decomposition",
            check.violations.len()
        )));
    }
    if g.vertex_count() == 0 {
        return Err(Error::InvalidInput(String::from("cannot normalize over an empty graph")));
    }
    let k = td.width();
    // mutable tree: node -> (bag, neighbor set); dead nodes are None
    let mut bags: Vec<Option<VertexSet>> = td.bags.iter().cloned().map(Some).collect();
    let mut nb: Vec<BTreeSet<usize>> = (0..td.node_count())
        .map(|x| td.tree.neighbors(x).iter().copied().collect())
        .collect();

    // contract nested bags and pad undersized ones until every bag has
    // exactly k+1 vertices and no bag contains a neighbor's bag
    loop {
        let live: Vec<usize> = (0..bags.len()).filter(|&x| bags[x].is_some()).collect();
        let mut acted = false;
        'contract: for &x in &live {
            for &y in nb[x].clone().iter() {
                if y <= x || bags[y].is_none() {
                    continue;
                }
                let bx = bags[x].as_ref().unwrap();
                let by = bags[y].as_ref().unwrap();
                if bx.difference(by).is_empty() || by.difference(bx).is_empty() {
                    // contract y into x
                    let merged = bx.union(by);
                    bags[x] = Some(merged);
                    bags[y] = None;
                    let ys: Vec<usize> = nb[y].iter().copied().collect();
                    for z in ys {
                        nb[z].remove(&y);
                        if z != x {
                            nb[z].insert(x);
                            nb[x].insert(z);
                        }
                    }
                    nb[x].remove(&y);
                    nb[y].clear();
                    acted = true;
                    break 'contract;
                }
            }
        }
        if acted {
            continue;
        }
        for &x in &live {
            let len = bags[x].as_ref().unwrap().len();
            if len < k + 1 {
                let y = nb[x]
                    .iter()
                    .copied()
                    .find(|&y| !bags[y].as_ref().unwrap().difference(bags[x].as_ref().unwrap()).is_empty());
                match y {
                    Some(y) => {
                        let w = bags[y]
                            .as_ref()
                            .unwrap()
                            .difference(bags[x].as_ref().unwrap())
                            .min_vertex()
                            .unwrap();
                        bags[x].as_mut().unwrap().insert(w);
                        acted = true;
                        break;
                    }
                    None => {
                        // isolated node with a small bag: only possible if the
                        // whole tree is that node, which contradicts width k
                        return Err(Error::InvalidDecomposition(String::from(
                            "undersized bag with no growable neighbor",
                        )));
                    }
                }
            }
        }
        if !acted {
            break;
        }
    }

    // split edges whose bags differ by two or more
    loop {
        let live: Vec<usize> = (0..bags.len()).filter(|&x| bags[x].is_some()).collect();
        let mut split: Option<(usize, usize)> = None;
        'outer: for &x in &live {
            for &y in nb[x].iter() {
                if y > x && bags[x].as_ref().unwrap().difference(bags[y].as_ref().unwrap()).len() >= 2 {
                    split = Some((x, y));
                    break 'outer;
                }
            }
        }
        let Some((x, y)) = split else { break };
        let bx = bags[x].as_ref().unwrap().clone();
        let by = bags[y].as_ref().unwrap().clone();
        let v = bx.difference(&by).min_vertex().unwrap();
        let w = by.difference(&bx).min_vertex().unwrap();
        let mut bz = bx.clone();
        bz = bz.difference(&VertexSet::singleton(v));
        bz.insert(w);
        let z = bags.len();
        bags.push(Some(bz));
        nb.push(BTreeSet::new());
        nb[x].remove(&y);
        nb[y].remove(&x);
        nb[x].insert(z);
        nb[y].insert(z);
        nb[z].insert(x);
        nb[z].insert(y);
    }

    // compact node ids
    let live: Vec<usize> = (0..bags.len()).filter(|&x| bags[x].is_some()).collect();
    let mut new_id = BTreeMap::new();
    for (i, &x) in live.iter().enumerate() {
        new_id.insert(x, i);
    }
    let final_bags: Vec<VertexSet> = live.iter().map(|&x| bags[x].clone().unwrap()).collect();
    let mut edges = Vec::new();
    for &x in &live {
        for &y in nb[x].iter() {
            if x < y {
                edges.push((new_id[&x], new_id[&y]));
            }
        }
    }
    let tree = Graph::build(final_bags.len(), &edges).expect("rewrite keeps a tree");
    let out = NormalizedDecomposition { td: TreeDecomposition { tree, bags: final_bags }, k };
    if let Err(msg) = check_normal_conditions(g, &out) {
        return Err(Error::InvalidDecomposition(msg));
    }
    Ok(out)
}

/// Conditions (a) exact bag size, (b) one-vertex edge differences,
/// (c) node count `n - k`, plus re-validation against the graph.
pub fn check_normal_conditions(g: &Graph, nd: &NormalizedDecomposition) -> Result<(), String> {
    let td = &nd.td;
    let k = nd.k;
    let check = validate_decomposition(g, td);
    if !check.ok {
        return Err(format!("not a valid decomposition: {:?}", check.violations[0]));
    }
    for (x, bag) in td.bags.iter().enumerate() {
        if bag.len() != k + 1 {
            return Err(format!("bag {x} has size {} != k+1 = {}", bag.len(), k + 1));
        }
    }
    for (x, y) in td.tree.edges() {
        let d1 = td.bags[x].difference(&td.bags[y]).len();
        let d2 = td.bags[y].difference(&td.bags[x]).len();
        if d1 != 1 || d2 != 1 {
            return Err(format!("edge ({x},{y}) has differences {d1},{d2}"));
        }
    }
    if td.node_count() != g.vertex_count() - k {
        return Err(format!(
            "node count {} != n - k = {}",
            td.node_count(),
            g.vertex_count() - k
        ));
    }
    Ok(())
}

/// Condition (d) for one node set: every component `T'` of `tree - S`
/// spills at most `|V(T')|` vertices beyond the bags of `S`.
pub fn condition_d_holds(nd: &NormalizedDecomposition, s_nodes: &VertexSet) -> bool {
    if s_nodes.is_empty() {
        return true;
    }
    let td = &nd.td;
    let mut s_bag = VertexSet::empty();
    for x in s_nodes.iter() {
        s_bag = s_bag.union(&td.bags[x]);
    }
    let rest = s_nodes.complement(td.node_count());
    for comp in td.tree.components_within(&rest) {
        let mut union = VertexSet::empty();
        for x in comp.iter() {
            union = union.union(&td.bags[x]);
        }
        if union.difference(&s_bag).len() > comp.len() {
            return false;
        }
    }
    true
}

/// Rooted forest given by per-vertex parent pointers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedForest {
    pub parent: Vec<Option<usize>>,
}

impl RootedForest {
    pub fn new(parent: Vec<Option<usize>>) -> Result<RootedForest, Error> {
        let f = RootedForest { parent };
        f.depths()?;
        Ok(f)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn roots(&self) -> VertexSet {
        (0..self.parent.len()).filter(|&v| self.parent[v].is_none()).collect()
    }

    /// Depth of every vertex (roots at 0); errors on cycles or bad ids.
    pub fn depths(&self) -> Result<Vec<usize>, Error> {
        let n = self.parent.len();
        let mut depth = vec![usize::MAX; n];
        for v in 0..n {
            if depth[v] != usize::MAX {
                continue;
            }
            let mut chain = Vec::new();
            let mut cur = v;
            loop {
                chain.push(cur);
                if chain.len() > n {
                    return Err(Error::InvalidInput(String::from("cycle in parent structure")));
                }
                match self.parent[cur] {
                    None => {
                        depth[cur] = 0;
                        break;
                    }
                    Some(p) => {
                        if p >= n {
                            return Err(Error::VertexOutOfRange { vertex: p, n });
                        }
                        if depth[p] != usize::MAX {
                            depth[cur] = depth[p] + 1;
                            break;
                        }
                        if p == v {
                            return Err(Error::InvalidInput(String::from("cycle in parent structure")));
                        }
                        cur = p;
                    }
                }
            }
            for &u in chain.iter().rev() {
                if depth[u] == usize::MAX {
                    depth[u] = depth[self.parent[u].unwrap()] + 1;
                }
            }
        }
        Ok(depth)
    }

    /// Max number of vertices on a root-leaf path.
    pub fn vertex_height(&self) -> usize {
        match self.depths() {
            Ok(d) => d.iter().map(|&x| x + 1).max().unwrap_or(0),
            Err(_) => 0,
        }
    }

    /// The forest plus every ancestor-descendant edge.
    pub fn closure(&self) -> Graph {
        let n = self.parent.len();
        let mut edges = Vec::new();
        for v in 0..n {
            let mut a = self.parent[v];
            while let Some(p) = a {
                edges.push((v, p));
                a = self.parent[p];
            }
        }
        Graph::build(n, &edges).expect("closure edges are in range")
    }

    /// True iff `a` is a (weak) ancestor of `b`.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut cur = Some(b);
        while let Some(x) = cur {
            if x == a {
                return true;
            }
            cur = self.parent[x];
        }
        false
    }
}

/// True iff every edge of `g` joins an ancestor-descendant pair of `f`.
/// The forest must cover every vertex of `g`.
pub fn verify_closure_embedding(g: &Graph, f: &RootedForest) -> Result<bool, Error> {
    if f.parent.len() < g.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "forest covers {} vertices, graph has {}",
            f.parent.len(),
            g.vertex_count()
        )));
    }
    let depth = f.depths()?;
    for (u, v) in g.edges() {
        let (hi, mut lo) = if depth[u] <= depth[v] { (u, v) } else { (v, u) };
        while depth[lo] > depth[hi] {
            lo = f.parent[lo].expect("depth positive implies a parent");
        }
        if lo != hi {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact tree-depth with a witness forest, by memoized vertex-removal
/// recursion over connected vertex subsets.
pub fn exact_tree_depth(g: &Graph, limit: usize) -> Result<(usize, RootedForest), Error> {
    let n = g.vertex_count();
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    if n == 0 {
        return Ok((0, RootedForest { parent: Vec::new() }));
    }
    if n > 31 {
        return Err(Error::TooLarge { n, limit: 31 });
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << w))
        .collect();
    let components = |mask: u32| -> Vec<u32> {
        let mut out = Vec::new();
        let mut left = mask;
        while left != 0 {
            let start = left.trailing_zeros();
            let mut comp = 1u32 << start;
            loop {
                let mut grow = comp;
                let mut f = comp;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    grow |= nbr[v] & mask;
                }
                if grow == comp {
                    break;
                }
                comp = grow;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    };
    let mut memo: BTreeMap<u32, usize> = BTreeMap::new();
    fn td_of(
        mask: u32,
        memo: &mut BTreeMap<u32, usize>,
        components: &dyn Fn(u32) -> Vec<u32>,
    ) -> usize {
        if mask == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let comps = components(mask);
        let value = if comps.len() > 1 {
            comps.iter().map(|&c| td_of(c, memo, components)).max().unwrap()
        } else if mask.count_ones() == 1 {
            1
        } else {
            let mut best = usize::MAX;
            let mut mm = mask;
            while mm != 0 {
                let v = mm.trailing_zeros() as usize;
                mm &= mm - 1;
                let rest = mask & !(1 << v);
                let sub = td_of(rest, memo, components);
                if 1 + sub < best {
                    best = 1 + sub;
                }
            }
            best
        };
        memo.insert(mask, value);
        value
    }
    let full: u32 = ((1u64 << n) - 1) as u32;
    let comp_fn = |m: u32| components(m);
    let depth = td_of(full, &mut memo, &comp_fn);

    // witness reconstruction: pick the smallest optimal root per component
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut stack: Vec<(u32, Option<usize>)> = vec![(full, None)];
    while let Some((mask, up)) = stack.pop() {
        if mask == 0 {
            continue;
        }
        let comps = comp_fn(mask);
        if comps.len() > 1 {
            for c in comps {
                stack.push((c, up));
            }
            continue;
        }
        if mask.count_ones() == 1 {
            let v = mask.trailing_zeros() as usize;
            parent[v] = up;
            continue;
        }
        let target = td_of(mask, &mut memo, &comp_fn);
        let mut chosen = None;
        let mut mm = mask;
        while mm != 0 {
            let v = mm.trailing_zeros() as usize;
            mm &= mm - 1;
            let rest = mask & !(1 << v);
            if 1 + td_of(rest, &mut memo, &comp_fn) == target {
                chosen = Some(v);
                break;
            }
        }
        let v = chosen.expect("recursion minimum is attained");
        parent[v] = up;
        stack.push((mask & !(1 << v), Some(v)));
    }
    let forest = RootedForest { parent };
    debug_assert_eq!(forest.vertex_height(), depth);
    Ok((depth, forest))
}
