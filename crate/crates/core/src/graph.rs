//! Simple undirected graphs with dense integer vertex ids, plus the
//! traversal and induced-subgraph machinery every other module builds on.
//!
//! Everything is immutable after construction and deterministic:
//! adjacency lists are sorted, components are reported by smallest member.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::Error;

/// A sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct VertexSet {
    ids: Vec<usize>,
}

impl VertexSet {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet { ids }
    }

    pub fn empty() -> Self {
        VertexSet { ids: Vec::new() }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet { ids: vec![v] }
    }

    /// Every id in `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet { ids: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.ids.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.ids
    }

    pub fn min_vertex(&self) -> Option<usize> {
        self.ids.first().copied()
    }

    pub fn insert(&mut self, v: usize) {
        if let Err(pos) = self.ids.binary_search(&v) {
            self.ids.insert(pos, v);
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut ids = Vec::with_capacity(self.len() + other.len());
        ids.extend_from_slice(&self.ids);
        ids.extend_from_slice(&other.ids);
        VertexSet::new(ids)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            ids: self.ids.iter().copied().filter(|&v| !other.contains(v)).collect(),
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            ids: self.ids.iter().copied().filter(|&v| other.contains(v)).collect(),
        }
    }

    /// Ids in `0..n` that are not in this set.
    pub fn complement(&self, n: usize) -> VertexSet {
        VertexSet {
            ids: (0..n).filter(|&v| !self.contains(v)).collect(),
        }
    }

    /// All ids valid for a graph on `n` vertices?
    pub fn valid_for(&self, n: usize) -> bool {
        self.ids.last().map(|&v| v < n).unwrap_or(true)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// A simple undirected graph. Vertices are `0..n`; adjacency lists are
/// sorted and symmetric; no self-loops, no multi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs and reversed
    /// duplicates are deduplicated; self-loops and out-of-range ids are
    /// rejected.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph, Error> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { n, adj, m: m / 2 })
    }

    pub fn empty(n: usize) -> Graph {
        Graph { n, adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&VertexSet::full(self.n))
    }

    /// Connected components of the subgraph induced by `keep`.
    ///
    /// This is the workhorse behind every `G - S` in the crate: the
    /// components come back in original-graph coordinates.
    pub fn components_within(&self, keep: &VertexSet) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut inside = vec![false; self.n];
        for v in keep.iter() {
            inside[v] = true;
        }
        let mut comps = Vec::new();
        for start in keep.iter() {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::new();
            seen[start] = true;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if inside[w] && !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(VertexSet { ids: comp });
        }
        comps
    }

    /// Size of the largest component of `G - removed`.
    pub fn max_component_size(&self, removed: &VertexSet) -> usize {
        self.components_within(&removed.complement(self.n))
            .iter()
            .map(|c| c.len())
            .max()
            .unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m == self.n - 1 && self.is_connected()
    }

    /// Vertices outside `s` with a neighbor inside `s`.
    pub fn open_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = Vec::new();
        let mut marked = vec![false; self.n];
        for v in s.iter() {
            for &w in &self.adj[v] {
                if !marked[w] && !s.contains(w) {
                    marked[w] = true;
                    out.push(w);
                }
            }
        }
        VertexSet::new(out)
    }

    /// BFS layering from `root`. Errors if some vertex is unreachable,
    /// because callers rely on the layering covering the whole graph.
    pub fn bfs_layers(&self, root: usize) -> Result<Layering, Error> {
        if root >= self.n {
            return Err(Error::VertexOutOfRange { vertex: root, n: self.n });
        }
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        let mut reached = 0;
        let mut ecc = 0;
        while let Some(u) = queue.pop_front() {
            reached += 1;
            ecc = dist[u];
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        if reached != self.n {
            return Err(Error::Disconnected);
        }
        let mut layers = vec![Vec::new(); ecc + 1];
        for v in 0..self.n {
            layers[dist[v]].push(v);
        }
        Ok(Layering {
            layers: layers.into_iter().map(VertexSet::new).collect(),
            eccentricity: ecc,
            parent,
            root,
        })
    }

    /// Eccentricity of `v` within its component.
    pub fn eccentricity(&self, v: usize) -> usize {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[v] = 0;
        queue.push_back(v);
        let mut ecc = 0;
        while let Some(u) = queue.pop_front() {
            ecc = dist[u];
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        ecc
    }

    /// Distances from `v` (usize::MAX for unreachable vertices).
    pub fn distances(&self, v: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[v] = 0;
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Induced subgraph on `keep`, with id maps back to this graph.
    pub fn induced(&self, keep: &VertexSet) -> Result<SubgraphView, Error> {
        if !keep.valid_for(self.n) {
            return Err(Error::VertexOutOfRange {
                vertex: keep.as_slice().last().copied().unwrap_or(0),
                n: self.n,
            });
        }
        let to_parent: Vec<usize> = keep.iter().collect();
        let mut to_local = vec![usize::MAX; self.n];
        for (local, &orig) in to_parent.iter().enumerate() {
            to_local[orig] = local;
        }
        let mut adj = vec![Vec::new(); to_parent.len()];
        let mut m = 0;
        for (local, &orig) in to_parent.iter().enumerate() {
            for &w in &self.adj[orig] {
                if to_local[w] != usize::MAX {
                    adj[local].push(to_local[w]);
                }
            }
            adj[local].sort_unstable();
            m += adj[local].len();
        }
        Ok(SubgraphView {
            graph: Graph { n: to_parent.len(), adj, m: m / 2 },
            to_parent,
            to_local,
        })
    }
}

/// BFS layering: `layers[i]` holds the vertices at distance exactly `i`
/// from the root; `parent` is the BFS tree.
#[derive(Debug, Clone)]
pub struct Layering {
    pub layers: Vec<VertexSet>,
    pub eccentricity: usize,
    pub parent: Vec<Option<usize>>,
    pub root: usize,
}

/// An induced subgraph together with the id maps connecting it to its
/// parent, so separator sets can always be reported in original
/// coordinates.
#[derive(Debug, Clone)]
pub struct SubgraphView {
    pub graph: Graph,
    to_parent: Vec<usize>,
    to_local: Vec<usize>,
}

impl SubgraphView {
    pub fn to_parent(&self, local: usize) -> usize {
        self.to_parent[local]
    }

    pub fn to_local(&self, parent: usize) -> Option<usize> {
        match self.to_local.get(parent) {
            Some(&l) if l != usize::MAX => Some(l),
            _ => None,
        }
    }

    pub fn lift(&self, local: &VertexSet) -> VertexSet {
        local.iter().map(|v| self.to_parent[v]).collect()
    }

    pub fn restrict(&self, parent: &VertexSet) -> VertexSet {
        parent.iter().filter_map(|v| self.to_local(v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::build(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn build_triangle() {
        let g = Graph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(2, 0));
    }

    #[test]
    fn build_dedups_and_symmetrizes() {
        let g = Graph::build(4, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0]);
        assert_eq!(g.degree(2), 0);
    }

    #[test]
    fn build_rejects_self_loop() {
        assert_eq!(
            Graph::build(2, &[(0, 0)]),
            Err(Error::SelfLoop { vertex: 0 })
        );
    }

    #[test]
    fn build_rejects_out_of_range() {
        assert!(matches!(
            Graph::build(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn components_triangle_connected() {
        let g = Graph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.components(), vec![VertexSet::new(vec![0, 1, 2])]);
    }

    #[test]
    fn components_edge_plus_isolated() {
        let g = Graph::build(3, &[(0, 1)]).unwrap();
        assert_eq!(
            g.components(),
            vec![VertexSet::new(vec![0, 1]), VertexSet::singleton(2)]
        );
    }

    #[test]
    fn components_empty_graph() {
        let g = Graph::empty(4);
        assert_eq!(g.components().len(), 4);
    }

    #[test]
    fn induced_c4_drop_one() {
        let c4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let view = c4.induced(&VertexSet::new(vec![0, 1, 2])).unwrap();
        assert_eq!(view.graph.vertex_count(), 3);
        assert_eq!(view.graph.edge_count(), 2);
        assert!(view.graph.has_edge(0, 1) && view.graph.has_edge(1, 2));
        assert!(!view.graph.has_edge(0, 2));
    }

    #[test]
    fn induced_empty_keep() {
        let g = path(5);
        let view = g.induced(&VertexSet::empty()).unwrap();
        assert_eq!(view.graph.vertex_count(), 0);
        assert_eq!(view.graph.edge_count(), 0);
    }

    #[test]
    fn induced_p5_alternating_is_edgeless() {
        // Expected edge count derived by enumerating parent edges inside
        // {0,2,4}: none of (0,1),(1,2),(2,3),(3,4) has both ends kept.
        let g = path(5);
        let view = g.induced(&VertexSet::new(vec![0, 2, 4])).unwrap();
        assert_eq!(view.graph.vertex_count(), 3);
        assert_eq!(view.graph.edge_count(), 0);
        assert_eq!(view.to_parent(1), 2);
        assert_eq!(view.to_local(4), Some(2));
        assert_eq!(view.to_local(1), None);
    }

    #[test]
    fn bfs_path_from_end() {
        let g = path(5);
        let lay = g.bfs_layers(0).unwrap();
        assert_eq!(lay.eccentricity, 4);
        assert_eq!(lay.layers.len(), 5);
        assert!(lay.layers.iter().all(|l| l.len() == 1));
    }

    #[test]
    fn bfs_star_center() {
        let g = Graph::build(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let lay = g.bfs_layers(0).unwrap();
        assert_eq!(lay.eccentricity, 1);
        assert_eq!(lay.layers[1].len(), 4);
    }

    #[test]
    fn bfs_grid_corner_layer_sizes() {
        // 3x3 grid, vertices r*3+c, BFS from corner 0: diagonal layers.
        let mut edges = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                if c + 1 < 3 {
                    edges.push((r * 3 + c, r * 3 + c + 1));
                }
                if r + 1 < 3 {
                    edges.push((r * 3 + c, (r + 1) * 3 + c));
                }
            }
        }
        let g = Graph::build(9, &edges).unwrap();
        let lay = g.bfs_layers(0).unwrap();
        let sizes: Vec<usize> = lay.layers.iter().map(|l| l.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 2, 1]);
        assert_eq!(lay.eccentricity, 4);
    }

    #[test]
    fn bfs_disconnected_errors() {
        let g = Graph::build(3, &[(0, 1)]).unwrap();
        assert_eq!(g.bfs_layers(0).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn open_neighborhood_of_prefix() {
        let g = path(6);
        let nb = g.open_neighborhood(&VertexSet::new(vec![0, 1, 2]));
        assert_eq!(nb, VertexSet::singleton(3));
    }
}
