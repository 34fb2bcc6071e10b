//! Deterministic instance generators for every graph family the test
//! suites exercise, plus the subdivided-tree-closure construction whose
//! partitions are forced to produce host cliques, with its witness
//! extractor.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::decomposition::{RootedForest, TreeDecomposition};
use crate::graph::{Graph, VertexSet};
use crate::weighted::ProductCoordinates;
use crate::Error;

/// Tiny deterministic RNG (splitmix64); same seed, same stream, on every
/// platform.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }
}

/// Graph families with their parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Path { n: usize },
    PathPower { n: usize, k: usize },
    Grid { rows: usize, cols: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Star { leaves: usize },
    CompleteDaryTree { arity: usize, height: usize },
    Subdivision { inner: Box<FamilySpec>, s: usize },
    Closure { inner: Box<FamilySpec> },
    RandomTree { n: usize, seed: u64, max_degree: Option<usize> },
    KTree { n: usize, k: usize, seed: u64 },
    StrongProduct { a: Box<FamilySpec>, b: Box<FamilySpec> },
    BadNews { c: usize, ell: usize },
}

/// Parameters and skeleton of a generated adversarial instance.
#[derive(Debug, Clone)]
pub struct BadNewsMeta {
    pub c: usize,
    pub ell: usize,
    /// Tree arity `d = c * ell^2`.
    pub d: usize,
    /// Subdivision parameter `h = c^(ell-1) * ell^(2 ell - 4)`.
    pub h: usize,
    /// The subdivided tree whose closure the graph is.
    pub skeleton: RootedForest,
    /// Height (1-based, root = 1) of original tree vertices; `None` for
    /// subdivision vertices.
    pub level: Vec<Option<usize>>,
}

/// A generated graph with whatever certificates come for free: a rooted
/// forest for tree-shaped families, product coordinates for blow-ups, a
/// known-width tree decomposition when the construction yields one.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub name: String,
    pub graph: Graph,
    pub forest: Option<RootedForest>,
    pub coords: Option<ProductCoordinates>,
    pub decomposition: Option<TreeDecomposition>,
    pub bad_news: Option<BadNewsMeta>,
}

impl GeneratedInstance {
    fn bare(name: String, graph: Graph) -> GeneratedInstance {
        GeneratedInstance { name, graph, forest: None, coords: None, decomposition: None, bad_news: None }
    }
}

fn path_graph(n: usize) -> Result<Graph, Error> {
    if n == 0 {
        return Err(Error::InvalidInput(String::from("path needs n >= 1")));
    }
    Graph::build(n, &(0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>())
}

fn sliding_window_decomposition(n: usize, w: usize) -> TreeDecomposition {
    // bags {i, ..., i+w} for i in 0..n-w; already one-vertex smooth
    if n <= w {
        return TreeDecomposition {
            tree: Graph::build(1, &[]).unwrap(),
            bags: vec![VertexSet::full(n)],
        };
    }
    let t = n - w;
    let bags: Vec<VertexSet> = (0..t).map(|i| (i..=i + w).collect()).collect();
    let tree = Graph::build(t, &(0..t.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
    TreeDecomposition { tree, bags }
}

/// Deterministic generation: the same spec always produces byte-identical
/// output.
pub fn generate(spec: &FamilySpec) -> Result<GeneratedInstance, Error> {
    match spec {
        FamilySpec::Path { n } => {
            let mut inst = GeneratedInstance::bare(format!("path-{n}"), path_graph(*n)?);
            inst.coords = Some(ProductCoordinates::path(*n));
            inst.decomposition = Some(sliding_window_decomposition(*n, 1));
            Ok(inst)
        }
        FamilySpec::PathPower { n, k } => {
            if *n == 0 || *k == 0 {
                return Err(Error::InvalidInput(String::from("path power needs n, k >= 1")));
            }
            let mut edges = Vec::new();
            for i in 0..*n {
                for j in i + 1..(i + k + 1).min(*n) {
                    edges.push((i, j));
                }
            }
            let mut inst =
                GeneratedInstance::bare(format!("path-power-{n}-{k}"), Graph::build(*n, &edges)?);
            inst.decomposition = Some(sliding_window_decomposition(*n, (*k).min(n - 1)));
            Ok(inst)
        }
        FamilySpec::Grid { rows, cols } => {
            if *rows == 0 || *cols == 0 {
                return Err(Error::InvalidInput(String::from("grid needs rows, cols >= 1")));
            }
            let at = |r: usize, c: usize| r * cols + c;
            let mut edges = Vec::new();
            for r in 0..*rows {
                for c in 0..*cols {
                    if c + 1 < *cols {
                        edges.push((at(r, c), at(r, c + 1)));
                    }
                    if r + 1 < *rows {
                        edges.push((at(r, c), at(r + 1, c)));
                    }
                }
            }
            let n = rows * cols;
            let mut inst =
                GeneratedInstance::bare(format!("grid-{rows}x{cols}"), Graph::build(n, &edges)?);
            // row-major sliding window: width = cols
            inst.decomposition = Some(sliding_window_decomposition(n, (*cols).min(n - 1)));
            Ok(inst)
        }
        FamilySpec::Cycle { n } => {
            if *n < 3 {
                return Err(Error::InvalidInput(String::from("cycle needs n >= 3")));
            }
            let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
            edges.push((n - 1, 0));
            Ok(GeneratedInstance::bare(format!("cycle-{n}"), Graph::build(*n, &edges)?))
        }
        FamilySpec::Complete { n } => {
            if *n == 0 {
                return Err(Error::InvalidInput(String::from("complete graph needs n >= 1")));
            }
            let mut edges = Vec::new();
            for i in 0..*n {
                for j in i + 1..*n {
                    edges.push((i, j));
                }
            }
            let mut inst =
                GeneratedInstance::bare(format!("complete-{n}"), Graph::build(*n, &edges)?);
            inst.coords = Some(ProductCoordinates {
                path_lengths: vec![],
                clique_size: *n,
                coords: (0..*n).map(|v| (vec![], v)).collect(),
            });
            inst.decomposition = Some(TreeDecomposition {
                tree: Graph::build(1, &[]).unwrap(),
                bags: vec![VertexSet::full(*n)],
            });
            Ok(inst)
        }
        FamilySpec::Star { leaves } => {
            let n = leaves + 1;
            let edges: Vec<(usize, usize)> = (1..n).map(|v| (0, v)).collect();
            let mut inst = GeneratedInstance::bare(format!("star-{leaves}"), Graph::build(n, &edges)?);
            let mut parent = vec![Some(0); n];
            parent[0] = None;
            inst.forest = Some(RootedForest { parent });
            Ok(inst)
        }
        FamilySpec::CompleteDaryTree { arity, height } => {
            if *arity == 0 || *height == 0 {
                return Err(Error::InvalidInput(String::from("d-ary tree needs arity, height >= 1")));
            }
            let mut parent: Vec<Option<usize>> = vec![None];
            let mut level_start = 0usize;
            let mut level_len = 1usize;
            for _ in 1..*height {
                let next_start = parent.len();
                for p in level_start..level_start + level_len {
                    for _ in 0..*arity {
                        parent.push(Some(p));
                    }
                }
                level_start = next_start;
                level_len = parent.len() - next_start;
            }
            let n = parent.len();
            let edges: Vec<(usize, usize)> =
                (1..n).map(|v| (v, parent[v].unwrap())).collect();
            let mut inst = GeneratedInstance::bare(
                format!("dary-tree-{arity}-{height}"),
                Graph::build(n, &edges)?,
            );
            inst.forest = Some(RootedForest { parent });
            Ok(inst)
        }
        FamilySpec::Subdivision { inner, s } => {
            let base = generate(inner)?;
            let (graph, forest) = subdivide(&base.graph, base.forest.as_ref(), *s)?;
            let mut inst =
                GeneratedInstance::bare(format!("subdivision-{}-{s}", base.name), graph);
            inst.forest = forest;
            Ok(inst)
        }
        FamilySpec::Closure { inner } => {
            let base = generate(inner)?;
            let forest = base.forest.ok_or_else(|| {
                Error::InvalidInput(format!("closure needs a tree-rooted inner family, got {}", base.name))
            })?;
            let graph = forest.closure();
            let mut inst = GeneratedInstance::bare(format!("closure-{}", base.name), graph);
            inst.forest = Some(forest);
            Ok(inst)
        }
        FamilySpec::RandomTree { n, seed, max_degree } => {
            if *n == 0 {
                return Err(Error::InvalidInput(String::from("tree needs n >= 1")));
            }
            if let Some(cap) = max_degree {
                if *cap < 2 && *n > 1 {
                    return Err(Error::InvalidInput(String::from("degree cap below 2 cannot host a tree")));
                }
            }
            let mut rng = SplitMix64::new(*seed);
            let mut parent: Vec<Option<usize>> = vec![None; *n];
            let mut degree = vec![0usize; *n];
            for v in 1..*n {
                let eligible: Vec<usize> = (0..v)
                    .filter(|&u| max_degree.map(|cap| degree[u] < cap).unwrap_or(true))
                    .collect();
                if eligible.is_empty() {
                    return Err(Error::InvalidInput(String::from(
                        "degree cap exhausted during uniform attachment",
                    )));
                }
                let u = eligible[rng.below(eligible.len())];
                parent[v] = Some(u);
                degree[u] += 1;
                degree[v] += 1;
            }
            let edges: Vec<(usize, usize)> = (1..*n).map(|v| (v, parent[v].unwrap())).collect();
            let mut inst = GeneratedInstance::bare(
                format!("random-tree-{n}-s{seed}"),
                Graph::build(*n, &edges)?,
            );
            inst.forest = Some(RootedForest { parent });
            Ok(inst)
        }
        FamilySpec::KTree { n, k, seed } => {
            if *k == 0 || *n < k + 1 {
                return Err(Error::InvalidInput(String::from("k-tree needs k >= 1 and n >= k+1")));
            }
            let mut rng = SplitMix64::new(*seed);
            let mut edges = Vec::new();
            for i in 0..=*k {
                for j in i + 1..=*k {
                    edges.push((i, j));
                }
            }
            // (clique vertices, td node holding it): all k-subsets of the
            // root (k+1)-clique, each hosted by node 0
            let mut cliques: Vec<(Vec<usize>, usize)> = Vec::new();
            for skip in 0..=*k {
                let c: Vec<usize> = (0..=*k).filter(|&x| x != skip).collect();
                cliques.push((c, 0));
            }
            let mut bags: Vec<VertexSet> = vec![(0..=*k).collect()];
            let mut tree_edges: Vec<(usize, usize)> = Vec::new();
            for v in k + 1..*n {
                let pick = rng.below(cliques.len());
                let (c, home) = cliques[pick].clone();
                for &u in &c {
                    edges.push((u, v));
                }
                let node = bags.len();
                let mut bag: Vec<usize> = c.clone();
                bag.push(v);
                bags.push(VertexSet::new(bag));
                tree_edges.push((node, home));
                for skip in 0..c.len() {
                    let mut nc: Vec<usize> = c.clone();
                    nc[skip] = v;
                    nc.sort_unstable();
                    cliques.push((nc, node));
                }
            }
            let graph = Graph::build(*n, &edges)?;
            let tree = Graph::build(bags.len(), &tree_edges)?;
            let mut inst = GeneratedInstance::bare(format!("k-tree-{n}-{k}-s{seed}"), graph);
            inst.decomposition = Some(TreeDecomposition { tree, bags });
            Ok(inst)
        }
        FamilySpec::StrongProduct { a, b } => {
            let ga = generate(a)?;
            let gb = generate(b)?;
            let (na, nb) = (ga.graph.vertex_count(), gb.graph.vertex_count());
            let id = |va: usize, vb: usize| va * nb + vb;
            let mut edges = Vec::new();
            for va in 0..na {
                for vb in 0..nb {
                    for &wb in gb.graph.neighbors(vb) {
                        if wb > vb {
                            edges.push((id(va, vb), id(va, wb)));
                        }
                    }
                    for &wa in ga.graph.neighbors(va) {
                        if wa > va {
                            edges.push((id(va, vb), id(wa, vb)));
                            for &wb in gb.graph.neighbors(vb) {
                                edges.push((id(va, vb), id(wa, wb)));
                            }
                        }
                    }
                }
            }
            let graph = Graph::build(na * nb, &edges)?;
            let mut inst =
                GeneratedInstance::bare(format!("product-{}-{}", ga.name, gb.name), graph);
            if let (Some(ca), Some(cb)) = (&ga.coords, &gb.coords) {
                let mut path_lengths = ca.path_lengths.clone();
                path_lengths.extend_from_slice(&cb.path_lengths);
                let clique_size = ca.clique_size * cb.clique_size;
                let mut coords = Vec::with_capacity(na * nb);
                for va in 0..na {
                    for vb in 0..nb {
                        let (xa, la) = &ca.coords[va];
                        let (xb, lb) = &cb.coords[vb];
                        let mut xs = xa.clone();
                        xs.extend_from_slice(xb);
                        coords.push((xs, la * cb.clique_size + lb));
                    }
                }
                inst.coords = Some(ProductCoordinates { path_lengths, clique_size, coords });
            }
            Ok(inst)
        }
        FamilySpec::BadNews { c, ell } => generate_bad_news(*c, *ell),
    }
}

fn subdivide(
    g: &Graph,
    forest: Option<&RootedForest>,
    s: usize,
) -> Result<(Graph, Option<RootedForest>), Error> {
    let n = g.vertex_count();
    if s == 0 {
        return Ok((g.clone(), forest.cloned()));
    }
    let edges = g.edges();
    let mut out = Vec::new();
    let mut next = n;
    let mut chain_of_edge: Vec<Vec<usize>> = Vec::with_capacity(edges.len());
    for &(u, v) in &edges {
        let mut prev = u;
        let mut chain = Vec::with_capacity(s);
        for _ in 0..s {
            out.push((prev, next));
            chain.push(next);
            prev = next;
            next += 1;
        }
        out.push((prev, v));
        chain_of_edge.push(chain);
    }
    let graph = Graph::build(next, &out)?;
    // carry the rooted structure through when the inner graph is exactly
    // the forest's tree
    let new_forest = forest.and_then(|f| {
        if f.parent.len() != n {
            return None;
        }
        let mut fedges: Vec<(usize, usize)> = (0..n)
            .filter_map(|v| f.parent[v].map(|p| if p < v { (p, v) } else { (v, p) }))
            .collect();
        fedges.sort_unstable();
        if fedges != edges {
            return None;
        }
        let mut parent: Vec<Option<usize>> = vec![None; next];
        parent[..n].copy_from_slice(&f.parent[..n]);
        for (ei, &(u, v)) in edges.iter().enumerate() {
            // orient the chain from the parent end downward
            let (top, bottom) = if f.parent[v] == Some(u) { (u, v) } else { (v, u) };
            let chain = &chain_of_edge[ei];
            let ordered: Vec<usize> = if top == u {
                chain.clone()
            } else {
                chain.iter().rev().copied().collect()
            };
            let mut prev = top;
            for &w in &ordered {
                parent[w] = Some(prev);
                prev = w;
            }
            parent[bottom] = Some(prev);
        }
        Some(RootedForest { parent })
    });
    Ok((graph, new_forest))
}

fn generate_bad_news(c: usize, ell: usize) -> Result<GeneratedInstance, Error> {
    if c == 0 || ell < 2 {
        return Err(Error::InvalidInput(String::from("bad-news needs c >= 1 and ell >= 2")));
    }
    let d = c * ell * ell;
    let mut h = c.pow(ell as u32 - 1);
    if 2 * ell >= 4 {
        h *= ell.pow(2 * ell as u32 - 4);
    }
    let tree = generate(&FamilySpec::CompleteDaryTree { arity: d, height: ell })?;
    let (skeleton_graph, skeleton) = subdivide(&tree.graph, tree.forest.as_ref(), h - 1)?;
    let skeleton = skeleton.expect("d-ary tree carries its forest");
    let graph = skeleton.closure();
    // original tree vertices keep their ids; levels follow the d-ary layout
    let mut level = vec![None; skeleton_graph.vertex_count()];
    let inner_forest = tree.forest.expect("d-ary tree carries its forest");
    let depths = inner_forest.depths().expect("valid forest");
    for (v, &dep) in depths.iter().enumerate() {
        level[v] = Some(dep + 1);
    }
    debug_assert_eq!(graph.vertex_count() as u128, bad_news_order(c, ell));
    let meta = BadNewsMeta { c, ell, d, h, skeleton, level };
    let mut inst = GeneratedInstance::bare(format!("bad-news-c{c}-l{ell}"), graph);
    inst.forest = Some(meta.skeleton.clone());
    inst.bad_news = Some(meta);
    Ok(inst)
}

/// Closed-form order of the adversarial instance,
/// `h (d/(d-1)) (d^(ell-1) - 1) + 1`.
pub fn bad_news_order(c: usize, ell: usize) -> u128 {
    let d = (c * ell * ell) as u128;
    let mut h = (c as u128).pow(ell as u32 - 1);
    if 2 * ell >= 4 {
        h *= (ell as u128).pow(2 * ell as u32 - 4);
    }
    // d/(d-1) (d^(ell-1)-1) = d * (1 + d + ... + d^(ell-2))
    let geo: u128 = (0..ell - 1).map(|i| d.pow(i as u32)).sum();
    h * d * geo + 1
}

/// Extracts a root-leaf path of the skeleton meeting at least `ell`
/// distinct parts, provided every part has at most `(hd-1)/(ell-1)`
/// vertices. Descends level by level, always stepping into a vertex
/// whose part the path has not met yet.
pub fn bad_news_witness(meta: &BadNewsMeta, parts: &[VertexSet]) -> Result<Vec<usize>, Error> {
    let n = meta.skeleton.parent.len();
    let cap_num = meta.h as u128 * meta.d as u128 - 1;
    for (i, part) in parts.iter().enumerate() {
        if part.len() as u128 * (meta.ell as u128 - 1) > cap_num {
            return Err(Error::InvalidInput(format!(
                "part {i} has {} vertices, cap is (hd-1)/(ell-1) = {}/{}",
                part.len(),
                cap_num,
                meta.ell - 1
            )));
        }
    }
    let mut owner = vec![usize::MAX; n];
    let mut covered = 0usize;
    for (i, part) in parts.iter().enumerate() {
        for v in part.iter() {
            if v >= n || owner[v] != usize::MAX {
                return Err(Error::InvalidInput(String::from("parts do not partition the instance")));
            }
            owner[v] = i;
            covered += 1;
        }
    }
    if covered != n {
        return Err(Error::InvalidInput(String::from("parts do not cover the instance")));
    }

    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(p) = meta.skeleton.parent[v] {
            children[p].push(v);
        }
    }
    for list in &mut children {
        list.sort_unstable();
    }
    let root = meta
        .skeleton
        .roots()
        .min_vertex()
        .ok_or_else(|| Error::InvalidInput(String::from("skeleton has no root")))?;

    let mut path = vec![root];
    let mut touched = VertexSet::singleton(owner[root]);
    let mut v = root;
    for _ in 2..=meta.ell {
        // the dh descendants of v down to the next original level
        let mut bundle = Vec::new();
        let mut stack: Vec<usize> = children[v].clone();
        while let Some(u) = stack.pop() {
            bundle.push(u);
            if meta.level[u].is_none() {
                stack.extend(children[u].iter().copied());
            }
        }
        bundle.sort_unstable();
        let x = bundle
            .iter()
            .copied()
            .find(|&u| !touched.contains(owner[u]))
            .unwrap_or(bundle[0]);
        // walk from v down to x, then on to the original vertex below x
        let mut segment = vec![x];
        let mut up = x;
        while meta.skeleton.parent[up] != Some(v) {
            up = meta.skeleton.parent[up].expect("x descends from v");
            segment.push(up);
        }
        segment.reverse();
        let mut cur = x;
        while meta.level[cur].is_none() {
            cur = children[cur][0];
            segment.push(cur);
        }
        for &u in &segment {
            path.push(u);
            touched.insert(owner[u]);
        }
        v = cur;
    }
    if touched.len() < meta.ell {
        return Err(Error::InvalidInput(format!(
            "witness path touched only {} parts; expected at least {}",
            touched.len(),
            meta.ell
        )));
    }
    Ok(path)
}
