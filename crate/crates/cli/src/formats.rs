//! Plain-text graph and decomposition formats, weights and coordinate
//! files, and the JSON metadata sidecar written next to generated
//! instances.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use prodstruct_core::decomposition::{RootedForest, TreeDecomposition};
use prodstruct_core::graph::{Graph, VertexSet};
use prodstruct_core::instances::GeneratedInstance;
use prodstruct_core::weighted::ProductCoordinates;

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Graph text format: first line `n m`, then `m` lines `u v` with
/// 0-based ids; `#` starts a comment line.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = data_lines(text);
    let header = lines.next().context("missing graph header line")?;
    let mut it = header.split_whitespace();
    let n: usize = it.next().context("missing n")?.parse().context("bad n")?;
    let m: usize = it.next().context("missing m")?.parse().context("bad m")?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let mut it = line.split_whitespace();
        let u: usize = it.next().context("missing u")?.parse().context("bad u")?;
        let v: usize = it.next().context("missing v")?.parse().context("bad v")?;
        edges.push((u, v));
    }
    if edges.len() != m {
        bail!("header announces {m} edges, found {}", edges.len());
    }
    Graph::build(n, &edges).map_err(|e| anyhow::anyhow!("{e}"))
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
}

/// Writer emits edges with `u < v`, lexicographically sorted.
pub fn graph_to_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<()> {
    fs::write(path, graph_to_text(g)).with_context(|| format!("writing {}", path.display()))
}

/// Decomposition text format: `t maxbag n`, then `t` lines
/// `node_id v1 v2 ...`, then `t - 1` lines `x y` of tree edges.
pub fn decomposition_to_text(td: &TreeDecomposition, n: usize) -> String {
    let t = td.node_count();
    let maxbag = td.bags.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut out = format!("{t} {maxbag} {n}\n");
    for (x, bag) in td.bags.iter().enumerate() {
        out.push_str(&x.to_string());
        for v in bag.iter() {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    for (x, y) in td.tree.edges() {
        out.push_str(&format!("{x} {y}\n"));
    }
    out
}

pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition> {
    let mut lines = data_lines(text);
    let header = lines.next().context("missing decomposition header")?;
    let mut it = header.split_whitespace();
    let t: usize = it.next().context("missing t")?.parse()?;
    let _maxbag: usize = it.next().context("missing max bag size")?.parse()?;
    let _n: usize = it.next().context("missing n")?.parse()?;
    let mut bags = vec![VertexSet::empty(); t];
    for _ in 0..t {
        let line = lines.next().context("missing bag line")?;
        let mut it = line.split_whitespace();
        let x: usize = it.next().context("missing node id")?.parse()?;
        if x >= t {
            bail!("node id {x} out of range");
        }
        let verts: Vec<usize> = it.map(|s| s.parse::<usize>()).collect::<Result<_, _>>()?;
        bags[x] = VertexSet::new(verts);
    }
    let mut edges = Vec::with_capacity(t.saturating_sub(1));
    for line in lines {
        let mut it = line.split_whitespace();
        let x: usize = it.next().context("missing x")?.parse()?;
        let y: usize = it.next().context("missing y")?.parse()?;
        edges.push((x, y));
    }
    let tree = Graph::build(t, &edges).map_err(|e| anyhow::anyhow!("{e}"))?;
    Ok(TreeDecomposition { tree, bags })
}

pub fn read_decomposition(path: &Path) -> Result<TreeDecomposition> {
    parse_decomposition(
        &fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
    )
}

/// Weights file: lines `v w` with nonnegative decimal weights.
pub fn parse_weights(text: &str, n: usize) -> Result<Vec<f64>> {
    let mut weights = vec![0.0f64; n];
    for line in data_lines(text) {
        let mut it = line.split_whitespace();
        let v: usize = it.next().context("missing vertex")?.parse()?;
        let w: f64 = it.next().context("missing weight")?.parse()?;
        if v >= n {
            bail!("weight for vertex {v} out of range");
        }
        if !(w >= 0.0) {
            bail!("negative weight for vertex {v}");
        }
        weights[v] = w;
    }
    Ok(weights)
}

/// Coordinates file for blow-ups: lines `v x_1 ... x_d l`.
pub fn parse_coords(text: &str, n: usize) -> Result<ProductCoordinates> {
    let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
    for line in data_lines(text) {
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|s| s.parse::<usize>())
            .collect::<Result<_, _>>()?;
        if nums.len() < 3 {
            bail!("coordinate line needs at least `v x l`");
        }
        rows.push((nums[0], nums[1..].to_vec()));
    }
    if rows.len() != n {
        bail!("{} coordinate rows for {n} vertices", rows.len());
    }
    let d = rows[0].1.len() - 1;
    let mut coords = vec![(Vec::new(), 0usize); n];
    let mut path_lengths = vec![0usize; d];
    let mut clique_size = 0usize;
    for (v, nums) in rows {
        if v >= n {
            bail!("coordinate vertex {v} out of range");
        }
        if nums.len() != d + 1 {
            bail!("inconsistent coordinate arity at vertex {v}");
        }
        let xs = nums[..d].to_vec();
        let l = nums[d];
        for (i, &x) in xs.iter().enumerate() {
            path_lengths[i] = path_lengths[i].max(x + 1);
        }
        clique_size = clique_size.max(l + 1);
        coords[v] = (xs, l);
    }
    Ok(ProductCoordinates { path_lengths, clique_size, coords })
}

pub fn coords_to_text(coords: &ProductCoordinates) -> String {
    let mut out = String::new();
    for (v, (xs, l)) in coords.coords.iter().enumerate() {
        out.push_str(&v.to_string());
        for x in xs {
            out.push_str(&format!(" {x}"));
        }
        out.push_str(&format!(" {l}\n"));
    }
    out
}

pub fn forest_to_json(f: &RootedForest) -> Value {
    json!({
        "parent": f.parent.iter().map(|p| match p {
            Some(x) => json!(x),
            None => Value::Null,
        }).collect::<Vec<_>>(),
        "height": f.vertex_height(),
    })
}

pub fn forest_from_json(v: &Value) -> Result<RootedForest> {
    let arr = v
        .get("parent")
        .and_then(Value::as_array)
        .context("forest json needs a parent array")?;
    let parent: Vec<Option<usize>> = arr
        .iter()
        .map(|x| {
            if x.is_null() {
                Ok(None)
            } else {
                x.as_u64().map(|u| Some(u as usize)).context("bad parent entry")
            }
        })
        .collect::<Result<_>>()?;
    RootedForest::new(parent).map_err(|e| anyhow::anyhow!("{e}"))
}

/// Sidecar JSON with whatever certificates generation produced.
pub fn instance_metadata(inst: &GeneratedInstance) -> Value {
    let mut meta = json!({ "name": inst.name });
    if let Some(f) = &inst.forest {
        meta["forest"] = forest_to_json(f);
    }
    if let Some(c) = &inst.coords {
        meta["coords"] = json!({
            "path_lengths": c.path_lengths,
            "clique_size": c.clique_size,
            "rows": coords_to_text(c),
        });
    }
    if let Some(td) = &inst.decomposition {
        meta["decomposition"] = json!({
            "width": td.width(),
            "text": decomposition_to_text(td, inst.graph.vertex_count()),
        });
    }
    if let Some(b) = &inst.bad_news {
        meta["bad_news"] = json!({
            "c": b.c,
            "ell": b.ell,
            "d": b.d,
            "h": b.h,
            "skeleton": forest_to_json(&b.skeleton),
            "level": b.level,
        });
    }
    meta
}
