//! Certificate JSON: emission for every partition method and the
//! re-verification path used by `verify`, which trusts nothing but the
//! graph file and the certificate contents.

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use prodstruct_core::decomposition::{
    validate_decomposition, verify_closure_embedding, RootedForest, TreeDecomposition,
};
use prodstruct_core::graph::{Graph, VertexSet};
use prodstruct_core::partition::{verify_hpartition_of, HPartition, HostWitness};

use crate::formats::{forest_from_json, forest_to_json};

pub struct Bound {
    pub formula: String,
    pub value: f64,
}

fn ids(v: &VertexSet) -> Vec<usize> {
    v.iter().collect()
}

fn witness_json(w: &HostWitness) -> Value {
    match w {
        HostWitness::Forest(f) => {
            let mut v = forest_to_json(f);
            v["kind"] = json!("forest");
            v
        }
        HostWitness::Decomposition(td) => json!({
            "kind": "decomposition",
            "bags": td.bags.iter().map(ids).collect::<Vec<_>>(),
            "edges": td.tree.edges(),
            "width": td.width(),
        }),
        HostWitness::Clique(c) => json!({ "kind": "clique", "vertices": ids(c) }),
    }
}

/// The certificate body: parts, host edges, width, witness, bound.
/// `apex` lists deleted vertices for partitions of `G - Y`.
pub fn partition_certificate(
    p: &HPartition,
    apex: &VertexSet,
    witness: Option<&HostWitness>,
    bound: &Bound,
    meets_bound: bool,
) -> Value {
    let mut cert = json!({
        "parts": p.parts.iter().map(ids).collect::<Vec<_>>(),
        "host_edges": p.host.edges(),
        "width": p.width(),
        "bound": { "formula": bound.formula, "value": bound.value },
        "meets_bound": meets_bound,
    });
    if let Some(w) = witness {
        cert["witness"] = witness_json(w);
    }
    if !apex.is_empty() {
        cert["apex"] = json!(ids(apex));
    }
    cert
}

pub fn separator_report_json(rep: &prodstruct_core::separators::SeparatorReport) -> Value {
    json!({
        "s": ids(&rep.s),
        "max_component": rep.max_component,
        "target_p": rep.target_p,
        "target_q": rep.target_q,
        "meets_contract": rep.meets_contract,
    })
}

pub fn shallow_model_json(m: &prodstruct_core::expansion::ShallowModel) -> Value {
    json!({
        "kind": "shallow-model",
        "depth": m.depth,
        "branch_sets": m.branch_sets.iter().map(ids).collect::<Vec<_>>(),
    })
}

fn vertex_set_from(v: &Value) -> Result<VertexSet> {
    let arr = v.as_array().context("expected an id array")?;
    Ok(VertexSet::new(
        arr.iter()
            .map(|x| x.as_u64().map(|u| u as usize).context("bad id"))
            .collect::<Result<Vec<_>>>()?,
    ))
}

fn edges_from(v: &Value) -> Result<Vec<(usize, usize)>> {
    v.as_array()
        .context("expected an edge array")?
        .iter()
        .map(|e| {
            let pair = e.as_array().context("edge must be a pair")?;
            if pair.len() != 2 {
                bail!("edge must be a pair");
            }
            Ok((
                pair[0].as_u64().context("bad edge end")? as usize,
                pair[1].as_u64().context("bad edge end")? as usize,
            ))
        })
        .collect()
}

/// Re-checks a certificate against the graph. Returns human-readable
/// violations; empty means the certificate is valid.
pub fn verify_certificate(g: &Graph, cert: &Value) -> Result<Vec<String>> {
    if cert.get("kind").and_then(Value::as_str) == Some("shallow-model") {
        return verify_shallow_model_json(g, cert);
    }
    if cert.get("parts").is_some() {
        return verify_partition_json(g, cert);
    }
    if cert.get("s").is_some() {
        return verify_separator_json(g, cert);
    }
    bail!("unrecognized certificate shape");
}

fn verify_partition_json(g: &Graph, cert: &Value) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let parts: Vec<VertexSet> = cert
        .get("parts")
        .and_then(Value::as_array)
        .context("certificate has no parts")?
        .iter()
        .map(vertex_set_from)
        .collect::<Result<_>>()?;
    let host_edges = edges_from(cert.get("host_edges").context("certificate has no host_edges")?)?;
    let host = match Graph::build(parts.len().max(1), &host_edges) {
        Ok(h) => h,
        Err(e) => {
            problems.push(format!("host graph malformed: {e}"));
            return Ok(problems);
        }
    };
    let apex = match cert.get("apex") {
        Some(v) => vertex_set_from(v)?,
        None => VertexSet::empty(),
    };
    let p = HPartition { parts, host };
    let cover = apex.complement(g.vertex_count());
    let check = verify_hpartition_of(g, &cover, &p);
    for v in &check.violations {
        problems.push(format!("{v:?}"));
    }
    if let Some(width) = cert.get("width").and_then(Value::as_u64) {
        if p.width() != width as usize {
            problems.push(format!("stated width {width}, recomputed {}", p.width()));
        }
    }
    if let (Some(bound), Some(claimed)) = (
        cert.pointer("/bound/value").and_then(Value::as_f64),
        cert.get("meets_bound").and_then(Value::as_bool),
    ) {
        let actual = crate::bench::le_slack(p.width() as f64, bound);
        if actual != claimed {
            problems.push(format!(
                "meets_bound claims {claimed} but width {} vs bound {bound} says {actual}",
                p.width()
            ));
        }
    }
    if let Some(w) = cert.get("witness") {
        problems.extend(verify_witness_json(&p.host, w)?);
    }
    Ok(problems)
}

fn verify_witness_json(host: &Graph, w: &Value) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    match w.get("kind").and_then(Value::as_str) {
        Some("forest") => {
            let f: RootedForest = forest_from_json(w)?;
            match verify_closure_embedding(host, &f) {
                Ok(true) => {
                    if let Some(height) = w.get("height").and_then(Value::as_u64) {
                        if f.vertex_height() > height as usize {
                            problems.push(format!(
                                "forest height {} exceeds stated {height}",
                                f.vertex_height()
                            ));
                        }
                    }
                }
                Ok(false) => problems.push("host is not a subgraph of the forest closure".into()),
                Err(e) => problems.push(format!("forest witness malformed: {e}")),
            }
        }
        Some("decomposition") => {
            let bags: Vec<VertexSet> = w
                .get("bags")
                .and_then(Value::as_array)
                .context("decomposition witness needs bags")?
                .iter()
                .map(vertex_set_from)
                .collect::<Result<_>>()?;
            let edges = edges_from(w.get("edges").context("decomposition witness needs edges")?)?;
            match Graph::build(bags.len().max(1), &edges) {
                Ok(tree) => {
                    let td = TreeDecomposition { tree, bags };
                    let check = validate_decomposition(host, &td);
                    for v in &check.violations {
                        problems.push(format!("witness: {v:?}"));
                    }
                    if let Some(width) = w.get("width").and_then(Value::as_u64) {
                        if td.width() > width as usize {
                            problems.push(format!(
                                "witness width {} exceeds stated {width}",
                                td.width()
                            ));
                        }
                    }
                }
                Err(e) => problems.push(format!("witness tree malformed: {e}")),
            }
        }
        Some("clique") => {
            let c = vertex_set_from(w.get("vertices").context("clique witness needs vertices")?)?;
            let vs: Vec<usize> = c.iter().collect();
            for (i, &a) in vs.iter().enumerate() {
                for &b in &vs[i + 1..] {
                    if !host.has_edge(a, b) {
                        problems.push(format!("clique witness misses host edge ({a},{b})"));
                    }
                }
            }
        }
        other => problems.push(format!("unknown witness kind {other:?}")),
    }
    Ok(problems)
}

fn verify_separator_json(g: &Graph, cert: &Value) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let s = vertex_set_from(cert.get("s").context("separator certificate needs s")?)?;
    if !s.valid_for(g.vertex_count()) {
        problems.push("separator contains out-of-range vertices".into());
        return Ok(problems);
    }
    let max_component = g.max_component_size(&s);
    if let Some(stated) = cert.get("max_component").and_then(Value::as_u64) {
        if stated as usize != max_component {
            problems.push(format!(
                "stated max component {stated}, recomputed {max_component}"
            ));
        }
    }
    if let (Some(tp), Some(tq), Some(claimed)) = (
        cert.get("target_p").and_then(Value::as_f64),
        cert.get("target_q").and_then(Value::as_f64),
        cert.get("meets_contract").and_then(Value::as_bool),
    ) {
        let actual = (s.len() as f64) <= tp && (max_component as f64) <= tq;
        if actual != claimed {
            problems.push(format!("meets_contract claims {claimed}, recomputation says {actual}"));
        }
    }
    Ok(problems)
}

fn verify_shallow_model_json(g: &Graph, cert: &Value) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let depth = cert
        .get("depth")
        .and_then(Value::as_u64)
        .context("shallow-model certificate needs depth")? as usize;
    let branch_sets: Vec<VertexSet> = cert
        .get("branch_sets")
        .and_then(Value::as_array)
        .context("shallow-model certificate needs branch_sets")?
        .iter()
        .map(vertex_set_from)
        .collect::<Result<_>>()?;
    // centers are not serialized; re-derive one per branch set
    let mut centers = Vec::new();
    for (i, set) in branch_sets.iter().enumerate() {
        if set.is_empty() || !set.valid_for(g.vertex_count()) {
            problems.push(format!("branch set {i} empty or out of range"));
            return Ok(problems);
        }
        let view = g.induced(set).map_err(|e| anyhow::anyhow!("{e}"))?;
        let center = set.iter().find(|&c| {
            let local = view.to_local(c).unwrap();
            view.graph.distances(local).iter().all(|&d| d <= depth)
        });
        match center {
            Some(c) => centers.push(c),
            None => {
                problems.push(format!("branch set {i} has no radius-{depth} center"));
                return Ok(problems);
            }
        }
    }
    let model = prodstruct_core::expansion::ShallowModel { branch_sets, centers, depth };
    if !prodstruct_core::expansion::verify_shallow_model(g, &model) {
        problems.push("model fails disjointness or pairwise adjacency".into());
    }
    Ok(problems)
}
