//! Shallow clique models, the spanning-tree/cut dichotomy, and the
//! apex-plus-bounded-treewidth partition for graphs excluding shallow
//! complete-graph minors, with the polynomial-expansion parameter driver.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::decomposition::{validate_decomposition, TreeDecomposition};
use crate::graph::{Graph, VertexSet};
use crate::math;
use crate::partition::{verify_hpartition_of, HPartition};
use crate::Error;

/// A depth-`r` model of a complete graph: disjoint branch sets, each
/// inducing a connected subgraph of radius at most `depth` from its
/// center, pairwise joined by at least one edge.
#[derive(Debug, Clone)]
pub struct ShallowModel {
    pub branch_sets: Vec<VertexSet>,
    pub centers: Vec<usize>,
    pub depth: usize,
}

impl ShallowModel {
    pub fn order(&self) -> usize {
        self.branch_sets.len()
    }
}

/// True iff disjointness, connectivity, radius and pairwise adjacency
/// all hold.
pub fn verify_shallow_model(g: &Graph, model: &ShallowModel) -> bool {
    let k = model.branch_sets.len();
    if model.centers.len() != k {
        return false;
    }
    let n = g.vertex_count();
    let mut owner = vec![usize::MAX; n];
    for (i, set) in model.branch_sets.iter().enumerate() {
        if set.is_empty() || !set.valid_for(n) || !set.contains(model.centers[i]) {
            return false;
        }
        for v in set.iter() {
            if owner[v] != usize::MAX {
                return false;
            }
            owner[v] = i;
        }
    }
    for (i, set) in model.branch_sets.iter().enumerate() {
        let view = match g.induced(set) {
            Ok(v) => v,
            Err(_) => return false,
        };
        let local_center = view.to_local(model.centers[i]).expect("center is in the set");
        let dist = view.graph.distances(local_center);
        if dist.iter().any(|&d| d > model.depth) {
            return false;
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let touches = model.branch_sets[i]
                .iter()
                .any(|v| g.neighbors(v).iter().any(|&w| model.branch_sets[j].contains(w)));
            if !touches {
                return false;
            }
        }
    }
    true
}

/// Exhaustive search for a depth-`r` model of `K_h`: enumerate center
/// combinations, then assignments of the remaining vertices into the
/// centers' distance-`r` balls. Returns the lexicographically first
/// valid model, or `None` after exhausting the space.
pub fn find_shallow_clique_model(
    g: &Graph,
    h: usize,
    r: usize,
    limit: usize,
) -> Result<Option<ShallowModel>, Error> {
    let n = g.vertex_count();
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    if h == 0 {
        return Err(Error::InvalidInput(String::from("h must be >= 1")));
    }
    if h > n {
        return Ok(None);
    }
    let dists: Vec<Vec<usize>> = (0..n).map(|v| g.distances(v)).collect();
    let mut centers: Vec<usize> = (0..h).collect();
    loop {
        if let Some(model) = try_centers(g, &centers, r, &dists) {
            return Ok(Some(model));
        }
        // next combination in lexicographic order
        let mut i = h;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if centers[i] < n - (h - i) {
                centers[i] += 1;
                for j in i + 1..h {
                    centers[j] = centers[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn try_centers(g: &Graph, centers: &[usize], r: usize, dists: &[Vec<usize>]) -> Option<ShallowModel> {
    let n = g.vertex_count();
    let h = centers.len();
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut is_center = vec![false; n];
    for (i, &c) in centers.iter().enumerate() {
        assign[c] = Some(i);
        is_center[c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&v| !is_center[v]).collect();
    fn dfs(
        pos: usize,
        free: &[usize],
        g: &Graph,
        centers: &[usize],
        r: usize,
        dists: &[Vec<usize>],
        assign: &mut Vec<Option<usize>>,
    ) -> bool {
        if pos == free.len() {
            return check_assignment(g, centers, r, assign);
        }
        let v = free[pos];
        assign[v] = None;
        if dfs(pos + 1, free, g, centers, r, dists, assign) {
            return true;
        }
        for (i, &c) in centers.iter().enumerate() {
            if dists[c][v] <= r {
                assign[v] = Some(i);
                if dfs(pos + 1, free, g, centers, r, dists, assign) {
                    return true;
                }
            }
        }
        assign[v] = None;
        false
    }
    fn check_assignment(g: &Graph, centers: &[usize], r: usize, assign: &[Option<usize>]) -> bool {
        let h = centers.len();
        let mut sets: Vec<Vec<usize>> = vec![Vec::new(); h];
        for (v, a) in assign.iter().enumerate() {
            if let Some(i) = a {
                sets[*i].push(v);
            }
        }
        let model = ShallowModel {
            branch_sets: sets.into_iter().map(VertexSet::new).collect(),
            centers: centers.to_vec(),
            depth: r,
        };
        verify_shallow_model(g, &model)
    }
    if dfs(0, &free, g, centers, r, dists, &mut assign) {
        let mut sets: Vec<Vec<usize>> = vec![Vec::new(); h];
        for (v, a) in assign.iter().enumerate() {
            if let Some(i) = a {
                sets[*i].push(v);
            }
        }
        return Some(ShallowModel {
            branch_sets: sets.into_iter().map(VertexSet::new).collect(),
            centers: centers.to_vec(),
            depth: r,
        });
    }
    None
}

/// Outcome of the spanning-tree / vertex-cut dichotomy.
#[derive(Debug, Clone)]
pub enum STOutcome {
    /// A BFS spanning tree of radius at most `ceil(4 l log2 n) + 2`.
    Tree { root: usize, parent: Vec<Option<usize>>, radius: usize },
    /// A partition `(S, T)` with `|N(S)| <= |S|/l` and `|N(T)| <= |T|/l`.
    Cut { s: VertexSet, t: VertexSet },
}

/// Radius threshold of the dichotomy: `ceil(4 l log2 n) + 2`.
pub fn st_radius_threshold(n: usize, ell: f64) -> usize {
    if n <= 1 {
        return 2;
    }
    math::ceil(4.0 * ell * math::log2(n as f64)) as usize + 2
}

/// Either a spanning tree of radius at most the threshold, or a cut with
/// both boundaries small. Both branch invariants are re-verified before
/// returning.
pub fn st_dichotomy(g: &Graph, ell: f64) -> Result<STOutcome, Error> {
    if !(ell >= 1.0) {
        return Err(Error::InvalidInput(String::from("l must be at least 1")));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidInput(String::from("empty graph")));
    }
    let lay = g.bfs_layers(0)?; // errors on disconnected input
    let threshold = st_radius_threshold(n, ell);
    if lay.eccentricity <= threshold {
        return Ok(STOutcome::Tree { root: 0, parent: lay.parent, radius: lay.eccentricity });
    }
    // both-ends sweep: a prefix cut where the layer above is small
    // relative to the prefix and the boundary layer is small relative to
    // the suffix; existence follows from the geometric growth of whichever
    // side keeps failing.
    let sizes: Vec<usize> = lay.layers.iter().map(|l| l.len()).collect();
    let e = lay.eccentricity;
    let total: usize = n;
    let mut prefix = 0usize;
    for i in 0..e {
        prefix += sizes[i];
        let suffix = total - prefix;
        if math::size_le(sizes[i + 1], prefix as f64 / ell)
            && math::size_le(sizes[i], suffix as f64 / ell)
        {
            let mut s = VertexSet::empty();
            for layer in &lay.layers[..=i] {
                s = s.union(layer);
            }
            let t = s.complement(n);
            let ns = g.open_neighborhood(&s);
            let nt = g.open_neighborhood(&t);
            if s.is_empty()
                || t.is_empty()
                || !math::size_le(ns.len(), s.len() as f64 / ell)
                || !math::size_le(nt.len(), t.len() as f64 / ell)
            {
                return Err(Error::InvalidInput(String::from(
                    "cut sweep produced an invalid cut",
                )));
            }
            return Ok(STOutcome::Cut { s, t });
        }
    }
    Err(Error::InvalidInput(String::from(
        "dichotomy sweep found no cut despite large radius",
    )))
}

/// The apex set, partition and host-treewidth witness produced by the
/// shallow-minor-free recursion.
#[derive(Debug, Clone)]
pub struct ExpansionResult {
    pub y: VertexSet,
    pub partition: HPartition,
    pub host_tw_witness: TreeDecomposition,
    pub part_cap: usize,
    pub depth: usize,
    pub h: usize,
    pub ell: f64,
}

impl ExpansionResult {
    /// Recomputes every certificate field against `g`.
    pub fn verify(&self, g: &Graph) -> Result<(), Error> {
        let n = g.vertex_count();
        if !math::size_le(self.y.len(), n as f64 / self.ell) {
            return Err(Error::InvalidInput(format!(
                "apex set has {} vertices, cap is n/l = {}",
                self.y.len(),
                n as f64 / self.ell
            )));
        }
        let cover = self.y.complement(n);
        let cert = verify_hpartition_of(g, &cover, &self.partition);
        if !cert.valid {
            return Err(Error::InvalidInput(format!(
                "partition of G - Y invalid: {:?}",
                cert.violations[0]
            )));
        }
        for (i, part) in self.partition.parts.iter().enumerate() {
            if part.len() > self.part_cap {
                return Err(Error::InvalidInput(format!(
                    "part {i} has {} vertices, cap is {}",
                    part.len(),
                    self.part_cap
                )));
            }
        }
        let check = validate_decomposition(&self.partition.host, &self.host_tw_witness);
        if !check.ok {
            return Err(Error::InvalidInput(format!(
                "host treewidth witness invalid: {:?}",
                check.violations[0]
            )));
        }
        if self.host_tw_witness.width() + 2 > self.h {
            return Err(Error::InvalidInput(format!(
                "host witness width {} exceeds h - 2 = {}",
                self.host_tw_witness.width(),
                self.h - 2
            )));
        }
        Ok(())
    }
}

/// Success or a structured promise violation carrying the shallow model
/// that was found.
#[derive(Debug, Clone)]
pub enum ExpansionOutcome {
    Partitioned(ExpansionResult),
    PromiseViolation(ShallowModel),
}

struct ExpCtx<'a> {
    g: &'a Graph,
    n: usize,
    ell: f64,
    h: usize,
    d: usize,
}

/// Part registry and compositional host-decomposition under construction.
/// Part 0 is the accumulating apex part `Y`; every bag contains it.
struct Builder {
    parts: Vec<VertexSet>,
    centers: Vec<Option<usize>>,
    bags: Vec<VertexSet>,
    td_edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new_part(&mut self, verts: VertexSet, center: usize) -> usize {
        self.parts.push(verts);
        self.centers.push(Some(center));
        self.parts.len() - 1
    }

    fn new_bag(&mut self, model: &[usize]) -> usize {
        let mut bag = vec![0usize];
        bag.extend_from_slice(model);
        self.bags.push(VertexSet::new(bag));
        self.bags.len() - 1
    }
}

enum RecOutcome {
    Iface(usize),
    Violation(ShallowModel),
}

/// Partition with an apex set: `Y` with `|Y| <= n/l`, every other part
/// of at most `(h-1)d + 1` vertices, and a host treewidth witness of
/// width at most `h - 2`. If the recursion assembles `h` pairwise-joined
/// branch sets instead, the shallow `K_h`-model is returned as evidence.
pub fn expansion_partition(g: &Graph, ell: f64, h: usize) -> Result<ExpansionOutcome, Error> {
    if !(ell >= 1.0) {
        return Err(Error::InvalidInput(String::from("l must be at least 1")));
    }
    if h < 2 {
        return Err(Error::InvalidInput(String::from("h must be at least 2")));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidInput(String::from("empty graph has no partition")));
    }
    let d = st_radius_threshold(n, ell);
    let cap = (h - 1) * d + 1;
    let ctx = ExpCtx { g, n, ell, h, d };
    let mut b = Builder {
        parts: vec![VertexSet::empty()],
        centers: vec![None],
        bags: Vec::new(),
        td_edges: Vec::new(),
    };
    let out = rec(&ctx, &mut b, VertexSet::full(n), Vec::new(), VertexSet::empty(), None)?;
    let iface = match out {
        RecOutcome::Violation(m) => {
            if !verify_shallow_model(g, &m) {
                return Err(Error::InvalidInput(String::from(
                    "promise-violation model failed re-verification",
                )));
            }
            return Ok(ExpansionOutcome::PromiseViolation(m));
        }
        RecOutcome::Iface(x) => x,
    };
    let _ = iface;
    // drop Y (part 0) from the partition and from every bag
    let y = b.parts[0].clone();
    let parts: Vec<VertexSet> = b.parts[1..].to_vec();
    let bags: Vec<VertexSet> = b
        .bags
        .iter()
        .map(|bag| bag.iter().filter(|&p| p != 0).map(|p| p - 1).collect())
        .collect();
    let tree = Graph::build(bags.len().max(1), &b.td_edges)
        .map_err(|e| Error::InvalidInput(format!("witness tree malformed: {e}")))?;
    let witness = TreeDecomposition { tree, bags };
    // minimal host from cross-part edges; the witness covers it because
    // the construction only ever maps edges into registered host cliques
    let mut owner = vec![usize::MAX; n];
    for (i, part) in parts.iter().enumerate() {
        for v in part.iter() {
            owner[v] = i;
        }
    }
    let mut host_edges = Vec::new();
    for (u, v) in g.edges() {
        if owner[u] != usize::MAX && owner[v] != usize::MAX && owner[u] != owner[v] {
            host_edges.push((owner[u], owner[v]));
        }
    }
    let host = Graph::build(parts.len(), &host_edges)?;
    let result = ExpansionResult {
        y,
        partition: HPartition { parts, host },
        host_tw_witness: witness,
        part_cap: cap,
        depth: d,
        h,
        ell,
    };
    result.verify(g)?;
    Ok(ExpansionOutcome::Partitioned(result))
}

#[allow(clippy::too_many_arguments)]
fn rec(
    ctx: &ExpCtx,
    b: &mut Builder,
    sub: VertexSet,
    model: Vec<usize>,
    x: VertexSet,
    prev: Option<(usize, usize, usize)>,
) -> Result<RecOutcome, Error> {
    let mut u_union = VertexSet::empty();
    let mut u_total = 0usize;
    for &p in &model {
        u_union = u_union.union(&b.parts[p]);
        u_total += b.parts[p].len();
    }
    let z = sub.difference(&u_union).difference(&x);
    // weight accounting (dagger): (l - 1)|X| <= n - n' + |U|
    debug_assert!(
        (ctx.ell - 1.0) * (x.len() as f64)
            <= (ctx.n - sub.len() + u_total) as f64 + 1e-9,
        "weight precondition violated"
    );
    // lexicographic termination measure (n', h - k, |Z|)
    let measure = (sub.len(), ctx.h - model.len(), z.len());
    if let Some(p) = prev {
        debug_assert!(measure < p, "termination measure failed to decrease: {measure:?} vs {p:?}");
    }

    if z.is_empty() {
        b.parts[0] = b.parts[0].union(&x);
        return Ok(RecOutcome::Iface(b.new_bag(&model)));
    }

    let comps = ctx.g.components_within(&z);
    if comps.len() > 1 {
        // Case 1: recurse per component, clique-sum on {U_1..U_k, Y}
        let mut children = Vec::with_capacity(comps.len());
        for comp in comps {
            let sub_j = u_union.union(&x).union(&comp);
            match rec(ctx, b, sub_j, model.clone(), x.clone(), Some(measure))? {
                RecOutcome::Violation(m) => return Ok(RecOutcome::Violation(m)),
                RecOutcome::Iface(c) => children.push(c),
            }
        }
        let iface = b.new_bag(&model);
        for c in children {
            b.td_edges.push((iface, c));
        }
        return Ok(RecOutcome::Iface(iface));
    }

    // Case 2: a branch set with no neighbor in Z becomes its own part
    for (pos, &p) in model.iter().enumerate() {
        let boundary = ctx.g.open_neighborhood(&b.parts[p]);
        if boundary.intersection(&z).is_empty() {
            let sub2 = sub.difference(&b.parts[p]);
            let mut model2 = model.clone();
            model2.remove(pos);
            match rec(ctx, b, sub2, model2, x, Some(measure))? {
                RecOutcome::Violation(m) => return Ok(RecOutcome::Violation(m)),
                RecOutcome::Iface(c) => {
                    let iface = b.new_bag(&model);
                    b.td_edges.push((iface, c));
                    return Ok(RecOutcome::Iface(iface));
                }
            }
        }
    }

    // attachment vertices z_i, the smallest neighbor of each branch set
    // inside Z
    let attach: Vec<usize> = model
        .iter()
        .map(|&p| {
            ctx.g
                .open_neighborhood(&b.parts[p])
                .intersection(&z)
                .min_vertex()
                .expect("case 2 ruled out empty boundaries")
        })
        .collect();

    let view = ctx.g.induced(&z)?;
    match st_dichotomy(&view.graph, ctx.ell)? {
        STOutcome::Tree { root, parent, radius } => {
            // Case 3: bundle the root-to-attachment paths into a new
            // branch set
            debug_assert!(radius <= ctx.d);
            let mut verts = vec![view.to_parent(root)];
            for &zi in &attach {
                let mut cur = view.to_local(zi).expect("attachment lies in Z");
                verts.push(zi);
                while let Some(p) = parent[cur] {
                    verts.push(view.to_parent(p));
                    cur = p;
                }
            }
            let u_new = VertexSet::new(verts);
            if u_new.len() > model.len() * ctx.d + 1 {
                return Err(Error::InvalidInput(format!(
                    "branch set of {} vertices exceeds kd+1 = {}",
                    u_new.len(),
                    model.len() * ctx.d + 1
                )));
            }
            if model.len() + 1 == ctx.h {
                let mut branch_sets: Vec<VertexSet> =
                    model.iter().map(|&p| b.parts[p].clone()).collect();
                let mut centers: Vec<usize> =
                    model.iter().map(|&p| b.centers[p].expect("branch parts have centers")).collect();
                branch_sets.push(u_new);
                centers.push(view.to_parent(root));
                return Ok(RecOutcome::Violation(ShallowModel {
                    branch_sets,
                    centers,
                    depth: ctx.d,
                }));
            }
            let idx = b.new_part(u_new, view.to_parent(root));
            let mut model3 = model.clone();
            model3.push(idx);
            rec(ctx, b, sub, model3, x, Some(measure))
        }
        STOutcome::Cut { s, t } => {
            // Case 4: split Z along the sparse cut, dumping the boundary
            // of the smaller side into X
            let mut s = view.lift(&s);
            let mut t = view.lift(&t);
            let swap = match s.len().cmp(&t.len()) {
                core::cmp::Ordering::Greater => true,
                core::cmp::Ordering::Equal => !s.contains(z.min_vertex().expect("Z nonempty")),
                core::cmp::Ordering::Less => false,
            };
            if swap {
                core::mem::swap(&mut s, &mut t);
            }
            let s_local = view.restrict(&s);
            let ns = view.lift(&view.graph.open_neighborhood(&s_local));
            let x_new = x.union(&ns);
            let sub1 = u_union.union(&x_new).union(&s);
            let sub2 = u_union.union(&x_new).union(&t.difference(&ns));
            let c1 = match rec(ctx, b, sub1, model.clone(), x_new.clone(), Some(measure))? {
                RecOutcome::Violation(m) => return Ok(RecOutcome::Violation(m)),
                RecOutcome::Iface(c) => c,
            };
            let c2 = match rec(ctx, b, sub2, model.clone(), x_new, Some(measure))? {
                RecOutcome::Violation(m) => return Ok(RecOutcome::Violation(m)),
                RecOutcome::Iface(c) => c,
            };
            let iface = b.new_bag(&model);
            b.td_edges.push((iface, c1));
            b.td_edges.push((iface, c2));
            Ok(RecOutcome::Iface(iface))
        }
    }
}

/// Parameter report of the polynomial-expansion driver: the derived
/// recursion parameters and the closed-form bounds they promise.
#[derive(Debug, Clone)]
pub struct PolyexpReport {
    pub a: f64,
    pub c: f64,
    pub gamma: f64,
    pub epsilon: f64,
    pub ell: f64,
    pub d: usize,
    pub h: usize,
    pub predicted_apex: f64,
    pub predicted_host_tw: f64,
    pub predicted_width: f64,
    /// Some promised bound is no better than `n` at this size.
    pub vacuous: bool,
}

/// Derives `l`, `d` and `h` from the expansion exponent `a`, constant
/// `c` and target exponent `gamma`, then runs the partition recursion.
/// Logarithms are binary throughout.
pub fn polyexp_partition(
    g: &Graph,
    a: f64,
    c: f64,
    gamma: f64,
) -> Result<(ExpansionOutcome, PolyexpReport), Error> {
    if !(a > 0.0) || !(c > 0.0) {
        return Err(Error::InvalidInput(String::from("a and c must be positive")));
    }
    if !(gamma > 0.0 && gamma < a / (2.0 * a + 1.0)) {
        return Err(Error::InvalidInput(format!(
            "gamma must lie in (0, a/(2a+1)) = (0, {})",
            a / (2.0 * a + 1.0)
        )));
    }
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::BelowThreshold(String::from("need n >= 2")));
    }
    let logn = math::log2(n as f64);
    let threshold = math::powf(logn, a / gamma - 1.0);
    if (n as f64) < threshold {
        return Err(Error::BelowThreshold(format!(
            "n = {n} is below (log n)^(a/gamma - 1) = {threshold:.3}"
        )));
    }
    let epsilon = gamma / a;
    let ell = (math::powf(n as f64, epsilon) * math::powf(logn, epsilon - 1.0)).max(1.0);
    let d = st_radius_threshold(n, ell);
    let h = math::floor_cap(c * math::powf((d + 1) as f64, a)) + 1;
    let nlogn = n as f64 * logn;
    let predicted_apex = math::powf(nlogn, 1.0 - gamma / a);
    let predicted_width = c * math::powf(8.0, a + 1.0) * math::powf(nlogn, gamma * (1.0 + 1.0 / a));
    let report = PolyexpReport {
        a,
        c,
        gamma,
        epsilon,
        ell,
        d,
        h,
        predicted_apex,
        predicted_host_tw: c * math::powf(8.0, a) * math::powf(nlogn, gamma),
        predicted_width,
        vacuous: predicted_apex >= n as f64 || predicted_width >= n as f64,
    };
    let outcome = expansion_partition(g, ell, h)?;
    Ok((outcome, report))
}

/// Folds the apex set back in as one part under a new dominant host
/// vertex. With an empty apex set the input is returned unchanged.
pub fn dominate_merge(
    res: &ExpansionResult,
    g: &Graph,
) -> Result<(HPartition, TreeDecomposition), Error> {
    res.verify(g).map_err(|e| Error::InvalidInput(format!("input result invalid: {e}")))?;
    if res.y.is_empty() {
        return Ok((res.partition.clone(), res.host_tw_witness.clone()));
    }
    let old = res.partition.parts.len();
    let mut parts = res.partition.parts.clone();
    parts.push(res.y.clone());
    let mut edges = res.partition.host.edges();
    for i in 0..old {
        edges.push((i, old));
    }
    let host = Graph::build(old + 1, &edges)?;
    let bags: Vec<VertexSet> = res
        .host_tw_witness
        .bags
        .iter()
        .map(|bag| {
            let mut b: Vec<usize> = bag.iter().collect();
            b.push(old);
            VertexSet::new(b)
        })
        .collect();
    let witness = TreeDecomposition { tree: res.host_tw_witness.tree.clone(), bags };
    let merged = HPartition { parts, host };
    let cert = crate::partition::verify_hpartition(g, &merged);
    if !cert.valid {
        return Err(Error::InvalidInput(format!(
            "merged partition invalid: {:?}",
            cert.violations[0]
        )));
    }
    Ok((merged, witness))
}
