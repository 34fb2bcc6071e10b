//! Property tests for the structural invariants every separator and
//! partition contract relies on.

use proptest::prelude::*;

use prodstruct_core::decomposition::{
    check_normal_conditions, condition_d_holds, exact_treewidth, heuristic_tree_decomposition,
    normalize, validate_decomposition,
};
use prodstruct_core::graph::{Graph, VertexSet};
use prodstruct_core::instances::{generate, FamilySpec, SplitMix64};
use prodstruct_core::partition::{
    star_partition_from_treewidth, tdd_partition, treewidth_tdd_partition, verify_hpartition,
    path_lower_bound_check, tw_td_width_bound,
};
use prodstruct_core::separators::{tree_separator, CentroidEngine, ClassGuarantee};

fn clean_edges(n: usize, raw: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    raw.into_iter()
        .filter(|&(u, v)| u != v && u < n && v < n)
        .collect()
}

proptest! {
    #[test]
    fn components_are_a_partition(n in 1usize..12, raw in prop::collection::vec((0usize..12, 0usize..12), 0..30)) {
        let g = Graph::build(n, &clean_edges(n, raw)).unwrap();
        let comps = g.components();
        let mut seen = vec![false; n];
        for c in &comps {
            for v in c.iter() {
                prop_assert!(!seen[v], "vertex {v} in two components");
                seen[v] = true;
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
        // ordered by smallest member
        for w in comps.windows(2) {
            prop_assert!(w[0].min_vertex() < w[1].min_vertex());
        }
    }

    #[test]
    fn no_edge_crosses_components_of_g_minus_s(
        n in 2usize..12,
        raw in prop::collection::vec((0usize..12, 0usize..12), 0..30),
        s_bits in 0u32..4096,
    ) {
        let g = Graph::build(n, &clean_edges(n, raw)).unwrap();
        let s: VertexSet = (0..n).filter(|&v| s_bits >> v & 1 == 1).collect();
        let comps = g.components_within(&s.complement(n));
        let mut owner = vec![usize::MAX; n];
        for (i, c) in comps.iter().enumerate() {
            for v in c.iter() {
                owner[v] = i;
            }
        }
        for (u, v) in g.edges() {
            if !s.contains(u) && !s.contains(v) {
                prop_assert_eq!(owner[u], owner[v], "edge ({}, {}) crosses components", u, v);
            }
        }
        // each piece is connected inside g
        for c in &comps {
            prop_assert_eq!(g.components_within(c).len(), 1);
        }
    }

    #[test]
    fn bfs_edges_stay_within_adjacent_layers(
        n in 1usize..12,
        raw in prop::collection::vec((0usize..12, 0usize..12), 0..40),
    ) {
        let g = Graph::build(n, &clean_edges(n, raw)).unwrap();
        if let Ok(lay) = g.bfs_layers(0) {
            let mut level = vec![0usize; n];
            for (i, l) in lay.layers.iter().enumerate() {
                for v in l.iter() {
                    level[v] = i;
                }
            }
            for (u, v) in g.edges() {
                prop_assert!(level[u].abs_diff(level[v]) <= 1);
            }
        }
    }

    #[test]
    fn exact_treewidth_never_exceeds_heuristic(
        n in 1usize..9,
        raw in prop::collection::vec((0usize..9, 0usize..9), 0..20),
    ) {
        let g = Graph::build(n, &clean_edges(n, raw)).unwrap();
        let heur = heuristic_tree_decomposition(&g);
        prop_assert!(validate_decomposition(&g, &heur).ok);
        let (tw, td) = exact_treewidth(&g, 20).unwrap();
        prop_assert!(validate_decomposition(&g, &td).ok);
        prop_assert!(tw <= heur.width());
    }
}

/// Random partial k-tree: a seeded k-tree with a fraction of its edges
/// removed.
fn random_partial_ktree(n: usize, k: usize, seed: u64) -> Graph {
    let inst = generate(&FamilySpec::KTree { n, k, seed }).unwrap();
    let mut rng = SplitMix64::new(seed ^ 0xabcdef);
    let edges: Vec<(usize, usize)> = inst
        .graph
        .edges()
        .into_iter()
        .filter(|_| rng.below(5) != 0) // keep ~80%
        .collect();
    Graph::build(n, &edges).unwrap()
}

#[test]
fn normalize_invariants_on_random_partial_ktrees() {
    let mut checked_sets = 0usize;
    for seed in 0..30u64 {
        let k = 1 + (seed % 3) as usize;
        let n = 8 + (seed % 20) as usize * 2;
        let g = random_partial_ktree(n, k, seed);
        let td = heuristic_tree_decomposition(&g);
        let nd = normalize(&g, &td).unwrap();
        check_normal_conditions(&g, &nd).unwrap();
        let t = nd.td.node_count();
        if t <= 12 {
            // exhaustive over nonempty node sets
            for bits in 1u32..(1 << t) {
                let s: VertexSet = (0..t).filter(|&x| bits >> x & 1 == 1).collect();
                assert!(condition_d_holds(&nd, &s), "(d) failed, seed {seed}");
                checked_sets += 1;
            }
        } else {
            let mut rng = SplitMix64::new(seed);
            for _ in 0..50 {
                let size = 1 + rng.below(t - 1);
                let s: VertexSet = (0..size).map(|_| rng.below(t)).collect();
                assert!(condition_d_holds(&nd, &s), "(d) failed, seed {seed}");
                checked_sets += 1;
            }
        }
    }
    assert!(checked_sets > 1000);
}

#[test]
fn tree_separator_postcondition_on_random_trees() {
    for seed in 0..100u64 {
        let mut rng = SplitMix64::new(seed.wrapping_mul(77));
        let n = 2 + rng.below(499);
        let inst = generate(&FamilySpec::RandomTree { n, seed, max_degree: None }).unwrap();
        let g = &inst.graph;
        let p = 1 + rng.below(4);
        // smallest feasible q for this (n, p)
        let q = (1..=n).find(|&q| n <= p * q + p + q - 1).unwrap();
        let s = tree_separator(g, p, q).unwrap();
        assert!(s.len() <= p, "seed {seed}");
        assert!(g.max_component_size(&s) <= q, "seed {seed}");
    }
}

#[test]
fn tdd_partition_structure_and_bound_on_random_trees() {
    // the centroid engine meets sep <= 1 <= 1 * m^(1/2) on every induced
    // subgraph of a tree, so the width bound is guaranteed, not merely
    // observed
    let guar = ClassGuarantee::new(1.0, 0.5).unwrap();
    for seed in 0..10u64 {
        let n = 30 + (seed as usize) * 17;
        let inst = generate(&FamilySpec::RandomTree { n, seed, max_degree: None }).unwrap();
        for d in 1..=3usize {
            let (p, forest) = tdd_partition(&inst.graph, &CentroidEngine, &guar, d).unwrap();
            assert!(verify_hpartition(&inst.graph, &p).valid);
            assert!(forest.vertex_height() <= d);
            assert_eq!(p.host, forest.closure());
            let bound = prodstruct_core::partition::tdd_width_bound(&guar, n, d);
            assert!(
                (p.width() as f64) <= bound * (1.0 + 1e-9),
                "seed {seed} d={d}: width {} > {bound}",
                p.width()
            );
        }
    }
}

#[test]
fn depth_schedules_deliver_their_end_to_end_bounds() {
    use prodstruct_core::partition::{choose_depth, DepthSchedule};
    let guar = ClassGuarantee::new(1.0, 0.5).unwrap();
    for (seed, n) in [(1u64, 100usize), (2, 400), (3, 1500)] {
        let inst = generate(&FamilySpec::RandomTree { n, seed, max_degree: None }).unwrap();
        // fixed exponent gap
        for delta in [1.0 / 6.0, 0.1] {
            let choice = choose_depth(n, &guar, DepthSchedule::FixedDelta(delta)).unwrap();
            let (p, forest) =
                tdd_partition(&inst.graph, &CentroidEngine, &guar, choice.d).unwrap();
            assert!(forest.vertex_height() <= choice.d);
            assert!(
                (p.width() as f64) <= choice.bound(n) * (1.0 + 1e-9),
                "n={n} delta={delta}: width {} > {}",
                p.width(),
                choice.bound(n)
            );
        }
        // zero gap at log log depth: width <= 2c/(2^eps - 1) * n^(1-eps)
        let choice = choose_depth(n, &guar, DepthSchedule::LogLog).unwrap();
        let (p, forest) = tdd_partition(&inst.graph, &CentroidEngine, &guar, choice.d).unwrap();
        assert!(forest.vertex_height() <= choice.d);
        assert!(
            (p.width() as f64) <= choice.bound(n) * (1.0 + 1e-9),
            "n={n} loglog: width {} > {}",
            p.width(),
            choice.bound(n)
        );
        // slowly growing depth
        let h = (n as f64).log2().log2().max(1.1);
        let choice = choose_depth(n, &guar, DepthSchedule::SlowH(h)).unwrap();
        let (p, _) = tdd_partition(&inst.graph, &CentroidEngine, &guar, choice.d).unwrap();
        assert!((p.width() as f64) <= choice.bound(n) * (1.0 + 1e-9));
    }
}

#[test]
fn treewidth_tdd_bound_on_random_trees_and_2trees_50_seeds() {
    // 50 seeds per family, sizes spread up to 2000
    for seed in 0..50u64 {
        for k in [1usize, 2] {
            let n = 40 + ((seed as usize * 397) % 1961);
            let inst = if k == 1 {
                generate(&FamilySpec::RandomTree { n, seed, max_degree: None }).unwrap()
            } else {
                generate(&FamilySpec::KTree { n, k, seed }).unwrap()
            };
            let base = inst
                .decomposition
                .clone()
                .unwrap_or_else(|| heuristic_tree_decomposition(&inst.graph));
            let nd = normalize(&inst.graph, &base).unwrap();
            for d in 2..=4usize {
                let (p, forest) = treewidth_tdd_partition(&inst.graph, &nd, d).unwrap();
                assert!(verify_hpartition(&inst.graph, &p).valid);
                assert!(forest.vertex_height() <= d);
                let bound = tw_td_width_bound(nd.k, n, d);
                assert!(
                    (p.width() as f64) <= bound * (1.0 + 1e-9),
                    "{} d={d}: width {} > {bound}",
                    inst.name,
                    p.width()
                );
            }
        }
    }
}

#[test]
fn expansion_on_planar_like_instances() {
    // 50 grids and grid subgraphs with h = 5: the host witness stays
    // within width 3 and the apex set within n / l
    let mut count = 0usize;
    for seed in 0..50u64 {
        let rows = 3 + (seed as usize % 6);
        let cols = 3 + ((seed as usize / 6) % 6);
        let grid = generate(&FamilySpec::Grid { rows, cols }).unwrap();
        let g = if seed % 2 == 0 {
            grid.graph
        } else {
            // random induced grid subgraph, keeping ~85% of the vertices
            let mut rng = SplitMix64::new(seed);
            let keep: VertexSet = (0..grid.graph.vertex_count())
                .filter(|_| rng.below(7) != 0)
                .collect();
            grid.graph.induced(&keep).unwrap().graph
        };
        if g.vertex_count() == 0 {
            continue;
        }
        let ell = 2.0;
        match prodstruct_core::expansion::expansion_partition(&g, ell, 5).unwrap() {
            prodstruct_core::expansion::ExpansionOutcome::Partitioned(res) => {
                res.verify(&g).unwrap();
                assert!(res.host_tw_witness.width() <= 3, "seed {seed}");
                assert!((res.y.len() as f64) <= g.vertex_count() as f64 / ell, "seed {seed}");
                count += 1;
            }
            prodstruct_core::expansion::ExpansionOutcome::PromiseViolation(_) => {
                panic!("seed {seed}: planar instances exclude K_5 models")
            }
        }
    }
    assert!(count >= 45);
}

#[test]
fn expansion_outcomes_cross_checked_against_exhaustive_model_search() {
    use prodstruct_core::expansion::{
        expansion_partition, find_shallow_clique_model, st_radius_threshold,
        verify_shallow_model, ExpansionOutcome,
    };
    let mut partitioned = 0usize;
    let mut violated = 0usize;
    for seed in 0..80u64 {
        let mut rng = SplitMix64::new(seed * 101 + 7);
        let n = 4 + rng.below(5); // up to 8 vertices, exhaustive search stays cheap
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.below(10) < 4 {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::build(n, &edges).unwrap();
        if g.vertex_count() == 0 {
            continue;
        }
        let ell = [1.0, 1.5, 2.0][(seed % 3) as usize];
        let h = 3;
        let d = st_radius_threshold(n, ell);
        let oracle = find_shallow_clique_model(&g, h, d, 12).unwrap();
        match expansion_partition(&g, ell, h).unwrap() {
            ExpansionOutcome::Partitioned(res) => {
                res.verify(&g).unwrap();
                // the recursion must succeed whenever no model exists
                partitioned += 1;
            }
            ExpansionOutcome::PromiseViolation(m) => {
                assert!(verify_shallow_model(&g, &m), "seed {seed}: bad violation model");
                assert!(
                    oracle.is_some(),
                    "seed {seed}: violation reported but exhaustive search finds no model"
                );
                violated += 1;
            }
        }
        if oracle.is_none() {
            // theorem direction: model-free graphs always partition
            assert!(
                matches!(expansion_partition(&g, ell, h).unwrap(), ExpansionOutcome::Partitioned(_)),
                "seed {seed}: model-free graph failed to partition"
            );
        }
    }
    assert!(partitioned > 0 && violated > 0, "stress must exercise both outcomes");
}

#[test]
fn treewidth_tdd_bound_on_random_dense_graphs() {
    // the bound holds with k = the supplied decomposition's width on any
    // graph, tree-like or not
    for seed in 0..30u64 {
        let mut rng = SplitMix64::new(seed * 911 + 5);
        let n = 10 + rng.below(31);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.below(10) < 3 {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::build(n, &edges).unwrap();
        let nd = normalize(&g, &heuristic_tree_decomposition(&g)).unwrap();
        for d in 1..=4usize {
            let (p, forest) = treewidth_tdd_partition(&g, &nd, d).unwrap();
            assert!(verify_hpartition(&g, &p).valid, "seed {seed} d={d}");
            assert!(forest.vertex_height() <= d, "seed {seed} d={d}");
            let bound = tw_td_width_bound(nd.k, n, d);
            assert!(
                (p.width() as f64) <= bound * (1.0 + 1e-9),
                "seed {seed} d={d}: width {} > {bound}",
                p.width()
            );
        }
    }
}

#[test]
fn treewidth_separator_cross_checked_with_brute_force() {
    use prodstruct_core::separators::treewidth_separator;
    for seed in 0..40u64 {
        let mut rng = SplitMix64::new(seed * 271 + 3);
        let n = 6 + rng.below(7);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.below(10) < 4 {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::build(n, &edges).unwrap();
        let nd = normalize(&g, &heuristic_tree_decomposition(&g)).unwrap();
        let k = nd.k;
        for q in 1..=n {
            for p in k + 1..=n {
                let feasible =
                    (n as u128) <= (p / (k + 1)) as u128 * (q as u128 + 1) + q as u128 + k as u128 - 1;
                match treewidth_separator(&g, &nd, p, q) {
                    Ok(s) => {
                        assert!(feasible, "seed {seed} p={p} q={q}: accepted but infeasible");
                        assert!(s.len() <= p);
                        assert!(g.max_component_size(&s) <= q);
                    }
                    Err(_) => {
                        assert!(!feasible, "seed {seed} p={p} q={q}: rejected but feasible")
                    }
                }
            }
        }
    }
}

#[test]
fn tree_separator_zero_budget() {
    use prodstruct_core::separators::tree_separator;
    let inst = generate(&FamilySpec::Path { n: 4 }).unwrap();
    // feasible with p = 0 only when the whole tree fits under q
    let s = tree_separator(&inst.graph, 0, 5).unwrap();
    assert!(s.is_empty());
    assert!(tree_separator(&inst.graph, 0, 4).is_err()); // n <= q - 1 fails
}

#[test]
fn exact_tree_depth_witness_always_embeds() {
    for seed in 0..30u64 {
        let mut rng = SplitMix64::new(seed * 13 + 1);
        let n = 2 + rng.below(9);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.below(3) == 0 {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::build(n, &edges).unwrap();
        let (td, forest) =
            prodstruct_core::decomposition::exact_tree_depth(&g, 15).unwrap();
        assert_eq!(forest.vertex_height(), td, "seed {seed}");
        assert!(
            prodstruct_core::decomposition::verify_closure_embedding(&g, &forest).unwrap(),
            "seed {seed}"
        );
    }
}

#[test]
fn treewidth_tdd_on_paths_respects_converse() {
    for n in [8usize, 20, 50, 100, 333] {
        let inst = generate(&FamilySpec::Path { n }).unwrap();
        let nd = normalize(&inst.graph, inst.decomposition.as_ref().unwrap()).unwrap();
        for d in 1..=4usize {
            let (p, _) = treewidth_tdd_partition(&inst.graph, &nd, d).unwrap();
            assert!(
                path_lower_bound_check(n, d, p.width()),
                "P_{n} d={d}: width {} contradicts the converse",
                p.width()
            );
        }
    }
}

#[test]
fn star_from_treewidth_sqrt_bound_across_families() {
    for seed in 0..6u64 {
        for k in 1..=3usize {
            let n = 25 + (seed as usize) * 21;
            let inst = if k == 1 {
                generate(&FamilySpec::RandomTree { n, seed, max_degree: None }).unwrap()
            } else {
                generate(&FamilySpec::KTree { n, k, seed }).unwrap()
            };
            let base = inst
                .decomposition
                .clone()
                .unwrap_or_else(|| heuristic_tree_decomposition(&inst.graph));
            let nd = normalize(&inst.graph, &base).unwrap();
            let p = star_partition_from_treewidth(&inst.graph, &nd).unwrap();
            assert!(verify_hpartition(&inst.graph, &p).valid);
            let target = (((nd.k + 1) * n) as f64).sqrt().ceil() as usize;
            assert!(p.width() <= target, "{}: {} > {target}", inst.name, p.width());
            // host is literally a star
            let host = &p.host;
            for i in 1..p.parts.len() {
                assert!(host.has_edge(0, i));
            }
            assert_eq!(host.edge_count(), p.parts.len().saturating_sub(1));
        }
    }
}
