use proptest::prelude::*;
use shockgraph::contour::{simplify_polyline, ContourFragment, Scene};
use shockgraph::geom::Point2;
use shockgraph::graph::{NodeLabel, ShockGraph};
use shockgraph::pipeline::{run_scene, RunConfig};
use shockgraph::random::{random_scene, SceneSpec};
use shockgraph::regularize::{prune, removal_thresholds};

fn ngon(n: usize, c: Point2, r: f64) -> ContourFragment {
    let v = (0..n)
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / n as f64;
            Point2::new(c.x + r * a.cos(), c.y + r * a.sin())
        })
        .collect();
    ContourFragment::closed(0, v)
}

fn square_scene() -> Scene {
    let v = vec![
        Point2::new(4.0, 4.0),
        Point2::new(6.0, 4.0),
        Point2::new(6.0, 6.0),
        Point2::new(4.0, 6.0),
    ];
    Scene::new(10.0, 10.0, vec![ContourFragment::closed(0, v)])
}

fn interior_nodes(g: &shockgraph::graph::ShockGraph, lo: Point2, hi: Point2) -> Vec<(Point2, f64)> {
    g.nodes
        .iter()
        .filter(|n| n.location.x > lo.x && n.location.x < hi.x && n.location.y > lo.y && n.location.y < hi.y)
        .map(|n| (n.location, n.radius))
        .collect()
}

#[test]
fn polygon_circle_prunes_to_its_center() {
    let c = Point2::new(10.0, 10.0);
    let scene = Scene::new(20.0, 20.0, vec![ngon(64, c, 1.0)]);
    let out = run_scene(&scene, &RunConfig::default()).unwrap();
    let inside = interior_nodes(&out.graph, Point2::new(9.0, 9.0), Point2::new(11.0, 11.0));
    assert_eq!(inside.len(), 1, "{inside:?}");
    let (p, r) = inside[0];
    assert!(p.dist(c) < 0.05 && (r - 1.0).abs() < 0.05, "{p:?} {r}");
    assert!(out.graph.links.iter().all(|l| {
        let a = &out.graph.nodes[l.from].location;
        a.dist(c) > 1.0
    }));
}

#[test]
fn square_keeps_diagonals_at_small_lambda() {
    let cfg = RunConfig {
        lambda: 0.1,
        ..RunConfig::default()
    };
    let out = run_scene(&square_scene(), &cfg).unwrap();
    let lo = Point2::new(4.0 - 1e-9, 4.0 - 1e-9);
    let hi = Point2::new(6.0 + 1e-9, 6.0 + 1e-9);
    let centre = out
        .graph
        .nodes
        .iter()
        .find(|n| n.location.dist(Point2::new(5.0, 5.0)) < 1e-6)
        .expect("centre node");
    assert_eq!(centre.degree(), 4);
    assert!((centre.radius - 1.0).abs() < 1e-9);
    let corners = interior_nodes(&out.graph, lo, hi).len();
    assert_eq!(corners, 5);
}

#[test]
fn square_collapses_to_centre_at_unit_lambda() {
    let out = run_scene(&square_scene(), &RunConfig::default()).unwrap();
    let lo = Point2::new(3.9, 3.9);
    let hi = Point2::new(6.1, 6.1);
    let inside = interior_nodes(&out.graph, lo, hi);
    assert_eq!(inside.len(), 1, "{inside:?}");
    assert!(inside[0].0.dist(Point2::new(5.0, 5.0)) < 1e-9);
    assert!(out.graph.pruned.len() >= 4);
}

#[test]
fn pruning_is_monotone_and_idempotent() {
    let scenes = [
        square_scene(),
        Scene::new(20.0, 20.0, vec![ngon(64, Point2::new(10.0, 10.0), 1.0)]),
        Scene::new(40.0, 40.0, vec![ngon(7, Point2::new(20.0, 20.0), 9.0)]),
    ];
    for scene in &scenes {
        let full = run_scene(scene, &RunConfig::unregularized()).unwrap().full;
        let death = removal_thresholds(&full);
        let lambdas = [0.0, 0.25, 0.5, 1.0, 2.0, 4.0];
        let mut prev: Vec<usize> = Vec::new();
        for &lam in &lambdas {
            let g = prune(&full, lam);
            let mut gone: Vec<usize> = g.pruned.iter().map(|l| l.id).collect();
            gone.sort_unstable();
            assert!(prev.iter().all(|id| gone.binary_search(id).is_ok()));
            assert!(gone.iter().all(|&id| death[id] <= lam));
            let again = prune(&g, lam);
            assert_same_graph(&again, &g);
            prev = gone;
        }
    }
}

fn assert_same_graph(a: &ShockGraph, b: &ShockGraph) {
    assert_eq!(a.nodes.len(), b.nodes.len());
    assert_eq!(a.links.len(), b.links.len());
    for (x, y) in a.nodes.iter().zip(&b.nodes) {
        assert!(
            x.location.dist(y.location) <= 1e-9,
            "{:?} moved to {:?}",
            y.location,
            x.location
        );
    }
}

fn components(g: &ShockGraph) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..g.nodes.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for l in &g.links {
        let (a, b) = (find(&mut parent, l.from), find(&mut parent, l.to));
        parent[a] = b;
    }
    (0..g.nodes.len()).map(|n| find(&mut parent, n)).collect()
}

/// Surviving junctions and sinks that were connected stay connected.
fn check_topology_safety(full: &ShockGraph, pruned: &ShockGraph) {
    let before = components(full);
    let after = components(pruned);
    let kept: Vec<(usize, usize)> = pruned
        .nodes
        .iter()
        .filter(|n| matches!(n.label, NodeLabel::Junction | NodeLabel::Sink))
        .filter_map(|n| {
            full.nodes
                .iter()
                .find(|m| m.location.dist(n.location) <= 1e-9)
                .map(|m| (n.id, m.id))
        })
        .collect();
    for (i, &(a, fa)) in kept.iter().enumerate() {
        for &(b, fb) in &kept[i + 1..] {
            if before[fa] == before[fb] {
                assert_eq!(after[a], after[b], "nodes {a} and {b} were disconnected by pruning");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn pruning_keeps_surviving_nodes_connected(seed in 0u64..1_000_000, fragments in 3usize..16) {
        let spec = SceneSpec { width: 100.0, height: 100.0, fragments, min_vertices: 2, max_vertices: 5 };
        let full = run_scene(&random_scene(seed, &spec), &RunConfig::unregularized()).unwrap().full;
        for lam in [0.5, 1.0, 2.0, 4.0] {
            check_topology_safety(&full, &prune(&full, lam));
        }
    }

    #[test]
    fn random_pruning_is_monotone_and_idempotent(seed in 0u64..1_000_000, fragments in 3usize..16) {
        let spec = SceneSpec { width: 100.0, height: 100.0, fragments, min_vertices: 2, max_vertices: 5 };
        let full = run_scene(&random_scene(seed, &spec), &RunConfig::unregularized()).unwrap().full;
        let mut prev: Vec<usize> = Vec::new();
        for lam in [0.0, 0.25, 0.5, 1.0, 2.0] {
            let g = prune(&full, lam);
            let mut gone: Vec<usize> = g.pruned.iter().map(|l| l.id).collect();
            gone.sort_unstable();
            prop_assert!(prev.iter().all(|id| gone.binary_search(id).is_ok()));
            assert_same_graph(&prune(&g, lam), &g);
            prev = gone;
        }
    }
}

/// Densely sampled ellipse.
fn ellipse(a: f64, b: f64, n: usize) -> ContourFragment {
    let v = (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            Point2::new(100.0 + a * t.cos(), 100.0 + b * t.sin())
        })
        .collect();
    ContourFragment::closed(0, v)
}

#[test]
fn pruned_graph_does_not_depend_on_the_polyline() {
    let curve = ellipse(40.0, 20.0, 6000);
    let graphs: Vec<(f64, ShockGraph)> = [0.2, 0.4, 0.8]
        .into_iter()
        .map(|eps| {
            let scene = Scene::new(200.0, 200.0, vec![simplify_polyline(&curve, eps).unwrap()]);
            (eps, run_scene(&scene, &RunConfig::default()).unwrap().graph)
        })
        .collect();
    for (i, (ea, a)) in graphs.iter().enumerate() {
        for (eb, b) in &graphs[i + 1..] {
            assert_eq!(a.nodes.len(), b.nodes.len(), "eps {ea} vs {eb}");
            assert_eq!(a.links.len(), b.links.len(), "eps {ea} vs {eb}");
            let tol = 2.0 * ea.max(*eb);
            for (x, y) in [(a, b), (b, a)] {
                for n in &x.nodes {
                    let d = y
                        .nodes
                        .iter()
                        .map(|m| m.location.dist(n.location))
                        .fold(f64::INFINITY, f64::min);
                    assert!(d <= tol, "eps {ea} vs {eb}: node at {:?} off by {d}", n.location);
                }
            }
        }
    }
    // the major axis survives with a sink at the centre
    let (_, g) = &graphs[0];
    let centre = g
        .nodes
        .iter()
        .find(|n| n.location.dist(Point2::new(100.0, 100.0)) < 0.1)
        .unwrap();
    assert_eq!(centre.degree(), 2);
}
