use shockgraph::geom::{Point2, Rect};
use shockgraph::oracle::{compute_field, extract_shock_cells, hausdorff, sample_shocks};
use shockgraph::pipeline::{run_scene, RunConfig};
use shockgraph::random::{random_scene, SceneSpec, SplitMix64};

const H: f64 = 0.5;

fn inside(r: &Rect, p: &Point2) -> bool {
    r.contains(*p)
}

/// Hausdorff distance between the unregularized shock set and the oracle
/// cells, both clipped to the image shrunk by `2h`.
fn scene_distance(seed: u64) -> f64 {
    let mut rng = SplitMix64::new(seed);
    let spec = SceneSpec {
        width: 100.0,
        height: 100.0,
        fragments: rng.int(10, 40),
        min_vertices: 2,
        max_vertices: 4,
    };
    let scene = random_scene(seed, &spec);
    let out = run_scene(&scene, &RunConfig::unregularized()).unwrap();
    let g = &out.full;
    let image = Rect::new(Point2::ORIGIN, Point2::new(scene.width, scene.height));
    let field = compute_field(&g.elements, image, H).unwrap();
    let window = image.expanded(-2.0 * H);
    let cells: Vec<Point2> = extract_shock_cells(&field, &g.elements, H)
        .into_iter()
        .filter(|p| inside(&window, p))
        .collect();
    let shocks: Vec<Point2> = sample_shocks(g, H / 4.0)
        .into_iter()
        .filter(|p| inside(&window, p))
        .collect();
    hausdorff(&shocks, &cells)
}

#[test]
fn analytic_shocks_match_grid_oracle() {
    let mut worst = 0.0f64;
    for seed in 0..20u64 {
        let d = scene_distance(seed);
        println!("scene {seed}: hausdorff {d:.4}");
        worst = worst.max(d);
    }
    assert!(worst <= 2.0 * H, "worst hausdorff {worst}");
}
