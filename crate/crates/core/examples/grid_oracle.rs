//! Brute-force grid check of an analytic shock graph: the Hausdorff
//! distance between the shock links and the oracle's shock cells.
//!
//! ```text
//! cargo run --release --example grid_oracle [SEED] [FIELD.pgm]
//! ```

use shockgraph::geom::{Point2, Rect};
use shockgraph::oracle::{compute_field, extract_shock_cells, hausdorff, sample_shocks};
use shockgraph::pipeline::{run_scene, RunConfig};
use shockgraph::random::{random_scene, SceneSpec};

fn main() -> shockgraph::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let spec = SceneSpec {
        width: 100.0,
        height: 100.0,
        fragments: 25,
        min_vertices: 2,
        max_vertices: 4,
    };
    let scene = random_scene(seed, &spec);
    let g = run_scene(&scene, &RunConfig::unregularized())?.full;

    let h = 0.5;
    let image = Rect::new(Point2::ORIGIN, Point2::new(scene.width, scene.height));
    let field = compute_field(&g.elements, image, h)?;
    let window = image.expanded(-2.0 * h);
    let cells: Vec<Point2> = extract_shock_cells(&field, &g.elements, h)
        .into_iter()
        .filter(|p| window.contains(*p))
        .collect();
    let shocks: Vec<Point2> = sample_shocks(&g, h / 4.0)
        .into_iter()
        .filter(|p| window.contains(*p))
        .collect();
    println!(
        "seed {seed}: {} elements, {} links, {} oracle cells, {} shock samples",
        g.elements.len(),
        g.links.len(),
        cells.len(),
        shocks.len()
    );
    println!("hausdorff {:.4} px (grid h = {h})", hausdorff(&shocks, &cells));

    if let Some(path) = std::env::args().nth(2) {
        shockgraph::export::write_atomic(path.as_ref(), &field.to_pgm())?;
        println!("distance field written to {path}");
    }
    Ok(())
}
