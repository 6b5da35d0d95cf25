//! Regularization of a 64-gon approximating a unit circle: as lambda grows
//! the polygon's corner branches are pruned and one central node remains.
//!
//! ```text
//! cargo run --release --example regularize_circle
//! ```

use std::f64::consts::TAU;

use shockgraph::contour::{ContourFragment, Scene};
use shockgraph::geom::Point2;
use shockgraph::pipeline::{run_scene, RunConfig};
use shockgraph::regularize::{prune, removal_thresholds};

fn main() -> shockgraph::Result<()> {
    let c = Point2::new(10.0, 10.0);
    let ring = (0..64)
        .map(|k| {
            let a = TAU * k as f64 / 64.0;
            Point2::new(c.x + a.cos(), c.y + a.sin())
        })
        .collect();
    let scene = Scene::new(20.0, 20.0, vec![ContourFragment::closed(0, ring)]);
    let full = run_scene(&scene, &RunConfig::unregularized())?.full;

    let inside = |p: Point2| p.dist(c) < 1.0;
    let mut thresholds = removal_thresholds(&full);
    thresholds.sort_by(f64::total_cmp);
    println!(
        "{} links; smallest removal thresholds {:?}",
        full.links.len(),
        &thresholds[..4]
    );

    for lambda in [0.0, 0.01, 0.1, 0.5, 1.0, 2.0] {
        let g = prune(&full, lambda);
        let interior: Vec<_> = g.nodes.iter().filter(|n| inside(n.location)).collect();
        print!(
            "lambda {lambda:<4}: {:>3} links, {:>3} interior nodes",
            g.links.len(),
            interior.len()
        );
        if let [n] = interior.as_slice() {
            print!(
                "  -> ({:.4}, {:.4}) r {:.4}, offset {:.1e}",
                n.location.x,
                n.location.y,
                n.radius,
                n.location.dist(c)
            );
        }
        println!();
    }
    Ok(())
}
