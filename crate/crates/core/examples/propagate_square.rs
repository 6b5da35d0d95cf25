//! Shock propagation on a square, before and after regularization.
//!
//! ```text
//! cargo run --example propagate_square
//! ```

use shockgraph::contour::{ContourFragment, Scene};
use shockgraph::geom::Point2;
use shockgraph::graph::ShockGraph;
use shockgraph::pipeline::{run_scene, RunConfig};

fn print_graph(g: &ShockGraph) {
    for n in &g.nodes {
        println!(
            "  node {:>2} {:<9} ({:>6.3}, {:>6.3}) r {:.3} degree {}",
            n.id,
            format!("{:?}", n.label),
            n.location.x,
            n.location.y,
            n.radius,
            n.degree()
        );
    }
    for l in &g.links {
        println!(
            "  link {:>2} {:>2} -> {:>2} {:<14} length {:>7.3}{}",
            l.id,
            l.from,
            l.to,
            format!("{:?}", l.label),
            l.length,
            if l.on_box { "  (box)" } else { "" }
        );
    }
}

fn main() -> shockgraph::Result<()> {
    let p = Point2::new;
    let square = ContourFragment::closed(0, vec![p(4.0, 4.0), p(6.0, 4.0), p(6.0, 6.0), p(4.0, 6.0)]);
    let scene = Scene::new(10.0, 10.0, vec![square]);

    let out = run_scene(&scene, &RunConfig::unregularized())?;
    println!(
        "{} elements, {} candidates ({} valid), {} events",
        out.full.elements.len(),
        out.stats.candidates,
        out.stats.candidates_valid,
        out.stats.events
    );
    println!("full graph:");
    print_graph(&out.full);

    let out = run_scene(
        &scene,
        &RunConfig {
            lambda: 0.1,
            ..RunConfig::default()
        },
    )?;
    println!("lambda 0.1 ({} links pruned):", out.graph.pruned.len());
    print_graph(&out.graph);
    Ok(())
}
