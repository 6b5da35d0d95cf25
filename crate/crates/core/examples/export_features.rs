//! Node and edge feature vectors, and the three export formats.
//!
//! ```text
//! cargo run --example export_features [OUT_DIR]
//! ```

use std::path::PathBuf;

use shockgraph::contour::{ContourFragment, Scene};
use shockgraph::export::{parse_sgtext, to_graphml, to_sgtext, to_svg, write_atomic, ExportedGraph, SvgOptions};
use shockgraph::features::{edge_features, node_features, NODE_FEATURE_LEN};
use shockgraph::geom::Point2;
use shockgraph::pipeline::{run_scene, RunConfig};

fn main() -> shockgraph::Result<()> {
    let p = Point2::new;
    let rect = ContourFragment::closed(0, vec![p(3.0, 4.0), p(7.0, 4.0), p(7.0, 6.0), p(3.0, 6.0)]);
    let scene = Scene::new(10.0, 10.0, vec![rect]);
    let cfg = RunConfig {
        lambda: 0.1,
        ..RunConfig::default()
    };
    let g = run_scene(&scene, &cfg)?.graph;

    for n in g.nodes.iter().filter(|n| n.location.dist(p(5.0, 5.0)) < 2.0) {
        let f = node_features(n, &g)?;
        println!(
            "node {} at ({:.2}, {:.2}) degree {} (layout {}): {} of {NODE_FEATURE_LEN} values populated",
            n.id,
            n.location.x,
            n.location.y,
            n.degree(),
            f.degree,
            f.populated_len()
        );
        println!("  {:.3?}", &f.values[..f.populated_len()]);
    }
    if let Some(l) = g.links.first() {
        println!("link {} edge vector {:.3?}", l.id, edge_features(l).values);
    }

    let exported = ExportedGraph::from_graph(&g, cfg.lambda, cfg.bbox_scale)?;
    let sg = to_sgtext(&exported);
    assert_eq!(parse_sgtext(&sg)?, exported, "sgtext round-trips exactly");

    let dir = std::env::args().nth(1).map_or_else(std::env::temp_dir, PathBuf::from);
    for (name, text) in [
        ("rectangle.sg", sg),
        ("rectangle.graphml", to_graphml(&exported)),
        ("rectangle.svg", to_svg(&g, &SvgOptions::default())),
    ] {
        let path = dir.join(name);
        write_atomic(&path, text.as_bytes())?;
        println!("wrote {} ({} bytes)", path.display(), text.len());
    }
    Ok(())
}
