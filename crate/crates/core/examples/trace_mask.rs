//! Binary mask to shock graph: trace pixel boundaries, simplify the
//! polylines, then propagate and regularize.
//!
//! ```text
//! cargo run --release --example trace_mask
//! ```

use shockgraph::cli::{simplify_scene, DEFAULT_EPSILON};
use shockgraph::contour::{trace_binary_mask, Mask, Scene};
use shockgraph::pipeline::{run_scene, RunConfig};

fn main() -> shockgraph::Result<()> {
    // an ellipse with a rectangular hole
    let mask = Mask::from_fn(64, 48, |x, y| {
        let (dx, dy) = ((x as f64 + 0.5 - 32.0) / 26.0, (y as f64 + 0.5 - 24.0) / 16.0);
        let hole = (26..38).contains(&x) && (20..28).contains(&y);
        dx * dx + dy * dy <= 1.0 && !hole
    });
    let fragments = trace_binary_mask(&mask);
    for f in &fragments {
        println!("traced fragment {}: {} vertices", f.id, f.vertices.len());
    }
    let scene = Scene::new(mask.width as f64, mask.height as f64, fragments);
    let scene = simplify_scene(&scene, DEFAULT_EPSILON)?;
    for f in &scene.fragments {
        println!("simplified fragment {}: {} vertices", f.id, f.vertices.len());
    }
    let out = run_scene(&scene, &RunConfig::default())?;
    println!(
        "{}",
        serde_json::to_string_pretty(&out.report()).expect("report serializes")
    );
    Ok(())
}
