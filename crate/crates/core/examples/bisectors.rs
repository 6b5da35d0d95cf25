//! Closed-form bisectors of the four source-pair kinds, sampled and checked
//! for equidistance.
//!
//! ```text
//! cargo run --example bisectors
//! ```

use shockgraph::bisector::{
    bisector_endpoint_own_segment, bisector_point_point, bisector_point_segment, bisector_segment_segment, Bisector,
};
use shockgraph::geom::Point2;

fn show(name: &str, b: &Bisector) {
    println!("{name}: {:?}, domain [{}, {}]", b.kind, b.t_min, b.t_max);
    let (lo, hi) = (b.t_min.max(-4.0), b.t_max.min(4.0));
    for k in 0..5 {
        let t = lo + (hi - lo) * k as f64 / 4.0;
        let p = b.point(t);
        let [c0, c1] = b.contacts(t);
        println!(
            "  t {t:>7.3}  shock ({:>7.3}, {:>7.3})  r {:>7.4}  |d0 - d1| {:.1e}",
            p.x,
            p.y,
            b.radius(t),
            (p.dist(c0) - p.dist(c1)).abs()
        );
    }
}

fn main() -> shockgraph::Result<()> {
    let p = Point2::new;
    show("point-point", &bisector_point_point(p(0.0, 0.0), p(4.0, 2.0), [0, 1])?);
    show(
        "point-segment",
        &bisector_point_segment(p(0.0, 2.0), (p(-3.0, 0.0), p(3.0, 0.0)), [0, 1])?,
    );
    show(
        "endpoint-own-segment",
        &bisector_endpoint_own_segment(p(0.0, 0.0), (p(0.0, 0.0), p(3.0, 0.0)), [0, 1])?,
    );
    for (i, b) in bisector_segment_segment((p(0.0, 0.0), p(4.0, 0.0)), (p(0.0, 3.0), p(4.0, 5.0)), [0, 1])?
        .iter()
        .enumerate()
    {
        show(&format!("segment-segment branch {i}"), b);
    }
    Ok(())
}
