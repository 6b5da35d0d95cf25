use std::fmt::Write as _;

use super::GEOMETRY_SAMPLES;
use crate::contour::ElementKind;
use crate::geom::{Point2, Rect};
use crate::graph::{ShockGraph, ShockLink};

pub const CONTOUR_COLOR: &str = "#FF0000";
pub const SHOCK_COLOR: &str = "#00FF00";
pub const BOX_COLOR: &str = "#FF00FF";
pub const PRUNED_COLOR: &str = "#808080";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    /// Draw links removed by regularization in gray.
    pub show_pruned: bool,
    /// Draw the bounding box and crop to it; otherwise crop to the image.
    pub show_box: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            show_pruned: false,
            show_box: true,
        }
    }
}

fn polyline(s: &mut String, pts: &[Point2], color: &str, width: f64) {
    s.push_str("  <polyline points=\"");
    for (i, p) in pts.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{},{}", p.x, p.y);
    }
    let _ = writeln!(s, "\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{width}\"/>");
}

/// One polyline per boundary segment and per shock link.
pub fn to_svg(g: &ShockGraph, opts: &SvgOptions) -> String {
    let view = match g.bbox {
        Some(b) if opts.show_box => b,
        _ => Rect::new(Point2::ORIGIN, Point2::new(g.width, g.height)),
    };
    let stroke = (view.width().max(view.height()) / 500.0).max(1e-3);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        view.min.x,
        view.min.y,
        view.width(),
        view.height()
    );
    for e in &g.elements {
        if let ElementKind::Segment(a, b) = e.kind {
            if e.on_box && !opts.show_box {
                continue;
            }
            let color = if e.on_box { BOX_COLOR } else { CONTOUR_COLOR };
            polyline(&mut s, &[a, b], color, stroke);
        }
    }
    let mut draw = |links: &[ShockLink], color: &str| {
        for l in links {
            polyline(&mut s, &g.polyline(l, GEOMETRY_SAMPLES), color, stroke);
        }
    };
    if opts.show_pruned {
        draw(&g.pruned, PRUNED_COLOR);
    }
    draw(&g.links, SHOCK_COLOR);
    s.push_str("</svg>\n");
    s
}
