//! Contour fragments and their decomposition into boundary elements.
//!
//! A fragment is an ordered polyline, open or closed. Decomposition turns
//! every polyline edge into an open [`ElementKind::Segment`] and every distinct
//! vertex into an [`ElementKind::Point`]; these are the wave emitters the
//! propagation engine works with.

mod scene;
mod simplify;
mod trace;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{open_segments_cross, Point2, Rect, EPS_GEOM};

pub use scene::{parse_pbm, parse_scene, read_scene, write_scene_text, Scene};
pub use simplify::simplify_polyline;
pub use trace::{trace_binary_mask, Mask};

pub type ElementId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FragmentRole {
    #[default]
    Contour,
    /// The artificial enclosing rectangle added by the regularization stage.
    BoundingBox,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourFragment {
    pub id: usize,
    pub vertices: Vec<Point2>,
    pub closed: bool,
    #[serde(default)]
    pub role: FragmentRole,
}

impl ContourFragment {
    pub fn open(id: usize, vertices: Vec<Point2>) -> Self {
        ContourFragment {
            id,
            vertices,
            closed: false,
            role: FragmentRole::Contour,
        }
    }

    pub fn closed(id: usize, vertices: Vec<Point2>) -> Self {
        ContourFragment {
            id,
            vertices,
            closed: true,
            role: FragmentRole::Contour,
        }
    }

    /// Polyline edges, including the closing edge of a closed fragment.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        let m = if self.closed { n } else { n.saturating_sub(1) };
        (0..m).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn length(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    pub fn bounds(&self) -> Rect {
        let mut r = Rect::empty();
        for &v in &self.vertices {
            r.include(v);
        }
        r
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertices.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "fragment {} has {} vertices, need at least 2",
                self.id,
                self.vertices.len()
            )));
        }
        if let Some(v) = self.vertices.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "fragment {} has a non-finite vertex {:?}",
                self.id, v
            )));
        }
        for (a, b) in self.edges() {
            if a.dist(b) <= EPS_GEOM {
                return Err(Error::Degenerate(format!(
                    "fragment {} has coincident consecutive vertices at ({}, {})",
                    self.id, a.x, a.y
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ElementKind {
    Point(Point2),
    /// Open segment; its endpoints belong to the adjacent point elements.
    Segment(Point2, Point2),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryElement {
    pub id: ElementId,
    pub kind: ElementKind,
    pub fragment_id: usize,
    /// Sorted ids of elements sharing an endpoint with this one.
    pub adjacency: Vec<ElementId>,
    pub on_box: bool,
}

impl BoundaryElement {
    pub fn is_point(&self) -> bool {
        matches!(self.kind, ElementKind::Point(_))
    }

    pub fn is_segment(&self) -> bool {
        matches!(self.kind, ElementKind::Segment(..))
    }

    pub fn is_adjacent(&self, other: ElementId) -> bool {
        self.adjacency.binary_search(&other).is_ok()
    }

    pub fn bounds(&self) -> Rect {
        let mut r = Rect::empty();
        match self.kind {
            ElementKind::Point(p) => r.include(p),
            ElementKind::Segment(a, b) => {
                r.include(a);
                r.include(b);
            }
        }
        r
    }

    /// Distance to the element as a wave emitter: for a segment, the distance
    /// to its supporting line when the foot point is strictly interior and
    /// infinity otherwise (the endpoints are separate point elements).
    pub fn wave_distance(&self, p: Point2) -> f64 {
        match self.kind {
            ElementKind::Point(q) => p.dist(q),
            ElementKind::Segment(a, b) => {
                let d = b - a;
                let len = d.norm();
                let u = d * (1.0 / len);
                let s = (p - a).dot(u);
                if s > 0.0 && s < len {
                    u.cross(p - a).abs()
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// Euclidean distance to the closed geometry.
    pub fn distance(&self, p: Point2) -> f64 {
        match self.kind {
            ElementKind::Point(q) => p.dist(q),
            ElementKind::Segment(a, b) => crate::geom::point_segment_distance(p, a, b),
        }
    }

    /// Nearest point of the closed geometry.
    pub fn closest_point(&self, p: Point2) -> Point2 {
        match self.kind {
            ElementKind::Point(q) => q,
            ElementKind::Segment(a, b) => {
                let d = b - a;
                let t = ((p - a).dot(d) / d.norm_sq()).clamp(0.0, 1.0);
                a + d * t
            }
        }
    }
}

/// Two elements whose wavefronts join without a collision: a point and a
/// segment ending at it. Their equidistance set carries no shock.
pub fn wave_continuous(a: &BoundaryElement, b: &BoundaryElement) -> bool {
    a.is_point() != b.is_point() && a.is_adjacent(b.id)
}

/// Splits fragments into point and open-segment elements.
///
/// Vertices shared between fragments (bit-identical coordinates) map to one
/// point element. Element ids are dense and assigned in fragment order.
pub fn decompose(fragments: &[ContourFragment]) -> Result<Vec<BoundaryElement>> {
    let mut elements: Vec<BoundaryElement> = Vec::new();
    let mut vertex_ids: HashMap<(u64, u64), ElementId> = HashMap::new();

    let mut point_id = |elements: &mut Vec<BoundaryElement>, p: Point2, frag: &ContourFragment| -> ElementId {
        let key = (p.x.to_bits(), p.y.to_bits());
        *vertex_ids.entry(key).or_insert_with(|| {
            let id = elements.len();
            elements.push(BoundaryElement {
                id,
                kind: ElementKind::Point(p),
                fragment_id: frag.id,
                adjacency: Vec::new(),
                on_box: frag.role == FragmentRole::BoundingBox,
            });
            id
        })
    };

    for frag in fragments {
        frag.validate()?;
        let n = frag.vertices.len();
        let vids: Vec<ElementId> = frag
            .vertices
            .iter()
            .map(|&v| point_id(&mut elements, v, frag))
            .collect();
        let m = if frag.closed { n } else { n - 1 };
        let mut seg_ids = Vec::with_capacity(m);
        for i in 0..m {
            let (ia, ib) = (vids[i], vids[(i + 1) % n]);
            let id = elements.len();
            elements.push(BoundaryElement {
                id,
                kind: ElementKind::Segment(frag.vertices[i], frag.vertices[(i + 1) % n]),
                fragment_id: frag.id,
                adjacency: vec![ia, ib],
                on_box: frag.role == FragmentRole::BoundingBox,
            });
            elements[ia].adjacency.push(id);
            elements[ib].adjacency.push(id);
            seg_ids.push(id);
        }
        // consecutive segments meet at a vertex and are directly adjacent
        for i in 0..m {
            let next = if i + 1 < m {
                Some(i + 1)
            } else if frag.closed && m > 2 {
                Some(0)
            } else {
                None
            };
            if let Some(j) = next {
                let (a, b) = (seg_ids[i], seg_ids[j]);
                elements[a].adjacency.push(b);
                elements[b].adjacency.push(a);
            }
        }
    }
    // shared vertices between fragments join their segments too
    let seg_count = elements.len();
    for pid in 0..seg_count {
        if !elements[pid].is_point() {
            continue;
        }
        let segs: Vec<ElementId> = elements[pid].adjacency.clone();
        for &a in &segs {
            for &b in &segs {
                if a != b && !elements[a].adjacency.contains(&b) {
                    elements[a].adjacency.push(b);
                }
            }
        }
    }
    for e in &mut elements {
        e.adjacency.sort_unstable();
        e.adjacency.dedup();
    }
    Ok(elements)
}

/// Appends isolated point elements, each with its own fragment id after the
/// existing ones and no adjacency.
pub fn append_points(elements: &mut Vec<BoundaryElement>, points: &[Point2]) -> Result<()> {
    let mut next_fragment = elements.iter().map(|e| e.fragment_id + 1).max().unwrap_or(0);
    for &p in points {
        if !p.is_finite() {
            return Err(Error::InvalidInput(format!(
                "isolated point ({}, {}) is not finite",
                p.x, p.y
            )));
        }
        if let Some(e) = elements.iter().find(|e| e.distance(p) <= EPS_GEOM) {
            return Err(Error::Degenerate(format!(
                "isolated point ({}, {}) lies on element {}",
                p.x, p.y, e.id
            )));
        }
        elements.push(BoundaryElement {
            id: elements.len(),
            kind: ElementKind::Point(p),
            fragment_id: next_fragment,
            adjacency: Vec::new(),
            on_box: false,
        });
        next_fragment += 1;
    }
    Ok(())
}

/// Rejects scenes where two open segments cross in their interiors.
pub fn check_crossings(elements: &[BoundaryElement]) -> Result<()> {
    let segs: Vec<(ElementId, Point2, Point2)> = elements
        .iter()
        .filter_map(|e| match e.kind {
            ElementKind::Segment(a, b) => Some((e.id, a, b)),
            _ => None,
        })
        .collect();
    for (i, &(ia, a0, a1)) in segs.iter().enumerate() {
        for &(ib, b0, b1) in &segs[i + 1..] {
            if open_segments_cross(a0, a1, b0, b1) {
                return Err(Error::InvalidInput(format!(
                    "segments {ia} and {ib} cross in their interiors"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn open_three_vertex_chain() {
        let f = ContourFragment::open(0, vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0)]);
        let els = decompose(&[f]).unwrap();
        let points: Vec<_> = els.iter().filter(|e| e.is_point()).collect();
        let segs: Vec<_> = els.iter().filter(|e| e.is_segment()).collect();
        assert_eq!(points.len(), 3);
        assert_eq!(segs.len(), 2);
        let middle = points
            .iter()
            .find(|e| e.kind == ElementKind::Point(p(1.0, 0.0)))
            .unwrap();
        assert!(segs.iter().all(|s| middle.is_adjacent(s.id)));
        assert!(segs[0].is_adjacent(segs[1].id));
    }

    #[test]
    fn closed_square_counts() {
        let f = ContourFragment::closed(0, vec![p(0.0, 0.0), p(2.0, 0.0), p(2.0, 2.0), p(0.0, 2.0)]);
        let els = decompose(&[f]).unwrap();
        assert_eq!(els.iter().filter(|e| e.is_segment()).count(), 4);
        for e in els.iter().filter(|e| e.is_point()) {
            assert_eq!(e.adjacency.len(), 2);
        }
        for e in els.iter().filter(|e| e.is_segment()) {
            // two endpoints plus two neighbouring segments
            assert_eq!(e.adjacency.len(), 4);
        }
    }

    #[test]
    fn adjacency_is_symmetric_and_endpoints_registered() {
        let f = ContourFragment::closed(
            3,
            vec![p(0.0, 0.0), p(4.0, 1.0), p(3.0, 5.0), p(-1.0, 2.0), p(-2.0, 0.5)],
        );
        let g = ContourFragment::open(4, vec![p(10.0, 0.0), p(12.0, 1.0), p(13.0, 3.0)]);
        let els = decompose(&[f, g]).unwrap();
        for e in &els {
            for &o in &e.adjacency {
                assert!(els[o].is_adjacent(e.id));
            }
            if let ElementKind::Segment(a, b) = e.kind {
                for q in [a, b] {
                    let pt = els.iter().find(|x| x.kind == ElementKind::Point(q)).unwrap();
                    assert!(pt.is_adjacent(e.id));
                }
            }
        }
    }

    #[test]
    fn coincident_vertices_are_rejected() {
        let f = ContourFragment::open(0, vec![p(0.0, 0.0), p(0.0, 0.0)]);
        assert!(matches!(decompose(&[f]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn wave_distance_is_infinite_outside_the_open_segment() {
        let e = BoundaryElement {
            id: 0,
            kind: ElementKind::Segment(p(0.0, 0.0), p(1.0, 0.0)),
            fragment_id: 0,
            adjacency: vec![],
            on_box: false,
        };
        assert_eq!(e.wave_distance(p(0.5, 2.0)), 2.0);
        assert!(e.wave_distance(p(1.5, 2.0)).is_infinite());
    }
}
