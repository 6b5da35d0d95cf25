//! Uniform-grid index over boundary elements, keyed by bounding box.

use crate::contour::{BoundaryElement, ElementId};
use crate::geom::{Point2, Rect};

/// Elements spanning more cells than this per axis go to a global list.
const LARGE_SPAN: usize = 16;

#[derive(Debug, Clone)]
pub struct ElementIndex {
    bounds: Rect,
    cell: f64,
    nx: usize,
    ny: usize,
    cells: Vec<Vec<ElementId>>,
    large: Vec<ElementId>,
    boxes: Vec<Rect>,
}

impl ElementIndex {
    pub fn new(elements: &[BoundaryElement]) -> Self {
        let boxes: Vec<Rect> = elements.iter().map(|e| e.bounds()).collect();
        let mut bounds = Rect::empty();
        for b in &boxes {
            bounds.include(b.min);
            bounds.include(b.max);
        }
        if elements.is_empty() {
            bounds = Rect::new(Point2::ORIGIN, Point2::new(1.0, 1.0));
        }
        // roughly one element per cell over the occupied area
        let area = (bounds.width() * bounds.height()).max(1e-12);
        let n = elements.len().max(1) as f64;
        let mut cell = (area / n).sqrt().max(bounds.width().max(bounds.height()) / 1024.0);
        if !(cell > 0.0) {
            cell = 1.0;
        }
        let nx = ((bounds.width() / cell).floor() as usize + 1).max(1);
        let ny = ((bounds.height() / cell).floor() as usize + 1).max(1);
        let mut idx = ElementIndex {
            bounds,
            cell,
            nx,
            ny,
            cells: vec![Vec::new(); nx * ny],
            large: Vec::new(),
            boxes,
        };
        for e in elements {
            let b = idx.boxes[e.id];
            let (x0, y0) = idx.cell_of(b.min);
            let (x1, y1) = idx.cell_of(b.max);
            if x1 - x0 > LARGE_SPAN || y1 - y0 > LARGE_SPAN {
                idx.large.push(e.id);
                continue;
            }
            for y in y0..=y1 {
                for x in x0..=x1 {
                    idx.cells[y * nx + x].push(e.id);
                }
            }
        }
        idx
    }

    fn cell_of(&self, p: Point2) -> (usize, usize) {
        let fx = ((p.x - self.bounds.min.x) / self.cell).floor();
        let fy = ((p.y - self.bounds.min.y) / self.cell).floor();
        (
            fx.clamp(0.0, (self.nx - 1) as f64) as usize,
            fy.clamp(0.0, (self.ny - 1) as f64) as usize,
        )
    }

    /// Ids of elements whose bounding box meets `r`, ascending and unique.
    pub fn query(&self, r: Rect) -> Vec<ElementId> {
        let mut out: Vec<ElementId> = self
            .large
            .iter()
            .copied()
            .filter(|&id| self.boxes[id].intersects(&r))
            .collect();
        if r.intersects(&self.bounds) {
            let (x0, y0) = self.cell_of(r.min);
            let (x1, y1) = self.cell_of(r.max);
            for y in y0..=y1 {
                for x in x0..=x1 {
                    for &id in &self.cells[y * self.nx + x] {
                        if self.boxes[id].intersects(&r) {
                            out.push(id);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True if `hit` accepts some element within `radius` of `p`, visiting
    /// cells in rings of increasing distance and stopping at the first hit.
    /// `hit` may see an element more than once.
    pub fn any_near(&self, p: Point2, radius: f64, mut hit: impl FnMut(ElementId) -> bool) -> bool {
        let r = Rect::new(p, p).expanded(radius);
        for &id in &self.large {
            if self.boxes[id].intersects(&r) && hit(id) {
                return true;
            }
        }
        if !r.intersects(&self.bounds) {
            return false;
        }
        let (cx, cy) = self.cell_of(p);
        let (x0, y0) = self.cell_of(r.min);
        let (x1, y1) = self.cell_of(r.max);
        let max_ring = (cx - x0).max(x1 - cx).max(cy - y0).max(y1 - cy);
        for k in 0..=max_ring {
            let (lo_x, hi_x) = (cx.saturating_sub(k).max(x0), (cx + k).min(x1));
            let (lo_y, hi_y) = (cy.saturating_sub(k).max(y0), (cy + k).min(y1));
            for y in lo_y..=hi_y {
                for x in lo_x..=hi_x {
                    let on_ring = x + k == cx || x == cx + k || y + k == cy || y == cy + k;
                    if !on_ring {
                        continue;
                    }
                    for &id in &self.cells[y * self.nx + x] {
                        if self.boxes[id].intersects(&r) && hit(id) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    /// Elements whose bounding box lies within `radius` of `p` (a superset of
    /// the elements at distance `<= radius`).
    pub fn around(&self, p: Point2, radius: f64) -> Vec<ElementId> {
        self.query(Rect::new(p, p).expanded(radius))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contour::{decompose, ContourFragment};
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn ring_search_finds_what_brute_force_finds(
            coords in proptest::collection::vec((0.0f64..100.0, 0.0f64..100.0), 2..30),
            cx in -10.0f64..110.0, cy in -10.0f64..110.0, rad in 0.0f64..40.0,
        ) {
            let pts: Vec<Point2> = coords.into_iter().map(|(x, y)| Point2::new(x, y)).collect();
            let frag = ContourFragment::open(0, pts);
            let Ok(elements) = decompose(&[frag]) else { return Ok(()) };
            let idx = ElementIndex::new(&elements);
            let q = Point2::new(cx, cy);
            let near = |id: ElementId| elements[id].distance(q) < rad;
            let want = elements.iter().any(|e| near(e.id));
            prop_assert_eq!(idx.any_near(q, rad, near), want);
        }

        #[test]
        fn query_matches_brute_force(
            coords in proptest::collection::vec((0.0f64..100.0, 0.0f64..100.0), 2..30),
            cx in 0.0f64..100.0, cy in 0.0f64..100.0, rad in 0.0f64..40.0,
        ) {
            let pts: Vec<Point2> = coords.into_iter().map(|(x, y)| Point2::new(x, y)).collect();
            let frag = ContourFragment::open(0, pts);
            let Ok(elements) = decompose(&[frag]) else { return Ok(()) };
            let idx = ElementIndex::new(&elements);
            let q = Point2::new(cx, cy);
            let got = idx.around(q, rad);
            let r = Rect::new(q, q).expanded(rad);
            let want: Vec<ElementId> = elements.iter().filter(|e| e.bounds().intersects(&r)).map(|e| e.id).collect();
            prop_assert_eq!(got, want);
        }
    }
}
