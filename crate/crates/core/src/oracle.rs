//! Brute-force grid verifier for shock sets.
//!
//! Every cell centre gets its exact distance to every boundary element.
//! Shock cells are found where the nearest element changes between
//! neighbouring cells; see [`extract_shock_cells`].

use std::fmt::Write as _;

use crate::contour::{wave_continuous, BoundaryElement, ElementId, ElementKind};
use crate::error::{Error, Result};
use crate::geom::{Point2, Rect};
use crate::graph::ShockGraph;

pub const MAX_CELLS: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hit {
    pub distance: f64,
    pub element: ElementId,
}

#[derive(Debug, Clone)]
pub struct GridField {
    pub window: Rect,
    pub h: f64,
    pub nx: usize,
    pub ny: usize,
    pub nearest: Vec<Hit>,
    /// Nearest element that can interact with `nearest`; `None` when every
    /// other element is wave-continuous with it.
    pub second: Vec<Option<Hit>>,
}

impl GridField {
    pub fn center(&self, i: usize, j: usize) -> Point2 {
        Point2::new(
            self.window.min.x + (i as f64 + 0.5) * self.h,
            self.window.min.y + (j as f64 + 0.5) * self.h,
        )
    }

    /// `second - nearest` at cell `k`; `+inf` without a second element.
    pub fn gap(&self, k: usize) -> f64 {
        self.second[k].map_or(f64::INFINITY, |s| s.distance - self.nearest[k].distance)
    }

    /// Binary graymap of the nearest distance, brighter with distance.
    pub fn to_pgm(&self) -> Vec<u8> {
        let max = self
            .nearest
            .iter()
            .map(|n| n.distance)
            .filter(|d| d.is_finite())
            .fold(0.0f64, f64::max)
            .max(1e-12);
        let mut out = format!("P5\n{} {}\n255\n", self.nx, self.ny).into_bytes();
        // image rows run top to bottom
        for j in (0..self.ny).rev() {
            for i in 0..self.nx {
                let d = self.nearest[j * self.nx + i].distance;
                out.push((255.0 * (d / max).clamp(0.0, 1.0)).round() as u8);
            }
        }
        out
    }
}

pub fn compute_field(elements: &[BoundaryElement], window: Rect, h: f64) -> Result<GridField> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidInput(format!("grid resolution {h} must be positive")));
    }
    if elements.is_empty() {
        return Err(Error::InvalidInput("no boundary elements".into()));
    }
    let nx = (window.width() / h).ceil().max(1.0);
    let ny = (window.height() / h).ceil().max(1.0);
    let cells = nx * ny;
    if !cells.is_finite() || cells > MAX_CELLS as f64 {
        return Err(Error::Resolution {
            cells: if cells.is_finite() { cells as u64 } else { u64::MAX },
            limit: MAX_CELLS,
        });
    }
    let (nx, ny) = (nx as usize, ny as usize);
    let mut field = GridField {
        window,
        h,
        nx,
        ny,
        nearest: Vec::with_capacity(nx * ny),
        second: Vec::with_capacity(nx * ny),
    };
    let mut dist = vec![0.0; elements.len()];
    for j in 0..ny {
        for i in 0..nx {
            let p = field.center(i, j);
            let mut best = Hit {
                distance: f64::INFINITY,
                element: 0,
            };
            for (d, e) in dist.iter_mut().zip(elements) {
                *d = e.wave_distance(p);
                if *d < best.distance {
                    best = Hit {
                        distance: *d,
                        element: e.id,
                    };
                }
            }
            let near = &elements[best.element];
            let mut second: Option<Hit> = None;
            for (d, e) in dist.iter().zip(elements) {
                if e.id == near.id || wave_continuous(near, e) || !d.is_finite() {
                    continue;
                }
                if second.is_none_or(|s| *d < s.distance) {
                    second = Some(Hit {
                        distance: *d,
                        element: e.id,
                    });
                }
            }
            field.nearest.push(best);
            field.second.push(second);
        }
    }
    Ok(field)
}

/// Distance ignoring segment extents: lines for segments.
fn unrestricted_distance(e: &BoundaryElement, p: Point2) -> f64 {
    match e.kind {
        ElementKind::Point(q) => p.dist(q),
        ElementKind::Segment(a, b) => (b - a).normalized().cross(p - a).abs(),
    }
}

/// Whether `e` emits a wave reaching `p` (foot on a segment's interior).
fn reaches(e: &BoundaryElement, p: Point2) -> bool {
    match e.kind {
        ElementKind::Point(_) => true,
        ElementKind::Segment(a, b) => {
            let len = (b - a).norm();
            let s = (p - a).dot(b - a) / len;
            let eps = 1e-9 * (1.0 + len);
            s > -eps && s < len + eps
        }
    }
}

/// Centres of the shock cells, row-major.
///
/// Two rules mark cells, both looking for a *shock point*: a point
/// equidistant from two interacting elements, reached by both waves, with no
/// other element nearer. When a candidate point is blocked by a nearer
/// element, the search retries with that element replacing either partner.
///
/// - Label boundaries: for 4-adjacent cells with different nearest elements,
///   the segment joining their centres is resampled and every change of
///   nearest element along it gives an equidistance crossing; the cell
///   nearer to each shock point is marked.
/// - Sub-cell features: for a cell whose nearest and second distances differ
///   by at most `tol`, one Newton step from its centre onto their
///   equidistance curve; the cell is marked if the shock point lies within
///   `h / 2`.
pub fn extract_shock_cells(field: &GridField, elements: &[BoundaryElement], tol: f64) -> Vec<Point2> {
    let (nx, ny) = (field.nx, field.ny);
    let mut mark = vec![false; nx * ny];
    let centre = |k: usize| field.center(k % nx, k / nx);
    for j in 0..ny {
        for i in 0..nx {
            let k = j * nx + i;
            let mut nbrs = [None; 2];
            if i + 1 < nx {
                nbrs[0] = Some(k + 1);
            }
            if j + 1 < ny {
                nbrs[1] = Some(k + nx);
            }
            for q in nbrs.into_iter().flatten() {
                if field.nearest[k].element == field.nearest[q].element {
                    continue;
                }
                let (pk, pq) = (centre(k), centre(q));
                // nearest element along the way, to catch regions thinner
                // than a cell
                let stops: Vec<(Point2, usize)> = (0..=SUBSTEPS)
                    .map(|s| {
                        let x = pk.lerp(pq, s as f64 / SUBSTEPS as f64);
                        (x, nearest_element(elements, x))
                    })
                    .collect();
                for w in stops.windows(2) {
                    let ((x0, a), (x1, b)) = (w[0], w[1]);
                    if a == b {
                        continue;
                    }
                    let crossing = |a: &BoundaryElement, b: &BoundaryElement| {
                        let f = |p: Point2| unrestricted_distance(a, p) - unrestricted_distance(b, p);
                        let (f0, f1) = (f(x0), f(x1));
                        if f0.signum() == f1.signum() && f0 != 0.0 && f1 != 0.0 {
                            return None;
                        }
                        let t = if f0 == f1 { 0.5 } else { f0 / (f0 - f1) };
                        Some(x0.lerp(x1, t))
                    };
                    if let Some(x) = shock_point(elements, &elements[a], &elements[b], &crossing, RETRIES) {
                        let pick = if x.dist(pk) <= x.dist(pq) { k } else { q };
                        mark[pick] = true;
                    }
                }
            }
        }
    }
    for (k, m) in mark.iter_mut().enumerate() {
        let Some(second) = field.second[k] else { continue };
        if *m || field.gap(k) > tol {
            continue;
        }
        let p = centre(k);
        let newton = |a: &BoundaryElement, b: &BoundaryElement| {
            let grad = gradient(a, p) - gradient(b, p);
            let slope = grad.norm();
            if slope <= 1e-12 {
                return None;
            }
            let f = unrestricted_distance(a, p) - unrestricted_distance(b, p);
            let x = p - grad * (f / (slope * slope));
            (x.dist(p) <= 0.5 * field.h).then_some(x)
        };
        let (a, b) = (&elements[field.nearest[k].element], &elements[second.element]);
        if shock_point(elements, a, b, &newton, RETRIES).is_some() {
            *m = true;
        }
    }
    (0..nx * ny).filter(|&k| mark[k]).map(centre).collect()
}

/// Substitutions allowed when a candidate shock point is blocked.
const RETRIES: usize = 2;

/// Samples between neighbouring cell centres.
const SUBSTEPS: usize = 16;

fn nearest_element(elements: &[BoundaryElement], p: Point2) -> ElementId {
    let mut best = (f64::INFINITY, 0);
    for e in elements {
        let d = e.wave_distance(p);
        if d < best.0 {
            best = (d, e.id);
        }
    }
    best.1
}

fn shock_point(
    elements: &[BoundaryElement],
    a: &BoundaryElement,
    b: &BoundaryElement,
    locate: &dyn Fn(&BoundaryElement, &BoundaryElement) -> Option<Point2>,
    retries: usize,
) -> Option<Point2> {
    if a.id == b.id || wave_continuous(a, b) {
        return None;
    }
    let p = locate(a, b)?;
    if !(reaches(a, p) && reaches(b, p)) {
        return None;
    }
    let d = unrestricted_distance(a, p).max(unrestricted_distance(b, p));
    let floor = d - 1e-9 * (1.0 + d);
    let blocker = elements
        .iter()
        .filter(|e| e.id != a.id && e.id != b.id)
        .map(|e| (e.wave_distance(p), e))
        .filter(|(w, _)| *w < floor)
        .min_by(|x, y| x.0.total_cmp(&y.0).then(x.1.id.cmp(&y.1.id)));
    match blocker {
        None => Some(p),
        Some((_, e)) if retries > 0 => shock_point(elements, a, e, locate, retries - 1)
            .or_else(|| shock_point(elements, e, b, locate, retries - 1)),
        Some(_) => None,
    }
}

/// Unit gradient of the distance to `e` at `p`.
fn gradient(e: &BoundaryElement, p: Point2) -> Point2 {
    match e.kind {
        ElementKind::Point(q) => (p - q).normalized(),
        ElementKind::Segment(a, b) => {
            let n = (b - a).normalized().perp();
            if n.dot(p - a) >= 0.0 {
                n
            } else {
                n * -1.0
            }
        }
    }
}

/// Points along every link of `g`, at most `step` apart.
pub fn sample_shocks(g: &ShockGraph, step: f64) -> Vec<Point2> {
    let mut out = Vec::new();
    for l in &g.links {
        let n = ((l.length / step).ceil() as usize + 1).max(2);
        out.extend(g.polyline(l, n));
    }
    out
}

/// One `x y` line per cell centre.
pub fn cell_list_text(cells: &[Point2]) -> String {
    let mut s = String::new();
    for c in cells {
        let _ = writeln!(s, "{} {}", c.x, c.y);
    }
    s
}

/// Bidirectional Hausdorff distance between two point sets; `+inf` when
/// exactly one is empty.
pub fn hausdorff(a: &[Point2], b: &[Point2]) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return 0.0,
        (true, false) | (false, true) => return f64::INFINITY,
        _ => {}
    }
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

/// Largest distance from a point of `a` to its nearest point of `b`.
pub fn directed_hausdorff(a: &[Point2], b: &[Point2]) -> f64 {
    let mut bounds = Rect::empty();
    for &p in b {
        bounds.include(p);
    }
    let cell = ((bounds.width() * bounds.height()).max(1e-12) / b.len() as f64)
        .sqrt()
        .max(1e-6);
    let nx = (bounds.width() / cell) as usize + 1;
    let ny = (bounds.height() / cell) as usize + 1;
    let key = |p: Point2| {
        let i = (((p.x - bounds.min.x) / cell).floor().max(0.0) as usize).min(nx - 1);
        let j = (((p.y - bounds.min.y) / cell).floor().max(0.0) as usize).min(ny - 1);
        (i, j)
    };
    let mut grid: Vec<Vec<Point2>> = vec![Vec::new(); nx * ny];
    for &p in b {
        let (i, j) = key(p);
        grid[j * nx + i].push(p);
    }
    let mut worst = 0.0f64;
    for &p in a {
        let (ci, cj) = key(p);
        let mut best = f64::INFINITY;
        let mut ring = 0usize;
        loop {
            for j in cj.saturating_sub(ring)..=(cj + ring).min(ny - 1) {
                for i in ci.saturating_sub(ring)..=(ci + ring).min(nx - 1) {
                    let on_ring = i + ring == ci || i == ci + ring || j + ring == cj || j == cj + ring;
                    if !on_ring {
                        continue;
                    }
                    for q in &grid[j * nx + i] {
                        best = best.min(p.dist(*q));
                    }
                }
            }
            // cells beyond this ring are at least `ring * cell` away
            let exhausted = ring >= nx.max(ny);
            if exhausted || best <= ring as f64 * cell {
                break;
            }
            ring += 1;
        }
        worst = worst.max(best);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn points(ps: &[(f64, f64)]) -> Vec<BoundaryElement> {
        ps.iter()
            .enumerate()
            .map(|(id, &(x, y))| BoundaryElement {
                id,
                kind: ElementKind::Point(Point2::new(x, y)),
                fragment_id: id,
                adjacency: Vec::new(),
                on_box: false,
            })
            .collect()
    }

    #[test]
    fn single_point_field_is_radial() {
        let els = points(&[(2.0, 3.0)]);
        let f = compute_field(&els, Rect::new(Point2::ORIGIN, Point2::new(5.0, 5.0)), 0.5).unwrap();
        for j in 0..f.ny {
            for i in 0..f.nx {
                let c = f.center(i, j);
                assert_eq!(f.nearest[j * f.nx + i].distance, c.dist(Point2::new(2.0, 3.0)));
                assert!(f.second[j * f.nx + i].is_none());
            }
        }
    }

    #[test]
    fn two_points_tie_on_the_bisector() {
        let els = points(&[(0.0, 0.0), (2.0, 0.0)]);
        let f = compute_field(&els, Rect::new(Point2::new(0.5, -0.5), Point2::new(1.5, 0.5)), 1.0).unwrap();
        assert_eq!(f.nearest[0].distance, 1.0);
        assert_eq!(f.second[0].unwrap().distance, 1.0);
        assert_ne!(f.nearest[0].element, f.second[0].unwrap().element);
    }

    #[test]
    fn two_points_give_a_one_cell_band() {
        let els = points(&[(0.0, 5.0), (2.0, 5.0)]);
        let f = compute_field(&els, Rect::new(Point2::new(-2.0, 0.0), Point2::new(4.0, 10.0)), 0.5).unwrap();
        let cells = extract_shock_cells(&f, &els, 0.5);
        assert_eq!(cells.len(), f.ny);
        for c in &cells {
            assert!((c.x - 1.0).abs() <= 0.5, "{c:?}");
        }
    }

    #[test]
    fn resolution_limit() {
        let els = points(&[(0.0, 0.0)]);
        let r = compute_field(&els, Rect::new(Point2::ORIGIN, Point2::new(1e4, 1e4)), 1e-3);
        assert!(matches!(r, Err(Error::Resolution { .. })));
    }

    #[test]
    fn hausdorff_against_brute_force() {
        let a: Vec<Point2> = (0..50)
            .map(|k| Point2::new((k * 7 % 13) as f64, (k * 5 % 11) as f64 * 0.7))
            .collect();
        let b: Vec<Point2> = (0..40)
            .map(|k| Point2::new((k * 3 % 17) as f64 * 0.9, (k * 11 % 7) as f64))
            .collect();
        let brute = |x: &[Point2], y: &[Point2]| {
            x.iter()
                .map(|p| y.iter().map(|q| p.dist(*q)).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max)
        };
        assert_eq!(directed_hausdorff(&a, &b), brute(&a, &b));
        assert_eq!(hausdorff(&a, &b), brute(&a, &b).max(brute(&b, &a)));
    }
}
