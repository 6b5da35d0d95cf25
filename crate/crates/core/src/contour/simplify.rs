use super::ContourFragment;
use crate::error::{Error, Result};
use crate::geom::{Point2, EPS_GEOM};

/// Recursive max-deviation polyline simplification.
///
/// Keeps a subsequence of the input vertices such that every dropped vertex
/// lies within `epsilon` of the chord that replaced it. Ties in the farthest
/// vertex split at the lowest index. Closed fragments are anchored at vertex 0
/// and at the vertex farthest from it, and each half is simplified as an open
/// chain. `epsilon == 0` returns the input unchanged.
pub fn simplify_polyline(fragment: &ContourFragment, epsilon: f64) -> Result<ContourFragment> {
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "simplification epsilon {epsilon} must be >= 0"
        )));
    }
    let v = &fragment.vertices;
    if v.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "fragment {} has fewer than 2 vertices",
            fragment.id
        )));
    }
    if v.iter().all(|q| q.dist(v[0]) <= EPS_GEOM) {
        return Err(Error::Degenerate(format!(
            "fragment {} collapses to a single point",
            fragment.id
        )));
    }
    if epsilon == 0.0 {
        return Ok(fragment.clone());
    }

    let mut keep = vec![false; v.len()];
    if fragment.closed {
        let far = farthest_from(v, 0);
        keep[0] = true;
        keep[far] = true;
        // each half is split once unconditionally so the ring keeps an area
        dp_forced(v, 0, far, epsilon, &mut keep);
        let mut ring: Vec<Point2> = v[far..].to_vec();
        ring.push(v[0]);
        let mut keep_ring = vec![false; ring.len()];
        dp_forced(&ring, 0, ring.len() - 1, epsilon, &mut keep_ring);
        for (k, &kept) in keep_ring.iter().enumerate().take(ring.len() - 1) {
            if kept {
                keep[far + k] = true;
            }
        }
    } else {
        keep[0] = true;
        keep[v.len() - 1] = true;
        dp(v, 0, v.len() - 1, epsilon, &mut keep);
    }

    let mut out = fragment.clone();
    out.vertices = v.iter().zip(&keep).filter_map(|(&q, &k)| k.then_some(q)).collect();
    Ok(out)
}

fn farthest_from(v: &[Point2], i: usize) -> usize {
    let mut best = (i, -1.0);
    for (k, q) in v.iter().enumerate() {
        let d = q.dist(v[i]);
        if d > best.1 {
            best = (k, d);
        }
    }
    best.0
}

fn chord_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let d = b - a;
    let len = d.norm();
    if len <= EPS_GEOM {
        return p.dist(a);
    }
    crate::geom::point_segment_distance(p, a, b)
}

fn max_deviation(v: &[Point2], lo: usize, hi: usize) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for k in lo + 1..hi {
        let d = chord_distance(v[k], v[lo], v[hi]);
        if best.is_none_or(|(_, bd)| d > bd) {
            best = Some((k, d));
        }
    }
    best
}

fn dp_forced(v: &[Point2], lo: usize, hi: usize, eps: f64, keep: &mut [bool]) {
    if let Some((k, _)) = max_deviation(v, lo, hi) {
        keep[k] = true;
        dp(v, lo, k, eps, keep);
        dp(v, k, hi, eps, keep);
    }
}

fn dp(v: &[Point2], lo: usize, hi: usize, eps: f64, keep: &mut [bool]) {
    if hi <= lo + 1 {
        return;
    }
    if let Some((k, d)) = max_deviation(v, lo, hi) {
        if d > eps {
            keep[k] = true;
            dp(v, lo, k, eps, keep);
            dp(v, k, hi, eps, keep);
        }
    }
}
