//! Pixel-boundary contour extraction from binary masks.
//!
//! Contours run along pixel edges on the corner lattice, so a pixel `(x, y)`
//! covers `[x, x+1] x [y, y+1]`. Every foreground/background edge becomes a
//! directed unit step with the foreground on its left; chaining the steps
//! gives counterclockwise outer rings and clockwise hole rings (positive and
//! negative shoelace area respectively).

use std::collections::HashMap;

use super::ContourFragment;
use crate::geom::Point2;

/// Row-major boolean raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    pub width: usize,
    pub height: usize,
    pub data: Vec<bool>,
}

impl Mask {
    pub fn new(width: usize, height: usize) -> Self {
        Mask {
            width,
            height,
            data: vec![false; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Mask::new(width, height);
        for y in 0..height {
            for x in 0..width {
                m.data[y * width + x] = f(x, y);
            }
        }
        m
    }

    pub fn get(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            return false;
        }
        self.data[y as usize * self.width + x as usize]
    }

    pub fn set(&mut self, x: usize, y: usize, v: bool) {
        self.data[y * self.width + x] = v;
    }

    /// Directed unit boundary steps `(from, to)` in lattice coordinates.
    pub fn boundary_steps(&self) -> Vec<((i64, i64), (i64, i64))> {
        let mut steps = Vec::new();
        for y in 0..self.height as i64 {
            for x in 0..self.width as i64 {
                if !self.get(x, y) {
                    continue;
                }
                if !self.get(x, y - 1) {
                    steps.push(((x, y), (x + 1, y)));
                }
                if !self.get(x + 1, y) {
                    steps.push(((x + 1, y), (x + 1, y + 1)));
                }
                if !self.get(x, y + 1) {
                    steps.push(((x + 1, y + 1), (x, y + 1)));
                }
                if !self.get(x - 1, y) {
                    steps.push(((x, y + 1), (x, y)));
                }
            }
        }
        steps
    }
}

/// Traces every foreground/background boundary as a closed fragment.
///
/// Collinear runs are merged so each returned vertex is a lattice corner
/// where the boundary turns. At pinch points (diagonally touching pixels) the
/// tracer turns right, which keeps 4-connected foreground components apart.
pub fn trace_binary_mask(mask: &Mask) -> Vec<ContourFragment> {
    // a uniform mask has no foreground/background transition inside the image
    if mask.data.iter().all(|&b| b) || mask.data.iter().all(|&b| !b) {
        return Vec::new();
    }
    let steps = mask.boundary_steps();
    let mut outgoing: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, s) in steps.iter().enumerate() {
        outgoing.entry(s.0).or_default().push(i);
    }
    let mut used = vec![false; steps.len()];
    let mut fragments = Vec::new();

    for start in 0..steps.len() {
        if used[start] {
            continue;
        }
        let mut ring: Vec<(i64, i64)> = Vec::new();
        let mut cur = start;
        loop {
            used[cur] = true;
            let (from, to) = steps[cur];
            ring.push(from);
            let dir = (to.0 - from.0, to.1 - from.1);
            let next = outgoing
                .get(&to)
                .into_iter()
                .flatten()
                .copied()
                .filter(|&k| !used[k] || k == start)
                .min_by_key(|&k| {
                    let d = (steps[k].1 .0 - steps[k].0 .0, steps[k].1 .1 - steps[k].0 .1);
                    turn_rank(dir, d)
                });
            match next {
                Some(k) if k == start => break,
                Some(k) => cur = k,
                None => break,
            }
        }
        let vertices = merge_collinear(&ring);
        if vertices.len() >= 3 {
            let id = fragments.len();
            fragments.push(ContourFragment::closed(
                id,
                vertices
                    .into_iter()
                    .map(|(x, y)| Point2::new(x as f64, y as f64))
                    .collect(),
            ));
        }
    }
    fragments
}

// right turn first, then straight, then left
fn turn_rank(d_in: (i64, i64), d_out: (i64, i64)) -> u8 {
    let cross = d_in.0 * d_out.1 - d_in.1 * d_out.0;
    let dot = d_in.0 * d_out.0 + d_in.1 * d_out.1;
    match (cross.signum(), dot.signum()) {
        (-1, _) => 0,
        (0, 1) => 1,
        (1, _) => 2,
        _ => 3,
    }
}

fn merge_collinear(ring: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let n = ring.len();
    (0..n)
        .filter(|&i| {
            let a = ring[(i + n - 1) % n];
            let b = ring[i];
            let c = ring[(i + 1) % n];
            (b.0 - a.0) * (c.1 - b.1) - (b.1 - a.1) * (c.0 - b.0) != 0
        })
        .map(|i| ring[i])
        .collect()
}
