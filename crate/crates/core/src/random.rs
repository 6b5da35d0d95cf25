//! Reproducible random scenes.
//!
//! The generator is SplitMix64:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! out = z ^ (z >> 31)
//! ```
//!
//! with wrapping arithmetic, and `unit() = (out >> 11) * 2^-53`.
//!
//! A scene of `F` fragments on a `W x H` image divides the image into a
//! `g x g` grid, `g = ceil(sqrt(F))`, and picks `F` distinct cells with a
//! Fisher-Yates shuffle of the cell indices. Each chosen cell receives one
//! open fragment whose vertex count is drawn uniformly from the requested
//! range; vertices are uniform in the cell shrunk by 15% on every side and
//! sorted by `x`, so each fragment is x-monotone and fragments never cross.

use crate::contour::{ContourFragment, Scene};
use crate::geom::Point2;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SceneSpec {
    pub width: f64,
    pub height: f64,
    pub fragments: usize,
    pub min_vertices: usize,
    pub max_vertices: usize,
}

impl SceneSpec {
    /// Fragments of 3 vertices (5 elements each) giving about `n` elements.
    pub fn with_elements(n: usize) -> Self {
        SceneSpec {
            width: 256.0,
            height: 256.0,
            fragments: n.div_ceil(5).max(1),
            min_vertices: 3,
            max_vertices: 3,
        }
    }
}

pub fn random_scene(seed: u64, spec: &SceneSpec) -> Scene {
    let mut rng = SplitMix64::new(seed);
    let g = (spec.fragments as f64).sqrt().ceil().max(1.0) as usize;
    let mut cells: Vec<usize> = (0..g * g).collect();
    for i in (1..cells.len()).rev() {
        let j = rng.int(0, i);
        cells.swap(i, j);
    }
    let (cw, ch) = (spec.width / g as f64, spec.height / g as f64);
    let fragments = cells[..spec.fragments]
        .iter()
        .enumerate()
        .map(|(id, &cell)| {
            let (cx, cy) = ((cell % g) as f64 * cw, (cell / g) as f64 * ch);
            let n = rng.int(
                spec.min_vertices.max(2),
                spec.max_vertices.max(spec.min_vertices).max(2),
            );
            let mut v: Vec<Point2> = (0..n)
                .map(|_| {
                    Point2::new(
                        rng.range(cx + 0.15 * cw, cx + 0.85 * cw),
                        rng.range(cy + 0.15 * ch, cy + 0.85 * ch),
                    )
                })
                .collect();
            v.sort_by(|a, b| a.x.total_cmp(&b.x));
            ContourFragment::open(id, v)
        })
        .collect();
    Scene::new(spec.width, spec.height, fragments)
}
