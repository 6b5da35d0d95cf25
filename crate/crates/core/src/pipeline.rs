//! End-to-end run: scene to regularized shock graph.

use std::time::Instant;

use serde::Serialize;

use crate::contour::{append_points, check_crossings, decompose, Scene};
use crate::error::Result;
use crate::geom::Point2;
use crate::graph::ShockGraph;
use crate::propagation::{self, EngineConfig, RunStats};
use crate::regularize::{self, BoundingBox, PruneOptions, DEFAULT_BBOX_SCALE, DEFAULT_LAMBDA};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub lambda: f64,
    /// `None` runs without a bounding box; unbounded shocks then fail.
    pub bbox_scale: Option<f64>,
    pub drop_box_links: bool,
    pub event_budget: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            lambda: DEFAULT_LAMBDA,
            bbox_scale: Some(DEFAULT_BBOX_SCALE),
            drop_box_links: false,
            event_budget: None,
        }
    }
}

impl RunConfig {
    pub fn unregularized() -> Self {
        RunConfig {
            lambda: 0.0,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    /// Graph before pruning.
    pub full: ShockGraph,
    /// Regularized graph; pruned links are listed in `graph.pruned`.
    pub graph: ShockGraph,
    pub bbox: Option<BoundingBox>,
    pub stats: RunStats,
    pub timings: Timings,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Timings {
    pub propagate_s: f64,
    pub prune_s: f64,
}

/// Summary printed by the CLI's `--report`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub elements: usize,
    pub candidates: usize,
    pub candidates_valid: usize,
    pub sources_realized: usize,
    pub sources_discarded: usize,
    pub events: u64,
    pub shocks: usize,
    pub nodes: usize,
    pub links: usize,
    pub pruned: usize,
    pub degree_histogram: Vec<(usize, usize)>,
    pub timings: Timings,
}

pub fn run_scene(scene: &Scene, cfg: &RunConfig) -> Result<RunOutput> {
    run_scene_with_points(scene, &[], cfg)
}

/// Like [`run_scene`], with extra isolated point sources that belong to no
/// fragment.
pub fn run_scene_with_points(scene: &Scene, points: &[Point2], cfg: &RunConfig) -> Result<RunOutput> {
    let (fragments, bbox) = match cfg.bbox_scale {
        Some(s) => {
            let (f, b) = regularize::augment_with_box(&scene.fragments, scene.width, scene.height, s)?;
            (f, Some(b))
        }
        None => (scene.fragments.clone(), None),
    };
    let mut elements = decompose(&fragments)?;
    append_points(&mut elements, points)?;
    check_crossings(&elements)?;
    let engine = EngineConfig {
        event_budget: cfg.event_budget,
        clip: bbox.map(|b| b.rect()),
    };
    let t0 = Instant::now();
    let (full, stats) = propagation::run(&elements, scene.width, scene.height, &engine)?;
    let propagate_s = t0.elapsed().as_secs_f64();
    let t1 = Instant::now();
    let graph = regularize::prune_with(
        &full,
        &PruneOptions {
            lambda: cfg.lambda,
            drop_box_links: cfg.drop_box_links,
        },
    );
    let prune_s = t1.elapsed().as_secs_f64();
    Ok(RunOutput {
        full,
        graph,
        bbox,
        stats,
        timings: Timings { propagate_s, prune_s },
    })
}

impl RunOutput {
    pub fn report(&self) -> Report {
        Report {
            elements: self.full.elements.len(),
            candidates: self.stats.candidates,
            candidates_valid: self.stats.candidates_valid,
            sources_realized: self.stats.sources_realized,
            sources_discarded: self.stats.sources_discarded,
            events: self.stats.events,
            shocks: self.stats.shocks,
            nodes: self.graph.nodes.len(),
            links: self.graph.links.len(),
            pruned: self.graph.pruned.len(),
            degree_histogram: self.graph.degree_histogram().into_iter().collect(),
            timings: self.timings,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchRow {
    /// Requested element count.
    pub n: usize,
    /// Elements including the bounding box.
    pub elements: usize,
    pub seconds: f64,
    pub events: u64,
}

/// Runs one random scene per size with [`random_scene`] and `seed`.
///
/// [`random_scene`]: crate::random::random_scene
pub fn bench(sizes: &[usize], seed: u64, cfg: &RunConfig) -> Result<Vec<BenchRow>> {
    sizes
        .iter()
        .map(|&n| {
            let scene = crate::random::random_scene(seed, &crate::random::SceneSpec::with_elements(n));
            let t = Instant::now();
            let out = run_scene(&scene, cfg)?;
            Ok(BenchRow {
                n,
                elements: out.full.elements.len(),
                seconds: t.elapsed().as_secs_f64(),
                events: out.stats.events,
            })
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`; `None` with fewer than two
/// distinct positive points.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (pts.len() >= 2 && sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_power_law() {
        let pts: Vec<(f64, f64)> = [50.0, 100.0, 200.0, 400.0]
            .iter()
            .map(|&x: &f64| (x, 3.0 * x.powf(2.2)))
            .collect();
        assert!((loglog_slope(&pts).unwrap() - 2.2).abs() < 1e-12);
        assert_eq!(loglog_slope(&[(10.0, 1.0)]), None);
    }
}
