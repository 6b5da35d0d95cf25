//! Golden scenes with expected graph summaries.
//!
//! A corpus is a directory holding `manifest.toml` and the scene files it
//! names:
//!
//! ```toml
//! [[scene]]
//! name = "rectangle"
//! file = "rectangle.scene"
//! lambda = 0.0
//! basis = "analytic"          # or "topological"
//! isolated_points = []        # optional extra point sources
//!
//! [[scene.node]]
//! at = [4.0, 5.0]
//! tol = 1e-6
//! radius = 1.0                # optional
//! radius_tol = 1e-6
//! label = "junction"          # optional
//!
//! [scene.inter_fragment]      # optional
//! components = 1
//! branch_nodes = 0
//! three_inflow_nodes = 0
//! ```
//!
//! Inter-fragment links are those whose every piece is generated by two
//! elements of different contour fragments, neither on the bounding box.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::contour::read_scene;
use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::graph::{NodeLabel, ShockGraph};
use crate::pipeline::{run_scene_with_points, RunConfig};

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Manifest {
    pub scene: Vec<GoldenScene>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct GoldenScene {
    pub name: String,
    pub file: PathBuf,
    pub lambda: f64,
    pub basis: Basis,
    #[serde(default)]
    pub isolated_points: Vec<[f64; 2]>,
    #[serde(default)]
    pub node: Vec<ExpectedNode>,
    pub inter_fragment: Option<InterFragment>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Closed-form medial axis or circumcenter.
    Analytic,
    /// Counts and flow pattern only; coordinates are not checked.
    Topological,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ExpectedNode {
    pub at: [f64; 2],
    pub tol: f64,
    pub radius: Option<f64>,
    #[serde(default)]
    pub radius_tol: f64,
    pub label: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub struct InterFragment {
    pub components: Option<usize>,
    pub branch_nodes: Option<usize>,
    pub three_inflow_nodes: Option<usize>,
}

/// Measured inter-fragment topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InterFragmentSummary {
    pub links: usize,
    pub components: usize,
    /// Nodes with three or more inter-fragment links.
    pub branch_nodes: usize,
    /// Nodes with exactly three inter-fragment links, all incoming.
    pub three_inflow_nodes: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusResult {
    pub name: String,
    pub basis: Basis,
    /// One line per failed check, `expected ... actual ...`.
    pub mismatches: Vec<String>,
}

impl CorpusResult {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn read_manifest(dir: &Path) -> Result<Manifest> {
    let path = dir.join("manifest.toml");
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(path.clone(), e))?;
    toml::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// Corpus shipped with the crate.
pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Runs every golden scene and checks its expectations. Pipeline errors are
/// reported as mismatches of that scene.
pub fn verify_corpus(dir: &Path) -> Result<Vec<CorpusResult>> {
    let manifest = read_manifest(dir)?;
    manifest
        .scene
        .iter()
        .map(|s| {
            let mismatches = match check_scene(dir, s) {
                Ok(m) => m,
                Err(e) => vec![format!("expected a graph, actual error: {e}")],
            };
            Ok(CorpusResult {
                name: s.name.clone(),
                basis: s.basis,
                mismatches,
            })
        })
        .collect()
}

fn check_scene(dir: &Path, s: &GoldenScene) -> Result<Vec<String>> {
    let scene = read_scene(&dir.join(&s.file))?;
    let points: Vec<Point2> = s.isolated_points.iter().map(|&[x, y]| Point2::new(x, y)).collect();
    let cfg = RunConfig {
        lambda: s.lambda,
        ..RunConfig::default()
    };
    let g = run_scene_with_points(&scene, &points, &cfg)?.graph;
    let mut out = Vec::new();
    for exp in &s.node {
        check_node(&g, exp, &mut out);
    }
    if let Some(want) = s.inter_fragment {
        let got = inter_fragment_summary(&g);
        for (what, w, a) in [
            ("components", want.components, got.components),
            ("branch nodes", want.branch_nodes, got.branch_nodes),
            ("three-inflow nodes", want.three_inflow_nodes, got.three_inflow_nodes),
        ] {
            if let Some(w) = w.filter(|&w| w != a) {
                out.push(format!("inter-fragment {what}: expected {w}, actual {a}"));
            }
        }
    }
    Ok(out)
}

fn check_node(g: &ShockGraph, exp: &ExpectedNode, out: &mut Vec<String>) {
    let at = Point2::new(exp.at[0], exp.at[1]);
    let Some(n) = g
        .nodes
        .iter()
        .min_by(|a, b| a.location.dist(at).total_cmp(&b.location.dist(at)))
    else {
        out.push(format!("node at ({}, {}): expected, actual empty graph", at.x, at.y));
        return;
    };
    let d = n.location.dist(at);
    if d > exp.tol {
        out.push(format!(
            "node at ({}, {}): expected within {}, actual nearest ({}, {}) at {d:e}",
            at.x, at.y, exp.tol, n.location.x, n.location.y
        ));
        return;
    }
    if let Some(r) = exp.radius.filter(|r| (n.radius - r).abs() > exp.radius_tol) {
        out.push(format!(
            "node at ({}, {}): expected radius {r} within {}, actual {}",
            at.x, at.y, exp.radius_tol, n.radius
        ));
    }
    if let Some(l) = exp
        .label
        .as_deref()
        .filter(|l| !label_name(n.label).eq_ignore_ascii_case(l))
    {
        out.push(format!(
            "node at ({}, {}): expected label {l}, actual {}",
            at.x,
            at.y,
            label_name(n.label)
        ));
    }
}

fn label_name(l: NodeLabel) -> &'static str {
    match l {
        NodeLabel::Source => "source",
        NodeLabel::Sink => "sink",
        NodeLabel::Junction => "junction",
    }
}

pub fn is_inter_fragment(g: &ShockGraph, link: usize) -> bool {
    g.links[link].pieces.iter().all(|p| {
        let [a, b] = g.bisectors[p.bisector].generators;
        let (ea, eb) = (&g.elements[a], &g.elements[b]);
        !ea.on_box && !eb.on_box && ea.fragment_id != eb.fragment_id
    })
}

pub fn inter_fragment_summary(g: &ShockGraph) -> InterFragmentSummary {
    let inter: Vec<usize> = (0..g.links.len()).filter(|&l| is_inter_fragment(g, l)).collect();
    // per node: (incident, incoming)
    let mut deg: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
        let p = *parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let r = find(parent, p);
        parent.insert(x, r);
        r
    }
    for &l in &inter {
        let (f, t) = (g.links[l].from, g.links[l].to);
        deg.entry(f).or_default().0 += 1;
        let e = deg.entry(t).or_default();
        e.0 += 1;
        e.1 += 1;
        let (rf, rt) = (find(&mut parent, f), find(&mut parent, t));
        parent.insert(rf, rt);
    }
    let nodes: Vec<usize> = deg.keys().copied().collect();
    let mut roots: Vec<usize> = nodes.iter().map(|&n| find(&mut parent, n)).collect();
    roots.sort_unstable();
    roots.dedup();
    InterFragmentSummary {
        links: inter.len(),
        components: roots.len(),
        branch_nodes: deg.values().filter(|d| d.0 >= 3).count(),
        three_inflow_nodes: deg.values().filter(|d| d.0 == 3 && d.1 == 3).count(),
    }
}
