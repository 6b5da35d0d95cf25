//! Graph serialization: canonical text, GraphML and SVG.

mod graphml;
mod sgtext;
mod svg;

use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

pub use graphml::to_graphml;
pub use sgtext::{parse_sgtext, to_sgtext};
pub use svg::{to_svg, SvgOptions, BOX_COLOR, CONTOUR_COLOR, PRUNED_COLOR, SHOCK_COLOR};

use crate::error::{Error, Result};
use crate::features::{edge_features, node_features_with, EDGE_FEATURE_LEN, MAX_DEGREE, NODE_FEATURE_LEN};
use crate::geom::Point2;
use crate::graph::{LinkLabel, NodeLabel, ShockGraph, CURVATURE_SAMPLES};

/// Geometry samples written per link.
pub const GEOMETRY_SAMPLES: usize = CURVATURE_SAMPLES;

#[derive(Debug, Clone, PartialEq)]
pub struct ExportedNode {
    pub id: usize,
    pub label: NodeLabel,
    pub location: Point2,
    pub radius: f64,
    pub features: [f64; NODE_FEATURE_LEN],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExportedLink {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    pub label: LinkLabel,
    /// `s, kappa, area, s_B+, kappa_B+, s_B-, kappa_B-`.
    pub metrics: [f64; 7],
    pub geometry: Vec<Point2>,
}

/// Serializable view of a graph with its features.
#[derive(Debug, Clone, PartialEq)]
pub struct ExportedGraph {
    pub width: f64,
    pub height: f64,
    pub lambda: f64,
    pub bbox_scale: Option<f64>,
    pub nodes: Vec<ExportedNode>,
    pub links: Vec<ExportedLink>,
}

/// Incident-link groups of a node split for export: the first group holds
/// three links, middle groups two, the last at most three, so with the
/// connectors between consecutive groups no sub-node exceeds [`MAX_DEGREE`].
fn split_groups(links: &[usize]) -> Vec<&[usize]> {
    if links.len() <= MAX_DEGREE {
        return vec![links];
    }
    let mut groups = vec![&links[..3]];
    let mut rest = &links[3..];
    while rest.len() > 3 {
        groups.push(&rest[..2]);
        rest = &rest[2..];
    }
    groups.push(rest);
    groups
}

impl ExportedGraph {
    /// Nodes of degree above [`MAX_DEGREE`] are exported as a chain of
    /// coincident sub-nodes, consecutive in id, joined by zero-length
    /// degenerate connector links numbered after the graph's links. Incident
    /// links are shared out in angular order; every sub-node keeps the
    /// original label.
    pub fn from_graph(g: &ShockGraph, lambda: f64, bbox_scale: Option<f64>) -> Result<Self> {
        let mut nodes = Vec::with_capacity(g.nodes.len());
        let mut links: Vec<ExportedLink> = g
            .links
            .iter()
            .map(|l| {
                let e = edge_features(l).values;
                ExportedLink {
                    id: l.id,
                    from: l.from,
                    to: l.to,
                    label: l.label,
                    metrics: [e[0], e[1], e[2], e[4], e[5], e[6], e[7]],
                    geometry: g.polyline(l, GEOMETRY_SAMPLES),
                }
            })
            .collect();
        let edge = |l: usize| {
            g.links
                .get(l)
                .map_or([0.0; EDGE_FEATURE_LEN], |link| edge_features(link).values)
        };
        for n in &g.nodes {
            let groups = split_groups(&n.links);
            let first = nodes.len();
            let first_connector = links.len();
            for (k, group) in groups.iter().enumerate() {
                let id = first + k;
                let mut sub = n.clone();
                sub.id = id;
                sub.links.clear();
                sub.tangents.clear();
                sub.normals.clear();
                sub.phis.clear();
                sub.boundary_points.clear();
                let connectors = [
                    (k > 0).then(|| first_connector + k - 1),
                    (k + 1 < groups.len()).then(|| first_connector + k),
                ];
                for (i, &l) in n.links.iter().enumerate() {
                    if group.contains(&l) {
                        sub.links.push(l);
                        sub.tangents.push(n.tangents[i]);
                        sub.normals.push(n.normals[i]);
                        sub.phis.push(n.phis[i]);
                        sub.boundary_points.push(n.boundary_points[i]);
                        let orig = &g.links[l];
                        if orig.from == n.id {
                            links[l].from = id;
                        }
                        if orig.to == n.id {
                            links[l].to = id;
                        }
                    }
                }
                for c in connectors.into_iter().flatten() {
                    sub.links.push(c);
                    sub.tangents.push(Point2::ORIGIN);
                    sub.normals.push(Point2::ORIGIN);
                    sub.phis.push(0.0);
                    sub.boundary_points.push((n.location, 0.0));
                }
                nodes.push(ExportedNode {
                    id,
                    label: n.label,
                    location: n.location,
                    radius: n.radius,
                    features: node_features_with(&sub, edge)?.values,
                });
            }
            for k in 1..groups.len() {
                links.push(ExportedLink {
                    id: links.len(),
                    from: first + k - 1,
                    to: first + k,
                    label: LinkLabel::Degenerate,
                    metrics: [0.0; 7],
                    geometry: vec![n.location; GEOMETRY_SAMPLES],
                });
            }
        }
        Ok(ExportedGraph {
            width: g.width,
            height: g.height,
            lambda,
            bbox_scale,
            nodes,
            links,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Sgtext,
    Graphml,
    Svg,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sgtext" => Ok(Format::Sgtext),
            "graphml" => Ok(Format::Graphml),
            "svg" => Ok(Format::Svg),
            _ => Err(Error::InvalidInput(format!("unknown format {s:?}"))),
        }
    }
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Sgtext => "sg",
            Format::Graphml => "graphml",
            Format::Svg => "svg",
        }
    }
}

/// Writes `bytes` to a temporary file beside `path`, then renames it over
/// `path`, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidInput(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let res = (|| {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    res.map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        Error::io(path, e)
    })
}
