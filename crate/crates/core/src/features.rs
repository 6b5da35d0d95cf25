//! Fixed-length node and edge feature vectors.
//!
//! Node layout for degree `d`:
//!
//! | block            | degree 2 | degree 3, 4 |
//! |------------------|----------|-------------|
//! | `x, y, r, label` | 4        | 4           |
//! | tangent angles   | 1        | d           |
//! | contact angles   | 1        | d           |
//! | boundary points  | 2 x 3    | d x 3       |
//! | edge blocks      | 2 x 8    | d x 8       |
//!
//! giving populated prefixes of 28, 43 and 56, zero padded to
//! [`NODE_FEATURE_LEN`]. A degree-2 node lies on one smooth shock curve, so
//! its single tangent and contact angle are those of its first link.
//! Degree-0 and degree-1 nodes use the degree-2 layout with zero blocks for
//! the missing links.

use crate::error::{Error, Result};
use crate::graph::{ShockGraph, ShockLink, ShockNode};

pub const NODE_FEATURE_LEN: usize = 58;
pub const EDGE_FEATURE_LEN: usize = 8;
pub const LAYOUT_VERSION: u32 = 1;
pub const MAX_DEGREE: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct NodeFeatureVector {
    pub values: [f64; NODE_FEATURE_LEN],
    /// Degree of the layout used (2 to 4).
    pub degree: usize,
    pub layout_version: u32,
}

impl NodeFeatureVector {
    pub fn populated_len(&self) -> usize {
        populated_len(self.degree)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeFeatureVector {
    pub values: [f64; EDGE_FEATURE_LEN],
}

/// Prefix length of the layout for a degree in `2..=4`.
pub fn populated_len(degree: usize) -> usize {
    let d = degree.max(2);
    let angles = if d == 2 { 2 } else { 2 * d };
    4 + angles + 3 * d + EDGE_FEATURE_LEN * d
}

/// `(s, kappa, area, label, s_B+, kappa_B+, s_B-, kappa_B-)`.
pub fn edge_features(link: &ShockLink) -> EdgeFeatureVector {
    EdgeFeatureVector {
        values: [
            link.length,
            link.mean_curvature,
            link.area,
            link.label.code() as f64,
            link.b_plus.arclength,
            link.b_plus.curvature,
            link.b_minus.arclength,
            link.b_minus.curvature,
        ],
    }
}

pub fn node_features(node: &ShockNode, graph: &ShockGraph) -> Result<NodeFeatureVector> {
    node_features_with(node, |l| {
        graph
            .links
            .get(l)
            .map_or([0.0; EDGE_FEATURE_LEN], |link| edge_features(link).values)
    })
}

/// Node features with edge blocks from `edge`, indexed by incident link id.
pub(crate) fn node_features_with(
    node: &ShockNode,
    edge: impl Fn(usize) -> [f64; EDGE_FEATURE_LEN],
) -> Result<NodeFeatureVector> {
    let deg = node.degree();
    if deg > MAX_DEGREE {
        return Err(Error::FeatureOverflow {
            node: node.id,
            degree: deg,
        });
    }
    let d = deg.max(2);
    let mut v = [0.0; NODE_FEATURE_LEN];
    let mut k = 0;
    let mut put = |x: f64, k: &mut usize| {
        v[*k] = x;
        *k += 1;
    };
    put(node.location.x, &mut k);
    put(node.location.y, &mut k);
    put(node.radius, &mut k);
    put(node.label.code() as f64, &mut k);
    let n_angles = if d == 2 { 1 } else { d };
    for i in 0..n_angles {
        put(node.tangents.get(i).map_or(0.0, |t| t.angle()), &mut k);
    }
    for i in 0..n_angles {
        put(node.phis.get(i).copied().unwrap_or(0.0), &mut k);
    }
    for i in 0..d {
        let (x, y, theta) = node
            .boundary_points
            .get(i)
            .map_or((0.0, 0.0, 0.0), |&(p, t)| (p.x, p.y, t));
        put(x, &mut k);
        put(y, &mut k);
        put(theta, &mut k);
    }
    for i in 0..d {
        let e = node.links.get(i).map_or([0.0; EDGE_FEATURE_LEN], |&l| edge(l));
        for x in e {
            put(x, &mut k);
        }
    }
    debug_assert_eq!(k, populated_len(d));
    Ok(NodeFeatureVector {
        values: v,
        degree: d,
        layout_version: LAYOUT_VERSION,
    })
}

/// Features of every node, in node order.
pub fn graph_features(graph: &ShockGraph) -> Result<Vec<NodeFeatureVector>> {
    graph.nodes.iter().map(|n| node_features(n, graph)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_lengths() {
        assert_eq!(populated_len(2), 28);
        assert_eq!(populated_len(3), 43);
        assert_eq!(populated_len(4), 56);
        assert_eq!(populated_len(1), 28);
    }
}
