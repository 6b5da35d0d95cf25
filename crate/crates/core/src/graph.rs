//! The attributed, directed shock graph.
//!
//! Links run from early to late formation time. Each link is a chain of
//! [`Piece`]s, portions of analytic bisectors stored in the graph's bisector
//! arena, so merged links keep their exact geometry.

use std::collections::BTreeMap;

use crate::bisector::{Bisector, BisectorKind, Generator};
use crate::contour::{BoundaryElement, ElementId};
use crate::error::{Error, Result};
use crate::geom::{Point2, Rect};

/// Curvature samples stored per link.
pub const CURVATURE_SAMPLES: usize = 16;

/// Upper bound on the propagation speed `1 / |dr/ds|` used for acceleration.
const MAX_SPEED: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeLabel {
    Source,
    Sink,
    Junction,
}

impl NodeLabel {
    pub fn code(self) -> u8 {
        match self {
            NodeLabel::Source => 0,
            NodeLabel::Sink => 1,
            NodeLabel::Junction => 2,
        }
    }

    pub fn from_code(c: u8) -> Option<Self> {
        [NodeLabel::Source, NodeLabel::Sink, NodeLabel::Junction]
            .get(c as usize)
            .copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinkLabel {
    Degenerate,
    SemiDegenerate,
    Regular,
}

impl LinkLabel {
    pub fn code(self) -> u8 {
        match self {
            LinkLabel::Degenerate => 0,
            LinkLabel::SemiDegenerate => 1,
            LinkLabel::Regular => 2,
        }
    }

    pub fn from_code(c: u8) -> Option<Self> {
        [LinkLabel::Degenerate, LinkLabel::SemiDegenerate, LinkLabel::Regular]
            .get(c as usize)
            .copied()
    }
}

/// A traversed portion `[t0, t1]` of a bisector; `t1 < t0` means the link
/// runs against the parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub bisector: usize,
    pub t0: f64,
    pub t1: f64,
}

/// Contact-locus summary of one side of a link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySummary {
    pub element: ElementId,
    pub arclength: f64,
    pub curvature: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShockNode {
    pub id: usize,
    pub location: Point2,
    pub radius: f64,
    pub label: NodeLabel,
    /// Incident link ids, sorted by tangent angle then id.
    pub links: Vec<usize>,
    /// Unit shock tangents pointing away from the node, per incident link.
    pub tangents: Vec<Point2>,
    pub normals: Vec<Point2>,
    /// Angle between each tangent and its contact rays.
    pub phis: Vec<f64>,
    /// Left-hand contact point of each incident link with the boundary
    /// tangent angle there.
    pub boundary_points: Vec<(Point2, f64)>,
}

impl ShockNode {
    pub fn degree(&self) -> usize {
        self.links.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShockLink {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    pub pieces: Vec<Piece>,
    pub length: f64,
    pub curvature: [f64; CURVATURE_SAMPLES],
    pub mean_curvature: f64,
    pub acceleration: f64,
    pub label: LinkLabel,
    pub area: f64,
    pub b_plus: BoundarySummary,
    pub b_minus: BoundarySummary,
    /// True when any piece is generated by a bounding-box element.
    pub on_box: bool,
    /// Ids of the links of the unpruned graph this link was built from.
    pub origin_links: Vec<usize>,
}

/// Topology-only link used while building or rewriting graphs.
#[derive(Debug, Clone, PartialEq)]
pub struct RawLink {
    pub from: usize,
    pub to: usize,
    pub pieces: Vec<Piece>,
    pub origin_links: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ShockGraph {
    pub width: f64,
    pub height: f64,
    pub bbox: Option<Rect>,
    pub elements: Vec<BoundaryElement>,
    pub bisectors: Vec<Bisector>,
    pub nodes: Vec<ShockNode>,
    pub links: Vec<ShockLink>,
    /// Links removed by regularization, kept for debug rendering.
    pub pruned: Vec<ShockLink>,
    /// Per node, the tips of branches pruned into it.
    pub erosion: Vec<Vec<ErodedTip>>,
}

/// Origin of a pruned branch, scored against every later branch root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErodedTip {
    pub at: Point2,
    pub radius: f64,
    /// Grown from a convex polyline corner at `at`.
    pub corner: bool,
}

impl ShockGraph {
    /// Builds a graph and computes every attribute from raw topology.
    pub fn assemble(
        width: f64,
        height: f64,
        bbox: Option<Rect>,
        elements: Vec<BoundaryElement>,
        bisectors: Vec<Bisector>,
        nodes: &[(Point2, f64)],
        raw_links: &[RawLink],
    ) -> Self {
        let mut g = ShockGraph {
            width,
            height,
            bbox,
            elements,
            bisectors,
            nodes: Vec::new(),
            links: Vec::new(),
            pruned: Vec::new(),
            erosion: vec![Vec::new(); nodes.len()],
        };
        g.links = raw_links
            .iter()
            .enumerate()
            .map(|(id, raw)| g.build_link(id, raw))
            .collect();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for l in &g.links {
            incident[l.from].push(l.id);
            if l.to != l.from {
                incident[l.to].push(l.id);
            }
        }
        g.nodes = nodes
            .iter()
            .enumerate()
            .map(|(id, &(loc, r))| g.build_node(id, loc, r, &incident[id]))
            .collect();
        g
    }

    pub fn raw_links(&self) -> Vec<RawLink> {
        self.links.iter().map(|l| l.raw()).collect()
    }

    pub fn node_list(&self) -> Vec<(Point2, f64)> {
        self.nodes.iter().map(|n| (n.location, n.radius)).collect()
    }

    pub fn piece_length(&self, p: &Piece) -> f64 {
        self.bisectors[p.bisector].arclength(p.t0, p.t1)
    }

    /// Parameter on a piece at arc-length `a` from its start.
    pub fn piece_param(&self, p: &Piece, a: f64) -> f64 {
        let b = &self.bisectors[p.bisector];
        if p.t1 == p.t0 {
            return p.t0;
        }
        let sign = if p.t1 > p.t0 { 1.0 } else { -1.0 };
        let t = b.param_at_arclength(b.arclength_from_origin(p.t0) + sign * a);
        if sign > 0.0 {
            t.clamp(p.t0, p.t1)
        } else {
            t.clamp(p.t1, p.t0)
        }
    }

    /// Locates arc-length `s` along a link: (piece index, parameter).
    pub fn locate(&self, link: &ShockLink, s: f64) -> (usize, f64) {
        let mut rem = s.max(0.0);
        for (i, p) in link.pieces.iter().enumerate() {
            let len = self.piece_length(p);
            if rem <= len || i + 1 == link.pieces.len() {
                return (i, self.piece_param(p, rem.min(len)));
            }
            rem -= len;
        }
        (0, 0.0)
    }

    /// `n >= 2` samples uniformly spaced in arc-length, endpoints included:
    /// (point, radius, contacts).
    pub fn sample_link(&self, link: &ShockLink, n: usize) -> Vec<(Point2, f64, [Point2; 2])> {
        let total: f64 = link.pieces.iter().map(|p| self.piece_length(p)).sum();
        (0..n)
            .map(|k| {
                let s = if n < 2 { 0.0 } else { total * k as f64 / (n - 1) as f64 };
                let (i, t) = self.locate(link, s);
                let b = &self.bisectors[link.pieces[i].bisector];
                (b.point(t), b.radius(t), b.contacts(t))
            })
            .collect()
    }

    pub fn polyline(&self, link: &ShockLink, n: usize) -> Vec<Point2> {
        self.sample_link(link, n).into_iter().map(|s| s.0).collect()
    }

    /// Label from incident link directions; isolated nodes are an error.
    pub fn classify_node(&self, node: usize) -> Result<NodeLabel> {
        classify(node, &self.nodes[node].links, &self.links)
            .ok_or_else(|| Error::Structure(format!("node {node} has no incident links")))
    }

    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for n in &self.nodes {
            *h.entry(n.degree()).or_insert(0) += 1;
        }
        h
    }

    /// Links generated by two elements, for lookups in tests and examples.
    pub fn link_generators(&self, link: &ShockLink) -> [ElementId; 2] {
        self.bisectors[dominant_piece(self, link).bisector].generators
    }

    fn build_link(&self, id: usize, raw: &RawLink) -> ShockLink {
        let mut link = ShockLink {
            id,
            from: raw.from,
            to: raw.to,
            pieces: raw.pieces.clone(),
            length: 0.0,
            curvature: [0.0; CURVATURE_SAMPLES],
            mean_curvature: 0.0,
            acceleration: 0.0,
            label: LinkLabel::Regular,
            area: 0.0,
            b_plus: BoundarySummary {
                element: 0,
                arclength: 0.0,
                curvature: 0.0,
            },
            b_minus: BoundarySummary {
                element: 0,
                arclength: 0.0,
                curvature: 0.0,
            },
            on_box: false,
            origin_links: raw.origin_links.clone(),
        };
        link.length = raw.pieces.iter().map(|p| self.piece_length(p)).sum();

        let mut turning = 0.0;
        for k in 0..CURVATURE_SAMPLES {
            let s = link.length * k as f64 / (CURVATURE_SAMPLES - 1) as f64;
            let (i, t) = self.locate(&link, s);
            link.curvature[k] = self.bisectors[link.pieces[i].bisector].curvature(t);
        }
        for p in &raw.pieces {
            turning += self.bisectors[p.bisector].turning(p.t0, p.t1);
        }
        if link.length > 0.0 {
            link.mean_curvature = turning / link.length;
        }

        let first = &raw.pieces[0];
        let last = &raw.pieces[raw.pieces.len() - 1];
        let (b0, b1) = (&self.bisectors[first.bisector], &self.bisectors[last.bisector]);
        let speed = |b: &Bisector, t: f64| 1.0 / b.dr_ds(t).abs().max(1.0 / MAX_SPEED);
        let dr = b1.radius(last.t1) - b0.radius(first.t0);
        if dr.abs() > 1e-12 {
            link.acceleration = (speed(b1, last.t1) - speed(b0, first.t0)) / dr;
        }

        let dom = dominant_piece(self, &link);
        let db = &self.bisectors[dom.bisector];
        let tm = self.piece_param(dom, 0.5 * self.piece_length(dom));
        let dir = travel_tangent(db, dom, tm);
        let c = db.contacts(tm);
        let p = db.point(tm);
        let left0 = dir.cross(c[0] - p) >= 0.0;
        let (plus, minus) = if left0 {
            (db.generators[0], db.generators[1])
        } else {
            (db.generators[1], db.generators[0])
        };
        link.label = classify_link_kinds(
            self.elements[db.generators[0]].is_point(),
            self.elements[db.generators[1]].is_point(),
        );

        let (mut s_plus, mut s_minus, mut area) = (0.0, 0.0, 0.0);
        for piece in &raw.pieces {
            let b = &self.bisectors[piece.bisector];
            let tmid = 0.5 * (piece.t0 + piece.t1);
            let d = travel_tangent(b, piece, tmid);
            let cm = b.contacts(tmid);
            let pm = b.point(tmid);
            for side in 0..2 {
                let len = contact_arclength(b, side, piece);
                if d.cross(cm[side] - pm) >= 0.0 {
                    s_plus += len;
                } else {
                    s_minus += len;
                }
                area += side_area(b, side, piece.t0, piece.t1);
            }
            link.on_box |= b.generators.iter().any(|&g| self.elements[g].on_box);
        }
        link.area = area;
        link.b_plus = BoundarySummary {
            element: plus,
            arclength: s_plus,
            curvature: 0.0,
        };
        link.b_minus = BoundarySummary {
            element: minus,
            arclength: s_minus,
            curvature: 0.0,
        };
        link
    }

    fn build_node(&self, id: usize, location: Point2, radius: f64, incident: &[usize]) -> ShockNode {
        let mut entries: Vec<(f64, usize, Point2, f64, (Point2, f64))> = incident
            .iter()
            .map(|&lid| {
                let link = &self.links[lid];
                // pick the end of the link that sits at this node
                let outgoing = link.from == id;
                let (piece, t, sign) = if outgoing {
                    let p = &link.pieces[0];
                    (p, p.t0, 1.0)
                } else {
                    let p = &link.pieces[link.pieces.len() - 1];
                    (p, p.t1, -1.0)
                };
                let b = &self.bisectors[piece.bisector];
                let tangent = travel_tangent(b, piece, t) * sign;
                let dr_away = b.dr_ds(t) * if (piece.t1 >= piece.t0) == outgoing { 1.0 } else { -1.0 };
                let phi = dr_away.clamp(-1.0, 1.0).acos();
                let p = b.point(t);
                let c = b.contacts(t);
                let side = if tangent.cross(c[0] - p) >= 0.0 { 0 } else { 1 };
                let bt = Generator::tangent_at(&b.sources[side], p).angle();
                (tangent.angle(), lid, tangent, phi, (c[side], bt))
            })
            .collect();
        entries.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let label = classify(id, incident, &self.links).unwrap_or(NodeLabel::Sink);
        ShockNode {
            id,
            location,
            radius,
            label,
            links: entries.iter().map(|e| e.1).collect(),
            tangents: entries.iter().map(|e| e.2).collect(),
            normals: entries.iter().map(|e| e.2.perp()).collect(),
            phis: entries.iter().map(|e| e.3).collect(),
            boundary_points: entries.iter().map(|e| e.4).collect(),
        }
    }
}

impl ShockLink {
    pub fn raw(&self) -> RawLink {
        RawLink {
            from: self.from,
            to: self.to,
            pieces: self.pieces.clone(),
            origin_links: self.origin_links.clone(),
        }
    }
}

/// Source iff every incident link leaves the node, Sink iff every one
/// arrives, Junction otherwise. `None` for an isolated node.
fn classify(node: usize, incident: &[usize], links: &[ShockLink]) -> Option<NodeLabel> {
    if incident.is_empty() {
        return None;
    }
    let outs = incident.iter().filter(|&&l| links[l].from == node).count();
    let ins = incident.iter().filter(|&&l| links[l].to == node).count();
    Some(if ins == 0 {
        NodeLabel::Source
    } else if outs == 0 {
        NodeLabel::Sink
    } else {
        NodeLabel::Junction
    })
}

/// Discrete link label from generator kinds.
pub fn classify_link_kinds(a_is_point: bool, b_is_point: bool) -> LinkLabel {
    match (a_is_point, b_is_point) {
        (true, true) => LinkLabel::Degenerate,
        (false, false) => LinkLabel::Regular,
        _ => LinkLabel::SemiDegenerate,
    }
}

pub fn classify_link(graph: &ShockGraph, link: &ShockLink) -> LinkLabel {
    let [a, b] = graph.link_generators(link);
    classify_link_kinds(graph.elements[a].is_point(), graph.elements[b].is_point())
}

// longest piece, first on ties
fn dominant_piece<'a>(g: &ShockGraph, link: &'a ShockLink) -> &'a Piece {
    let mut best = &link.pieces[0];
    let mut best_len = g.piece_length(best);
    for p in &link.pieces[1..] {
        let len = g.piece_length(p);
        if len > best_len {
            best = p;
            best_len = len;
        }
    }
    best
}

fn travel_tangent(b: &Bisector, p: &Piece, t: f64) -> Point2 {
    if p.t1 >= p.t0 {
        b.tangent(t)
    } else {
        -b.tangent(t)
    }
}

fn contact_arclength(b: &Bisector, side: usize, p: &Piece) -> f64 {
    if b.sources[side].is_point() {
        return 0.0;
    }
    b.contacts(p.t0)[side].dist(b.contacts(p.t1)[side])
}

// 3-point Gauss-Legendre is exact for the cubic shoelace integrands
const GAUSS: [(f64, f64); 3] = [
    (-0.774_596_669_241_483_4, 5.0 / 9.0),
    (0.0, 8.0 / 9.0),
    (0.774_596_669_241_483_4, 5.0 / 9.0),
];

fn shoelace_integral(t0: f64, t1: f64, f: impl Fn(f64) -> (Point2, Point2)) -> f64 {
    let (m, h) = (0.5 * (t0 + t1), 0.5 * (t1 - t0));
    GAUSS
        .iter()
        .map(|&(x, w)| {
            let (p, dp) = f(m + h * x);
            w * p.cross(dp)
        })
        .sum::<f64>()
        * h
}

/// Area enclosed by the shock curve over `[t0, t1]`, the two contact rays
/// at its ends, and the contact locus on generator `side`.
pub fn side_area(b: &Bisector, side: usize, t0: f64, t1: f64) -> f64 {
    if t0 == t1 {
        return 0.0;
    }
    let shock = shoelace_integral(t0, t1, |t| (b.point(t), b.tangent(t) * b.speed(t)));
    let contact = shoelace_integral(t1, t0, |t| {
        let c = b.contacts(t)[side];
        let dc = match b.sources[side] {
            Generator::Segment(a, e) if b.kind != BisectorKind::PerpendicularAtEndpoint => {
                let u = (e - a).normalized();
                u * u.dot(b.tangent(t) * b.speed(t))
            }
            _ => Point2::ORIGIN,
        };
        (c, dc)
    });
    let (p0, p1) = (b.point(t0), b.point(t1));
    let (c0, c1) = (b.contacts(t0)[side], b.contacts(t1)[side]);
    (0.5 * (shock + p1.cross(c1) + contact + c0.cross(p0))).abs()
}

/// Area swept by a link between its two boundary contacts.
pub fn link_area(graph: &ShockGraph, link: &ShockLink) -> f64 {
    link.pieces
        .iter()
        .map(|p| {
            let b = &graph.bisectors[p.bisector];
            side_area(b, 0, p.t0, p.t1) + side_area(b, 1, p.t0, p.t1)
        })
        .sum()
}

/// Merges every node with exactly two incident links into one link when the
/// flow passes through it (one in, one out), or when both links have
/// constant radius (midline sources and sinks). `keep` marks nodes that
/// survive even when left isolated; others without links are dropped.
/// Compacted nodes, links, and the new id of every input node that survives.
pub type Compacted = (Vec<(Point2, f64)>, Vec<RawLink>, Vec<Option<usize>>);

/// Returns the compacted node list, the links, and the new id of every input
/// node that survives.
pub fn dissolve_and_compact(
    bisectors: &[Bisector],
    nodes: &[(Point2, f64)],
    links: Vec<RawLink>,
    keep: &[bool],
) -> Compacted {
    let mut links: Vec<Option<RawLink>> = links.into_iter().map(Some).collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (i, l) in links.iter().enumerate() {
        let l = l.as_ref().unwrap();
        incident[l.from].push(i);
        if l.to != l.from {
            incident[l.to].push(i);
        }
    }
    let constant = |l: &RawLink| l.pieces.iter().all(|p| bisectors[p.bisector].is_constant_radius());
    let mut removed = vec![false; nodes.len()];
    for n in 0..nodes.len() {
        let inc: Vec<usize> = incident[n].iter().copied().filter(|&i| links[i].is_some()).collect();
        if inc.len() != 2 || inc[0] == inc[1] {
            continue;
        }
        let (a, b) = (links[inc[0]].clone().unwrap(), links[inc[1]].clone().unwrap());
        if a.from == a.to || b.from == b.to {
            continue;
        }
        let merged = if a.to == n && b.from == n {
            Some(concat(&a, &b))
        } else if b.to == n && a.from == n {
            Some(concat(&b, &a))
        } else if constant(&a) && constant(&b) {
            // flip one so the flow passes through n
            if a.from == n && b.from == n {
                Some(concat(&reverse(&a), &b))
            } else {
                Some(concat(&a, &reverse(&b)))
            }
        } else {
            None
        };
        let Some(m) = merged else { continue };
        if m.from == m.to {
            continue;
        }
        links[inc[0]] = Some(m.clone());
        links[inc[1]] = None;
        removed[n] = true;
        for end in [m.from, m.to] {
            incident[end].retain(|&i| i != inc[1]);
            if !incident[end].contains(&inc[0]) {
                incident[end].push(inc[0]);
            }
        }
    }
    let mut used = vec![false; nodes.len()];
    for l in links.iter().flatten() {
        used[l.from] = true;
        used[l.to] = true;
    }
    let mut remap = vec![usize::MAX; nodes.len()];
    let mut out_nodes = Vec::new();
    for n in 0..nodes.len() {
        if !removed[n] && (used[n] || keep.get(n).copied().unwrap_or(false)) {
            remap[n] = out_nodes.len();
            out_nodes.push(nodes[n]);
        }
    }
    let placement = remap.iter().map(|&m| (m != usize::MAX).then_some(m)).collect();
    let out_links = links
        .into_iter()
        .flatten()
        .map(|mut l| {
            l.from = remap[l.from];
            l.to = remap[l.to];
            l
        })
        .collect();
    (out_nodes, out_links, placement)
}

fn concat(a: &RawLink, b: &RawLink) -> RawLink {
    let mut origin = a.origin_links.clone();
    origin.extend(&b.origin_links);
    origin.sort_unstable();
    origin.dedup();
    RawLink {
        from: a.from,
        to: b.to,
        pieces: a.pieces.iter().chain(&b.pieces).copied().collect(),
        origin_links: origin,
    }
}

fn reverse(a: &RawLink) -> RawLink {
    RawLink {
        from: a.to,
        to: a.from,
        pieces: a
            .pieces
            .iter()
            .rev()
            .map(|p| Piece {
                bisector: p.bisector,
                t0: p.t1,
                t1: p.t0,
            })
            .collect(),
        origin_links: a.origin_links.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisector::{bisector_point_segment, bisector_segment_segment};

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn midline_area_is_a_rectangle() {
        let b = &bisector_segment_segment((p(0.0, 0.0), p(5.0, 0.0)), (p(0.0, 2.0), p(5.0, 2.0)), [0, 1]).unwrap()[0];
        let area = side_area(b, 0, 1.0, 4.0) + side_area(b, 1, 1.0, 4.0);
        assert!((area - 6.0).abs() < 1e-12, "{area}");
        assert_eq!(side_area(b, 0, 2.0, 2.0), 0.0);
    }

    #[test]
    fn parabola_area_matches_dense_shoelace() {
        let b = bisector_point_segment(p(0.0, 2.0), (p(-10.0, 0.0), p(10.0, 0.0)), [0, 1]).unwrap();
        let (t0, t1) = (-1.5, 3.0);
        // oracle: polygon through dense samples of each side's boundary
        for side in 0..2 {
            let n = 20_000;
            let mut ring: Vec<Point2> = (0..=n).map(|k| b.point(t0 + (t1 - t0) * k as f64 / n as f64)).collect();
            ring.extend(
                (0..=n)
                    .rev()
                    .map(|k| b.contacts(t0 + (t1 - t0) * k as f64 / n as f64)[side]),
            );
            let dense = crate::geom::signed_area(&ring).abs();
            let exact = side_area(&b, side, t0, t1);
            assert!((dense - exact).abs() / exact < 1e-6, "side {side}: {dense} vs {exact}");
        }
    }

    #[test]
    fn link_labels_follow_generator_kinds() {
        assert_eq!(classify_link_kinds(true, true), LinkLabel::Degenerate);
        assert_eq!(classify_link_kinds(true, false), LinkLabel::SemiDegenerate);
        assert_eq!(classify_link_kinds(false, true), LinkLabel::SemiDegenerate);
        assert_eq!(classify_link_kinds(false, false), LinkLabel::Regular);
    }

    #[test]
    fn label_codes_round_trip() {
        for l in [NodeLabel::Source, NodeLabel::Sink, NodeLabel::Junction] {
            assert_eq!(NodeLabel::from_code(l.code()), Some(l));
        }
        for l in [LinkLabel::Degenerate, LinkLabel::SemiDegenerate, LinkLabel::Regular] {
            assert_eq!(LinkLabel::from_code(l.code()), Some(l));
        }
    }
}
