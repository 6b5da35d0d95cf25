//! Bounding-box augmentation and saliency-based pruning.
//!
//! A leaf link is scored by the boundary displacement needed to erase it up
//! to the maximal circle at its inner end. The displacement is measured from
//! the link's tips: a convex polyline corner contributes its distance to that
//! circle, any other tip the radius gained from it. When a link is removed its
//! tips pass to the inner end, so erosion is charged against the original
//! boundary. Links whose leaf is their high-radius end are never pruned.
//!
//! Pruning is defined through removal thresholds. Leaf links are removed one
//! at a time, lowest score first (ties by smallest link id), re-scoring the
//! leaves that removals expose; each removed link records the running maximum
//! of the scores seen so far. `prune(g, lambda)` removes exactly the links
//! whose threshold is `<= lambda`, which makes the result monotone in
//! `lambda`. Each surviving leaf is then moved up its link to where the
//! displacement reaches `lambda`, and merged degree-2 nodes are dissolved.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::contour::{ContourFragment, ElementKind, FragmentRole};
use crate::error::{Error, Result};
use crate::geom::{Point2, Rect};
use crate::graph::{dissolve_and_compact, ErodedTip, Piece, RawLink, ShockGraph};

pub const DEFAULT_BBOX_SCALE: f64 = 2.0;
pub const DEFAULT_LAMBDA: f64 = 1.0;

/// Floor for `sin psi` in the corner formula.
const SIN_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub min: Point2,
    pub max: Point2,
    pub scale: f64,
}

impl BoundingBox {
    /// Box of `scale` times the image size, centred on the image.
    pub fn for_image(width: f64, height: f64, scale: f64) -> Result<Self> {
        if !(scale > 1.0) || !scale.is_finite() {
            return Err(Error::InvalidInput(format!("bounding box scale {scale} must be > 1")));
        }
        if !(width > 0.0 && height > 0.0) {
            return Err(Error::InvalidInput(format!(
                "image size {width}x{height} must be positive"
            )));
        }
        let c = Point2::new(0.5 * width, 0.5 * height);
        let half = Point2::new(0.5 * scale * width, 0.5 * scale * height);
        Ok(BoundingBox {
            min: c - half,
            max: c + half,
            scale,
        })
    }

    pub fn rect(&self) -> Rect {
        Rect::new(self.min, self.max)
    }

    pub fn corners(&self) -> [Point2; 4] {
        [
            self.min,
            Point2::new(self.max.x, self.min.y),
            self.max,
            Point2::new(self.min.x, self.max.y),
        ]
    }
}

/// Appends the bounding box as one closed fragment.
pub fn augment_with_box(
    fragments: &[ContourFragment],
    width: f64,
    height: f64,
    scale: f64,
) -> Result<(Vec<ContourFragment>, BoundingBox)> {
    let bbox = BoundingBox::for_image(width, height, scale)?;
    for f in fragments {
        for v in &f.vertices {
            let inside = v.x > bbox.min.x && v.x < bbox.max.x && v.y > bbox.min.y && v.y < bbox.max.y;
            if !inside {
                return Err(Error::InvalidInput(format!(
                    "fragment {} vertex ({}, {}) is not strictly inside the bounding box",
                    f.id, v.x, v.y
                )));
            }
        }
    }
    let mut out = fragments.to_vec();
    let id = fragments.iter().map(|f| f.id + 1).max().unwrap_or(0);
    let mut frame = ContourFragment::closed(id, bbox.corners().to_vec());
    frame.role = FragmentRole::BoundingBox;
    out.push(frame);
    Ok((out, bbox))
}

/// Displacement from a convex corner with half interior angle `psi` to the
/// inscribed arc of radius `r_tip`. Equal to the corner tip score when the
/// circle touches both corner edges.
pub fn corner_deformation(r_tip: f64, sin_psi: f64) -> f64 {
    let s = sin_psi.abs().min(1.0);
    (r_tip * (1.0 - s) / s.max(SIN_FLOOR)).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaliencyScore {
    pub link_id: usize,
    pub deformation: f64,
}

/// Current topology with removable links.
struct Work<'a> {
    g: &'a ShockGraph,
    alive: Vec<bool>,
    incident: Vec<Vec<usize>>,
    tips: Vec<Vec<ErodedTip>>,
}

/// A scored leaf link.
struct Branch {
    link: usize,
    /// Node the tips move to; `None` when the link is its whole component.
    root: Option<usize>,
    /// Tips erased with the link.
    tips: Vec<ErodedTip>,
    score: f64,
}

/// One removal: the link's tips move to `root`.
struct Removal {
    root: Option<usize>,
    tips: Vec<ErodedTip>,
    threshold: f64,
}

impl ErodedTip {
    /// Boundary displacement that erases everything from this tip up to the
    /// maximal circle `(p, r)`.
    fn deformation(&self, p: Point2, r: f64) -> f64 {
        let d = if self.corner {
            self.at.dist(p) - r
        } else {
            r - self.radius
        };
        d.max(0.0)
    }
}

impl<'a> Work<'a> {
    fn new(g: &'a ShockGraph) -> Self {
        let mut incident = vec![Vec::new(); g.nodes.len()];
        for l in &g.links {
            incident[l.from].push(l.id);
            if l.to != l.from {
                incident[l.to].push(l.id);
            }
        }
        let mut tips = g.erosion.clone();
        tips.resize(g.nodes.len(), Vec::new());
        Work {
            g,
            alive: vec![true; g.links.len()],
            incident,
            tips,
        }
    }

    fn live(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[n].iter().copied().filter(|&l| self.alive[l])
    }

    fn degree(&self, n: usize) -> usize {
        self.live(n).count()
    }

    fn other(&self, l: usize, n: usize) -> usize {
        let link = &self.g.links[l];
        if link.from == n {
            link.to
        } else {
            link.from
        }
    }

    fn branch_from(&self, leaf: usize) -> Option<Branch> {
        if self.degree(leaf) != 1 {
            return None;
        }
        let l = self.live(leaf).next()?;
        let end = self.other(l, leaf);
        let node = |n: usize| &self.g.nodes[n];
        let closed_component = self.degree(end) == 1 && end != leaf;
        let mut tips = self.tips_at(leaf, l);
        let root = if closed_component {
            tips.extend(self.tips_at(end, l));
            if node(leaf).radius > node(end).radius {
                leaf
            } else {
                end
            }
        } else {
            end
        };
        let tol = 1e-9 * (1.0 + node(end).radius);
        let score = if !closed_component && node(leaf).radius > node(end).radius + tol {
            f64::INFINITY
        } else {
            let (p, r) = (node(root).location, node(root).radius);
            tips.iter().map(|t| t.deformation(p, r)).fold(0.0, f64::max)
        };
        Some(Branch {
            link: l,
            root: (!closed_component).then_some(end),
            tips,
            score,
        })
    }

    /// Tips erased with the leaf: those pruned into it, or the leaf itself
    /// when nothing was.
    fn tips_at(&self, leaf: usize, link: usize) -> Vec<ErodedTip> {
        if self.tips[leaf].is_empty() {
            vec![self.own_tip(leaf, link)]
        } else {
            self.tips[leaf].clone()
        }
    }

    /// The leaf itself as a tip: a convex corner when it sits on the shared
    /// vertex of the two adjacent segments generating its link.
    fn own_tip(&self, tip: usize, first_link: usize) -> ErodedTip {
        let g = self.g;
        let node = &g.nodes[tip];
        let [a, b] = g.link_generators(&g.links[first_link]);
        let (ea, eb) = (&g.elements[a], &g.elements[b]);
        let corner = node.radius <= 1e-9
            && matches!((ea.kind, eb.kind), (ElementKind::Segment(..), ElementKind::Segment(..)))
            && ea.is_adjacent(b);
        ErodedTip {
            at: node.location,
            radius: node.radius,
            corner,
        }
    }
}

/// Removal threshold of every link: the smallest `lambda` at which
/// [`prune`] removes it (`+inf` for links that are never removed).
pub fn removal_thresholds(g: &ShockGraph) -> Vec<f64> {
    erode(g).0
}

fn erode(g: &ShockGraph) -> (Vec<f64>, Vec<Removal>) {
    let mut w = Work::new(g);
    let mut death = vec![f64::INFINITY; g.links.len()];
    let mut log = Vec::new();
    let mut heap: BinaryHeap<Reverse<(OrdF64, usize, usize)>> = BinaryHeap::new();
    let push = |w: &Work, heap: &mut BinaryHeap<_>, n: usize| {
        if let Some(b) = w.branch_from(n) {
            if b.score.is_finite() {
                heap.push(Reverse((OrdF64(b.score), b.link, n)));
            }
        }
    };
    for n in 0..g.nodes.len() {
        push(&w, &mut heap, n);
    }
    let mut running = 0.0f64;
    while let Some(Reverse((OrdF64(score), link, leaf))) = heap.pop() {
        let Some(b) = w.branch_from(leaf) else { continue };
        if !b.score.is_finite() {
            continue;
        }
        if b.score != score || b.link != link {
            // the neighbourhood changed since it was queued
            heap.push(Reverse((OrdF64(b.score), b.link, leaf)));
            continue;
        }
        running = running.max(score);
        w.alive[b.link] = false;
        death[b.link] = running;
        if let Some(r) = b.root {
            w.tips[r].extend(&b.tips);
            push(&w, &mut heap, r);
        }
        log.push(Removal {
            root: b.root,
            tips: b.tips,
            threshold: running,
        });
    }
    (death, log)
}

/// Saliency of the branch that `link` belongs to in the unpruned graph;
/// `+inf` for links not on a leaf branch.
pub fn saliency(g: &ShockGraph, link: usize) -> SaliencyScore {
    let w = Work::new(g);
    let mut best = f64::INFINITY;
    for n in 0..g.nodes.len() {
        if let Some(b) = w.branch_from(n) {
            if b.link == link {
                best = best.min(b.score);
            }
        }
    }
    SaliencyScore {
        link_id: link,
        deformation: best,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct OrdF64(f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&o.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PruneOptions {
    pub lambda: f64,
    /// Also remove links generated by a bounding-box element.
    pub drop_box_links: bool,
}

impl Default for PruneOptions {
    fn default() -> Self {
        PruneOptions {
            lambda: DEFAULT_LAMBDA,
            drop_box_links: false,
        }
    }
}

/// Removes every link whose removal threshold is `<= lambda`, then merges
/// links across the degree-2 nodes this leaves behind.
pub fn prune(g: &ShockGraph, lambda: f64) -> ShockGraph {
    prune_with(
        g,
        &PruneOptions {
            lambda,
            drop_box_links: false,
        },
    )
}

pub fn prune_with(g: &ShockGraph, opts: &PruneOptions) -> ShockGraph {
    let (death, log) = erode(g);
    let remove: Vec<bool> = g
        .links
        .iter()
        .map(|l| death[l.id] <= opts.lambda || (opts.drop_box_links && l.on_box))
        .collect();
    // nodes that lose every link to pruning survive as the collapsed
    // remainder of their component
    let mut had = vec![false; g.nodes.len()];
    let mut keeps = vec![false; g.nodes.len()];
    for l in &g.links {
        had[l.from] = true;
        had[l.to] = true;
        if !remove[l.id] {
            keeps[l.from] = true;
            keeps[l.to] = true;
        }
    }
    let keep = collapse_survivors(g, &remove, &keeps, &had);
    let kept: Vec<RawLink> = g.links.iter().filter(|l| !remove[l.id]).map(|l| l.raw()).collect();
    let (mut nodes, mut links, placement) = dissolve_and_compact(&g.bisectors, &g.node_list(), kept, &keep);
    let mut tips = g.erosion.clone();
    tips.resize(g.nodes.len(), Vec::new());
    for r in log.into_iter().filter(|r| r.threshold <= opts.lambda) {
        if let Some(root) = r.root {
            tips[root].extend(r.tips);
        }
    }
    let mut erosion = vec![Vec::new(); nodes.len()];
    for (n, t) in tips.into_iter().enumerate() {
        // tips of dissolved nodes were scored where the node stood
        if let Some(m) = placement[n] {
            erosion[m].extend(t);
        }
    }
    let mut out = ShockGraph::assemble(
        g.width,
        g.height,
        g.bbox,
        g.elements.clone(),
        g.bisectors.clone(),
        &nodes,
        &links,
    );
    out.erosion = erosion;
    if let Some(erosion) = trim_leaves(&out, &mut nodes, &mut links, opts.lambda) {
        out = ShockGraph::assemble(
            g.width,
            g.height,
            g.bbox,
            g.elements.clone(),
            g.bisectors.clone(),
            &nodes,
            &links,
        );
        out.erosion = erosion;
    }
    out.pruned = g.pruned.clone();
    out.pruned.extend(g.links.iter().filter(|l| remove[l.id]).cloned());
    out
}

/// Moves each leaf up its link to where erasing the branch would first
/// deform the boundary by more than `lambda`. Links between two leaves are
/// left whole. A moved leaf keeps the tips it was scored by; returns the
/// updated erosion when anything moved.
fn trim_leaves(
    g: &ShockGraph,
    nodes: &mut [(Point2, f64)],
    links: &mut [RawLink],
    lambda: f64,
) -> Option<Vec<Vec<ErodedTip>>> {
    let w = Work::new(g);
    let mut erosion = w.tips.clone();
    let mut moved = false;
    for (id, l) in links.iter_mut().enumerate() {
        let (a, b) = (w.degree(l.from) == 1, w.degree(l.to) == 1);
        if a == b {
            continue;
        }
        let leaf = if a { l.from } else { l.to };
        if !a {
            *l = reversed(l);
        }
        let tips = w.tips_at(leaf, id);
        let excess = |k: usize, t: f64| {
            let bis = &g.bisectors[k];
            let (p, r) = (bis.point(t), bis.radius(t));
            tips.iter().map(|tip| tip.deformation(p, r)).fold(0.0, f64::max) - lambda
        };
        if let Some((k, t)) = first_crossing(&l.pieces, &excess) {
            let bis = &g.bisectors[l.pieces[k].bisector];
            if bis.point(t).dist(nodes[leaf].0) > 1e-9 {
                l.pieces.drain(..k);
                l.pieces[0].t0 = t;
                nodes[leaf] = (bis.point(t), bis.radius(t));
                erosion[leaf] = tips;
                moved = true;
            }
        }
        if !a {
            *l = reversed(l);
        }
    }
    moved.then_some(erosion)
}

fn reversed(l: &RawLink) -> RawLink {
    RawLink {
        from: l.to,
        to: l.from,
        pieces: l
            .pieces
            .iter()
            .rev()
            .map(|p| Piece {
                bisector: p.bisector,
                t0: p.t1,
                t1: p.t0,
            })
            .collect(),
        origin_links: l.origin_links.clone(),
    }
}

/// First parameter along `pieces` where `excess` turns positive.
fn first_crossing(pieces: &[Piece], excess: &impl Fn(usize, f64) -> f64) -> Option<(usize, f64)> {
    const STEPS: usize = 64;
    for (k, pc) in pieces.iter().enumerate() {
        let at = |i: usize| pc.t0 + (pc.t1 - pc.t0) * i as f64 / STEPS as f64;
        if k == 0 && excess(pc.bisector, pc.t0) > 0.0 {
            return None;
        }
        for i in 1..=STEPS {
            if excess(pc.bisector, at(i)) > 0.0 {
                let (mut lo, mut hi) = (at(i - 1), at(i));
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    if mid == lo || mid == hi {
                        break;
                    }
                    if excess(pc.bisector, mid) > 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                return Some((k, lo));
            }
        }
    }
    None
}

/// For each connected component that loses all of its links, keep its
/// maximum-radius node (lowest id on ties).
fn collapse_survivors(g: &ShockGraph, remove: &[bool], keeps: &[bool], had: &[bool]) -> Vec<bool> {
    let n = g.nodes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for l in &g.links {
        let (a, b) = (find(&mut parent, l.from), find(&mut parent, l.to));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut survives_comp = vec![false; n];
    for l in &g.links {
        if !remove[l.id] {
            let r = find(&mut parent, l.from);
            survives_comp[r] = true;
        }
    }
    let mut best: Vec<Option<usize>> = vec![None; n];
    for v in 0..n {
        if !had[v] {
            continue;
        }
        let r = find(&mut parent, v);
        if survives_comp[r] {
            continue;
        }
        let better = best[r].is_none_or(|b| g.nodes[v].radius > g.nodes[b].radius);
        if better {
            best[r] = Some(v);
        }
    }
    let mut keep = keeps.to_vec();
    for b in best.into_iter().flatten() {
        keep[b] = true;
    }
    // isolated nodes of the input stay as they are
    for v in 0..n {
        if !had[v] {
            keep[v] = true;
        }
    }
    keep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_corners_for_a_square_image() {
        let b = BoundingBox::for_image(100.0, 100.0, 2.0).unwrap();
        assert_eq!(b.min, Point2::new(-50.0, -50.0));
        assert_eq!(b.max, Point2::new(150.0, 150.0));
        assert!(BoundingBox::for_image(100.0, 100.0, 1.0).is_err());
    }

    #[test]
    fn augmented_box_is_one_closed_fragment() {
        let f = ContourFragment::open(3, vec![Point2::new(10.0, 10.0), Point2::new(20.0, 30.0)]);
        let (all, b) = augment_with_box(&[f], 40.0, 40.0, 2.0).unwrap();
        assert_eq!(all.len(), 2);
        let frame = &all[1];
        assert!(frame.closed && frame.role == FragmentRole::BoundingBox);
        assert_eq!(frame.id, 4);
        assert_eq!(frame.vertices, b.corners().to_vec());
        let outside = ContourFragment::open(0, vec![Point2::new(-25.0, 0.0), Point2::new(1.0, 1.0)]);
        assert!(augment_with_box(&[outside], 40.0, 40.0, 1.5).is_err());
    }

    #[test]
    fn corner_formula_examples() {
        // oracle: corner to tangent arc of radius 1 in a right angle is
        // sqrt(2) - 1
        let half = std::f64::consts::FRAC_PI_4;
        assert!((corner_deformation(1.0, half.sin()) - (2f64.sqrt() - 1.0)).abs() < 1e-12);
        assert_eq!(corner_deformation(3.0, 1.0), 0.0);
        assert_eq!(corner_deformation(0.0, 0.3), 0.0);
    }

    #[test]
    fn corner_tip_matches_the_corner_formula() {
        let tip = ErodedTip {
            at: Point2::new(0.0, 0.0),
            radius: 0.0,
            corner: true,
        };
        for (half, r) in [(std::f64::consts::FRAC_PI_4, 1.0), (1.2, 3.0), (0.3, 0.5)] {
            // circle of radius r tangent to both edges, on the bisector
            let p = Point2::new(r / f64::sin(half), 0.0);
            assert!((tip.deformation(p, r) - corner_deformation(r, half.sin())).abs() < 1e-12);
        }
        let source = ErodedTip {
            corner: false,
            radius: 2.0,
            ..tip
        };
        assert_eq!(source.deformation(Point2::new(9.0, 9.0), 2.5), 0.5);
        assert_eq!(source.deformation(Point2::new(9.0, 9.0), 2.0), 0.0);
    }
}
