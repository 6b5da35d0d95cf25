//! Event-driven shock propagation.
//!
//! Candidate sources (the radius minimum of each element pair's bisector)
//! are enumerated over all pairs and validated against the elements. Valid
//! sources emit child shocks that travel with non-decreasing radius until a
//! third element becomes strictly closer (a junction), the bisector domain
//! ends, the clip rectangle is left, or the shock runs into an already
//! traversed part of its own bisector. Junctions and domain ends spawn the
//! outflows of every equidistant element pair.
//!
//! Active shocks are visited before candidates, each list in time order.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};

use crate::bisector::{
    bisector_point_point, bisector_point_segment, bisector_segment_segment, bisectors_between, Bisector, BisectorKey,
    BisectorKind, PARALLEL_ANGLE,
};
use crate::contour::{wave_continuous, BoundaryElement, ElementId, ElementKind};
use crate::error::{Error, Result};
use crate::geom::{point_segment_distance, Point2, Rect, EPS_GEOM};
use crate::graph::{dissolve_and_compact, Piece, RawLink, ShockGraph};
use crate::poly::{Poly, PolyCurve};
use crate::spatial::ElementIndex;

/// Junction locations closer than this merge into one node.
pub const EPS_MERGE: f64 = 1e-6;

/// Links shorter than this are discarded.
pub const MIN_LINK_LENGTH: f64 = 1e-9;

/// Overrides the default event budget when set.
pub const BUDGET_ENV: &str = "SHOCKGRAPH_EVENT_BUDGET";

#[derive(Debug, Clone, PartialEq)]
pub struct ShockCandidate {
    pub location: Point2,
    pub time: f64,
    pub generators: [ElementId; 2],
    pub bisector: Bisector,
    pub source_param: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActiveShock {
    /// Index into the engine's bisector arena.
    pub bisector: usize,
    pub forward: bool,
    pub start_param: f64,
    pub start_time: f64,
    pub parent_node: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndKind {
    /// A third element became strictly closer.
    Junction,
    DomainEnd,
    BoxExit,
    /// Ran into a traversed part of the same bisector (head-on meeting).
    Sink,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndEvent {
    pub param: f64,
    pub kind: EndKind,
    pub third: Option<ElementId>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EngineConfig {
    /// Maximum number of visited events; `None` uses `10 N^2` or the
    /// environment override.
    pub event_budget: Option<u64>,
    /// Shocks leaving this rectangle end there.
    pub clip: Option<Rect>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    pub events: u64,
    /// Candidate sources enumerated over all element pairs.
    pub candidates: usize,
    /// Candidates surviving the validity test at enumeration.
    pub candidates_valid: usize,
    /// Valid candidates that started shocks.
    pub sources_realized: usize,
    /// Valid candidates already covered by an earlier shock when visited.
    pub sources_discarded: usize,
    pub shocks: usize,
    pub junctions: usize,
    pub box_exits: usize,
    pub sinks: usize,
}

/// Candidate sources of one element pair (ids ascending). Most pairs give
/// at most one; a segment touching another's interior gives one per side.
pub fn pair_candidates(e0: &BoundaryElement, e1: &BoundaryElement) -> Vec<ShockCandidate> {
    let (e0, e1) = if e0.id <= e1.id { (e0, e1) } else { (e1, e0) };
    if wave_continuous(e0, e1) {
        return Vec::new();
    }
    let ids = [e0.id, e1.id];
    let at = |b: Bisector, t: f64| ShockCandidate {
        location: b.point(t),
        time: b.radius(t),
        generators: ids,
        source_param: t,
        bisector: b,
    };
    match (e0.kind, e1.kind) {
        (ElementKind::Point(a), ElementKind::Point(b)) => bisector_point_point(a, b, ids)
            .map(|b| vec![at(b, 0.0)])
            .unwrap_or_default(),
        (ElementKind::Point(p), ElementKind::Segment(a, b)) | (ElementKind::Segment(a, b), ElementKind::Point(p)) => {
            let len = a.dist(b);
            let u = (b - a) * (1.0 / len);
            let sigma = (p - a).dot(u);
            if !(sigma > 0.0 && sigma < len) {
                return Vec::new();
            }
            let (pid, sid) = if e0.is_point() { (e0.id, e1.id) } else { (e1.id, e0.id) };
            bisector_point_segment(p, (a, b), [pid, sid])
                .map(|mut bi| {
                    bi.generators = ids;
                    if pid != ids[0] {
                        bi.sources.swap(0, 1);
                    }
                    vec![at(bi, 0.0)]
                })
                .unwrap_or_default()
        }
        (ElementKind::Segment(a, b), ElementKind::Segment(c, d)) => {
            let du = (b - a).normalized();
            let dv = (d - c).normalized();
            let parallel = du.cross(dv).abs() < PARALLEL_ANGLE.sin();
            let touching = e0.is_adjacent(e1.id) || segment_gap(a, b, c, d) <= EPS_GEOM;
            if !parallel && !touching {
                return Vec::new();
            }
            let Ok(records) = bisector_segment_segment((a, b), (c, d), ids) else {
                return Vec::new();
            };
            let scale = a.dist(b).max(c.dist(d)).max(1.0);
            records
                .into_iter()
                .filter_map(|r| {
                    if r.kind == BisectorKind::Midline {
                        let t = 0.5 * (r.t_min + r.t_max);
                        Some(at(r, t))
                    } else if r.radius(r.t_min) <= EPS_GEOM * scale {
                        let t = r.t_min;
                        Some(at(r, t))
                    } else {
                        None
                    }
                })
                .collect()
        }
    }
}

fn segment_gap(a: Point2, b: Point2, c: Point2, d: Point2) -> f64 {
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

/// Times within this of the first in a run count as simultaneous.
const SIMULTANEOUS: f64 = 1e-9;

fn tie_order(a: &ShockCandidate, b: &ShockCandidate) -> Ordering {
    a.generators[0]
        .cmp(&b.generators[0])
        .then(a.location.x.total_cmp(&b.location.x))
        .then(a.location.y.total_cmp(&b.location.y))
        .then(a.generators[1].cmp(&b.generators[1]))
        .then(a.bisector.branch.cmp(&b.bisector.branch))
        .then(a.time.total_cmp(&b.time))
}

/// Sorts by time, then orders each run of simultaneous candidates by
/// (lower generator id, location).
fn sort_candidates(cs: &mut [ShockCandidate]) {
    cs.sort_by(|a, b| a.time.total_cmp(&b.time).then_with(|| tie_order(a, b)));
    let mut start = 0;
    while start < cs.len() {
        let t0 = cs[start].time;
        let mut end = start + 1;
        while end < cs.len() && cs[end].time - t0 <= SIMULTANEOUS {
            end += 1;
        }
        cs[start..end].sort_by(tie_order);
        start = end;
    }
}

/// All candidate sources over every element pair, in time order with ties
/// broken by lower generator id and then location.
pub fn enumerate_candidates(elements: &[BoundaryElement]) -> Vec<ShockCandidate> {
    let mut out = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        for b in &elements[i + 1..] {
            out.extend(pair_candidates(a, b));
        }
    }
    sort_candidates(&mut out);
    out
}

fn validity_tol(time: f64) -> f64 {
    1e-9 * (1.0 + time)
}

/// A candidate is valid when no element other than its generators is
/// closer to its location than its formation time.
pub fn validate_candidate(c: &ShockCandidate, elements: &[BoundaryElement]) -> bool {
    let tol = validity_tol(c.time);
    elements
        .iter()
        .filter(|e| !c.generators.contains(&e.id))
        .all(|e| e.wave_distance(c.location) >= c.time - tol)
}

fn validate_indexed(c: &ShockCandidate, elements: &[BoundaryElement], index: &ElementIndex) -> bool {
    let tol = validity_tol(c.time);
    let limit = c.time - tol;
    if limit <= 0.0 {
        return true;
    }
    !index.any_near(c.location, limit, |id| {
        !c.generators.contains(&id) && elements[id].wave_distance(c.location) < limit
    })
}

/// Wave distance with the open-segment foot test relaxed by `tol`.
fn wave_distance_relaxed(e: &BoundaryElement, p: Point2, tol: f64) -> f64 {
    match e.kind {
        ElementKind::Point(q) => p.dist(q),
        ElementKind::Segment(a, b) => {
            let len = a.dist(b);
            let u = (b - a) * (1.0 / len);
            let s = (p - a).dot(u);
            if s > -tol && s < len + tol {
                u.cross(p - a).abs()
            } else {
                f64::INFINITY
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapKey(f64, u64);

impl Eq for HeapKey {}

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for HeapKey {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.total_cmp(&o.0).then(self.1.cmp(&o.1))
    }
}

struct Engine<'a> {
    elements: &'a [BoundaryElement],
    index: ElementIndex,
    config: EngineConfig,
    budget: u64,
    scale: f64,
    bisectors: Vec<Bisector>,
    arena: HashMap<BisectorKey, usize>,
    covered: HashMap<BisectorKey, Vec<(f64, f64)>>,
    nodes: Vec<(Point2, f64)>,
    node_hash: HashMap<(i64, i64), Vec<usize>>,
    spawned: Vec<bool>,
    links: Vec<RawLink>,
    heap: BinaryHeap<Reverse<(HeapKey, usize)>>,
    active: Vec<ActiveShock>,
    seq: u64,
    stats: RunStats,
}

/// Runs propagation over decomposed elements and assembles the graph.
pub fn run(
    elements: &[BoundaryElement],
    width: f64,
    height: f64,
    config: &EngineConfig,
) -> Result<(ShockGraph, RunStats)> {
    if elements.is_empty() {
        return Err(Error::InvalidInput("scene has no boundary elements".into()));
    }
    let n = elements.len() as u64;
    let budget = config
        .event_budget
        .or_else(|| std::env::var(BUDGET_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(10 * n * n);
    let index = ElementIndex::new(elements);
    let mut extent = Rect::empty();
    for e in elements {
        let b = e.bounds();
        extent.include(b.min);
        extent.include(b.max);
    }
    let mut engine = Engine {
        elements,
        index,
        config: config.clone(),
        budget,
        scale: extent.width().max(extent.height()).max(1.0),
        bisectors: Vec::new(),
        arena: HashMap::new(),
        covered: HashMap::new(),
        nodes: Vec::new(),
        node_hash: HashMap::new(),
        spawned: Vec::new(),
        links: Vec::new(),
        heap: BinaryHeap::new(),
        active: Vec::new(),
        seq: 0,
        stats: RunStats::default(),
    };
    engine.event_loop()?;
    let Engine {
        bisectors,
        nodes,
        links,
        stats,
        ..
    } = engine;
    let keep = vec![false; nodes.len()];
    let (nodes, links, _) = dissolve_and_compact(&bisectors, &nodes, links, &keep);
    let links: Vec<RawLink> = links
        .into_iter()
        .enumerate()
        .map(|(i, mut l)| {
            l.origin_links = vec![i];
            l
        })
        .collect();
    let graph = ShockGraph::assemble(width, height, config.clip, elements.to_vec(), bisectors, &nodes, &links);
    Ok((graph, stats))
}

impl Engine<'_> {
    fn event_loop(&mut self) -> Result<()> {
        let mut candidates = Vec::new();
        for (i, a) in self.elements.iter().enumerate() {
            for b in &self.elements[i + 1..] {
                for c in pair_candidates(a, b) {
                    self.stats.candidates += 1;
                    if validate_indexed(&c, self.elements, &self.index) {
                        candidates.push(c);
                    }
                }
            }
        }
        sort_candidates(&mut candidates);
        self.stats.candidates_valid = candidates.len();
        let mut next_candidate = candidates.into_iter();
        loop {
            if let Some(Reverse((_, slot))) = self.heap.pop() {
                self.tick()?;
                let shock = self.active[slot];
                self.propagate(shock)?;
            } else if let Some(c) = next_candidate.next() {
                self.tick()?;
                self.realize(c);
            } else {
                break;
            }
        }
        Ok(())
    }

    fn tick(&mut self) -> Result<()> {
        self.stats.events += 1;
        if self.stats.events > self.budget {
            return Err(Error::EventBudget {
                budget: self.budget,
                diagnostic: format!(
                    "{} nodes, {} links, {} shocks pending, {} shocks processed",
                    self.nodes.len(),
                    self.links.len(),
                    self.heap.len(),
                    self.stats.shocks
                ),
            });
        }
        Ok(())
    }

    fn intern(&mut self, b: Bisector) -> usize {
        let key = b.key();
        if let Some(&i) = self.arena.get(&key) {
            return i;
        }
        let i = self.bisectors.len();
        self.bisectors.push(b);
        self.arena.insert(key, i);
        i
    }

    fn node_at(&mut self, p: Point2, r: f64) -> usize {
        let cell = |v: f64| (v / EPS_MERGE).floor() as i64;
        let (cx, cy) = (cell(p.x), cell(p.y));
        let mut best: Option<(f64, usize)> = None;
        for dy in -1..=1 {
            for dx in -1..=1 {
                if let Some(ids) = self.node_hash.get(&(cx + dx, cy + dy)) {
                    for &id in ids {
                        let d = self.nodes[id].0.dist(p);
                        if d <= EPS_MERGE && best.is_none_or(|(bd, bid)| d < bd || (d == bd && id < bid)) {
                            best = Some((d, id));
                        }
                    }
                }
            }
        }
        if let Some((_, id)) = best {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push((p, r));
        self.spawned.push(false);
        self.node_hash.entry((cx, cy)).or_default().push(id);
        id
    }

    fn is_covered(&self, key: &BisectorKey, t: f64, forward: bool) -> bool {
        let tol = 1e-9 * (1.0 + t.abs());
        self.covered.get(key).is_some_and(|iv| {
            iv.iter().any(|&(lo, hi)| {
                if forward {
                    t >= lo - tol && t < hi - tol
                } else {
                    t > lo + tol && t <= hi + tol
                }
            })
        })
    }

    fn push_shock(&mut self, bisector: usize, t: f64, forward: bool, node: usize) {
        let key = self.bisectors[bisector].key();
        if self.is_covered(&key, t, forward) {
            return;
        }
        let shock = ActiveShock {
            bisector,
            forward,
            start_param: t,
            start_time: self.bisectors[bisector].radius(t),
            parent_node: node,
        };
        let slot = self.active.len();
        self.active.push(shock);
        self.heap.push(Reverse((HeapKey(shock.start_time, self.seq), slot)));
        self.seq += 1;
    }

    /// Directions in which the radius does not decrease and the domain
    /// continues.
    fn outflows(b: &Bisector, t: f64) -> Vec<bool> {
        let mut dirs = Vec::new();
        let d = 1e-9 * (1.0 + t.abs());
        for forward in [true, false] {
            let s = if forward { 1.0 } else { -1.0 };
            let probe = t + s * d;
            if !(probe > b.t_min && probe < b.t_max) {
                continue;
            }
            if b.dr_dt(probe) * s >= -1e-12 {
                dirs.push(forward);
            }
        }
        dirs
    }

    fn realize(&mut self, c: ShockCandidate) {
        let key = c.bisector.key();
        let t = c.source_param;
        if self.is_covered(&key, t, true) || self.is_covered(&key, t, false) {
            self.stats.sources_discarded += 1;
            return;
        }
        self.stats.sources_realized += 1;
        let bi = self.intern(c.bisector);
        let node = self.node_at(c.location, c.time);
        for forward in Self::outflows(&self.bisectors[bi], t) {
            self.push_shock(bi, t, forward, node);
        }
    }

    fn propagate(&mut self, shock: ActiveShock) -> Result<()> {
        let key = self.bisectors[shock.bisector].key();
        if self.is_covered(&key, shock.start_param, shock.forward) {
            return Ok(());
        }
        self.stats.shocks += 1;
        let end = self.walk(&shock)?;
        let b = &self.bisectors[shock.bisector];
        let (t0, t1) = (shock.start_param, end.param);
        if b.arclength(t0, t1) < MIN_LINK_LENGTH {
            return Ok(());
        }
        let (p1, r1) = (b.point(t1), b.radius(t1));
        self.covered.entry(key).or_default().push((t0.min(t1), t0.max(t1)));
        let to = self.node_at(p1, r1);
        if to == shock.parent_node {
            return Ok(());
        }
        self.links.push(RawLink {
            from: shock.parent_node,
            to,
            pieces: vec![Piece {
                bisector: shock.bisector,
                t0,
                t1,
            }],
            origin_links: Vec::new(),
        });
        match end.kind {
            EndKind::Junction | EndKind::DomainEnd => {
                self.stats.junctions += 1;
                if !self.spawned[to] {
                    self.spawned[to] = true;
                    self.spawn_at(to);
                }
            }
            EndKind::BoxExit => self.stats.box_exits += 1,
            EndKind::Sink => self.stats.sinks += 1,
        }
        Ok(())
    }

    fn spawn_at(&mut self, node: usize) {
        let (q, r) = self.nodes[node];
        let tol = 1e-7 * (1.0 + r);
        let mut set: Vec<ElementId> = self
            .index
            .around(q, r + tol)
            .into_iter()
            .filter(|&id| (wave_distance_relaxed(&self.elements[id], q, tol) - r).abs() <= tol)
            .collect();
        set.sort_unstable();
        let on_curve = 1e-6 * (1.0 + r);
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                let (ea, eb) = (&self.elements[a], &self.elements[b]);
                let Ok(records) = bisectors_between(ea, eb) else {
                    continue;
                };
                for rec in records {
                    let t = rec.project(q);
                    if !rec.in_domain(t, on_curve) || rec.point(t).dist(q) > on_curve {
                        continue;
                    }
                    let t = t.clamp(rec.t_min, rec.t_max);
                    let dirs = Self::outflows(&rec, t);
                    if dirs.is_empty() {
                        continue;
                    }
                    let bi = self.intern(rec);
                    for forward in dirs {
                        self.push_shock(bi, t, forward, node);
                    }
                }
            }
        }
    }

    fn walk(&self, shock: &ActiveShock) -> Result<EndEvent> {
        let b = &self.bisectors[shock.bisector];
        let key = b.key();
        let s = if shock.forward { 1.0 } else { -1.0 };
        // travel order: before(x, y) iff x comes first
        let before = |x: f64, y: f64| if shock.forward { x < y } else { x > y };
        let t_s = shock.start_param;

        let mut limit = if shock.forward { b.t_max } else { b.t_min };
        let mut kind = EndKind::DomainEnd;
        if let Some(rect) = self.config.clip {
            if let Some(t) = exit_param(b, &rect, t_s, shock.forward, limit, self.scale) {
                if before(t, limit) || t == limit {
                    limit = t;
                    kind = EndKind::BoxExit;
                }
            }
        }
        if let Some(iv) = self.covered.get(&key) {
            for &(lo, hi) in iv {
                let near = if shock.forward { lo } else { hi };
                if (before(t_s, near) || t_s == near) && (before(near, limit) || near == limit) {
                    limit = near;
                    kind = EndKind::Sink;
                }
            }
        }

        // every other element is tested over the whole remaining range; an
        // unbounded range is searched in doubling windows
        let (curve, r2) = (b.curve(), b.radius_sq_poly());
        let mut a = t_s;
        let mut w = 0.5 * b.radius(t_s).max(self.scale / 64.0).max(1e-6);
        loop {
            let end = if limit.is_finite() { limit } else { a + s * w };
            let (lo, hi) = (a.min(end), a.max(end));
            let mut best: Option<(f64, ElementId)> = None;
            let reach = window_reach(&curve, &r2, lo, hi);
            for e in self.elements {
                if b.generators.contains(&e.id) || !reach.intersects(&e.bounds()) {
                    continue;
                }
                if let Some(t) = first_entry(b, &curve, &r2, e, lo, hi, shock.forward) {
                    if best.is_none_or(|(bt, _)| before(t, bt)) {
                        best = Some((t, e.id));
                    }
                }
            }
            if let Some((t, id)) = best {
                return Ok(EndEvent {
                    param: t,
                    kind: EndKind::Junction,
                    third: Some(id),
                });
            }
            if end == limit {
                return Ok(EndEvent {
                    param: limit,
                    kind,
                    third: None,
                });
            }
            if w > 1e9 * self.scale {
                return Err(Error::Unbounded(format!(
                    "{:?} of elements {:?} from parameter {t_s}",
                    b.kind, b.generators
                )));
            }
            a = end;
            w *= 2.0;
        }
    }
}

/// First parameter in travel order within `[lo, hi]` after which `e` is
/// strictly closer to the shock than its generators.
/// Box around the curve on `[lo, hi]` grown by the largest radius there; an
/// element outside it cannot come nearer than the radius.
fn window_reach(curve: &PolyCurve, r2: &Poly, lo: f64, hi: f64) -> Rect {
    let mut rect = Rect::empty();
    let mut r2max = r2.eval(lo).max(r2.eval(hi));
    for t in [lo, hi] {
        rect.include(Point2::new(curve.x.eval(t), curve.y.eval(t)));
    }
    for t in curve
        .x
        .critical_points(lo, hi)
        .into_iter()
        .chain(curve.y.critical_points(lo, hi))
    {
        rect.include(Point2::new(curve.x.eval(t), curve.y.eval(t)));
    }
    for t in r2.critical_points(lo, hi) {
        r2max = r2max.max(r2.eval(t));
    }
    let r = r2max.max(0.0).sqrt();
    rect.expanded(r + 1e-9 * (1.0 + r))
}

fn first_entry(
    b: &Bisector,
    curve: &PolyCurve,
    r2: &Poly,
    e: &BoundaryElement,
    lo: f64,
    hi: f64,
    forward: bool,
) -> Option<f64> {
    let mut cuts = vec![lo, hi];
    match e.kind {
        ElementKind::Point(q) => {
            cuts.extend(curve.dist_sq_to(q).sub(r2).roots_in(lo, hi));
        }
        ElementKind::Segment(a, c) => {
            let u = (c - a).normalized();
            let n = u.perp();
            let line = curve.linear_form(n, -n.dot(a));
            cuts.extend(line.mul(&line).sub(r2).roots_in(lo, hi));
            let foot = curve.linear_form(u, -u.dot(a));
            cuts.extend(foot.roots_in(lo, hi));
            let len = a.dist(c);
            cuts.extend(foot.sub(&Poly::constant(len)).roots_in(lo, hi));
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let bad = |x: f64, y: f64| {
        let m = 0.5 * (x + y);
        let r = b.radius(m);
        e.wave_distance(b.point(m)) - r < -1e-9 * (1.0 + r)
    };
    if forward {
        cuts.windows(2).find(|w| w[1] > w[0] && bad(w[0], w[1])).map(|w| w[0])
    } else {
        cuts.windows(2)
            .rev()
            .find(|w| w[1] > w[0] && bad(w[0], w[1]))
            .map(|w| w[1])
    }
}

/// Parameter at which the shock leaves `rect`, searching from `t_s` up to
/// `limit` in the travel direction.
fn exit_param(b: &Bisector, rect: &Rect, t_s: f64, forward: bool, limit: f64, scale: f64) -> Option<f64> {
    if !rect.contains(b.point(t_s)) {
        return Some(t_s);
    }
    let far = if limit.is_finite() {
        limit
    } else {
        t_s + if forward { 1.0 } else { -1.0 } * 1e3 * (scale + rect.width() + rect.height())
    };
    let (lo, hi) = (t_s.min(far), t_s.max(far));
    let c = b.curve();
    let mut cuts = Vec::new();
    for (poly, v) in [
        (&c.x, rect.min.x),
        (&c.x, rect.max.x),
        (&c.y, rect.min.y),
        (&c.y, rect.max.y),
    ] {
        cuts.extend(poly.sub(&Poly::constant(v)).roots_in(lo, hi));
    }
    cuts.sort_by(f64::total_cmp);
    if !forward {
        cuts.reverse();
    }
    let step = 1e-9 * (1.0 + scale);
    cuts.into_iter().find(|&t| {
        let probe = if forward { t + step } else { t - step };
        !rect.contains(b.point(probe))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn points(ps: &[Point2]) -> Vec<BoundaryElement> {
        ps.iter()
            .enumerate()
            .map(|(id, &q)| BoundaryElement {
                id,
                kind: ElementKind::Point(q),
                fragment_id: id,
                adjacency: Vec::new(),
                on_box: false,
            })
            .collect()
    }

    #[test]
    fn two_points_give_one_midpoint_candidate() {
        let els = points(&[p(0.0, 0.0), p(2.0, 0.0)]);
        let cs = enumerate_candidates(&els);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].location, p(1.0, 0.0));
        assert_eq!(cs[0].time, 1.0);
        assert!(validate_candidate(&cs[0], &els));
    }

    #[test]
    fn equilateral_candidates_are_edge_midpoints() {
        let h = 3f64.sqrt();
        let els = points(&[p(0.0, 0.0), p(2.0, 0.0), p(1.0, h)]);
        let cs = enumerate_candidates(&els);
        assert_eq!(cs.len(), 3);
        for c in &cs {
            assert!((c.time - 1.0).abs() < 1e-12);
        }
        let gens: Vec<[usize; 2]> = cs.iter().map(|c| c.generators).collect();
        // equal times; lower generator id first, then location
        assert_eq!(gens, vec![[0, 2], [0, 1], [1, 2]]);
    }

    #[test]
    fn middle_point_blocks_the_outer_pair() {
        let els = points(&[p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)]);
        let outer = enumerate_candidates(&els)
            .into_iter()
            .find(|c| c.generators == [0, 2])
            .unwrap();
        assert_eq!(outer.location, p(1.0, 0.0));
        assert!(!validate_candidate(&outer, &els));
    }

    #[test]
    fn equilateral_shocks_meet_at_the_circumcenter() {
        let h = 3f64.sqrt();
        let els = points(&[p(0.0, 0.0), p(2.0, 0.0), p(1.0, h)]);
        let clip = Rect::new(p(-10.0, -10.0), p(12.0, 12.0));
        let cfg = EngineConfig {
            clip: Some(clip),
            ..Default::default()
        };
        let (g, _) = run(&els, 2.0, 2.0, &cfg).unwrap();
        let center = p(1.0, h / 3.0);
        let junction = g
            .nodes
            .iter()
            .find(|n| n.location.dist(center) < 1e-9)
            .expect("circumcenter node");
        assert!((junction.radius - 2.0 / h).abs() < 1e-9);
        assert_eq!(junction.degree(), 3);
    }

    #[test]
    fn two_points_exit_the_clip_box() {
        let els = points(&[p(1.0, 2.0), p(3.0, 2.0)]);
        let cfg = EngineConfig {
            clip: Some(Rect::new(p(0.0, 0.0), p(4.0, 4.0))),
            ..Default::default()
        };
        let (g, stats) = run(&els, 4.0, 4.0, &cfg).unwrap();
        assert_eq!(stats.box_exits, 2);
        assert_eq!(g.links.len(), 2);
        let mut ends: Vec<Point2> = g.links.iter().map(|l| g.nodes[l.to].location).collect();
        ends.sort_by(|a, b| a.y.total_cmp(&b.y));
        assert!(ends[0].dist(p(2.0, 0.0)) < 1e-9 && ends[1].dist(p(2.0, 4.0)) < 1e-9);
    }

    #[test]
    fn unbounded_without_clip_is_an_error() {
        let els = points(&[p(0.0, 0.0), p(2.0, 0.0)]);
        assert!(matches!(
            run(&els, 2.0, 2.0, &EngineConfig::default()),
            Err(Error::Unbounded(_))
        ));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let els = points(&[p(0.0, 0.0), p(2.0, 0.0), p(1.0, 1.5)]);
        let cfg = EngineConfig {
            event_budget: Some(1),
            clip: Some(Rect::new(p(-5.0, -5.0), p(7.0, 7.0))),
        };
        assert!(matches!(run(&els, 2.0, 2.0, &cfg), Err(Error::EventBudget { .. })));
    }
}
