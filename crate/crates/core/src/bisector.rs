//! Analytic bisectors of point and open-segment sources, with their shock
//! dynamics.
//!
//! Each [`Bisector`] is a curve `p(t)` with a radius function `r(t)`: the
//! common distance to both generators, which is also the grassfire arrival
//! time. The parameter `t` is arc-length for every straight kind and the
//! abscissa along the directrix for parabolas; [`Bisector::arclength`] and
//! [`Bisector::param_at_arclength`] convert between the two.
//!
//! | generators            | kind                        | r(t)               |
//! |-----------------------|-----------------------------|--------------------|
//! | point, point          | [`BisectorKind::Line`]      | sqrt(h^2 + t^2)    |
//! | segment, segment      | [`BisectorKind::Line`]      | abs(c0 + c1 t)     |
//! | parallel segments     | [`BisectorKind::Midline`]   | const              |
//! | point, segment        | [`BisectorKind::Parabola`]  | (t^2 + h^2) / 2h   |
//! | endpoint, own segment | [`BisectorKind::PerpendicularAtEndpoint`] | abs(t) |

use crate::contour::{BoundaryElement, ElementId, ElementKind};
use crate::error::{Error, Result};
use crate::geom::{open_segments_cross, Point2, EPS_GEOM};
use crate::poly::{Poly, PolyCurve};

/// Supporting lines closer than this angle (radians) are treated as parallel.
pub const PARALLEL_ANGLE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BisectorKind {
    Line,
    Parabola,
    PerpendicularAtEndpoint,
    Midline,
}

/// Generator geometry as seen by a bisector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    Point(Point2),
    Segment(Point2, Point2),
}

impl Generator {
    pub fn of(e: &BoundaryElement) -> Self {
        match e.kind {
            ElementKind::Point(p) => Generator::Point(p),
            ElementKind::Segment(a, b) => Generator::Segment(a, b),
        }
    }

    /// Tangency point of the maximal disc centred at `p`.
    pub fn contact(&self, p: Point2) -> Point2 {
        match *self {
            Generator::Point(q) => q,
            Generator::Segment(a, b) => {
                let d = (b - a).normalized();
                a + d * (p - a).dot(d)
            }
        }
    }

    /// Boundary tangent direction at a contact point: the segment direction,
    /// or for a point source the direction perpendicular to the contact ray.
    pub fn tangent_at(&self, shock: Point2) -> Point2 {
        match *self {
            Generator::Point(q) => {
                let ray = shock - q;
                if ray.norm() > 0.0 {
                    ray.normalized().perp()
                } else {
                    Point2::new(1.0, 0.0)
                }
            }
            Generator::Segment(a, b) => (b - a).normalized(),
        }
    }

    pub fn is_point(&self) -> bool {
        matches!(self, Generator::Point(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Radius {
    /// sqrt(h^2 + t^2)
    Hyperbolic(f64),
    /// |c0 + c1 t|
    Linear(f64, f64),
    /// |t|
    Abs,
    Constant(f64),
    /// (t^2 + h^2) / (2h)
    Parabolic(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bisector {
    pub kind: BisectorKind,
    pub generators: [ElementId; 2],
    pub sources: [Generator; 2],
    /// Distinguishes the separate branches a segment pair can produce.
    pub branch: u8,
    origin: Point2,
    dir: Point2,
    normal: Point2,
    radius: Radius,
    pub t_min: f64,
    pub t_max: f64,
}

impl Bisector {
    pub fn point(&self, t: f64) -> Point2 {
        match self.radius {
            Radius::Parabolic(h) => self.origin + self.dir * t + self.normal * ((t * t + h * h) / (2.0 * h)),
            _ => self.origin + self.dir * t,
        }
    }

    pub fn curve(&self) -> PolyCurve {
        match self.radius {
            Radius::Parabolic(h) => PolyCurve::quadratic(
                self.origin + self.normal * (h / 2.0),
                self.dir,
                self.normal * (1.0 / (2.0 * h)),
            ),
            _ => PolyCurve::quadratic(self.origin, self.dir, Point2::ORIGIN),
        }
    }

    pub fn radius(&self, t: f64) -> f64 {
        match self.radius {
            Radius::Hyperbolic(h) => h.hypot(t),
            Radius::Linear(c0, c1) => (c0 + c1 * t).abs(),
            Radius::Abs => t.abs(),
            Radius::Constant(r) => r,
            Radius::Parabolic(h) => (t * t + h * h) / (2.0 * h),
        }
    }

    pub fn radius_sq_poly(&self) -> Poly {
        match self.radius {
            Radius::Hyperbolic(h) => Poly::new(&[h * h, 0.0, 1.0]),
            Radius::Linear(c0, c1) => Poly::new(&[c0 * c0, 2.0 * c0 * c1, c1 * c1]),
            Radius::Abs => Poly::new(&[0.0, 0.0, 1.0]),
            Radius::Constant(r) => Poly::new(&[r * r]),
            Radius::Parabolic(h) => {
                let k = 1.0 / (2.0 * h);
                let r = Poly::new(&[h * h * k, 0.0, k]);
                r.mul(&r)
            }
        }
    }

    pub fn dr_dt(&self, t: f64) -> f64 {
        match self.radius {
            Radius::Hyperbolic(h) => {
                let r = h.hypot(t);
                if r == 0.0 {
                    0.0
                } else {
                    t / r
                }
            }
            Radius::Linear(c0, c1) => {
                if c0 + c1 * t >= 0.0 {
                    c1
                } else {
                    -c1
                }
            }
            Radius::Abs => t.signum(),
            Radius::Constant(_) => 0.0,
            Radius::Parabolic(h) => t / h,
        }
    }

    /// |dp/dt|.
    pub fn speed(&self, t: f64) -> f64 {
        match self.radius {
            Radius::Parabolic(h) => (t / h).hypot(1.0),
            _ => 1.0,
        }
    }

    /// Unit tangent in the direction of increasing `t`.
    pub fn tangent(&self, t: f64) -> Point2 {
        match self.radius {
            Radius::Parabolic(h) => (self.dir + self.normal * (t / h)).normalized(),
            _ => self.dir,
        }
    }

    /// dr/ds along increasing `t`; equals cos of the half angle.
    pub fn dr_ds(&self, t: f64) -> f64 {
        self.dr_dt(t) / self.speed(t)
    }

    /// Angle between the shock tangent (increasing `t`) and the ray from a
    /// contact point to the shock.
    pub fn half_angle(&self, t: f64) -> f64 {
        self.dr_ds(t).clamp(-1.0, 1.0).acos()
    }

    pub fn curvature(&self, t: f64) -> f64 {
        match self.radius {
            Radius::Parabolic(h) => {
                let q = (t / h).hypot(1.0);
                1.0 / (h * q * q * q)
            }
            _ => 0.0,
        }
    }

    /// Total absolute turning of the tangent between two parameters.
    pub fn turning(&self, t0: f64, t1: f64) -> f64 {
        match self.radius {
            Radius::Parabolic(h) => ((t1 / h).atan() - (t0 / h).atan()).abs(),
            _ => 0.0,
        }
    }

    /// Arc-length from parameter 0 to `t` (signed).
    pub fn arclength_from_origin(&self, t: f64) -> f64 {
        match self.radius {
            Radius::Parabolic(h) => {
                let u = t / h;
                0.5 * t * u.hypot(1.0) + 0.5 * h * u.asinh()
            }
            _ => t,
        }
    }

    /// Unsigned arc-length between two parameters.
    pub fn arclength(&self, t0: f64, t1: f64) -> f64 {
        (self.arclength_from_origin(t1) - self.arclength_from_origin(t0)).abs()
    }

    /// Inverse of [`Bisector::arclength_from_origin`].
    pub fn param_at_arclength(&self, s: f64) -> f64 {
        match self.radius {
            Radius::Parabolic(h) => {
                // Newton from the asinh asymptote; S is convex-monotone
                let mut t = if s.abs() < h {
                    s
                } else {
                    s.signum() * (2.0 * h * s.abs()).sqrt()
                };
                for _ in 0..60 {
                    let f = self.arclength_from_origin(t) - s;
                    let step = f / self.speed(t);
                    t -= step;
                    if step.abs() <= 1e-15 * (1.0 + t.abs()) {
                        break;
                    }
                }
                t
            }
            _ => s,
        }
    }

    /// Unit-speed evaluation: the point at signed arc-length `s` from
    /// parameter 0.
    pub fn point_at_arclength(&self, s: f64) -> Point2 {
        self.point(self.param_at_arclength(s))
    }

    /// Domain expressed in arc-length.
    pub fn arclength_domain(&self) -> (f64, f64) {
        (
            self.arclength_from_origin(self.t_min),
            self.arclength_from_origin(self.t_max),
        )
    }

    /// Tangency points on both generators.
    pub fn contacts(&self, t: f64) -> [Point2; 2] {
        let p = self.point(t);
        match self.kind {
            BisectorKind::PerpendicularAtEndpoint => {
                // the segment's nearest point is the shared endpoint itself
                let q = self.origin;
                [q, q]
            }
            _ => [self.sources[0].contact(p), self.sources[1].contact(p)],
        }
    }

    pub fn in_domain(&self, t: f64, tol: f64) -> bool {
        t >= self.t_min - tol && t <= self.t_max + tol
    }

    /// Parameter of the point nearest `p` (exact for points on the curve).
    pub fn project(&self, p: Point2) -> f64 {
        (p - self.origin).dot(self.dir)
    }

    /// Parameter of minimum radius over the domain and whether it lies
    /// strictly inside it (otherwise it is clamped to a domain end).
    pub fn min_param(&self) -> (f64, bool) {
        let (t, interior) = match self.radius {
            Radius::Hyperbolic(_) | Radius::Abs | Radius::Parabolic(_) => (0.0, true),
            Radius::Linear(c0, c1) => {
                let zero = -c0 / c1;
                (zero, false)
            }
            Radius::Constant(_) => (0.5 * (self.t_min + self.t_max), true),
        };
        if t > self.t_min && t < self.t_max {
            (t, interior)
        } else if (t - self.t_min).abs() <= (t - self.t_max).abs() {
            (self.t_min, false)
        } else {
            (self.t_max, false)
        }
    }

    pub fn is_constant_radius(&self) -> bool {
        matches!(self.radius, Radius::Constant(_))
    }

    pub fn key(&self) -> BisectorKey {
        let [a, b] = self.generators;
        BisectorKey {
            lo: a.min(b),
            hi: a.max(b),
            branch: self.branch,
        }
    }
}

/// Identifies one bisector branch independent of generator order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BisectorKey {
    pub lo: ElementId,
    pub hi: ElementId,
    pub branch: u8,
}

/// Perpendicular bisector of two points.
pub fn bisector_point_point(a: Point2, b: Point2, ids: [ElementId; 2]) -> Result<Bisector> {
    let d = b - a;
    let len = d.norm();
    if len <= EPS_GEOM {
        return Err(Error::Degenerate(format!(
            "coincident point sources {} and {}",
            ids[0], ids[1]
        )));
    }
    Ok(Bisector {
        kind: BisectorKind::Line,
        generators: ids,
        sources: [Generator::Point(a), Generator::Point(b)],
        branch: 0,
        origin: a.lerp(b, 0.5),
        dir: d.perp() * (1.0 / len),
        normal: Point2::ORIGIN,
        radius: Radius::Hyperbolic(0.5 * len),
        t_min: f64::NEG_INFINITY,
        t_max: f64::INFINITY,
    })
}

/// Parabola with focus `p` and the supporting line of `seg` as directrix,
/// clipped to where the directrix foot lies inside the open segment.
pub fn bisector_point_segment(p: Point2, seg: (Point2, Point2), ids: [ElementId; 2]) -> Result<Bisector> {
    let (a, b) = seg;
    let len = a.dist(b);
    if len <= EPS_GEOM {
        return Err(Error::Degenerate(format!("segment {} has zero length", ids[1])));
    }
    let d = (b - a) * (1.0 / len);
    let mut n = d.perp();
    let mut h = n.dot(p - a);
    if h < 0.0 {
        n = -n;
        h = -h;
    }
    let sigma = (p - a).dot(d);
    if h <= EPS_GEOM {
        return Err(if sigma > 0.0 && sigma < len {
            Error::InvalidInput(format!("point {} touches the interior of segment {}", ids[0], ids[1]))
        } else {
            Error::Degenerate(format!("point {} is collinear with segment {}", ids[0], ids[1]))
        });
    }
    Ok(Bisector {
        kind: BisectorKind::Parabola,
        generators: ids,
        sources: [Generator::Point(p), Generator::Segment(a, b)],
        branch: 0,
        origin: a + d * sigma,
        dir: d,
        normal: n,
        radius: Radius::Parabolic(h),
        t_min: -sigma,
        t_max: len - sigma,
    })
}

/// The line through an endpoint perpendicular to the segment it bounds.
pub fn bisector_endpoint_own_segment(p: Point2, seg: (Point2, Point2), ids: [ElementId; 2]) -> Result<Bisector> {
    let (a, b) = seg;
    if p != a && p != b {
        return Err(Error::InvalidInput(format!(
            "point {} is not an endpoint of segment {}",
            ids[0], ids[1]
        )));
    }
    let len = a.dist(b);
    if len <= EPS_GEOM {
        return Err(Error::Degenerate(format!("segment {} has zero length", ids[1])));
    }
    Ok(Bisector {
        kind: BisectorKind::PerpendicularAtEndpoint,
        generators: ids,
        sources: [Generator::Point(p), Generator::Segment(a, b)],
        branch: 0,
        origin: p,
        dir: ((b - a) * (1.0 / len)).perp(),
        normal: Point2::ORIGIN,
        radius: Radius::Abs,
        t_min: f64::NEG_INFINITY,
        t_max: f64::INFINITY,
    })
}

/// Bisector branches of two open segments on which both foot points are
/// interior. Non-parallel pairs yield up to four rays from the intersection
/// of the supporting lines; parallel pairs yield the midline over the
/// overlap of their projections.
pub fn bisector_segment_segment(
    u: (Point2, Point2),
    v: (Point2, Point2),
    ids: [ElementId; 2],
) -> Result<Vec<Bisector>> {
    let (ua, ub) = u;
    let (va, vb) = v;
    let (lu, lv) = (ua.dist(ub), va.dist(vb));
    if lu <= EPS_GEOM || lv <= EPS_GEOM {
        return Err(Error::Degenerate(format!("zero-length segment in pair {ids:?}")));
    }
    if open_segments_cross(ua, ub, va, vb) {
        return Err(Error::InvalidInput(format!(
            "segments {} and {} intersect in their interiors",
            ids[0], ids[1]
        )));
    }
    let du = (ub - ua) * (1.0 / lu);
    let dv = (vb - va) * (1.0 / lv);
    let (nu, nv) = (du.perp(), dv.perp());
    let sources = [Generator::Segment(ua, ub), Generator::Segment(va, vb)];
    let scale = lu.max(lv).max(1.0);

    let sin = du.cross(dv);
    if sin.abs() < PARALLEL_ANGLE.sin() {
        let gap = nu.dot(va - ua);
        if gap.abs() <= EPS_GEOM {
            return Err(Error::Degenerate(format!(
                "segments {} and {} share a supporting line",
                ids[0], ids[1]
            )));
        }
        let (s0, s1) = ((va - ua).dot(du), (vb - ua).dot(du));
        let lo = s0.min(s1).max(0.0);
        let hi = s0.max(s1).min(lu);
        if hi - lo <= EPS_GEOM * scale {
            return Ok(Vec::new());
        }
        return Ok(vec![Bisector {
            kind: BisectorKind::Midline,
            generators: ids,
            sources,
            branch: 0,
            origin: ua + du * lo + nu * (0.5 * gap),
            dir: du,
            normal: Point2::ORIGIN,
            radius: Radius::Constant(0.5 * gap.abs()),
            t_min: 0.0,
            t_max: hi - lo,
        }]);
    }

    // X = ua + alpha du = va + beta dv
    let w0 = va - ua;
    let alpha = w0.cross(dv) / sin;
    let x = ua + du * alpha;
    let beta = (x - va).dot(dv);
    let w_in = (du + dv).normalized();
    let w_ex = (du - dv).normalized();
    let rays = [w_in, -w_in, w_ex, -w_ex];

    let mut out = Vec::new();
    for (branch, &w) in rays.iter().enumerate() {
        // foot parameters along each segment: alpha + t (w.du), beta + t (w.dv)
        let mut lo = 0.0f64;
        let mut hi = f64::INFINITY;
        for (s0, c, len) in [(alpha, w.dot(du), lu), (beta, w.dot(dv), lv)] {
            if c.abs() < 1e-15 {
                if s0 <= 0.0 || s0 >= len {
                    hi = lo;
                }
                continue;
            }
            let (ta, tb) = ((0.0 - s0) / c, (len - s0) / c);
            lo = lo.max(ta.min(tb));
            hi = hi.min(ta.max(tb));
        }
        if !(hi - lo > EPS_GEOM * scale) {
            continue;
        }
        // rebuild the line from its defining equation for conditioning:
        // su nu.(p - ua) = sv nv.(p - va)
        let (su, sv) = (nu.dot(w).signum(), nv.dot(w).signum());
        let m = nu * su - nv * sv;
        let c = su * nu.dot(ua) - sv * nv.dot(va);
        let foot = ua + du * (alpha + lo * w.dot(du));
        let lambda = (c - m.dot(foot)) / m.dot(nu);
        let origin = foot + nu * lambda;
        let mut dir = m.perp().normalized();
        if dir.dot(w) < 0.0 {
            dir = -dir;
        }
        let c0 = nu.dot(origin - ua);
        let c1 = nu.dot(dir);
        out.push(Bisector {
            kind: BisectorKind::Line,
            generators: ids,
            sources,
            branch: branch as u8,
            origin,
            dir,
            normal: Point2::ORIGIN,
            radius: Radius::Linear(c0, c1),
            t_min: 0.0,
            t_max: hi - lo,
        });
    }
    Ok(out)
}

/// All shock-carrying bisector branches of an element pair. Pairs whose
/// wavefronts join continuously (an endpoint and its own segment) carry no
/// shock and yield nothing.
pub fn bisectors_between(e0: &BoundaryElement, e1: &BoundaryElement) -> Result<Vec<Bisector>> {
    if crate::contour::wave_continuous(e0, e1) {
        return Ok(Vec::new());
    }
    match (e0.kind, e1.kind) {
        (ElementKind::Point(a), ElementKind::Point(b)) => Ok(vec![bisector_point_point(a, b, [e0.id, e1.id])?]),
        (ElementKind::Point(p), ElementKind::Segment(a, b)) => {
            Ok(vec![bisector_point_segment(p, (a, b), [e0.id, e1.id])?])
        }
        (ElementKind::Segment(a, b), ElementKind::Point(p)) => {
            Ok(vec![bisector_point_segment(p, (a, b), [e1.id, e0.id])?])
        }
        (ElementKind::Segment(a, b), ElementKind::Segment(c, d)) => {
            bisector_segment_segment((a, b), (c, d), [e0.id, e1.id])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::point_segment_distance;
    use proptest::prelude::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn gen_dist(g: &Generator, q: Point2) -> f64 {
        match *g {
            Generator::Point(a) => q.dist(a),
            Generator::Segment(a, b) => point_segment_distance(q, a, b),
        }
    }

    fn sample_params(b: &Bisector, n: usize) -> Vec<f64> {
        let lo = if b.t_min.is_finite() { b.t_min } else { -60.0 };
        let hi = if b.t_max.is_finite() { b.t_max } else { 60.0 };
        (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect()
    }

    fn check_equidistant(b: &Bisector, tol: f64) {
        for t in sample_params(b, 200) {
            let q = b.point(t);
            let (d0, d1) = (gen_dist(&b.sources[0], q), gen_dist(&b.sources[1], q));
            assert!((d0 - d1).abs() <= tol, "{b:?} t={t} {d0} {d1}");
            assert!((b.radius(t) - d0).abs() <= tol, "{b:?} t={t} r={} d={d0}", b.radius(t));
        }
    }

    #[test]
    fn point_point_examples() {
        let b = bisector_point_point(p(0.0, 0.0), p(2.0, 0.0), [0, 1]).unwrap();
        assert_eq!(b.point(0.0), p(1.0, 0.0));
        assert_eq!(b.radius(0.0), 1.0);
        assert!((b.point(3.0).x - 1.0).abs() < 1e-15);
        let b = bisector_point_point(p(0.0, 0.0), p(0.0, 2.0), [0, 1]).unwrap();
        assert!((b.point(5.0).y - 1.0).abs() < 1e-15);
        let b = bisector_point_point(p(0.0, 0.0), p(3.0, 4.0), [0, 1]).unwrap();
        let q = b.point(2.0);
        let expect = (2.5f64 * 2.5 + 4.0).sqrt();
        assert!((q.dist(p(0.0, 0.0)) - expect).abs() < 1e-12);
        assert!((q.dist(p(3.0, 4.0)) - expect).abs() < 1e-12);
        assert!((b.radius(2.0) - expect).abs() < 1e-12);
        assert!(matches!(
            bisector_point_point(p(1.0, 1.0), p(1.0, 1.0), [0, 1]),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn parallel_segments_give_a_midline() {
        let bs = bisector_segment_segment((p(0.0, 0.0), p(1.0, 0.0)), (p(0.0, 2.0), p(1.0, 2.0)), [0, 1]).unwrap();
        assert_eq!(bs.len(), 1);
        let b = &bs[0];
        assert_eq!(b.kind, BisectorKind::Midline);
        assert_eq!((b.t_min, b.t_max), (0.0, 1.0));
        for t in sample_params(b, 10) {
            assert!((b.point(t).y - 1.0).abs() < 1e-15);
            assert_eq!(b.radius(t), 1.0);
            assert_eq!(b.dr_ds(t), 0.0);
        }
    }

    #[test]
    fn perpendicular_axes_give_the_diagonal() {
        let bs = bisector_segment_segment((p(0.0, 0.0), p(10.0, 0.0)), (p(0.0, 0.0), p(0.0, 10.0)), [0, 1]).unwrap();
        assert_eq!(bs.len(), 1);
        let b = &bs[0];
        for t in sample_params(b, 50) {
            let q = b.point(t);
            assert!((q.x - q.y).abs() < 1e-12);
            assert!((b.radius(t) - q.x).abs() < 1e-12);
            assert!((b.dr_ds(t) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        }
    }

    #[test]
    fn crossing_segments_are_rejected() {
        let r = bisector_segment_segment((p(-1.0, 0.0), p(1.0, 0.0)), (p(0.0, -1.0), p(0.0, 1.0)), [0, 1]);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn parabola_examples() {
        let b = bisector_point_segment(p(0.0, 1.0), (p(-5.0, 0.0), p(5.0, 0.0)), [0, 1]).unwrap();
        assert_eq!(b.point(0.0), p(0.0, 0.5));
        assert_eq!(b.radius(0.0), 0.5);
        for t in sample_params(&b, 100) {
            let q = b.point(t);
            assert!((q.y - (q.x * q.x + 1.0) / 2.0).abs() < 1e-12);
            assert!((q.dist(p(0.0, 1.0)) - q.y).abs() <= 1e-9);
        }
        let b = bisector_point_segment(p(0.0, 1.0), (p(-0.5, 0.0), p(0.5, 0.0)), [0, 1]).unwrap();
        assert_eq!((b.t_min, b.t_max), (-0.5, 0.5));
        // oracle: foot membership at sampled parameters
        for i in -20..=20 {
            let t = i as f64 * 0.05;
            let foot = b.contacts(t)[1];
            let inside = foot.x > -0.5 && foot.x < 0.5;
            assert_eq!(inside, b.in_domain(t, 0.0) && t != -0.5 && t != 0.5, "t={t}");
        }
        assert!(matches!(
            bisector_point_segment(p(0.0, 0.0), (p(-1.0, 0.0), p(1.0, 0.0)), [0, 1]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn endpoint_perpendicular() {
        let seg = (p(0.0, 0.0), p(1.0, 0.0));
        for end in [seg.1, seg.0] {
            let b = bisector_endpoint_own_segment(end, seg, [0, 1]).unwrap();
            assert_eq!(b.kind, BisectorKind::PerpendicularAtEndpoint);
            let q = b.point(0.7);
            assert!((q.x - end.x).abs() < 1e-15 && (q.y.abs() - 0.7).abs() < 1e-15);
            assert_eq!(b.radius(0.7), 0.7);
            assert_eq!(b.contacts(0.7), [end, end]);
            check_equidistant(&b, 1e-9);
        }
        assert!(bisector_endpoint_own_segment(p(0.5, 0.0), seg, [0, 1]).is_err());
    }

    #[test]
    fn parabola_arclength_inverts() {
        let b = bisector_point_segment(p(0.0, 2.0), (p(-50.0, 0.0), p(50.0, 0.0)), [0, 1]).unwrap();
        for t in [-40.0, -3.0, -0.1, 0.0, 0.2, 1.0, 7.5, 45.0] {
            let s = b.arclength_from_origin(t);
            assert!((b.param_at_arclength(s) - t).abs() < 1e-9);
        }
        // oracle: trapezoid rule on |p'(t)|
        let n = 200_000;
        let mut acc = 0.0;
        for i in 0..n {
            let (a, c) = (i as f64 / n as f64 * 5.0, (i + 1) as f64 / n as f64 * 5.0);
            acc += 0.5 * (b.speed(a) + b.speed(c)) * (c - a);
        }
        assert!((acc - b.arclength(0.0, 5.0)).abs() < 1e-8);
    }

    fn check_dynamics(b: &Bisector) {
        let h = 1e-5;
        for t in sample_params(b, 100) {
            if !b.in_domain(t - 2.0 * h * b.speed(t), 0.0) || !b.in_domain(t + 2.0 * h * b.speed(t), 0.0) {
                continue;
            }
            let s = b.arclength_from_origin(t);
            let (t0, t1) = (b.param_at_arclength(s - h), b.param_at_arclength(s + h));
            // unit speed in arc-length
            let speed = b.point(t1).dist(b.point(t0)) / (2.0 * h);
            assert!((speed - 1.0).abs() < 1e-4, "speed {speed}");
            // flow relation
            let fd = (b.radius(t1) - b.radius(t0)) / (2.0 * h);
            assert!((fd - b.dr_ds(t)).abs() < 1e-4, "{fd} vs {}", b.dr_ds(t));
            assert!((b.dr_ds(t).abs() - b.half_angle(t).cos().abs()).abs() < 1e-6);
            // half angle agrees with the contact ray geometry
            let q = b.point(t);
            for c in b.contacts(t) {
                let ray = (q - c).normalized();
                let cos = ray.dot(b.tangent(t));
                assert!((cos - b.dr_ds(t)).abs() < 1e-6, "{cos} {}", b.dr_ds(t));
            }
        }
    }

    fn check_contacts(b: &Bisector) {
        for t in sample_params(b, 100) {
            let q = b.point(t);
            for (g, c) in b.sources.iter().zip(b.contacts(t)) {
                assert!((q.dist(c) - b.radius(t)).abs() <= 1e-9);
                match *g {
                    Generator::Point(a) => assert_eq!(c, a),
                    Generator::Segment(a, e) => {
                        assert!(point_segment_distance(c, a, e) <= 1e-9);
                        let u = (c - a).dot(e - a) / (e - a).norm_sq();
                        assert!(u > 0.0 && u < 1.0, "foot outside open segment: {u}");
                    }
                }
            }
        }
    }

    fn pt() -> impl Strategy<Value = Point2> {
        (-50.0f64..50.0, -50.0f64..50.0).prop_map(|(x, y)| Point2::new(x, y))
    }

    proptest! {
        #[test]
        fn point_point_invariants(a in pt(), b in pt()) {
            prop_assume!(a.dist(b) > 1e-3);
            let bi = bisector_point_point(a, b, [0, 1]).unwrap();
            check_equidistant(&bi, 1e-9);
            check_contacts(&bi);
            check_dynamics(&bi);
        }

        #[test]
        fn point_segment_invariants(f in pt(), a in pt(), b in pt()) {
            prop_assume!(a.dist(b) > 1e-2);
            let d = (b - a).normalized();
            prop_assume!(d.perp().dot(f - a).abs() > 1e-2);
            let bi = bisector_point_segment(f, (a, b), [0, 1]).unwrap();
            check_equidistant(&bi, 1e-9);
            check_contacts(&bi);
            check_dynamics(&bi);
        }

        #[test]
        fn segment_segment_invariants(a in pt(), b in pt(), c in pt(), d in pt()) {
            prop_assume!(a.dist(b) > 1e-2 && c.dist(d) > 1e-2);
            prop_assume!(!open_segments_cross(a, b, c, d));
            match bisector_segment_segment((a, b), (c, d), [0, 1]) {
                Ok(bs) => for bi in &bs {
                    check_equidistant(bi, 1e-9);
                    check_contacts(bi);
                    check_dynamics(bi);
                },
                Err(Error::Degenerate(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}
