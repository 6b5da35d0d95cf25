//! Small dense polynomials with real-root isolation on bounded intervals.
//!
//! Every junction condition in the engine reduces to a polynomial of degree at
//! most four in the bisector parameter, so roots are isolated by recursing on
//! the derivative: between consecutive critical points the polynomial is
//! monotone and a sign change brackets exactly one root.

use crate::geom::Point2;

/// Largest supported degree plus one.
const CAP: usize = 9;

/// Coefficients in ascending order of power, stored inline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Poly {
    coef: [f64; CAP],
    len: usize,
}

impl Poly {
    /// Panics on more than nine coefficients.
    pub fn new(coef: &[f64]) -> Self {
        assert!(
            coef.len() <= CAP,
            "polynomial degree {} exceeds {}",
            coef.len().saturating_sub(1),
            CAP - 1
        );
        let mut p = Poly {
            coef: [0.0; CAP],
            len: coef.len().max(1),
        };
        p.coef[..coef.len()].copy_from_slice(coef);
        p
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(&[c])
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coef[..self.len]
    }

    pub fn degree(&self) -> usize {
        self.coefficients().iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coefficients().iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Poly {
        let mut out = Poly::constant(0.0);
        if self.len > 1 {
            out.len = self.len - 1;
            for k in 1..self.len {
                out.coef[k - 1] = self.coef[k] * k as f64;
            }
        }
        out
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = *self;
        out.len = self.len.max(o.len);
        for k in 0..o.len {
            out.coef[k] += o.coef[k];
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(-1.0))
    }

    pub fn scale(&self, k: f64) -> Poly {
        let mut out = *self;
        for c in &mut out.coef[..out.len] {
            *c *= k;
        }
        out
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let n = self.len + o.len - 1;
        assert!(n <= CAP, "polynomial degree {} exceeds {}", n - 1, CAP - 1);
        let mut out = Poly {
            coef: [0.0; CAP],
            len: n,
        };
        for i in 0..self.len {
            for j in 0..o.len {
                out.coef[i + j] += self.coef[i] * o.coef[j];
            }
        }
        out
    }

    /// Real roots in `[lo, hi]`, ascending. Tangential (even multiplicity)
    /// roots are reported only if they are also sign changes of the
    /// derivative's neighbourhood; callers that need them should add the
    /// critical points from [`Poly::critical_points`].
    pub fn roots_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut buf = Roots::default();
        self.collect_roots(lo, hi, &mut buf);
        buf.as_slice().to_vec()
    }

    /// Roots of the derivative in `[lo, hi]`.
    pub fn critical_points(&self, lo: f64, hi: f64) -> Vec<f64> {
        self.derivative().roots_in(lo, hi)
    }

    fn collect_roots(&self, lo: f64, hi: f64, out: &mut Roots) {
        debug_assert!(lo <= hi);
        let deg = self.degree();
        if deg == 0 {
            return;
        }
        if deg == 1 {
            let r = -self.coef[0] / self.coef[1];
            if r >= lo && r <= hi {
                out.push(r);
            }
            return;
        }
        let mut knots = Roots::default();
        knots.push(lo);
        self.derivative().collect_roots(lo, hi, &mut knots);
        knots.push(hi);
        let mut fa = self.eval(lo);
        for w in knots.as_slice().windows(2) {
            let (a, b) = (w[0], w[1]);
            let fb = self.eval(b);
            if fa == 0.0 {
                if out.last().is_none_or(|l| l < a) {
                    out.push(a);
                }
            } else if fa.signum() != fb.signum() && fb != 0.0 {
                out.push(bisect_monotone(self, a, b, fa));
            }
            fa = fb;
        }
        if fa == 0.0 && out.last().is_none_or(|l| l < hi) {
            out.push(hi);
        }
    }
}

/// Fixed-capacity root list; a polynomial of degree below `CAP` has fewer
/// than `CAP` roots, plus two interval ends.
#[derive(Default)]
struct Roots {
    v: [f64; CAP + 2],
    n: usize,
}

impl Roots {
    fn push(&mut self, x: f64) {
        self.v[self.n] = x;
        self.n += 1;
    }

    fn last(&self) -> Option<f64> {
        self.n.checked_sub(1).map(|i| self.v[i])
    }

    fn as_slice(&self) -> &[f64] {
        &self.v[..self.n]
    }
}

fn bisect_monotone(p: &Poly, mut a: f64, mut b: f64, fa: f64) -> f64 {
    let sa = fa.signum();
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = p.eval(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// A planar curve whose coordinates are polynomials in one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyCurve {
    pub x: Poly,
    pub y: Poly,
}

impl PolyCurve {
    /// `base + t * lin + t^2 * quad`.
    pub fn quadratic(base: Point2, lin: Point2, quad: Point2) -> Self {
        PolyCurve {
            x: Poly::new(&[base.x, lin.x, quad.x]),
            y: Poly::new(&[base.y, lin.y, quad.y]),
        }
    }

    /// Squared distance to a fixed point, as a polynomial.
    pub fn dist_sq_to(&self, q: Point2) -> Poly {
        let dx = self.x.sub(&Poly::constant(q.x));
        let dy = self.y.sub(&Poly::constant(q.y));
        dx.mul(&dx).add(&dy.mul(&dy))
    }

    /// `n . p(t) + c`.
    pub fn linear_form(&self, n: Point2, c: f64) -> Poly {
        self.x.scale(n.x).add(&self.y.scale(n.y)).add(&Poly::constant(c))
    }
}
