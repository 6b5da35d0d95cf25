use proptest::prelude::*;
use shockgraph::bisector::{
    bisector_endpoint_own_segment, bisector_point_point, bisector_point_segment, bisector_segment_segment, Bisector,
    Generator,
};
use shockgraph::geom::{point_segment_distance, Point2};

fn pt() -> impl Strategy<Value = Point2> {
    (-50.0..50.0f64, -50.0..50.0f64).prop_map(|(x, y)| Point2::new(x, y))
}

/// Arc-length samples over the domain, infinite ends cut 120 px out,
/// keeping clear of the ends and of the radius minimum where `r` may have a
/// kink.
fn arclength_samples(b: &Bisector, n: usize) -> Vec<f64> {
    let (lo, hi) = b.arclength_domain();
    let (lo, hi) = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => (lo, hi),
        (true, false) => (lo, lo + 120.0),
        (false, true) => (hi - 120.0, hi),
        (false, false) => (-60.0, 60.0),
    };
    let (lo, hi) = (lo + 1e-3, hi - 1e-3);
    let kink = b.arclength_from_origin(b.min_param().0);
    (0..n)
        .map(|k| lo + (hi - lo) * (k as f64 + 0.5) / n as f64)
        .filter(|s| (s - kink).abs() > 1e-3)
        .collect()
}

fn check(b: &Bisector) -> Result<(), TestCaseError> {
    let h = 1e-5;
    for s in arclength_samples(b, 50) {
        let t = b.param_at_arclength(s);
        let p = b.point(t);
        let r = b.radius(t);

        // contacts lie on their generators, at distance r
        for (src, c) in b.sources.iter().zip(b.contacts(t)) {
            let on = match *src {
                Generator::Point(q) => c.dist(q),
                Generator::Segment(a, e) => point_segment_distance(c, a, e),
            };
            prop_assert!(on <= 1e-9 * (1.0 + r), "contact off generator by {on}");
            prop_assert!((p.dist(c) - r).abs() <= 1e-9 * (1.0 + r));
        }

        // unit speed in arc length
        let q = b.point_at_arclength(s + h);
        prop_assert!((p.dist(q) / h - 1.0).abs() <= 1e-4, "speed {}", p.dist(q) / h);

        // flow relation
        let numeric = (b.radius(b.param_at_arclength(s + h)) - b.radius(b.param_at_arclength(s - h))) / (2.0 * h);
        prop_assert!(
            (numeric - b.dr_ds(t)).abs() <= 1e-4,
            "dr/ds {} vs {}",
            b.dr_ds(t),
            numeric
        );
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn point_point(a in pt(), b in pt()) {
        prop_assume!(a.dist(b) > 1e-3);
        check(&bisector_point_point(a, b, [0, 1]).unwrap())?;
    }

    #[test]
    fn point_segment(f in pt(), a in pt(), b in pt()) {
        prop_assume!(a.dist(b) > 1e-3 && point_segment_distance(f, a, b) > 1e-3);
        let bis = bisector_point_segment(f, (a, b), [0, 1]).unwrap();
        check(&bis)?;
    }

    #[test]
    fn endpoint_own_segment(a in pt(), b in pt()) {
        prop_assume!(a.dist(b) > 1e-3);
        check(&bisector_endpoint_own_segment(a, (a, b), [0, 1]).unwrap())?;
    }

    #[test]
    fn segment_segment(a in pt(), b in pt(), c in pt(), d in pt()) {
        prop_assume!(a.dist(b) > 1e-3 && c.dist(d) > 1e-3);
        if let Ok(bs) = bisector_segment_segment((a, b), (c, d), [0, 1]) {
            for bis in &bs {
                check(bis)?;
            }
        }
    }
}
