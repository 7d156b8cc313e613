use cga_collision::distance::{
    boundary_candidates, center_dist_fa, center_dist_fa_conformal, center_dist_fb, center_dist_fc,
    classify, segment_pair_coefficients, stationary_point, ProjectionBranch, SegmentCase,
};
use cga_collision::oracle::{
    oracle_point_segment, oracle_segment_segment, reference_point_segment2,
    reference_segment_segment2, GridSpec,
};
use cga_collision::{EuclideanPoint, Segment};
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

fn pt(scale: f64) -> impl Strategy<Value = EuclideanPoint> {
    (-scale..scale, -scale..scale, -scale..scale).prop_map(|(x, y, z)| EuclideanPoint::new(x, y, z))
}

fn segment(scale: f64) -> impl Strategy<Value = Segment> {
    prop_oneof![
        4 => (pt(scale), pt(scale)).prop_map(|(a, b)| Segment::new(a, b).unwrap()),
        1 => pt(scale).prop_map(|a| Segment::new(a, a).unwrap()),
    ]
}

fn parallel_pair(scale: f64) -> impl Strategy<Value = (Segment, Segment)> {
    (pt(scale), pt(scale), pt(scale), -2.0..2.0f64).prop_map(|(a, b, c, k)| {
        let s1 = Segment::new(a, b).unwrap();
        (s1, Segment::new(c, c + s1.direction() * k).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fa_matches_conformal_route(p in pt(1e3), q in pt(1e3)) {
        let d2 = center_dist_fa(p, q).value();
        prop_assert!(close(center_dist_fa_conformal(p, q), d2, 1e-9));
        prop_assert_eq!(center_dist_fa(q, p).value(), d2);
    }

    #[test]
    fn fb_matches_reference_and_grid(p in pt(200.0), s in segment(150.0)) {
        let r = center_dist_fb(p, &s);
        let d2 = r.squared_distance.value();
        let reference = reference_point_segment2(p, &s);
        prop_assert!(close(d2, reference, 1e-9), "{} vs {}", d2, reference);
        let g = GridSpec::DEFAULT_1D;
        let grid = oracle_point_segment(p, &s, g);
        prop_assert!(d2 <= grid + 1e-9 * grid.max(1.0));
        prop_assert!(grid <= d2 + g.slack(s.length_squared().sqrt(), d2.sqrt()) + 1e-9 * d2.max(1.0));
        prop_assert!((0.0..=1.0).contains(&r.s));
        prop_assert_eq!(r.squared_distance, center_dist_fa(p, r.closest));
    }

    #[test]
    fn fb_branches_follow_projection(p in pt(200.0), s in segment(150.0)) {
        let r = center_dist_fb(p, &s);
        let dir = s.direction();
        let proj = (p - s.start()).dot(dir);
        let expected = if s.is_degenerate() {
            ProjectionBranch::Degenerate
        } else if proj <= 0.0 {
            ProjectionBranch::Start
        } else if dir.norm_squared() <= proj {
            ProjectionBranch::End
        } else {
            ProjectionBranch::Interior
        };
        prop_assert_eq!(r.branch, expected);
        match r.branch {
            ProjectionBranch::Degenerate | ProjectionBranch::Start => prop_assert_eq!(r.closest, s.start()),
            ProjectionBranch::End => prop_assert_eq!(r.closest, s.end()),
            ProjectionBranch::Interior => prop_assert!(r.s > 0.0 && r.s < 1.0),
        }
    }

    #[test]
    fn fc_matches_reference_and_grid(s1 in segment(150.0), s2 in segment(150.0)) {
        let c = center_dist_fc(&s1, &s2);
        let d2 = c.squared_distance.value();
        let reference = reference_segment_segment2(&s1, &s2);
        prop_assert!(close(d2, reference, 1e-9), "{} vs {} ({:?})", d2, reference, c.case);
        let g = GridSpec::new(150).unwrap();
        let grid = oracle_segment_segment(&s1, &s2, g);
        let len = s1.length_squared().sqrt() + s2.length_squared().sqrt();
        prop_assert!(d2 <= grid + 1e-9 * grid.max(1.0));
        prop_assert!(grid <= d2 + g.slack(len, d2.sqrt()) + 1e-9 * d2.max(1.0));
    }

    #[test]
    fn fc_is_symmetric(s1 in segment(150.0), s2 in segment(150.0)) {
        let a = center_dist_fc(&s1, &s2).squared_distance.value();
        let b = center_dist_fc(&s2, &s1).squared_distance.value();
        prop_assert!(close(a, b, 1e-9));
    }

    #[test]
    fn fc_reports_consistent_closest_points(s1 in segment(150.0), s2 in segment(150.0)) {
        let c = center_dist_fc(&s1, &s2);
        prop_assert!((0.0..=1.0).contains(&c.s1) && (0.0..=1.0).contains(&c.s2));
        prop_assert_eq!(c.squared_distance, center_dist_fa(c.q1, c.q2));
        prop_assert_eq!(c.case, classify(&s1, &s2));
    }

    #[test]
    fn parallel_pairs_use_the_boundary(pair in parallel_pair(150.0)) {
        let (s1, s2) = pair;
        prop_assume!(!s1.is_degenerate() && !s2.is_degenerate());
        let c = center_dist_fc(&s1, &s2);
        prop_assert_eq!(c.case, SegmentCase::Parallel);
        prop_assert!(close(c.squared_distance.value(), reference_segment_segment2(&s1, &s2), 1e-9));
    }

    #[test]
    fn boundary_cases_take_the_edge_minimum(s1 in segment(150.0), s2 in segment(150.0)) {
        let case = classify(&s1, &s2);
        prop_assume!(case.uses_boundary());
        let c = center_dist_fc(&s1, &s2);
        let best = boundary_candidates(&s1, &s2, case)
            .iter()
            .map(|p| p.squared_distance.value())
            .fold(f64::INFINITY, f64::min);
        prop_assert_eq!(c.squared_distance.value(), best);
    }

    #[test]
    fn stationary_point_zeroes_the_gradient(s1 in segment(150.0), s2 in segment(150.0)) {
        let co = segment_pair_coefficients(&s1, &s2);
        let st = stationary_point(&co);
        prop_assume!(st.exists);
        let (g1, g2) = co.half_gradient(st.s1k, st.s2k);
        let n1 = (co.a * st.s1k).abs() + (co.b * st.s2k).abs() + co.d.abs();
        let n2 = (co.b * st.s1k).abs() + (co.c * st.s2k).abs() + co.e.abs();
        prop_assert!(g1.abs() <= 1e-8 * n1.max(1.0));
        prop_assert!(g2.abs() <= 1e-8 * n2.max(1.0));
    }

    #[test]
    fn quadratic_is_the_squared_distance(s1 in segment(150.0), s2 in segment(150.0), t1 in 0.0..=1.0f64, t2 in 0.0..=1.0f64) {
        let co = segment_pair_coefficients(&s1, &s2);
        let q1 = s1.point_at(t1).unwrap();
        let q2 = s2.point_at(t2).unwrap();
        let scale = co.a + co.c + co.f + 2.0 * (co.b.abs() + co.d.abs() + co.e.abs());
        prop_assert!((co.quadratic(t1, t2) - q1.distance_squared(q2)).abs() <= 1e-9 * scale.max(1.0));
    }

    #[test]
    fn translation_invariance(s1 in segment(150.0), s2 in segment(150.0), by in pt(500.0)) {
        let a = center_dist_fc(&s1, &s2).squared_distance.value();
        let b = center_dist_fc(&s1.translated(by), &s2.translated(by)).squared_distance.value();
        prop_assert!((a - b).abs() <= 1e-7 * a.max(1.0));
    }
}
