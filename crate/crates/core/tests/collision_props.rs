use cga_collision::collision::{
    ball_capsule_collide, balls_collide, capsules_collide, components_collide, robots_collide,
    robots_collide_with, self_collision, Component, ReportMode, RobotBody, RobotModel,
};
use cga_collision::oracle::euclid_reference_distance2;
use cga_collision::{robot_union_fold, Capsule, ClosedBall, EuclideanPoint};
use proptest::collection::vec;
use proptest::prelude::*;

fn pt(scale: f64) -> impl Strategy<Value = EuclideanPoint> {
    (-scale..scale, -scale..scale, -scale..scale).prop_map(|(x, y, z)| EuclideanPoint::new(x, y, z))
}

fn ball(scale: f64) -> impl Strategy<Value = ClosedBall> {
    (pt(scale), 0.0..40.0f64).prop_map(|(c, r)| ClosedBall::new(c, r).unwrap())
}

fn capsule(scale: f64) -> impl Strategy<Value = Capsule> {
    (pt(scale), pt(scale), 0.0..30.0f64).prop_map(|(a, b, r)| Capsule::from_points(a, b, r).unwrap())
}

fn component() -> impl Strategy<Value = Component> {
    prop_oneof![ball(120.0).prop_map(Component::from), capsule(120.0).prop_map(Component::from)]
}

fn robot() -> impl Strategy<Value = RobotModel> {
    vec(component(), 1..=10).prop_map(|c| RobotModel::new("r", c).unwrap())
}

fn oracle(a: &Component, b: &Component) -> bool {
    let rs = a.radius() + b.radius();
    euclid_reference_distance2(a, b) <= rs * rs
}

proptest! {
    #[test]
    fn ball_pairs_match_oracle(a in ball(100.0), b in ball(100.0)) {
        let d = a.center().distance_squared(b.center()).sqrt();
        prop_assume!((d - (a.radius() + b.radius())).abs() > 1e-9);
        prop_assert_eq!(balls_collide(&a, &b), d <= a.radius() + b.radius());
    }

    #[test]
    fn ball_capsule_matches_oracle(a in ball(100.0), c in capsule(100.0)) {
        let (x, y) = (Component::from(a), Component::from(c));
        prop_assert_eq!(ball_capsule_collide(&a, &c), oracle(&x, &y));
    }

    #[test]
    fn capsule_pairs_match_oracle(a in capsule(100.0), b in capsule(100.0)) {
        let (x, y) = (Component::from(a), Component::from(b));
        prop_assert_eq!(capsules_collide(&a, &b), oracle(&x, &y));
        prop_assert_eq!(capsules_collide(&a, &b), capsules_collide(&b, &a));
    }

    #[test]
    fn a_shared_point_means_collision(a in component(), b in component(), t in 0.0..=1.0f64) {
        // a point on the segment joining two centers, inside both sets
        let centre = |c: &Component| match c {
            Component::Ball(b) => b.center(),
            Component::Capsule(c) => c.axis().start(),
        };
        let x = centre(&a).lerp(centre(&b), t);
        if a.contains(x) && b.contains(x) {
            prop_assert!(components_collide(&a, &b).colliding);
        }
    }

    #[test]
    fn robot_verdict_is_pairwise_or(r1 in robot(), r2 in robot()) {
        let report = robots_collide(&r1, &r2);
        let mut any = false;
        for a in r1.components() {
            for b in r2.components() {
                any |= components_collide(a, b).colliding;
            }
        }
        prop_assert_eq!(report.verdict, any);
        prop_assert_eq!(report.pairs.len(), r1.len() * r2.len());
        let first = robots_collide_with(&r1, &r2, ReportMode::FirstHit);
        prop_assert_eq!(first.verdict, any);
        prop_assert_eq!(first.colliding_pairs().count(), usize::from(any));
    }

    #[test]
    fn self_collision_pairs(r in robot(), skip in any::<bool>()) {
        let rep = self_collision(&r, skip, ReportMode::AllPairs);
        let gap = if skip { 2 } else { 1 };
        let n = r.len();
        let expected: usize = (0..n).map(|i| n.saturating_sub(i + gap)).sum();
        prop_assert_eq!(rep.pairs.len(), expected);
        prop_assert!(rep.pairs.iter().all(|p| p.j >= p.i + gap));
    }

    #[test]
    fn fold_laws(m in 0usize..20, n in 0usize..20, comps in vec(component(), 21)) {
        let f = |k: usize| comps[k];
        let body = robot_union_fold(m, n, f);
        prop_assert_eq!(body.len(), if m <= n { n - m + 1 } else { 0 });
        let next = robot_union_fold(m, n + 1, f);
        if m <= n + 1 {
            prop_assert_eq!(next, body.clone().union_with(n + 1, f(n + 1)));
        } else {
            prop_assert_eq!(next, body.clone());
        }
        prop_assert_eq!(robot_union_fold(n, n, f), RobotBody::single(n, f(n)));
    }

    #[test]
    fn translation_preserves_verdict(r1 in robot(), r2 in robot(), by in pt(1e3)) {
        let a = robots_collide(&r1, &r2);
        let b = robots_collide(&r1.translated(by), &r2.translated(by));
        for (x, y) in a.pairs.iter().zip(&b.pairs) {
            // skip pairs too close to tangency for a translated recomputation
            if (x.squared_distance - x.threshold).abs() > 1e-6 * x.threshold.max(1.0) {
                prop_assert_eq!(x.colliding, y.colliding);
            }
        }
    }
}

#[test]
fn empty_robots_are_rejected() {
    assert!(RobotModel::new("none", Vec::new()).is_err());
}
