//! Built-in identity checks run by `cga-collide selftest`.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{null_inf, null_zero, Metric, Multivector, EMINUS, EPLUS};
use crate::collision::{components_collide, robot_union_fold, Component, RobotBody};
use crate::euclid::EuclideanPoint;
use crate::objects::{embed, sphere};
use crate::primitives::{Capsule, ClosedBall, Segment};
use crate::scene::{parse_scene, TABLE3};

const SEED: u64 = 0x5e1f_7e57;
const SAMPLES: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name,
        passed,
        detail: detail.into(),
    }
}

fn random_point(rng: &mut ChaCha8Rng, scale: f64) -> EuclideanPoint {
    EuclideanPoint::new(
        rng.gen_range(-scale..=scale),
        rng.gen_range(-scale..=scale),
        rng.gen_range(-scale..=scale),
    )
}

/// Runs every check with products taken under `metric`.
pub fn run_checks(metric: &Metric) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let e0 = null_zero();
    let einf = null_inf();
    let mut out = Vec::new();

    let ep = Multivector::blade(EPLUS, 1.0);
    let em = Multivector::blade(EMINUS, 1.0);
    let sq_p = metric.geometric(&ep, &ep).scalar_part();
    let sq_m = metric.geometric(&em, &em).scalar_part();
    out.push(check(
        "metric-signature",
        sq_p == 1.0 && sq_m == -1.0,
        format!("e+^2 = {sq_p}, e-^2 = {sq_m}"),
    ));

    let s0 = metric.geometric(&e0, &e0).scalar_part();
    let sinf = metric.geometric(&einf, &einf).scalar_part();
    out.push(check(
        "Eq1-null-squares",
        s0 == 0.0 && sinf == 0.0,
        format!("e0^2 = {s0}, einf^2 = {sinf}"),
    ));

    let c = metric.inner(&e0, &einf).scalar_part();
    out.push(check(
        "Eq1-null-contraction",
        (c + 1.0).abs() <= 1e-15,
        format!("e0 . einf = {c}"),
    ));

    let mut worst = 0.0f64;
    for _ in 0..SAMPLES {
        let p = random_point(&mut rng, 1e3);
        let q = random_point(&mut rng, 1e3);
        let d2 = p.distance_squared(q);
        let v = 2.0 * metric.inner(&embed(p), &embed(q)).scalar_part().abs();
        worst = worst.max((v - d2).abs() / d2.max(1.0));
    }
    out.push(check(
        "Eq2-distance-identity",
        worst <= 1e-9,
        format!("max relative error {worst:.3e} over {SAMPLES} pairs"),
    ));

    let mut mismatches = 0;
    for _ in 0..SAMPLES {
        let x = random_point(&mut rng, 100.0);
        let center = random_point(&mut rng, 100.0);
        let r: f64 = rng.gen_range(0.0..150.0);
        let d2 = x.distance_squared(center);
        if (d2 - r * r).abs() <= 1e-6 * d2.max(1.0) {
            continue;
        }
        let s = sphere(center, r).expect("valid sphere");
        let inside = metric.inner(&embed(x), &s).scalar_part() >= 0.0;
        if inside != (d2 <= r * r) {
            mismatches += 1;
        }
    }
    out.push(check(
        "sphere-membership-sign",
        mismatches == 0,
        format!("{mismatches} mismatches"),
    ));

    let mut bad = 0;
    for _ in 0..SAMPLES {
        let p = random_point(&mut rng, 1e3);
        let seg = Segment::new(p, p).expect("finite");
        let t: f64 = rng.gen_range(0.0..=1.0);
        if seg.point_at(t) != Ok(p) {
            bad += 1;
        }
    }
    out.push(check(
        "center-line-degenerate",
        bad == 0,
        format!("{bad} collapsed segments left their start point"),
    ));

    let mut bad = 0;
    for _ in 0..SAMPLES {
        let p = random_point(&mut rng, 100.0);
        let r: f64 = rng.gen_range(0.0..50.0);
        let cap = Capsule::from_points(p, p, r).expect("valid capsule");
        let ball = ClosedBall::new(p, r).expect("valid ball");
        let x = random_point(&mut rng, 150.0);
        if cap.degenerate_as_ball() != Some(ball) || cap.contains(x) != ball.contains(x) {
            bad += 1;
        }
    }
    out.push(check(
        "capsule-degenerate",
        bad == 0,
        format!("{bad} collapsed capsules differ from their ball"),
    ));

    let f = |k: usize| -> Component {
        ClosedBall::new(EuclideanPoint::new(k as f64, 0.0, 0.0), 0.5)
            .expect("valid ball")
            .into()
    };
    let singles_ok = (0..20).all(|n| robot_union_fold(n, n, f) == RobotBody::single(n, f(n)));
    out.push(check(
        "singleton-fold",
        singles_ok,
        "robot (n..n) f = f(n) for n < 20",
    ));

    let scene = parse_scene(TABLE3).expect("bundled scene parses");
    let t = components_collide(
        &scene.robots[0].components()[6],
        &scene.robots[1].components()[5],
    );
    out.push(check(
        "table3-end-effector-hit",
        t.colliding && t.squared_distance.value() == 0.0 && t.threshold == 961.0,
        format!(
            "squared distance {} vs threshold {}",
            t.squared_distance, t.threshold
        ),
    ));

    out
}

/// Prints one line per check; returns 0 when all pass, 1 otherwise.
pub fn run_selftest_with(metric: &Metric, out: &mut dyn Write) -> io::Result<i32> {
    let results = run_checks(metric);
    let failed = results.iter().filter(|r| !r.passed).count();
    for r in &results {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{tag}  {:<24} {}", r.name, r.detail)?;
    }
    writeln!(
        out,
        "{} checks, {} passed, {} failed",
        results.len(),
        results.len() - failed,
        failed
    )?;
    Ok(if failed == 0 { 0 } else { 1 })
}

pub fn run_selftest(out: &mut dyn Write) -> io::Result<i32> {
    run_selftest_with(&Metric::CONFORMAL, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        let results = run_checks(&Metric::CONFORMAL);
        assert!(results.len() >= 6);
        for r in &results {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
        assert!(results.iter().any(|r| r.name == "Eq2-distance-identity"));
    }

    #[test]
    fn corrupted_metric_fails() {
        let euclidean = Metric::diagonal([1.0; 5]);
        let mut buf = Vec::new();
        assert_eq!(run_selftest_with(&euclidean, &mut buf).unwrap(), 1);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("FAIL  Eq1-null-squares"));
        assert!(text.contains("FAIL  Eq2-distance-identity"));
    }

    #[test]
    fn output_lists_checks() {
        let mut buf = Vec::new();
        assert_eq!(run_selftest(&mut buf).unwrap(), 0);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().any(|l| l.starts_with("PASS  Eq2-distance-identity")));
    }
}
