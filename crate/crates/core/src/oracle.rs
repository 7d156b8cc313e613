//! Brute-force reference distances.
//!
//! Nothing here calls into [`crate::distance`] or the multivector code: the
//! grid oracles sample the parameter space, and
//! [`euclid_reference_distance2`] is a separate closed-form implementation on
//! raw coordinate arrays. Tests use both to cross-check the distance kernels.

use crate::collision::Component;
use crate::euclid::EuclideanPoint;
use crate::primitives::Segment;

type V3 = [f64; 3];

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn along(o: V3, d: V3, t: f64) -> V3 {
    [o[0] + t * d[0], o[1] + t * d[1], o[2] + t * d[2]]
}

fn dist2(a: V3, b: V3) -> f64 {
    let d = sub(a, b);
    dot(d, d)
}

/// Number of grid intervals per parameter axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    resolution: usize,
}

impl GridSpec {
    pub const DEFAULT_1D: GridSpec = GridSpec { resolution: 2000 };
    pub const DEFAULT_2D: GridSpec = GridSpec { resolution: 600 };

    /// `None` when `resolution < 2`.
    pub fn new(resolution: usize) -> Option<Self> {
        (resolution >= 2).then_some(GridSpec { resolution })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// How far the grid minimum can sit above the true squared minimum:
    /// `(L/N)(2D + L/N)` for total length `L` and true distance `D`.
    pub fn slack(&self, length: f64, true_distance: f64) -> f64 {
        let h = length / self.resolution as f64;
        h * (2.0 * true_distance + h)
    }
}

fn ends(seg: &Segment) -> (V3, V3) {
    (seg.start().to_array(), seg.end().to_array())
}

/// `min ‖p − q(k/N)‖²` over `k = 0..=N`.
pub fn oracle_point_segment(p: EuclideanPoint, seg: &Segment, g: GridSpec) -> f64 {
    let p = p.to_array();
    let (a, b) = ends(seg);
    let d = sub(b, a);
    let n = g.resolution;
    (0..=n)
        .map(|k| dist2(p, along(a, d, k as f64 / n as f64)))
        .fold(f64::INFINITY, f64::min)
}

/// `min ‖q1(i/N) − q2(k/N)‖²` over the `(N+1)²` grid.
pub fn oracle_segment_segment(seg1: &Segment, seg2: &Segment, g: GridSpec) -> f64 {
    let (a1, b1) = ends(seg1);
    let (a2, b2) = ends(seg2);
    let d1 = sub(b1, a1);
    let d2 = sub(b2, a2);
    let n = g.resolution;
    let second: Vec<V3> = (0..=n).map(|k| along(a2, d2, k as f64 / n as f64)).collect();
    let mut best = f64::INFINITY;
    for i in 0..=n {
        let q1 = along(a1, d1, i as f64 / n as f64);
        for &q2 in &second {
            let v = dist2(q1, q2);
            if v < best {
                best = v;
            }
        }
    }
    best
}

/// Closest-point parameter of `p` on `o + t d`, clamped to `[0, 1]`.
fn clamp_project(p: V3, o: V3, d: V3) -> f64 {
    let dd = dot(d, d);
    if dd == 0.0 {
        return 0.0;
    }
    (dot(sub(p, o), d) / dd).clamp(0.0, 1.0)
}

fn point_segment2(p: V3, a: V3, b: V3) -> f64 {
    let d = sub(b, a);
    dist2(p, along(a, d, clamp_project(p, a, d)))
}

/// Segment–segment squared distance by candidate enumeration: the four
/// endpoint-to-segment distances, plus the interior critical point of the
/// unclamped problem when it lies inside the unit square.
fn segment_segment2(a1: V3, b1: V3, a2: V3, b2: V3) -> f64 {
    let d1 = sub(b1, a1);
    let d2 = sub(b2, a2);
    let mut best = point_segment2(a1, a2, b2)
        .min(point_segment2(b1, a2, b2))
        .min(point_segment2(a2, a1, b1))
        .min(point_segment2(b2, a1, b1));

    // Normal equations for min ‖a1 + t d1 − a2 − s d2‖²:
    //   [d1·d1  −d1·d2] [t]   [−d1·r]
    //   [d1·d2  −d2·d2] [s] = [−d2·r],   r = a1 − a2
    let r = sub(a1, a2);
    let m11 = dot(d1, d1);
    let m12 = dot(d1, d2);
    let m22 = dot(d2, d2);
    let det = m11 * m22 - m12 * m12;
    if det > 1e-12 * (m11 * m22).max(1e-300) {
        let r1 = dot(d1, r);
        let r2 = dot(d2, r);
        let t = (m12 * r2 - m22 * r1) / det;
        let s = (m11 * r2 - m12 * r1) / det;
        if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&s) {
            best = best.min(dist2(along(a1, d1, t), along(a2, d2, s)));
        }
    }
    best
}

/// Squared distance between the center sets of two components.
pub fn euclid_reference_distance2(a: &Component, b: &Component) -> f64 {
    match (a, b) {
        (Component::Ball(x), Component::Ball(y)) => {
            dist2(x.center().to_array(), y.center().to_array())
        }
        (Component::Ball(x), Component::Capsule(y)) | (Component::Capsule(y), Component::Ball(x)) => {
            let (s, e) = ends(y.axis());
            point_segment2(x.center().to_array(), s, e)
        }
        (Component::Capsule(x), Component::Capsule(y)) => {
            let (s1, e1) = ends(x.axis());
            let (s2, e2) = ends(y.axis());
            segment_segment2(s1, e1, s2, e2)
        }
    }
}

/// [`euclid_reference_distance2`] for a bare point and segment.
pub fn reference_point_segment2(p: EuclideanPoint, seg: &Segment) -> f64 {
    let (s, e) = ends(seg);
    point_segment2(p.to_array(), s, e)
}

/// [`euclid_reference_distance2`] for two bare segments.
pub fn reference_segment_segment2(seg1: &Segment, seg2: &Segment) -> f64 {
    let (s1, e1) = ends(seg1);
    let (s2, e2) = ends(seg2);
    segment_segment2(s1, e1, s2, e2)
}
