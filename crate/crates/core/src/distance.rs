//! Squared center distances between balls and capsules.
//!
//! All three models return the *squared* Euclidean distance between the
//! closest center points. For conformal points `2 |P · Q| = ‖p − q‖²`, so the
//! conformal and Euclidean forms agree; the kernels evaluate the Euclidean
//! form and [`center_dist_fa_conformal`] keeps the multivector route.
//!
//! For two segments `q1(s1) = sc1 + s1 u` and `q2(s2) = sc2 + s2 v` with
//! `w = sc1 − sc2`:
//!
//! ```text
//! Q(s1, s2) = ‖w + s1 u − s2 v‖²
//!           = a s1² + 2 b s1 s2 + c s2² + 2 d s1 + 2 e s2 + f
//! a = u·u   b = −(u·v)   c = v·v   d = u·w   e = −(v·w)   f = w·w
//! ```
//!
//! whose unconstrained minimizer (when `ac − b² ≠ 0`) is
//! `s1k = (be − cd) / (ac − b²)`, `s2k = (bd − ae) / (ac − b²)`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::euclid::EuclideanPoint;
use crate::objects::embed;
use crate::primitives::{Segment, DEGENERACY_EPS};

/// Relative threshold on `ac − b²` below which two segments count as parallel.
pub const PARALLEL_EPS: f64 = 1e-10;

/// A squared distance in mm². Always finite and non-negative.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SquaredDistance(f64);

impl SquaredDistance {
    pub const ZERO: SquaredDistance = SquaredDistance(0.0);

    /// Clamps tiny negative rounding noise to zero.
    pub fn new(value: f64) -> Self {
        debug_assert!(value.is_finite(), "squared distance {value}");
        SquaredDistance(value.max(0.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// The plain distance in mm.
    pub fn sqrt(self) -> f64 {
        self.0.sqrt()
    }
}

impl fmt::Display for SquaredDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Ball–ball model: `‖p1 − p2‖²`.
#[inline]
pub fn center_dist_fa(p1: EuclideanPoint, p2: EuclideanPoint) -> SquaredDistance {
    SquaredDistance(p1.distance_squared(p2))
}

/// Ball–ball model evaluated in the algebra as `2 |P1 · P2|`.
pub fn center_dist_fa_conformal(p1: EuclideanPoint, p2: EuclideanPoint) -> f64 {
    2.0 * embed(p1).inner(&embed(p2)).scalar_part().abs()
}

/// Which branch of the point–segment split produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProjectionBranch {
    /// The segment is a point.
    Degenerate,
    /// `(p − sc)·(ec − sc) ≤ 0`.
    Start,
    /// `(ec − sc)·(ec − sc) ≤ (p − sc)·(ec − sc)`.
    End,
    /// Orthogonal projection falls strictly inside.
    Interior,
}

/// Closest point on a segment to a query point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentProjection {
    pub s: f64,
    pub closest: EuclideanPoint,
    pub squared_distance: SquaredDistance,
    pub branch: ProjectionBranch,
}

/// Ball–capsule model: squared distance from `p` to the segment.
pub fn center_dist_fb(p: EuclideanPoint, seg: &Segment) -> SegmentProjection {
    let sc = seg.start();
    let ec = seg.end();
    let dir = ec - sc;
    let len2 = dir.norm_squared();
    let at = |s: f64, closest: EuclideanPoint, branch| SegmentProjection {
        s,
        closest,
        squared_distance: center_dist_fa(p, closest),
        branch,
    };
    if len2 < DEGENERACY_EPS {
        return at(0.0, sc, ProjectionBranch::Degenerate);
    }
    let proj = (p - sc).dot(dir);
    if proj <= 0.0 {
        at(0.0, sc, ProjectionBranch::Start)
    } else if len2 <= proj {
        at(1.0, ec, ProjectionBranch::End)
    } else {
        let s = proj / len2;
        at(s, sc + dir * s, ProjectionBranch::Interior)
    }
}

/// Coefficients of the segment-pair quadratic (see module docs).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentPairCoefficients {
    pub u: EuclideanPoint,
    pub v: EuclideanPoint,
    pub w: EuclideanPoint,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl SegmentPairCoefficients {
    pub fn new(seg1: &Segment, seg2: &Segment) -> Self {
        let u = seg1.direction();
        let v = seg2.direction();
        let w = seg1.start() - seg2.start();
        SegmentPairCoefficients {
            u,
            v,
            w,
            a: u.dot(u),
            b: -u.dot(v),
            c: v.dot(v),
            d: u.dot(w),
            e: -v.dot(w),
            f: w.dot(w),
        }
    }

    /// `ac − b²`; non-negative up to rounding.
    pub fn determinant(&self) -> f64 {
        self.a * self.c - self.b * self.b
    }

    /// `Q(s1, s2)`.
    pub fn quadratic(&self, s1: f64, s2: f64) -> f64 {
        self.a * s1 * s1
            + 2.0 * self.b * s1 * s2
            + self.c * s2 * s2
            + 2.0 * self.d * s1
            + 2.0 * self.e * s2
            + self.f
    }

    /// `½ ∇Q(s1, s2)`.
    pub fn half_gradient(&self, s1: f64, s2: f64) -> (f64, f64) {
        (
            self.a * s1 + self.b * s2 + self.d,
            self.b * s1 + self.c * s2 + self.e,
        )
    }
}

pub fn segment_pair_coefficients(seg1: &Segment, seg2: &Segment) -> SegmentPairCoefficients {
    SegmentPairCoefficients::new(seg1, seg2)
}

/// Unconstrained minimizer of `Q`. When `exists` is false the parameters are 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StationaryPoint {
    pub s1k: f64,
    pub s2k: f64,
    pub exists: bool,
}

impl StationaryPoint {
    pub fn in_unit_square(&self) -> bool {
        self.exists && (0.0..=1.0).contains(&self.s1k) && (0.0..=1.0).contains(&self.s2k)
    }
}

pub fn stationary_point(co: &SegmentPairCoefficients) -> StationaryPoint {
    let det = co.determinant();
    if det.abs() <= PARALLEL_EPS * (co.a * co.c).max(1.0) {
        return StationaryPoint {
            s1k: 0.0,
            s2k: 0.0,
            exists: false,
        };
    }
    StationaryPoint {
        s1k: (co.b * co.e - co.c * co.d) / det,
        s2k: (co.b * co.d - co.a * co.e) / det,
        exists: true,
    }
}

/// The configuration that decides how the segment–segment minimum is found.
///
/// When the interior stationary point is unavailable the minimum is taken
/// over the four edges `s1 = 0`, `s1 = 1`, `s2 = 0`, `s2 = 1` of the parameter
/// square. The variants below name why.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegmentCase {
    /// Both segments are points.
    BothDegenerate,
    /// Only the first segment is a point: a point–segment problem.
    FirstDegenerate,
    /// Only the second segment is a point.
    SecondDegenerate,
    /// Stationary point inside `[0, 1]²`.
    Stationary,
    /// `s1k < 0`.
    S1BelowZero,
    /// `s1k > 1`.
    S1AboveOne,
    /// `s2k < 0`.
    S2BelowZero,
    /// `s2k > 1`.
    S2AboveOne,
    /// `ac − b² = 0` (within [`PARALLEL_EPS`]).
    Parallel,
}

impl SegmentCase {
    pub const ALL: [SegmentCase; 9] = [
        SegmentCase::BothDegenerate,
        SegmentCase::FirstDegenerate,
        SegmentCase::SecondDegenerate,
        SegmentCase::Stationary,
        SegmentCase::S1BelowZero,
        SegmentCase::S1AboveOne,
        SegmentCase::S2BelowZero,
        SegmentCase::S2AboveOne,
        SegmentCase::Parallel,
    ];

    /// Whether the minimum comes from edge minimization of the parameter square.
    pub fn uses_boundary(self) -> bool {
        matches!(
            self,
            SegmentCase::S1BelowZero
                | SegmentCase::S1AboveOne
                | SegmentCase::S2BelowZero
                | SegmentCase::S2AboveOne
                | SegmentCase::Parallel
        )
    }
}

pub fn classify(seg1: &Segment, seg2: &Segment) -> SegmentCase {
    classify_with(seg1, seg2, &SegmentPairCoefficients::new(seg1, seg2)).0
}

fn classify_with(
    seg1: &Segment,
    seg2: &Segment,
    co: &SegmentPairCoefficients,
) -> (SegmentCase, StationaryPoint) {
    let none = StationaryPoint {
        s1k: 0.0,
        s2k: 0.0,
        exists: false,
    };
    match (seg1.is_degenerate(), seg2.is_degenerate()) {
        (true, true) => return (SegmentCase::BothDegenerate, none),
        (true, false) => return (SegmentCase::FirstDegenerate, none),
        (false, true) => return (SegmentCase::SecondDegenerate, none),
        (false, false) => {}
    }
    let st = stationary_point(co);
    let case = if !st.exists {
        SegmentCase::Parallel
    } else if st.s1k < 0.0 {
        SegmentCase::S1BelowZero
    } else if st.s1k > 1.0 {
        SegmentCase::S1AboveOne
    } else if st.s2k < 0.0 {
        SegmentCase::S2BelowZero
    } else if st.s2k > 1.0 {
        SegmentCase::S2AboveOne
    } else {
        SegmentCase::Stationary
    };
    (case, st)
}

/// Closest points between two segments.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosestPair {
    pub s1: f64,
    pub s2: f64,
    pub q1: EuclideanPoint,
    pub q2: EuclideanPoint,
    pub squared_distance: SquaredDistance,
    pub case: SegmentCase,
}

impl ClosestPair {
    fn at(seg1: &Segment, seg2: &Segment, s1: f64, s2: f64, case: SegmentCase) -> Self {
        let q1 = seg1.at(s1);
        let q2 = seg2.at(s2);
        ClosestPair {
            s1,
            s2,
            q1,
            q2,
            squared_distance: center_dist_fa(q1, q2),
            case,
        }
    }

    fn order_key(&self, other: &Self) -> Ordering {
        self.squared_distance
            .0
            .total_cmp(&other.squared_distance.0)
            .then(self.s1.total_cmp(&other.s1))
            .then(self.s2.total_cmp(&other.s2))
    }
}

/// Capsule–capsule model: squared distance between two segments.
pub fn center_dist_fc(seg1: &Segment, seg2: &Segment) -> ClosestPair {
    let co = SegmentPairCoefficients::new(seg1, seg2);
    let (case, st) = classify_with(seg1, seg2, &co);
    match case {
        SegmentCase::BothDegenerate => ClosestPair::at(seg1, seg2, 0.0, 0.0, case),
        SegmentCase::FirstDegenerate => {
            let r = center_dist_fb(seg1.start(), seg2);
            ClosestPair::at(seg1, seg2, 0.0, r.s, case)
        }
        SegmentCase::SecondDegenerate => {
            let r = center_dist_fb(seg2.start(), seg1);
            ClosestPair::at(seg1, seg2, r.s, 0.0, case)
        }
        SegmentCase::Stationary => ClosestPair::at(seg1, seg2, st.s1k, st.s2k, case),
        _ => boundary_minimum(seg1, seg2, case),
    }
}

/// Minimum over the four edges of the parameter square, each solved as a
/// point–segment problem. Ties go to the smallest `(s1, s2)`.
pub fn boundary_minimum(seg1: &Segment, seg2: &Segment, case: SegmentCase) -> ClosestPair {
    boundary_candidates(seg1, seg2, case)
        .into_iter()
        .min_by(ClosestPair::order_key)
        .expect("four candidates")
}

/// The minimizers of `Q` restricted to `s1 = 0`, `s1 = 1`, `s2 = 0` and
/// `s2 = 1`, in that order.
pub fn boundary_candidates(seg1: &Segment, seg2: &Segment, case: SegmentCase) -> [ClosestPair; 4] {
    let on2 = |p| center_dist_fb(p, seg2).s;
    let on1 = |p| center_dist_fb(p, seg1).s;
    [
        ClosestPair::at(seg1, seg2, 0.0, on2(seg1.start()), case),
        ClosestPair::at(seg1, seg2, 1.0, on2(seg1.end()), case),
        ClosestPair::at(seg1, seg2, on1(seg2.start()), 0.0, case),
        ClosestPair::at(seg1, seg2, on1(seg2.end()), 1.0, case),
    ]
}
