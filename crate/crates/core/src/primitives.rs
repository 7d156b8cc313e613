//! Closed balls, center-line segments and capsules.
//!
//! Membership tests use the Euclidean form of the conformal test: `x` is in
//! the ball `B(p, r)` when `P_x · S(p, r) = ½(r² − ‖x − p‖²) ≥ 0`.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::euclid::EuclideanPoint;

/// A segment whose squared length is below this (mm²) is treated as a point.
pub const DEGENERACY_EPS: f64 = 1e-12;

fn check_radius(r: f64) -> Result<f64, Error> {
    if !r.is_finite() {
        Err(Error::NonFinite("radius"))
    } else if r < 0.0 {
        Err(Error::NegativeRadius(r))
    } else {
        Ok(r)
    }
}

fn check_point(p: EuclideanPoint, what: &'static str) -> Result<EuclideanPoint, Error> {
    if p.is_finite() {
        Ok(p)
    } else {
        Err(Error::NonFinite(what))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedBall {
    center: EuclideanPoint,
    radius: f64,
}

impl ClosedBall {
    pub fn new(center: EuclideanPoint, radius: f64) -> Result<Self, Error> {
        Ok(ClosedBall {
            center: check_point(center, "ball center")?,
            radius: check_radius(radius)?,
        })
    }

    pub fn center(&self) -> EuclideanPoint {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Boundary points are inside.
    pub fn contains(&self, x: EuclideanPoint) -> bool {
        0.5 * (self.radius * self.radius - x.distance_squared(self.center)) >= 0.0
    }

    pub fn translated(&self, by: EuclideanPoint) -> Self {
        ClosedBall {
            center: self.center + by,
            ..*self
        }
    }
}

/// The center line `q(s) = start + s (end − start)`, `s ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    start: EuclideanPoint,
    end: EuclideanPoint,
}

impl Segment {
    pub fn new(start: EuclideanPoint, end: EuclideanPoint) -> Result<Self, Error> {
        Ok(Segment {
            start: check_point(start, "segment start")?,
            end: check_point(end, "segment end")?,
        })
    }

    pub fn start(&self) -> EuclideanPoint {
        self.start
    }

    pub fn end(&self) -> EuclideanPoint {
        self.end
    }

    /// `end − start`.
    pub fn direction(&self) -> EuclideanPoint {
        self.end - self.start
    }

    pub fn length_squared(&self) -> f64 {
        self.direction().norm_squared()
    }

    pub fn is_degenerate(&self) -> bool {
        self.length_squared() < DEGENERACY_EPS
    }

    pub fn point_at(&self, t: f64) -> Result<EuclideanPoint, Error> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::ParameterOutOfRange(t));
        }
        Ok(self.at(t))
    }

    /// Unchecked interpolation; `at(1.0)` is exactly `end`.
    #[inline]
    pub(crate) fn at(&self, t: f64) -> EuclideanPoint {
        if t == 1.0 {
            self.end
        } else {
            self.start.lerp(self.end, t)
        }
    }

    pub fn translated(&self, by: EuclideanPoint) -> Self {
        Segment {
            start: self.start + by,
            end: self.end + by,
        }
    }
}

pub fn segment_point_at(s: &Segment, t: f64) -> Result<EuclideanPoint, Error> {
    s.point_at(t)
}

/// Equal-radius balls swept along a segment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Capsule {
    axis: Segment,
    radius: f64,
}

impl Capsule {
    pub fn new(axis: Segment, radius: f64) -> Result<Self, Error> {
        Ok(Capsule {
            axis,
            radius: check_radius(radius)?,
        })
    }

    pub fn from_points(start: EuclideanPoint, end: EuclideanPoint, radius: f64) -> Result<Self, Error> {
        Capsule::new(Segment::new(start, end)?, radius)
    }

    pub fn axis(&self) -> &Segment {
        &self.axis
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, x: EuclideanPoint) -> bool {
        let d2 = crate::distance::center_dist_fb(x, &self.axis).squared_distance.value();
        d2 <= self.radius * self.radius
    }

    /// The equivalent ball when the axis collapses to a point.
    pub fn degenerate_as_ball(&self) -> Option<ClosedBall> {
        self.axis.is_degenerate().then_some(ClosedBall {
            center: self.axis.start,
            radius: self.radius,
        })
    }

    pub fn translated(&self, by: EuclideanPoint) -> Self {
        Capsule {
            axis: self.axis.translated(by),
            ..*self
        }
    }
}

pub fn ball_contains(b: &ClosedBall, x: EuclideanPoint) -> bool {
    b.contains(x)
}

pub fn capsule_contains(c: &Capsule, x: EuclideanPoint) -> bool {
    c.contains(x)
}

pub fn capsule_degenerate_as_ball(c: &Capsule) -> Option<ClosedBall> {
    c.degenerate_as_ball()
}
