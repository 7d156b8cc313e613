use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point or displacement in 3-D Euclidean space, in millimeters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EuclideanPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl EuclideanPoint {
    pub const ORIGIN: EuclideanPoint = EuclideanPoint::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        EuclideanPoint { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn dot(self, rhs: EuclideanPoint) -> f64 {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    #[inline]
    pub fn distance_squared(self, rhs: EuclideanPoint) -> f64 {
        (self - rhs).norm_squared()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// `self + t (to - self)`.
    #[inline]
    pub fn lerp(self, to: EuclideanPoint, t: f64) -> EuclideanPoint {
        self + (to - self) * t
    }
}

impl From<[f64; 3]> for EuclideanPoint {
    fn from([x, y, z]: [f64; 3]) -> Self {
        EuclideanPoint { x, y, z }
    }
}

impl Add for EuclideanPoint {
    type Output = EuclideanPoint;
    #[inline]
    fn add(self, rhs: EuclideanPoint) -> EuclideanPoint {
        EuclideanPoint::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for EuclideanPoint {
    type Output = EuclideanPoint;
    #[inline]
    fn sub(self, rhs: EuclideanPoint) -> EuclideanPoint {
        EuclideanPoint::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for EuclideanPoint {
    type Output = EuclideanPoint;
    #[inline]
    fn mul(self, rhs: f64) -> EuclideanPoint {
        EuclideanPoint::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

impl Neg for EuclideanPoint {
    type Output = EuclideanPoint;
    fn neg(self) -> EuclideanPoint {
        EuclideanPoint::new(-self.x, -self.y, -self.z)
    }
}

impl fmt::Display for EuclideanPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}
