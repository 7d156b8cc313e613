//! Conformal embeddings of Euclidean objects.
//!
//! Inner-product (IPNS) forms: a point `X` lies on the object `O` when
//! `X · O = 0`. Outer-product (OPNS) forms: `X ∧ O* = 0`.

use crate::algebra::{null_inf, null_zero, Multivector};
use crate::error::Error;
use crate::euclid::EuclideanPoint;

/// Unit-length tolerance for plane normals.
pub const UNIT_NORMAL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectKind {
    Point,
    Sphere,
    Plane,
    Circle,
    Line,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    InnerProduct,
    OuterProduct,
}

/// A multivector tagged with the object it encodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConformalObject {
    pub kind: ObjectKind,
    pub form: Form,
    pub rep: Multivector,
}

/// Euclidean coordinates as a grade-1 multivector `x e1 + y e2 + z e3`.
pub fn euclidean_vector(p: EuclideanPoint) -> Multivector {
    Multivector::vector([p.x, p.y, p.z, 0.0, 0.0])
}

/// `P = p + ½ p² e∞ + e0`.
pub fn point(p: EuclideanPoint) -> Result<Multivector, Error> {
    if !p.is_finite() {
        return Err(Error::NonFinite("point coordinates"));
    }
    Ok(embed(p))
}

/// [`point`] without the finiteness check.
#[inline]
pub(crate) fn embed(p: EuclideanPoint) -> Multivector {
    euclidean_vector(p) + null_inf() * (0.5 * p.norm_squared()) + null_zero()
}

/// `S = P − ½ r² e∞`.
pub fn sphere(center: EuclideanPoint, r: f64) -> Result<Multivector, Error> {
    if !r.is_finite() {
        return Err(Error::NonFinite("sphere radius"));
    }
    if r < 0.0 {
        return Err(Error::NegativeRadius(r));
    }
    Ok(point(center)? - null_inf() * (0.5 * r * r))
}

/// `π = n + d e∞` for a unit normal `n` and origin distance `d`.
pub fn plane(normal: EuclideanPoint, d: f64) -> Result<Multivector, Error> {
    if !normal.is_finite() {
        return Err(Error::NonFinite("plane normal"));
    }
    if !d.is_finite() {
        return Err(Error::NonFinite("plane distance"));
    }
    let len = normal.norm();
    if (len - 1.0).abs() > UNIT_NORMAL_TOL {
        return Err(Error::NonUnitNormal(len));
    }
    Ok(euclidean_vector(normal) + null_inf() * d)
}

/// `S* = P1 ∧ P2 ∧ P3 ∧ P4`.
pub fn sphere_opns(
    p1: &Multivector,
    p2: &Multivector,
    p3: &Multivector,
    p4: &Multivector,
) -> Multivector {
    p1.outer(p2).outer(p3).outer(p4)
}

/// `π* = P1 ∧ P2 ∧ P3 ∧ e∞`.
pub fn plane_opns(p1: &Multivector, p2: &Multivector, p3: &Multivector) -> Multivector {
    p1.outer(p2).outer(p3).outer(&null_inf())
}

/// `Z* = P1 ∧ P2 ∧ P3`.
pub fn circle_opns(p1: &Multivector, p2: &Multivector, p3: &Multivector) -> Multivector {
    p1.outer(p2).outer(p3)
}

/// `L* = P1 ∧ P2 ∧ e∞`.
pub fn line_opns(p1: &Multivector, p2: &Multivector) -> Multivector {
    p1.outer(p2).outer(&null_inf())
}

/// `Z = S1 ∧ S2`, the intersection circle of two spheres.
pub fn circle_ipns(s1: &Multivector, s2: &Multivector) -> Multivector {
    s1.outer(s2)
}

/// `L = π1 ∧ π2`, the intersection line of two planes.
pub fn line_ipns(pi1: &Multivector, pi2: &Multivector) -> Multivector {
    pi1.outer(pi2)
}

impl ConformalObject {
    pub fn point(p: EuclideanPoint) -> Result<Self, Error> {
        Ok(ConformalObject {
            kind: ObjectKind::Point,
            form: Form::InnerProduct,
            rep: point(p)?,
        })
    }

    pub fn sphere(center: EuclideanPoint, r: f64) -> Result<Self, Error> {
        Ok(ConformalObject {
            kind: ObjectKind::Sphere,
            form: Form::InnerProduct,
            rep: sphere(center, r)?,
        })
    }

    pub fn plane(normal: EuclideanPoint, d: f64) -> Result<Self, Error> {
        Ok(ConformalObject {
            kind: ObjectKind::Plane,
            form: Form::InnerProduct,
            rep: plane(normal, d)?,
        })
    }

    /// Whether `x` satisfies the object's null-space condition up to `tol`.
    pub fn contains(&self, x: EuclideanPoint, tol: f64) -> bool {
        let x = embed(x);
        let residual = match self.form {
            Form::InnerProduct => x.inner(&self.rep),
            Form::OuterProduct => x.outer(&self.rep),
        };
        residual.max_abs() <= tol
    }
}
