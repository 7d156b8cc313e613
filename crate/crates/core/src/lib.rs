//! Collision detection for robots modelled as unions of closed balls and
//! capsules, built on the 5-dimensional conformal geometric algebra.
//!
//! Conformal points satisfy `P · Q = −½‖p − q‖²`, so every distance model
//! here returns a *squared* center distance and every collision test compares
//! it against the squared sum of radii.

pub mod algebra;
pub mod cli;
pub mod collision;
pub mod distance;
pub mod error;
pub mod euclid;
pub mod objects;
pub mod oracle;
pub mod primitives;
pub mod scene;
pub mod selftest;

pub use algebra::{Metric, Multivector};
pub use collision::{
    ball_capsule_collide, balls_collide, capsules_collide, components_collide, robot_union_fold,
    robots_collide, robots_equal, CollisionReport, Component, PairEvidence, RobotBody, RobotModel,
};
pub use distance::{
    center_dist_fa, center_dist_fb, center_dist_fc, ClosestPair, SegmentCase, SquaredDistance,
};
pub use error::{Error, SceneError};
pub use euclid::EuclideanPoint;
pub use primitives::{Capsule, ClosedBall, Segment};
pub use scene::{parse_scene, serialize_scene, Scene};
