//! Pairwise collision predicates and robots as indexed unions of primitives.
//!
//! Two primitives collide when their squared center distance is at most the
//! squared sum of their radii. The sets are closed, so touching counts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::distance::{center_dist_fa, center_dist_fb, center_dist_fc, SquaredDistance};
use crate::error::Error;
use crate::euclid::EuclideanPoint;
use crate::primitives::{Capsule, ClosedBall};

/// Tolerance used by [`Component::approx_eq`].
pub const COMPONENT_EQ_TOL: f64 = 1e-12;

pub fn balls_collide(b1: &ClosedBall, b2: &ClosedBall) -> bool {
    let r = b1.radius() + b2.radius();
    center_dist_fa(b1.center(), b2.center()).value() <= r * r
}

pub fn ball_capsule_collide(b: &ClosedBall, c: &Capsule) -> bool {
    let r = b.radius() + c.radius();
    center_dist_fb(b.center(), c.axis()).squared_distance.value() <= r * r
}

pub fn capsules_collide(c1: &Capsule, c2: &Capsule) -> bool {
    let r = c1.radius() + c2.radius();
    center_dist_fc(c1.axis(), c2.axis()).squared_distance.value() <= r * r
}

/// One primitive of a robot body.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Component {
    Ball(ClosedBall),
    Capsule(Capsule),
}

impl Component {
    pub fn radius(&self) -> f64 {
        match self {
            Component::Ball(b) => b.radius(),
            Component::Capsule(c) => c.radius(),
        }
    }

    pub fn contains(&self, x: EuclideanPoint) -> bool {
        match self {
            Component::Ball(b) => b.contains(x),
            Component::Capsule(c) => c.contains(x),
        }
    }

    pub fn translated(&self, by: EuclideanPoint) -> Component {
        match self {
            Component::Ball(b) => Component::Ball(b.translated(by)),
            Component::Capsule(c) => Component::Capsule(c.translated(by)),
        }
    }

    /// Same kind and every parameter within [`COMPONENT_EQ_TOL`].
    pub fn approx_eq(&self, other: &Component) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= COMPONENT_EQ_TOL;
        let close_p = |a: EuclideanPoint, b: EuclideanPoint| {
            close(a.x, b.x) && close(a.y, b.y) && close(a.z, b.z)
        };
        match (self, other) {
            (Component::Ball(a), Component::Ball(b)) => {
                close_p(a.center(), b.center()) && close(a.radius(), b.radius())
            }
            (Component::Capsule(a), Component::Capsule(b)) => {
                close_p(a.axis().start(), b.axis().start())
                    && close_p(a.axis().end(), b.axis().end())
                    && close(a.radius(), b.radius())
            }
            _ => false,
        }
    }
}

impl From<ClosedBall> for Component {
    fn from(b: ClosedBall) -> Self {
        Component::Ball(b)
    }
}

impl From<Capsule> for Component {
    fn from(c: Capsule) -> Self {
        Component::Capsule(c)
    }
}

/// Outcome of a component pair test with the numbers behind it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairTest {
    pub colliding: bool,
    pub squared_distance: SquaredDistance,
    /// `(r_a + r_b)²`, mm².
    pub threshold: f64,
}

pub fn components_collide(a: &Component, b: &Component) -> PairTest {
    let squared_distance = match (a, b) {
        (Component::Ball(x), Component::Ball(y)) => center_dist_fa(x.center(), y.center()),
        (Component::Ball(x), Component::Capsule(y)) | (Component::Capsule(y), Component::Ball(x)) => {
            center_dist_fb(x.center(), y.axis()).squared_distance
        }
        (Component::Capsule(x), Component::Capsule(y)) => {
            center_dist_fc(x.axis(), y.axis()).squared_distance
        }
    };
    let r = a.radius() + b.radius();
    let threshold = r * r;
    PairTest {
        colliding: squared_distance.value() <= threshold,
        squared_distance,
        threshold,
    }
}

/// A union of components keyed by index, built by folding over an index range.
///
/// The range `m..=n` is empty when `m > n`. Extending the range by one index
/// adds that component; a single-index range is that component alone.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RobotBody {
    parts: BTreeMap<usize, Component>,
}

impl RobotBody {
    pub fn empty() -> Self {
        RobotBody::default()
    }

    /// Folds `f` over `m..=n` by union.
    pub fn fold(m: usize, n: usize, f: impl Fn(usize) -> Component) -> Self {
        let mut body = if m == 0 {
            RobotBody::single(0, f(0))
        } else {
            RobotBody::empty()
        };
        for k in 1..=n {
            if m <= k {
                body = body.union_with(k, f(k));
            }
        }
        body
    }

    pub fn single(index: usize, c: Component) -> Self {
        RobotBody::empty().union_with(index, c)
    }

    pub fn union_with(mut self, index: usize, c: Component) -> Self {
        self.parts.insert(index, c);
        self
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Component> {
        self.parts.get(&index)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Component)> + '_ {
        self.parts.iter().map(|(&i, c)| (i, c))
    }

    /// Point membership in the union.
    pub fn contains(&self, x: EuclideanPoint) -> bool {
        self.parts.values().any(|c| c.contains(x))
    }

    /// Same index set and pointwise equal components.
    pub fn same_as(&self, other: &RobotBody) -> bool {
        self.parts.len() == other.parts.len()
            && self
                .parts
                .iter()
                .all(|(i, c)| other.parts.get(i).is_some_and(|d| c.approx_eq(d)))
    }
}

/// `robot (m..n) f`.
pub fn robot_union_fold(m: usize, n: usize, f: impl Fn(usize) -> Component) -> RobotBody {
    RobotBody::fold(m, n, f)
}

/// A named robot with components indexed `0..len`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobotModel {
    name: String,
    components: Vec<Component>,
}

impl RobotModel {
    pub fn new(name: impl Into<String>, components: Vec<Component>) -> Result<Self, Error> {
        let name = name.into();
        if components.is_empty() {
            return Err(Error::EmptyRobot(name));
        }
        Ok(RobotModel { name, components })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `robot (0..len-1) f`.
    pub fn body(&self) -> RobotBody {
        RobotBody::fold(0, self.components.len() - 1, |i| self.components[i])
    }

    pub fn translated(&self, by: EuclideanPoint) -> RobotModel {
        RobotModel {
            name: self.name.clone(),
            components: self.components.iter().map(|c| c.translated(by)).collect(),
        }
    }
}

/// Names are ignored; only the indexed components matter.
pub fn robots_equal(r1: &RobotModel, r2: &RobotModel) -> bool {
    r1.body().same_as(&r2.body())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairEvidence {
    pub i: usize,
    pub j: usize,
    pub squared_distance: f64,
    pub threshold: f64,
    pub colliding: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CollisionReport {
    pub verdict: bool,
    pub pairs: Vec<PairEvidence>,
}

impl CollisionReport {
    pub fn colliding_pairs(&self) -> impl Iterator<Item = &PairEvidence> + '_ {
        self.pairs.iter().filter(|p| p.colliding)
    }

    pub fn pair(&self, i: usize, j: usize) -> Option<&PairEvidence> {
        self.pairs.iter().find(|p| p.i == i && p.j == j)
    }
}

/// How much evidence a report collects.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportMode {
    /// Every pair.
    #[default]
    AllPairs,
    /// Stop after the first colliding pair in `(i, j)` order.
    FirstHit,
}

fn evidence(i: usize, j: usize, a: &Component, b: &Component) -> PairEvidence {
    let t = components_collide(a, b);
    PairEvidence {
        i,
        j,
        squared_distance: t.squared_distance.value(),
        threshold: t.threshold,
        colliding: t.colliding,
    }
}

fn collect(pairs: impl Iterator<Item = PairEvidence>, mode: ReportMode) -> CollisionReport {
    let mut report = CollisionReport::default();
    for p in pairs {
        report.pairs.push(p);
        if p.colliding {
            report.verdict = true;
            if mode == ReportMode::FirstHit {
                break;
            }
        }
    }
    report
}

/// Tests every component of `r1` against every component of `r2`.
pub fn robots_collide(r1: &RobotModel, r2: &RobotModel) -> CollisionReport {
    robots_collide_with(r1, r2, ReportMode::AllPairs)
}

pub fn robots_collide_with(r1: &RobotModel, r2: &RobotModel, mode: ReportMode) -> CollisionReport {
    let pairs = r1.components.iter().enumerate().flat_map(|(i, a)| {
        r2.components
            .iter()
            .enumerate()
            .map(move |(j, b)| evidence(i, j, a, b))
    });
    collect(pairs, mode)
}

/// Boolean-only check that stops at the first hit.
pub fn robots_intersect(r1: &RobotModel, r2: &RobotModel) -> bool {
    r1.components
        .iter()
        .any(|a| r2.components.iter().any(|b| components_collide(a, b).colliding))
}

/// Pairs `i < j` within one robot. With `skip_adjacent`, pairs with
/// `j − i ≤ 1` are left out since joint-connected links always touch.
pub fn self_collision(r: &RobotModel, skip_adjacent: bool, mode: ReportMode) -> CollisionReport {
    let min_gap = if skip_adjacent { 2 } else { 1 };
    let comps = &r.components;
    let pairs = (0..comps.len()).flat_map(move |i| {
        (i + min_gap..comps.len()).map(move |j| evidence(i, j, &comps[i], &comps[j]))
    });
    collect(pairs, mode)
}
