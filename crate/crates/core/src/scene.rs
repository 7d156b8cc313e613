//! Line-oriented scene files.
//!
//! ```text
//! # comment
//! robot <name>
//! capsule <sx> <sy> <sz> <ex> <ey> <ez> <r>
//! ball <cx> <cy> <cz> <r>
//! ```
//!
//! Component lines attach, in order, to the most recent `robot` line.
//! Units are millimeters.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::collision::{Component, RobotModel};
use crate::error::{SceneError, SceneErrorKind};
use crate::euclid::EuclideanPoint;
use crate::primitives::{Capsule, ClosedBall};

/// The two-robot scene with a known end-effector/link collision.
pub const TABLE3: &str = include_str!("../data/table3.scene");

/// [`TABLE3`] with the second robot moved 10 m along y.
pub const SEPARATED: &str = include_str!("../data/separated.scene");

#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub robots: Vec<RobotModel>,
}

impl Scene {
    pub fn robot(&self, name: &str) -> Option<&RobotModel> {
        self.robots.iter().find(|r| r.name() == name)
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Whitespace-separated tokens with 1-based character columns, comments cut.
fn tokenize(line: &str) -> Vec<Token<'_>> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((byte, col + 1)),
            (true, Some((b, c))) => {
                tokens.push(Token {
                    text: &line[b..byte],
                    column: c,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token {
            text: &line[b..],
            column: c,
        });
    }
    tokens
}

struct Pending {
    name: String,
    line: usize,
    components: Vec<Component>,
}

pub fn parse_scene(text: &str) -> Result<Scene, SceneError> {
    let mut robots = Vec::new();
    let mut names = HashSet::new();
    let mut current: Option<Pending> = None;
    let mut last_line = 0;

    let finish = |p: Pending, robots: &mut Vec<RobotModel>| {
        let line = p.line;
        RobotModel::new(p.name.clone(), p.components)
            .map(|r| robots.push(r))
            .map_err(|_| SceneError {
                line,
                column: 1,
                kind: SceneErrorKind::EmptyRobot(p.name),
            })
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let tokens = tokenize(raw);
        let Some(head) = tokens.first() else {
            continue;
        };
        let err = |column, kind| SceneError { line, column, kind };
        match head.text {
            "robot" => {
                if tokens.len() != 2 {
                    let col = tokens.get(2).map_or(head.column, |t| t.column);
                    return Err(err(
                        col,
                        SceneErrorKind::Syntax("expected `robot <name>`".into()),
                    ));
                }
                let name = tokens[1].text.to_string();
                if !names.insert(name.clone()) {
                    return Err(err(tokens[1].column, SceneErrorKind::DuplicateRobot(name)));
                }
                if let Some(p) = current.take() {
                    finish(p, &mut robots)?;
                }
                current = Some(Pending {
                    name,
                    line,
                    components: Vec::new(),
                });
            }
            kw @ ("capsule" | "ball") => {
                let arity = if kw == "capsule" { 7 } else { 4 };
                if tokens.len() != arity + 1 {
                    let col = tokens.get(arity + 1).map_or(head.column, |t| t.column);
                    return Err(err(
                        col,
                        SceneErrorKind::Syntax(format!(
                            "`{kw}` takes {arity} numbers, found {}",
                            tokens.len() - 1
                        )),
                    ));
                }
                let Some(robot) = current.as_mut() else {
                    return Err(err(
                        head.column,
                        SceneErrorKind::Syntax(format!("`{kw}` before any `robot` line")),
                    ));
                };
                let mut nums = [0.0; 7];
                for (slot, tok) in nums.iter_mut().zip(&tokens[1..]) {
                    let v: f64 = tok.text.parse().map_err(|_| {
                        err(
                            tok.column,
                            SceneErrorKind::Syntax(format!("invalid number `{}`", tok.text)),
                        )
                    })?;
                    if !v.is_finite() {
                        return Err(err(tok.column, SceneErrorKind::NonFinite(tok.text.into())));
                    }
                    *slot = v;
                }
                let r = nums[arity - 1];
                if r < 0.0 {
                    return Err(err(tokens[arity].column, SceneErrorKind::NegativeRadius(r)));
                }
                // inputs are finite and r >= 0, so construction cannot fail
                let component = if kw == "capsule" {
                    Component::Capsule(
                        Capsule::from_points(
                            EuclideanPoint::new(nums[0], nums[1], nums[2]),
                            EuclideanPoint::new(nums[3], nums[4], nums[5]),
                            r,
                        )
                        .expect("validated capsule"),
                    )
                } else {
                    Component::Ball(
                        ClosedBall::new(EuclideanPoint::new(nums[0], nums[1], nums[2]), r)
                            .expect("validated ball"),
                    )
                };
                robot.components.push(component);
            }
            other => {
                return Err(err(
                    head.column,
                    SceneErrorKind::Syntax(format!("unknown record `{other}`")),
                ))
            }
        }
    }
    if let Some(p) = current.take() {
        finish(p, &mut robots)?;
    }
    if robots.is_empty() {
        return Err(SceneError {
            line: last_line.max(1),
            column: 1,
            kind: SceneErrorKind::NoRobots,
        });
    }
    Ok(Scene { robots })
}

/// Writes a scene that [`parse_scene`] reads back bit-exactly.
pub fn serialize_scene(scene: &Scene) -> String {
    let mut out = String::new();
    for robot in &scene.robots {
        writeln!(out, "robot {}", robot.name()).unwrap();
        for c in robot.components() {
            match c {
                Component::Capsule(c) => {
                    let (s, e) = (c.axis().start(), c.axis().end());
                    writeln!(
                        out,
                        "capsule {} {} {} {} {} {} {}",
                        s.x,
                        s.y,
                        s.z,
                        e.x,
                        e.y,
                        e.z,
                        c.radius()
                    )
                    .unwrap();
                }
                Component::Ball(b) => {
                    let p = b.center();
                    writeln!(out, "ball {} {} {} {}", p.x, p.y, p.z, b.radius()).unwrap();
                }
            }
        }
    }
    out
}
