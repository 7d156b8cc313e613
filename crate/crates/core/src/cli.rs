//! Command-line front end.
//!
//! Exit codes: 0 = no collision (or all checks passed), 1 = collision (or a
//! failed check), 2 = usage or input error.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::collision::{
    components_collide, robots_collide_with, self_collision, CollisionReport, ReportMode,
    RobotModel,
};
use crate::scene::{parse_scene, Scene};
use crate::selftest::run_selftest;

pub const EXIT_CLEAR: i32 = 0;
pub const EXIT_COLLISION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cga-collide", version, about = "Ball/capsule robot collision checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check two robots for collision and print the pair evidence.
    Check(CheckArgs),
    /// Print squared and plain center distances for every component pair.
    Dist(SceneArgs),
    /// Run the built-in identity checks.
    Selftest,
}

#[derive(Args, Debug)]
pub struct SceneArgs {
    /// Scene file.
    #[arg(value_name = "SCENE", required_unless_present = "scene")]
    pub path: Option<PathBuf>,
    /// Scene file (alternative to the positional argument).
    #[arg(long, value_name = "PATH", conflicts_with = "path")]
    pub scene: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

impl SceneArgs {
    fn scene_path(&self) -> PathBuf {
        self.path
            .clone()
            .or_else(|| self.scene.clone())
            .expect("clap enforces a scene path")
    }
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub scene: SceneArgs,
    /// Self-collision mode: check each robot against itself, skipping
    /// neighbouring components.
    #[arg(long)]
    pub skip_adjacent: bool,
    /// Report every pair instead of stopping at the first collision.
    #[arg(long)]
    pub all_pairs: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_CLEAR };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Check(args) => run_check(args, out),
        Command::Dist(args) => run_dist(args, out),
        Command::Selftest => run_selftest(out).map_err(CliError::Io),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: crate::error::SceneError,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn load(path: &PathBuf) -> Result<Scene, CliError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: display.clone(),
        source,
    })?;
    parse_scene(&text).map_err(|source| CliError::Parse {
        path: display,
        source,
    })
}

#[derive(Serialize)]
struct PairLine<'a> {
    robot_i: &'a str,
    i: usize,
    robot_j: &'a str,
    j: usize,
    squared_distance: f64,
    threshold: f64,
    colliding: bool,
}

#[derive(Serialize)]
struct CheckJson<'a> {
    scene: String,
    skip_adjacent: bool,
    all_pairs: bool,
    verdict: bool,
    pairs: Vec<PairLine<'a>>,
}

fn pair_lines<'a>(a: &'a RobotModel, b: &'a RobotModel, r: &CollisionReport) -> Vec<PairLine<'a>> {
    r.pairs
        .iter()
        .map(|p| PairLine {
            robot_i: a.name(),
            i: p.i,
            robot_j: b.name(),
            j: p.j,
            squared_distance: p.squared_distance,
            threshold: p.threshold,
            colliding: p.colliding,
        })
        .collect()
}

pub fn run_check(args: &CheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let path = args.scene.scene_path();
    let scene = load(&path)?;
    let mode = if args.all_pairs {
        ReportMode::AllPairs
    } else {
        ReportMode::FirstHit
    };

    let mut verdict = false;
    let mut pairs = Vec::new();
    if args.skip_adjacent {
        for r in &scene.robots {
            let rep = self_collision(r, true, mode);
            verdict |= rep.verdict;
            pairs.extend(pair_lines(r, r, &rep));
            if verdict && mode == ReportMode::FirstHit {
                break;
            }
        }
    } else {
        if scene.robots.len() != 2 {
            return Err(CliError::Usage(format!(
                "{}: collision check needs exactly 2 robots, found {}",
                path.display(),
                scene.robots.len()
            )));
        }
        let (a, b) = (&scene.robots[0], &scene.robots[1]);
        let rep = robots_collide_with(a, b, mode);
        verdict = rep.verdict;
        pairs = pair_lines(a, b, &rep);
    }

    let report = CheckJson {
        scene: path.display().to_string(),
        skip_adjacent: args.skip_adjacent,
        all_pairs: args.all_pairs,
        verdict,
        pairs,
    };
    match args.scene.format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        OutputFormat::Text => write_check_text(&report, out)?,
    }
    Ok(if verdict { EXIT_COLLISION } else { EXIT_CLEAR })
}

fn write_check_text(report: &CheckJson<'_>, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "scene: {}", report.scene)?;
    let mode = match (report.skip_adjacent, report.all_pairs) {
        (true, true) => "self-collision, non-adjacent pairs, all pairs",
        (true, false) => "self-collision, non-adjacent pairs, first hit",
        (false, true) => "robot pair, all pairs",
        (false, false) => "robot pair, first hit",
    };
    writeln!(out, "mode: {mode}")?;
    for p in &report.pairs {
        writeln!(
            out,
            "{}[{}] x {}[{}]  squared {}  threshold {}  {}",
            p.robot_i,
            p.i,
            p.robot_j,
            p.j,
            fmt_sig(p.squared_distance),
            fmt_sig(p.threshold),
            if p.colliding { "COLLIDING" } else { "clear" }
        )?;
    }
    let hits = report.pairs.iter().filter(|p| p.colliding).count();
    if report.verdict {
        writeln!(out, "verdict: collision ({hits} colliding of {} reported pairs)", report.pairs.len())
    } else {
        writeln!(out, "verdict: no collision ({} pairs clear)", report.pairs.len())
    }
}

#[derive(Serialize)]
struct DistEntry {
    i: usize,
    j: usize,
    squared_distance: f64,
    distance: f64,
}

#[derive(Serialize)]
struct DistMatrix<'a> {
    robot_a: &'a str,
    robot_b: &'a str,
    entries: Vec<DistEntry>,
}

#[derive(Serialize)]
struct DistJson<'a> {
    scene: String,
    matrices: Vec<DistMatrix<'a>>,
}

fn matrix<'a>(a: &'a RobotModel, b: &'a RobotModel) -> DistMatrix<'a> {
    let mut entries = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.components().iter().enumerate() {
        for (j, y) in b.components().iter().enumerate() {
            let d = components_collide(x, y).squared_distance;
            entries.push(DistEntry {
                i,
                j,
                squared_distance: d.value(),
                distance: d.sqrt(),
            });
        }
    }
    DistMatrix {
        robot_a: a.name(),
        robot_b: b.name(),
        entries,
    }
}

/// One robot: its own matrix. Two or more: every robot pair in file order.
pub fn run_dist(args: &SceneArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let path = args.scene_path();
    let scene = load(&path)?;
    let robots = &scene.robots;
    let matrices = if robots.len() == 1 {
        vec![matrix(&robots[0], &robots[0])]
    } else {
        let mut m = Vec::new();
        for a in 0..robots.len() {
            for b in a + 1..robots.len() {
                m.push(matrix(&robots[a], &robots[b]));
            }
        }
        m
    };
    let report = DistJson {
        scene: path.display().to_string(),
        matrices,
    };
    match args.format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        OutputFormat::Text => {
            writeln!(out, "scene: {}", report.scene)?;
            for m in &report.matrices {
                writeln!(out, "{} x {}", m.robot_a, m.robot_b)?;
                for e in &m.entries {
                    writeln!(
                        out,
                        "  [{}][{}]  squared {}  distance {}",
                        e.i,
                        e.j,
                        fmt_sig(e.squared_distance),
                        fmt_sig(e.distance)
                    )?;
                }
            }
        }
    }
    Ok(EXIT_CLEAR)
}

/// Six significant digits, `%g` style.
pub fn fmt_sig(x: f64) -> String {
    const SIG: i32 = 6;
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    // rounding can push e.g. 999999.5 to the next decade
    let rounded: f64 = format!("{:.*e}", (SIG - 1) as usize, x).parse().unwrap_or(x);
    let exp = if rounded.abs() >= 10f64.powi(exp + 1) { exp + 1 } else { exp };
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..SIG).contains(&exp) {
        trim(format!("{:.*}", (SIG - 1 - exp).max(0) as usize, x))
    } else {
        let s = format!("{:.*e}", (SIG - 1) as usize, x);
        let (mantissa, e) = s.split_once('e').expect("exponent");
        format!("{}e{}", trim(mantissa.to_string()), e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_formatting() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(14400.0), "14400");
        assert_eq!(fmt_sig(961.0), "961");
        assert_eq!(fmt_sig(97.5), "97.5");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333");
        assert_eq!(fmt_sig(123456789.0), "1.23457e8");
        assert_eq!(fmt_sig(999999.7), "1e6");
        assert_eq!(fmt_sig(1e-7), "1e-7");
        assert_eq!(fmt_sig(-2.5), "-2.5");
        assert_eq!(fmt_sig(60.0), "60");
    }

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["cga-collide"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["cga-collide", "check"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["cga-collide", "frobnicate"]).0, EXIT_INPUT);
        assert_eq!(
            run_args(&["cga-collide", "check", "x.scene", "--format", "xml"]).0,
            EXIT_INPUT
        );
        let (code, out, _) = run_args(&["cga-collide", "--help"]);
        assert_eq!(code, EXIT_CLEAR);
        assert!(out.contains("selftest"));
    }

    #[test]
    fn missing_file_exit_2() {
        let (code, _, err) = run_args(&["cga-collide", "check", "/nonexistent/missing.scene"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("cannot read"));
    }

    #[test]
    fn selftest_runs() {
        let (code, out, _) = run_args(&["cga-collide", "selftest"]);
        assert_eq!(code, EXIT_CLEAR);
        assert!(out.contains("Eq2-distance-identity"));
    }
}
