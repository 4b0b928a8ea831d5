//! Command-line front end. Reports are JSON on stdout unless `--pretty`.
//!
//! Exit status: 0 when every verdict passes, 1 when a check fails, 2 on
//! input or usage errors.

mod report;
mod sweep;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::families::{build_family, FamilySpec};
use crate::lattice_core::{LatticePoint, LatticePolytope, MAX_COORD};
use crate::polygon_tools::{find_basic_diamond, BasicDiamond};
use crate::toric_ideal::OracleLimits;

pub use report::{
    digest, run_check, run_koelman, CertificateVerdict, CheckReport, KoelmanReport, QuadricList,
};
pub use sweep::{
    case1_instances, case2_instances, case3_instances, diamond_verifies, sweep_family,
    sweep_polygons, Instance, SweepReport, SweepRow,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "quadrigen",
    version,
    about = "Quadratic generation checks for smooth toric 3-folds"
)]
pub struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Reject input coordinates above this magnitude; bounds polygon sweeps.
    #[arg(long, global = true, value_name = "N")]
    pub max_coord: Option<i64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full pipeline on a 3-D polytope.
    Check {
        /// Polytope JSON, `-` for stdin.
        input: PathBuf,
        /// Also run the fiber-graph oracle through degree D.
        #[arg(long, value_name = "D", num_args = 0..=1, default_missing_value = "3")]
        oracle: Option<usize>,
    },
    /// Build a family member from a spec.
    Gen {
        /// FamilySpec JSON, `-` for stdin.
        spec: PathBuf,
    },
    /// Koelman verdict for a lattice polygon.
    Koelman {
        /// Polygon JSON, `-` for stdin.
        input: PathBuf,
        /// Also run the fiber-graph oracle through degree D.
        #[arg(long, value_name = "D", num_args = 0..=1, default_missing_value = "3")]
        oracle: Option<usize>,
    },
    /// Basic diamonds at the vertices of a nonsingular polygon.
    Diamond {
        /// Polygon JSON, `-` for stdin.
        input: PathBuf,
        /// Only this vertex, as `x,y`.
        #[arg(long, value_parser = parse_vertex)]
        vertex: Option<LatticePoint>,
    },
    /// Run a whole family through the pipeline.
    Sweep {
        #[arg(value_enum)]
        family: SweepFamily,
        /// Vertical edge bound for case2.
        #[arg(long, default_value_t = 3)]
        max_edge: i64,
        /// Vertex bound for case3 polygons; edge bound for random polygons.
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Include 2Q and Q + F0 for case3 instances with few points.
        #[arg(long)]
        minkowski: bool,
        /// Number of random polygons.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Seed for random polygons.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Oracle degree bound for each instance.
        #[arg(long, value_name = "D", num_args = 0..=1, default_missing_value = "3")]
        oracle: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepFamily {
    Case1,
    Case2,
    Case3,
    Polygons,
}

fn parse_vertex(s: &str) -> Result<LatticePoint, String> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|e| format!("{c:?}: {e}")))
        .collect::<Result<_, _>>()?;
    LatticePoint::from_slice(&coords).map_err(|e| e.to_string())
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::usage(e)
    }
}

fn read_input(path: &PathBuf) -> Result<Vec<u8>, Failure> {
    let mut bytes = Vec::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_end(&mut bytes)
            .map_err(|e| Failure::usage(format!("stdin: {e}")))?;
    } else {
        bytes =
            std::fs::read(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    Ok(bytes)
}

fn read_polytope(path: &PathBuf, max_coord: i64) -> Result<(LatticePolytope, String), Failure> {
    let bytes = read_input(path)?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| Failure::usage(format!("input is not UTF-8: {e}")))?;
    let p = LatticePolytope::from_json(text)
        .map_err(|e| Failure::usage(format!("malformed polytope: {e}")))?;
    for v in p.vertices() {
        v.check_bound(max_coord)?;
    }
    Ok((p, digest(&bytes)))
}

fn emit<T: Serialize>(value: &T, pretty: Option<String>) {
    match pretty {
        Some(text) => print!("{text}"),
        None => println!(
            "{}",
            serde_json::to_string(value).expect("report serializes")
        ),
    }
}

#[derive(Serialize)]
struct DiamondRow {
    vertex: LatticePoint,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    diamond: Option<BasicDiamond>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct DiamondReport {
    command: &'static str,
    input_digest: String,
    diamonds: Vec<DiamondRow>,
    exit_status: i32,
}

fn run(cli: Cli) -> Result<i32, Failure> {
    let max_coord = cli.max_coord.unwrap_or(MAX_COORD);
    if !(1..=MAX_COORD).contains(&max_coord) {
        return Err(Failure::usage(format!(
            "--max-coord must lie in 1..={MAX_COORD}"
        )));
    }
    let limits = OracleLimits::from_env();
    let pretty = cli.pretty;
    match cli.command {
        Command::Check { input, oracle } => {
            let (p, digest) = read_polytope(&input, max_coord)?;
            if p.dim() != 3 {
                return Err(Failure::usage(format!(
                    "check needs a 3-dimensional polytope, got dimension {}",
                    p.dim()
                )));
            }
            let report = run_check(&p, digest, oracle, limits)?;
            emit(&report, pretty.then(|| report.pretty()));
            Ok(report.exit_status)
        }
        Command::Gen { spec } => {
            let bytes = read_input(&spec)?;
            let text = std::str::from_utf8(&bytes)
                .map_err(|e| Failure::usage(format!("spec is not UTF-8: {e}")))?;
            let spec = FamilySpec::from_json(text)
                .map_err(|e| Failure::usage(format!("malformed spec: {e}")))?;
            let q = build_family(&spec)?;
            let text = q
                .vertices()
                .iter()
                .map(|v| format!("{v}\n"))
                .collect::<String>();
            emit(&q, pretty.then_some(text));
            Ok(EXIT_PASS)
        }
        Command::Koelman { input, oracle } => {
            let (f, digest) = read_polytope(&input, max_coord)?;
            if f.dim() != 2 {
                return Err(Failure::usage(format!(
                    "koelman needs a polygon, got dimension {}",
                    f.dim()
                )));
            }
            let report = run_koelman(&f, digest, oracle, limits)?;
            emit(&report, pretty.then(|| report.pretty()));
            Ok(report.exit_status)
        }
        Command::Diamond { input, vertex } => {
            let (f, digest) = read_polytope(&input, max_coord)?;
            if f.dim() != 2 {
                return Err(Failure::usage(format!(
                    "diamond needs a polygon, got dimension {}",
                    f.dim()
                )));
            }
            let vertices = match vertex {
                Some(v) if f.vertex_index(&v).is_none() => return Err(Error::NotAVertex(v).into()),
                Some(v) => vec![v],
                None => f.vertices().to_vec(),
            };
            let diamonds: Vec<DiamondRow> = vertices
                .iter()
                .map(|v| match find_basic_diamond(&f, v) {
                    Ok(d) => DiamondRow {
                        vertex: *v,
                        passed: diamond_verifies(&f, &d),
                        diamond: Some(d),
                        error: None,
                    },
                    Err(e) => DiamondRow {
                        vertex: *v,
                        passed: false,
                        diamond: None,
                        error: Some(e.to_string()),
                    },
                })
                .collect();
            let exit_status = if diamonds.iter().all(|d| d.passed) {
                EXIT_PASS
            } else {
                EXIT_FAIL
            };
            let report = DiamondReport {
                command: "diamond",
                input_digest: digest,
                diamonds,
                exit_status,
            };
            let text = report
                .diamonds
                .iter()
                .map(|d| match (&d.diamond, &d.error) {
                    (Some(s), _) => {
                        let c: Vec<String> = s.corners.iter().map(|c| c.to_string()).collect();
                        format!(
                            "{}  {}  {}\n",
                            d.vertex,
                            if d.passed { "ok" } else { "FAIL" },
                            c.join(" ")
                        )
                    }
                    (None, e) => format!("{}  FAIL  {}\n", d.vertex, e.as_deref().unwrap_or("")),
                })
                .collect::<String>();
            emit(&report, pretty.then_some(text));
            Ok(exit_status)
        }
        Command::Sweep {
            family,
            max_edge,
            max_vertices,
            minkowski,
            count,
            seed,
            oracle,
        } => {
            let report = match family {
                SweepFamily::Case1 => sweep_family("case1", &case1_instances()?, oracle, limits),
                SweepFamily::Case2 => {
                    sweep_family("case2", &case2_instances(max_edge)?, oracle, limits)
                }
                SweepFamily::Case3 => {
                    let coord = cli.max_coord.unwrap_or(4);
                    let instances =
                        case3_instances(coord, max_vertices.unwrap_or(5), minkowski, 40)?;
                    sweep_family("case3", &instances, oracle, limits)
                }
                SweepFamily::Polygons => sweep_polygons(
                    seed,
                    count,
                    max_vertices.unwrap_or(8),
                    cli.max_coord.unwrap_or(8),
                )?,
            };
            emit(&report, pretty.then(|| report.pretty()));
            Ok(report.exit_status)
        }
    }
}

/// Parses the process arguments and runs; returns the exit status.
pub fn main() -> i32 {
    main_from(std::env::args_os())
}

pub fn main_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
