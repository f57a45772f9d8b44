//! `barrow` command line: classify points, evaluate inequalities, fuzz,
//! scan grids and search for tight points.
//!
//! Exit codes: 0 success, 1 fuzz violations, 2 usage error, 3 domain,
//! degenerate-triangle or I/O error.

pub mod csv_out;
pub mod json;
pub mod parse;
pub mod svg;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use barrow_core::harness::{
    fuzz, fuzz_with_workers, grid_scan, tightness_search, BBox, FuzzConfig, FuzzReport, RegionMix,
    SearchOptions,
};
use barrow_core::{
    barycentric, classic_reports, classify, dergiades_report, evaluate, lu_report, InequalityId,
    InequalityReport, Point2, Region, Term, Triangle, DEFAULT_EPS, DEFAULT_TOL_FACTOR,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "barrow", version, about = "Barrow / Erdős–Mordell type inequalities anywhere in a triangle's plane")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Sign threshold for barycentric coordinates.
    #[arg(long, global = true, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    /// Violation / tightness tolerance, relative to R_A + R_B + R_C.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL_FACTOR)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Emit JSON lines instead of CSV (scan); other commands always emit JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Region and barycentric coordinates of a point.
    Classify {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::triangle)]
        triangle: [[f64; 2]; 3],
        #[arg(long, allow_hyphen_values = true, value_parser = parse::point)]
        point: [f64; 2],
    },
    /// Inequality report at a point.
    Eval {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::triangle)]
        triangle: [[f64; 2]; 3],
        #[arg(long, allow_hyphen_values = true, value_parser = parse::point)]
        point: [f64; 2],
        /// signed-barrow (dispatch on the region), barrow, erdos-mordell,
        /// dergiades or lu.
        #[arg(long, default_value = "signed-barrow", value_parser = parse::inequality)]
        inequality: InequalityId,
    },
    /// Seeded fuzzing over random triangles and stratified points.
    Fuzz {
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        /// Worker threads; 0 uses every core. The report does not depend on it.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// random, near-degenerate, equilateral-perturbed or mixed.
        #[arg(long, default_value = "mixed")]
        shape: String,
        /// Vertex jitter for equilateral-perturbed, relative to the circumradius.
        #[arg(long, default_value_t = 0.1)]
        perturbation: f64,
        /// Stratum weights, e.g. "lambda0=0.5,mu4=0.5"; default uniform.
        #[arg(long, value_parser = parse::region_mix)]
        mix: Option<RegionMix>,
    },
    /// Region and slack at every cell center of a grid.
    Scan {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::triangle)]
        triangle: [[f64; 2]; 3],
        /// "x0,y0,x1,y1"; default: triangle bounds grown by half the diameter.
        #[arg(long, allow_hyphen_values = true, value_parser = parse::bbox)]
        bbox: Option<[f64; 4]>,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 512)]
        svg_width: u32,
        /// Overlay a slack heatmap on the SVG.
        #[arg(long)]
        heatmap: bool,
    },
    /// Multi-start search for the smallest slack.
    Tighten {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::triangle)]
        triangle: [[f64; 2]; 3],
        #[arg(long, default_value = "barrow", value_parser = parse::inequality)]
        inequality: InequalityId,
        #[arg(long, default_value_t = 16)]
        starts: usize,
        /// Comma-separated regions to draw starts from.
        #[arg(long, value_delimiter = ',', value_parser = parse::region)]
        regions: Option<Vec<Region>>,
    },
}

#[derive(Debug)]
pub enum Failure {
    Domain(String),
    Io(io::Error),
}

impl From<barrow_core::GeomError> for Failure {
    fn from(e: barrow_core::GeomError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

#[derive(Serialize)]
struct ClassifyOut {
    region: Region,
    bary: [f64; 3],
}

#[derive(Serialize)]
struct EvalOut<'a> {
    inequality: InequalityId,
    region: Region,
    lhs: f64,
    rhs: f64,
    slack: f64,
    tight: bool,
    terms: &'a [Term],
}

impl<'a> EvalOut<'a> {
    fn new(r: &'a InequalityReport, tol: f64) -> Self {
        Self {
            inequality: r.inequality,
            region: r.region,
            lhs: r.lhs,
            rhs: r.rhs,
            slack: r.slack,
            tight: r.is_tight(tol),
            terms: &r.terms,
        }
    }
}

fn triangle(coords: [[f64; 2]; 3]) -> Result<Triangle, Failure> {
    Ok(Triangle::from_coords(coords)?)
}

/// Runs a parsed invocation and returns the exit code.
pub fn run<W: Write>(cli: Cli, out: &mut W) -> Result<i32, Failure> {
    let c = &cli.common;
    match cli.command {
        Command::Classify { triangle: tc, point } => {
            let t = triangle(tc)?;
            let m = Point2::from(point);
            let region = classify(&t, m, c.eps)?;
            let bary = barycentric(&t, m).as_array();
            writeln!(out, "{}", json::to_string(&ClassifyOut { region, bary }))?;
        }
        Command::Eval {
            triangle: tc,
            point,
            inequality,
        } => {
            let t = triangle(tc)?;
            let m = Point2::from(point);
            let report = match inequality {
                InequalityId::SignedBarrow30 => evaluate(&t, m, c.eps)?,
                InequalityId::Barrow1 => classic_reports(&t, m, c.eps)?.0,
                InequalityId::ErdosMordell2 => classic_reports(&t, m, c.eps)?.1,
                InequalityId::Dergiades3 => dergiades_report(&t, m, c.eps)?,
                InequalityId::LuWeighted13 => lu_report(&t, m, c.eps)?,
                other => {
                    return Err(Failure::Domain(format!(
                        "{other} is chosen automatically at a vertex; use signed-barrow"
                    )))
                }
            };
            writeln!(out, "{}", json::to_string(&EvalOut::new(&report, c.tol)))?;
        }
        Command::Fuzz {
            n,
            workers,
            shape,
            perturbation,
            mix,
        } => {
            let config = FuzzConfig {
                n,
                seed: c.seed,
                tol_factor: c.tol,
                eps: c.eps,
                region_mix: mix.unwrap_or_default(),
                triangle_shape: parse::shape(&shape, perturbation).map_err(Failure::Domain)?,
            };
            let report = if workers == 0 {
                fuzz(&config)?
            } else {
                fuzz_with_workers(&config, workers)?
            };
            writeln!(out, "{}", json::to_string(&report))?;
            return Ok(fuzz_exit_code(&report));
        }
        Command::Scan {
            triangle: tc,
            bbox,
            resolution,
            out: csv_path,
            svg: svg_path,
            svg_width,
            heatmap,
        } => {
            let t = triangle(tc)?;
            let bbox = match bbox {
                Some([x0, y0, x1, y1]) => BBox::new(x0, y0, x1, y1)?,
                None => BBox::around(&t, 0.5),
            };
            let grid = grid_scan(&t, bbox, resolution, c.eps)?;
            match csv_path {
                Some(p) => emit_rows(&grid.rows, c.json, BufWriter::new(File::create(p)?))?,
                None => emit_rows(&grid.rows, c.json, &mut *out)?,
            }
            if let Some(p) = svg_path {
                let opts = svg::SvgOptions {
                    width: svg_width,
                    heatmap,
                };
                std::fs::write(p, svg::render(&t, &grid, opts))?;
            }
        }
        Command::Tighten {
            triangle: tc,
            inequality,
            starts,
            regions,
        } => {
            let t = triangle(tc)?;
            let opts = SearchOptions {
                starts,
                seed: c.seed,
                start_regions: regions,
                eps: c.eps,
                ..SearchOptions::default()
            };
            let res = tightness_search(&t, inequality, &opts)?;
            writeln!(out, "{}", json::to_string(&res))?;
        }
    }
    Ok(EXIT_OK)
}

/// 0 when every sample passed, 1 on any violation or failed sample.
pub fn fuzz_exit_code(report: &FuzzReport) -> i32 {
    if report.passed {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    }
}

fn emit_rows<W: Write>(rows: &[barrow_core::harness::ScanRow], as_json: bool, mut w: W) -> Result<(), Failure> {
    if as_json {
        for r in rows {
            writeln!(w, "{}", json::to_string(r))?;
        }
        w.flush()?;
    } else {
        csv_out::write_rows(w, rows)?;
    }
    Ok(())
}

/// Parses `args`, runs, and reports errors on `err`. Returns the exit code.
pub fn main_with<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let code = match run(cli, out) {
        Ok(code) => code,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    };
    let _ = out.flush();
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with(
            std::iter::once("barrow").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn classify_outside_a() {
        let (code, out, _) = call(&["classify", "--triangle", "0,0;1,0;0,1", "--point", "2,2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "{\"region\":\"mu1\",\"bary\":[-3,2,2]}\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["classify", "--triangle", "0,0;1,0;0,1"]).0, EXIT_USAGE);
        assert_eq!(call(&["classify", "--triangle", "0,0;1,0", "--point", "1,1"]).0, EXIT_USAGE);
        assert_eq!(call(&["eval", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["fuzz", "--shape", "round", "--n", "1"]).0, EXIT_DOMAIN);
    }

    #[test]
    fn fuzz_defaults_apply() {
        let cli = Cli::try_parse_from(["barrow", "fuzz", "--n", "1000", "--seed", "7"]).unwrap();
        assert_eq!(cli.common.seed, 7);
        assert_eq!(cli.common.tol, DEFAULT_TOL_FACTOR);
        match cli.command {
            Command::Fuzz { n, workers, .. } => assert_eq!((n, workers), (1000, 0)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_coordinates() {
        let (code, out, _) = call(&["classify", "--triangle", "-1,-1;1,-1;0,1", "--point", "-5,-0.5"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with("{\"region\":\"mu"), "{out}");
    }

    #[test]
    fn degenerate_triangle_exits_3() {
        let (code, out, err) = call(&["classify", "--triangle", "0,0;1,0;2,0", "--point", "1,1"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(out.is_empty());
        assert!(err.contains("degenerate"), "{err}");
    }

    #[test]
    fn eval_circumcenter_is_tight() {
        let h = 3f64.sqrt() / 2.0;
        let tri = format!("0,1;{},{};{},{}", -h, -0.5, h, -0.5);
        let (code, out, _) = call(&["eval", "--triangle", &tri, "--point", "0,0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["slack"].as_f64().unwrap().abs() <= 1e-12, "{out}");
        assert_eq!(v["tight"], true);
        assert_eq!(v["region"], "lambda0");
    }

    #[test]
    fn eval_interior_only_outside_exits_3() {
        let (code, _, err) = call(&[
            "eval", "--triangle", "0,0;1,0;0,1", "--point", "2,2", "--inequality", "barrow",
        ]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(!err.is_empty());
    }

    #[test]
    fn fuzz_violations_exit_1() {
        let config = FuzzConfig {
            n: 50,
            ..FuzzConfig::default()
        };
        let mut report = fuzz(&config).unwrap();
        assert_eq!(fuzz_exit_code(&report), EXIT_OK);
        report.passed = false;
        report.violation_count = 1;
        assert_eq!(fuzz_exit_code(&report), EXIT_VIOLATIONS);
    }

    #[test]
    fn tighten_equilateral() {
        let h = 3f64.sqrt() / 2.0;
        let tri = format!("0,1;{},{};{},{}", -h, -0.5, h, -0.5);
        let (code, out, _) = call(&["tighten", "--triangle", &tri, "--starts", "8"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let p = v["point"].as_array().unwrap();
        let d = p[0].as_f64().unwrap().hypot(p[1].as_f64().unwrap());
        assert!(d < 1e-6 * 3f64.sqrt(), "{out}");
        assert!(v["slack"].as_f64().unwrap() <= 1e-9);
    }
}
