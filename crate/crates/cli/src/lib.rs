//! The `knotcert` command line: analyse a curve, compute subdivision bounds, build and
//! verify certified polygonal approximations, and export isotopy frames.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use knotcert_core::bounds::composite_bounds;
use knotcert_core::curve::{CompositeBezier, Polyline, DEFAULT_COARSE_SAMPLES};
use knotcert_core::io::{
    parse_curve, read_polyline_csv, read_polyline_obj, to_json, write_bounds_text, write_certificate_text,
    write_pipe_text, write_polyline_csv, write_polyline_obj, CurveDocument,
};
use knotcert_core::isotopy::{build_fields, compose_isotopy, sample_frames, IsotopyField};
use knotcert_core::pipeline::{approximate, working_pipe, ApproximationOptions};
use knotcert_core::verify::{external_pairs, verify_pairs, IsotopyCertificate, Verdict, VerifyConfig};
use knotcert_core::{Error, Point3d, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "knotcert", version, about = "Certified piecewise-linear approximation of Bézier curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Pipe radius (overrides the computed radius and any radius in the curve file).
    #[arg(long)]
    pub radius: Option<f64>,
    /// Factor applied to the computed pipe radius.
    #[arg(long, default_value_t = 1.0)]
    pub radius_scale: f64,
    /// Parameters per sub-curve in the verification sweeps.
    #[arg(long, default_value_t = 257)]
    pub grid: usize,
    /// Output directory.
    #[arg(long, default_value = "knotcert-out")]
    pub out: PathBuf,
    /// Seed for the random probe points of `animate`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pipe radius ingredients: curvature, separation and end radius.
    Analyze {
        curve: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// A-priori subdivision counts.
    Bound {
        curve: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Subdivide, verify and write the polygon with its certificate.
    Approximate {
        curve: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Start from this many subdivisions instead of the computed bound.
        #[arg(long)]
        iterations: Option<u32>,
        /// Extra subdivisions allowed after failed verification.
        #[arg(long, default_value_t = 3)]
        retry_cap: u32,
    },
    /// Verify a supplied polyline (CSV or OBJ) against the curve.
    Verify {
        curve: PathBuf,
        polyline: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Export frames of the isotopy from the curve to its certified polygon.
    Animate {
        curve: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        iterations: Option<u32>,
        #[arg(long, default_value_t = 3)]
        retry_cap: u32,
        /// Number of frames, including both ends.
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// Curve samples per frame.
        #[arg(long, default_value_t = 257)]
        samples: usize,
    },
}

/// What a command printed and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// A command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap { .. } | Error::BoundInfeasible { .. } => EXIT_RESOURCE,
        Error::Inconsistency { .. }
        | Error::Ambiguity { .. }
        | Error::DisjointnessViolation { .. }
        | Error::DegenerateIncidence { .. }
        | Error::Invariant(_) => EXIT_FAIL,
        _ => EXIT_INPUT,
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

fn read_text(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_curve(path: &Path) -> std::result::Result<CurveDocument, Failure> {
    parse_curve(&read_text(path)?).map_err(|e| Failure {
        code: exit_code(&e),
        message: format!("{}: {e}", path.display()),
    })
}

fn load_polyline(path: &Path) -> std::result::Result<Polyline<f64>, Failure> {
    let text = read_text(path)?;
    let parsed = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("obj") => read_polyline_obj(&text),
        _ => read_polyline_csv(&text),
    };
    parsed.map_err(|e| Failure {
        code: exit_code(&e),
        message: format!("{}: {e}", path.display()),
    })
}

fn write_file(dir: &Path, name: &str, contents: &str) -> std::result::Result<(), Failure> {
    fs::create_dir_all(dir)
        .and_then(|_| fs::write(dir.join(name), contents))
        .map_err(|e| Failure {
            code: EXIT_INPUT,
            message: format!("{}: {e}", dir.join(name).display()),
        })
}

fn check_common(common: &Common) -> std::result::Result<(), Failure> {
    let bad = |m: String| Failure { code: EXIT_INPUT, message: m };
    if let Some(r) = common.radius {
        if !(r > 0.0 && r.is_finite()) {
            return Err(bad(format!("--radius must be finite and positive, got {r}")));
        }
    }
    if !(common.radius_scale > 0.0 && common.radius_scale.is_finite()) {
        return Err(bad(format!("--radius-scale must be finite and positive, got {}", common.radius_scale)));
    }
    if common.grid < 2 {
        return Err(bad(format!("--grid must be at least 2, got {}", common.grid)));
    }
    Ok(())
}

fn verify_config(common: &Common) -> VerifyConfig {
    VerifyConfig {
        grid_size: common.grid,
        ..VerifyConfig::default()
    }
}

fn radius_override(common: &Common, doc: &CurveDocument) -> Option<f64> {
    common.radius.or(doc.radius)
}

fn verdict_code(cert: &IsotopyCertificate) -> i32 {
    match cert.verdict {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
    }
}

fn write_certificate(dir: &Path, cert: &IsotopyCertificate) -> std::result::Result<(), Failure> {
    write_file(dir, "certificate.txt", &write_certificate_text(cert))?;
    write_file(dir, "certificate.json", &to_json(cert)?)
}

fn summary_line(cert: &IsotopyCertificate) -> String {
    let s = &cert.summary;
    format!(
        "verdict {} | pairs {}/{} | radius {:.6e} | min clearance {:.6e} | min condition-2 margin {:.6e}\n",
        cert.verdict.as_str(),
        s.passed_pairs,
        s.pairs,
        cert.radius,
        s.min_clearance,
        s.min_condition2_margin
    )
}

pub fn cmd_analyze(path: &Path, common: &Common) -> CmdResult {
    check_common(common)?;
    let doc = load_curve(path)?;
    let pipe = working_pipe(&doc.curve, radius_override(common, &doc), common.radius_scale)?.to_f64();
    let text = write_pipe_text(&pipe);
    write_file(&common.out, "analysis.txt", &text)?;
    write_file(&common.out, "analysis.json", &to_json(&pipe)?)?;
    Ok(Outcome {
        code: EXIT_PASS,
        stdout: text,
    })
}

pub fn cmd_bound(path: &Path, common: &Common) -> CmdResult {
    check_common(common)?;
    let doc = load_curve(path)?;
    let pipe = working_pipe(&doc.curve, radius_override(common, &doc), common.radius_scale)?;
    let bounds = composite_bounds(&doc.curve, pipe.finite_radius()?)?.to_f64();
    let text = write_bounds_text(&bounds);
    write_file(&common.out, "bounds.txt", &text)?;
    write_file(&common.out, "bounds.json", &to_json(&bounds)?)?;
    Ok(Outcome {
        code: EXIT_PASS,
        stdout: text,
    })
}

fn run_approximation(
    curve: &CompositeBezier<f64>,
    doc: &CurveDocument,
    common: &Common,
    iterations: Option<u32>,
    retry_cap: u32,
) -> std::result::Result<knotcert_core::pipeline::Approximation<f64>, Failure> {
    let options = ApproximationOptions {
        radius: radius_override(common, doc),
        radius_scale: common.radius_scale,
        iterations,
        retry_cap,
        verify: verify_config(common),
        ..ApproximationOptions::default()
    };
    Ok(approximate(curve, &options)?)
}

pub fn cmd_approximate(path: &Path, common: &Common, iterations: Option<u32>, retry_cap: u32) -> CmdResult {
    check_common(common)?;
    let doc = load_curve(path)?;
    let a = run_approximation(&doc.curve, &doc, common, iterations, retry_cap)?;
    let joined = a.result.joined_polyline()?;
    write_file(&common.out, "polyline.csv", &write_polyline_csv(&joined)?)?;
    write_file(&common.out, "polyline.obj", &write_polyline_obj(&joined))?;
    write_certificate(&common.out, &a.certificate)?;
    let stdout = format!(
        "n_star {} | old bound {} | iterations {} (retries {})\n{}",
        a.bounds.n_star,
        a.bounds.old_bound,
        a.result.iterations,
        a.retries,
        summary_line(&a.certificate)
    );
    Ok(Outcome {
        code: verdict_code(&a.certificate),
        stdout,
    })
}

pub fn cmd_verify(curve_path: &Path, poly_path: &Path, common: &Common) -> CmdResult {
    check_common(common)?;
    let doc = load_curve(curve_path)?;
    let poly = load_polyline(poly_path)?;
    let pipe = working_pipe(&doc.curve, radius_override(common, &doc), common.radius_scale)?;
    let pairing = external_pairs(&doc.curve, &poly)?;
    let mut cert = verify_pairs(&pairing.pairs, pipe.finite_radius()?, &verify_config(common))?;
    cert.iterations = pairing.iterations;
    cert.pipe = Some(pipe.to_f64());
    write_certificate(&common.out, &cert)?;
    Ok(Outcome {
        code: verdict_code(&cert),
        stdout: summary_line(&cert),
    })
}

/// Probe checks of the exported isotopy: identity at `s = 0` and points outside the pipe fixed.
fn probe_report(fields: &[IsotopyField<f64>], curve: &CompositeBezier<f64>, r: f64, seed: u64) -> Result<String, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = curve.segments().iter().flat_map(|s| s.control_points()).fold(Vec3::new(f64::MAX, f64::MAX, f64::MAX), |m, p| {
        Vec3::new(m.x.min(p.x), m.y.min(p.y), m.z.min(p.z))
    });
    let hi = curve.segments().iter().flat_map(|s| s.control_points()).fold(Vec3::new(f64::MIN, f64::MIN, f64::MIN), |m, p| {
        Vec3::new(m.x.max(p.x), m.y.max(p.y), m.z.max(p.z))
    });
    let pad = r;
    let mut moved_at_zero = 0usize;
    let mut moved_outside = 0usize;
    let mut outside = 0usize;
    let probes = 200;
    for _ in 0..probes {
        let p: Point3d = Vec3::new(
            rng.gen_range(lo.x - pad..=hi.x + pad),
            rng.gen_range(lo.y - pad..=hi.y + pad),
            rng.gen_range(lo.z - pad..=hi.z + pad),
        );
        if compose_isotopy(fields, p, 0.0)? != p {
            moved_at_zero += 1;
        }
        let far = fields.iter().all(|f| {
            let res = knotcert_core::curve::closest_parameter(f.segment(), p, DEFAULT_COARSE_SAMPLES);
            res.distance >= r
        });
        if far {
            outside += 1;
            for s in [0.5, 1.0] {
                if compose_isotopy(fields, p, s)? != p {
                    moved_outside += 1;
                }
            }
        }
    }
    Ok(format!(
        "[probes]\nseed = {seed}\nprobes = {probes}\nmoved_at_time_zero = {moved_at_zero}\noutside_pipe = {outside}\nmoved_outside_pipe = {moved_outside}\n"
    ))
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_animate(
    path: &Path,
    common: &Common,
    iterations: Option<u32>,
    retry_cap: u32,
    steps: usize,
    samples: usize,
) -> CmdResult {
    check_common(common)?;
    if steps < 2 || samples < 2 {
        return Err(Failure {
            code: EXIT_INPUT,
            message: "--steps and --samples must be at least 2".into(),
        });
    }
    let doc = load_curve(path)?;
    let a = run_approximation(&doc.curve, &doc, common, iterations, retry_cap)?;
    write_certificate(&common.out, &a.certificate)?;
    if a.certificate.verdict != Verdict::Pass {
        return Ok(Outcome {
            code: EXIT_FAIL,
            stdout: format!("no frames: verification failed\n{}", summary_line(&a.certificate)),
        });
    }
    let fields = build_fields(&a.result, &a.certificate, DEFAULT_COARSE_SAMPLES)?;
    let frames = sample_frames(&fields, steps, samples)?;
    let width = (steps - 1).to_string().len().max(3);
    for (k, frame) in frames.iter().enumerate() {
        write_file(&common.out, &format!("frame_{k:0width$}.csv"), &write_polyline_csv(frame)?)?;
        write_file(&common.out, &format!("frame_{k:0width$}.obj"), &write_polyline_obj(frame))?;
    }
    let probes = probe_report(&fields, &doc.curve, a.certificate.radius, common.seed)?;
    write_file(&common.out, "animation.txt", &probes)?;
    Ok(Outcome {
        code: EXIT_PASS,
        stdout: format!("{} frames written to {}\n{}", frames.len(), common.out.display(), summary_line(&a.certificate)),
    })
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Analyze { curve, common } => cmd_analyze(&curve, &common),
        Command::Bound { curve, common } => cmd_bound(&curve, &common),
        Command::Approximate {
            curve,
            common,
            iterations,
            retry_cap,
        } => cmd_approximate(&curve, &common, iterations, retry_cap),
        Command::Verify { curve, polyline, common } => cmd_verify(&curve, &polyline, &common),
        Command::Animate {
            curve,
            common,
            iterations,
            retry_cap,
            steps,
            samples,
        } => cmd_animate(&curve, &common, iterations, retry_cap, steps, samples),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(exit_code(&Error::Domain("x".into())), EXIT_INPUT);
        assert_eq!(exit_code(&Error::Regularity { t: 0.5 }), EXIT_INPUT);
        assert_eq!(exit_code(&Error::ResourceCap { requested: 10, cap: 1 }), EXIT_RESOURCE);
        assert_eq!(exit_code(&Error::BoundInfeasible { sigma: 1.0, b_prime_dist: 2.0 }), EXIT_RESOURCE);
        assert_eq!(exit_code(&Error::Inconsistency { t: 0.0, count: 2 }), EXIT_FAIL);
    }

    #[test]
    fn flags_parse_with_defaults() {
        let cli = Cli::try_parse_from(["knotcert", "approximate", "c.txt"]).unwrap();
        match cli.command {
            Command::Approximate {
                common,
                iterations,
                retry_cap,
                ..
            } => {
                assert_eq!(common.grid, 257);
                assert_eq!(common.radius_scale, 1.0);
                assert_eq!(iterations, None);
                assert_eq!(retry_cap, 3);
            }
            other => panic!("parsed {other:?}"),
        }
        assert!(Cli::try_parse_from(["knotcert", "bound"]).is_err());
    }
}
