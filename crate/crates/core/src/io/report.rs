//! Line-oriented key/value reports with bracketed sections, plus JSON exports.

use std::fmt::Write;

use serde::Serialize;

use crate::bounds::{BoundReport, CompositeBounds};
use crate::geometry::{PipeSpec, PIPE_PROVENANCE};
use crate::io::fmt_real;
use crate::verify::{IsotopyCertificate, PairReport};
use crate::{Error, Result};

pub const CERTIFICATE_FORMAT_VERSION: u32 = 1;

struct Sections(String);

impl Sections {
    fn section(&mut self, name: &str) {
        if !self.0.is_empty() {
            self.0.push('\n');
        }
        let _ = writeln!(self.0, "[{name}]");
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.0, "{key} = {value}");
    }

    fn real(&mut self, key: &str, value: f64) {
        self.kv(key, fmt_real(value));
    }
}

fn pipe_section(out: &mut Sections, pipe: &PipeSpec<f64>) {
    out.section("pipe");
    out.real("r", pipe.r);
    out.real("kappa_max", pipe.kappa_max);
    out.real("kappa_sampled", pipe.kappa_sampled);
    out.real("kappa_argmax_t", pipe.kappa_argmax_t);
    out.real("inverse_kappa", 1.0 / pipe.kappa_max);
    out.real("d_min", pipe.d_min);
    out.real("r_end", pipe.r_end);
    out.real("radius_scale", pipe.radius_scale);
    out.kv("user_radius", pipe.user_radius);
    out.kv("provenance", PIPE_PROVENANCE);
}

fn segment_bounds(out: &mut Sections, k: usize, b: &BoundReport<f64>) {
    out.section(&format!("bounds.segment.{k}"));
    out.kv("degree", b.inputs.n);
    out.real("n_inf_hodograph", b.inputs.n_inf_hodo);
    out.real("n_inf_curve", b.inputs.n_inf_curve);
    out.real("d2p_hodograph", b.inputs.d2p_prime);
    out.real("d2p_curve", b.inputs.d2p);
    out.real("sigma", b.inputs.sigma);
    out.real("m_const", b.inputs.m_const);
    out.real("n1", b.n1);
    out.real("nu", b.nu);
    out.kv("n_of_nu", b.n_of_nu);
    match b.derivative_branch {
        Some(d) => out.kv("derivative_branch", d),
        None => out.kv("derivative_branch", "none"),
    }
    out.kv("n_condition2", b.n_condition2);
    out.kv("n_prime", b.n_prime);
    out.kv("n_star", b.n_star);
    out.kv("old_bound", b.old_bound);
}

fn bounds_sections(out: &mut Sections, bounds: &CompositeBounds<f64>) {
    out.section("bounds");
    out.kv("n_star", bounds.n_star);
    out.kv("old_bound", bounds.old_bound);
    out.kv("segments", bounds.segments.len());
    if let Some(b) = bounds.segments.first() {
        out.real("radius", b.r);
    }
    for (k, b) in bounds.segments.iter().enumerate() {
        segment_bounds(out, k, b);
    }
}

fn pass(flag: bool) -> &'static str {
    if flag {
        "PASS"
    } else {
        "FAIL"
    }
}

fn pair_line(p: &PairReport) -> String {
    let c = &p.conditions;
    let discs = match &p.uniqueness {
        None => "skipped".to_string(),
        Some(u) if u.degenerate.is_some() => "degenerate".to_string(),
        Some(u) => format!("{}/{}", u.grid_size - u.violations.len(), u.grid_size),
    };
    format!(
        "segment {} interval [{}, {}] | c1 {} clearance {} | c2 {} value {} margin {} | discs {} | monotone {} | displacement {}",
        p.segment,
        fmt_real(c.sub_interval.0),
        fmt_real(c.sub_interval.1),
        pass(c.condition1.passed),
        fmt_real(c.condition1.clearance),
        pass(c.condition2.passed),
        fmt_real(c.condition2.value),
        fmt_real(c.condition2.margin),
        discs,
        p.monotone.map_or("n/a", |m| if m { "yes" } else { "no" }),
        p.max_displacement.map_or("n/a".to_string(), fmt_real),
    )
}

/// The certificate as text; identical inputs give identical bytes.
pub fn write_certificate_text(cert: &IsotopyCertificate) -> String {
    let mut out = Sections(String::new());
    out.section("certificate");
    out.kv("format", CERTIFICATE_FORMAT_VERSION);
    out.kv("tool_version", &cert.tool_version);
    out.kv("verdict", cert.verdict.as_str());
    match cert.iterations {
        Some(i) => out.kv("iterations", i),
        None => out.kv("iterations", "external"),
    }
    out.real("radius", cert.radius);
    if let Some(pipe) = &cert.pipe {
        pipe_section(&mut out, pipe);
    }
    if let Some(bounds) = &cert.bounds {
        bounds_sections(&mut out, bounds);
    }
    out.section("verification");
    out.kv("grid_size", cert.config.grid_size);
    out.kv("edge_samples", cert.config.edge_samples);
    out.kv("coarse_samples", cert.config.coarse_samples);
    out.kv("curve_samples", cert.config.curve_samples);
    out.real("tol_orth_relative", cert.tolerances.tol_orth_relative);
    out.real("tol_margin", cert.tolerances.tol_margin);
    let s = &cert.summary;
    out.section("summary");
    out.kv("pairs", s.pairs);
    out.kv("passed_pairs", s.passed_pairs);
    out.real("min_clearance", s.min_clearance);
    out.real("min_condition2_margin", s.min_condition2_margin);
    out.real("max_condition2_value", s.max_condition2_value);
    out.real("max_displacement", s.max_displacement);
    out.kv("disc_violations", s.disc_violations);
    out.section("pairs");
    for p in &cert.pairs {
        out.kv(&format!("pair.{}", p.index), pair_line(p));
    }
    out.section("notes");
    for (k, n) in cert.notes.iter().enumerate() {
        out.kv(&format!("note.{k}"), n);
    }
    out.0
}

/// Pipe radius report for `analyze`.
pub fn write_pipe_text(pipe: &PipeSpec<f64>) -> String {
    let mut out = Sections(String::new());
    pipe_section(&mut out, pipe);
    out.0
}

/// Iteration bound report for `bound`.
pub fn write_bounds_text(bounds: &CompositeBounds<f64>) -> String {
    let mut out = Sections(String::new());
    bounds_sections(&mut out, bounds);
    out.0
}

/// Pretty-printed JSON of any report.
pub fn to_json<S: Serialize>(value: &S) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))
}
