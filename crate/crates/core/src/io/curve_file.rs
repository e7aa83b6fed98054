//! The curve document format.
//!
//! ```text
//! # comments run to end of line
//! knotcert-curve 1
//! radius 0.25          # optional, before the first segment
//! segment 2
//! 0 0 0
//! 1 1 0
//! 2 0 0
//! end
//! ```
//!
//! Each `segment <degree>` block lists `degree + 1` rows of three reals and closes with `end`.
//! Consecutive segments must share endpoints and tangent directions.

use crate::curve::{BezierSegment, CompositeBezier};
use crate::io::fmt_real;
use crate::{Error, Result, Vec3};

pub const CURVE_FORMAT_VERSION: u32 = 1;

/// A parsed curve document.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveDocument {
    pub curve: CompositeBezier<f64>,
    /// Pipe radius override stated in the file.
    pub radius: Option<f64>,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &body[s..i],
                    column: body[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &body[s..],
            column: body[..s].chars().count() + 1,
        });
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn real(tok: &Token<'_>, line: usize) -> Result<f64> {
    match tok.text.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(syntax(line, tok.column, format!("expected a finite real, found `{}`", tok.text))),
    }
}

struct Open {
    line: usize,
    degree: usize,
    rows: Vec<Vec3<f64>>,
}

/// Parses a curve document, reporting the first problem with its line and column.
pub fn parse_curve(text: &str) -> Result<CurveDocument> {
    let mut header = false;
    let mut radius = None;
    let mut open: Option<Open> = None;
    let mut segments: Vec<BezierSegment<f64>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokens(raw);
        let Some(first) = toks.first() else { continue };
        if !header {
            if first.text != "knotcert-curve" {
                return Err(syntax(line, first.column, "expected header `knotcert-curve 1`"));
            }
            match toks.get(1) {
                Some(v) if v.text == CURVE_FORMAT_VERSION.to_string() => {}
                Some(v) => return Err(syntax(line, v.column, format!("unsupported format version `{}`", v.text))),
                None => return Err(syntax(line, first.column + first.text.len(), "missing format version")),
            }
            if let Some(extra) = toks.get(2) {
                return Err(syntax(line, extra.column, "unexpected token after header"));
            }
            header = true;
            continue;
        }
        if let Some(seg) = open.as_mut() {
            if first.text == "end" {
                if let Some(extra) = toks.get(1) {
                    return Err(syntax(line, extra.column, "unexpected token after `end`"));
                }
                let seg = open.take().expect("open segment");
                let index = segments.len();
                if seg.rows.len() != seg.degree + 1 {
                    return Err(Error::Arity {
                        segment: index,
                        degree: seg.degree,
                        expected: seg.degree + 1,
                        found: seg.rows.len(),
                    });
                }
                segments.push(BezierSegment::new(seg.rows).map_err(|e| match e {
                    Error::Domain(m) => Error::Domain(format!("segment {index} (line {}): {m}", seg.line)),
                    other => other,
                })?);
                continue;
            }
            if toks.len() != 3 {
                let col = toks.get(3).map_or(first.column, |t| t.column);
                return Err(syntax(line, col, format!("expected 3 coordinates, found {} token(s)", toks.len())));
            }
            seg.rows
                .push(Vec3::new(real(&toks[0], line)?, real(&toks[1], line)?, real(&toks[2], line)?));
            continue;
        }
        match first.text {
            "radius" => {
                if !segments.is_empty() {
                    return Err(syntax(line, first.column, "`radius` must precede the segments"));
                }
                if radius.is_some() {
                    return Err(syntax(line, first.column, "duplicate `radius`"));
                }
                let tok = toks.get(1).ok_or_else(|| syntax(line, first.column, "missing radius value"))?;
                let r = real(tok, line)?;
                if r <= 0.0 {
                    return Err(syntax(line, tok.column, "radius must be positive"));
                }
                if let Some(extra) = toks.get(2) {
                    return Err(syntax(line, extra.column, "unexpected token after radius"));
                }
                radius = Some(r);
            }
            "segment" => {
                let tok = toks.get(1).ok_or_else(|| syntax(line, first.column, "missing segment degree"))?;
                let degree = tok
                    .text
                    .parse::<usize>()
                    .ok()
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| syntax(line, tok.column, format!("degree must be a positive integer, found `{}`", tok.text)))?;
                if let Some(extra) = toks.get(2) {
                    return Err(syntax(line, extra.column, "unexpected token after degree"));
                }
                open = Some(Open {
                    line,
                    degree,
                    rows: Vec::with_capacity(degree + 1),
                });
            }
            other => return Err(syntax(line, first.column, format!("unexpected `{other}`"))),
        }
    }
    if !header {
        return Err(syntax(last_line.max(1), 1, "empty document"));
    }
    if let Some(seg) = open {
        return Err(syntax(seg.line, 1, "segment is missing `end`"));
    }
    if segments.is_empty() {
        return Err(syntax(last_line, 1, "no segments"));
    }
    Ok(CurveDocument {
        curve: CompositeBezier::new(segments)?,
        radius,
    })
}

/// Serialises a curve with 17 significant digits, so parsing it back is exact.
pub fn write_curve(curve: &CompositeBezier<f64>, radius: Option<f64>) -> String {
    let mut out = format!("knotcert-curve {CURVE_FORMAT_VERSION}\n");
    if let Some(r) = radius {
        out.push_str(&format!("radius {}\n", fmt_real(r)));
    }
    for seg in curve.segments() {
        out.push_str(&format!("segment {}\n", seg.degree()));
        for p in seg.control_points() {
            out.push_str(&format!("{} {} {}\n", fmt_real(p.x), fmt_real(p.y), fmt_real(p.z)));
        }
        out.push_str("end\n");
    }
    out
}
