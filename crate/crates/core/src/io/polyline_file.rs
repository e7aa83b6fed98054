//! Polyline exchange: CSV (`x,y,z` header, one vertex per row) and OBJ (`v` rows plus one `l` element).

use crate::curve::Polyline;
use crate::io::fmt_real;
use crate::{Error, Point3, Result, Vec3};

pub fn write_polyline_csv(poly: &Polyline<f64>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "y", "z"]).map_err(|e| Error::Io(e.to_string()))?;
    for p in poly.vertices() {
        w.write_record([fmt_real(p.x), fmt_real(p.y), fmt_real(p.z)])
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn parse_coordinate(field: &str, line: usize, column: usize) -> Result<f64> {
    match field.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(Error::Syntax {
            line,
            column,
            message: format!("expected a finite real, found `{field}`"),
        }),
    }
}

/// Reads a CSV polyline; the `x,y,z` header is required.
pub fn read_polyline_csv(text: &str) -> Result<Polyline<f64>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| Error::Io(e.to_string()))?.clone();
    if header.iter().collect::<Vec<_>>() != ["x", "y", "z"] {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "expected header `x,y,z`".into(),
        });
    }
    let mut verts: Vec<Point3<f64>> = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| match e.position() {
            Some(pos) => Error::Syntax {
                line: pos.line() as usize,
                column: 1,
                message: e.to_string(),
            },
            None => Error::Io(e.to_string()),
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let mut col = 1;
        let mut xyz = [0.0; 3];
        for (k, field) in rec.iter().enumerate() {
            xyz[k] = parse_coordinate(field, line, col)?;
            col += field.len() + 1;
        }
        verts.push(Vec3::new(xyz[0], xyz[1], xyz[2]));
    }
    Polyline::new(verts)
}

pub fn write_polyline_obj(poly: &Polyline<f64>) -> String {
    let mut out = String::from("# knotcert polyline\n");
    for p in poly.vertices() {
        out.push_str(&format!("v {} {} {}\n", fmt_real(p.x), fmt_real(p.y), fmt_real(p.z)));
    }
    out.push('l');
    for k in 1..=poly.vertices().len() {
        out.push_str(&format!(" {k}"));
    }
    out.push('\n');
    out
}

/// Reads the vertices of an OBJ file in the order of its first `l` element (file order if none).
pub fn read_polyline_obj(text: &str) -> Result<Polyline<f64>> {
    let mut verts: Vec<Point3<f64>> = Vec::new();
    let mut order: Option<Vec<usize>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut it = body.split_whitespace();
        match it.next() {
            Some("v") => {
                let fields: Vec<&str> = it.collect();
                if fields.len() < 3 {
                    return Err(Error::Syntax {
                        line,
                        column: 1,
                        message: "vertex needs 3 coordinates".into(),
                    });
                }
                let col = |k: usize| body.find(fields[k]).map_or(1, |c| c + 1);
                verts.push(Vec3::new(
                    parse_coordinate(fields[0], line, col(0))?,
                    parse_coordinate(fields[1], line, col(1))?,
                    parse_coordinate(fields[2], line, col(2))?,
                ));
            }
            Some("l") if order.is_none() => {
                let ids = it
                    .map(|s| {
                        s.split('/')
                            .next()
                            .and_then(|v| v.parse::<usize>().ok())
                            .filter(|&v| v >= 1)
                            .ok_or_else(|| Error::Syntax {
                                line,
                                column: body.find(s).map_or(1, |c| c + 1),
                                message: format!("bad vertex index `{s}`"),
                            })
                    })
                    .collect::<Result<Vec<_>>>()?;
                order = Some(ids);
            }
            _ => {}
        }
    }
    let verts = match order {
        Some(ids) => ids
            .into_iter()
            .map(|i| {
                verts.get(i - 1).copied().ok_or_else(|| Error::Syntax {
                    line: 0,
                    column: 0,
                    message: format!("vertex index {i} out of range"),
                })
            })
            .collect::<Result<Vec<_>>>()?,
        None => verts,
    };
    Polyline::new(verts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly() -> Polyline<f64> {
        Polyline::new(vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0 / 3.0, 0.1, -2.5e-17),
            Vec3::new(2.0, 0.0, 1e10),
        ])
        .unwrap()
    }

    #[test]
    fn csv_round_trip() {
        let text = write_polyline_csv(&poly()).unwrap();
        assert!(text.starts_with("x,y,z\n"));
        assert_eq!(read_polyline_csv(&text).unwrap(), poly());
    }

    #[test]
    fn obj_round_trip() {
        let text = write_polyline_obj(&poly());
        assert!(text.contains("\nl 1 2 3\n"));
        assert_eq!(read_polyline_obj(&text).unwrap(), poly());
    }

    #[test]
    fn obj_line_order_is_used() {
        let text = "v 0 0 0\nv 2 0 0\nv 1 0 0\nl 1 3 2\n";
        let p = read_polyline_obj(text).unwrap();
        assert_eq!(p.vertices()[1], Vec3::new(1.0, 0.0, 0.0));
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(read_polyline_csv("a,b,c\n1,2,3\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(
            read_polyline_csv("x,y,z\n0,0,0\n1,oops,0\n"),
            Err(Error::Syntax { line: 3, column: 3, .. })
        ));
        assert!(read_polyline_csv("x,y,z\n0,0,0\n1,0\n").is_err());
        assert!(read_polyline_csv("x,y,z\n0,0,0\n").is_err());
        assert!(matches!(read_polyline_obj("v 0 0\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(read_polyline_obj("v 0 0 0\nv 1 0 0\nl 1 5\n").is_err());
    }
}
