//! Static SVG drawings of matchings and double dimer configurations.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::honeycomb::{HexEdge, Matching};
use crate::squish::DoubleDimer;

const SCALE: f64 = 18.0;
const PAD: f64 = 12.0;
const GAP: f64 = 2.5;

/// What to draw.
#[derive(Clone, Copy, Debug)]
pub enum Drawing<'a> {
    Matching(&'a Matching),
    DoubleDimer(&'a DoubleDimer),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Stroke {
    Single,
    Double,
    Loop,
}

fn strokes(drawing: Drawing<'_>) -> Vec<(HexEdge, Stroke)> {
    match drawing {
        Drawing::Matching(m) => m.edges().iter().map(|e| (*e, Stroke::Single)).collect(),
        Drawing::DoubleDimer(dd) => {
            dd.multiplicities().iter().map(|(e, &m)| (*e, if m == 2 { Stroke::Double } else { Stroke::Loop })).collect()
        }
    }
}

fn endpoints(e: &HexEdge) -> [(f64, f64); 2] {
    e.vertices().map(|v| {
        let (x, y) = v.draw3();
        (x as f64 * SCALE / 3.0, -(y as f64) * SCALE / (3.0 * 3f64.sqrt()))
    })
}

/// The drawing as an SVG 1.1 document. Output depends only on the input.
pub fn render_svg(drawing: Drawing<'_>) -> String {
    let lines: Vec<([(f64, f64); 2], Stroke)> = strokes(drawing).iter().map(|(e, s)| (endpoints(e), *s)).collect();
    let xs = lines.iter().flat_map(|(p, _)| p.iter().map(|q| q.0));
    let ys = lines.iter().flat_map(|(p, _)| p.iter().map(|q| q.1));
    let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    let (y0, y1) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
    let (x0, y0, x1, y1) = if lines.is_empty() { (0.0, 0.0, 0.0, 0.0) } else { (x0, y0, x1, y1) };
    let (w, h) = (x1 - x0 + 2.0 * PAD, y1 - y0 + 2.0 * PAD);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2}" height="{h:.2}" viewBox="{:.2} {:.2} {w:.2} {h:.2}">"#,
        x0 - PAD,
        y0 - PAD
    );
    let _ = writeln!(
        out,
        "<style>line{{stroke-linecap:round}} .single{{stroke:#222;stroke-width:2.5}} \
         .double{{stroke:#555;stroke-width:1.2}} .loop{{stroke:#c0392b;stroke-width:3}}</style>"
    );
    for ([(ax, ay), (bx, by)], stroke) in lines {
        let mut put = |class: &str, dx: f64, dy: f64| {
            let _ = writeln!(
                out,
                r#"<line class="{class}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                ax + dx,
                ay + dy,
                bx + dx,
                by + dy
            );
        };
        match stroke {
            Stroke::Single => put("single", 0.0, 0.0),
            Stroke::Loop => put("loop", 0.0, 0.0),
            Stroke::Double => {
                let len = ((bx - ax).powi(2) + (by - ay).powi(2)).sqrt();
                let (nx, ny) = (-(by - ay) / len * GAP, (bx - ax) / len * GAP);
                put("double", nx, ny);
                put("double", -nx, -ny);
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_svg(drawing: Drawing<'_>, path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(drawing))
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::honeycomb::{matching_of, HexCoord};
    use crate::planepart::{BoxShape, PlanePartition};
    use crate::squish::{overlay, Loop};

    fn count(svg: &str, class: &str) -> usize {
        svg.matches(&format!(r#"class="{class}""#)).count()
    }

    #[test]
    fn hexagon_loop_has_six_loop_strokes() {
        let l = Loop::around_hexagon(HexCoord::new(0, 0));
        let dd = DoubleDimer::from_parts(&[], &[l]).unwrap();
        let svg = render_svg(Drawing::DoubleDimer(&dd));
        assert_eq!(count(&svg, "loop"), 6);
        assert_eq!(count(&svg, "double"), 0);
    }

    #[test]
    fn empty_configuration_is_all_doubled() {
        let shape = BoxShape::new(2, 2, 2);
        let m = matching_of(&PlanePartition::empty(), shape).unwrap();
        let dd = overlay(&m, &m).unwrap();
        let svg = render_svg(Drawing::DoubleDimer(&dd));
        assert_eq!(count(&svg, "double"), 2 * m.len());
        assert_eq!(count(&svg, "loop"), 0);
        assert_eq!(svg, render_svg(Drawing::DoubleDimer(&dd)));
    }

    #[test]
    fn matching_strokes() {
        let shape = BoxShape::new(1, 2, 3);
        let m = matching_of(&PlanePartition::from_rows(&[vec![2, 1]]).unwrap(), shape).unwrap();
        let svg = render_svg(Drawing::Matching(&m));
        assert_eq!(count(&svg, "single"), m.len());
        assert!(svg.starts_with("<?xml"));
    }

    #[test]
    fn unwritable_path() {
        let m = Matching::new(Vec::new()).unwrap();
        let err = write_svg(Drawing::Matching(&m), Path::new("/nonexistent/dir/x.svg")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }
}
