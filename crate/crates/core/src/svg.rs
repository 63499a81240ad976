//! Standalone SVG 1.1 rendering of a point set with an optional path or polygon.

use std::fmt::Write;

use crate::geom::PointSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Overlay {
    Path(Vec<usize>),
    Polygon(Vec<usize>),
}

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;

pub fn render(s: &PointSet, overlay: Option<&Overlay>) -> String {
    let pts = s.points();
    let (mut x0, mut y0, mut x1, mut y1) = (0i64, 0i64, 1i64, 1i64);
    if let Some(first) = pts.first() {
        (x0, y0, x1, y1) = (first.x, first.y, first.x, first.y);
        for p in pts {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
    }
    let span = ((x1 - x0).max(y1 - y0).max(1)) as f64;
    let scale = (SIZE - 2.0 * MARGIN) / span;
    // Flip y so the picture has the usual mathematical orientation.
    let map = |i: usize| {
        let p = pts[i];
        (
            MARGIN + (p.x - x0) as f64 * scale,
            SIZE - MARGIN - (p.y - y0) as f64 * scale,
        )
    };

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    if let Some(ov) = overlay {
        let (tag, verts, fill) = match ov {
            Overlay::Path(v) => ("polyline", v, "none"),
            Overlay::Polygon(v) => ("polygon", v, "#dbe8f6"),
        };
        let coords: Vec<String> = verts
            .iter()
            .filter(|&&i| i < pts.len())
            .map(|&i| {
                let (x, y) = map(i);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            "<{tag} points=\"{}\" fill=\"{fill}\" stroke=\"#1f4e8c\" stroke-width=\"2\"/>",
            coords.join(" ")
        );
    }
    for i in 0..pts.len() {
        let (x, y) = map(i);
        let _ = writeln!(
            out,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"black\"/>"
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\">{i}</text>",
            x + 5.0,
            y - 5.0
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_overlay_and_labels() {
        let s = PointSet::from_coords(&[(0, 0), (4, 0), (2, 3)]).unwrap();
        let svg = render(&s, Some(&Overlay::Polygon(vec![0, 1, 2])));
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("version=\"1.1\""));
        assert_eq!(svg.matches("<circle").count(), 3);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert!(svg.trim_end().ends_with("</svg>"));
        let bare = render(&s, None);
        assert!(!bare.contains("<poly"));
    }

    #[test]
    fn single_point() {
        let s = PointSet::from_coords(&[(7, 7)]).unwrap();
        assert_eq!(render(&s, None).matches("<circle").count(), 1);
    }
}
