//! Point-set input formats.
//!
//! Text: one `x y` pair per line, `#` starts a comment. JSON:
//! `{"points": [[x, y], ...]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::geom::{Point, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct PointsDoc {
    points: Vec<[i64; 2]>,
}

/// Parses either format, choosing JSON when the first non-blank character is `{`.
pub fn parse_points(text: &str) -> Result<PointSet, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

pub fn parse_text(text: &str) -> Result<PointSet, ParseError> {
    let mut pts = Vec::new();
    let mut lines = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut fields = Vec::new();
        let mut rest = body;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_ascii_whitespace()) {
            let tail = &rest[start..];
            let len = tail
                .find(|c: char| c.is_ascii_whitespace())
                .unwrap_or(tail.len());
            fields.push((offset + start + 1, &tail[..len]));
            offset += start + len;
            rest = &tail[len..];
        }
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 2 {
            let column = fields.get(2).map_or(fields[0].0, |f| f.0);
            return Err(ParseError {
                line,
                column,
                message: format!("expected two integers, found {}", fields.len()),
            });
        }
        let mut xy = [0i64; 2];
        for (slot, (column, tok)) in xy.iter_mut().zip(&fields) {
            *slot = tok.parse().map_err(|_| ParseError {
                line,
                column: *column,
                message: format!("invalid integer {tok:?}"),
            })?;
        }
        pts.push(Point::new(xy[0], xy[1]));
        lines.push(line);
    }
    PointSet::new(pts).map_err(|e| located(e, &lines))
}

pub fn parse_json(text: &str) -> Result<PointSet, ParseError> {
    let doc: PointsDoc = serde_json::from_str(text).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let pts = doc.points.iter().map(|&[x, y]| Point::new(x, y)).collect();
    PointSet::new(pts).map_err(|e| ParseError {
        line: 1,
        column: 1,
        message: e.to_string(),
    })
}

fn located(e: Error, lines: &[usize]) -> ParseError {
    let index = match e {
        Error::DuplicatePoint { second, .. } => Some(second),
        Error::CoordinateOutOfRange { index, .. } => Some(index),
        _ => None,
    };
    ParseError {
        line: index.and_then(|i| lines.get(i).copied()).unwrap_or(1),
        column: 1,
        message: e.to_string(),
    }
}

pub fn to_text(s: &PointSet) -> String {
    s.points()
        .iter()
        .map(|p| format!("{} {}\n", p.x, p.y))
        .collect()
}

pub fn to_json(s: &PointSet) -> String {
    let doc = PointsDoc {
        points: s.points().iter().map(|p| [p.x, p.y]).collect(),
    };
    serde_json::to_string(&doc).expect("point documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_with_comments() {
        let s = parse_points("# square\n0 0\n4 0  # corner\n\n4 4\n  0 4\n").unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.point(3), Point::new(0, 4));
    }

    #[test]
    fn text_errors_are_located() {
        let e = parse_points("0 0\n1 x\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_points("0 0\n  1 2 3\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
        let e = parse_points("0 0\n1 1\n\n0 0\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("coincide"), "{}", e.message);
    }

    #[test]
    fn json_round_trip() {
        let s = parse_points(r#"{"points": [[0, 0], [3, 1], [-2, 5]]}"#).unwrap();
        assert_eq!(parse_points(&to_json(&s)).unwrap(), s);
        assert_eq!(parse_points(&to_text(&s)).unwrap(), s);
        let e = parse_points("{\"points\": [[0, 0],\n [1]]}").unwrap_err();
        assert_eq!(e.line, 2);
    }
}
