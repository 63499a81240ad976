//! Shared representations of paths and polygons, their canonical forms, and
//! the bookkeeping types used by every enumerator.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::geom::{signed_area2, PointSet};

/// Vertex sequence of a non-crossing path (possibly empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathSeq(pub Vec<usize>);

impl PathSeq {
    pub fn new(v: Vec<usize>) -> Self {
        PathSeq(v)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The orientation that starts at the smaller endpoint index.
    pub fn canonical(&self) -> PathSeq {
        canonical_path(&self.0)
    }
}

pub fn canonical_path(v: &[usize]) -> PathSeq {
    let mut out = v.to_vec();
    if out.len() >= 2 && out[0] > out[out.len() - 1] {
        out.reverse();
    }
    PathSeq(out)
}

/// Cyclic vertex sequence of a polygon, stored counterclockwise starting at its smallest index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polygon(Vec<usize>);

impl Polygon {
    /// Canonical form of the cyclic sequence `verts` over `s`.
    ///
    /// Orientation is normalized by signed area; zero-area sequences (never
    /// simple) fall back to the lexicographically smaller direction.
    pub fn canonical(s: &PointSet, verts: &[usize]) -> Polygon {
        let ring: Vec<_> = verts.iter().map(|&i| s.point(i)).collect();
        let area = signed_area2(&ring);
        let mut fwd = rotate_to_min(verts);
        if area < 0 {
            fwd = reverse_cycle(&fwd);
        } else if area == 0 {
            let rev = reverse_cycle(&fwd);
            if rev < fwd {
                fwd = rev;
            }
        }
        Polygon(fwd)
    }

    /// Wraps a sequence already known to be counterclockwise.
    pub(crate) fn from_ccw(verts: &[usize]) -> Polygon {
        Polygon(rotate_to_min(verts))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn rotate_to_min(v: &[usize]) -> Vec<usize> {
    let Some(pos) = v.iter().enumerate().min_by_key(|(_, &x)| x).map(|(i, _)| i) else {
        return Vec::new();
    };
    v[pos..].iter().chain(&v[..pos]).copied().collect()
}

/// Reverses a cycle that starts at its minimum, keeping the minimum first.
fn reverse_cycle(v: &[usize]) -> Vec<usize> {
    if v.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(v.len());
    out.push(v[0]);
    out.extend(v[1..].iter().rev());
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureClass {
    Path,
    Ham,
    Surround,
    Poly,
}

impl StructureClass {
    pub const ALL: [StructureClass; 4] = [
        StructureClass::Path,
        StructureClass::Ham,
        StructureClass::Surround,
        StructureClass::Poly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureClass::Path => "path",
            StructureClass::Ham => "ham",
            StructureClass::Surround => "surround",
            StructureClass::Poly => "poly",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Single-threaded depth-first search, children in increasing index order.
    #[default]
    Deterministic,
    /// Subtrees of the root explored on the rayon pool; emission order unspecified.
    Parallel,
}

#[derive(Debug, Clone, Default)]
pub struct EnumOptions {
    /// Maximum number of search-tree nodes to visit.
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
    pub mode: Mode,
    /// Keep a set of visited canonical forms and fail on any repeat.
    pub track_visited: bool,
}

impl EnumOptions {
    pub fn with_max_nodes(max_nodes: u64) -> Self {
        EnumOptions {
            max_nodes: Some(max_nodes),
            ..Default::default()
        }
    }

    pub fn parallel() -> Self {
        EnumOptions {
            mode: Mode::Parallel,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EnumerationOutcome {
    /// Number of structures emitted.
    pub count: u64,
    pub nodes_visited: u64,
    /// The node or time budget ran out; `count` is a lower bound.
    pub truncated: bool,
    /// The structure class is empty for this input (e.g. polygons on collinear points).
    pub degenerate: bool,
}

/// Node budget shared by all workers of one enumeration.
pub(crate) struct Meter {
    nodes: AtomicU64,
    count: AtomicU64,
    stop: AtomicBool,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
}

impl Meter {
    pub(crate) fn new(opts: &EnumOptions) -> Self {
        Meter {
            nodes: AtomicU64::new(0),
            count: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            max_nodes: opts.max_nodes,
            deadline: opts.deadline,
        }
    }

    /// Registers one visited node; `false` once the budget is exhausted.
    pub(crate) fn visit(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let prev = self.nodes.fetch_add(1, Ordering::Relaxed);
        if let Some(max) = self.max_nodes {
            if prev >= max {
                self.nodes.fetch_sub(1, Ordering::Relaxed);
                self.stop.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if let Some(deadline) = self.deadline {
            if prev.is_multiple_of(256) && Instant::now() >= deadline {
                self.stop.store(true, Ordering::Relaxed);
                return false;
            }
        }
        true
    }

    pub(crate) fn emitted(&self) {
        self.count.fetch_add(1, Ordering::Relaxed);
    }

    pub(crate) fn outcome(&self) -> EnumerationOutcome {
        EnumerationOutcome {
            count: self.count.load(Ordering::Relaxed),
            nodes_visited: self.nodes.load(Ordering::Relaxed),
            truncated: self.stop.load(Ordering::Relaxed),
            degenerate: false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_canonical_is_rotation_and_reflection_invariant() {
        let s = PointSet::from_coords(&[(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)]).unwrap();
        let a = Polygon::canonical(&s, &[2, 3, 0, 4, 1]);
        let b = Polygon::canonical(&s, &[1, 4, 0, 3, 2]);
        assert_eq!(a, b);
        assert_eq!(a.vertices(), &[0, 4, 1, 2, 3]);
    }

    #[test]
    fn path_canonical_orientation() {
        assert_eq!(canonical_path(&[3, 1, 0]).0, vec![0, 1, 3]);
        assert_eq!(canonical_path(&[1, 3, 2]).0, vec![1, 3, 2]);
        assert_eq!(canonical_path(&[5]).0, vec![5]);
    }

    #[test]
    fn meter_stops_at_budget() {
        let m = Meter::new(&EnumOptions::with_max_nodes(3));
        assert!(m.visit() && m.visit() && m.visit());
        assert!(!m.visit());
        let o = m.outcome();
        assert!(o.truncated);
        assert_eq!(o.nodes_visited, 3);
    }
}
