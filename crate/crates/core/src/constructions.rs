//! Constructive lower-bound machinery: visible vertices, visible-vertex
//! paths, Hamiltonian paths between hull vertices, paths realizing a
//! 010-avoiding signature on a one-sided instance, and gluing missing hull
//! vertices into a polygon.
//!
//! Every construction is re-checked by the matching validator before it is
//! returned; a failed check is reported as [`Error::Invariant`].

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    check_simple_ring, cross, dot, hull_of_subset, locate_in_ring, on_closed_segment,
    segment_relation, Containment, Point, PointSet, SegmentRelation,
};
use crate::paths::{is_noncrossing_path, path_violation};
use crate::structure::{EnumOptions, EnumerationOutcome, Meter, PathSeq, Polygon};

/// Hull vertices of `subset` seen from `p` along an open segment that misses the hull.
///
/// Result is in increasing index order.
pub fn visible_vertices(s: &PointSet, subset: &[usize], p: Point) -> Result<Vec<usize>> {
    for &i in subset {
        s.check_index(i)?;
    }
    if subset.is_empty() {
        return Err(Error::InvalidParameter("empty subset".into()));
    }
    let pts = s.points();
    let hull = hull_of_subset(pts, subset);
    let hv = &hull.vertices;
    let mut out = match hv.len() {
        1 => {
            if pts[hv[0]] == p {
                return Err(Error::PointInsideHull);
            }
            vec![hv[0]]
        }
        2 => {
            let (a, b) = (pts[hv[0]], pts[hv[1]]);
            if on_closed_segment(p, a, b) {
                return Err(Error::PointInsideHull);
            }
            // On the supporting line, only the nearer extreme is visible.
            let sees = |q: Point, other: Point| !(cross(q, other, p) == 0 && dot(q, other, p) > 0);
            let mut v = Vec::new();
            if sees(a, b) {
                v.push(hv[0]);
            }
            if sees(b, a) {
                v.push(hv[1]);
            }
            v
        }
        k => {
            let ring: Vec<Point> = hv.iter().map(|&i| pts[i]).collect();
            if locate_in_ring(&ring, p) != Containment::Outside {
                return Err(Error::PointInsideHull);
            }
            (0..k)
                .filter(|&i| {
                    let a = ring[(i + k - 1) % k];
                    let q = ring[i];
                    let b = ring[(i + 1) % k];
                    // Visible iff direction q->p leaves the closed hull cone at q.
                    !(cross(q, b, p) >= 0 && cross(a, q, p) >= 0)
                })
                .map(|i| hv[i])
                .collect()
        }
    };
    out.sort_unstable();
    Ok(out)
}

fn remove(v: &mut Vec<usize>, x: usize) {
    if let Some(pos) = v.iter().position(|&y| y == x) {
        v.remove(pos);
    }
}

/// Depth-first traversal of the tree of visible-vertex paths, emitting its leaves.
///
/// Each leaf is a Hamiltonian sequence; the same path may appear twice, once
/// from each end.
pub fn enumerate_vv_paths(
    s: &PointSet,
    opts: &EnumOptions,
    sink: &mut dyn FnMut(&[usize]),
) -> Result<EnumerationOutcome> {
    struct Walk<'a> {
        s: &'a PointSet,
        meter: Meter,
        path: Vec<usize>,
        remaining: Vec<usize>,
    }
    impl Walk<'_> {
        fn descend(&mut self, sink: &mut dyn FnMut(&[usize])) -> Result<bool> {
            if !self.meter.visit() {
                return Ok(false);
            }
            if self.remaining.is_empty() {
                self.meter.emitted();
                sink(&self.path);
                return Ok(true);
            }
            let next = match self.path.last() {
                None => {
                    let mut v = self.s.hull().vertices.clone();
                    v.sort_unstable();
                    v
                }
                Some(&last) => visible_vertices(self.s, &self.remaining, self.s.point(last))
                    .map_err(|e| Error::Invariant(format!("visible-vertex step failed: {e}")))?,
            };
            for q in next {
                self.path.push(q);
                remove(&mut self.remaining, q);
                let ok = self.descend(sink)?;
                let pos = self.remaining.partition_point(|&x| x < q);
                self.remaining.insert(pos, q);
                self.path.pop();
                if !ok {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
    if s.is_empty() {
        return Ok(EnumerationOutcome::default());
    }
    let mut w = Walk {
        s,
        meter: Meter::new(opts),
        path: Vec::new(),
        remaining: (0..s.len()).collect(),
    };
    w.descend(sink)?;
    Ok(w.meter.outcome())
}

/// Greedy visible-vertex path through `subset` from `start`, holding `end` back
/// while any other visible vertex exists.
fn greedy_vv_path(
    s: &PointSet,
    subset: &[usize],
    start: usize,
    end: Option<usize>,
) -> Result<Vec<usize>> {
    let mut path = vec![start];
    let mut remaining: Vec<usize> = subset.iter().copied().filter(|&i| i != start).collect();
    remaining.sort_unstable();
    while !remaining.is_empty() {
        let last = s.point(*path.last().unwrap());
        let vis = visible_vertices(s, &remaining, last)
            .map_err(|e| Error::Invariant(format!("visible-vertex step failed: {e}")))?;
        let pick = vis
            .iter()
            .copied()
            .find(|&v| Some(v) != end)
            .or_else(|| vis.first().copied())
            .ok_or_else(|| Error::Invariant("no visible vertex".into()))?;
        path.push(pick);
        remove(&mut remaining, pick);
    }
    if let Some(q) = end {
        if path.last() != Some(&q) {
            return Err(Error::Invariant(format!(
                "greedy path from {start} reached {q} before the end"
            )));
        }
    }
    Ok(path)
}

fn checked_path(s: &PointSet, path: Vec<usize>) -> Result<PathSeq> {
    if let Some(why) = path_violation(s, &path)? {
        return Err(Error::Invariant(format!(
            "constructed path {path:?} invalid: {why}"
        )));
    }
    Ok(PathSeq(path))
}

/// A non-crossing Hamiltonian path from hull vertex `p` to hull vertex `q`.
pub fn ham_path_between(s: &PointSet, p: usize, q: usize) -> Result<PathSeq> {
    s.check_index(p)?;
    s.check_index(q)?;
    if p == q {
        return Err(Error::InvalidParameter("endpoints must differ".into()));
    }
    let hull = s.hull();
    for v in [p, q] {
        if !hull.is_vertex(v) {
            return Err(Error::NotHullVertex(v));
        }
    }
    let all: Vec<usize> = (0..s.len()).collect();
    let path = greedy_vv_path(s, &all, p, Some(q))?;
    checked_path(s, path)
}

/// Binary word over a one-sided instance: `true` for a point on the line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    bits: Vec<bool>,
}

impl Signature {
    /// Rejects words containing three consecutive bits `0 1 0`.
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if let Some(i) = bits.windows(3).position(|w| !w[0] && w[1] && !w[2]) {
            return Err(Error::InvalidSignature(format!(
                "pattern 010 at position {i}"
            )));
        }
        Ok(Signature { bits })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bits = text
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidSignature(format!(
                    "unexpected character {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Signature::new(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Every 010-avoiding word of length `n` with `ones` one-bits, in lexicographic order.
pub fn all_signatures(n: usize, ones: usize) -> Vec<Signature> {
    fn rec(n: usize, ones: usize, cur: &mut Vec<bool>, out: &mut Vec<Signature>) {
        let k = cur.len();
        let used = cur.iter().filter(|&&b| b).count();
        if used > ones || ones - used > n - k {
            return;
        }
        if k == n {
            out.push(Signature { bits: cur.clone() });
            return;
        }
        for b in [false, true] {
            if !b && k >= 2 && !cur[k - 2] && cur[k - 1] {
                continue;
            }
            cur.push(b);
            rec(n, ones, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if ones <= n {
        rec(n, ones, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// A point set with `line` points on a line and every other point strictly on one side.
#[derive(Debug, Clone)]
pub struct OneSided<'a> {
    s: &'a PointSet,
    /// Line points ordered along the line so that the off-line points lie to its left.
    line: Vec<usize>,
    off: Vec<usize>,
}

impl<'a> OneSided<'a> {
    /// Uses the line through points `a` and `b`.
    pub fn from_line(s: &'a PointSet, a: usize, b: usize) -> Result<Self> {
        s.check_index(a)?;
        s.check_index(b)?;
        if a == b {
            return Err(Error::InvalidParameter(
                "line needs two distinct points".into(),
            ));
        }
        let (pa, mut pb) = (s.point(a), s.point(b));
        let mut line = Vec::new();
        let mut off = Vec::new();
        let mut side = 0i128;
        for z in 0..s.len() {
            let c = cross(pa, pb, s.point(z));
            if c == 0 {
                line.push(z);
            } else {
                if side != 0 && c.signum() != side {
                    return Err(Error::NotOneSided(format!(
                        "point {z} is on the other side"
                    )));
                }
                side = c.signum();
                off.push(z);
            }
        }
        if side < 0 {
            pb = Point::new(2 * pa.x - pb.x, 2 * pa.y - pb.y);
        }
        let key = |z: usize| dot(pa, pb, s.point(z));
        line.sort_by_key(|&z| key(z));
        Ok(OneSided { s, line, off })
    }

    pub fn point_set(&self) -> &PointSet {
        self.s
    }

    /// Line points in left-to-right order.
    pub fn line_points(&self) -> &[usize] {
        &self.line
    }

    pub fn off_points(&self) -> &[usize] {
        &self.off
    }

    pub fn is_on_line(&self, z: usize) -> bool {
        self.line.contains(&z)
    }

    /// Signature of a Hamiltonian path of this instance.
    pub fn signature_of(&self, path: &[usize]) -> Vec<bool> {
        path.iter().map(|&z| self.is_on_line(z)).collect()
    }
}

struct ZeroBlock {
    len: usize,
    /// Positions in the line order of the line points just before and after the block.
    before: Option<usize>,
    after: Option<usize>,
}

fn zero_blocks(sig: &[bool]) -> Vec<ZeroBlock> {
    let mut blocks = Vec::new();
    let mut ones_seen = 0usize;
    let mut i = 0;
    while i < sig.len() {
        if sig[i] {
            ones_seen += 1;
            i += 1;
            continue;
        }
        let start = i;
        while i < sig.len() && !sig[i] {
            i += 1;
        }
        blocks.push(ZeroBlock {
            len: i - start,
            before: ones_seen.checked_sub(1),
            after: (i < sig.len()).then_some(ones_seen),
        });
    }
    blocks
}

/// A non-crossing Hamiltonian path of a one-sided instance whose on-line/off-line pattern is `sig`.
///
/// Off-line points are split greedily into convex groups, one per block of
/// zeros: the group for a block is cut off by the ray from the line point
/// following the block, sweeping from the left end of the line. Each group is
/// threaded by a visible-vertex path between its line neighbours.
pub fn realize_signature(inst: &OneSided<'_>, sig: &Signature) -> Result<PathSeq> {
    let s = inst.s;
    let ell = inst.line.len();
    if sig.len() != s.len() {
        return Err(Error::InvalidSignature(format!(
            "length {} but the instance has {} points",
            sig.len(),
            s.len()
        )));
    }
    if sig.ones() != ell {
        return Err(Error::InvalidSignature(format!(
            "{} one-bits but {ell} points on the line",
            sig.ones()
        )));
    }
    if ell < 2 {
        return Err(Error::InvalidSignature(
            "fewer than two points on the line".into(),
        ));
    }
    let blocks = zero_blocks(sig.bits());
    let mut remaining = inst.off.clone();
    let mut groups: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
    for (i, block) in blocks.iter().enumerate() {
        if i + 1 == blocks.len() {
            groups.push(std::mem::take(&mut remaining));
            break;
        }
        let pivot = s.point(inst.line[block.after.expect("inner block has a successor")]);
        remaining.sort_by(|&u, &v| {
            let (pu, pv) = (s.point(u), s.point(v));
            match cross(pivot, pu, pv).cmp(&0) {
                Ordering::Less => Ordering::Less,
                Ordering::Greater => Ordering::Greater,
                Ordering::Equal => dot(pivot, pu, pu).cmp(&dot(pivot, pv, pv)),
            }
        });
        let rest = remaining.split_off(block.len);
        groups.push(std::mem::replace(&mut remaining, rest));
    }

    let mut pieces: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
    for (block, group) in blocks.iter().zip(&groups) {
        let before = block.before.map(|j| inst.line[j]);
        let after = block.after.map(|j| inst.line[j]);
        let mut subset = group.clone();
        subset.extend(before);
        subset.extend(after);
        let inner = match (before, after) {
            (Some(a), Some(b)) => {
                let p = greedy_vv_path(s, &subset, a, Some(b))?;
                p[1..p.len() - 1].to_vec()
            }
            (None, Some(b)) => {
                let mut p = greedy_vv_path(s, &subset, b, None)?;
                p.reverse();
                p[..p.len() - 1].to_vec()
            }
            (Some(a), None) => {
                let p = greedy_vv_path(s, &subset, a, None)?;
                p[1..].to_vec()
            }
            (None, None) => unreachable!("a signature with line points has no isolated block"),
        };
        pieces.push(inner);
    }

    let mut path = Vec::with_capacity(s.len());
    let mut line_iter = inst.line.iter();
    let mut piece_iter = pieces.into_iter();
    let mut i = 0;
    let bits = sig.bits();
    while i < bits.len() {
        if bits[i] {
            path.push(*line_iter.next().expect("ones match line points"));
            i += 1;
        } else {
            let piece = piece_iter.next().expect("one piece per block");
            i += piece.len();
            path.extend(piece);
        }
    }
    let path = checked_path(s, path)?;
    if inst.signature_of(path.vertices()) != bits {
        return Err(Error::Invariant(format!(
            "path {:?} does not realize signature {sig}",
            path.vertices()
        )));
    }
    Ok(path)
}

/// Glues each missing hull vertex onto a polygon edge it sees completely.
///
/// Missing vertices are handled in increasing index order; each one takes the
/// first fully visible edge counting from the polygon's canonical start.
pub fn steinhaus_complete(s: &PointSet, poly: &Polygon) -> Result<Polygon> {
    let verts = poly.vertices();
    crate::paths::check_indices(s, verts)?;
    let ring: Vec<Point> = verts.iter().map(|&i| s.point(i)).collect();
    check_simple_ring(&ring).map_err(Error::NotSimple)?;
    let hull = s.hull();
    let mut missing = Vec::new();
    for z in 0..s.len() {
        if verts.contains(&z) {
            continue;
        }
        if hull.is_vertex(z) {
            missing.push(z);
        } else if locate_in_ring(&ring, s.point(z)) == Containment::Outside {
            return Err(Error::InvalidParameter(format!(
                "point {z} is neither surrounded nor a hull vertex"
            )));
        }
    }
    let mut cur = Polygon::canonical(s, verts).vertices().to_vec();
    for q in missing {
        let pq = s.point(q);
        let ring: Vec<Point> = cur.iter().map(|&i| s.point(i)).collect();
        let k = ring.len();
        let edge = (0..k).find(|&e| {
            let (u, w) = (ring[e], ring[(e + 1) % k]);
            cross(u, w, pq) < 0 && glue_is_simple(&ring, e, pq)
        });
        let Some(e) = edge else {
            return Err(Error::Invariant(format!(
                "hull vertex {q} sees no polygon edge completely"
            )));
        };
        cur.insert(e + 1, q);
        cur = Polygon::from_ccw(&cur).vertices().to_vec();
    }
    let ring: Vec<Point> = cur.iter().map(|&i| s.point(i)).collect();
    check_simple_ring(&ring)
        .map_err(|why| Error::Invariant(format!("completed polygon not simple: {why}")))?;
    Ok(Polygon::from_ccw(&cur))
}

/// Replacing edge `e` of `ring` by two edges through `q` keeps it simple.
fn glue_is_simple(ring: &[Point], e: usize, q: Point) -> bool {
    let k = ring.len();
    let (u, w) = (ring[e], ring[(e + 1) % k]);
    for f in 0..k {
        if f == e {
            continue;
        }
        let (c, d) = (ring[f], ring[(f + 1) % k]);
        let want_u = if (f + 1) % k == e {
            SegmentRelation::ShareEndpointOnly
        } else {
            SegmentRelation::Disjoint
        };
        let want_w = if f == (e + 1) % k {
            SegmentRelation::ShareEndpointOnly
        } else {
            SegmentRelation::Disjoint
        };
        if segment_relation(u, q, c, d) != want_u || segment_relation(q, w, c, d) != want_w {
            return false;
        }
    }
    true
}

/// Re-exported validator used by construction tests.
pub fn validate_ham(s: &PointSet, path: &PathSeq) -> Result<bool> {
    Ok(path.len() == s.len() && is_noncrossing_path(s, path.vertices())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_collinear, gen_convex, gen_one_sided};

    fn pts(c: &[(i64, i64)]) -> PointSet {
        PointSet::from_coords(c).unwrap()
    }

    #[test]
    fn visible_vertex_examples() {
        let tri = pts(&[(0, 0), (4, 0), (2, 4)]);
        assert_eq!(
            visible_vertices(&tri, &[0, 1, 2], Point::new(2, -5)).unwrap(),
            vec![0, 1]
        );
        let col = gen_collinear(4).unwrap();
        assert_eq!(
            visible_vertices(&col, &[0, 1, 2, 3], Point::new(1, 5)).unwrap(),
            vec![0, 3]
        );
        assert_eq!(
            visible_vertices(&col, &[0, 1, 2, 3], Point::new(9, 0)).unwrap(),
            vec![3]
        );
        assert_eq!(
            visible_vertices(&tri, &[0, 1, 2], Point::new(2, 1)),
            Err(Error::PointInsideHull)
        );
        assert_eq!(
            visible_vertices(&col, &[0, 1, 2, 3], Point::new(1, 0)),
            Err(Error::PointInsideHull)
        );
    }

    #[test]
    fn edge_interior_points_are_not_visible() {
        // (2,0) sits inside a hull edge facing p.
        let s = pts(&[(0, 0), (2, 0), (4, 0), (2, 4)]);
        assert_eq!(
            visible_vertices(&s, &[0, 1, 2, 3], Point::new(2, -3)).unwrap(),
            vec![0, 2]
        );
    }

    #[test]
    fn vv_tree_leaves() {
        let count = |s: &PointSet| {
            let mut leaves = Vec::new();
            enumerate_vv_paths(s, &EnumOptions::default(), &mut |p| leaves.push(p.to_vec()))
                .unwrap();
            leaves
        };
        assert_eq!(count(&gen_collinear(5).unwrap()).len(), 2);
        let tri = count(&pts(&[(0, 0), (4, 0), (2, 4)]));
        assert_eq!(tri.len(), 6);
    }

    #[test]
    fn ham_between_examples() {
        let tri = pts(&[(0, 0), (4, 0), (2, 4)]);
        assert_eq!(ham_path_between(&tri, 0, 1).unwrap().0, vec![0, 2, 1]);
        let col = gen_collinear(5).unwrap();
        assert_eq!(ham_path_between(&col, 0, 4).unwrap().0, vec![0, 1, 2, 3, 4]);
        assert_eq!(ham_path_between(&col, 0, 2), Err(Error::NotHullVertex(2)));
        let c6 = gen_convex(6).unwrap();
        let p = ham_path_between(&c6, 0, 3).unwrap();
        assert!(validate_ham(&c6, &p).unwrap());
        assert_eq!((p.0[0], p.0[5]), (0, 3));
    }

    #[test]
    fn signature_checks() {
        assert!(Signature::parse("010").is_err());
        assert!(Signature::parse("0110").is_ok());
        assert!(Signature::parse("1001").is_ok());
        assert_eq!(all_signatures(3, 1).len(), 2);
        let (s, line) = gen_one_sided(3, 2).unwrap();
        let inst = OneSided::from_line(&s, line.0, line.1).unwrap();
        let too_few = Signature::parse("11000").unwrap();
        assert!(matches!(
            realize_signature(&inst, &too_few),
            Err(Error::InvalidSignature(_))
        ));
    }

    #[test]
    fn realize_examples() {
        let (s, line) = gen_one_sided(4, 3).unwrap();
        let inst = OneSided::from_line(&s, line.0, line.1).unwrap();
        let p = realize_signature(&inst, &Signature::parse("1111000").unwrap()).unwrap();
        assert_eq!(&p.0[..4], inst.line_points());
        let q = realize_signature(&inst, &Signature::parse("0001111").unwrap()).unwrap();
        assert!(validate_ham(&s, &q).unwrap());
        assert_ne!(p, q);

        let (flat, l) = gen_one_sided(4, 0).unwrap();
        let inst = OneSided::from_line(&flat, l.0, l.1).unwrap();
        let r = realize_signature(&inst, &Signature::parse("1111").unwrap()).unwrap();
        assert_eq!(r.0, vec![0, 1, 2, 3]);
    }

    #[test]
    fn one_sided_rejects_two_sides() {
        let s = pts(&[(0, 0), (1, 0), (0, 1), (0, -1)]);
        assert!(matches!(
            OneSided::from_line(&s, 0, 1),
            Err(Error::NotOneSided(_))
        ));
    }

    #[test]
    fn steinhaus_square() {
        let s = pts(&[(0, 0), (4, 0), (4, 4), (0, 4)]);
        let tri = Polygon::canonical(&s, &[0, 1, 2]);
        let sq = steinhaus_complete(&s, &tri).unwrap();
        assert_eq!(sq.vertices(), &[0, 1, 2, 3]);
        let full = Polygon::canonical(&s, &[0, 1, 2, 3]);
        assert_eq!(steinhaus_complete(&s, &full).unwrap(), full);
    }
}
