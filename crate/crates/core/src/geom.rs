//! Exact integer geometry: orientation, segment relations, convex hulls,
//! radial orders and point-in-polygon classification.
//!
//! Every decision is made from signs of exact cross and dot products computed
//! in `i128`. A [`PointSet`] bounds its coordinates by [`COORD_BOUND`], which
//! keeps every intermediate product far inside the `i128` range; the
//! `try_*` predicates report overflow for arbitrary `i64` input instead of
//! wrapping.

use std::cmp::Ordering;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted absolute coordinate value in a [`PointSet`].
pub const COORD_BOUND: i64 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    fn from_sign(v: i128) -> Self {
        match v.cmp(&0) {
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Greater => Orientation::CounterClockwise,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }
}

fn diff(a: i64, b: i64) -> i128 {
    a as i128 - b as i128
}

/// Exact `(q - p) x (r - p)`, or `Err(Overflow)` when it does not fit in `i128`.
pub fn try_cross(p: Point, q: Point, r: Point) -> Result<i128> {
    let l = diff(q.x, p.x)
        .checked_mul(diff(r.y, p.y))
        .ok_or(Error::Overflow)?;
    let rr = diff(q.y, p.y)
        .checked_mul(diff(r.x, p.x))
        .ok_or(Error::Overflow)?;
    l.checked_sub(rr).ok_or(Error::Overflow)
}

/// Exact `(q - p) . (r - p)`, or `Err(Overflow)`.
pub fn try_dot(p: Point, q: Point, r: Point) -> Result<i128> {
    let l = diff(q.x, p.x)
        .checked_mul(diff(r.x, p.x))
        .ok_or(Error::Overflow)?;
    let rr = diff(q.y, p.y)
        .checked_mul(diff(r.y, p.y))
        .ok_or(Error::Overflow)?;
    l.checked_add(rr).ok_or(Error::Overflow)
}

pub fn try_orient(p: Point, q: Point, r: Point) -> Result<Orientation> {
    try_cross(p, q, r).map(Orientation::from_sign)
}

/// Cross product for points that passed [`PointSet`] validation.
///
/// Panics on overflow, which cannot happen for coordinates within [`COORD_BOUND`].
pub fn cross(p: Point, q: Point, r: Point) -> i128 {
    try_cross(p, q, r).expect("cross product overflow: coordinates exceed the validated bound")
}

pub fn dot(p: Point, q: Point, r: Point) -> i128 {
    try_dot(p, q, r).expect("dot product overflow: coordinates exceed the validated bound")
}

/// Sign of `(q - p) x (r - p)`.
pub fn orient(p: Point, q: Point, r: Point) -> Orientation {
    Orientation::from_sign(cross(p, q, r))
}

fn sq_dist(a: Point, b: Point) -> i128 {
    let dx = diff(a.x, b.x);
    let dy = diff(a.y, b.y);
    dx * dx + dy * dy
}

/// `p` lies on the closed segment `ab`.
pub fn on_closed_segment(p: Point, a: Point, b: Point) -> bool {
    cross(a, b, p) == 0 && dot(p, a, b) <= 0
}

/// `p` lies strictly between `a` and `b` on segment `ab`.
pub fn on_open_segment(p: Point, a: Point, b: Point) -> bool {
    p != a && p != b && on_closed_segment(p, a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentRelation {
    Disjoint,
    /// The segments meet in exactly one point, which is an endpoint of both.
    ShareEndpointOnly,
    /// Interiors cross at a single point.
    ProperCross,
    /// A single common point that is an endpoint of one segment and interior to the other.
    ImproperTouch,
    /// Collinear segments sharing more than one point.
    CollinearOverlap,
}

/// Classifies the intersection of closed segments `ab` and `cd`.
pub fn segment_relation(a: Point, b: Point, c: Point, d: Point) -> SegmentRelation {
    let o1 = cross(a, b, c);
    let o2 = cross(a, b, d);
    if o1 == 0 && o2 == 0 {
        // Project onto the dominant axis of ab; cd is on the same line.
        let key = |p: Point| -> i64 {
            if a.x != b.x {
                p.x
            } else {
                p.y
            }
        };
        let (lo1, hi1) = minmax(key(a), key(b));
        let (lo2, hi2) = minmax(key(c), key(d));
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        return match lo.cmp(&hi) {
            Ordering::Less => SegmentRelation::CollinearOverlap,
            Ordering::Equal => SegmentRelation::ShareEndpointOnly,
            Ordering::Greater => SegmentRelation::Disjoint,
        };
    }
    let o3 = cross(c, d, a);
    let o4 = cross(c, d, b);
    if o1.signum() * o2.signum() < 0 && o3.signum() * o4.signum() < 0 {
        return SegmentRelation::ProperCross;
    }
    if a == c || a == d || b == c || b == d {
        // Non-collinear segments meet in at most one point.
        return SegmentRelation::ShareEndpointOnly;
    }
    if (o1 == 0 && on_closed_segment(c, a, b))
        || (o2 == 0 && on_closed_segment(d, a, b))
        || (o3 == 0 && on_closed_segment(a, c, d))
        || (o4 == 0 && on_closed_segment(b, c, d))
    {
        return SegmentRelation::ImproperTouch;
    }
    SegmentRelation::Disjoint
}

fn minmax(a: i64, b: i64) -> (i64, i64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// An immutable indexed set of pairwise distinct points.
#[derive(Debug, Serialize)]
pub struct PointSet {
    points: Vec<Point>,
    #[serde(skip)]
    radial: Vec<OnceLock<Vec<Vec<usize>>>>,
    #[serde(skip)]
    hull: OnceLock<Hull>,
}

impl Clone for PointSet {
    fn clone(&self) -> Self {
        PointSet::from_validated(self.points.clone())
    }
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for PointSet {}

impl PointSet {
    /// Validates distinctness and the coordinate bound.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        for (index, p) in points.iter().enumerate() {
            if p.x.abs() > COORD_BOUND || p.y.abs() > COORD_BOUND {
                return Err(Error::CoordinateOutOfRange {
                    index,
                    x: p.x,
                    y: p.y,
                    bound: COORD_BOUND,
                });
            }
        }
        let mut seen = std::collections::HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if let Some(&first) = seen.get(p) {
                return Err(Error::DuplicatePoint {
                    first,
                    second: i,
                    x: p.x,
                    y: p.y,
                });
            }
            seen.insert(*p, i);
        }
        Ok(Self::from_validated(points))
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().copied().map(Point::from).collect())
    }

    fn from_validated(points: Vec<Point>) -> Self {
        let radial = (0..points.len()).map(|_| OnceLock::new()).collect();
        PointSet {
            points,
            radial,
            hull: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidIndex {
                index: i,
                n: self.len(),
            })
        }
    }

    /// Convex hull of the whole set, computed once.
    pub fn hull(&self) -> &Hull {
        self.hull.get_or_init(|| convex_hull(self))
    }

    /// Radial order around `origin`, computed on first use and cached.
    pub fn radial(&self, origin: usize) -> &[Vec<usize>] {
        self.radial[origin].get_or_init(|| compute_radial(&self.points, origin))
    }

    pub fn is_collinear(&self) -> bool {
        self.hull().degenerate
    }
}

/// Convex hull with the strict-vertex convention: points in the relative
/// interior of hull edges are listed in `on_edge`, never as vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hull {
    /// Extreme points in counterclockwise order.
    pub vertices: Vec<usize>,
    pub on_edge: Vec<usize>,
    pub interior: Vec<usize>,
    /// All points collinear (including `n <= 2`).
    pub degenerate: bool,
}

impl Hull {
    pub fn is_vertex(&self, i: usize) -> bool {
        self.vertices.contains(&i)
    }
}

pub fn convex_hull(s: &PointSet) -> Hull {
    let ids: Vec<usize> = (0..s.len()).collect();
    hull_of_subset(s.points(), &ids)
}

/// Convex hull of the points `ids` of `pts`; indices in the result refer to `pts`.
pub fn hull_of_subset(pts: &[Point], ids: &[usize]) -> Hull {
    let mut order: Vec<usize> = ids.to_vec();
    order.sort_by_key(|&i| pts[i]);
    order.dedup();
    if order.len() <= 1 {
        return Hull {
            vertices: order,
            on_edge: Vec::new(),
            interior: Vec::new(),
            degenerate: true,
        };
    }
    let chain = |it: &mut dyn Iterator<Item = usize>| -> Vec<usize> {
        let mut h: Vec<usize> = Vec::new();
        for i in it {
            while h.len() >= 2 && cross(pts[h[h.len() - 2]], pts[h[h.len() - 1]], pts[i]) <= 0 {
                h.pop();
            }
            h.push(i);
        }
        h
    };
    let mut lower = chain(&mut order.iter().copied());
    let mut upper = chain(&mut order.iter().rev().copied());
    lower.pop();
    upper.pop();
    let mut vertices = lower;
    vertices.extend(upper);

    let first = order[0];
    let last = *order.last().unwrap();
    let degenerate = order
        .iter()
        .all(|&i| cross(pts[first], pts[last], pts[i]) == 0);
    if degenerate {
        let on_edge = order[1..order.len() - 1].to_vec();
        return Hull {
            vertices: vec![first, last],
            on_edge,
            interior: Vec::new(),
            degenerate: true,
        };
    }

    let k = vertices.len();
    let mut on_edge = Vec::new();
    let mut interior = Vec::new();
    let mut sorted_ids = ids.to_vec();
    sorted_ids.sort_unstable();
    sorted_ids.dedup();
    for &i in &sorted_ids {
        if vertices.contains(&i) {
            continue;
        }
        let p = pts[i];
        let boundary =
            (0..k).any(|e| on_closed_segment(p, pts[vertices[e]], pts[vertices[(e + 1) % k]]));
        if boundary {
            on_edge.push(i);
        } else {
            interior.push(i);
        }
    }
    Hull {
        vertices,
        on_edge,
        interior,
        degenerate: false,
    }
}

/// Half-plane of a direction: 0 for angles in `[0, pi)`, 1 for `[pi, 2pi)`.
fn half(dx: i128, dy: i128) -> u8 {
    if dy > 0 || (dy == 0 && dx > 0) {
        0
    } else {
        1
    }
}

/// Exact angular comparison of directions `a - o` and `b - o`, counterclockwise from the positive x axis.
pub fn angle_cmp(o: Point, a: Point, b: Point) -> Ordering {
    let ha = half(diff(a.x, o.x), diff(a.y, o.y));
    let hb = half(diff(b.x, o.x), diff(b.y, o.y));
    ha.cmp(&hb).then_with(|| 0.cmp(&cross(o, a, b)))
}

fn compute_radial(pts: &[Point], origin: usize) -> Vec<Vec<usize>> {
    let o = pts[origin];
    let mut ids: Vec<usize> = (0..pts.len()).filter(|&i| i != origin).collect();
    ids.sort_by(|&a, &b| {
        angle_cmp(o, pts[a], pts[b]).then_with(|| sq_dist(o, pts[a]).cmp(&sq_dist(o, pts[b])))
    });
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in ids {
        match groups.last_mut() {
            Some(g) if angle_cmp(o, pts[g[0]], pts[i]) == Ordering::Equal => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
}

/// Non-origin indices grouped by ray from `origin`, rays in counterclockwise
/// angular order from the positive x axis, each group sorted by distance.
pub fn radial_order(s: &PointSet, origin: usize) -> Result<Vec<Vec<usize>>> {
    s.check_index(origin)?;
    Ok(s.radial(origin).to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

/// Twice the signed area of a closed ring; positive for counterclockwise.
pub fn signed_area2(ring: &[Point]) -> i128 {
    let k = ring.len();
    (0..k)
        .map(|i| {
            let a = ring[i];
            let b = ring[(i + 1) % k];
            a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128
        })
        .sum()
}

/// Checks that the closed ring is a simple polygon.
///
/// Adjacent edges must meet only in their shared vertex (straight angles are
/// fine, reversals are not); non-adjacent edges must be disjoint.
pub fn check_simple_ring(ring: &[Point]) -> std::result::Result<(), String> {
    let k = ring.len();
    if k < 3 {
        return Err(format!("{k} vertices"));
    }
    for i in 0..k {
        for j in i + 1..k {
            if ring[i] == ring[j] {
                return Err(format!("vertex {i} repeated at {j}"));
            }
        }
    }
    for i in 0..k {
        let (a, b) = (ring[i], ring[(i + 1) % k]);
        for j in i + 1..k {
            let (c, d) = (ring[j], ring[(j + 1) % k]);
            let adjacent = j == i + 1 || (i == 0 && j == k - 1);
            let rel = segment_relation(a, b, c, d);
            let ok = if adjacent {
                rel == SegmentRelation::ShareEndpointOnly
            } else {
                rel == SegmentRelation::Disjoint
            };
            if !ok {
                return Err(format!("edges {i} and {j}: {rel:?}"));
            }
        }
    }
    Ok(())
}

/// Classifies `p` against a ring assumed simple.
pub fn locate_in_ring(ring: &[Point], p: Point) -> Containment {
    let k = ring.len();
    let mut inside = false;
    for i in 0..k {
        let a = ring[i];
        let b = ring[(i + 1) % k];
        if on_closed_segment(p, a, b) {
            return Containment::Boundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            // Edge straddles the horizontal line through p; count it when the
            // crossing lies to the right of p.
            let c = cross(a, b, p);
            if (b.y > a.y) == (c > 0) {
                inside = !inside;
            }
        }
    }
    if inside {
        Containment::Inside
    } else {
        Containment::Outside
    }
}

/// Classifies `p` against the polygon `ring`, rejecting non-simple polygons.
pub fn point_vs_polygon(ring: &[Point], p: Point) -> Result<Containment> {
    check_simple_ring(ring).map_err(Error::NotSimple)?;
    Ok(locate_in_ring(ring, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn orient_examples() {
        assert_eq!(
            orient(p(0, 0), p(1, 0), p(0, 1)),
            Orientation::CounterClockwise
        );
        assert_eq!(orient(p(0, 0), p(1, 1), p(2, 2)), Orientation::Collinear);
        assert_eq!(orient(p(0, 0), p(1, 1), p(2, 0)), Orientation::Clockwise);
    }

    #[test]
    fn orient_overflow_is_reported() {
        let (lo, hi) = (i64::MIN, i64::MAX);
        assert_eq!(
            try_orient(p(lo, lo), p(hi, hi), p(lo, hi)),
            Err(Error::Overflow)
        );
        let b = COORD_BOUND;
        assert!(try_orient(p(-b, -b), p(b, -b), p(b, b)).is_ok());
    }

    #[test]
    fn segment_relation_examples() {
        use SegmentRelation::*;
        assert_eq!(
            segment_relation(p(0, 0), p(2, 2), p(0, 2), p(2, 0)),
            ProperCross
        );
        assert_eq!(
            segment_relation(p(0, 0), p(1, 0), p(1, 0), p(2, 1)),
            ShareEndpointOnly
        );
        assert_eq!(
            segment_relation(p(0, 0), p(2, 0), p(1, 0), p(3, 0)),
            CollinearOverlap
        );
        assert_eq!(
            segment_relation(p(0, 0), p(2, 0), p(1, 0), p(1, 5)),
            ImproperTouch
        );
        assert_eq!(
            segment_relation(p(0, 0), p(1, 0), p(2, 0), p(3, 0)),
            Disjoint
        );
        assert_eq!(
            segment_relation(p(0, 0), p(1, 0), p(1, 0), p(2, 0)),
            ShareEndpointOnly
        );
        assert_eq!(
            segment_relation(p(0, 0), p(2, 0), p(0, 1), p(2, 1)),
            Disjoint
        );
        assert_eq!(
            segment_relation(p(0, 0), p(2, 0), p(2, 0), p(0, 0)),
            CollinearOverlap
        );
    }

    #[test]
    fn hull_of_grid() {
        let s = PointSet::from_coords(&[
            (0, 0),
            (1, 0),
            (2, 0),
            (0, 1),
            (1, 1),
            (2, 1),
            (0, 2),
            (1, 2),
            (2, 2),
        ])
        .unwrap();
        let h = s.hull();
        let mut v = h.vertices.clone();
        v.sort();
        assert_eq!(v, vec![0, 2, 6, 8]);
        assert_eq!(h.on_edge, vec![1, 3, 5, 7]);
        assert_eq!(h.interior, vec![4]);
        assert!(!h.degenerate);
    }

    #[test]
    fn hull_of_parabola_and_collinear() {
        let s = PointSet::from_coords(&[(0, 0), (1, 1), (2, 4), (3, 9), (4, 16)]).unwrap();
        assert_eq!(s.hull().vertices.len(), 5);
        assert!(s.hull().on_edge.is_empty());

        let c = PointSet::from_coords(&[(0, 0), (1, 0), (2, 0)]).unwrap();
        let h = c.hull();
        assert!(h.degenerate);
        assert_eq!(h.vertices, vec![0, 2]);
        assert_eq!(h.on_edge, vec![1]);

        let one = PointSet::from_coords(&[(5, 5)]).unwrap();
        assert_eq!(one.hull().vertices, vec![0]);
    }

    #[test]
    fn hull_is_ccw_strict() {
        let s = PointSet::from_coords(&[(3, 0), (0, 0), (3, 3), (0, 3), (1, 1), (0, 2)]).unwrap();
        let h = s.hull();
        let k = h.vertices.len();
        assert_eq!(k, 4);
        for i in 0..k {
            let a = s.point(h.vertices[i]);
            let b = s.point(h.vertices[(i + 1) % k]);
            let c = s.point(h.vertices[(i + 2) % k]);
            assert_eq!(orient(a, b, c), Orientation::CounterClockwise);
        }
        assert_eq!(h.on_edge, vec![5]);
        assert_eq!(h.interior, vec![4]);
    }

    #[test]
    fn radial_examples() {
        let c = PointSet::from_coords(&[(0, 0), (1, 0), (2, 0)]).unwrap();
        assert_eq!(radial_order(&c, 0).unwrap(), vec![vec![1, 2]]);

        let sq = PointSet::from_coords(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(
            radial_order(&sq, 0).unwrap(),
            vec![vec![1], vec![2], vec![3]]
        );

        let grid = PointSet::from_coords(&[
            (0, 0),
            (1, 0),
            (2, 0),
            (0, 1),
            (1, 1),
            (2, 1),
            (0, 2),
            (1, 2),
            (2, 2),
        ])
        .unwrap();
        let r = radial_order(&grid, 0).unwrap();
        assert!(r.contains(&vec![4, 8]));
        assert_eq!(r[0], vec![1, 2]);
    }

    #[test]
    fn polygon_containment_examples() {
        let sq = [p(0, 0), p(2, 0), p(2, 2), p(0, 2)];
        assert_eq!(point_vs_polygon(&sq, p(1, 1)).unwrap(), Containment::Inside);
        assert_eq!(
            point_vs_polygon(&sq, p(1, 0)).unwrap(),
            Containment::Boundary
        );
        assert_eq!(
            point_vs_polygon(&sq, p(3, 3)).unwrap(),
            Containment::Outside
        );
        // Ray through a vertex must not double count.
        assert_eq!(
            point_vs_polygon(&sq, p(-1, 2)).unwrap(),
            Containment::Outside
        );
        let bow = [p(0, 0), p(2, 2), p(2, 0), p(0, 2)];
        assert!(matches!(
            point_vs_polygon(&bow, p(1, 1)),
            Err(Error::NotSimple(_))
        ));
    }

    #[test]
    fn ring_simplicity() {
        assert!(check_simple_ring(&[p(0, 0), p(1, 0), p(2, 0)]).is_err());
        assert!(check_simple_ring(&[p(0, 0), p(1, 0), p(2, 0), p(1, 1)]).is_ok());
        assert!(check_simple_ring(&[p(0, 0), p(2, 0), p(1, 0), p(1, 1)]).is_err());
    }

    #[test]
    fn duplicate_points_rejected() {
        let e = PointSet::from_coords(&[(0, 0), (1, 1), (0, 0)]).unwrap_err();
        assert!(matches!(
            e,
            Error::DuplicatePoint {
                first: 0,
                second: 2,
                ..
            }
        ));
        assert!(PointSet::from_coords(&[(COORD_BOUND + 1, 0)]).is_err());
    }
}
