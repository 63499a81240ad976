//! Reverse search over surrounding polygons.
//!
//! The root is the convex hull. The parent of any other surrounding polygon
//! deletes its removable vertex of smallest index, where a vertex is
//! removable when it is not a hull vertex and the polygon without it is still
//! simple and still contains every point. Children are generated by
//! inverting that rule, so the search needs no visited set.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{
    check_simple_ring, cross, locate_in_ring, segment_relation, Containment, Point, PointSet,
    SegmentRelation,
};
use crate::paths::check_indices;
use crate::structure::{EnumOptions, EnumerationOutcome, Meter, Mode, Polygon};

fn ring_of(s: &PointSet, verts: &[usize]) -> Vec<Point> {
    verts.iter().map(|&i| s.point(i)).collect()
}

/// Every point of `s` that is not a vertex lies in the closed region of the ring.
fn surrounds_all(s: &PointSet, verts: &[usize], ring: &[Point]) -> bool {
    (0..s.len())
        .all(|z| verts.contains(&z) || locate_in_ring(ring, s.point(z)) != Containment::Outside)
}

/// Reason `verts` fails to be a surrounding polygon of `s`, if any.
pub fn surrounding_violation(s: &PointSet, verts: &[usize]) -> Result<Option<String>> {
    check_indices(s, verts)?;
    let ring = ring_of(s, verts);
    if let Err(why) = check_simple_ring(&ring) {
        return Ok(Some(format!("not simple: {why}")));
    }
    let mut is_vertex = vec![false; s.len()];
    for &v in verts {
        is_vertex[v] = true;
    }
    for (z, &vertex) in is_vertex.iter().enumerate() {
        if !vertex && locate_in_ring(&ring, s.point(z)) == Containment::Outside {
            return Ok(Some(format!("point {z} lies outside")));
        }
    }
    Ok(None)
}

/// Simple polygon on a subset of `s` whose closed region contains all of `s`.
pub fn is_surrounding_polygon(s: &PointSet, verts: &[usize]) -> Result<bool> {
    surrounding_violation(s, verts).map(|v| v.is_none())
}

/// Segment `a b` (from ring position `a_pos` to `b_pos`) against the ring's
/// other edges; `skip` lists edge start positions to ignore.
fn new_edge_clear(
    ring: &[Point],
    a_pos: usize,
    b_pos: usize,
    a: Point,
    b: Point,
    skip: &[usize],
) -> bool {
    let k = ring.len();
    for e in 0..k {
        if skip.contains(&e) {
            continue;
        }
        let (c, d) = (ring[e], ring[(e + 1) % k]);
        let rel = segment_relation(a, b, c, d);
        let touches_a = (e + 1) % k == a_pos;
        let touches_b = e == b_pos;
        let ok = if touches_a || touches_b {
            rel == SegmentRelation::ShareEndpointOnly
        } else {
            rel == SegmentRelation::Disjoint
        };
        if !ok {
            return false;
        }
    }
    true
}

struct Ctx<'a> {
    s: &'a PointSet,
    is_hull_vertex: Vec<bool>,
}

impl<'a> Ctx<'a> {
    fn new(s: &'a PointSet) -> Self {
        let mut is_hull_vertex = vec![false; s.len()];
        for &v in &s.hull().vertices {
            is_hull_vertex[v] = true;
        }
        Ctx { s, is_hull_vertex }
    }

    /// Deleting position `pos` from a valid CCW polygon leaves a valid surrounding polygon.
    fn removable(&self, verts: &[usize], ring: &[Point], pos: usize) -> bool {
        let k = verts.len();
        if k <= 3 || self.is_hull_vertex[verts[pos]] {
            return false;
        }
        let prev = (pos + k - 1) % k;
        let next = (pos + 1) % k;
        let (a, x, b) = (ring[prev], ring[pos], ring[next]);
        // A strict left turn would leave x outside the smaller polygon.
        if cross(a, x, b) > 0 {
            return false;
        }
        // Remaining edges are unchanged; only the replacement edge a-b can collide.
        let mut reduced: Vec<Point> = Vec::with_capacity(k - 1);
        let mut rverts: Vec<usize> = Vec::with_capacity(k - 1);
        for i in 0..k {
            if i != pos {
                reduced.push(ring[i]);
                rverts.push(verts[i]);
            }
        }
        let a_pos = if prev < pos { prev } else { prev - 1 };
        let b_pos = (a_pos + 1) % (k - 1);
        if !new_edge_clear(&reduced, a_pos, b_pos, a, b, &[a_pos]) {
            return false;
        }
        surrounds_all(self.s, &rverts, &reduced)
    }

    /// Position of the removable vertex with smallest index, if any.
    fn parent_position(&self, verts: &[usize], ring: &[Point]) -> Option<usize> {
        let mut order: Vec<usize> = (0..verts.len()).collect();
        order.sort_by_key(|&p| verts[p]);
        order.into_iter().find(|&p| self.removable(verts, ring, p))
    }

    /// Polygons whose canonical parent is `verts`, in (inserted index, edge position) order.
    fn children(&self, verts: &[usize]) -> Vec<Vec<usize>> {
        let s = self.s;
        let k = verts.len();
        let ring = ring_of(s, verts);
        let mut in_poly = vec![false; s.len()];
        for &v in verts {
            in_poly[v] = true;
        }
        let mut out = Vec::new();
        for (v, &inside) in in_poly.iter().enumerate() {
            if inside {
                continue;
            }
            let pv = s.point(v);
            for e in 0..k {
                let (u, w) = (ring[e], ring[(e + 1) % k]);
                // v goes between positions e and e+1.
                if !self.insertion_simple(&ring, e, u, pv, w) {
                    continue;
                }
                let mut child = Vec::with_capacity(k + 1);
                child.extend_from_slice(&verts[..=e]);
                child.push(v);
                child.extend_from_slice(&verts[e + 1..]);
                let child_ring = ring_of(s, &child);
                if !surrounds_all(s, &child, &child_ring) {
                    continue;
                }
                if self.parent_position(&child, &child_ring) == Some(e + 1) {
                    out.push(child);
                }
            }
        }
        out
    }

    /// Replacing edge `e = (u, w)` by `u -> v -> w` keeps the ring simple.
    fn insertion_simple(&self, ring: &[Point], e: usize, u: Point, v: Point, w: Point) -> bool {
        let k = ring.len();
        let rel = segment_relation(u, v, v, w);
        if rel != SegmentRelation::ShareEndpointOnly {
            return false;
        }
        for f in 0..k {
            if f == e {
                continue;
            }
            let (c, d) = (ring[f], ring[(f + 1) % k]);
            let r1 = segment_relation(u, v, c, d);
            let r2 = segment_relation(v, w, c, d);
            let ends_at_u = (f + 1) % k == e;
            let starts_at_w = f == (e + 1) % k;
            let ok1 = if ends_at_u {
                r1 == SegmentRelation::ShareEndpointOnly
            } else {
                r1 == SegmentRelation::Disjoint
            };
            let ok2 = if starts_at_w {
                r2 == SegmentRelation::ShareEndpointOnly
            } else {
                r2 == SegmentRelation::Disjoint
            };
            if !(ok1 && ok2) {
                return false;
            }
        }
        true
    }
}

fn root(s: &PointSet) -> Option<Vec<usize>> {
    let h = s.hull();
    if h.degenerate || s.len() < 3 {
        None
    } else {
        Some(h.vertices.clone())
    }
}

/// The parent of a surrounding polygon in the reverse-search tree; `None` for the hull.
pub fn canonical_parent(s: &PointSet, poly: &Polygon) -> Result<Option<Polygon>> {
    if let Some(why) = surrounding_violation(s, poly.vertices())? {
        return Err(Error::NotSimple(why));
    }
    let ctx = Ctx::new(s);
    let verts = oriented(s, poly.vertices());
    if verts.iter().all(|&v| ctx.is_hull_vertex[v]) {
        return Ok(None);
    }
    let ring = ring_of(s, &verts);
    match ctx.parent_position(&verts, &ring) {
        Some(p) => {
            let mut reduced = verts.clone();
            reduced.remove(p);
            Ok(Some(Polygon::from_ccw(&reduced)))
        }
        None => Err(Error::Invariant(format!(
            "surrounding polygon {:?} is not the hull but has no removable vertex",
            poly.vertices()
        ))),
    }
}

/// Counterclockwise copy of a simple polygon's vertex sequence.
fn oriented(s: &PointSet, verts: &[usize]) -> Vec<usize> {
    Polygon::canonical(s, verts).vertices().to_vec()
}

/// Children of `poly` in the reverse-search tree.
pub fn polygon_children(s: &PointSet, poly: &Polygon) -> Result<Vec<Polygon>> {
    if let Some(why) = surrounding_violation(s, poly.vertices())? {
        return Err(Error::NotSimple(why));
    }
    let ctx = Ctx::new(s);
    let verts = oriented(s, poly.vertices());
    Ok(ctx
        .children(&verts)
        .iter()
        .map(|c| Polygon::from_ccw(c))
        .collect())
}

#[derive(Clone, Copy)]
enum Filter {
    All,
    Full,
}

struct Search<'a> {
    ctx: Ctx<'a>,
    meter: &'a Meter,
    filter: Filter,
    visited: Option<HashSet<Polygon>>,
}

impl Search<'_> {
    fn descend(&mut self, verts: &[usize], emit: &mut dyn FnMut(&[usize])) -> Result<bool> {
        if !self.meter.visit() {
            return Ok(false);
        }
        let canon = Polygon::from_ccw(verts);
        if let Some(seen) = self.visited.as_mut() {
            if !seen.insert(canon.clone()) {
                return Err(Error::Invariant(format!(
                    "polygon {:?} reached twice",
                    canon.vertices()
                )));
            }
        }
        let wanted = match self.filter {
            Filter::All => true,
            Filter::Full => verts.len() == self.ctx.s.len(),
        };
        if wanted {
            self.meter.emitted();
            emit(canon.vertices());
        }
        if verts.len() == self.ctx.s.len() {
            return Ok(true);
        }
        for child in self.ctx.children(verts) {
            if !self.descend(&child, emit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn walk(
    s: &PointSet,
    opts: &EnumOptions,
    filter: Filter,
    emit: &mut dyn FnMut(&[usize]),
) -> Result<EnumerationOutcome> {
    let meter = Meter::new(opts);
    let Some(hull) = root(s) else {
        return Ok(EnumerationOutcome {
            degenerate: true,
            ..meter.outcome()
        });
    };
    let mut search = Search {
        ctx: Ctx::new(s),
        meter: &meter,
        filter,
        visited: opts.track_visited.then(HashSet::new),
    };
    search.descend(&hull, emit)?;
    Ok(meter.outcome())
}

fn par_walk(
    s: &PointSet,
    opts: &EnumOptions,
    filter: Filter,
    emit: &(dyn Fn(&[usize]) + Sync),
) -> Result<EnumerationOutcome> {
    let meter = Meter::new(opts);
    let Some(hull) = root(s) else {
        return Ok(EnumerationOutcome {
            degenerate: true,
            ..meter.outcome()
        });
    };
    if !meter.visit() {
        return Ok(meter.outcome());
    }
    let wanted = matches!(filter, Filter::All) || hull.len() == s.len();
    if wanted {
        meter.emitted();
        emit(Polygon::from_ccw(&hull).vertices());
    }
    let kids = Ctx::new(s).children(&hull);
    // Subtrees are disjoint, so per-subtree visited sets suffice.
    kids.par_iter().try_for_each(|child| {
        let mut search = Search {
            ctx: Ctx::new(s),
            meter: &meter,
            filter,
            visited: opts.track_visited.then(HashSet::new),
        };
        search.descend(child, &mut |p| emit(p)).map(|_| ())
    })?;
    Ok(meter.outcome())
}

/// Emits every surrounding polygon of `s` once, in canonical form.
pub fn enumerate_surrounding(
    s: &PointSet,
    opts: &EnumOptions,
    sink: &mut dyn FnMut(&[usize]),
) -> Result<EnumerationOutcome> {
    walk(s, opts, Filter::All, sink)
}

/// The surrounding polygons that use every point.
pub fn enumerate_polygonalizations(
    s: &PointSet,
    opts: &EnumOptions,
    sink: &mut dyn FnMut(&[usize]),
) -> Result<EnumerationOutcome> {
    walk(s, opts, Filter::Full, sink)
}

pub fn par_enumerate_surrounding(
    s: &PointSet,
    opts: &EnumOptions,
    sink: &(dyn Fn(&[usize]) + Sync),
) -> Result<EnumerationOutcome> {
    par_walk(s, opts, Filter::All, sink)
}

pub fn par_enumerate_polygonalizations(
    s: &PointSet,
    opts: &EnumOptions,
    sink: &(dyn Fn(&[usize]) + Sync),
) -> Result<EnumerationOutcome> {
    par_walk(s, opts, Filter::Full, sink)
}

pub fn count_surrounding(s: &PointSet, opts: &EnumOptions) -> Result<EnumerationOutcome> {
    match opts.mode {
        Mode::Deterministic => enumerate_surrounding(s, opts, &mut |_| {}),
        Mode::Parallel => par_enumerate_surrounding(s, opts, &|_| {}),
    }
}

pub fn count_polygonalizations(s: &PointSet, opts: &EnumOptions) -> Result<EnumerationOutcome> {
    match opts.mode {
        Mode::Deterministic => enumerate_polygonalizations(s, opts, &mut |_| {}),
        Mode::Parallel => par_enumerate_polygonalizations(s, opts, &|_| {}),
    }
}

/// Collects all emitted polygons of a deterministic run.
pub fn list_polygons(s: &PointSet, full_only: bool) -> Result<Vec<Polygon>> {
    let mut out = Vec::new();
    let opts = EnumOptions::default();
    let mut sink = |p: &[usize]| out.push(Polygon::from_ccw(p));
    if full_only {
        enumerate_polygonalizations(s, &opts, &mut sink)?;
    } else {
        enumerate_surrounding(s, &opts, &mut sink)?;
    }
    Ok(out)
}
