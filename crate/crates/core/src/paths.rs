//! Depth-first search over the tree of non-crossing path sequences.
//!
//! The root is the empty sequence and the parent of a sequence drops its last
//! vertex. Children are found from the cached radial order around the last
//! vertex: on each ray only the nearest point can be reached, and it is kept
//! when the new segment avoids every earlier segment.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{on_open_segment, segment_relation, PointSet, SegmentRelation};
use crate::structure::{EnumOptions, EnumerationOutcome, Meter, Mode, PathSeq};

/// Validates indices: in range and pairwise distinct.
pub(crate) fn check_indices(s: &PointSet, seq: &[usize]) -> Result<()> {
    let mut seen = vec![false; s.len()];
    for &i in seq {
        s.check_index(i)?;
        if seen[i] {
            return Err(Error::RepeatedIndex(i));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Reason a sequence fails to be a non-crossing path, if it does.
pub fn path_violation(s: &PointSet, seq: &[usize]) -> Result<Option<String>> {
    check_indices(s, seq)?;
    let pts = s.points();
    let segs: Vec<_> = seq.windows(2).map(|w| (pts[w[0]], pts[w[1]])).collect();
    for (i, &(a, b)) in segs.iter().enumerate() {
        if let Some(z) = (0..s.len()).find(|&z| on_open_segment(pts[z], a, b)) {
            return Ok(Some(format!("point {z} lies inside segment {i}")));
        }
    }
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let rel = segment_relation(segs[i].0, segs[i].1, segs[j].0, segs[j].1);
            let expected = if j == i + 1 {
                SegmentRelation::ShareEndpointOnly
            } else {
                SegmentRelation::Disjoint
            };
            if rel != expected {
                return Ok(Some(format!("segments {i} and {j}: {rel:?}")));
            }
        }
    }
    Ok(None)
}

/// True iff `seq` is the vertex sequence of a non-crossing path of `s`.
pub fn is_noncrossing_path(s: &PointSet, seq: &[usize]) -> Result<bool> {
    path_violation(s, seq).map(|v| v.is_none())
}

/// Whether segment `last -> u` extends the path without touching earlier segments.
fn segment_clear(s: &PointSet, seq: &[usize], u: usize) -> bool {
    let pts = s.points();
    let k = seq.len();
    let p = pts[seq[k - 1]];
    let q = pts[u];
    if k >= 2 {
        let prev = pts[seq[k - 2]];
        if segment_relation(prev, p, p, q) != SegmentRelation::ShareEndpointOnly {
            return false;
        }
    }
    seq.windows(2)
        .take(k.saturating_sub(2))
        .all(|w| segment_relation(pts[w[0]], pts[w[1]], p, q) == SegmentRelation::Disjoint)
}

/// Appendable vertices of a valid path, in increasing index order.
fn child_vertices(s: &PointSet, seq: &[usize], used: &[bool]) -> Vec<usize> {
    let Some(&last) = seq.last() else {
        return (0..s.len()).collect();
    };
    let mut out: Vec<usize> = s
        .radial(last)
        .iter()
        .map(|ray| ray[0])
        .filter(|&u| !used[u] && segment_clear(s, seq, u))
        .collect();
    out.sort_unstable();
    out
}

fn used_mask(s: &PointSet, seq: &[usize]) -> Vec<bool> {
    let mut used = vec![false; s.len()];
    for &i in seq {
        used[i] = true;
    }
    used
}

/// All one-vertex extensions of a valid path, via radial order.
pub fn path_children(s: &PointSet, seq: &PathSeq) -> Result<Vec<PathSeq>> {
    if let Some(why) = path_violation(s, seq.vertices())? {
        return Err(Error::NotNoncrossing(why));
    }
    let used = used_mask(s, seq.vertices());
    Ok(child_vertices(s, seq.vertices(), &used)
        .into_iter()
        .map(|u| {
            let mut v = seq.0.clone();
            v.push(u);
            PathSeq(v)
        })
        .collect())
}

/// Same contract as [`path_children`], checking every unused point directly.
pub fn path_children_direct(s: &PointSet, seq: &PathSeq) -> Result<Vec<PathSeq>> {
    if let Some(why) = path_violation(s, seq.vertices())? {
        return Err(Error::NotNoncrossing(why));
    }
    let v = seq.vertices();
    let Some(&last) = v.last() else {
        return Ok((0..s.len()).map(|i| PathSeq(vec![i])).collect());
    };
    let used = used_mask(s, v);
    let pts = s.points();
    let out = (0..s.len())
        .filter(|&u| !used[u])
        .filter(|&u| !(0..s.len()).any(|z| on_open_segment(pts[z], pts[last], pts[u])))
        .filter(|&u| segment_clear(s, v, u))
        .map(|u| {
            let mut w = v.to_vec();
            w.push(u);
            PathSeq(w)
        })
        .collect();
    Ok(out)
}

#[derive(Clone, Copy)]
enum Filter {
    All,
    Hamiltonian,
}

struct Walker<'a> {
    s: &'a PointSet,
    meter: &'a Meter,
    filter: Filter,
    path: Vec<usize>,
    used: Vec<bool>,
}

impl Walker<'_> {
    fn wants(&self) -> bool {
        let k = self.path.len();
        let n = self.s.len();
        let oriented = k == 1 || self.path[0] < self.path[k - 1];
        match self.filter {
            Filter::All => oriented,
            Filter::Hamiltonian => k == n && oriented,
        }
    }

    /// Visits the node for the current path and its subtree; `false` aborts.
    fn descend(&mut self, emit: &mut dyn FnMut(&[usize])) -> bool {
        if !self.meter.visit() {
            return false;
        }
        if self.wants() {
            self.meter.emitted();
            emit(&self.path);
        }
        for u in child_vertices(self.s, &self.path, &self.used) {
            self.path.push(u);
            self.used[u] = true;
            let ok = self.descend(emit);
            self.used[u] = false;
            self.path.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

fn walk(
    s: &PointSet,
    opts: &EnumOptions,
    filter: Filter,
    emit: &mut dyn FnMut(&[usize]),
) -> EnumerationOutcome {
    let meter = Meter::new(opts);
    if s.is_empty() {
        return meter.outcome();
    }
    // The empty root.
    if !meter.visit() {
        return meter.outcome();
    }
    for start in 0..s.len() {
        let mut w = Walker {
            s,
            meter: &meter,
            filter,
            path: vec![start],
            used: vec![false; s.len()],
        };
        w.used[start] = true;
        if !w.descend(emit) {
            break;
        }
    }
    meter.outcome()
}

fn par_walk(
    s: &PointSet,
    opts: &EnumOptions,
    filter: Filter,
    emit: &(dyn Fn(&[usize]) + Sync),
) -> EnumerationOutcome {
    let meter = Meter::new(opts);
    if s.is_empty() || !meter.visit() {
        return meter.outcome();
    }
    (0..s.len()).into_par_iter().for_each(|start| {
        let mut w = Walker {
            s,
            meter: &meter,
            filter,
            path: vec![start],
            used: vec![false; s.len()],
        };
        w.used[start] = true;
        w.descend(&mut |p| emit(p));
    });
    meter.outcome()
}

/// Emits every non-crossing path once: single vertices, and longer paths in
/// the orientation whose first index is smaller than its last.
pub fn enumerate_paths(
    s: &PointSet,
    opts: &EnumOptions,
    sink: &mut dyn FnMut(&[usize]),
) -> EnumerationOutcome {
    walk(s, opts, Filter::All, sink)
}

/// The Hamiltonian members of [`enumerate_paths`].
pub fn enumerate_ham_paths(
    s: &PointSet,
    opts: &EnumOptions,
    sink: &mut dyn FnMut(&[usize]),
) -> EnumerationOutcome {
    walk(s, opts, Filter::Hamiltonian, sink)
}

/// Parallel variants; `sink` may be called concurrently and in any order.
pub fn par_enumerate_paths(
    s: &PointSet,
    opts: &EnumOptions,
    sink: &(dyn Fn(&[usize]) + Sync),
) -> EnumerationOutcome {
    par_walk(s, opts, Filter::All, sink)
}

pub fn par_enumerate_ham_paths(
    s: &PointSet,
    opts: &EnumOptions,
    sink: &(dyn Fn(&[usize]) + Sync),
) -> EnumerationOutcome {
    par_walk(s, opts, Filter::Hamiltonian, sink)
}

pub fn count_paths(s: &PointSet, opts: &EnumOptions) -> EnumerationOutcome {
    match opts.mode {
        Mode::Deterministic => enumerate_paths(s, opts, &mut |_| {}),
        Mode::Parallel => par_enumerate_paths(s, opts, &|_| {}),
    }
}

pub fn count_ham_paths(s: &PointSet, opts: &EnumOptions) -> EnumerationOutcome {
    match opts.mode {
        Mode::Deterministic => enumerate_ham_paths(s, opts, &mut |_| {}),
        Mode::Parallel => par_enumerate_ham_paths(s, opts, &|_| {}),
    }
}

/// Collects all emitted paths of a deterministic run.
pub fn list_paths(s: &PointSet, hamiltonian: bool) -> Vec<PathSeq> {
    let mut out = Vec::new();
    let opts = EnumOptions::default();
    let mut sink = |p: &[usize]| out.push(PathSeq(p.to_vec()));
    if hamiltonian {
        enumerate_ham_paths(s, &opts, &mut sink);
    } else {
        enumerate_paths(s, &opts, &mut sink);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_collinear, gen_convex, gen_grid};

    fn seq(v: &[usize]) -> PathSeq {
        PathSeq(v.to_vec())
    }

    fn children(s: &PointSet, v: &[usize]) -> Vec<Vec<usize>> {
        path_children(s, &seq(v))
            .unwrap()
            .into_iter()
            .map(|p| p.0)
            .collect()
    }

    #[test]
    fn validator_examples() {
        let c = gen_collinear(3).unwrap();
        assert!(is_noncrossing_path(&c, &[0, 1, 2]).unwrap());
        assert!(!is_noncrossing_path(&c, &[0, 2]).unwrap());
        assert!(is_noncrossing_path(&c, &[]).unwrap());
        assert!(is_noncrossing_path(&c, &[2]).unwrap());

        let sq = PointSet::from_coords(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        // A-C, C-B, B-D: the two diagonals cross.
        assert!(!is_noncrossing_path(&sq, &[0, 2, 1, 3]).unwrap());
        assert!(is_noncrossing_path(&sq, &[0, 1, 2, 3]).unwrap());
    }

    #[test]
    fn validator_rejects_bad_indices() {
        let c = gen_collinear(3).unwrap();
        assert_eq!(
            is_noncrossing_path(&c, &[0, 7]),
            Err(Error::InvalidIndex { index: 7, n: 3 })
        );
        assert_eq!(
            is_noncrossing_path(&c, &[1, 1]),
            Err(Error::RepeatedIndex(1))
        );
    }

    #[test]
    fn crossing_later_segment_is_rejected() {
        let s = PointSet::from_coords(&[(0, 0), (4, 0), (4, 4), (2, -2)]).unwrap();
        assert!(!is_noncrossing_path(&s, &[0, 1, 2, 3]).unwrap());
        assert!(is_noncrossing_path(&s, &[2, 1, 3, 0]).unwrap());
    }

    #[test]
    fn children_examples() {
        let c = gen_collinear(3).unwrap();
        assert_eq!(children(&c, &[0]), vec![vec![0, 1]]);
        assert_eq!(children(&c, &[1]), vec![vec![1, 0], vec![1, 2]]);
        assert_eq!(children(&c, &[]).len(), 3);
        let sq = gen_convex(4).unwrap();
        assert_eq!(children(&sq, &[0]).len(), 3);
        assert!(path_children(&c, &seq(&[0, 2])).is_err());
    }

    #[test]
    fn children_match_direct_scan_on_grid() {
        let g = gen_grid(3, 3).unwrap();
        let mut stack = vec![Vec::<usize>::new()];
        let mut checked = 0;
        while let Some(p) = stack.pop() {
            let fast = path_children(&g, &seq(&p)).unwrap();
            let slow = path_children_direct(&g, &seq(&p)).unwrap();
            assert_eq!(fast, slow, "at {p:?}");
            checked += 1;
            if p.len() < 4 {
                stack.extend(fast.into_iter().map(|c| c.0));
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn small_counts() {
        let c = gen_collinear(3).unwrap();
        assert_eq!(count_paths(&c, &EnumOptions::default()).count, 6);
        assert_eq!(count_ham_paths(&c, &EnumOptions::default()).count, 1);
        let one = gen_collinear(1).unwrap();
        assert_eq!(count_paths(&one, &EnumOptions::default()).count, 1);
        assert_eq!(count_ham_paths(&one, &EnumOptions::default()).count, 1);
        let empty = PointSet::new(vec![]).unwrap();
        assert_eq!(count_paths(&empty, &EnumOptions::default()).count, 0);
        let cv = gen_convex(4).unwrap();
        assert_eq!(count_paths(&cv, &EnumOptions::default()).count, 30);
        assert_eq!(
            count_ham_paths(&gen_convex(5).unwrap(), &EnumOptions::default()).count,
            20
        );
    }

    #[test]
    fn square_with_center() {
        let s = PointSet::from_coords(&[(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)]).unwrap();
        // Independent brute force: 83 paths, 24 Hamiltonian.
        assert_eq!(count_paths(&s, &EnumOptions::default()).count, 83);
        assert_eq!(count_ham_paths(&s, &EnumOptions::default()).count, 24);
    }

    #[test]
    fn budget_truncates() {
        let cv = gen_convex(6).unwrap();
        let o = count_paths(&cv, &EnumOptions::with_max_nodes(50));
        assert!(o.truncated);
        assert_eq!(o.nodes_visited, 50);
        assert!(o.count < 369);
    }

    #[test]
    fn parallel_agrees_with_sequential() {
        let g = gen_grid(3, 3).unwrap();
        let seq_o = count_ham_paths(&g, &EnumOptions::default());
        let par_o = count_ham_paths(&g, &EnumOptions::parallel());
        assert_eq!(seq_o.count, par_o.count);
        assert_eq!(seq_o.nodes_visited, par_o.nodes_visited);
        assert_eq!(seq_o.count, 464);
    }
}
