//! The two structural parameters of a point set: how far it is from being
//! collinear (`offline`) and how many points are strictly inside its hull
//! (`inhull`).

use serde::{Deserialize, Serialize};

use crate::geom::{cross, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamReport {
    pub n: usize,
    pub offline_k: usize,
    pub inhull_h: usize,
    pub m: usize,
    pub max_collinear: usize,
    /// Two points spanning a largest collinear subset; `None` when `n < 2`.
    pub witness_line: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxCollinear {
    pub size: usize,
    pub witness_line: Option<(usize, usize)>,
}

/// Largest number of points on a common line, by counting over all pairs.
pub fn max_collinear(s: &PointSet) -> MaxCollinear {
    let n = s.len();
    if n < 2 {
        return MaxCollinear {
            size: n,
            witness_line: None,
        };
    }
    let pts = s.points();
    let mut best = MaxCollinear {
        size: 2,
        witness_line: Some((0, 1)),
    };
    for i in 0..n {
        for j in i + 1..n {
            let on_line = (0..n)
                .filter(|&r| cross(pts[i], pts[j], pts[r]) == 0)
                .count();
            if on_line > best.size {
                best = MaxCollinear {
                    size: on_line,
                    witness_line: Some((i, j)),
                };
            }
        }
    }
    best
}

/// Points on the line through the witness pair, in index order.
pub fn witness_points(s: &PointSet, line: (usize, usize)) -> Vec<usize> {
    let (a, b) = (s.point(line.0), s.point(line.1));
    (0..s.len())
        .filter(|&r| cross(a, b, s.point(r)) == 0)
        .collect()
}

pub fn offline(s: &PointSet) -> usize {
    s.len() - max_collinear(s).size
}

/// Number of points strictly interior to the hull; on-edge points are boundary.
pub fn inhull(s: &PointSet) -> usize {
    s.hull().interior.len()
}

pub fn params(s: &PointSet) -> ParamReport {
    let mc = max_collinear(s);
    let offline_k = s.len() - mc.size;
    let inhull_h = inhull(s);
    ParamReport {
        n: s.len(),
        offline_k,
        inhull_h,
        m: offline_k.min(inhull_h),
        max_collinear: mc.size,
        witness_line: mc.witness_line,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_collinear, gen_convex, gen_grid};

    #[test]
    fn examples() {
        let grid = gen_grid(3, 3).unwrap();
        assert_eq!(max_collinear(&grid).size, 3);
        assert_eq!(offline(&grid), 6);
        assert_eq!(inhull(&grid), 1);

        let para = gen_convex(5).unwrap();
        assert_eq!(max_collinear(&para).size, 2);
        assert_eq!(offline(&para), 3);
        assert_eq!(inhull(&para), 0);

        let col = gen_collinear(4).unwrap();
        assert_eq!(max_collinear(&col).size, 4);
        assert_eq!(offline(&col), 0);
        assert_eq!(inhull(&col), 0);

        let sc = PointSet::from_coords(&[(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)]).unwrap();
        assert_eq!(inhull(&sc), 1);
    }

    #[test]
    fn tiny_sets() {
        let one = PointSet::from_coords(&[(1, 1)]).unwrap();
        let r = params(&one);
        assert_eq!((r.max_collinear, r.offline_k, r.inhull_h), (1, 0, 0));
        assert_eq!(r.witness_line, None);
        let two = PointSet::from_coords(&[(1, 1), (3, 2)]).unwrap();
        assert_eq!(params(&two).max_collinear, 2);
    }

    #[test]
    fn witness_spans_the_maximum() {
        let grid = gen_grid(3, 4).unwrap();
        let r = params(&grid);
        let line = r.witness_line.unwrap();
        assert_eq!(witness_points(&grid, line).len(), r.max_collinear);
        assert_eq!(r.max_collinear, 4);
    }
}
