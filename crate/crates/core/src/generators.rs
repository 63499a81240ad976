//! Deterministic point-set families.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{cross, Point, PointSet, COORD_BOUND};

/// A generated instance, written on the command line as `FAMILY:ARGS`.
///
/// Forms: `convex:N`, `pseudotriangle:N`, `grid:RxC`, `collinear:N`,
/// `one_sided:ELL,OFF`, `random:N,SEED[,BOUND]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Convex { n: usize },
    Pseudotriangle { n: usize },
    Grid { rows: usize, cols: usize },
    Collinear { n: usize },
    OneSided { ell: usize, off: usize },
    Random { n: usize, seed: u64, bound: i64 },
}

pub const DEFAULT_RANDOM_BOUND: i64 = 100;

impl FamilySpec {
    pub fn generate(&self) -> Result<PointSet> {
        match *self {
            FamilySpec::Convex { n } => gen_convex(n),
            FamilySpec::Pseudotriangle { n } => gen_pseudotriangle(n),
            FamilySpec::Grid { rows, cols } => gen_grid(rows, cols),
            FamilySpec::Collinear { n } => gen_collinear(n),
            FamilySpec::OneSided { ell, off } => gen_one_sided(ell, off).map(|(s, _)| s),
            FamilySpec::Random { n, seed, bound } => gen_random(n, seed, bound),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Convex { n } => write!(f, "convex:{n}"),
            FamilySpec::Pseudotriangle { n } => write!(f, "pseudotriangle:{n}"),
            FamilySpec::Grid { rows, cols } => write!(f, "grid:{rows}x{cols}"),
            FamilySpec::Collinear { n } => write!(f, "collinear:{n}"),
            FamilySpec::OneSided { ell, off } => write!(f, "one_sided:{ell},{off}"),
            FamilySpec::Random { n, seed, bound } => write!(f, "random:{n},{seed},{bound}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidParameter(format!("generator spec {text:?}: {why}"));
        let (family, args) = text
            .split_once(':')
            .ok_or_else(|| bad("expected FAMILY:ARGS"))?;
        let nums = |sep: char| -> Result<Vec<u64>> {
            args.split(sep)
                .map(|a| {
                    a.trim()
                        .parse::<u64>()
                        .map_err(|_| bad("arguments must be integers"))
                })
                .collect()
        };
        let one = || -> Result<usize> {
            match nums(',')?.as_slice() {
                [n] => Ok(*n as usize),
                _ => Err(bad("expected one size")),
            }
        };
        match family {
            "convex" => Ok(FamilySpec::Convex { n: one()? }),
            "pseudotriangle" => Ok(FamilySpec::Pseudotriangle { n: one()? }),
            "collinear" => Ok(FamilySpec::Collinear { n: one()? }),
            "grid" => match nums('x')?.as_slice() {
                [r, c] => Ok(FamilySpec::Grid {
                    rows: *r as usize,
                    cols: *c as usize,
                }),
                _ => Err(bad("expected ROWSxCOLS")),
            },
            "one_sided" => match nums(',')?.as_slice() {
                [ell, off] => Ok(FamilySpec::OneSided {
                    ell: *ell as usize,
                    off: *off as usize,
                }),
                _ => Err(bad("expected ELL,OFF")),
            },
            "random" => match nums(',')?.as_slice() {
                [n, seed] => Ok(FamilySpec::Random {
                    n: *n as usize,
                    seed: *seed,
                    bound: DEFAULT_RANDOM_BOUND,
                }),
                [n, seed, bound] => Ok(FamilySpec::Random {
                    n: *n as usize,
                    seed: *seed,
                    bound: i64::try_from(*bound).map_err(|_| bad("bound too large"))?,
                }),
                _ => Err(bad("expected N,SEED[,BOUND]")),
            },
            other => Err(bad(&format!("unknown family {other:?}"))),
        }
    }
}

fn need(cond: bool, why: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(why.into()))
    }
}

fn parabola(i: usize) -> Result<Point> {
    let x = i64::try_from(i).map_err(|_| Error::Overflow)?;
    let y = x.checked_mul(x).ok_or(Error::Overflow)?;
    Ok(Point::new(x, y))
}

/// Points `(i, i²)`: strictly convex position.
pub fn gen_convex(n: usize) -> Result<PointSet> {
    need(n >= 1, "convex needs n >= 1")?;
    PointSet::new((0..n).map(parabola).collect::<Result<_>>()?)
}

/// Chain `(i, i²)` for `i < n-1` plus the apex `(n-2, -(n-2)² - 1)`.
///
/// The hull is the apex and the two chain ends; the other chain points lie
/// strictly inside and no three points are collinear.
pub fn gen_pseudotriangle(n: usize) -> Result<PointSet> {
    need(n >= 3, "pseudotriangle needs n >= 3")?;
    let mut pts: Vec<Point> = (0..n - 1).map(parabola).collect::<Result<_>>()?;
    let last = pts[n - 2];
    pts.push(Point::new(last.x, -last.y - 1));
    let s = PointSet::new(pts)?;
    let hull = s.hull();
    let mut hv = hull.vertices.clone();
    hv.sort_unstable();
    if hv != [0, n - 2, n - 1] || !hull.on_edge.is_empty() {
        return Err(Error::Invariant(format!("pseudotriangle hull is {hv:?}")));
    }
    Ok(s)
}

/// Row-major grid `{0..cols-1} x {0..rows-1}`.
pub fn gen_grid(rows: usize, cols: usize) -> Result<PointSet> {
    need(rows >= 1 && cols >= 1, "grid needs positive sizes")?;
    let mut pts = Vec::with_capacity(rows * cols);
    for y in 0..rows {
        for x in 0..cols {
            pts.push(Point::new(x as i64, y as i64));
        }
    }
    PointSet::new(pts)
}

/// Points `(i, 0)`.
pub fn gen_collinear(n: usize) -> Result<PointSet> {
    need(n >= 1, "collinear needs n >= 1")?;
    PointSet::new((0..n).map(|i| Point::new(i as i64, 0)).collect())
}

/// `ell` points `(i, 0)` followed by `off` points `(j, j² + 1)` above the x-axis.
///
/// Also returns two line points spanning the x-axis.
pub fn gen_one_sided(ell: usize, off: usize) -> Result<(PointSet, (usize, usize))> {
    need(ell >= 2, "one_sided needs ell >= 2")?;
    let mut pts: Vec<Point> = (0..ell).map(|i| Point::new(i as i64, 0)).collect();
    for j in 0..off {
        let p = parabola(j)?;
        pts.push(Point::new(p.x, p.y + 1));
    }
    Ok((PointSet::new(pts)?, (0, 1)))
}

/// `n` distinct uniform points of `[0, bound]²`, drawn with ChaCha8 seeded by `seed`.
pub fn gen_random(n: usize, seed: u64, bound: i64) -> Result<PointSet> {
    need(n >= 1, "random needs n >= 1")?;
    need(
        (0..=COORD_BOUND).contains(&bound),
        format!("bound must lie in 0..={COORD_BOUND}"),
    )?;
    let side = bound as u128 + 1;
    need(
        side * side >= n as u128,
        "bound too small for n distinct points",
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::with_capacity(n);
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let p = Point::new(rng.gen_range(0..=bound), rng.gen_range(0..=bound));
        if seen.insert(p) {
            pts.push(p);
        }
    }
    PointSet::new(pts)
}

/// No three points of `s` on a common line.
pub fn in_general_position(s: &PointSet) -> bool {
    let p = s.points();
    let n = p.len();
    (0..n).all(|i| (i + 1..n).all(|j| (j + 1..n).all(|k| cross(p[i], p[j], p[k]) != 0)))
}
