//! Brute-force reference enumerators.
//!
//! These generate every candidate sequence and keep the ones accepted by the
//! validators. They share nothing with the search code in `paths` and
//! `surround` beyond the validators and canonical forms, so agreement between
//! the two is meaningful.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::paths::{is_noncrossing_path, list_paths};
use crate::structure::{canonical_path, PathSeq, Polygon, StructureClass};
use crate::surround::{is_surrounding_polygon, list_polygons};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLimits {
    /// Largest `n` accepted by the path oracles.
    pub paths: usize,
    /// Largest `n` accepted by the polygon oracles.
    pub surround: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            paths: 9,
            surround: 8,
        }
    }
}

fn check_limit(s: &PointSet, limit: usize) -> Result<()> {
    if s.len() > limit {
        Err(Error::TooLarge { n: s.len(), limit })
    } else {
        Ok(())
    }
}

/// Calls `f` on every ordered sequence of distinct elements of `items` of length `min_len..=max_len`.
fn for_each_arrangement(
    items: &[usize],
    min_len: usize,
    max_len: usize,
    f: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    fn rec(
        items: &[usize],
        used: &mut [bool],
        cur: &mut Vec<usize>,
        min_len: usize,
        max_len: usize,
        f: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if cur.len() >= min_len {
            f(cur)?;
        }
        if cur.len() == max_len {
            return Ok(());
        }
        for i in 0..items.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            cur.push(items[i]);
            rec(items, used, cur, min_len, max_len, f)?;
            cur.pop();
            used[i] = false;
        }
        Ok(())
    }
    let mut used = vec![false; items.len()];
    rec(items, &mut used, &mut Vec::new(), min_len, max_len, f)
}

fn brute_path_list(s: &PointSet, limit: usize, hamiltonian: bool) -> Result<Vec<PathSeq>> {
    check_limit(s, limit)?;
    let n = s.len();
    let all: Vec<usize> = (0..n).collect();
    let min_len = if hamiltonian { n.max(1) } else { 1 };
    let mut out = Vec::new();
    for_each_arrangement(&all, min_len, n, &mut |seq| {
        let one_way = seq.len() == 1 || seq[0] < seq[seq.len() - 1];
        if one_way && is_noncrossing_path(s, seq)? {
            out.push(canonical_path(seq));
        }
        Ok(())
    })?;
    out.sort();
    Ok(out)
}

/// All non-crossing paths, one orientation each, sorted.
pub fn brute_paths(s: &PointSet, limit: usize) -> Result<Vec<PathSeq>> {
    brute_path_list(s, limit, false)
}

pub fn brute_ham(s: &PointSet, limit: usize) -> Result<Vec<PathSeq>> {
    brute_path_list(s, limit, true)
}

fn brute_polygon_list(s: &PointSet, limit: usize, full_only: bool) -> Result<Vec<Polygon>> {
    check_limit(s, limit)?;
    let n = s.len();
    if n < 3 {
        return Ok(Vec::new());
    }
    let hull = s.hull();
    let optional: Vec<usize> = (0..n).filter(|&i| !hull.is_vertex(i)).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << optional.len()) {
        if full_only && mask.count_ones() as usize != optional.len() {
            continue;
        }
        let mut verts: Vec<usize> = hull.vertices.clone();
        verts.extend(
            optional
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &i)| i),
        );
        verts.sort_unstable();
        if verts.len() < 3 {
            continue;
        }
        let (first, rest) = verts.split_first().unwrap();
        let k = rest.len();
        for_each_arrangement(rest, k, k, &mut |perm| {
            // Fixing the first vertex removes rotations; the endpoint test removes reflections.
            if perm[0] > perm[k - 1] {
                return Ok(());
            }
            let mut cyc = Vec::with_capacity(k + 1);
            cyc.push(*first);
            cyc.extend_from_slice(perm);
            if is_surrounding_polygon(s, &cyc)? {
                out.push(Polygon::canonical(s, &cyc));
            }
            Ok(())
        })?;
    }
    out.sort();
    Ok(out)
}

/// All surrounding polygons in canonical form, sorted.
pub fn brute_surround(s: &PointSet, limit: usize) -> Result<Vec<Polygon>> {
    brute_polygon_list(s, limit, false)
}

pub fn brute_poly(s: &PointSet, limit: usize) -> Result<Vec<Polygon>> {
    brute_polygon_list(s, limit, true)
}

/// Bit strings of length `n` with `ell` ones avoiding the factor `010`, by dynamic programming.
pub fn dp_010_avoiding(n: usize, ell: usize) -> BigUint {
    // State: (second-to-last bit, last bit, ones so far); bit 2 marks "absent".
    let mut table: BTreeMap<(u8, u8, usize), BigUint> = BTreeMap::new();
    table.insert((2, 2, 0), BigUint::one());
    for _ in 0..n {
        let mut next: BTreeMap<(u8, u8, usize), BigUint> = BTreeMap::new();
        for ((a, b, ones), ways) in &table {
            for bit in [0u8, 1] {
                if *a == 0 && *b == 1 && bit == 0 {
                    continue;
                }
                let ones = ones + bit as usize;
                if ones > ell {
                    continue;
                }
                *next.entry((*b, bit, ones)).or_insert_with(BigUint::zero) += ways;
            }
        }
        table = next;
    }
    table
        .into_iter()
        .filter(|((_, _, ones), _)| *ones == ell)
        .map(|(_, w)| w)
        .sum()
}

/// Supplier of the structures under test.
pub trait StructureSource {
    fn paths(&self, s: &PointSet, hamiltonian: bool) -> Result<Vec<PathSeq>>;
    fn polygons(&self, s: &PointSet, full_only: bool) -> Result<Vec<Polygon>>;
}

/// The library's search-based enumerators in deterministic mode.
pub struct FastEnumerators;

impl StructureSource for FastEnumerators {
    fn paths(&self, s: &PointSet, hamiltonian: bool) -> Result<Vec<PathSeq>> {
        Ok(list_paths(s, hamiltonian))
    }

    fn polygons(&self, s: &PointSet, full_only: bool) -> Result<Vec<Polygon>> {
        list_polygons(s, full_only)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// Produced by the source under test but not by the oracle.
    Spurious,
    /// Produced by the oracle but missed by the source.
    Missing,
    /// Emitted more than once by the source.
    Duplicate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class: StructureClass,
    pub fast_count: u64,
    pub oracle_count: u64,
    pub sets_equal: bool,
    /// Shortest, then lexicographically least, offending structure.
    pub witness: Option<Witness>,
}

impl ClassReport {
    pub fn ok(&self) -> bool {
        self.sets_equal && self.fast_count == self.oracle_count
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub n: usize,
    pub classes: Vec<ClassReport>,
}

impl CrossCheckReport {
    pub fn all_equal(&self) -> bool {
        self.classes.iter().all(ClassReport::ok)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &ClassReport> {
        self.classes.iter().filter(|c| !c.ok())
    }
}

fn compare(
    class: StructureClass,
    mut fast: Vec<Vec<usize>>,
    oracle: Vec<Vec<usize>>,
) -> ClassReport {
    let fast_count = fast.len() as u64;
    fast.sort();
    let key = |v: &Vec<usize>| (v.len(), v.clone());
    let mut candidates: Vec<Witness> = Vec::new();
    if let Some(w) = fast
        .windows(2)
        .filter(|w| w[0] == w[1])
        .map(|w| w[0].clone())
        .min_by_key(key)
    {
        candidates.push(Witness {
            kind: WitnessKind::Duplicate,
            vertices: w,
        });
    }
    fast.dedup();
    let sets_equal = fast == oracle;
    if !sets_equal {
        let spurious = fast
            .iter()
            .filter(|v| oracle.binary_search(v).is_err())
            .min_by_key(|v| key(v));
        let missing = oracle
            .iter()
            .filter(|v| fast.binary_search(v).is_err())
            .min_by_key(|v| key(v));
        for (kind, v) in [
            (WitnessKind::Spurious, spurious),
            (WitnessKind::Missing, missing),
        ] {
            if let Some(v) = v {
                candidates.push(Witness {
                    kind,
                    vertices: v.clone(),
                });
            }
        }
    }
    let witness = candidates.into_iter().min_by_key(|w| key(&w.vertices));
    ClassReport {
        class,
        fast_count,
        oracle_count: oracle.len() as u64,
        sets_equal,
        witness,
    }
}

/// Compares `source` against the oracles on all four structure classes.
pub fn cross_check_with(
    source: &dyn StructureSource,
    s: &PointSet,
    limits: OracleLimits,
) -> Result<CrossCheckReport> {
    let unwrap_paths = |v: Vec<PathSeq>| v.into_iter().map(|p| p.0).collect::<Vec<_>>();
    let unwrap_polys = |v: Vec<Polygon>| {
        v.into_iter()
            .map(|p| p.vertices().to_vec())
            .collect::<Vec<_>>()
    };
    let classes = vec![
        compare(
            StructureClass::Path,
            unwrap_paths(source.paths(s, false)?),
            unwrap_paths(brute_paths(s, limits.paths)?),
        ),
        compare(
            StructureClass::Ham,
            unwrap_paths(source.paths(s, true)?),
            unwrap_paths(brute_ham(s, limits.paths)?),
        ),
        compare(
            StructureClass::Surround,
            unwrap_polys(source.polygons(s, false)?),
            unwrap_polys(brute_surround(s, limits.surround)?),
        ),
        compare(
            StructureClass::Poly,
            unwrap_polys(source.polygons(s, true)?),
            unwrap_polys(brute_poly(s, limits.surround)?),
        ),
    ];
    Ok(CrossCheckReport {
        n: s.len(),
        classes,
    })
}

pub fn cross_check(s: &PointSet, limits: OracleLimits) -> Result<CrossCheckReport> {
    cross_check_with(&FastEnumerators, s, limits)
}

/// Oracle counts for one instance, as stored in the fixture file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureCounts {
    pub path: u64,
    pub ham: u64,
    pub surround: u64,
    pub poly: u64,
}

pub fn oracle_counts(s: &PointSet, limits: OracleLimits) -> Result<FixtureCounts> {
    Ok(FixtureCounts {
        path: brute_paths(s, limits.paths)?.len() as u64,
        ham: brute_ham(s, limits.paths)?.len() as u64,
        surround: brute_surround(s, limits.surround)?.len() as u64,
        poly: brute_poly(s, limits.surround)?.len() as u64,
    })
}

/// Named instances recorded in the regression fixture file.
pub fn fixture_instances() -> Result<Vec<(String, PointSet)>> {
    use crate::generators::{
        gen_collinear, gen_convex, gen_grid, gen_one_sided, gen_pseudotriangle,
    };
    let mut out = vec![
        (
            "square_center".to_string(),
            PointSet::from_coords(&[(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)])?,
        ),
        ("collinear_3".to_string(), gen_collinear(3)?),
        ("convex_4".to_string(), gen_convex(4)?),
        ("grid_3x3".to_string(), gen_grid(3, 3)?),
        ("one_sided_4_3".to_string(), gen_one_sided(4, 3)?.0),
    ];
    for n in 3..=7 {
        out.push((format!("pseudotriangle_{n}"), gen_pseudotriangle(n)?));
    }
    Ok(out)
}

/// Oracle counts for every fixture instance, keyed by name.
pub fn fixture_table() -> Result<BTreeMap<String, FixtureCounts>> {
    let limits = OracleLimits {
        paths: 9,
        surround: 9,
    };
    fixture_instances()?
        .into_iter()
        .map(|(name, s)| Ok((name, oracle_counts(&s, limits)?)))
        .collect()
}
