//! Exact closed-form counts and logarithmic size estimates.
//!
//! The estimates are scale proxies: the true log-counts are within constant
//! factors of them, with constants that are not known explicitly. Only
//! `proven_ham_lower_log2` is an exact bound.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::params::params;

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// Binomial coefficient, zero when `k > n`.
pub fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        BigUint::zero()
    } else {
        binomial(big(n), big(k))
    }
}

/// Binomial coefficient extended to any integer top by `C(m, 0) = 1` and `C(m, j) = 0` for `j > m`.
fn binom_ext(m: i64, j: i64) -> BigInt {
    if j < 0 || (j > 0 && j > m) {
        return BigInt::zero();
    }
    if j == 0 {
        return BigInt::one();
    }
    BigInt::from(binom(m as usize, j as usize))
}

/// Hamiltonian non-crossing paths of `n >= 2` points in convex position: `n 2^(n-3)`.
pub fn convex_ham_count(n: usize) -> Result<BigUint> {
    match n {
        0 | 1 => Err(Error::InvalidParameter(
            "convex_ham_count needs n >= 2".into(),
        )),
        2 => Ok(BigUint::one()),
        _ => Ok(big(n) * pow2(n - 3)),
    }
}

/// All non-crossing paths of `n` points in convex position: `n (3^(n-1) + 3) / 4`.
pub fn convex_path_count(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let pow3 = num_traits::pow(BigUint::from(3u32), n - 1);
    big(n) * (pow3 + 3u32) / 4u32
}

/// Polygonalizations of the pseudotriangle family: `(n-1) 2^(n-4)`, and 1 for the triangle.
pub fn pseudotriangle_poly_count(n: usize) -> Result<BigUint> {
    match n {
        0..=2 => Err(Error::InvalidParameter(
            "pseudotriangle_poly_count needs n >= 3".into(),
        )),
        3 => Ok(BigUint::one()),
        _ => Ok(big(n - 1) * pow2(n - 4)),
    }
}

/// Surrounding polygons of the pseudotriangle family, as a sum over `a + b + c = n - 3`
/// of `(a+1) C(a+b, a) C(b+c, b)`.
pub fn pseudotriangle_surround_count(n: usize) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::InvalidParameter(
            "pseudotriangle_surround_count needs n >= 3".into(),
        ));
    }
    let t = n - 3;
    let mut total = BigUint::zero();
    for a in 0..=t {
        for b in 0..=t - a {
            let c = t - a - b;
            total += big(a + 1) * binom(a + b, a) * binom(b + c, b);
        }
    }
    Ok(total)
}

/// First `len` coefficients of `(1 - 2x) / (1 - 3x + x²)²`.
pub fn surround_series(len: usize) -> Vec<BigUint> {
    // Denominator expands to 1 - 6x + 11x² - 6x³ + x⁴.
    let den: [i64; 4] = [6, -11, 6, -1];
    let mut c: Vec<BigInt> = Vec::with_capacity(len);
    for k in 0..len {
        let mut v = match k {
            0 => BigInt::one(),
            1 => BigInt::from(-2),
            _ => BigInt::zero(),
        };
        for (d, &w) in den.iter().enumerate() {
            if k > d {
                v += &c[k - d - 1] * w;
            }
        }
        c.push(v);
    }
    c.into_iter()
        .map(|v| v.to_biguint().expect("series coefficients are nonnegative"))
        .collect()
}

/// Bit strings of length `n` with `ell` ones and no factor `010`, by the alternating sum
/// `Σ_j (-1)^j C(n-ell-1, j) C(|n-2j|, ell-j)`.
pub fn count_010_avoiding(n: usize, ell: usize) -> Result<BigUint> {
    if ell > n {
        return Err(Error::InvalidParameter(format!(
            "ell = {ell} exceeds n = {n}"
        )));
    }
    let (n, ell) = (n as i64, ell as i64);
    let mut total = BigInt::zero();
    for j in 0..=ell {
        let top = (n - 2 * j).abs();
        let term = binom_ext(n - ell - 1, j) * binom_ext(top, ell - j);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
        .to_biguint()
        .ok_or_else(|| Error::Invariant("negative 010-avoiding count".into()))
}

/// Natural log of `C(n, k)` as a sum of logs over the shorter side.
pub fn log_binom(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    let k = k.min(n - k);
    let base = (n - k) as f64;
    Ok((1..=k).map(|i| ((base + i as f64) / i as f64).ln()).sum())
}

/// Natural log of a positive big integer, accurate to double precision.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().expect("fits in u64") as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("fits in u64") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `⌈1.5 · 2^k⌉`, the guaranteed number of Hamiltonian paths when `k = offline(S)` and S is not collinear.
pub fn vv_ham_lower(k: usize) -> BigUint {
    if k == 0 {
        BigUint::from(2u32)
    } else {
        BigUint::from(3u32) << (k - 1)
    }
}

/// `C(n - ⌈ell/2⌉, ⌊ell/2⌋)` Hamiltonian paths for `ell` points on a line and the rest on one side.
pub fn one_sided_ham_lower(n: usize, ell: usize) -> BigUint {
    binom(n - ell.div_ceil(2), ell / 2)
}

/// `C(⌊h/4⌋ + ⌈(n-h)/2⌉ - 1, ⌈(n-h)/2⌉)` polygonalizations when `h` of the `n` points lie on the hull boundary.
pub fn few_inside_poly_lower(n: usize, h: usize) -> BigUint {
    let inner = (n - h).div_ceil(2);
    match (h / 4 + inner).checked_sub(1) {
        Some(top) => binom(top, inner),
        None => BigUint::zero(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub n: usize,
    pub offline_k: usize,
    pub inhull_h: usize,
    pub m: usize,
    /// `log2 n + k log2(n / (k+1))`.
    pub path_scale: f64,
    /// `k log2(n / (k+1))`.
    pub ham_scale: f64,
    /// `m (log2(n / m) + 1)`, zero when `m = 0`.
    pub poly_scale: f64,
    /// `k + log2 1.5` for non-collinear sets, else 0.
    pub proven_ham_lower_log2: f64,
}

pub fn estimate(s: &PointSet) -> Result<EstimateReport> {
    if s.is_empty() {
        return Err(Error::InvalidParameter(
            "estimate needs at least one point".into(),
        ));
    }
    let p = params(s);
    let n = p.n as f64;
    let k = p.offline_k as f64;
    let m = p.m as f64;
    let ham_scale = k * (n / (k + 1.0)).log2();
    let poly_scale = if p.m == 0 {
        0.0
    } else {
        m * ((n / m).log2() + 1.0)
    };
    let proven = if p.offline_k == 0 {
        0.0
    } else {
        k + 1.5f64.log2()
    };
    Ok(EstimateReport {
        n: p.n,
        offline_k: p.offline_k,
        inhull_h: p.inhull_h,
        m: p.m,
        path_scale: n.log2() + ham_scale,
        ham_scale,
        poly_scale,
        proven_ham_lower_log2: proven,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_collinear, gen_convex, gen_grid};

    fn u(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn convex_formulas() {
        assert_eq!(convex_ham_count(2).unwrap(), u(1));
        assert_eq!(convex_ham_count(4).unwrap(), u(8));
        assert_eq!(convex_ham_count(8).unwrap(), u(256));
        assert!(convex_ham_count(1).is_err());
        let paths: Vec<BigUint> = (1..=6).map(convex_path_count).collect();
        assert_eq!(paths, [1u64, 3, 9, 30, 105, 369].map(u));
        // Stays exact far past u64.
        assert_eq!(convex_ham_count(80).unwrap(), u(80) << 77usize);
    }

    #[test]
    fn pseudotriangle_formulas() {
        assert_eq!(pseudotriangle_poly_count(3).unwrap(), u(1));
        assert_eq!(pseudotriangle_poly_count(4).unwrap(), u(3));
        assert_eq!(pseudotriangle_poly_count(5).unwrap(), u(8));
        assert!(pseudotriangle_poly_count(2).is_err());
        let seq: Vec<BigUint> = (3..=12)
            .map(|n| pseudotriangle_surround_count(n).unwrap())
            .collect();
        assert_eq!(
            seq,
            [1u64, 4, 13, 40, 120, 354, 1031, 2972, 8495, 24110].map(u)
        );
        let series = surround_series(31);
        for (t, c) in series.iter().enumerate() {
            assert_eq!(
                c,
                &pseudotriangle_surround_count(t + 3).unwrap(),
                "order {t}"
            );
        }
    }

    #[test]
    fn avoiding_010_examples() {
        assert_eq!(count_010_avoiding(3, 1).unwrap(), u(2));
        for n in 0..8 {
            assert_eq!(count_010_avoiding(n, 0).unwrap(), u(1));
            assert_eq!(count_010_avoiding(n, n).unwrap(), u(1));
        }
        assert!(count_010_avoiding(2, 3).is_err());
    }

    #[test]
    fn log_binom_examples() {
        assert_eq!(log_binom(9, 0).unwrap(), 0.0);
        assert!((log_binom(4, 2).unwrap() - 6f64.ln()).abs() < 1e-12);
        let exact = 30045015f64.ln();
        assert!((log_binom(30, 10).unwrap() - exact).abs() / exact < 1e-12);
        assert!(log_binom(3, 4).is_err());
        assert!((ln_big(&binom(30, 10)) - exact).abs() < 1e-12);
    }

    #[test]
    fn lower_bound_helpers() {
        assert_eq!(vv_ham_lower(6), u(96));
        assert_eq!(one_sided_ham_lower(7, 4), u(10));
        assert_eq!(few_inside_poly_lower(9, 8), u(2));
        assert_eq!(few_inside_poly_lower(3, 3), u(0));
    }

    #[test]
    fn estimate_examples() {
        let col = estimate(&gen_collinear(6).unwrap()).unwrap();
        assert_eq!(
            (col.ham_scale, col.poly_scale, col.proven_ham_lower_log2),
            (0.0, 0.0, 0.0)
        );
        let cvx = estimate(&gen_convex(7).unwrap()).unwrap();
        assert_eq!(cvx.poly_scale, 0.0);
        assert!(cvx.ham_scale > 0.0);
        let g = estimate(&gen_grid(3, 3).unwrap()).unwrap();
        assert_eq!((g.offline_k, g.inhull_h, g.m), (6, 1, 1));
        assert!((g.proven_ham_lower_log2 - (6.0 + 1.5f64.log2())).abs() < 1e-12);
        assert!(g.ham_scale <= g.path_scale);
        let one = estimate(&gen_collinear(1).unwrap()).unwrap();
        assert_eq!(one.path_scale, 0.0);
    }
}
