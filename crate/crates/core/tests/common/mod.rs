#![allow(dead_code)]

use noncross::generators::{
    gen_collinear, gen_convex, gen_grid, gen_one_sided, gen_pseudotriangle, gen_random,
};
use noncross::PointSet;

/// Family members with at most 8 points.
pub fn family_instances() -> Vec<(String, PointSet)> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push((format!("convex:{n}"), gen_convex(n).unwrap()));
        out.push((format!("collinear:{n}"), gen_collinear(n).unwrap()));
    }
    for n in 3..=8 {
        out.push((
            format!("pseudotriangle:{n}"),
            gen_pseudotriangle(n).unwrap(),
        ));
    }
    for r in 1..=4 {
        for c in 1..=4 {
            if r * c <= 8 && r * c >= 2 {
                out.push((format!("grid:{r}x{c}"), gen_grid(r, c).unwrap()));
            }
        }
    }
    for ell in 2..=8 {
        for off in 0..=8 - ell {
            out.push((
                format!("one_sided:{ell},{off}"),
                gen_one_sided(ell, off).unwrap().0,
            ));
        }
    }
    out.push((
        "square_center".into(),
        PointSet::from_coords(&[(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)]).unwrap(),
    ));
    out
}

/// Seeded random sets: 100 spread-out ones and 60 on a tiny grid with many collinearities.
pub fn random_instances() -> Vec<(String, PointSet)> {
    let mut out = Vec::new();
    for i in 0..100u64 {
        let n = 5 + (i % 4) as usize;
        out.push((
            format!("random:{n},{i},100"),
            gen_random(n, i, 100).unwrap(),
        ));
    }
    for i in 0..60u64 {
        let n = 5 + (i % 4) as usize;
        let seed = 1000 + i;
        out.push((
            format!("random:{n},{seed},3"),
            gen_random(n, seed, 3).unwrap(),
        ));
    }
    out
}

pub fn all_instances() -> Vec<(String, PointSet)> {
    let mut v = family_instances();
    v.extend(random_instances());
    v
}
