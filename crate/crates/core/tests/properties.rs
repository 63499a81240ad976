use std::collections::BTreeSet;

use proptest::prelude::*;

use noncross::cli::CountReport;
use noncross::constructions::enumerate_vv_paths;
use noncross::counting::{estimate, vv_ham_lower, EstimateReport};
use noncross::generators::FamilySpec;
use noncross::geom::{locate_in_ring, orient, segment_relation, Containment};
use noncross::io::{parse_points, to_json, to_text};
use noncross::params::{params, ParamReport};
use noncross::paths::{
    count_ham_paths, count_paths, enumerate_ham_paths, enumerate_paths, is_noncrossing_path,
    path_children, path_children_direct,
};
use noncross::surround::{
    canonical_parent, count_polygonalizations, count_surrounding, enumerate_surrounding,
    is_surrounding_polygon, polygon_children,
};
use noncross::{EnumOptions, PathSeq, Point, PointSet, Polygon};

fn point() -> impl Strategy<Value = Point> {
    (-4i64..=4, -4i64..=4).prop_map(|(x, y)| Point::new(x, y))
}

fn point_set(max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set((0i64..6, 0i64..6), 1..=max)
        .prop_flat_map(|set| Just(set.into_iter().collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| PointSet::from_coords(&v).unwrap())
}

fn det() -> EnumOptions {
    EnumOptions::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn orientation_is_antisymmetric_and_cyclic(p in point(), q in point(), r in point()) {
        let o = orient(p, q, r);
        prop_assert_eq!(orient(q, p, r), o.reversed());
        prop_assert_eq!(orient(q, r, p), o);
    }

    #[test]
    fn segment_relation_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
        prop_assume!(a != b && c != d);
        let r = segment_relation(a, b, c, d);
        prop_assert_eq!(segment_relation(c, d, a, b), r);
        prop_assert_eq!(segment_relation(b, a, d, c), r);
    }

    #[test]
    fn hull_partitions_points(s in point_set(10)) {
        let h = s.hull();
        let mut all: Vec<usize> = h.vertices.iter().chain(&h.on_edge).chain(&h.interior).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..s.len()).collect::<Vec<_>>());
        if !h.degenerate {
            let ring: Vec<Point> = h.vertices.iter().map(|&i| s.point(i)).collect();
            for &i in &h.interior {
                prop_assert_eq!(locate_in_ring(&ring, s.point(i)), Containment::Inside);
            }
            for &i in &h.on_edge {
                prop_assert_eq!(locate_in_ring(&ring, s.point(i)), Containment::Boundary);
            }
        }
    }

    #[test]
    fn radial_groups_cover_other_points(s in point_set(9), o in 0usize..9) {
        prop_assume!(o < s.len());
        let mut seen: Vec<usize> = s.radial(o).iter().flatten().copied().collect();
        seen.sort_unstable();
        let want: Vec<usize> = (0..s.len()).filter(|&i| i != o).collect();
        prop_assert_eq!(seen, want);
    }

    #[test]
    fn emitted_paths_are_valid_and_distinct(s in point_set(6)) {
        let mut seen = BTreeSet::new();
        let mut ok = true;
        enumerate_paths(&s, &det(), &mut |p| {
            ok &= is_noncrossing_path(&s, p).unwrap();
            ok &= seen.insert(p.to_vec());
            let mut rev = p.to_vec();
            rev.reverse();
            ok &= is_noncrossing_path(&s, &rev).unwrap();
        });
        prop_assert!(ok);
    }

    #[test]
    fn radial_children_match_direct_children(s in point_set(7), seed in any::<u64>()) {
        let mut seq = PathSeq::new(vec![]);
        let mut rng = seed;
        loop {
            let mut a = path_children(&s, &seq).unwrap();
            let mut b = path_children_direct(&s, &seq).unwrap();
            a.sort();
            b.sort();
            prop_assert_eq!(&a, &b);
            if a.is_empty() {
                break;
            }
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            seq = a[(rng >> 33) as usize % a.len()].clone();
        }
    }

    #[test]
    fn reverse_search_is_consistent(s in point_set(7)) {
        let mut ok = true;
        let mut polys = Vec::new();
        enumerate_surrounding(&s, &det(), &mut |v| polys.push(v.to_vec())).unwrap();
        for v in polys {
            ok &= is_surrounding_polygon(&s, &v).unwrap();
            let poly = Polygon::canonical(&s, &v);
            for child in polygon_children(&s, &poly).unwrap() {
                ok &= canonical_parent(&s, &child).unwrap() == Some(poly.clone());
            }
        }
        prop_assert!(ok);
    }

    #[test]
    fn parallel_counts_match(s in point_set(7)) {
        let par = EnumOptions::parallel();
        prop_assert_eq!(count_paths(&s, &det()).count, count_paths(&s, &par).count);
        prop_assert_eq!(count_ham_paths(&s, &det()).count, count_ham_paths(&s, &par).count);
        prop_assert_eq!(count_surrounding(&s, &det()).unwrap().count, count_surrounding(&s, &par).unwrap().count);
        prop_assert_eq!(
            count_polygonalizations(&s, &det()).unwrap().count,
            count_polygonalizations(&s, &par).unwrap().count
        );
    }

    #[test]
    fn visited_set_never_sees_a_repeat(s in point_set(7)) {
        let opts = EnumOptions { track_visited: true, ..Default::default() };
        prop_assert_eq!(count_surrounding(&s, &opts).unwrap().count, count_surrounding(&s, &det()).unwrap().count);
    }

    #[test]
    fn vv_tree_certifies_ham_lower_bound(s in point_set(7)) {
        prop_assume!(!s.is_collinear());
        let mut distinct = BTreeSet::new();
        enumerate_vv_paths(&s, &det(), &mut |p| {
            distinct.insert(PathSeq::new(p.to_vec()).canonical());
        }).unwrap();
        let k = params(&s).offline_k;
        prop_assert!(num_bigint::BigUint::from(distinct.len()) >= vv_ham_lower(k));
        prop_assert!(distinct.len() as u64 <= count_ham_paths(&s, &det()).count);
    }

    #[test]
    fn estimate_scales_are_sane(s in point_set(12)) {
        let e = estimate(&s).unwrap();
        for x in [e.path_scale, e.ham_scale, e.poly_scale, e.proven_ham_lower_log2] {
            prop_assert!(x.is_finite() && x >= 0.0);
        }
        prop_assert!(e.ham_scale <= e.path_scale);
        prop_assert_eq!(e.ham_scale == 0.0, e.offline_k == 0);
    }

    #[test]
    fn interior_point_does_not_lower_inhull(s in point_set(8)) {
        let h = s.hull();
        prop_assume!(!h.degenerate);
        // Tripling all coordinates keeps the parameters; the sum of three hull
        // vertices is then strictly inside their triangle.
        let mut pts: Vec<Point> = s.points().iter().map(|p| Point::new(3 * p.x, 3 * p.y)).collect();
        let [a, b, c] = [0, 1, 2].map(|i| s.point(h.vertices[i]));
        let p = Point::new(a.x + b.x + c.x, a.y + b.y + c.y);
        prop_assume!(!pts.contains(&p));
        let scaled = PointSet::new(pts.clone()).unwrap();
        pts.push(p);
        let t = PointSet::new(pts).unwrap();
        prop_assert_eq!(params(&scaled).inhull_h, params(&s).inhull_h);
        prop_assert!(params(&t).inhull_h > params(&s).inhull_h);
    }

    #[test]
    fn point_files_round_trip(s in point_set(12)) {
        prop_assert_eq!(&parse_points(&to_text(&s)).unwrap(), &s);
        prop_assert_eq!(&parse_points(&to_json(&s)).unwrap(), &s);
    }

    #[test]
    fn reports_round_trip_through_json(s in point_set(7)) {
        let p = params(&s);
        prop_assert_eq!(serde_json::from_str::<ParamReport>(&serde_json::to_string(&p).unwrap()).unwrap(), p);
        let e = estimate(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<EstimateReport>(&serde_json::to_string(&e).unwrap()).unwrap(), e);
        let outcome = enumerate_ham_paths(&s, &det(), &mut |_| {});
        let c = CountReport {
            n: s.len(),
            classes: vec![noncross::cli::ClassCount { class: noncross::StructureClass::Ham, outcome }],
        };
        prop_assert_eq!(serde_json::from_str::<CountReport>(&serde_json::to_string(&c).unwrap()).unwrap(), c);
    }

    #[test]
    fn family_specs_round_trip(n in 1usize..40, seed in any::<u64>(), bound in 1i64..1000) {
        for spec in [
            FamilySpec::Convex { n },
            FamilySpec::Grid { rows: n, cols: n + 1 },
            FamilySpec::Random { n, seed, bound },
        ] {
            prop_assert_eq!(spec.to_string().parse::<FamilySpec>().unwrap(), spec);
        }
    }
}
