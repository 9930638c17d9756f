use proptest::prelude::*;

use plane_trees::book::compile_book;
use plane_trees::cylindrical::{compile_layout, solve_cylindrical, SweepOptions};
use plane_trees::drawing::{all_edges, induced_subdrawing, merge_colors, Edge, EdgeSet};
use plane_trees::generators::{gen_book, gen_coloring, gen_cylindrical, gen_points};
use plane_trees::io;
use plane_trees::pseudolinear::compile_points;
use plane_trees::search::{find_plane_tree, SearchMode};
use plane_trees::{is_plane, validate_drawing, Drawing};

fn drawing(kind: u8, n: usize, seed: u64) -> Drawing {
    match kind % 3 {
        0 => compile_layout(&gen_cylindrical(n / 2, n - n / 2, seed).unwrap()).unwrap(),
        1 => compile_book(&gen_book(n, seed).unwrap()),
        _ => compile_points(&gen_points(n, seed).unwrap()),
    }
}

fn subset(n: usize, bits: u64) -> EdgeSet {
    all_edges(n).enumerate().filter(|(i, _)| bits >> (i % 64) & 1 == 1).map(|(_, e)| e).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plane_is_closed_under_subsets(kind in 0u8..3, n in 3usize..9, seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let d = drawing(kind, n, seed);
        let big = subset(n, a);
        let small: EdgeSet = big.iter().copied().filter(|e| b >> (e.index(n) % 64) & 1 == 1).collect();
        if is_plane(&d, &big) {
            prop_assert!(is_plane(&d, &small));
        }
    }

    #[test]
    fn induced_subdrawings_compose(kind in 0u8..3, n in 4usize..9, seed in any::<u64>(), perm_seed in any::<u64>()) {
        let d = drawing(kind, n, seed);
        let c = gen_coloring(n, 3, seed).unwrap();
        let mut outer: Vec<usize> = (0..n).collect();
        // deterministic shuffle from the seed
        for i in (1..n).rev() {
            outer.swap(i, (perm_seed as usize >> (i % 32)) % (i + 1));
        }
        let outer = &outer[..n - 1];
        let inner: Vec<usize> = (0..outer.len() - 1).rev().collect();
        let (d1, c1) = induced_subdrawing(&d, &c, outer).unwrap();
        let (d2, c2) = induced_subdrawing(&d1, &c1, &inner).unwrap();
        let direct: Vec<usize> = inner.iter().map(|&i| outer[i]).collect();
        let (d3, c3) = induced_subdrawing(&d, &c, &direct).unwrap();
        prop_assert_eq!(d2, d3);
        prop_assert_eq!(c2, c3);
    }

    #[test]
    fn merging_preserves_hypochromatic_existence(kind in 0u8..3, n in 3usize..7, seed in any::<u64>(), k in 3usize..5) {
        let d = drawing(kind, n, seed);
        let c = gen_coloring(n, k, seed).unwrap();
        let hypo = find_plane_tree(&d, &c, SearchMode::Hypochromatic).unwrap().is_found();
        let merged = (0..k).any(|r| find_plane_tree(&d, &merge_colors(&c, r), SearchMode::Avoid(0)).unwrap().is_found());
        prop_assert_eq!(hypo, merged);
    }

    #[test]
    fn swapping_colors_swaps_trees(kind in 0u8..3, n in 3usize..7, seed in any::<u64>()) {
        let d = drawing(kind, n, seed);
        let c = gen_coloring(n, 2, seed).unwrap();
        let s = c.complement();
        for x in 0..2 {
            let a = find_plane_tree(&d, &c, SearchMode::Monochromatic(Some(x))).unwrap();
            let b = find_plane_tree(&d, &s, SearchMode::Monochromatic(Some(1 - x))).unwrap();
            prop_assert_eq!(a.is_found(), b.is_found());
            prop_assert_eq!(a.tree, b.tree);
        }
    }

    #[test]
    fn generators_are_deterministic_and_valid(ni in 0usize..5, no in 0usize..5, n in 2usize..12, seed in any::<u64>()) {
        prop_assume!(ni + no >= 2);
        let l = gen_cylindrical(ni, no, seed).unwrap();
        prop_assert_eq!(io::serialize_cylindrical(&l), io::serialize_cylindrical(&gen_cylindrical(ni, no, seed).unwrap()));
        prop_assert!(validate_drawing(&compile_layout(&l).unwrap()).is_empty());
        let b = gen_book(n, seed).unwrap();
        prop_assert_eq!(io::serialize_book(&b), io::serialize_book(&gen_book(n, seed).unwrap()));
        prop_assert!(validate_drawing(&compile_book(&b)).is_empty());
        let p = gen_points(n, seed).unwrap();
        prop_assert_eq!(io::serialize_points(&p), io::serialize_points(&gen_points(n, seed).unwrap()));
        prop_assert!(validate_drawing(&compile_points(&p)).is_empty());
    }

    #[test]
    fn formats_round_trip(ni in 1usize..5, no in 1usize..5, seed in any::<u64>()) {
        let l = gen_cylindrical(ni, no, seed).unwrap();
        prop_assert_eq!(&io::parse_cylindrical(&io::serialize_cylindrical(&l)).unwrap(), &l);
        let d = compile_layout(&l).unwrap();
        let text = io::serialize_drawing(&d, Some(l.coloring()));
        prop_assert_eq!(io::parse_drawing(&text).unwrap(), (d.clone(), Some(l.coloring().clone())));
        let bare = Drawing::new(d.n(), d.crossings().iter().copied());
        prop_assert_eq!(io::parse_class_file(&io::serialize_class_record(&bare)).unwrap(), vec![bare]);
    }

    #[test]
    fn cylindrical_solver_output_holds(ni in 0usize..6, no in 0usize..6, seed in any::<u64>()) {
        prop_assume!(ni + no >= 2);
        let l = gen_cylindrical(ni, no, seed).unwrap();
        let r = solve_cylindrical(&l, SweepOptions { assert_invariants: true }).unwrap();
        let d = compile_layout(&l).unwrap();
        prop_assert!(r.is_found(), "{}", r.to_text());
        prop_assert!(r.output_violations(&d, l.coloring()).is_empty());
        prop_assert!(r.color.is_some());
        prop_assert!(r.failed_checks().next().is_none());
    }
}

#[test]
fn edge_from_index_is_inverse() {
    for n in 2..12 {
        for (i, e) in all_edges(n).enumerate() {
            assert_eq!(Edge::from_index(i, n), e);
        }
    }
}
