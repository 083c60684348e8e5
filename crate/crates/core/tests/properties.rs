mod common;

use machh_core::cohomology::{induced_map_psi, reduced_betti_numbers};
use machh_core::{
    AugmentedCochainComplex, BigradedRankTable, ModularEngine, PrimeField, RationalEngine, Rationals,
    SimplicialComplex, SubsetMask,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn engine() -> RationalEngine {
    RationalEngine::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complexes_are_downward_closed(k in common::arb_complex(8, 5)) {
        for face in k.faces() {
            for v in face.vertices() {
                prop_assert!(k.contains(face.without(v)));
            }
        }
        prop_assert!(k.contains(SubsetMask::EMPTY));
        for v in 1..=k.m() {
            prop_assert!(k.contains(SubsetMask::singleton(v)));
        }
    }

    #[test]
    fn differential_squares_to_zero(k in common::arb_complex(8, 4)) {
        let e = engine();
        for p in -1..k.m() as isize - 1 {
            let row = e.assemble_row(&k, p).unwrap();
            prop_assert!(row.squares_to_zero(e.field()), "row {}", p);
            prop_assert_eq!(row.euler_of_groups(), row.euler_of_cohomology(e.field()));
        }
    }

    #[test]
    fn hh_is_even_with_vanishing_euler_characteristic(k in common::arb_complex(8, 4)) {
        let hh = engine().hh_ranks(&k).unwrap();
        if k.is_simplex() {
            prop_assert_eq!(hh, BigradedRankTable::from_entries([((0, 0), 1)]));
        } else {
            prop_assert_eq!(hh.euler_characteristic(), 0);
            prop_assert_eq!(hh.total() % 2, 0);
        }
    }

    #[test]
    fn join_convolves_tables(a in common::arb_complex(5, 3), b in common::arb_complex(4, 3)) {
        prop_assume!(a.m() + b.m() <= 9);
        let e = engine();
        let joined = a.join(&b).unwrap();
        prop_assert_eq!(joined.m(), a.m() + b.m());
        let expected = e.hh_ranks(&a).unwrap().convolve(&e.hh_ranks(&b).unwrap());
        prop_assert_eq!(e.hh_ranks(&joined).unwrap(), expected);
        let h_expected = e.h_ranks(&a).unwrap().convolve(&e.h_ranks(&b).unwrap());
        prop_assert_eq!(e.h_ranks(&joined).unwrap(), h_expected);
    }

    #[test]
    fn wedges_have_two_classes(
        a in common::arb_complex(4, 3),
        b in common::arb_complex(4, 3),
        at in (1usize..=4, 1usize..=4),
    ) {
        prop_assume!(a.m() >= 2 && b.m() >= 2);
        let w = a.wedge(1 + (at.0 - 1) % a.m(), &b, 1 + (at.1 - 1) % b.m()).unwrap();
        prop_assert_eq!(w.m(), a.m() + b.m() - 1);
        prop_assert_eq!(
            engine().hh_ranks(&w).unwrap(),
            BigradedRankTable::from_entries([((0, 0), 1), ((1, 2), 1)])
        );
    }

    #[test]
    fn gluing_leaves_other_full_subcomplexes_alone(k in common::arb_complex(7, 3), seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = StdRng::seed_from_u64(seed);
        let candidates: Vec<SubsetMask> = (0..(1u32 << k.m()))
            .map(SubsetMask::from_bits)
            .filter(|s| s.len() >= 2 && !k.contains(*s) && s.facets_of_boundary().all(|f| k.contains(f)))
            .collect();
        prop_assume!(!candidates.is_empty());
        let sigma = candidates[rng.gen_range(0..candidates.len())];
        let glued = k.glue_simplex(sigma).unwrap();
        for bits in 0..(1u32 << k.m()) {
            let j = SubsetMask::from_bits(bits);
            let same = glued.full_subcomplex(j) == k.full_subcomplex(j);
            prop_assert_eq!(same, !sigma.is_subset_of(j), "J = {}", j);
        }
    }

    #[test]
    fn full_subcomplex_keeps_exactly_the_faces_inside(k in common::arb_complex(8, 4), bits in any::<u32>()) {
        let subset = SubsetMask::from_bits(bits & ((1u32 << k.m()) - 1));
        let inside: usize = k.faces_within(subset).iter().map(Vec::len).sum();
        prop_assert_eq!(inside, k.faces().filter(|f| f.is_subset_of(subset)).count());
        prop_assert_eq!(k.full_subcomplex(subset).num_faces(), inside);
    }

    #[test]
    fn relabeling_does_not_change_tables(k in common::arb_complex(7, 4), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let e = engine();
        let reference = e.analyze(&k).unwrap();
        for _ in 0..20 {
            let perm = common::random_permutation(&mut rng, k.m());
            prop_assert_eq!(&e.analyze(&k.relabel(&perm).unwrap()).unwrap(), &reference);
        }
    }

    #[test]
    fn h_table_follows_subset_betti_numbers(k in common::arb_complex(8, 4)) {
        let field = Rationals::new();
        let h = engine().h_ranks(&k).unwrap();
        let mut total = 0;
        for bits in 0..(1u32 << k.m()) {
            total += reduced_betti_numbers(&field, &k, SubsetMask::from_bits(bits)).iter().sum::<usize>();
        }
        prop_assert_eq!(h.total(), total);
        prop_assert_eq!(h.get(machh_core::Bidegree::new(0, 0)), 1);
    }

    #[test]
    fn finite_field_ranks_dominate_rational_ranks(k in common::arb_complex(8, 4)) {
        let q = engine().analyze(&k).unwrap();
        for p in [3u64, 5, 32003] {
            let field = PrimeField::new(p).unwrap();
            let gf = ModularEngine::new(field).analyze(&k).unwrap();
            for (b, r) in q.h.iter() {
                prop_assert!(gf.h.get(b) >= r);
            }
        }
        let gf = ModularEngine::new(PrimeField::new(32003).unwrap()).analyze(&k).unwrap();
        prop_assert_eq!(gf, q);
    }

    #[test]
    fn restriction_maps_commute(k in common::arb_complex(6, 4), bits in any::<u32>()) {
        let field = Rationals::new();
        let subset = SubsetMask::from_bits(bits & ((1u32 << k.m()) - 1));
        prop_assume!(subset.len() >= 2);
        let verts: Vec<usize> = subset.vertices().collect();
        let (i, j) = (verts[0], verts[verts.len() - 1]);
        let coh = |s: SubsetMask, p: isize| AugmentedCochainComplex::of_full_subcomplex(field.clone(), &k, s).cohomology(p);
        for p in -1..subset.len() as isize - 1 {
            let top = coh(subset, p);
            let mid_i = coh(subset.without(i), p);
            let mid_j = coh(subset.without(j), p);
            let bottom = coh(subset.without(i).without(j), p);
            let via_i = induced_map_psi(&k, subset.without(i), j, &mid_i, &bottom)
                .unwrap()
                .compose(&field, &induced_map_psi(&k, subset, i, &top, &mid_i).unwrap());
            let via_j = induced_map_psi(&k, subset.without(j), i, &mid_j, &bottom)
                .unwrap()
                .compose(&field, &induced_map_psi(&k, subset, j, &top, &mid_j).unwrap());
            prop_assert_eq!(via_i.to_dense(&field), via_j.to_dense(&field));
        }
    }
}

#[test]
fn simplices_have_trivial_double_cohomology() {
    for n in 1..=5 {
        let hh = engine().hh_ranks(&SimplicialComplex::simplex(n)).unwrap();
        assert_eq!(hh, BigradedRankTable::from_entries([((0, 0), 1)]));
        assert_eq!(hh.euler_characteristic(), 1);
    }
}

#[test]
fn join_is_associative() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..50 {
        let a = common::random_complex(&mut rng, 3, 2, 2);
        let b = common::random_complex(&mut rng, 2, 2, 1);
        let c = common::random_complex(&mut rng, 3, 3, 2);
        assert_eq!(
            a.join(&b).unwrap().join(&c).unwrap(),
            a.join(&b.join(&c).unwrap()).unwrap()
        );
    }
}

#[test]
fn wedge_with_a_point_is_the_identity() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..50 {
        let k = common::random_complex(&mut rng, 5, 3, 3);
        assert_eq!(k.wedge(2, &SimplicialComplex::point(), 1).unwrap(), k);
    }
}
