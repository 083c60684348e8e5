mod common;

use machh_core::gluing::sigma_first_relabeling;
use machh_core::oracle::{oracle_hh_rows, oracle_reduced_betti};
use machh_core::{check_theorem1, k2r_family, k2r_size, RationalEngine, ReducedBetti, SimplicialComplex, SubsetMask};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct OracleBetti;

impl ReducedBetti for OracleBetti {
    fn reduced_betti(&self, complex: &SimplicialComplex, subset: SubsetMask, degree: isize) -> usize {
        oracle_reduced_betti(&complex.full_subcomplex(subset), degree).unwrap()
    }
}

#[test]
fn square_with_diagonal() {
    let e = RationalEngine::default();
    let v = e
        .verify_theorem1(&SimplicialComplex::square(), common::mask(&[1, 3]))
        .unwrap();
    assert!(v.verdict);
    assert_eq!(v.report.predicted_delta, Some(-2));
    assert_eq!((v.rank_before, v.rank_after), (4, 2));
}

#[test]
fn two_triangles_keep_their_rank() {
    let k = common::two_triangles();
    let e = RationalEngine::default();
    let v = e.verify_theorem1(&k, common::mask(&[1, 2])).unwrap();
    assert!(v.verdict);
    assert_eq!(v.report.predicted_delta, Some(0));
    let glued = k.glue_simplex(common::mask(&[1, 2])).unwrap();
    let before: usize = oracle_hh_rows(&k).unwrap().values().sum();
    let after: usize = oracle_hh_rows(&glued).unwrap().values().sum();
    assert_eq!(before, after);
    assert_eq!(v.rows_before, oracle_hh_rows(&k).unwrap());
    assert_eq!(v.rows_after, oracle_hh_rows(&glued).unwrap());
}

#[test]
fn random_admissible_gluings() {
    let mut rng = StdRng::seed_from_u64(2024);
    let e = RationalEngine::default();
    let mut checked = 0;
    let mut cases = [0usize; 2];
    while checked < 60 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(n + 3..=7);
        let (k, sigma) = common::random_gluing_candidate(&mut rng, m, n);
        let report = check_theorem1(&k, sigma, &e).unwrap();
        assert_eq!(report, check_theorem1(&k, sigma, &OracleBetti).unwrap());
        if !report.applicable {
            continue;
        }
        let v = e.verify_theorem1(&k, sigma).unwrap();
        assert!(
            v.verdict,
            "K={:?} sigma={sigma}: {:?} -> {:?}",
            k.facet_lists(),
            v.rows_before,
            v.rows_after
        );
        cases[usize::from(report.predicted_delta == Some(0))] += 1;
        checked += 1;
    }
    assert!(cases[0] > 0 && cases[1] > 0, "{cases:?}");
}

#[test]
fn report_does_not_depend_on_labels() {
    let mut rng = StdRng::seed_from_u64(99);
    let e = RationalEngine::default();
    for _ in 0..40 {
        let (k, sigma) = common::random_gluing_candidate(&mut rng, 6, 2);
        let report = check_theorem1(&k, sigma, &e).unwrap();
        let perm = common::random_permutation(&mut rng, 6);
        let moved = |s: SubsetMask| s.vertices().fold(SubsetMask::EMPTY, |acc, v| acc.with(perm[v - 1]));
        let other = check_theorem1(&k.relabel(&perm).unwrap(), moved(sigma), &e).unwrap();
        assert_eq!(other.conditions, report.conditions);
        assert_eq!(other.predicted_delta, report.predicted_delta);
        assert_eq!(other.witnessing_j.is_some(), report.witnessing_j.is_some());
    }
}

#[test]
fn failed_hypotheses_are_reported_not_verified() {
    let e = RationalEngine::default();
    let sq = SimplicialComplex::square();
    let r = check_theorem1(&sq, common::mask(&[1, 2]), &e).unwrap();
    assert!(!r.conditions[0]);
    assert_eq!(
        e.verify_theorem1(&sq, common::mask(&[1, 2])).unwrap_err().kind(),
        "NotApplicable"
    );
    // {1,2} in two points: the boundary is there but J = {1,2,j} needs m >= 3
    let two = SimplicialComplex::discrete(2);
    assert!(!check_theorem1(&two, common::mask(&[1, 2]), &e).unwrap().applicable);
}

#[test]
fn relabeling_moves_sigma_to_the_front() {
    let perm = sigma_first_relabeling(6, common::mask(&[2, 5, 6]));
    assert_eq!(perm, vec![4, 1, 5, 6, 2, 3]);
}

#[test]
fn family_sizes_and_ranks() {
    let e = RationalEngine::default();
    let sizes: Vec<usize> = (1..=8).map(k2r_size).collect();
    assert_eq!(sizes, vec![4, 4, 6, 6, 8, 8, 8, 8]);
    for r in 1..=8 {
        let member = k2r_family(r).unwrap();
        assert_eq!(member.complex.m(), k2r_size(r));
        let (a, b) = member.non_edge;
        assert!(!member.complex.contains(common::mask(&[a, b])));
        assert_eq!(e.hh_ranks(&member.complex).unwrap().total(), 2 * r, "r = {r}");
    }
    assert_eq!(k2r_family(0).unwrap_err().kind(), "BadGroundSet");
}
