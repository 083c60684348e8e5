#![allow(dead_code)]

use machh_core::{SimplicialComplex, SubsetMask};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random complex on `[m]`: a handful of random generators of size at most
/// `max_size`, plus every singleton.
pub fn random_complex<R: Rng>(rng: &mut R, m: usize, max_size: usize, generators: usize) -> SimplicialComplex {
    let mut gens: Vec<SubsetMask> = (1..=m).map(SubsetMask::singleton).collect();
    for _ in 0..generators {
        let size = rng.gen_range(1..=max_size.min(m));
        let mut vs: Vec<usize> = (1..=m).collect();
        vs.shuffle(rng);
        gens.push(SubsetMask::from_vertices(vs[..size].iter().copied()).unwrap());
    }
    SimplicialComplex::from_facet_masks(m, gens).unwrap()
}

/// Proptest strategy for complexes with `m` in `1..=max_m`.
pub fn arb_complex(max_m: usize, max_size: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_m).prop_flat_map(move |m| {
        let full = (1u32 << m) - 1;
        proptest::collection::vec(1..=full, 0..8).prop_map(move |masks| {
            let gens = masks
                .into_iter()
                .map(|b| truncate(SubsetMask::from_bits(b), max_size))
                .chain((1..=m).map(SubsetMask::singleton));
            SimplicialComplex::from_facet_masks(m, gens).unwrap()
        })
    })
}

fn truncate(s: SubsetMask, max_size: usize) -> SubsetMask {
    s.vertices()
        .take(max_size)
        .fold(SubsetMask::EMPTY, |acc, v| acc.with(v))
}

pub fn random_permutation<R: Rng>(rng: &mut R, m: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=m).collect();
    perm.shuffle(rng);
    perm
}

/// A complex built to satisfy the combinatorial hypotheses of the gluing
/// theorem for `sigma = [n+1]`, then scrambled by a random relabeling.
/// Returns the complex and the (relabeled) simplex to glue.
pub fn random_gluing_candidate<R: Rng>(rng: &mut R, m: usize, n: usize) -> (SimplicialComplex, SubsetMask) {
    assert!(m >= n + 2);
    let sigma = SubsetMask::full(n + 1);
    let others: Vec<usize> = (n + 2..=m).collect();
    let mut gens: Vec<SubsetMask> = (1..=m).map(SubsetMask::singleton).collect();
    for _ in 0..rng.gen_range(0..6) {
        let size = rng.gen_range(1..=3.min(others.len()));
        let picked: Vec<usize> = others.choose_multiple(rng, size).copied().collect();
        gens.push(SubsetMask::from_vertices(picked).unwrap());
    }
    for &j in &others {
        for i in sigma.vertices() {
            gens.push(sigma.with(j).without(i));
        }
    }
    for (a, &j) in others.iter().enumerate() {
        for &k in &others[a + 1..] {
            if rng.gen_bool(0.4) {
                for i in sigma.vertices() {
                    gens.push(sigma.with(j).with(k).without(i));
                }
            }
        }
    }
    // faces meeting sigma in fewer than n vertices never create J ∖ {i}
    if n >= 2 {
        for _ in 0..rng.gen_range(0..4) {
            let inside = rng.gen_range(1..n);
            let mut s: Vec<usize> = sigma.vertices().collect();
            s.shuffle(rng);
            let mut face = SubsetMask::from_vertices(s[..inside].iter().copied()).unwrap();
            let outside = rng.gen_range(1..=2.min(others.len()));
            for &v in others.choose_multiple(rng, outside) {
                face = face.with(v);
            }
            gens.push(face);
        }
    }
    let k = SimplicialComplex::from_facet_masks(m, gens).unwrap();
    let perm = random_permutation(rng, m);
    let relabeled = k.relabel(&perm).unwrap();
    let sigma_new = sigma.vertices().fold(SubsetMask::EMPTY, |acc, v| acc.with(perm[v - 1]));
    (relabeled, sigma_new)
}

pub fn mask(vs: &[usize]) -> SubsetMask {
    SubsetMask::from_vertices(vs.iter().copied()).unwrap()
}

/// Complete graph on 4 vertices minus the edge {1,2}, with the triangles
/// {1,3,4} and {2,3,4} filled in.
pub fn two_triangles() -> SimplicialComplex {
    SimplicialComplex::from_facets(4, [vec![1, 3, 4], vec![2, 3, 4]]).unwrap()
}
