//! Hypothesis checking for gluing a simplex along its boundary.
//!
//! For `σ` with `|σ| = n + 1`, relabel so that `σ = [n+1]`. The gluing
//! `λ_σ K = K ∪ {σ}` changes the total double-cohomology rank by `-2` or `0`
//! provided that
//!
//! 1. `σ ∉ K`;
//! 2. `J ∖ {i} ∈ K` for every `J = σ ∪ {j}` and `i ∈ σ`;
//! 3. `rank H̃^n(K_J) ≤ 1` for every `J = σ ∪ {j, k}`;
//! 4. for every such `J`, the faces `J ∖ {i}`, `i ∈ σ`, are either all in
//!    `K` or all missing.
//!
//! The change is `-2` exactly when some `J = σ ∪ {j, k}` has
//! `rank H̃^n(K_J) = 1`.

use rayon::prelude::*;

use crate::cohomology::Degree;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::mask::SubsetMask;

/// Source of reduced Betti numbers of full subcomplexes.
pub trait ReducedBetti: Sync {
    fn reduced_betti(&self, complex: &SimplicialComplex, subset: SubsetMask, degree: Degree) -> usize;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm1Report {
    /// The simplex to glue, in the caller's labels.
    pub sigma: SubsetMask,
    /// Dimension of the glued simplex, `|σ| - 1`.
    pub n: usize,
    /// `relabeling[v - 1]` is the label of vertex `v` once `σ` is moved to
    /// `[n+1]`; the rest of `[m]` follows in increasing order.
    pub relabeling: Vec<usize>,
    /// Hypotheses 1 through 4, in order.
    pub conditions: [bool; 4],
    /// Lexicographically least `J = σ ∪ {j, k}` (caller's labels) with
    /// `rank H̃^n(K_J) = 1`.
    pub witnessing_j: Option<SubsetMask>,
    /// All four hypotheses hold and `m ≥ n + 2`.
    pub applicable: bool,
    /// `Some(-2)` or `Some(0)` when applicable.
    pub predicted_delta: Option<i64>,
}

/// Order-preserving relabeling sending `sigma` to `[|sigma|]` and the rest
/// of `[m]` to the following labels.
pub fn sigma_first_relabeling(m: usize, sigma: SubsetMask) -> Vec<usize> {
    let mut perm = vec![0; m];
    let rest = SubsetMask::full(m).difference(sigma);
    for (new, old) in sigma.vertices().chain(rest.vertices()).enumerate() {
        perm[old - 1] = new + 1;
    }
    perm
}

pub fn check_theorem1<B: ReducedBetti + ?Sized>(
    complex: &SimplicialComplex,
    sigma: SubsetMask,
    betti: &B,
) -> Result<Thm1Report> {
    let m = complex.m();
    if sigma.len() < 2 || !sigma.fits(m) {
        return Err(Error::BadSigma(sigma));
    }
    let n = sigma.len() - 1;
    let relabeling = sigma_first_relabeling(m, sigma);
    let mut inverse = vec![0; m];
    for (old, &new) in relabeling.iter().enumerate() {
        inverse[new - 1] = old + 1;
    }
    let k = complex.relabel(&relabeling)?;
    let base = SubsetMask::full(n + 1);
    let others: Vec<usize> = (n + 2..=m).collect();

    let cond1 = !k.contains(base);
    let cond2 = others.iter().all(|&j| {
        let j_set = base.with(j);
        base.vertices().all(|i| k.contains(j_set.without(i)))
    });

    let pairs: Vec<SubsetMask> = others
        .iter()
        .enumerate()
        .flat_map(|(a, &j)| others[a + 1..].iter().map(move |&kk| base.with(j).with(kk)))
        .collect();
    let cond4 = pairs.iter().all(|&j_set| {
        let present = base.vertices().filter(|&i| k.contains(j_set.without(i))).count();
        present == 0 || present == n + 1
    });
    let ranks: Vec<usize> = pairs
        .par_iter()
        .map(|&j_set| betti.reduced_betti(&k, j_set, n as Degree))
        .collect();
    let cond3 = ranks.iter().all(|&r| r <= 1);
    let witnessing_j = pairs
        .iter()
        .zip(&ranks)
        .filter(|(_, &r)| r == 1)
        .map(|(&j_set, _)| unrelabel(j_set, &inverse))
        .min();

    let conditions = [cond1, cond2, cond3, cond4];
    let applicable = conditions.iter().all(|&c| c) && m >= n + 2;
    let predicted_delta = applicable.then(|| if witnessing_j.is_some() { -2 } else { 0 });
    Ok(Thm1Report {
        sigma,
        n,
        relabeling,
        conditions,
        witnessing_j,
        applicable,
        predicted_delta,
    })
}

fn unrelabel(set: SubsetMask, inverse: &[usize]) -> SubsetMask {
    set.vertices()
        .fold(SubsetMask::EMPTY, |acc, v| acc.with(inverse[v - 1]))
}
