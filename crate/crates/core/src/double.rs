//! The bigraded cohomology of `Z_K` via the Hochster decomposition
//! `H^{-k,2l}(Z_K) ≅ ⊕_{|I|=l} H̃^{l-k-1}(K_I)`, the differential
//! `d'` built from restriction maps, and the resulting double cohomology.
//!
//! Coordinates: a summand `H̃^p(K_I)` with `|I| = l` sits in bidegree
//! `(-k, 2l)` with `k = l - p - 1`, total degree `-k + 2l`, and row `p`.
//! `d'` preserves the row and lowers `l` by one.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::cohomology::{restriction_matrix, CohomologyBasis, Degree, SubsetCohomology};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gluing::{check_theorem1, ReducedBetti, Thm1Report};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::mask::{subsets_of_size, SubsetMask, MAX_VERTICES};

/// Default cap on the ground-set size.
pub const DEFAULT_MAX_M: usize = 22;

/// A bidegree `(-k, 2l)`. Ordered by `l`, then `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    pub l: usize,
    pub k: usize,
}

impl Bidegree {
    pub fn new(k: usize, l: usize) -> Self {
        Bidegree { l, k }
    }

    /// The bidegree holding `H̃^row(K_I)` for `|I| = l`.
    pub fn from_row(row: Degree, l: usize) -> Self {
        let k = l as isize - row - 1;
        debug_assert!(k >= 0, "row {row} cannot occur with |I| = {l}");
        Bidegree { l, k: k as usize }
    }

    pub fn row(self) -> Degree {
        self.l as isize - self.k as isize - 1
    }

    pub fn total_degree(self) -> isize {
        2 * self.l as isize - self.k as isize
    }

    /// The literal key used in result documents, e.g. `"(-1,4)"`.
    pub fn key(self) -> String {
        format!("({},{})", -(self.k as i64), 2 * self.l)
    }

    /// Parses a key produced by [`key`](Self::key).
    pub fn parse_key(key: &str) -> Option<Self> {
        let inner = key.strip_prefix('(')?.strip_suffix(')')?;
        let (a, b) = inner.split_once(',')?;
        let neg_k: i64 = a.trim().parse().ok()?;
        let two_l: i64 = b.trim().parse().ok()?;
        if neg_k > 0 || two_l < 0 || two_l % 2 != 0 {
            return None;
        }
        Some(Bidegree::new((-neg_k) as usize, (two_l / 2) as usize))
    }
}

/// Nonnegative ranks indexed by bidegree; absent entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedRankTable {
    entries: BTreeMap<Bidegree, usize>,
}

impl BigradedRankTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, at: Bidegree, rank: usize) {
        if rank == 0 {
            return;
        }
        *self.entries.entry(at).or_insert(0) += rank;
    }

    pub fn get(&self, at: Bidegree) -> usize {
        self.entries.get(&at).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.entries.iter().map(|(b, r)| (*b, *r))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    /// `Σ (-1)^k rank(-k, 2l)`, the alternating sum over total degree.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(b, r)| if b.k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// Per-row totals, row `p = l - k - 1`.
    pub fn rows(&self) -> BTreeMap<Degree, usize> {
        let mut out = BTreeMap::new();
        for (b, r) in self.iter() {
            *out.entry(b.row()).or_insert(0) += r;
        }
        out
    }

    /// Per-total-degree totals.
    pub fn by_total_degree(&self) -> BTreeMap<isize, usize> {
        let mut out = BTreeMap::new();
        for (b, r) in self.iter() {
            *out.entry(b.total_degree()).or_insert(0) += r;
        }
        out
    }

    /// The table of a tensor product: ranks multiply, bidegrees add.
    pub fn convolve(&self, other: &BigradedRankTable) -> BigradedRankTable {
        let mut out = BigradedRankTable::new();
        for (a, ra) in self.iter() {
            for (b, rb) in other.iter() {
                out.add(Bidegree::new(a.k + b.k, a.l + b.l), ra * rb);
            }
        }
        out
    }

    pub fn from_entries<I: IntoIterator<Item = ((usize, usize), usize)>>(entries: I) -> Self {
        let mut out = BigradedRankTable::new();
        for ((k, l), r) in entries {
            out.add(Bidegree::new(k, l), r);
        }
        out
    }
}

/// `ε(j, I) = (-1)^{#{i ∈ I : i < j}}`.
pub fn sign_epsilon(vertex: usize, subset: SubsetMask) -> Result<i8> {
    if !subset.contains(vertex) {
        return Err(Error::NotInSubset { vertex, subset });
    }
    Ok(if subset.count_below(vertex).is_multiple_of(2) {
        1
    } else {
        -1
    })
}

/// Sign of the `(I, I∖{i})` block of `d'_p`: `(-1)^{p+1} ε(i, I)`.
fn block_sign(degree: Degree, vertex: usize, subset: SubsetMask) -> bool {
    let eps_positive = subset.count_below(vertex).is_multiple_of(2);
    let outer_positive = (degree + 1).rem_euclid(2) == 0;
    eps_positive == outer_positive
}

/// One row of `CH*(Z_K)`: the groups `⊕_{|I|=l} H̃^p(K_I)` and the block
/// differentials between consecutive cardinalities.
#[derive(Clone, Debug)]
pub struct RowComplex<F: Field> {
    pub degree: Degree,
    /// `groups[l]`: subsets of size `l` with nonzero `H̃^p`, lexicographic.
    pub groups: Vec<Vec<(SubsetMask, CohomologyBasis<F>)>>,
    /// `differentials[l]`: `D_{p,l}` from `groups[l]` to `groups[l-1]`.
    /// Entry 0 is the zero map out of `groups[0]`.
    pub differentials: Vec<SparseMatrix<F::Elem>>,
}

impl<F: Field> RowComplex<F> {
    pub fn group_dim(&self, l: usize) -> usize {
        self.groups.get(l).map_or(0, |g| g.iter().map(|(_, b)| b.rank()).sum())
    }

    pub fn max_cardinality(&self) -> usize {
        self.groups.len().saturating_sub(1)
    }

    /// `dim ker D_{p,l} - rank D_{p,l+1}`.
    pub fn cohomology_rank(&self, field: &F, l: usize) -> usize {
        let out_rank = self.differentials.get(l).map_or(0, |d| d.rank(field));
        let in_rank = self.differentials.get(l + 1).map_or(0, |d| d.rank(field));
        self.group_dim(l) - out_rank - in_rank
    }

    /// `D_{p,l-1} · D_{p,l} = 0` for every `l`.
    pub fn squares_to_zero(&self, field: &F) -> bool {
        (2..self.differentials.len()).all(|l| {
            self.differentials[l - 1]
                .compose(field, &self.differentials[l])
                .is_zero()
        })
    }

    /// `Σ_l (-1)^l dim(group_l)`.
    pub fn euler_of_groups(&self) -> i64 {
        (0..self.groups.len())
            .map(|l| sign_pow(l) * self.group_dim(l) as i64)
            .sum()
    }

    /// `Σ_l (-1)^l rank HH at l`.
    pub fn euler_of_cohomology(&self, field: &F) -> i64 {
        (0..self.groups.len())
            .map(|l| sign_pow(l) * self.cohomology_rank(field, l) as i64)
            .sum()
    }
}

fn sign_pow(l: usize) -> i64 {
    if l.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `H*(Z_K)` and `HH*(Z_K)` together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub h: BigradedRankTable,
    pub hh: BigradedRankTable,
}

/// The block matrix of `d'_p` from `sources` (all of one cardinality `l`)
/// to `targets` (cardinality `l - 1`). Both lists must be lexicographically
/// ordered; subsets with `H̃^p = 0` may be present and are skipped.
fn differential_block<F: Field>(
    field: &F,
    degree: Degree,
    sources: &[SubsetCohomology<F>],
    targets: &[SubsetCohomology<F>],
) -> Result<SparseMatrix<F::Elem>> {
    let mut target_at: HashMap<SubsetMask, (u32, &CohomologyBasis<F>)> = HashMap::new();
    let mut rows = 0usize;
    for t in targets {
        if let Some(b) = t.in_degree(degree) {
            target_at.insert(t.subset, (rows as u32, b));
            rows += b.rank();
        }
    }
    let with_basis: Vec<(SubsetMask, &CohomologyBasis<F>)> = sources
        .iter()
        .filter_map(|s| s.in_degree(degree).map(|b| (s.subset, b)))
        .collect();
    let blocks: Vec<Vec<SparseVec<F::Elem>>> = with_basis
        .par_iter()
        .map(|&(subset, basis)| -> Result<Vec<SparseVec<F::Elem>>> {
            let mut columns: Vec<SparseVec<F::Elem>> = vec![Vec::new(); basis.rank()];
            for i in subset.vertices() {
                let Some(&(offset, target)) = target_at.get(&subset.without(i)) else {
                    continue;
                };
                let psi = restriction_matrix(basis, target)?;
                let sign = field.sign(block_sign(degree, i, subset));
                for (col, entries) in columns.iter_mut().zip(&psi.columns) {
                    col.extend(entries.iter().map(|(r, x)| (offset + r, field.mul(&sign, x))));
                }
            }
            for col in &mut columns {
                col.sort_by_key(|(r, _)| *r);
            }
            Ok(columns)
        })
        .collect::<Result<_>>()?;
    let columns: Vec<SparseVec<F::Elem>> = blocks.into_iter().flatten().collect();
    Ok(SparseMatrix {
        rows,
        cols: columns.len(),
        columns,
    })
}

/// Computes cohomology of full subcomplexes and the double complex built on
/// top of them, over the field `F`.
#[derive(Clone, Debug)]
pub struct Engine<F: Field> {
    field: F,
    max_m: usize,
}

impl<F: Field> Engine<F> {
    pub fn new(field: F) -> Self {
        Engine {
            field,
            max_m: DEFAULT_MAX_M,
        }
    }

    /// Sets the largest ground set accepted (at most 30).
    pub fn with_max_m(mut self, max_m: usize) -> Self {
        self.max_m = max_m.min(MAX_VERTICES);
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn max_m(&self) -> usize {
        self.max_m
    }

    fn check_size(&self, complex: &SimplicialComplex) -> Result<()> {
        if complex.m() > self.max_m {
            return Err(Error::ResourceLimit {
                m: complex.m(),
                limit: self.max_m,
            });
        }
        Ok(())
    }

    fn layer(&self, complex: &SimplicialComplex, l: usize) -> Vec<SubsetCohomology<F>> {
        subsets_of_size(complex.m(), l)
            .par_iter()
            .map(|&s| SubsetCohomology::compute(&self.field, complex, s))
            .filter(|c| !c.is_acyclic())
            .collect()
    }

    /// Reduced cohomology of one full subcomplex in one degree.
    pub fn subset_cohomology(&self, complex: &SimplicialComplex, subset: SubsetMask) -> SubsetCohomology<F> {
        SubsetCohomology::compute(&self.field, complex, subset)
    }

    /// `H^{-k,2l}(Z_K)`: ranks only, summed over all `2^m` full subcomplexes.
    pub fn h_ranks(&self, complex: &SimplicialComplex) -> Result<BigradedRankTable> {
        self.check_size(complex)?;
        let m = complex.m();
        let per_subset: Vec<(usize, Vec<usize>)> = (0..1u64 << m)
            .into_par_iter()
            .map(|bits| {
                let s = SubsetMask::from_bits(bits as u32);
                (
                    s.len(),
                    crate::cohomology::reduced_betti_numbers(&self.field, complex, s),
                )
            })
            .collect();
        let mut table = BigradedRankTable::new();
        for (l, betti) in per_subset {
            for (idx, &r) in betti.iter().enumerate() {
                if r > 0 {
                    table.add(Bidegree::from_row(idx as Degree - 1, l), r);
                }
            }
        }
        Ok(table)
    }

    /// `HH^{-k,2l}(Z_K)`.
    pub fn hh_ranks(&self, complex: &SimplicialComplex) -> Result<BigradedRankTable> {
        Ok(self.analyze(complex)?.hh)
    }

    /// Computes `H` and `HH` in one pass over the cardinality layers, keeping
    /// only two layers of cohomology bases alive at a time.
    pub fn analyze(&self, complex: &SimplicialComplex) -> Result<Analysis> {
        self.check_size(complex)?;
        let m = complex.m();
        // dims[(p, l)] and ranks of D_{p,l}
        let mut dims: BTreeMap<(Degree, usize), usize> = BTreeMap::new();
        let mut d_ranks: HashMap<(Degree, usize), usize> = HashMap::new();
        let mut prev = self.layer(complex, 0);
        record_dims(&mut dims, &prev, 0);
        for l in 1..=m {
            let cur = self.layer(complex, l);
            record_dims(&mut dims, &cur, l);
            let degrees: BTreeSet<Degree> = cur.iter().flat_map(|c| c.degrees()).collect();
            for p in degrees {
                let d = differential_block(&self.field, p, &cur, &prev)?;
                let r = d.rank(&self.field);
                if r > 0 {
                    d_ranks.insert((p, l), r);
                }
            }
            prev = cur;
        }
        let mut h = BigradedRankTable::new();
        let mut hh = BigradedRankTable::new();
        for (&(p, l), &dim) in &dims {
            let out = d_ranks.get(&(p, l)).copied().unwrap_or(0);
            let inc = d_ranks.get(&(p, l + 1)).copied().unwrap_or(0);
            h.add(Bidegree::from_row(p, l), dim);
            hh.add(Bidegree::from_row(p, l), dim - out - inc);
        }
        Ok(Analysis { h, hh })
    }

    /// Per-row totals of `HH*(Z_K)`.
    pub fn row_rank_profile(&self, complex: &SimplicialComplex) -> Result<BTreeMap<Degree, usize>> {
        Ok(self.hh_ranks(complex)?.rows())
    }

    /// Materializes row `degree` of `CH*(Z_K)` with all its block matrices.
    pub fn assemble_row(&self, complex: &SimplicialComplex, degree: Degree) -> Result<RowComplex<F>> {
        self.check_size(complex)?;
        let m = complex.m();
        let layers: Vec<Vec<SubsetCohomology<F>>> = (0..=m)
            .map(|l| {
                self.layer(complex, l)
                    .into_iter()
                    .filter(|c| c.rank(degree) > 0)
                    .collect()
            })
            .collect();
        let mut differentials = vec![SparseMatrix::zeros(0, layer_dim(&layers[0], degree))];
        for l in 1..=m {
            differentials.push(differential_block(&self.field, degree, &layers[l], &layers[l - 1])?);
        }
        let groups = layers
            .into_iter()
            .map(|layer| {
                layer
                    .into_iter()
                    .map(|c| {
                        let basis = c.in_degree(degree).cloned().expect("filtered on rank");
                        (c.subset, basis)
                    })
                    .collect()
            })
            .collect();
        Ok(RowComplex {
            degree,
            groups,
            differentials,
        })
    }

    /// Builds `λ_σ K`, computes `HH` on both sides, and checks the predicted
    /// change of total rank together with the per-row shifts: row `n-1`
    /// drops by one, row `n` drops by one when a witnessing `J` exists and
    /// rises by one otherwise, and all other rows are unchanged.
    pub fn verify_theorem1(&self, complex: &SimplicialComplex, sigma: SubsetMask) -> Result<Thm1Verification> {
        let report = check_theorem1(complex, sigma, self)?;
        let Some(delta) = report.predicted_delta else {
            return Err(Error::NotApplicable);
        };
        let glued = complex.glue_simplex(sigma)?;
        let before = self.hh_ranks(complex)?;
        let after = self.hh_ranks(&glued)?;
        let rows_before = before.rows();
        let rows_after = after.rows();
        let n = report.n as Degree;
        let row_n_shift = if delta == -2 { -1 } else { 1 };
        let mut all_rows: BTreeSet<Degree> = rows_before.keys().chain(rows_after.keys()).copied().collect();
        all_rows.extend([n - 1, n]);
        let rows_ok = all_rows.iter().all(|&p| {
            let b = rows_before.get(&p).copied().unwrap_or(0) as i64;
            let a = rows_after.get(&p).copied().unwrap_or(0) as i64;
            let expected = if p == n - 1 {
                -1
            } else if p == n {
                row_n_shift
            } else {
                0
            };
            a - b == expected
        });
        let rank_before = before.total();
        let rank_after = after.total();
        let total_ok = rank_after as i64 - rank_before as i64 == delta;
        Ok(Thm1Verification {
            report,
            before,
            after,
            rank_before,
            rank_after,
            rows_before,
            rows_after,
            verdict: total_ok && rows_ok,
        })
    }
}

fn layer_dim<F: Field>(layer: &[SubsetCohomology<F>], degree: Degree) -> usize {
    layer.iter().map(|c| c.rank(degree)).sum()
}

fn record_dims<F: Field>(dims: &mut BTreeMap<(Degree, usize), usize>, layer: &[SubsetCohomology<F>], l: usize) {
    for c in layer {
        for p in c.degrees() {
            *dims.entry((p, l)).or_insert(0) += c.rank(p);
        }
    }
}

impl<F: Field> ReducedBetti for Engine<F> {
    fn reduced_betti(&self, complex: &SimplicialComplex, subset: SubsetMask, degree: Degree) -> usize {
        let betti = crate::cohomology::reduced_betti_numbers(&self.field, complex, subset);
        usize::try_from(degree + 1)
            .ok()
            .and_then(|i| betti.get(i).copied())
            .unwrap_or(0)
    }
}

/// Outcome of [`Engine::verify_theorem1`].
#[derive(Clone, Debug)]
pub struct Thm1Verification {
    pub report: Thm1Report,
    pub before: BigradedRankTable,
    pub after: BigradedRankTable,
    pub rank_before: usize,
    pub rank_after: usize,
    pub rows_before: BTreeMap<Degree, usize>,
    pub rows_after: BTreeMap<Degree, usize>,
    /// Total and per-row changes all match the prediction.
    pub verdict: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rationals;

    fn engine() -> Engine<Rationals> {
        Engine::new(Rationals::new())
    }

    fn mask(vs: &[usize]) -> SubsetMask {
        SubsetMask::from_vertices(vs.iter().copied()).unwrap()
    }

    #[test]
    fn epsilon_signs() {
        let i = mask(&[2, 5, 7]);
        assert_eq!(sign_epsilon(2, i), Ok(1));
        assert_eq!(sign_epsilon(5, i), Ok(-1));
        assert_eq!(sign_epsilon(7, i), Ok(1));
        assert!(sign_epsilon(3, i).is_err());
    }

    #[test]
    fn bidegree_keys() {
        let b = Bidegree::new(1, 2);
        assert_eq!(b.key(), "(-1,4)");
        assert_eq!(Bidegree::new(0, 0).key(), "(0,0)");
        assert_eq!(Bidegree::parse_key("(-2,8)"), Some(Bidegree::new(2, 4)));
        assert_eq!(Bidegree::parse_key("(1,8)"), None);
        assert_eq!(b.row(), 0);
        assert_eq!(b.total_degree(), 3);
        assert_eq!(Bidegree::from_row(1, 4), Bidegree::new(2, 4));
    }

    #[test]
    fn square_h_and_hh() {
        let sq = SimplicialComplex::square();
        let h = engine().h_ranks(&sq).unwrap();
        let expected = BigradedRankTable::from_entries([((0, 0), 1), ((1, 2), 2), ((2, 4), 1)]);
        assert_eq!(h, expected);
        let a = engine().analyze(&sq).unwrap();
        assert_eq!(a.h, expected);
        assert_eq!(a.hh, expected);
        assert_eq!(a.hh.total(), 4);
        assert_eq!(a.hh.euler_characteristic(), 0);
        let rows = a.hh.rows();
        assert_eq!(rows, BTreeMap::from([(-1, 1), (0, 2), (1, 1)]));
    }

    #[test]
    fn simplex_and_two_points() {
        for n in 1..=4 {
            let hh = engine().hh_ranks(&SimplicialComplex::simplex(n)).unwrap();
            assert_eq!(hh, BigradedRankTable::from_entries([((0, 0), 1)]));
            assert_eq!(hh.euler_characteristic(), 1);
        }
        let two = SimplicialComplex::discrete(2);
        let h = engine().h_ranks(&two).unwrap();
        assert_eq!(h, BigradedRankTable::from_entries([((0, 0), 1), ((1, 2), 1)]));
        assert_eq!(engine().hh_ranks(&two).unwrap().total(), 2);
    }

    #[test]
    fn square_with_diagonal() {
        let k2 = SimplicialComplex::square().glue_simplex(mask(&[1, 3])).unwrap();
        let hh = engine().hh_ranks(&k2).unwrap();
        assert_eq!(hh.total(), 2);
        assert_eq!(hh.rows(), BTreeMap::from([(-1, 1), (0, 1)]));
    }

    #[test]
    fn square_row_zero() {
        let sq = SimplicialComplex::square();
        let row = engine().assemble_row(&sq, 0).unwrap();
        let subsets: Vec<SubsetMask> = row.groups[2].iter().map(|(s, _)| *s).collect();
        assert_eq!(subsets, vec![mask(&[1, 3]), mask(&[2, 4])]);
        assert_eq!(row.group_dim(1), 0);
        assert!(row.differentials[2].is_zero());
        let row_minus = engine().assemble_row(&sq, -1).unwrap();
        assert_eq!(row_minus.group_dim(0), 1);
        assert_eq!((1..=4).map(|l| row_minus.group_dim(l)).sum::<usize>(), 0);
    }

    #[test]
    fn resource_limit() {
        let e = engine().with_max_m(3);
        assert_eq!(
            e.hh_ranks(&SimplicialComplex::square()),
            Err(Error::ResourceLimit { m: 4, limit: 3 })
        );
    }

    #[test]
    fn convolution() {
        let a = BigradedRankTable::from_entries([((0, 0), 1), ((1, 2), 1)]);
        let c = a.convolve(&a);
        assert_eq!(
            c,
            BigradedRankTable::from_entries([((0, 0), 1), ((1, 2), 2), ((2, 4), 1)])
        );
    }
}
