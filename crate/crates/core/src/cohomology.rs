//! Reduced simplicial cohomology over a field, with explicit representative
//! cocycles.
//!
//! Cochains live on the augmented complex: the empty simplex sits in degree
//! `-1`, so the empty complex `{∅}` has `H̃^{-1} = k` and every nonempty
//! complex has `H̃^{-1} = 0`. Simplices keep the labels of the ambient
//! complex, which makes restriction to a smaller full subcomplex a matter of
//! dropping coordinates.
//!
//! Coboundary convention: `⟨δ S*, T*⟩ = (-1)^{#{i ∈ S : i < j}}` for
//! `T = S ∪ {j}`.

use std::collections::HashMap;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_basis, Echelon, SparseMatrix, SparseVec};
use crate::mask::SubsetMask;

/// Cohomological degree; `-1` is the augmentation degree.
pub type Degree = isize;

/// Index into per-size tables for a degree (`size = degree + 1`).
fn size_of(degree: Degree) -> Option<usize> {
    usize::try_from(degree + 1).ok()
}

/// The augmented cochain complex of a full subcomplex.
#[derive(Clone, Debug)]
pub struct AugmentedCochainComplex<F: Field> {
    field: F,
    vertices: SubsetMask,
    // simplices[s]: faces with s vertices (degree s - 1), lexicographic.
    simplices: Vec<Vec<SubsetMask>>,
    // coboundary[s][j]: δ applied to the dual of simplices[s][j], as a
    // sparse vector over simplices[s + 1].
    coboundary: Vec<Vec<SparseVec<F::Elem>>>,
}

impl<F: Field> AugmentedCochainComplex<F> {
    /// The cochain complex of all of `complex`.
    pub fn new(field: F, complex: &SimplicialComplex) -> Self {
        Self::of_full_subcomplex(field, complex, complex.vertex_set())
    }

    /// The cochain complex of `K_I`, in the labels of `K`.
    pub fn of_full_subcomplex(field: F, complex: &SimplicialComplex, subset: SubsetMask) -> Self {
        let simplices = complex.faces_within(subset);
        let index: Vec<HashMap<SubsetMask, u32>> = simplices
            .iter()
            .map(|layer| layer.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect())
            .collect();
        let coboundary = simplices
            .iter()
            .enumerate()
            .map(|(s, layer)| {
                let Some(up) = index.get(s + 1) else {
                    return vec![Vec::new(); layer.len()];
                };
                layer
                    .iter()
                    .map(|&face| {
                        let mut image: SparseVec<F::Elem> = subset
                            .difference(face)
                            .vertices()
                            .filter_map(|j| {
                                let idx = *up.get(&face.with(j))?;
                                Some((idx, field.sign(face.count_below(j) % 2 == 0)))
                            })
                            .collect();
                        image.sort_by_key(|(i, _)| *i);
                        image
                    })
                    .collect()
            })
            .collect();
        let cochains = AugmentedCochainComplex {
            field,
            vertices: subset,
            simplices,
            coboundary,
        };
        debug_assert!(cochains.coboundary_squares_to_zero());
        cochains
    }

    pub fn vertices(&self) -> SubsetMask {
        self.vertices
    }

    /// Basis of `C^degree`, lexicographically ordered.
    pub fn basis(&self, degree: Degree) -> &[SubsetMask] {
        size_of(degree)
            .and_then(|s| self.simplices.get(s))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn dim(&self, degree: Degree) -> usize {
        self.basis(degree).len()
    }

    /// Highest degree with a nonzero cochain group.
    pub fn top_degree(&self) -> Degree {
        self.simplices.len() as Degree - 2
    }

    /// Images of the basis duals under `δ_degree : C^degree → C^{degree+1}`.
    pub fn coboundary(&self, degree: Degree) -> &[SparseVec<F::Elem>] {
        size_of(degree)
            .and_then(|s| self.coboundary.get(s))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// `δ_degree` as a matrix (rows: degree+1 simplices, columns: degree simplices).
    pub fn coboundary_matrix(&self, degree: Degree) -> SparseMatrix<F::Elem> {
        SparseMatrix {
            rows: self.dim(degree + 1),
            cols: self.dim(degree),
            columns: self.coboundary(degree).to_vec(),
        }
    }

    /// Applies `δ_degree` to a cochain.
    pub fn apply(&self, degree: Degree, cochain: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let images = self.coboundary(degree);
        let mut acc = Vec::new();
        for (j, x) in cochain {
            acc = crate::linalg::axpy(&self.field, &acc, &self.field.neg(x), &images[*j as usize]);
        }
        acc
    }

    pub fn coboundary_squares_to_zero(&self) -> bool {
        (-1..self.top_degree()).all(|q| {
            let first = self.coboundary_matrix(q);
            let second = self.coboundary_matrix(q + 1);
            second.compose(&self.field, &first).is_zero()
        })
    }

    /// Cohomology in one degree.
    pub fn cohomology(&self, degree: Degree) -> CohomologyBasis<F> {
        let basis = self.basis(degree).to_vec();
        if basis.is_empty() {
            return CohomologyBasis::zero(self.field.clone(), degree, basis);
        }
        let mut echelon = Echelon::new(self.field.clone());
        for image in self.coboundary(degree - 1) {
            echelon.insert(image);
        }
        let coboundary_rank = echelon.rank();
        let mut representatives = Vec::new();
        let mut rep_of_row = HashMap::new();
        for cocycle in kernel_basis(&self.field, self.coboundary(degree)) {
            let residual = echelon.reduce(&cocycle).residual;
            if residual.is_empty() {
                continue;
            }
            let row = echelon.insert(&residual).expect("residual is independent");
            rep_of_row.insert(row, representatives.len());
            representatives.push(echelon.row(row).clone());
        }
        CohomologyBasis {
            field: self.field.clone(),
            degree,
            simplices: basis,
            representatives,
            echelon,
            rep_of_row,
            coboundary_rank,
        }
    }

    /// Cohomology in every degree from `-1` to the top degree.
    pub fn all_cohomology(&self) -> Vec<CohomologyBasis<F>> {
        (-1..=self.top_degree()).map(|p| self.cohomology(p)).collect()
    }
}

/// `H̃^p` of one complex: its rank, representative cocycles, and the
/// elimination data needed to write any cocycle in terms of them.
#[derive(Clone, Debug)]
pub struct CohomologyBasis<F: Field> {
    field: F,
    degree: Degree,
    simplices: Vec<SubsetMask>,
    representatives: Vec<SparseVec<F::Elem>>,
    // Rows: a basis of the coboundaries followed by the representatives.
    echelon: Echelon<F>,
    rep_of_row: HashMap<usize, usize>,
    coboundary_rank: usize,
}

impl<F: Field> CohomologyBasis<F> {
    fn zero(field: F, degree: Degree, simplices: Vec<SubsetMask>) -> Self {
        CohomologyBasis {
            echelon: Echelon::new(field.clone()),
            field,
            degree,
            simplices,
            representatives: Vec::new(),
            rep_of_row: HashMap::new(),
            coboundary_rank: 0,
        }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_zero(&self) -> bool {
        self.representatives.is_empty()
    }

    /// The coordinate system: degree-`p` simplices, lexicographic.
    pub fn simplices(&self) -> &[SubsetMask] {
        &self.simplices
    }

    pub fn representatives(&self) -> &[SparseVec<F::Elem>] {
        &self.representatives
    }

    pub fn coboundary_rank(&self) -> usize {
        self.coboundary_rank
    }

    /// Coordinates of the class of `cocycle` in the representative basis.
    ///
    /// Fails if `cocycle` is not in the span of coboundaries and
    /// representatives, i.e. is not a cocycle.
    pub fn express(&self, cocycle: &SparseVec<F::Elem>) -> Result<Vec<F::Elem>> {
        let red = self.echelon.reduce(cocycle);
        if !red.residual.is_empty() {
            return Err(Error::InternalInconsistency(format!(
                "vector is not a cocycle in degree {}",
                self.degree
            )));
        }
        let mut coords = vec![self.field.zero(); self.rank()];
        for (row, c) in red.coefficients {
            if let Some(&k) = self.rep_of_row.get(&row) {
                coords[k] = self.field.add(&coords[k], &c);
            }
        }
        Ok(coords)
    }

    /// Restricts a cochain on these simplices to the simplices of `target`
    /// (dropping every coordinate whose simplex is absent there).
    fn restrict_to(&self, cochain: &SparseVec<F::Elem>, target: &CohomologyBasis<F>) -> Result<SparseVec<F::Elem>> {
        let mut out = Vec::new();
        for (j, x) in cochain {
            let simplex = self.simplices[*j as usize];
            if let Ok(t) = target.simplices.binary_search(&simplex) {
                out.push((t as u32, x.clone()));
            }
        }
        // Lexicographic order is preserved under restriction.
        debug_assert!(out.windows(2).all(|w| w[0].0 < w[1].0));
        Ok(out)
    }
}

/// Reduced cohomology `H̃^degree(L)`.
///
/// Degrees below `-1` or at least the number of vertices of `L` give the
/// zero group.
pub fn reduced_cohomology<F: Field>(field: F, complex: &SimplicialComplex, degree: Degree) -> CohomologyBasis<F> {
    let cochains = AugmentedCochainComplex::new(field, complex);
    cochains.cohomology(degree)
}

/// The matrix of `ψ_{p;i,I} : H̃^p(K_I) → H̃^p(K_{I∖{i}})` in the given bases.
///
/// Rows index the representatives of `target`, columns those of `source`.
pub fn induced_map_psi<F: Field>(
    complex: &SimplicialComplex,
    subset: SubsetMask,
    vertex: usize,
    source: &CohomologyBasis<F>,
    target: &CohomologyBasis<F>,
) -> Result<SparseMatrix<F::Elem>> {
    if !subset.contains(vertex) {
        return Err(Error::NotInSubset { vertex, subset });
    }
    if !subset.fits(complex.m()) || source.degree != target.degree {
        return Err(Error::InternalInconsistency("mismatched cohomology bases".into()));
    }
    restriction_matrix(source, target)
}

/// `ψ` between two bases whose simplices share labels.
pub(crate) fn restriction_matrix<F: Field>(
    source: &CohomologyBasis<F>,
    target: &CohomologyBasis<F>,
) -> Result<SparseMatrix<F::Elem>> {
    let field = &source.field;
    let mut columns = Vec::with_capacity(source.rank());
    for rep in &source.representatives {
        if target.is_zero() {
            columns.push(Vec::new());
            continue;
        }
        let restricted = source.restrict_to(rep, target)?;
        let coords = target.express(&restricted)?;
        columns.push(crate::linalg::sparsify(field, &coords));
    }
    Ok(SparseMatrix {
        rows: target.rank(),
        cols: source.rank(),
        columns,
    })
}

/// Cohomology of one full subcomplex `K_I` in all degrees with nonzero rank.
#[derive(Clone, Debug)]
pub struct SubsetCohomology<F: Field> {
    pub subset: SubsetMask,
    bases: Vec<CohomologyBasis<F>>,
}

impl<F: Field> SubsetCohomology<F> {
    pub fn compute(field: &F, complex: &SimplicialComplex, subset: SubsetMask) -> Self {
        let cochains = AugmentedCochainComplex::of_full_subcomplex(field.clone(), complex, subset);
        let bases = cochains.all_cohomology().into_iter().filter(|b| !b.is_zero()).collect();
        SubsetCohomology { subset, bases }
    }

    pub fn in_degree(&self, degree: Degree) -> Option<&CohomologyBasis<F>> {
        self.bases.iter().find(|b| b.degree == degree)
    }

    pub fn rank(&self, degree: Degree) -> usize {
        self.in_degree(degree).map_or(0, CohomologyBasis::rank)
    }

    /// Degrees with nonzero cohomology, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = Degree> + '_ {
        self.bases.iter().map(|b| b.degree)
    }

    pub fn is_acyclic(&self) -> bool {
        self.bases.is_empty()
    }
}

/// Reduced Betti numbers of `K_I` indexed by degree + 1, computed from ranks
/// alone (no representatives).
pub fn reduced_betti_numbers<F: Field>(field: &F, complex: &SimplicialComplex, subset: SubsetMask) -> Vec<usize> {
    let cochains = AugmentedCochainComplex::of_full_subcomplex(field.clone(), complex, subset);
    let ranks: Vec<usize> = (-1..=cochains.top_degree())
        .map(|q| crate::linalg::rank_of(field, cochains.coboundary(q)))
        .collect();
    (0..ranks.len())
        .map(|s| {
            let incoming = if s == 0 { 0 } else { ranks[s - 1] };
            cochains.simplices[s].len() - ranks[s] - incoming
        })
        .collect()
}
