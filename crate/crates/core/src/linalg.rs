//! Sparse vectors and incremental row echelon forms over a [`Field`].
//!
//! Every echelon row is normalized so that its leading (lowest-index)
//! entry is one, and no two rows share a leading index. Reduction always
//! clears the lowest nonzero index first, so results depend only on the
//! insertion order of the vectors.

use std::collections::HashMap;

use crate::field::Field;

/// Sorted `(index, value)` pairs with no explicit zeros.
pub type SparseVec<E> = Vec<(u32, E)>;

/// `a - c * b`
pub fn axpy<F: Field>(field: &F, a: &SparseVec<F::Elem>, c: &F::Elem, b: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.neg(&field.mul(c, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, v: &SparseVec<F::Elem>, c: &F::Elem) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(c, x))).collect()
}

/// Converts a dense slice to sparse form.
pub fn sparsify<F: Field>(field: &F, dense: &[F::Elem]) -> SparseVec<F::Elem> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i as u32, x.clone()))
        .collect()
}

pub fn densify<F: Field>(field: &F, v: &SparseVec<F::Elem>, len: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); len];
    for (i, x) in v {
        out[*i as usize] = x.clone();
    }
    out
}

#[derive(Clone, Debug)]
struct EchelonRow<E> {
    vec: SparseVec<E>,
    // Combination of inserted vectors that produced this row, when tracked.
    combo: SparseVec<E>,
}

/// Outcome of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction<E> {
    /// What is left after clearing every leading index that has a pivot row.
    /// Empty iff the input lies in the row space.
    pub residual: SparseVec<E>,
    /// `(row index, coefficient)` with `input = residual + Σ coeff · row`.
    pub coefficients: Vec<(usize, E)>,
}

/// An incrementally built row echelon basis.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<EchelonRow<F::Elem>>,
    by_pivot: HashMap<u32, usize>,
    track: bool,
    inserted: u32,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            by_pivot: HashMap::new(),
            track: false,
            inserted: 0,
        }
    }

    /// An echelon that records, for every row, the combination of inserted
    /// vectors it came from. Needed by [`kernel_basis`].
    pub fn tracking(field: F) -> Self {
        Echelon {
            track: true,
            ..Self::new(field)
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, idx: usize) -> &SparseVec<F::Elem> {
        &self.rows[idx].vec
    }

    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> Reduction<F::Elem> {
        let mut cur = v.clone();
        let mut coefficients = Vec::new();
        while let Some((lead, c)) = cur.first().cloned() {
            let Some(&idx) = self.by_pivot.get(&lead) else {
                break;
            };
            cur = axpy(&self.field, &cur, &c, &self.rows[idx].vec);
            coefficients.push((idx, c));
        }
        Reduction {
            residual: cur,
            coefficients,
        }
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).residual.is_empty()
    }

    /// Inserts `v`. Returns the new row index if `v` was independent of the
    /// current rows, or `None` (with the dependency combination available via
    /// [`insert_tracked`](Self::insert_tracked)) otherwise.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> Option<usize> {
        match self.insert_tracked(v) {
            Inserted::NewRow(idx) => Some(idx),
            Inserted::Dependent(_) => None,
        }
    }

    /// Inserts `v`, reporting either the new row or, if `v` is dependent, the
    /// combination of previously inserted vectors (plus `v` itself with
    /// coefficient one) that sums to zero. The combination is only filled in
    /// for tracking echelons.
    pub fn insert_tracked(&mut self, v: &SparseVec<F::Elem>) -> Inserted<F::Elem> {
        let id = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        let mut combo: SparseVec<F::Elem> = Vec::new();
        if self.track {
            combo.push((id, self.field.one()));
            for (row, c) in &red.coefficients {
                combo = axpy(&self.field, &combo, c, &self.rows[*row].combo);
            }
            combo.sort_by_key(|(i, _)| *i);
        }
        if red.residual.is_empty() {
            return Inserted::Dependent(combo);
        }
        let lead_inv = self.field.inv(&red.residual[0].1);
        let vec = scale(&self.field, &red.residual, &lead_inv);
        let combo = scale(&self.field, &combo, &lead_inv);
        let idx = self.rows.len();
        self.by_pivot.insert(vec[0].0, idx);
        self.rows.push(EchelonRow { vec, combo });
        Inserted::NewRow(idx)
    }
}

#[derive(Clone, Debug)]
pub enum Inserted<E> {
    NewRow(usize),
    Dependent(SparseVec<E>),
}

/// Basis of the kernel of the linear map whose images of the standard basis
/// vectors are `columns` (so `columns[j]` is the image of `e_j`).
///
/// The `j`-th returned vector, if any, has its highest nonzero entry at the
/// index of the first column that became dependent, so the basis is in
/// echelon form from the top and is deterministic.
pub fn kernel_basis<F: Field>(field: &F, columns: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let mut ech = Echelon::tracking(field.clone());
    let mut kernel = Vec::new();
    for col in columns {
        if let Inserted::Dependent(combo) = ech.insert_tracked(col) {
            kernel.push(combo);
        }
    }
    kernel
}

/// Rank of a list of vectors.
pub fn rank_of<F: Field>(field: &F, vectors: &[SparseVec<F::Elem>]) -> usize {
    let mut ech = Echelon::new(field.clone());
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// A matrix stored as sparse columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<SparseVec<E>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get<F: Field<Elem = E>>(&self, field: &F, row: usize, col: usize) -> E {
        self.columns[col]
            .iter()
            .find(|(i, _)| *i as usize == row)
            .map(|(_, x)| x.clone())
            .unwrap_or_else(|| field.zero())
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        rank_of(field, &self.columns)
    }

    /// `self · rhs`
    pub fn compose<F: Field<Elem = E>>(&self, field: &F, rhs: &SparseMatrix<E>) -> SparseMatrix<E> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let columns = rhs
            .columns
            .iter()
            .map(|col| {
                let mut acc: SparseVec<E> = Vec::new();
                for (k, x) in col {
                    acc = axpy(field, &acc, &field.neg(x), &self.columns[*k as usize]);
                }
                acc
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        }
    }

    /// Row-major dense copy.
    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut out = vec![vec![field.zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, x) in col {
                out[*r as usize][c] = x.clone();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::Rationals;

    fn v(q: &Rationals, entries: &[(u32, i64)]) -> SparseVec<<Rationals as Field>::Elem> {
        entries.iter().map(|&(i, x)| (i, q.from_i64(x))).collect()
    }

    #[test]
    fn axpy_cancels() {
        let q = Rationals::new();
        let a = v(&q, &[(0, 2), (3, 1)]);
        let b = v(&q, &[(0, 1), (2, 5)]);
        let r = axpy(&q, &a, &q.from_i64(2), &b);
        assert_eq!(r, v(&q, &[(2, -10), (3, 1)]));
    }

    #[test]
    fn echelon_rank_and_membership() {
        let q = Rationals::new();
        let mut e = Echelon::new(q.clone());
        assert!(e.insert(&v(&q, &[(0, 1), (1, 1)])).is_some());
        assert!(e.insert(&v(&q, &[(1, 1), (2, 1)])).is_some());
        assert!(e.insert(&v(&q, &[(0, 1), (2, -1)])).is_none());
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&q, &[(0, 2), (1, 3), (2, 1)])));
        assert!(!e.contains(&v(&q, &[(2, 1)])));
    }

    #[test]
    fn kernel_of_triangle_coboundary() {
        // images of three vertex duals under δ_0 of the 3-cycle, edges 12,13,23
        let q = Rationals::new();
        let cols = vec![
            v(&q, &[(0, -1), (1, -1)]),
            v(&q, &[(0, 1), (2, -1)]),
            v(&q, &[(1, 1), (2, 1)]),
        ];
        let ker = kernel_basis(&q, &cols);
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], v(&q, &[(0, 1), (1, 1), (2, 1)]));
        assert_eq!(rank_of(&q, &cols), 2);
        let f = PrimeField::default();
        let cols_p: Vec<_> = cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(i, x)| (*i, f.from_i64(x.to_integer().try_into().unwrap())))
                    .collect()
            })
            .collect();
        assert_eq!(kernel_basis(&f, &cols_p).len(), 1);
    }
}
