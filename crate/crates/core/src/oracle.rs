//! Brute-force ground truth for small complexes.
//!
//! Everything here is deliberately naive: dense matrices of `BigRational`,
//! textbook Gauss-Jordan elimination, simplices as sorted vertex lists, and
//! a fresh elimination for every solve. Nothing is shared with the engine
//! besides the input complex type.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::mask::SubsetMask;

/// Largest complex (in vertices) accepted by [`oracle_reduced_betti`].
pub const ORACLE_MAX_VERTICES: usize = 12;
/// Largest ground set accepted by the double-cohomology oracle.
pub const ORACLE_MAX_M: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<BigRational>>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![vec![BigRational::zero(); cols]; rows],
        }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<BigRational>]) -> Self {
        let mut out = DenseMatrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, x) in col.iter().enumerate() {
                out.entries[r][c] = x.clone();
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.entries[i][c].is_zero()) else {
                continue;
            };
            self.entries.swap(r, p);
            let inv = self.entries[r][c].recip();
            for x in self.entries[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..self.rows {
                if i != r && !self.entries[i][c].is_zero() {
                    let factor = self.entries[i][c].clone();
                    for j in 0..self.cols {
                        if !self.entries[r][j].is_zero() {
                            let delta = &factor * &self.entries[r][j];
                            self.entries[i][j] -= delta;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.entries[row][f].clone();
                }
                v
            })
            .collect()
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        let mut aug = DenseMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.entries[r][c] = self.entries[r][c].clone();
            }
            aug.entries[r][self.cols] = b[r].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.entries[row][self.cols].clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The simplices of `K_I` with exactly `size` vertices, as sorted vertex lists,
/// found by testing every `size`-subset of `I` for membership.
fn simplices_of(complex: &SimplicialComplex, subset: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(
        complex: &SimplicialComplex,
        subset: &[usize],
        size: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == size {
            let mask = SubsetMask::from_vertices(chosen.iter().copied()).expect("valid vertices");
            if complex.contains(mask) {
                out.push(chosen.clone());
            }
            return;
        }
        for idx in start..subset.len() {
            chosen.push(subset[idx]);
            go(complex, subset, size, idx + 1, chosen, out);
            chosen.pop();
        }
    }
    go(complex, subset, size, 0, &mut chosen, &mut out);
    out
}

/// Dense matrix of `δ : C^{size-1} → C^{size}` on the simplices of `K_I`.
///
/// For a simplex `T = (t_0 < ... < t_q)` and its face `S` missing `t_pos`,
/// the entry is `(-1)^pos`.
fn coboundary(lower: &[Vec<usize>], upper: &[Vec<usize>]) -> DenseMatrix {
    let mut d = DenseMatrix::zeros(upper.len(), lower.len());
    for (r, t) in upper.iter().enumerate() {
        for pos in 0..t.len() {
            let mut face = t.clone();
            face.remove(pos);
            if let Some(c) = lower.iter().position(|s| *s == face) {
                d.entries[r][c] = int(if pos % 2 == 0 { 1 } else { -1 });
            }
        }
    }
    d
}

struct CochainData {
    // cochain basis in degree p, p-1 and p+1 (sizes p+1, p, p+2)
    basis: Vec<Vec<usize>>,
    delta_out: DenseMatrix,
    delta_in: DenseMatrix,
}

fn cochain_data(complex: &SimplicialComplex, subset: &[usize], degree: isize) -> Option<CochainData> {
    let size = usize::try_from(degree + 1).ok()?;
    let basis = simplices_of(complex, subset, size);
    if basis.is_empty() {
        return None;
    }
    let upper = simplices_of(complex, subset, size + 1);
    let lower = if size == 0 {
        Vec::new()
    } else {
        simplices_of(complex, subset, size - 1)
    };
    Some(CochainData {
        delta_out: coboundary(&basis, &upper),
        delta_in: coboundary(&lower, &basis),
        basis,
    })
}

/// Rank of `H̃^degree(L)` from dense coboundary ranks.
pub fn oracle_reduced_betti(complex: &SimplicialComplex, degree: isize) -> Result<usize> {
    if complex.m() > ORACLE_MAX_VERTICES {
        return Err(Error::ResourceLimit {
            m: complex.m(),
            limit: ORACLE_MAX_VERTICES,
        });
    }
    let vertices: Vec<usize> = (1..=complex.m()).collect();
    Ok(betti_of(complex, &vertices, degree))
}

fn betti_of(complex: &SimplicialComplex, subset: &[usize], degree: isize) -> usize {
    match cochain_data(complex, subset, degree) {
        None => 0,
        Some(data) => data.basis.len() - data.delta_out.rank() - data.delta_in.rank(),
    }
}

/// One summand `H̃^p(K_I)`: the simplex basis, representative cocycles, and
/// the coboundary columns.
struct Summand {
    subset: Vec<usize>,
    basis: Vec<Vec<usize>>,
    reps: Vec<Vec<BigRational>>,
    coboundaries: Vec<Vec<BigRational>>,
}

fn summand(complex: &SimplicialComplex, subset: Vec<usize>, degree: isize) -> Option<Summand> {
    let data = cochain_data(complex, &subset, degree)?;
    let dim = data.basis.len();
    let coboundaries: Vec<Vec<BigRational>> = (0..data.delta_in.cols)
        .map(|c| (0..dim).map(|r| data.delta_in.entries[r][c].clone()).collect())
        .collect();
    let mut reps: Vec<Vec<BigRational>> = Vec::new();
    let mut span = coboundaries.clone();
    let mut current = DenseMatrix::from_columns(dim, &span).rank();
    for z in data.delta_out.nullspace() {
        span.push(z.clone());
        let next = DenseMatrix::from_columns(dim, &span).rank();
        if next > current {
            reps.push(z);
            current = next;
        } else {
            span.pop();
        }
    }
    if reps.is_empty() {
        return None;
    }
    Some(Summand {
        subset,
        basis: data.basis,
        reps,
        coboundaries,
    })
}

/// Coordinates of the class of `cocycle` among `target.reps`.
fn coordinates(target: &Summand, cocycle: &[BigRational]) -> Result<Vec<BigRational>> {
    let mut cols = target.coboundaries.clone();
    cols.extend(target.reps.iter().cloned());
    let a = DenseMatrix::from_columns(target.basis.len(), &cols);
    let x = a
        .solve(cocycle)
        .ok_or_else(|| Error::InternalInconsistency("restricted cocycle not in cocycle space".into()))?;
    Ok(x[target.coboundaries.len()..].to_vec())
}

fn all_subsets_of_size(m: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for bits in 0u32..(1 << m) {
        if bits.count_ones() as usize == l {
            out.push((1..=m).filter(|v| bits & (1 << (v - 1)) != 0).collect());
        }
    }
    out.sort();
    out
}

/// Double-cohomology ranks per row, `p ↦ rank`, zero rows omitted.
pub fn oracle_hh_rows(complex: &SimplicialComplex) -> Result<BTreeMap<isize, usize>> {
    Ok(oracle_hh_by_row_and_size(complex)?
        .into_iter()
        .fold(BTreeMap::new(), |mut acc, ((p, _), r)| {
            *acc.entry(p).or_insert(0) += r;
            acc
        }))
}

/// Total rank of the double cohomology.
pub fn oracle_hh_total(complex: &SimplicialComplex) -> Result<usize> {
    Ok(oracle_hh_rows(complex)?.values().sum())
}

/// Ranks keyed by `(row p, cardinality l)`, zero entries omitted.
pub fn oracle_hh_by_row_and_size(complex: &SimplicialComplex) -> Result<BTreeMap<(isize, usize), usize>> {
    let m = complex.m();
    if m > ORACLE_MAX_M {
        return Err(Error::ResourceLimit { m, limit: ORACLE_MAX_M });
    }
    let mut out = BTreeMap::new();
    for p in -1..(m as isize) {
        let groups: Vec<Vec<Summand>> = (0..=m)
            .map(|l| {
                all_subsets_of_size(m, l)
                    .into_iter()
                    .filter_map(|s| summand(complex, s, p))
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = groups.iter().map(|g| g.iter().map(|s| s.reps.len()).sum()).collect();
        let mut d_rank = vec![0usize; m + 2];
        for l in 1..=m {
            d_rank[l] = differential(&groups[l], &groups[l - 1], p)?.rank();
        }
        for l in 0..=m {
            let r = dims[l] - d_rank[l] - d_rank[l + 1];
            if r > 0 {
                out.insert((p, l), r);
            }
        }
    }
    Ok(out)
}

/// `(-1)^{p+1} Σ_i ε(i, I) ψ_{p;i,I}` as a dense block matrix.
fn differential(sources: &[Summand], targets: &[Summand], p: isize) -> Result<DenseMatrix> {
    let rows: usize = targets.iter().map(|t| t.reps.len()).sum();
    let cols: usize = sources.iter().map(|s| s.reps.len()).sum();
    let mut d = DenseMatrix::zeros(rows, cols);
    let mut col0 = 0;
    for src in sources {
        for (pos, &i) in src.subset.iter().enumerate() {
            let smaller: Vec<usize> = src.subset.iter().copied().filter(|&v| v != i).collect();
            let mut row0 = 0;
            let mut target = None;
            for t in targets {
                if t.subset == smaller {
                    target = Some(t);
                    break;
                }
                row0 += t.reps.len();
            }
            let Some(target) = target else { continue };
            // position of i in the sorted list I equals #{j ∈ I : j < i}
            let exponent = (p + 1) as i64 + pos as i64;
            let sign = int(if exponent.rem_euclid(2) == 0 { 1 } else { -1 });
            for (c, rep) in src.reps.iter().enumerate() {
                let restricted: Vec<BigRational> = target
                    .basis
                    .iter()
                    .map(|simplex| {
                        let idx = src.basis.iter().position(|s| s == simplex).expect("subcomplex simplex");
                        rep[idx].clone()
                    })
                    .collect();
                for (r, x) in coordinates(target, &restricted)?.into_iter().enumerate() {
                    d.entries[row0 + r][col0 + c] += &sign * x;
                }
            }
        }
        col0 += src.reps.len();
    }
    Ok(d)
}

/// `true` if every entry of `v` is zero.
pub fn is_zero_vector(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}
