//! Finite simplicial complexes on `[m]` and the constructions used to build
//! them: full subcomplexes, joins, wedges, simplex gluing and the `K_{2r}`
//! family of complexes with prescribed double-cohomology rank.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::mask::{SubsetMask, MAX_VERTICES};

/// A downward-closed family of subsets of `[m]` that contains `∅` and every
/// singleton. Immutable once built.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    m: usize,
    faces: HashSet<SubsetMask>,
    // by_size[k] holds the faces with k vertices, sorted lexicographically.
    by_size: Vec<Vec<SubsetMask>>,
    facets: Vec<SubsetMask>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Builds the complex generated by `facets` (1-based vertex lists).
    ///
    /// Every vertex of `[m]` must appear in some facet; a vertex that does not
    /// is reported as [`Error::GhostVertex`] rather than added silently.
    pub fn from_facets<F, V>(m: usize, facets: F) -> Result<Self>
    where
        F: IntoIterator<Item = V>,
        V: AsRef<[usize]>,
    {
        if m == 0 || m > MAX_VERTICES {
            return Err(Error::BadGroundSet(m));
        }
        let mut masks = Vec::new();
        for facet in facets {
            let mut bits = SubsetMask::EMPTY;
            for &v in facet.as_ref() {
                if v == 0 || v > m {
                    return Err(Error::VertexOutOfRange { vertex: v, m });
                }
                bits = bits.with(v);
            }
            masks.push(bits);
        }
        Self::from_facet_masks(m, masks)
    }

    /// Like [`from_facets`](Self::from_facets) with the generators given as
    /// masks. Generators need not be inclusion-maximal.
    pub fn from_facet_masks<I>(m: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = SubsetMask>,
    {
        if m > MAX_VERTICES {
            return Err(Error::BadGroundSet(m));
        }
        let mut faces = HashSet::new();
        faces.insert(SubsetMask::EMPTY);
        for g in generators {
            if !g.fits(m) {
                let vertex = g.vertices().find(|&v| v > m).unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex, m });
            }
            if faces.contains(&g) {
                continue;
            }
            for s in g.subsets() {
                faces.insert(s);
            }
        }
        if let Some(v) = (1..=m).find(|&v| !faces.contains(&SubsetMask::singleton(v))) {
            return Err(Error::GhostVertex(v));
        }
        Ok(Self::from_closed_faces(m, faces))
    }

    /// `faces` must already be downward closed and contain every singleton.
    fn from_closed_faces(m: usize, faces: HashSet<SubsetMask>) -> Self {
        let mut by_size = vec![Vec::new(); m + 1];
        for &f in &faces {
            by_size[f.len()].push(f);
        }
        for layer in &mut by_size {
            layer.sort_unstable();
        }
        while by_size.len() > 1 && by_size.last().is_some_and(Vec::is_empty) {
            by_size.pop();
        }
        let mut facets: Vec<SubsetMask> = faces
            .iter()
            .copied()
            .filter(|&f| {
                SubsetMask::full(m)
                    .difference(f)
                    .vertices()
                    .all(|v| !faces.contains(&f.with(v)))
            })
            .collect();
        facets.sort_unstable();
        SimplicialComplex {
            m,
            faces,
            by_size,
            facets,
        }
    }

    /// The single point on `[1]`.
    pub fn point() -> Self {
        Self::simplex(1)
    }

    /// The full simplex on `[m]`.
    pub fn simplex(m: usize) -> Self {
        Self::from_facet_masks(m, [SubsetMask::full(m)]).expect("simplex is valid")
    }

    /// The boundary of the simplex on `[m]` (for `m >= 2`).
    pub fn simplex_boundary(m: usize) -> Self {
        assert!(m >= 2);
        let full = SubsetMask::full(m);
        Self::from_facet_masks(m, full.facets_of_boundary()).expect("boundary is valid")
    }

    /// `m` isolated points.
    pub fn discrete(m: usize) -> Self {
        Self::from_facet_masks(m, (1..=m).map(SubsetMask::singleton)).expect("points are valid")
    }

    /// The 4-cycle `1-2-3-4-1`.
    pub fn square() -> Self {
        Self::from_facets(4, [[1, 2], [2, 3], [3, 4], [1, 4]]).expect("square is valid")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertex_set(&self) -> SubsetMask {
        SubsetMask::full(self.m)
    }

    pub fn contains(&self, face: SubsetMask) -> bool {
        self.faces.contains(&face)
    }

    /// Number of faces including `∅`.
    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn facets(&self) -> &[SubsetMask] {
        &self.facets
    }

    /// Faces with exactly `k` vertices, lexicographically ordered.
    pub fn faces_of_size(&self, k: usize) -> &[SubsetMask] {
        self.by_size.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All faces, by size and then lexicographically.
    pub fn faces(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.by_size.iter().flatten().copied()
    }

    /// Largest face size; the dimension is this minus one.
    pub fn max_face_size(&self) -> usize {
        self.by_size.len() - 1
    }

    pub fn is_simplex(&self) -> bool {
        self.contains(self.vertex_set())
    }

    /// Faces of the full subcomplex on `subset`, in the original labels,
    /// grouped by size and lexicographically ordered inside each group.
    pub fn faces_within(&self, subset: SubsetMask) -> Vec<Vec<SubsetMask>> {
        let mut out: Vec<Vec<SubsetMask>> = vec![Vec::new(); subset.len() + 1];
        let cheap_enumeration = subset.len() < 20 && (1usize << subset.len()) < self.faces.len();
        if cheap_enumeration {
            for s in subset.subsets() {
                if self.faces.contains(&s) {
                    out[s.len()].push(s);
                }
            }
            for layer in &mut out {
                layer.sort_unstable();
            }
        } else {
            for (k, layer) in self.by_size.iter().enumerate().take(subset.len() + 1) {
                out[k].extend(layer.iter().copied().filter(|f| f.is_subset_of(subset)));
            }
        }
        while out.len() > 1 && out.last().is_some_and(Vec::is_empty) {
            out.pop();
        }
        out
    }

    /// The full subcomplex `K_I`, relabeled onto `[|I|]` preserving vertex order.
    pub fn full_subcomplex(&self, subset: SubsetMask) -> SimplicialComplex {
        let subset = subset.intersection(self.vertex_set());
        let positions: Vec<usize> = subset.vertices().collect();
        let squeeze = |f: SubsetMask| {
            let mut bits = 0u32;
            for (n, &v) in positions.iter().enumerate() {
                if f.contains(v) {
                    bits |= 1 << n;
                }
            }
            SubsetMask::from_bits(bits)
        };
        let faces = self.faces_within(subset).into_iter().flatten().map(squeeze).collect();
        Self::from_closed_faces(positions.len(), faces)
    }

    /// Applies a relabeling: vertex `v` becomes `perm[v - 1]` (both 1-based).
    pub fn relabel(&self, perm: &[usize]) -> Result<SimplicialComplex> {
        if perm.len() != self.m {
            return Err(Error::BadPermutation(self.m));
        }
        let mut seen = SubsetMask::EMPTY;
        for &p in perm {
            if p == 0 || p > self.m || seen.contains(p) {
                return Err(Error::BadPermutation(self.m));
            }
            seen = seen.with(p);
        }
        let faces = self.faces.iter().map(|&f| relabel_mask(f, perm)).collect();
        Ok(Self::from_closed_faces(self.m, faces))
    }

    /// Simplicial join; the vertices of `other` are shifted by `self.m()`.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let m = self.m + other.m;
        if m > MAX_VERTICES {
            return Err(Error::BadGroundSet(m));
        }
        let shift = self.m as u32;
        let mut faces = HashSet::with_capacity(self.faces.len() * other.faces.len());
        for &s in &self.faces {
            for &t in &other.faces {
                faces.insert(SubsetMask::from_bits(s.bits() | (t.bits() << shift)));
            }
        }
        Ok(Self::from_closed_faces(m, faces))
    }

    /// One-point union identifying vertex `at_self` of `self` with vertex
    /// `at_other` of `other`.
    ///
    /// Vertices of `self` keep their labels. The remaining vertices of
    /// `other` follow as `m + 1, m + 2, ...` in their original order.
    pub fn wedge(&self, at_self: usize, other: &SimplicialComplex, at_other: usize) -> Result<SimplicialComplex> {
        if !(1..=self.m).contains(&at_self) {
            return Err(Error::NotAVertex(at_self));
        }
        if !(1..=other.m).contains(&at_other) {
            return Err(Error::NotAVertex(at_other));
        }
        let m = self.m + other.m - 1;
        if m > MAX_VERTICES {
            return Err(Error::BadGroundSet(m));
        }
        let map: Vec<usize> = (1..=other.m)
            .map(|v| match v.cmp(&at_other) {
                std::cmp::Ordering::Less => self.m + v,
                std::cmp::Ordering::Equal => at_self,
                std::cmp::Ordering::Greater => self.m + v - 1,
            })
            .collect();
        let mut faces = self.faces.clone();
        faces.extend(other.faces.iter().map(|&f| relabel_mask(f, &map)));
        Ok(Self::from_closed_faces(m, faces))
    }

    /// Adds the simplex `sigma`, whose whole boundary must already be present.
    pub fn glue_simplex(&self, sigma: SubsetMask) -> Result<SimplicialComplex> {
        if sigma.len() < 2 || !sigma.fits(self.m) {
            return Err(Error::BadSigma(sigma));
        }
        if self.contains(sigma) {
            return Err(Error::FaceAlreadyPresent(sigma));
        }
        if let Some(missing) = sigma.facets_of_boundary().find(|t| !self.contains(*t)) {
            return Err(Error::BoundaryMissing(missing));
        }
        let mut faces = self.faces.clone();
        faces.insert(sigma);
        Ok(Self::from_closed_faces(self.m, faces))
    }

    /// Facets as sorted 1-based vertex lists.
    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.vertices().collect()).collect()
    }
}

fn relabel_mask(f: SubsetMask, map: &[usize]) -> SubsetMask {
    let mut out = SubsetMask::EMPTY;
    for v in f.vertices() {
        out = out.with(map[v - 1]);
    }
    out
}

/// A member of the `K_{2r}` family together with its tracked non-edge.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub complex: SimplicialComplex,
    /// Two vertices `x, y` (1-based) with `{x, y}` not a face.
    pub non_edge: (usize, usize),
}

/// The complex `K_{2r}` whose moment-angle complex has double cohomology of
/// total rank `2r`.
///
/// Base cases are the square (`r = 2`, non-edge `{1,3}`) and the square with
/// the diagonal `{1,3}` glued in (`r = 1`, non-edge `{2,4}`). For even `r` the
/// complex is `K_r * {A,B}` with non-edge `{A,B}`; for odd `r` it is
/// `K_{r+1} * {A,B}` with the edge `{A,B}` glued in, keeping the non-edge of
/// `K_{r+1}`. `A` and `B` are the two new highest-numbered vertices.
pub fn k2r_family(r: usize) -> Result<FamilyMember> {
    match r {
        0 => Err(Error::BadGroundSet(0)),
        2 => Ok(FamilyMember {
            complex: SimplicialComplex::square(),
            non_edge: (1, 3),
        }),
        1 => {
            let square = SimplicialComplex::square();
            let complex = square.glue_simplex(mask2(1, 3))?;
            Ok(FamilyMember {
                complex,
                non_edge: (2, 4),
            })
        }
        r if r % 2 == 0 => {
            let half = k2r_family(r / 2)?;
            let joined = half.complex.join(&SimplicialComplex::discrete(2))?;
            let (a, b) = (joined.m() - 1, joined.m());
            Ok(FamilyMember {
                complex: joined,
                non_edge: (a, b),
            })
        }
        r => {
            let next = k2r_family(r.div_ceil(2))?;
            let joined = next.complex.join(&SimplicialComplex::discrete(2))?;
            let (a, b) = (joined.m() - 1, joined.m());
            let complex = joined.glue_simplex(mask2(a, b))?;
            Ok(FamilyMember {
                complex,
                non_edge: next.non_edge,
            })
        }
    }
}

/// Ground-set size of `K_{2r}` without building it.
pub fn k2r_size(r: usize) -> usize {
    match r {
        0 => 0,
        1 | 2 => 4,
        r if r % 2 == 0 => k2r_size(r / 2) + 2,
        r => k2r_size(r.div_ceil(2)) + 2,
    }
}

fn mask2(a: usize, b: usize) -> SubsetMask {
    SubsetMask::singleton(a).with(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask(vs: &[usize]) -> SubsetMask {
        SubsetMask::from_vertices(vs.iter().copied()).unwrap()
    }

    #[test]
    fn square_from_facets() {
        let k = SimplicialComplex::square();
        assert_eq!(k.m(), 4);
        assert_eq!(k.num_faces(), 9);
        assert_eq!(k.faces_of_size(1).len(), 4);
        assert_eq!(k.faces_of_size(2).len(), 4);
        assert_eq!(k.facets().len(), 4);
        assert!(!k.contains(mask(&[1, 3])));
    }

    #[test]
    fn point_and_errors() {
        let p = SimplicialComplex::from_facets(1, [[1]]).unwrap();
        assert_eq!(p.num_faces(), 2);
        assert_eq!(SimplicialComplex::from_facets(3, [[1, 2]]), Err(Error::GhostVertex(3)));
        assert_eq!(
            SimplicialComplex::from_facets(2, [[0, 1]]),
            Err(Error::VertexOutOfRange { vertex: 0, m: 2 })
        );
        assert_eq!(
            SimplicialComplex::from_facets(2, [[1, 3]]),
            Err(Error::VertexOutOfRange { vertex: 3, m: 2 })
        );
        assert!(SimplicialComplex::from_facets(0, Vec::<Vec<usize>>::new()).is_err());
    }

    #[test]
    fn full_subcomplexes_of_square() {
        let k = SimplicialComplex::square();
        let path = k.full_subcomplex(mask(&[1, 2, 3]));
        assert_eq!(path, SimplicialComplex::from_facets(3, [[1, 2], [2, 3]]).unwrap());
        let empty = k.full_subcomplex(SubsetMask::EMPTY);
        assert_eq!(empty.m(), 0);
        assert_eq!(empty.num_faces(), 1);
        let pts = k.full_subcomplex(mask(&[1, 3]));
        assert_eq!(pts, SimplicialComplex::discrete(2));
    }

    #[test]
    fn join_of_two_zero_spheres_is_a_square() {
        let s0 = SimplicialComplex::discrete(2);
        let j = s0.join(&s0).unwrap();
        // vertices A=1, B=2, C=3, D=4: cycle 1-3-2-4-1
        let expected = SimplicialComplex::from_facets(4, [[1, 3], [3, 2], [2, 4], [4, 1]]).unwrap();
        assert_eq!(j, expected);
    }

    #[test]
    fn cone_contains_or_omits_apex() {
        let k = SimplicialComplex::square();
        let cone = SimplicialComplex::point().join(&k).unwrap();
        assert_eq!(cone.m(), 5);
        assert_eq!(cone.num_faces(), 2 * k.num_faces());
        assert_eq!(cone.facets().len(), 4);
        assert!(cone.facets().iter().all(|f| f.contains(1)));
    }

    #[test]
    fn wedges() {
        let edge = SimplicialComplex::simplex(2);
        let path = edge.wedge(2, &edge, 1).unwrap();
        assert_eq!(path, SimplicialComplex::from_facets(3, [[1, 2], [2, 3]]).unwrap());
        let sq = SimplicialComplex::square();
        let two = sq.wedge(1, &sq, 1).unwrap();
        assert_eq!(two.m(), 7);
        assert_eq!(two.faces_of_size(2).len(), 8);
        let same = SimplicialComplex::point().wedge(1, &sq, 3).unwrap();
        assert_eq!(same.m(), 4);
        assert_eq!(same.faces_of_size(2).len(), 4);
        assert_eq!(sq.wedge(5, &sq, 1), Err(Error::NotAVertex(5)));
    }

    #[test]
    fn gluing() {
        let sq = SimplicialComplex::square();
        let k2 = sq.glue_simplex(mask(&[1, 3])).unwrap();
        assert_eq!(k2.faces_of_size(2).len(), 5);
        assert_eq!(
            sq.glue_simplex(mask(&[1, 2])),
            Err(Error::FaceAlreadyPresent(mask(&[1, 2])))
        );
        assert_eq!(
            k2.glue_simplex(mask(&[1, 2, 4])),
            Err(Error::BoundaryMissing(mask(&[2, 4])))
        );
        let edge = SimplicialComplex::discrete(2).glue_simplex(mask(&[1, 2])).unwrap();
        assert_eq!(edge, SimplicialComplex::simplex(2));
    }

    #[test]
    fn relabel_validates() {
        let sq = SimplicialComplex::square();
        let r = sq.relabel(&[2, 3, 4, 1]).unwrap();
        assert!(r.contains(mask(&[2, 3])) && r.contains(mask(&[1, 2])));
        assert!(sq.relabel(&[1, 1, 2, 3]).is_err());
        assert!(sq.relabel(&[1, 2, 3]).is_err());
    }

    #[test]
    fn family_sizes_and_non_edges() {
        assert_eq!(k2r_family(2).unwrap().complex, SimplicialComplex::square());
        let k2 = k2r_family(1).unwrap();
        assert!(k2.complex.contains(mask(&[1, 3])));
        assert_eq!(k2.non_edge, (2, 4));
        let k6 = k2r_family(3).unwrap();
        assert_eq!(k6.complex.m(), 6);
        assert!(k6.complex.contains(mask(&[5, 6])));
        assert_eq!(k6.non_edge, (1, 3));
        assert_eq!(k2r_family(5).unwrap().complex.m(), 8);
        for r in 1..=16 {
            let member = k2r_family(r).unwrap();
            assert_eq!(member.complex.m(), k2r_size(r), "r = {r}");
            let (x, y) = member.non_edge;
            assert!(!member.complex.contains(mask(&[x, y])), "r = {r}");
        }
        assert!(k2r_family(0).is_err());
    }
}
