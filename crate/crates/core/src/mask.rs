//! Subsets of the ground set `[m]` packed into a single machine word.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported ground-set size.
pub const MAX_VERTICES: usize = 30;

/// A subset `I ⊆ [m]`. Vertex `i` (1-based) lives in bit `i - 1`.
///
/// The mask itself does not know `m`; the owning complex does. Ordering is
/// lexicographic on the sorted vertex lists, so `{1,4} < {2,3}` and a
/// prefix sorts before its extensions (`{1,2} < {1,2,3}`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The full ground set `[m]`.
    #[inline]
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= MAX_VERTICES);
        SubsetMask(((1u64 << m) - 1) as u32)
    }

    /// The singleton `{v}` for a 1-based vertex `v`.
    #[inline]
    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        SubsetMask(1 << (v - 1))
    }

    /// Builds a mask from 1-based vertices. Returns `None` if a vertex is 0 or
    /// exceeds `MAX_VERTICES`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Option<Self> {
        let mut bits = 0u32;
        for v in vertices {
            if v == 0 || v > MAX_VERTICES {
                return None;
            }
            bits |= 1 << (v - 1);
        }
        Some(SubsetMask(bits))
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v >= 1 && v <= MAX_VERTICES && self.0 & (1 << (v - 1)) != 0
    }

    #[inline]
    pub const fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    /// True if every set bit lies among the low `m` bits.
    #[inline]
    pub fn fits(self, m: usize) -> bool {
        self.is_subset_of(SubsetMask::full(m))
    }

    #[inline]
    pub const fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        self.union(SubsetMask::singleton(v))
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        self.difference(SubsetMask::singleton(v))
    }

    /// Number of elements strictly smaller than the 1-based vertex `v`.
    #[inline]
    pub fn count_below(self, v: usize) -> usize {
        debug_assert!(v >= 1);
        (self.0 & ((1u32 << (v - 1)) - 1)).count_ones() as usize
    }

    /// Smallest element, if any.
    #[inline]
    pub fn min_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Elements in increasing order, 1-based.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    /// All subsets of `self` (including `∅` and `self`), in increasing
    /// numeric order of their bit patterns.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }

    /// Subsets of `self` of size exactly `self.len() - 1`.
    pub fn facets_of_boundary(self) -> impl Iterator<Item = SubsetMask> {
        self.vertices().map(move |v| self.without(v))
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let d = diff.trailing_zeros();
        // `other` has no element at or beyond position d: it is a prefix of self.
        if self.0 & (1 << d) != 0 {
            if other.0 >> d == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if self.0 >> d == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, v) in self.vertices().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone)]
pub struct Vertices(u32);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

/// Standard `(s - universe) & universe` walk over the submasks of a mask.
#[derive(Clone)]
pub struct Subsets {
    universe: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = if cur == self.universe {
            None
        } else {
            Some(cur.wrapping_sub(self.universe) & self.universe)
        };
        Some(SubsetMask(cur))
    }
}

/// All subsets of `[m]` of cardinality `k`, in lexicographic order.
pub fn subsets_of_size(m: usize, k: usize) -> Vec<SubsetMask> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    // Gosper's hack yields colex order; sort afterwards for lex.
    if k == 0 {
        return vec![SubsetMask::EMPTY];
    }
    let limit = 1u64 << m;
    let mut x: u64 = (1u64 << k) - 1;
    while x < limit {
        out.push(SubsetMask(x as u32));
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out.sort_unstable();
    out
}
