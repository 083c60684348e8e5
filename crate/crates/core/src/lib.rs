//! Ordinary and double cohomology of moment-angle complexes.
//!
//! A simplicial complex `K` on `[m]` determines `H*(Z_K)` as the direct sum
//! of the reduced cohomologies of its full subcomplexes `K_I`. Restriction
//! maps between these summands assemble into a second differential `d'`;
//! its cohomology is the double cohomology `HH*(Z_K)`. This crate computes
//! both with exact linear algebra over all `2^m` subsets, and provides the
//! constructions (joins, wedges, simplex gluing, the `K_{2r}` family) and
//! checks that go with them.
//!
//! The linear algebra is generic over a [`Field`]. Exact rationals are the
//! default; [`PrimeField`] trades exactness in characteristic zero for speed.
//!
//! ```
//! use machh_core::{RationalEngine, SimplicialComplex};
//!
//! let square = SimplicialComplex::square();
//! let hh = RationalEngine::default().hh_ranks(&square).unwrap();
//! assert_eq!(hh.total(), 4);
//! ```

pub mod cohomology;
pub mod complex;
pub mod double;
pub mod error;
pub mod field;
pub mod gluing;
pub mod io;
pub mod linalg;
pub mod mask;
pub mod oracle;

pub use cohomology::{reduced_cohomology, AugmentedCochainComplex, CohomologyBasis, Degree};
pub use complex::{k2r_family, k2r_size, FamilyMember, SimplicialComplex};
pub use double::{Analysis, Bidegree, BigradedRankTable, Engine, RowComplex, Thm1Verification};
pub use error::{Error, Result};
pub use field::{Field, PrimeField, RationalField};
pub use gluing::{check_theorem1, ReducedBetti, Thm1Report};
pub use mask::SubsetMask;

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
/// The field of rationals with arbitrary-precision entries.
pub type Rationals = RationalField<num_bigint::BigInt>;
/// Engine over exact rationals.
pub type RationalEngine = Engine<Rationals>;
/// Engine over GF(p).
pub type ModularEngine = Engine<PrimeField>;

impl Default for RationalEngine {
    fn default() -> Self {
        Engine::new(Rationals::new())
    }
}
