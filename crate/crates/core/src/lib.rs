//! Exact computations over prime fields for coherent sheaves on projective
//! space: cohomology tables, Castelnuovo–Mumford regularity, Frobenius
//! amplitude, splitting types of pushforwards of line bundles, and the
//! partition combinatorics behind Carter–Lusztig resolutions.

pub mod catalog;
pub mod cohomology;
pub mod famp;
pub mod field;
pub mod format;
pub mod frobsplit;
pub mod groebner;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod schur;
pub mod verify;

pub use field::{Exact, Field, FieldError, Fp, PrimeField};
pub use groebner::{FreeModule, FreeResolution, ModVec, ModuleOrder};
pub use module::{GradedMap, GradedModule, ModuleError};
pub use poly::{Monomial, MultiPoly, PolyError, PolyRing};

/// Exact rationals, used for the splitting-type solver.
pub type RationalField = Exact<num_rational::BigRational>;
/// Word-sized prime field, the coefficient field of every polynomial ring here.
pub type FpField = PrimeField;
