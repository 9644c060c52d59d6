//! Exact computation of multiplier and weak-multiplier spaces of
//! finite-dimensional algebras given by structure constants.
//!
//! The core is generic over the scalar type through the [`field::Field`]
//! trait; the two instantiations are arbitrary-precision rationals
//! (`num_rational::BigRational`) and prime fields F_p with a runtime
//! modulus. All linear algebra is exact and all subspaces are kept in
//! canonical RREF form, so results are deterministic down to the byte.

pub mod algebra;
pub mod catalog;
pub mod field;
pub mod json;
pub mod linalg;
pub mod multiplier;
pub mod oracle;
pub mod report;

pub use algebra::{Algebra, AlgebraElement, AlgebraError, NihilDecomposition};
pub use field::{Field, FieldError, FieldSpec, Fp, FpCtx};
pub use linalg::{Matrix, Subspace};
pub use multiplier::{MultiplierKind, MultiplierSpace};

/// Rational scalar backing the exact solvers.
pub type Rational = num_rational::BigRational;

/// Concrete instantiations over the rationals.
pub type RationalMatrix = Matrix<Rational>;
pub type RationalSubspace = Subspace<Rational>;
pub type RationalAlgebra = Algebra<Rational>;

/// Concrete instantiations over prime fields.
pub type FpMatrix = Matrix<Fp>;
pub type FpSubspace = Subspace<Fp>;
pub type FpAlgebra = Algebra<Fp>;
