//! Reduced Heisenberg algebras with four-dimensional abelianization.
//!
//! The kernel of the commutator map Λ²(K⁴) → Z determines the algebra; this
//! crate classifies such kernels up to the action of GL₄(K), produces
//! generators of their stabilizers and of the full automorphism group, and
//! counts automorphism orbits by brute force over small finite fields.

pub mod classify;
pub mod exterior;
pub mod field;
pub mod forms;
pub mod heisenberg;
pub mod linalg;
pub mod orbits;
pub mod quaternion;

pub use classify::{classify_subspace, ClassifyError, OrbitLabel};
pub use exterior::ExteriorError;
pub use field::{
    AnyField, Field, FieldError, FieldProfile, FieldSpec, FiniteField, FunctionField, Gf, LElem,
    QuadExtension, RatFn, Rationals, RepSet,
};
pub use forms::{BinaryQForm, FormsError, HermitianForm};
pub use heisenberg::{Automorphism, GeneratorSet, HeisError, HeisenbergAlgebra};
pub use linalg::{Matrix, Subspace};
pub use orbits::{OmegaCounts, OrbitReport, OrbitsError, TableReport};
pub use quaternion::{QuatAlgebra, QuatError, Quaternion};
