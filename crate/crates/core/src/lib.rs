//! Exact max-plus linear algebra for normal matrices: commutativity and
//! commutants, alcoved-polytope constraint systems, the bounding matrices
//! `underline(A)` / `overline(A)`, perturbation families, and planar span
//! sections for 3×3 matrices.
//!
//! Everything is generic over [`Scalar`]; [`Rat`] (arbitrary-precision
//! rationals) is the default carrier and the one the reference data uses.

pub mod commutant;
pub mod error;
pub mod ext;
pub mod fixtures;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod perturb;
pub mod polytope;
pub mod sample;
pub mod scalar;
pub mod section;
pub mod span;
pub mod svg;

pub use commutant::{commutes, omega_w_dim_bound, omega_w_system, witness_winners, Winner, WitnessSet};
pub use error::{Error, Result};
pub use ext::{Bottom, ExtReal, Finite};
pub use matrix::TropMatrix;
pub use polytope::{compute_overline, compute_underline, polytope_dim, DiffConstraintSystem, Relabeling};
pub use scalar::Scalar;
pub use section::{section_complex, SpanSection};
pub use span::{span_contains, span_member};

pub type Rat = num_rational::BigRational;
pub type ExtRat = ExtReal<Rat>;
pub type Matrix = TropMatrix<Rat>;
pub type MatrixF64 = TropMatrix<f64>;
