//! Homotopy Lie algebras of hypersolvable hyperplane arrangements.
//!
//! From an arrangement or a matroid this computes the Orlik-Solomon algebra,
//! solvable chains and the singular range, the holonomy enveloping algebra
//! `R`, the homotopy module `M` as homology of the linear strand `A (x) R*`,
//! bigraded Hilbert series of `U(g)`, flag-complex presentations for generic
//! slices, and rescaled homotopy ranks.
//!
//! Linear algebra is generic over [`kernel::Field`] (a thin layer on
//! `num-traits`); the aliases below fix the rational instantiation.

pub mod arrangement;
pub mod bits;
pub mod flags;
pub mod homotopy;
pub mod hypersolvable;
pub mod io;
pub mod kernel;
pub mod os;
pub mod quadratic;
pub mod series;

/// Default exact scalar.
pub type Scalar = kernel::Rational;
/// Sparse matrix over [`Scalar`].
pub type Matrix = kernel::SparseMatrix<Scalar>;
/// Cochain complex over [`Scalar`].
pub type Complex = kernel::FiniteComplex<Scalar>;
/// Quadratic algebra with exact coefficients.
pub type QuadraticAlgebra = quadratic::GradedQuadraticAlgebra<kernel::FieldArith<Scalar>>;
/// Quadratic algebra reduced modulo a run-time prime.
pub type ModularQuadraticAlgebra = quadratic::GradedQuadraticAlgebra<kernel::ModArith>;
