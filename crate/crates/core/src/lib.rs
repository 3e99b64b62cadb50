//! Exact computations in the two-parameter shuffle algebra and its quotient by
//! the right ideal generated by `z − λ`.
//!
//! - [`arith`]: rationals, `ℚ[q1, q2]`, `ℚ(q1, q2)` and numeric contexts.
//! - [`shuffle`]: symmetric Laurent numerators over the Vandermonde, the
//!   `*`-product, and exact (derivative) evaluation of ideal generators.
//! - [`rewrite`]: shuffle words, quadratic relations and normal forms.
//! - [`grid`], [`locus`]: grid subsets, their points, and the zero locus of
//!   the ideal with multiplicity certificates.
//! - [`combinatorics`]: admissible subsets, binary trees, Hilbert dimensions,
//!   Catalan numbers and the Dyck-path bijection.

pub mod arith;
pub mod combinatorics;
mod error;
pub mod grid;
pub mod locus;
pub mod rewrite;
pub mod shuffle;

pub use error::{Error, Result};
