//! Elements of `S_n` as symmetric Laurent numerators over `Δ_n`, the
//! `*`-product, and exact evaluation of ideal generators and their
//! derivatives.

mod element;
mod eval;
mod laurent;
mod scalar;
mod symmetric;

pub use element::{omega, shuffle_product, Normalization, SElement};
pub use eval::{
    coset_factor, eval_element, eval_generator, eval_generator_jet, generator_at, Derivative, Point,
};
pub use laurent::LaurentPoly;
pub use scalar::{HyperDual, Scalar};
pub use symmetric::{
    random_symmetric, random_univariate, MonomialSymmetric, SymmetricNumerator, RANDOM_COEFFS,
    RANDOM_EXPONENTS,
};
