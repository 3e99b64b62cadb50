//! Exact arithmetic: rationals, polynomials in the parameters `q1, q2`, their
//! fraction field, and numeric specialization contexts.

mod coeff;
mod context;
pub mod linalg;
mod param_poly;
mod param_rat;
pub mod parse;
mod rational;

pub use coeff::{Coeff, FieldCoeff, Kernel};
pub use context::{EvalContext, Mode, DEFAULT_GUARD};
pub use param_poly::{param_gcd, Exp2, ParamPoly};
pub use param_rat::{param_eval, ParamRat};
pub use rational::{int, parse_rational, pow_i32, rat, Rational};
