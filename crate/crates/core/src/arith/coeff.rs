use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

use num_traits::{One, Zero};

use super::{EvalContext, ParamRat, Rational};
use crate::error::Result;

/// Coefficient ring for Laurent polynomials in the `z` variables.
///
/// Implemented by [`ParamRat`] (symbolic `q1, q2`) and by [`Rational`]
/// (parameters already specialized).
pub trait Coeff:
    Clone
    + Eq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
{
    fn mul_ref(&self, rhs: &Self) -> Self;

    fn from_rational(r: &Rational) -> Self;

    /// Value of the coefficient once `q1, q2` take the values in `ctx`.
    fn specialize(&self, ctx: &EvalContext) -> Result<Rational>;
}

/// A coefficient ring that is a field.
pub trait FieldCoeff: Coeff {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
}

impl Coeff for Rational {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn specialize(&self, _ctx: &EvalContext) -> Result<Rational> {
        Ok(self.clone())
    }
}

impl FieldCoeff for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Coeff for ParamRat {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_rational(r: &Rational) -> Self {
        ParamRat::constant(r.clone())
    }

    fn specialize(&self, ctx: &EvalContext) -> Result<Rational> {
        self.eval(&ctx.q1, &ctx.q2)
    }
}

impl FieldCoeff for ParamRat {
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// The parameters entering the kernel `ω(x, y) = (x − q1 y)(x − q2 y)`,
/// expressed in a coefficient ring.
#[derive(Clone, Debug)]
pub struct Kernel<C> {
    pub q1: C,
    pub q2: C,
    /// `q1 + q2`
    pub sum: C,
    /// `q1 * q2`
    pub product: C,
}

impl<C: Coeff> Kernel<C> {
    pub fn new(q1: C, q2: C) -> Self {
        let mut sum = q1.clone();
        sum += &q2;
        let product = q1.mul_ref(&q2);
        Kernel { q1, q2, sum, product }
    }
}

impl Kernel<ParamRat> {
    /// Kernel over `ℚ(q1, q2)` with `q1, q2` kept symbolic.
    pub fn symbolic() -> Self {
        Kernel::new(ParamRat::q1(), ParamRat::q2())
    }
}

impl Kernel<Rational> {
    pub fn specialized(ctx: &EvalContext) -> Self {
        Kernel::new(ctx.q1.clone(), ctx.q2.clone())
    }
}
