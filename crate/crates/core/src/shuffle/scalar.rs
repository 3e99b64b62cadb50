use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::Rational;

/// Number type that Laurent numerators and the kernel can be evaluated in:
/// plain rationals, or [`HyperDual`] numbers carrying exact first and mixed
/// second derivatives.
pub trait Scalar:
    Clone
    + Add<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + Sub<Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + Mul<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Div<Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + Neg<Output = Self>
{
    fn lift(r: &Rational) -> Self;

    /// Value part (the rational itself, or the real part of a jet).
    fn value(&self) -> &Rational;

    fn recip(&self) -> Self;

    fn powi(&self, e: i32) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut acc = Self::lift(&Rational::one());
        let mut k = e.unsigned_abs();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.clone() * &sq;
            }
        }
        acc
    }
}

impl Scalar for Rational {
    fn lift(r: &Rational) -> Self {
        r.clone()
    }

    fn value(&self) -> &Rational {
        self
    }

    fn recip(&self) -> Self {
        Rational::recip(self)
    }
}

/// `v + d1 ε1 + d2 ε2 + d12 ε1 ε2` with `ε1² = ε2² = 0`.
///
/// Evaluating `f` at `p + ε1 u + ε2 w` yields `f(p)`, `∇f·u`, `∇f·w` and
/// `uᵀ H w` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperDual {
    pub v: Rational,
    pub d1: Rational,
    pub d2: Rational,
    pub d12: Rational,
}

impl HyperDual {
    pub fn new(v: Rational, d1: Rational, d2: Rational) -> Self {
        HyperDual { v, d1, d2, d12: Rational::zero() }
    }

    pub fn constant(v: Rational) -> Self {
        HyperDual::new(v, Rational::zero(), Rational::zero())
    }
}

impl<'a> Add<&'a HyperDual> for HyperDual {
    type Output = HyperDual;
    fn add(self, o: &HyperDual) -> HyperDual {
        HyperDual {
            v: self.v + &o.v,
            d1: self.d1 + &o.d1,
            d2: self.d2 + &o.d2,
            d12: self.d12 + &o.d12,
        }
    }
}

impl<'a> Sub<&'a HyperDual> for HyperDual {
    type Output = HyperDual;
    fn sub(self, o: &HyperDual) -> HyperDual {
        HyperDual {
            v: self.v - &o.v,
            d1: self.d1 - &o.d1,
            d2: self.d2 - &o.d2,
            d12: self.d12 - &o.d12,
        }
    }
}

impl<'a> Mul<&'a HyperDual> for HyperDual {
    type Output = HyperDual;
    fn mul(self, o: &HyperDual) -> HyperDual {
        HyperDual {
            d12: &self.v * &o.d12 + &self.d12 * &o.v + &self.d1 * &o.d2 + &self.d2 * &o.d1,
            d1: &self.v * &o.d1 + &self.d1 * &o.v,
            d2: &self.v * &o.d2 + &self.d2 * &o.v,
            v: self.v * &o.v,
        }
    }
}

impl<'a> Div<&'a HyperDual> for HyperDual {
    type Output = HyperDual;
    fn div(self, o: &HyperDual) -> HyperDual {
        self * &o.recip()
    }
}

macro_rules! by_value {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for HyperDual {
            type Output = HyperDual;
            fn $m(self, o: HyperDual) -> HyperDual {
                self.$m(&o)
            }
        }
    )*};
}
by_value!(Add add, Sub sub, Mul mul, Div div);

impl Neg for HyperDual {
    type Output = HyperDual;
    fn neg(self) -> HyperDual {
        HyperDual { v: -self.v, d1: -self.d1, d2: -self.d2, d12: -self.d12 }
    }
}

impl Scalar for HyperDual {
    fn lift(r: &Rational) -> Self {
        HyperDual::constant(r.clone())
    }

    fn value(&self) -> &Rational {
        &self.v
    }

    fn recip(&self) -> Self {
        // f = 1/x: f' = -1/x², f'' = 2/x³
        let inv = Rational::recip(&self.v);
        let inv2 = &inv * &inv;
        let inv3 = &inv2 * &inv;
        HyperDual {
            d12: -(&self.d12 * &inv2) + Rational::from_integer(2.into()) * &self.d1 * &self.d2 * &inv3,
            d1: -(&self.d1 * &inv2),
            d2: -(&self.d2 * &inv2),
            v: inv,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn x_at(v: i64) -> HyperDual {
        HyperDual::new(int(v), int(1), int(1))
    }

    #[test]
    fn cube_derivatives() {
        // x^3 at 2: f = 8, f' = 12, f'' = 12
        let y = x_at(2).powi(3);
        assert_eq!((y.v, y.d1, y.d2, y.d12), (int(8), int(12), int(12), int(12)));
    }

    #[test]
    fn reciprocal_derivatives() {
        // x^-2 at 2: f = 1/4, f' = -2/8, f'' = 6/16
        let y = x_at(2).powi(-2);
        assert_eq!((y.v, y.d1, y.d12), (rat(1, 4), rat(-1, 4), rat(3, 8)));
    }

    #[test]
    fn mixed_partial_of_product() {
        // f(x, y) = x^2 y at (1, 3) with ε1 along x and ε2 along y: f_xy = 2x = 2
        let x = HyperDual::new(int(1), int(1), int(0));
        let y = HyperDual::new(int(3), int(0), int(1));
        let f = x.clone() * &x * &y;
        assert_eq!((f.v, f.d1, f.d2, f.d12), (int(3), int(6), int(1), int(2)));
    }
}
