use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::context::EvalContext;
use super::param_poly::{param_gcd, ParamPoly};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Element of `ℚ(q1, q2)`, kept as a reduced fraction whose denominator has
/// leading coefficient 1 in graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamRat {
    num: ParamPoly,
    den: ParamPoly,
}

impl ParamRat {
    /// Builds `num / den` in normal form. Fails if `den` is zero.
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        ParamRat { num: p, den: ParamPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(ParamPoly::constant(c))
    }

    pub fn q1() -> Self {
        Self::from_poly(ParamPoly::q1())
    }

    pub fn q2() -> Self {
        Self::from_poly(ParamPoly::q2())
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denom(&self) -> &ParamPoly {
        &self.den
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn normalized(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return ParamRat::zero();
        }
        if let Some(c) = den.as_constant() {
            let inv = c.recip();
            return ParamRat { num: num.scale(&inv), den: ParamPoly::one() };
        }
        let g = param_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc_inv = den.leading_coeff().unwrap().recip();
        ParamRat { num: num.scale(&lc_inv), den: den.scale(&lc_inv) }
    }

    /// Re-runs normalization; the identity on values built through the API.
    pub fn renormalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.num.is_zero(), "reciprocal of zero in Q(q1,q2)");
        Self::normalized(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut acc = ParamRat::one();
        for _ in 0..e.unsigned_abs() {
            acc *= &base;
        }
        acc
    }

    /// Value at `(q1, q2)`.
    pub fn eval(&self, q1: &Rational, q2: &Rational) -> Result<Rational> {
        let d = self.den.eval(q1, q2);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(self.num.eval(q1, q2) / d)
    }
}

/// Specializes `x` at the parameters of `ctx`.
pub fn param_eval(x: &ParamRat, ctx: &EvalContext) -> Result<Rational> {
    x.eval(&ctx.q1, &ctx.q2)
}

impl Zero for ParamRat {
    fn zero() -> Self {
        ParamRat { num: ParamPoly::zero(), den: ParamPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for ParamRat {
    fn one() -> Self {
        ParamRat::from_poly(ParamPoly::one())
    }
}

impl<'a> Add<&'a ParamRat> for &'a ParamRat {
    type Output = ParamRat;
    fn add(self, o: &ParamRat) -> ParamRat {
        if self.den == o.den {
            // Common denominator (including 1): the sum can only shrink it.
            let num = &self.num + &o.num;
            if self.den.is_one() {
                return ParamRat { num, den: ParamPoly::one() };
            }
            return ParamRat::normalized(num, self.den.clone());
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        ParamRat::normalized(num, &self.den * &o.den)
    }
}

impl<'a> Sub<&'a ParamRat> for &'a ParamRat {
    type Output = ParamRat;
    fn sub(self, o: &ParamRat) -> ParamRat {
        self + &(-o)
    }
}

impl<'a> Mul<&'a ParamRat> for &'a ParamRat {
    type Output = ParamRat;
    fn mul(self, o: &ParamRat) -> ParamRat {
        if self.num.is_zero() || o.num.is_zero() {
            return ParamRat::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return ParamRat { num: &self.num * &o.num, den: ParamPoly::one() };
        }
        ParamRat::normalized(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a> Div<&'a ParamRat> for &'a ParamRat {
    type Output = ParamRat;
    fn div(self, o: &ParamRat) -> ParamRat {
        self * &o.recip()
    }
}

impl Neg for &ParamRat {
    type Output = ParamRat;
    fn neg(self) -> ParamRat {
        ParamRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for ParamRat {
    type Output = ParamRat;
    fn neg(self) -> ParamRat {
        ParamRat { num: -self.num, den: self.den }
    }
}

macro_rules! forward_value_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ParamRat {
            type Output = ParamRat;
            fn $m(self, o: ParamRat) -> ParamRat {
                (&self).$m(&o)
            }
        }
    )*};
}
forward_value_ops!(Add add, Sub sub, Mul mul, Div div);

impl<'a> AddAssign<&'a ParamRat> for ParamRat {
    fn add_assign(&mut self, o: &ParamRat) {
        *self = &*self + o;
    }
}

impl<'a> SubAssign<&'a ParamRat> for ParamRat {
    fn sub_assign(&mut self, o: &ParamRat) {
        *self = &*self - o;
    }
}

impl<'a> MulAssign<&'a ParamRat> for ParamRat {
    fn mul_assign(&mut self, o: &ParamRat) {
        *self = &*self * o;
    }
}

impl From<Rational> for ParamRat {
    fn from(c: Rational) -> Self {
        ParamRat::constant(c)
    }
}

impl From<i64> for ParamRat {
    fn from(n: i64) -> Self {
        ParamRat::constant(super::rational::int(n))
    }
}

impl fmt::Display for ParamRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl FromStr for ParamRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_param_rat(s)
    }
}
