use std::fmt;

use num_traits::{One, Zero};

use super::element::SElement;
use super::scalar::{HyperDual, Scalar};
use super::symmetric::SymmetricNumerator;
use crate::arith::{Coeff, EvalContext, Rational};
use crate::error::{Error, Result};

/// A point of `(ℚ^*)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    /// Rejects zero coordinates; distinctness is checked where it matters.
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if let Some(index) = coords.iter().position(Zero::is_zero) {
            return Err(Error::ZeroCoordinate { index });
        }
        Ok(Point { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn check_distinct(&self) -> Result<()> {
        check_distinct(&self.coords)
    }

    /// Every coordinate multiplied by `s`.
    pub fn scaled(&self, s: &Rational) -> Result<Point> {
        Point::new(self.coords.iter().map(|c| c * s).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_distinct(values: &[Rational]) -> Result<()> {
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] == values[j] {
                return Err(Error::DistinctnessViolation { i, j });
            }
        }
    }
    Ok(())
}

fn check_point<S: Scalar>(pts: &[S]) -> Result<()> {
    if let Some(index) = pts.iter().position(|p| p.value().is_zero()) {
        return Err(Error::ZeroCoordinate { index });
    }
    let values: Vec<Rational> = pts.iter().map(|p| p.value().clone()).collect();
    check_distinct(&values)
}

fn vandermonde_at<S: Scalar>(pts: &[S]) -> S {
    let mut acc = S::lift(&Rational::one());
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            acc = acc * (pts[i].clone() - &pts[j]);
        }
    }
    acc
}

/// Exact value `f(p) / Δ(p)` of an element at a point.
pub fn eval_element<C: Coeff>(f: &SElement<C>, p: &Point, ctx: &EvalContext) -> Result<Rational> {
    if p.len() != f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), found: p.len() });
    }
    p.check_distinct()?;
    let num = f.numerator().eval_at(p.coords(), ctx)?;
    Ok(num / vandermonde_at(p.coords()))
}

/// `A_c = (z_c − λ) ∏_{i≠c} μ(z_c, z_i)`, the summand of the generator in
/// which `z_c` plays the role of the distinguished variable.
pub fn coset_factor<S: Scalar>(c: usize, pts: &[S], ctx: &EvalContext) -> Result<S> {
    check_point(pts)?;
    let (q1, q2) = (S::lift(&ctx.q1), S::lift(&ctx.q2));
    let zc = &pts[c];
    let mut num = zc.clone() - &S::lift(&ctx.lambda);
    let mut den = S::lift(&Rational::one());
    for (i, zi) in pts.iter().enumerate() {
        if i == c {
            continue;
        }
        let a = zc.clone() - &(q1.clone() * zi);
        let b = zc.clone() - &(q2.clone() * zi);
        let d = zc.clone() - zi;
        num = num * a * b;
        den = den * d.clone() * d;
    }
    Ok(num / den)
}

/// Which derivative of a generator to evaluate (0-based variable indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivative {
    None,
    First(usize),
    Second(usize, usize),
}

/// Value of `G = (z − λ) * F` at the scalar point `pts`, where `F = f / Δ`
/// and `f` has arity `pts.len() − 1`:
/// `G = (1/n) Σ_c (−1)^c A_c · f(z_{≠c}) / Δ(z_{≠c})`.
pub fn generator_at<S: Scalar, N: SymmetricNumerator>(
    f: &N,
    pts: &[S],
    ctx: &EvalContext,
) -> Result<S> {
    let n = pts.len();
    if n == 0 || f.arity() != n - 1 {
        return Err(Error::ArityMismatch { expected: f.arity() + 1, found: n });
    }
    check_point(pts)?;
    let mut acc = S::lift(&Rational::zero());
    let mut rest: Vec<S> = Vec::with_capacity(n - 1);
    for c in 0..n {
        rest.clear();
        rest.extend(pts.iter().enumerate().filter(|(i, _)| *i != c).map(|(_, p)| p.clone()));
        let term = coset_factor(c, pts, ctx)? * f.eval_scalar(&rest, ctx)? / vandermonde_at(&rest);
        acc = if c % 2 == 0 { acc + term } else { acc - term };
    }
    Ok(acc / S::lift(&Rational::from_integer((n as i64).into())))
}

/// Evaluates `G` at `p + ε1 u + ε2 w`: the value, `u·∇G`, `w·∇G` and
/// `uᵀ (∇²G) w`, all exact.
pub fn eval_generator_jet<N: SymmetricNumerator>(
    f: &N,
    p: &Point,
    ctx: &EvalContext,
    u: &[Rational],
    w: &[Rational],
) -> Result<HyperDual> {
    if u.len() != p.len() || w.len() != p.len() {
        return Err(Error::ArityMismatch { expected: p.len(), found: u.len().min(w.len()) });
    }
    let pts: Vec<HyperDual> = p
        .coords()
        .iter()
        .zip(u.iter().zip(w))
        .map(|(x, (du, dw))| HyperDual::new(x.clone(), du.clone(), dw.clone()))
        .collect();
    generator_at(f, &pts, ctx)
}

/// Value or partial derivative (order ≤ 2) of `G = (z − λ) * F` at `p`.
pub fn eval_generator<N: SymmetricNumerator>(
    f: &N,
    p: &Point,
    ctx: &EvalContext,
    derivative: Derivative,
) -> Result<Rational> {
    let n = p.len();
    let unit = |i: usize| -> Result<Vec<Rational>> {
        if i >= n {
            return Err(Error::InvalidInput(format!("variable index {} out of range 1..={n}", i + 1)));
        }
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        Ok(e)
    };
    match derivative {
        Derivative::None => generator_at(f, p.coords(), ctx),
        Derivative::First(i) => {
            let zero = vec![Rational::zero(); n];
            Ok(eval_generator_jet(f, p, ctx, &unit(i)?, &zero)?.d1)
        }
        Derivative::Second(i, j) => Ok(eval_generator_jet(f, p, ctx, &unit(i)?, &unit(j)?)?.d12),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Kernel};
    use crate::shuffle::element::{shuffle_product, Normalization};
    use crate::shuffle::laurent::LaurentPoly;

    fn ctx() -> EvalContext {
        EvalContext::default()
    }

    #[test]
    fn z0_z0_value() {
        let e = shuffle_product(&SElement::power(0), &SElement::power(0)).unwrap();
        let p = Point::from_ints(&[1, 2]).unwrap();
        assert_eq!(eval_element(&e, &p, &ctx()).unwrap(), crate::arith::rat(15, 2));
        let bad = Point::from_ints(&[2, 2]).unwrap();
        assert_eq!(eval_element(&e, &bad, &ctx()), Err(Error::DistinctnessViolation { i: 0, j: 1 }));
        let swapped = Point::from_ints(&[2, 1]).unwrap();
        assert_eq!(eval_element(&e, &swapped, &ctx()).unwrap(), crate::arith::rat(-15, 2));
    }

    #[test]
    fn zero_coordinates_rejected() {
        assert_eq!(Point::from_ints(&[1, 0]), Err(Error::ZeroCoordinate { index: 1 }));
    }

    #[test]
    fn simplest_point_value_and_derivative_vanish() {
        let one = LaurentPoly::<Rational>::one(3);
        let p = Point::from_ints(&[1, 2, 3, 6]).unwrap();
        assert!(eval_generator(&one, &p, &ctx(), Derivative::None).unwrap().is_zero());
        assert!(eval_generator(&one, &p, &ctx(), Derivative::First(3)).unwrap().is_zero());
        assert!(!eval_generator(&one, &p, &ctx(), Derivative::First(0)).unwrap().is_zero());
    }

    #[test]
    fn two_point_generator_is_nonzero() {
        let one = LaurentPoly::<Rational>::one(1);
        let p = Point::from_ints(&[1, 5]).unwrap();
        // Independent oracle: ½[(z1−1)ω(z1,z2) − (z2−1)ω(z2,z1)] / (z1−z2)².
        let (z1, z2) = (int(1), int(5));
        let w = |x: &Rational, y: &Rational| (x - int(2) * y) * (x - int(3) * y);
        let d2 = (&z1 - &z2) * (&z1 - &z2);
        let expect = ((&z1 - int(1)) * w(&z1, &z2) / &d2 - (&z2 - int(1)) * w(&z2, &z1) / &d2)
            / int(2);
        let got = eval_generator(&one, &p, &ctx(), Derivative::None).unwrap();
        assert_eq!(got, expect);
        assert!(!got.is_zero());
    }

    /// The closed form must agree with expanding `(z − λ) * F` symbolically.
    #[test]
    fn generator_matches_shuffle_product() {
        let ctx = EvalContext::default().with_lambda(crate::arith::rat(3, 2));
        let kernel = Kernel::specialized(&ctx);
        let z_minus_lambda = SElement::univariate(&[(1, int(1)), (0, -ctx.lambda.clone())]);
        let f = LaurentPoly::parse("z1^2*z2^-1 + z2^2*z1^-1 - 3*z1*z2", 2)
            .unwrap()
            .specialize(&ctx)
            .unwrap();
        let g = z_minus_lambda
            .product(&SElement::new(f.clone()).unwrap(), &kernel, Normalization::Paper)
            .unwrap();
        let p = Point::new(vec![int(4), crate::arith::rat(1, 3), int(-2)]).unwrap();
        assert_eq!(
            eval_generator(&f, &p, &ctx, Derivative::None).unwrap(),
            eval_element(&g, &p, &ctx).unwrap()
        );
    }

    #[test]
    fn second_derivative_is_symmetric() {
        let f = LaurentPoly::parse("z1 + z2", 2).unwrap().specialize(&ctx()).unwrap();
        let p = Point::from_ints(&[2, 7, -3]).unwrap();
        let a = eval_generator(&f, &p, &ctx(), Derivative::Second(0, 2)).unwrap();
        let b = eval_generator(&f, &p, &ctx(), Derivative::Second(2, 0)).unwrap();
        assert_eq!(a, b);
    }
}
