use std::fmt;

use num_traits::One;

use super::laurent::LaurentPoly;
use crate::arith::{Coeff, EvalContext, Kernel, ParamRat, Rational};
use crate::error::{Error, Result};

/// Normalization of the `*`-product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// `Alt` carries `1/k!`, so the shuffle sum is scaled by `n! m! / (n+m)!`.
    #[default]
    Paper,
    /// Plain signed sum over `(n, m)`-shuffles, no prefactor.
    ShuffleSum,
}

/// An element `f / Δ_n` of the graded piece `S_n`, stored through its
/// symmetric Laurent numerator `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SElement<C> {
    numerator: LaurentPoly<C>,
}

impl<C: Coeff> SElement<C> {
    /// Wraps a numerator, rejecting non-symmetric ones.
    pub fn new(numerator: LaurentPoly<C>) -> Result<Self> {
        if !numerator.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(SElement { numerator })
    }

    /// The unit `1 ∈ S_0`.
    pub fn unit() -> Self {
        SElement { numerator: LaurentPoly::one(0) }
    }

    pub fn zero(arity: usize) -> Self {
        SElement { numerator: LaurentPoly::zero(arity) }
    }

    /// `Σ c_k z^k ∈ S_1`.
    pub fn univariate(terms: &[(i32, C)]) -> Self {
        let mut p = LaurentPoly::zero(1);
        for (k, c) in terms {
            p.add_term(vec![*k], c.clone());
        }
        SElement { numerator: p }
    }

    /// The generator `z^k ∈ S_1`.
    pub fn power(k: i32) -> Self {
        Self::univariate(&[(k, C::one())])
    }

    pub fn arity(&self) -> usize {
        self.numerator.arity()
    }

    pub fn numerator(&self) -> &LaurentPoly<C> {
        &self.numerator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other.arity())?;
        Ok(SElement { numerator: &self.numerator + &other.numerator })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other.arity())?;
        Ok(SElement { numerator: &self.numerator - &other.numerator })
    }

    pub fn scale(&self, c: &C) -> Self {
        SElement { numerator: self.numerator.scale(c) }
    }

    fn check_arity(&self, found: usize) -> Result<()> {
        if found != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found });
        }
        Ok(())
    }

    /// Ordinary multiplication of `f/Δ` by a symmetric Laurent polynomial.
    pub fn multiply_by_symmetric(&self, g: &LaurentPoly<C>) -> Result<Self> {
        self.check_arity(g.arity())?;
        if !g.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(SElement { numerator: &self.numerator * g })
    }

    pub fn specialize(&self, ctx: &EvalContext) -> Result<SElement<Rational>> {
        Ok(SElement { numerator: self.numerator.specialize(ctx)? })
    }

    /// The `*`-product with the given kernel parameters and normalization.
    ///
    /// Accumulates `h·Δ_{n+m} = c · Σ_σ sgn(σ) σ(f(z_S) g(z_T) Δ(z_S) Δ(z_T) ∏ ω(z_i, z_j))`
    /// over `(n, m)`-shuffles `σ`, then divides once by `Δ_{n+m}`.
    pub fn product(&self, other: &Self, kernel: &Kernel<C>, norm: Normalization) -> Result<Self> {
        let n = self.arity();
        let m = other.arity();
        let total = n + m;
        if n == 0 || m == 0 {
            // S_0 is the ground field; the product is scalar multiplication.
            let (scalar, elem) = if n == 0 { (self, other) } else { (other, self) };
            let c = scalar.numerator.coeff(&[]);
            return Ok(elem.scale(&c));
        }
        let first: Vec<usize> = (0..n).collect();
        let second: Vec<usize> = (n..total).collect();
        let mut base = &self.numerator.embed(total, &first) * &other.numerator.embed(total, &second);
        base = &base * &LaurentPoly::vandermonde(n).embed(total, &first);
        base = &base * &LaurentPoly::vandermonde(m).embed(total, &second);
        for &i in &first {
            for &j in &second {
                base = &base * &omega(total, i, j, kernel);
            }
        }

        let mut acc = LaurentPoly::zero(total);
        let mut perm = vec![0usize; total];
        for subset in combinations(total, n) {
            let mut in_first = vec![false; total];
            for &s in &subset {
                in_first[s] = true;
            }
            let rest: Vec<usize> = (0..total).filter(|&k| !in_first[k]).collect();
            perm[..n].copy_from_slice(&subset);
            perm[n..].copy_from_slice(&rest);
            let inversions: usize = subset.iter().enumerate().map(|(k, &s)| s - k).sum();
            let term = base.permuted(&perm);
            acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
        }

        if norm == Normalization::Paper {
            let prefactor = Rational::new(
                factorial(n) * factorial(m),
                factorial(total),
            );
            acc = acc.scale(&C::from_rational(&prefactor));
        }
        let numerator = acc.div_by_vandermonde()?;
        debug_assert!(numerator.is_symmetric());
        Ok(SElement { numerator })
    }
}

impl SElement<ParamRat> {
    /// Parses `S_n: <numerator>`, or a bare numerator in one variable.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (arity, body) = match s.strip_prefix("S_") {
            Some(rest) => {
                let (n, body) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse("expected `S_n: <numerator>`".into()))?;
                let n: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad arity `{n}`")))?;
                (n, body)
            }
            None => (1, s),
        };
        SElement::new(LaurentPoly::parse(body, arity)?)
    }
}

impl<C: Coeff> fmt::Display for SElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{}: {}", self.arity(), self.numerator)
    }
}

/// The `*`-product with the symbolic kernel and the paper normalization.
pub fn shuffle_product(f: &SElement<ParamRat>, g: &SElement<ParamRat>) -> Result<SElement<ParamRat>> {
    f.product(g, &Kernel::symbolic(), Normalization::Paper)
}

/// `ω(z_x, z_y) = (z_x − q1 z_y)(z_x − q2 z_y)`; the kernel is `μ = ω / (z_x − z_y)²`.
pub fn omega<C: Coeff>(arity: usize, x: usize, y: usize, kernel: &Kernel<C>) -> LaurentPoly<C> {
    assert_ne!(x, y, "kernel needs two distinct variables");
    let mut p = LaurentPoly::zero(arity);
    let mut e = vec![0; arity];
    e[x] = 2;
    p.add_term(e.clone(), C::one());
    e[x] = 1;
    e[y] = 1;
    p.add_term(e.clone(), -kernel.sum.clone());
    e[x] = 0;
    e[y] = 2;
    p.add_term(e, kernel.product.clone());
    p
}

fn factorial(n: usize) -> num_bigint::BigInt {
    (1..=n).fold(num_bigint::BigInt::one(), |acc, k| acc * k)
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = SElement<ParamRat>;

    fn lp(s: &str, n: usize) -> LaurentPoly<ParamRat> {
        LaurentPoly::parse(s, n).unwrap()
    }

    /// Independent oracle: the two-term alternation of `μ(z1, z2)` for
    /// `f = g = 1`, worked out by hand:
    /// `½[ω(z1,z2) − ω(z2,z1)] / (z1 − z2)² · Δ_2 = ½(1 − q1 q2)(z1 + z2)`.
    #[test]
    fn z0_times_z0() {
        let p = shuffle_product(&E::power(0), &E::power(0)).unwrap();
        assert_eq!(p.numerator(), &lp("1/2*(1 - q1*q2)*(z1 + z2)", 2));
    }

    #[test]
    fn unit_is_neutral() {
        let f = E::univariate(&[(2, ParamRat::q1()), (-1, ParamRat::from(3))]);
        assert_eq!(shuffle_product(&f, &E::unit()).unwrap(), f);
        assert_eq!(shuffle_product(&E::unit(), &f).unwrap(), f);
    }

    #[test]
    fn multiply_by_symmetric_examples() {
        let f = shuffle_product(&E::power(0), &E::power(0)).unwrap();
        let g = lp("z1*z2", 2);
        let expect = lp("1/2*(1 - q1*q2)*(z1 + z2)*z1*z2", 2);
        assert_eq!(f.multiply_by_symmetric(&g).unwrap().numerator(), &expect);
        assert_eq!(f.multiply_by_symmetric(&LaurentPoly::one(2)).unwrap(), f);
        let e1 = lp("z1 + z2", 2);
        let twice = f.multiply_by_symmetric(&e1).unwrap().multiply_by_symmetric(&e1).unwrap();
        let once = f.multiply_by_symmetric(&lp("(z1 + z2)^2", 2)).unwrap();
        assert_eq!(twice, once);
        assert_eq!(
            f.multiply_by_symmetric(&lp("z1", 1)),
            Err(Error::ArityMismatch { expected: 2, found: 1 })
        );
        assert_eq!(f.multiply_by_symmetric(&lp("z1", 2)), Err(Error::NotSymmetric));
    }

    #[test]
    fn products_are_symmetric_and_graded() {
        let f = E::univariate(&[(1, ParamRat::one())]);
        let g = E::univariate(&[(2, ParamRat::q2())]);
        let fg = shuffle_product(&f, &g).unwrap();
        let fgh = shuffle_product(&fg, &f).unwrap();
        assert_eq!(fgh.arity(), 3);
        assert!(fgh.numerator().is_symmetric());
        // deg h = deg f + deg g + n m
        assert_eq!(fg.numerator().homogeneous_degree(), Some(1 + 2 + 1));
        assert_eq!(fgh.numerator().homogeneous_degree(), Some(4 + 1 + 2));
    }

    #[test]
    fn shuffle_sum_normalization_drops_prefactor() {
        let paper = shuffle_product(&E::power(0), &E::power(1)).unwrap();
        let plain = E::power(0)
            .product(&E::power(1), &Kernel::symbolic(), Normalization::ShuffleSum)
            .unwrap();
        assert_eq!(plain, paper.scale(&ParamRat::from(2)));
    }

    #[test]
    fn specialized_kernel_matches_symbolic_then_specialized() {
        let ctx = EvalContext::default();
        let f = E::univariate(&[(1, ParamRat::one()), (-1, ParamRat::q1())]);
        let g = E::power(2);
        let symbolic = shuffle_product(&f, &g).unwrap().specialize(&ctx).unwrap();
        let fast = f
            .specialize(&ctx)
            .unwrap()
            .product(&g.specialize(&ctx).unwrap(), &Kernel::specialized(&ctx), Normalization::Paper)
            .unwrap();
        assert_eq!(symbolic, fast);
    }

    #[test]
    fn parse_element() {
        let e = E::parse("S_2: z1 + z2").unwrap();
        assert_eq!(e.arity(), 2);
        assert_eq!(E::parse(&e.to_string()).unwrap(), e);
        assert_eq!(E::parse("S_2: z1"), Err(Error::NotSymmetric));
        assert_eq!(E::parse("z1^3").unwrap(), E::power(3));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }
}
