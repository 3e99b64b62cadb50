use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::scalar::Scalar;
use crate::arith::parse::{parse_expr, Expr};
use crate::arith::{Coeff, EvalContext, ParamRat, Rational};
use crate::error::{Error, Result};

/// Sparse Laurent polynomial in `z1, …, zn` with coefficients in `C`.
///
/// Terms are keyed by their exponent vector; zero coefficients are never
/// stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly<C> {
    arity: usize,
    terms: BTreeMap<Vec<i32>, C>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero(arity: usize) -> Self {
        LaurentPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: C) -> Self {
        Self::monomial(vec![0; arity], c)
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, C::one())
    }

    pub fn monomial(exponents: Vec<i32>, c: C) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// The variable `z_{i+1}` (0-based index `i`).
    pub fn variable(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    /// Sum of `c · z^σ(e)` over the distinct rearrangements `σ(e)` of `e`.
    pub fn symmetrized_monomial(exponents: &[i32], c: C) -> Self {
        let mut e = exponents.to_vec();
        e.sort_unstable();
        let mut p = Self::zero(e.len());
        loop {
            p.add_term(e.clone(), c.clone());
            if !next_permutation(&mut e) {
                break;
            }
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[i32]) -> C {
        self.terms.get(exponents).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exponents: Vec<i32>, c: C) {
        debug_assert_eq!(exponents.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn add_term_ref(&mut self, exponents: &[i32], c: &C) {
        if c.is_zero() {
            return;
        }
        if let Some(v) = self.terms.get_mut(exponents) {
            *v += c;
            if v.is_zero() {
                self.terms.remove(exponents);
            }
        } else {
            self.terms.insert(exponents.to_vec(), c.clone());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        LaurentPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v.mul_ref(c))).collect(),
        }
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.arity);
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.arity];
            for (i, &k) in e.iter().enumerate() {
                f[perm[i]] = k;
            }
            out.terms.insert(f, c.clone());
        }
        out
    }

    /// Places this polynomial in `new_arity` variables, variable `i` going to
    /// `positions[i]`.
    pub fn embed(&self, new_arity: usize, positions: &[usize]) -> Self {
        debug_assert_eq!(positions.len(), self.arity);
        let mut out = Self::zero(new_arity);
        for (e, c) in &self.terms {
            let mut f = vec![0; new_arity];
            for (i, &k) in e.iter().enumerate() {
                f[positions[i]] = k;
            }
            out.terms.insert(f, c.clone());
        }
        out
    }

    /// Invariance under every adjacent transposition.
    pub fn is_symmetric(&self) -> bool {
        (0..self.arity.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut f = e.clone();
                f.swap(i, i + 1);
                self.terms.get(&f) == Some(c)
            })
        })
    }

    /// Common total degree of all terms, if the polynomial is homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&k| k as i64).sum::<i64>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// `∏_{i<j} (z_i − z_j)`.
    pub fn vandermonde(arity: usize) -> Self {
        let mut v = Self::one(arity);
        for i in 0..arity {
            for j in i + 1..arity {
                v = &v * &(&Self::variable(arity, i) - &Self::variable(arity, j));
            }
        }
        v
    }

    /// Exact quotient by `z_i − z_j`; a nonzero remainder is an
    /// [`Error::InexactDivision`].
    pub fn div_by_difference(&self, i: usize, j: usize) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        // Coefficients P_e of z_i^e (as polynomials in the other variables).
        let mut slices: BTreeMap<i32, BTreeMap<Vec<i32>, C>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[i];
            rest[i] = 0;
            slices.entry(k).or_default().insert(rest, c.clone());
        }
        let emin = *slices.keys().next().unwrap();
        let emax = *slices.keys().next_back().unwrap();
        // Q_{e-1} = P_e + z_j Q_e, from the top down; Q_emax = 0.
        let mut quotient = Self::zero(self.arity);
        let mut carry: BTreeMap<Vec<i32>, C> = BTreeMap::new();
        for e in (emin..=emax).rev() {
            let mut next: BTreeMap<Vec<i32>, C> = BTreeMap::new();
            for (mut rest, c) in std::mem::take(&mut carry) {
                rest[j] += 1;
                next.insert(rest, c);
            }
            if let Some(p) = slices.get(&e) {
                for (rest, c) in p {
                    match next.get_mut(rest) {
                        Some(v) => {
                            *v += c;
                            if v.is_zero() {
                                next.remove(rest);
                            }
                        }
                        None => {
                            next.insert(rest.clone(), c.clone());
                        }
                    }
                }
            }
            if e == emin {
                if !next.is_empty() {
                    return Err(Error::InexactDivision);
                }
                break;
            }
            for (rest, c) in &next {
                let mut full = rest.clone();
                full[i] = e - 1;
                quotient.terms.insert(full, c.clone());
            }
            carry = next;
        }
        Ok(quotient)
    }

    /// Exact quotient by the Vandermonde `∏_{i<j}(z_i − z_j)`.
    pub fn div_by_vandermonde(&self) -> Result<Self> {
        let mut q = self.clone();
        for i in 0..self.arity {
            for j in i + 1..self.arity {
                q = q.div_by_difference(i, j)?;
            }
        }
        Ok(q)
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> Result<D>) -> Result<LaurentPoly<D>> {
        let mut out = LaurentPoly::zero(self.arity);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Coefficients specialized at the parameters of `ctx`.
    pub fn specialize(&self, ctx: &EvalContext) -> Result<LaurentPoly<Rational>> {
        self.map_coeffs(|c| c.specialize(ctx))
    }

    /// Value at `pts` (coefficients specialized at `ctx`). Zero coordinates
    /// are rejected only if some negative power needs them.
    pub fn eval_at<S: Scalar>(&self, pts: &[S], ctx: &EvalContext) -> Result<S> {
        if pts.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: pts.len() });
        }
        let mut powers = PowerCache::new(pts);
        let mut acc = S::lift(&Rational::zero());
        for (e, c) in &self.terms {
            let mut term = S::lift(&c.specialize(ctx)?);
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    term = term * powers.get(i, k)?;
                }
            }
            acc = acc + &term;
        }
        Ok(acc)
    }
}

impl LaurentPoly<ParamRat> {
    /// Parses an expression in `z1..zn`, `q1`, `q2`. Division is allowed by
    /// single terms only (monomials in `z` with a parameter coefficient).
    pub fn parse(s: &str, arity: usize) -> Result<Self> {
        expr_to_laurent(&parse_expr(s)?, arity)
    }
}

fn expr_to_laurent(e: &Expr, arity: usize) -> Result<LaurentPoly<ParamRat>> {
    Ok(match e {
        Expr::Num(r) => LaurentPoly::constant(arity, ParamRat::constant(r.clone())),
        Expr::Var(v) => match v.as_str() {
            "q1" => LaurentPoly::constant(arity, ParamRat::q1()),
            "q2" => LaurentPoly::constant(arity, ParamRat::q2()),
            name => {
                let idx = name
                    .strip_prefix('z')
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 1 && k <= arity)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}` (arity {arity})")))?;
                LaurentPoly::variable(arity, idx - 1)
            }
        },
        Expr::Add(a, b) => &expr_to_laurent(a, arity)? + &expr_to_laurent(b, arity)?,
        Expr::Sub(a, b) => &expr_to_laurent(a, arity)? - &expr_to_laurent(b, arity)?,
        Expr::Mul(a, b) => &expr_to_laurent(a, arity)? * &expr_to_laurent(b, arity)?,
        Expr::Neg(a) => -&expr_to_laurent(a, arity)?,
        Expr::Div(a, b) => {
            let num = expr_to_laurent(a, arity)?;
            let inv = single_term_inverse(&expr_to_laurent(b, arity)?)?;
            &num * &inv
        }
        Expr::Pow(a, k) => {
            let base = expr_to_laurent(a, arity)?;
            let base = if *k < 0 { single_term_inverse(&base)? } else { base };
            let mut acc = LaurentPoly::one(arity);
            for _ in 0..k.unsigned_abs() {
                acc = &acc * &base;
            }
            acc
        }
    })
}

fn single_term_inverse(p: &LaurentPoly<ParamRat>) -> Result<LaurentPoly<ParamRat>> {
    let mut it = p.terms();
    match (it.next(), it.next()) {
        (Some((e, c)), None) => Ok(LaurentPoly::monomial(
            e.iter().map(|k| -k).collect(),
            c.recip(),
        )),
        (None, _) => Err(Error::Parse("division by zero".into())),
        _ => Err(Error::Parse("can only divide by a single term".into())),
    }
}

/// Memoized integer powers of the coordinates of a point.
pub(crate) struct PowerCache<'a, S> {
    pts: &'a [S],
    cache: BTreeMap<(usize, i32), S>,
}

impl<'a, S: Scalar> PowerCache<'a, S> {
    pub(crate) fn new(pts: &'a [S]) -> Self {
        PowerCache { pts, cache: BTreeMap::new() }
    }

    pub(crate) fn get(&mut self, i: usize, k: i32) -> Result<&S> {
        if k < 0 && self.pts[i].value().is_zero() {
            return Err(Error::ZeroCoordinate { index: i });
        }
        Ok(self
            .cache
            .entry((i, k))
            .or_insert_with(|| self.pts[i].powi(k)))
    }
}

/// Lexicographic successor permutation; `false` once the last is reached.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl<'a, C: Coeff> Add<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        assert_eq!(self.arity, o.arity, "arity mismatch in addition");
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term_ref(e, c);
        }
        r
    }
}

impl<'a, C: Coeff> Sub<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        assert_eq!(self.arity, o.arity, "arity mismatch in subtraction");
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term_ref(e, &-c.clone());
        }
        r
    }
}

impl<'a, C: Coeff> Mul<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        assert_eq!(self.arity, o.arity, "arity mismatch in multiplication");
        let mut r = LaurentPoly::zero(self.arity);
        let mut buf = vec![0; self.arity];
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                for k in 0..self.arity {
                    buf[k] = e[k] + f[k];
                }
                r.add_term_ref(&buf, &c.mul_ref(d));
            }
        }
        r
    }
}

impl<'a, C: Coeff> Neg for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    /// `(c1)*z1^2*z2^-1 + (c2)*z2 + …`; parseable back for `ParamRat`
    /// coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*z{}", i + 1)?,
                    _ => write!(f, "*z{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}
