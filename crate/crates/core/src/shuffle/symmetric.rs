use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;

use super::laurent::{next_permutation, LaurentPoly, PowerCache};
use super::scalar::Scalar;
use crate::arith::{int, Coeff, EvalContext, Rational};
use crate::error::{Error, Result};

/// A symmetric Laurent polynomial in the monomial-symmetric basis: each
/// sorted exponent multiset `λ` stands for `m_λ = Σ` over the distinct
/// permutations of `z^λ`.
///
/// Evaluation never expands the orbit; it runs a dynamic program over the
/// remaining multiplicities of each exponent, which stays small even when
/// the orbit has tens of thousands of monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSymmetric<C> {
    arity: usize,
    terms: BTreeMap<Vec<i32>, C>,
}

/// Something that can be evaluated as a symmetric numerator `f(z_1..z_n)`.
pub trait SymmetricNumerator {
    fn arity(&self) -> usize;
    fn eval_scalar<S: Scalar>(&self, pts: &[S], ctx: &EvalContext) -> Result<S>;
}

impl<C: Coeff> SymmetricNumerator for LaurentPoly<C> {
    fn arity(&self) -> usize {
        LaurentPoly::arity(self)
    }

    fn eval_scalar<S: Scalar>(&self, pts: &[S], ctx: &EvalContext) -> Result<S> {
        self.eval_at(pts, ctx)
    }
}

impl<C: Coeff> MonomialSymmetric<C> {
    pub fn zero(arity: usize) -> Self {
        MonomialSymmetric { arity, terms: BTreeMap::new() }
    }

    /// Adds `c · m_λ` where `λ` is `exponents` in any order.
    pub fn add_term(&mut self, mut exponents: Vec<i32>, c: C) {
        assert_eq!(exponents.len(), self.arity, "exponent vector length must equal arity");
        exponents.sort_unstable();
        let slot = self.terms.entry(exponents.clone()).or_insert_with(C::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The same polynomial in the monomial basis.
    pub fn expand(&self) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero(self.arity);
        for (lam, c) in &self.terms {
            let mut e = lam.clone();
            loop {
                out.add_term(e.clone(), c.clone());
                if !next_permutation(&mut e) {
                    break;
                }
            }
        }
        out
    }
}

impl<C: Coeff> SymmetricNumerator for MonomialSymmetric<C> {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval_scalar<S: Scalar>(&self, pts: &[S], ctx: &EvalContext) -> Result<S> {
        if pts.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: pts.len() });
        }
        let mut powers = PowerCache::new(pts);
        let mut total = S::lift(&Rational::zero());
        for (lam, c) in &self.terms {
            let mut values: Vec<i32> = lam.clone();
            values.dedup();
            let counts: Vec<u8> = values
                .iter()
                .map(|v| lam.iter().filter(|e| *e == v).count() as u8)
                .collect();
            // dp maps the remaining multiplicities to the partial sum over
            // all ways of assigning exponents to the variables seen so far.
            let mut dp: BTreeMap<Vec<u8>, S> = BTreeMap::new();
            dp.insert(counts, S::lift(&Rational::one()));
            for i in 0..self.arity {
                let mut next: BTreeMap<Vec<u8>, S> = BTreeMap::new();
                for (state, acc) in dp {
                    for (k, &v) in values.iter().enumerate() {
                        if state[k] == 0 {
                            continue;
                        }
                        let mut s = state.clone();
                        s[k] -= 1;
                        let term = if v == 0 { acc.clone() } else { acc.clone() * powers.get(i, v)? };
                        match next.get_mut(&s) {
                            Some(slot) => *slot = slot.clone() + term,
                            None => {
                                next.insert(s, term);
                            }
                        }
                    }
                }
                dp = next;
            }
            let orbit_sum = dp.into_values().next().unwrap_or_else(|| S::lift(&Rational::one()));
            total = total + S::lift(&c.specialize(ctx)?) * orbit_sum;
        }
        Ok(total)
    }
}

/// Exponent range used by random symmetric numerators.
pub const RANDOM_EXPONENTS: (i32, i32) = (-2, 3);
/// Coefficient range used by random symmetric numerators (zero excluded).
pub const RANDOM_COEFFS: (i64, i64) = (-9, 9);

fn random_coeff<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let c = rng.gen_range(RANDOM_COEFFS.0..=RANDOM_COEFFS.1);
        if c != 0 {
            return int(c);
        }
    }
}

/// A random sparse symmetric numerator of the given arity: `terms`
/// symmetrized monomials with exponents in [`RANDOM_EXPONENTS`] and nonzero
/// coefficients in [`RANDOM_COEFFS`].
pub fn random_symmetric<R: Rng + ?Sized>(
    arity: usize,
    terms: usize,
    rng: &mut R,
) -> MonomialSymmetric<Rational> {
    let mut out = MonomialSymmetric::zero(arity);
    if arity == 0 {
        out.add_term(Vec::new(), random_coeff(rng));
        return out;
    }
    while out.terms.len() < terms {
        let e: Vec<i32> = (0..arity)
            .map(|_| rng.gen_range(RANDOM_EXPONENTS.0..=RANDOM_EXPONENTS.1))
            .collect();
        out.add_term(e, random_coeff(rng));
    }
    out
}

/// A random element `Σ c_k z^k` of `S_1` with `k` in `degrees` and nonzero
/// coefficients in [`RANDOM_COEFFS`]; each degree is present with
/// probability one half, and at least one is present.
pub fn random_univariate<R: Rng + ?Sized>(degrees: (i32, i32), rng: &mut R) -> Vec<(i32, Rational)> {
    loop {
        let mut terms = Vec::new();
        for k in degrees.0..=degrees.1 {
            if rng.gen_bool(0.5) {
                terms.push((k, random_coeff(rng)));
            }
        }
        if !terms.is_empty() {
            return terms;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::shuffle::scalar::HyperDual;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dp_matches_expansion() {
        let ctx = EvalContext::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<Rational> = [1, 2, 3, 6, 18].iter().map(|&v| int(v)).collect();
        for _ in 0..5 {
            let m = random_symmetric(5, 3, &mut rng);
            let expanded = m.expand();
            assert!(expanded.is_symmetric());
            assert_eq!(m.eval_scalar(&pts, &ctx).unwrap(), expanded.eval_at(&pts, &ctx).unwrap());
        }
    }

    #[test]
    fn dp_derivatives_match_expansion() {
        let ctx = EvalContext::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_symmetric(3, 2, &mut rng);
        let pts = vec![
            HyperDual::new(int(2), int(1), int(0)),
            HyperDual::new(rat(1, 3), int(0), int(1)),
            HyperDual::new(int(5), int(2), int(-1)),
        ];
        assert_eq!(m.eval_scalar(&pts, &ctx).unwrap(), m.expand().eval_at(&pts, &ctx).unwrap());
    }

    #[test]
    fn orbit_sizes() {
        let mut m = MonomialSymmetric::zero(4);
        m.add_term(vec![1, 0, 1, 2], int(1));
        assert_eq!(m.expand().num_terms(), 12);
        m.add_term(vec![2, 1, 1, 0], int(-1));
        assert!(m.is_zero());
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = random_symmetric(4, 3, &mut ChaCha8Rng::seed_from_u64(1));
        let b = random_symmetric(4, 3, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(a, b);
        for (lam, c) in a.terms() {
            assert!(lam.iter().all(|e| (-2..=3).contains(e)));
            assert!(!c.is_zero());
        }
    }
}
