use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{int, pow_i32, rat, Rational};
use crate::error::{Error, Result};

/// Default bound on `a, b` when scanning for `q1^a q2^b = 1`.
pub const DEFAULT_GUARD: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Generic,
    /// `q1^a q2^b = 1` with `(a, b)` minimal.
    Torsion { a: u32, b: u32 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Generic => write!(f, "generic"),
            Mode::Torsion { a, b } => write!(f, "torsion({a},{b})"),
        }
    }
}

/// Numeric values for `q1, q2, λ` together with the regime they are meant to
/// exhibit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalContext {
    pub q1: Rational,
    pub q2: Rational,
    pub lambda: Rational,
    pub mode: Mode,
    pub guard: u32,
}

impl Default for EvalContext {
    /// `q1 = 2, q2 = 3, λ = 1`, generic.
    fn default() -> Self {
        EvalContext::generic(int(2), int(3), int(1))
    }
}

impl EvalContext {
    pub fn generic(q1: Rational, q2: Rational, lambda: Rational) -> Self {
        EvalContext { q1, q2, lambda, mode: Mode::Generic, guard: DEFAULT_GUARD }
    }

    pub fn torsion(q1: Rational, q2: Rational, lambda: Rational, a: u32, b: u32) -> Self {
        EvalContext { q1, q2, lambda, mode: Mode::Torsion { a, b }, guard: DEFAULT_GUARD }
    }

    /// `q1 = 2, q2 = 1/4, λ = 1`, torsion pair `(2, 1)`.
    pub fn default_torsion() -> Self {
        EvalContext::torsion(int(2), rat(1, 4), int(1), 2, 1)
    }

    pub fn with_guard(mut self, guard: u32) -> Self {
        self.guard = guard;
        self
    }

    pub fn with_lambda(mut self, lambda: Rational) -> Self {
        self.lambda = lambda;
        self
    }

    fn monomial_is_one(&self, a: u32, b: u32) -> bool {
        (pow_i32(&self.q1, a as i32) * pow_i32(&self.q2, b as i32)).is_one()
    }

    /// First pair `(a, b) ≠ (0, 0)` within the guard bound with
    /// `q1^a q2^b = 1`, scanning by `a + b` and then `a`.
    pub fn torsion_witness(&self) -> Option<(u32, u32)> {
        (1..=2 * self.guard).find_map(|total| {
            (0..=total.min(self.guard))
                .filter(|a| total - a <= self.guard)
                .find(|&a| self.monomial_is_one(a, total - a))
                .map(|a| (a, total - a))
        })
    }

    /// Checks nonzero parameters and the declared regime.
    pub fn validate(&self) -> Result<()> {
        if self.q1.is_zero() || self.q2.is_zero() || self.lambda.is_zero() {
            return Err(Error::InvalidInput("q1, q2 and lambda must be nonzero".into()));
        }
        match self.mode {
            Mode::Generic => match self.torsion_witness() {
                Some((a, b)) => Err(Error::GenericityViolation { a, b }),
                None => Ok(()),
            },
            Mode::Torsion { a, b } => {
                if a == 0 || b == 0 {
                    return Err(Error::TorsionViolation {
                        a,
                        b,
                        reason: "a and b must be positive".into(),
                    });
                }
                if !self.monomial_is_one(a, b) {
                    return Err(Error::TorsionViolation {
                        a,
                        b,
                        reason: "q1^a * q2^b != 1".into(),
                    });
                }
                let smaller = (0..=a)
                    .flat_map(|x| (0..=b).map(move |y| (x, y)))
                    .filter(|&(x, y)| (x, y) != (0, 0) && (x, y) != (a, b))
                    .find(|&(x, y)| self.monomial_is_one(x, y));
                match smaller {
                    Some((x, y)) => Err(Error::TorsionViolation {
                        a,
                        b,
                        reason: format!("smaller pair ({x},{y}) is also torsion"),
                    }),
                    None => Ok(()),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force scan of `2^a 3^b` over the guard window.
    #[test]
    fn two_three_is_generic() {
        for a in 0..=12u32 {
            for b in 0..=12u32 {
                if (a, b) != (0, 0) {
                    let v = num_traits::pow(int(2), a as usize) * num_traits::pow(int(3), b as usize);
                    assert!(!v.is_one());
                }
            }
        }
        assert_eq!(EvalContext::default().validate(), Ok(()));
    }

    #[test]
    fn quarter_violates_genericity_at_2_1() {
        let ctx = EvalContext::generic(int(2), rat(1, 4), int(1));
        assert_eq!(ctx.validate(), Err(Error::GenericityViolation { a: 2, b: 1 }));
    }

    #[test]
    fn torsion_pair_accepted_when_minimal() {
        assert_eq!(EvalContext::default_torsion().validate(), Ok(()));
        let doubled = EvalContext::torsion(int(2), rat(1, 4), int(1), 4, 2);
        assert!(matches!(doubled.validate(), Err(Error::TorsionViolation { .. })));
        let wrong = EvalContext::torsion(int(2), int(3), int(1), 2, 1);
        assert!(matches!(wrong.validate(), Err(Error::TorsionViolation { .. })));
    }

    #[test]
    fn unit_parameter_is_not_generic() {
        let ctx = EvalContext::generic(int(1), int(3), int(1));
        assert_eq!(ctx.validate(), Err(Error::GenericityViolation { a: 1, b: 0 }));
    }

    #[test]
    fn zero_parameters_rejected() {
        let ctx = EvalContext::generic(int(2), int(3), int(0));
        assert!(matches!(ctx.validate(), Err(Error::InvalidInput(_))));
    }
}
