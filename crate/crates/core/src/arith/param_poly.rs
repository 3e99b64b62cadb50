use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::rational::{pow_i32, Rational};

/// Exponent pair `(e1, e2)` of the monomial `q1^e1 q2^e2`.
///
/// Ordered graded-lexicographically: total degree first, then `e1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exp2 {
    pub e1: u32,
    pub e2: u32,
}

impl Exp2 {
    pub const ZERO: Exp2 = Exp2 { e1: 0, e2: 0 };

    pub fn new(e1: u32, e2: u32) -> Self {
        Exp2 { e1, e2 }
    }

    fn degree(self) -> u32 {
        self.e1 + self.e2
    }

    fn checked_sub(self, other: Exp2) -> Option<Exp2> {
        Some(Exp2 {
            e1: self.e1.checked_sub(other.e1)?,
            e2: self.e2.checked_sub(other.e2)?,
        })
    }
}

impl Ord for Exp2 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.e1.cmp(&other.e1))
    }
}

impl PartialOrd for Exp2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Exp2 {
    type Output = Exp2;
    fn add(self, o: Exp2) -> Exp2 {
        Exp2 { e1: self.e1 + o.e1, e2: self.e2 + o.e2 }
    }
}

/// Polynomial in `q1, q2` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Exp2, Rational>,
}

impl ParamPoly {
    pub fn constant(c: Rational) -> Self {
        let mut p = ParamPoly::default();
        if !c.is_zero() {
            p.terms.insert(Exp2::ZERO, c);
        }
        p
    }

    pub fn monomial(c: Rational, e1: u32, e2: u32) -> Self {
        let mut p = ParamPoly::default();
        if !c.is_zero() {
            p.terms.insert(Exp2::new(e1, e2), c);
        }
        p
    }

    pub fn q1() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn q2() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp2, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under the graded-lexicographic order.
    pub fn leading(&self) -> Option<(Exp2, &Rational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.leading().map(|(_, c)| c)
    }

    /// The rational number this polynomial equals, if it is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Exp2::ZERO).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ParamPoly::default();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, q1: &Rational, q2: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_i32(q1, e.e1 as i32) * pow_i32(q2, e.e2 as i32);
        }
        acc
    }

    fn add_term(&mut self, e: Exp2, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Panics if `divisor` is zero.
    pub fn div_exact(&self, divisor: &ParamPoly) -> Option<ParamPoly> {
        let (lead_e, lead_c) = divisor.leading().expect("division by the zero polynomial");
        let lead_inv = lead_c.recip();
        let mut rem = self.clone();
        let mut quot = ParamPoly::default();
        while let Some((e, c)) = rem.leading() {
            let shift = e.checked_sub(lead_e)?;
            let factor = c * &lead_inv;
            for (de, dc) in &divisor.terms {
                rem.add_term(*de + shift, &-(dc * &factor));
            }
            quot.add_term(shift, &factor);
        }
        Some(quot)
    }

    fn to_recursive(&self) -> Vec<UPoly> {
        let deg = self.terms.keys().map(|e| e.e2).max().unwrap_or(0) as usize;
        let mut out = vec![UPoly::zero(); deg + 1];
        for (e, c) in &self.terms {
            out[e.e2 as usize].set(e.e1 as usize, c.clone());
        }
        out
    }

    fn from_recursive(coeffs: &[UPoly]) -> Self {
        let mut p = ParamPoly::default();
        for (e2, u) in coeffs.iter().enumerate() {
            for (e1, c) in u.0.iter().enumerate() {
                if !c.is_zero() {
                    p.terms.insert(Exp2::new(e1 as u32, e2 as u32), c.clone());
                }
            }
        }
        p
    }
}

/// Greatest common divisor in `ℚ[q1, q2]`, normalized to leading coefficient 1.
///
/// Works recursively in `(ℚ[q1])[q2]`: the gcd of the contents times the
/// primitive part of a primitive pseudo-remainder sequence.
pub fn param_gcd(p: &ParamPoly, q: &ParamPoly) -> ParamPoly {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return ParamPoly::one();
    }
    let a = p.to_recursive();
    let b = q.to_recursive();
    let content = content(&a).gcd(&content(&b));
    let (mut a, mut b) = (primitive_part(&a), primitive_part(&b));
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() && deg(&b) > 0 {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { primitive_part(&r) };
    }
    // b constant in q2 and nonzero: the primitive parts are coprime.
    let g = if b.is_empty() { a } else { vec![UPoly::one()] };
    let content_poly = ParamPoly::from_recursive(&[content]);
    (&ParamPoly::from_recursive(&g) * &content_poly).monic()
}

fn deg(v: &[UPoly]) -> usize {
    v.len().saturating_sub(1)
}

fn content(v: &[UPoly]) -> UPoly {
    v.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
}

fn primitive_part(v: &[UPoly]) -> Vec<UPoly> {
    let c = content(v);
    v.iter().map(|u| u.div_exact(&c)).collect()
}

/// `lc(b)^k * a mod b` in `(ℚ[q1])[q2]`, trailing zeros trimmed.
fn pseudo_rem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let mut r: Vec<UPoly> = a.to_vec();
    let lb = b.last().unwrap().clone();
    let db = deg(b);
    trim_rec(&mut r);
    while !r.is_empty() && deg(&r) >= db {
        let lr = r.last().unwrap().clone();
        let shift = deg(&r) - db;
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&lr));
        }
        trim_rec(&mut r);
    }
    r
}

fn trim_rec(v: &mut Vec<UPoly>) {
    while v.last().is_some_and(|u| u.is_zero()) {
        v.pop();
    }
}

/// Dense univariate polynomial in `q1` over `ℚ`, used for contents.
#[derive(Clone, Debug, PartialEq)]
struct UPoly(Vec<Rational>);

impl UPoly {
    fn zero() -> Self {
        UPoly(Vec::new())
    }

    fn one() -> Self {
        UPoly(vec![Rational::one()])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn set(&mut self, i: usize, c: Rational) {
        if self.0.len() <= i {
            self.0.resize(i + 1, Rational::zero());
        }
        self.0[i] = c;
        self.trim();
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let mut v = vec![Rational::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            v[i] -= c;
        }
        let mut u = UPoly(v);
        u.trim();
        u
    }

    fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        let mut u = UPoly(v);
        u.trim();
        u
    }

    fn monic(&self) -> UPoly {
        match self.0.last() {
            None => UPoly::zero(),
            Some(lc) => {
                let inv = lc.recip();
                UPoly(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let lc_inv = d.0.last().expect("division by zero polynomial").recip();
        let mut rem = self.0.clone();
        let dd = d.deg();
        if rem.len() < d.0.len() {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let f = &rem[i] * &lc_inv;
            if f.is_zero() {
                continue;
            }
            for (j, c) in d.0.iter().enumerate() {
                rem[i - dd + j] -= c * &f;
            }
            quot[i - dd] = f;
        }
        let mut q = UPoly(quot);
        q.trim();
        let mut r = UPoly(rem);
        r.trim();
        (q, r)
    }

    fn div_exact(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact content division");
        q
    }

    fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Zero for ParamPoly {
    fn zero() -> Self {
        ParamPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ParamPoly {
    fn one() -> Self {
        ParamPoly::constant(Rational::one())
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, o: &ParamPoly) -> ParamPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, o: &ParamPoly) -> ParamPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, o: &ParamPoly) -> ParamPoly {
        let mut r = ParamPoly::default();
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                r.add_term(*e + *f, &(c * d));
            }
        }
        r
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(mut self, o: ParamPoly) -> ParamPoly {
        self += &o;
        self
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, o: ParamPoly) -> ParamPoly {
        &self * &o
    }
}

impl<'a> AddAssign<&'a ParamPoly> for ParamPoly {
    fn add_assign(&mut self, o: &ParamPoly) {
        for (e, c) in &o.terms {
            self.add_term(*e, c);
        }
    }
}

impl<'a> SubAssign<&'a ParamPoly> for ParamPoly {
    fn sub_assign(&mut self, o: &ParamPoly) {
        for (e, c) in &o.terms {
            self.add_term(*e, &-c);
        }
    }
}

impl<'a> MulAssign<&'a ParamPoly> for ParamPoly {
    fn mul_assign(&mut self, o: &ParamPoly) {
        *self = &*self * o;
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -(self.clone())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: Exp2) -> fmt::Result {
    let mut first = true;
    for (name, k) in [("q1", e.e1), ("q2", e.e2)] {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if k == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for ParamPoly {
    /// Terms in descending graded-lex order, e.g. `-q1*q2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *e == Exp2::ZERO {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write_monomial(f, *e)?;
            } else {
                write!(f, "{abs}*")?;
                write_monomial(f, *e)?;
            }
        }
        Ok(())
    }
}
