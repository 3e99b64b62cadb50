//! Shuffle words `z^{i_1} * … * z^{i_k}`, the quadratic relations among
//! them, rewriting to the normal form `i_{m+1} ≤ i_m + 1`, and rank-based
//! independence checks.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::arith::linalg::{param_rank, param_solve_in_row_span};
use crate::arith::ParamRat;
use crate::error::{Error, Result};
use crate::shuffle::{shuffle_product, SElement};

/// Default step budget for [`normal_form`].
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ShuffleWord(pub Vec<i32>);

impl ShuffleWord {
    pub fn new(letters: Vec<i32>) -> Self {
        ShuffleWord(letters)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&i| i as i64).sum()
    }

    /// Index `m` of the leftmost pair with `i_{m+1} > i_m + 1`.
    pub fn first_violation(&self) -> Option<usize> {
        self.0.windows(2).position(|p| p[1] > p[0] + 1)
    }

    /// Whether the word satisfies the basis conditions of the induced
    /// representation: normal, `i_1 = 0` and all letters nonnegative.
    pub fn is_vbasis(&self) -> bool {
        self.0.first().is_none_or(|&i| i == 0) && self.0.iter().all(|&i| i >= 0) && is_normal(self)
    }
}

impl fmt::Display for ShuffleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for ShuffleWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(ShuffleWord::default());
        }
        s.split(',')
            .map(|t| t.trim().parse::<i32>().map_err(|_| Error::Parse(format!("bad letter `{t}` in word `{s}`"))))
            .collect::<Result<Vec<_>>>()
            .map(ShuffleWord)
    }
}

/// Finite linear combination of words of one common length.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WordCombo {
    terms: BTreeMap<ShuffleWord, ParamRat>,
}

impl WordCombo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn word(w: ShuffleWord) -> Self {
        let mut c = Self::new();
        c.add_term(w, ParamRat::one());
        c
    }

    /// Builds a combination, rejecting words of differing lengths.
    pub fn from_terms(terms: impl IntoIterator<Item = (ShuffleWord, ParamRat)>) -> Result<Self> {
        let mut c = Self::new();
        for (w, k) in terms {
            if let Some(len) = c.word_len() {
                if len != w.len() {
                    return Err(Error::ArityMismatch { expected: len, found: w.len() });
                }
            }
            c.add_term(w, k);
        }
        Ok(c)
    }

    /// Adds `c · w`. Panics if `w` has a different length from the words
    /// already present.
    pub fn add_term(&mut self, w: ShuffleWord, c: ParamRat) {
        if let Some(len) = self.word_len() {
            assert_eq!(len, w.len(), "all words of a combination must have equal length");
        }
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &WordCombo, c: &ParamRat) {
        for (w, k) in &other.terms {
            self.add_term(w.clone(), k * c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ShuffleWord, &ParamRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &ShuffleWord) -> ParamRat {
        self.terms.get(w).cloned().unwrap_or_else(ParamRat::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn word_len(&self) -> Option<usize> {
        self.terms.keys().next().map(ShuffleWord::len)
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(is_normal)
    }

    /// JSON object mapping word strings to coefficient strings.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .terms
            .iter()
            .map(|(w, c)| (w.to_string(), serde_json::Value::String(c.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("word combination must be a JSON object".into()))?;
        let terms = obj
            .iter()
            .map(|(w, c)| {
                let coeff = match c {
                    serde_json::Value::String(s) => s.parse::<ParamRat>()?,
                    serde_json::Value::Number(n) => n.to_string().parse::<ParamRat>()?,
                    _ => return Err(Error::Parse(format!("bad coefficient for word `{w}`"))),
                };
                Ok((w.parse::<ShuffleWord>()?, coeff))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(terms)
    }
}

impl fmt::Display for WordCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*[{w}]")?;
        }
        Ok(())
    }
}

pub fn is_normal(w: &ShuffleWord) -> bool {
    w.first_violation().is_none()
}

/// The quadratic relation
/// `q1q2 (z^m*z^n + z^{n+2}*z^{m−2}) + z^n*z^m + z^{m−2}*z^{n+2}
///  − (q1+q2)(z^{m−1}*z^{n+1} + z^{n+1}*z^{m−1})`,
/// computed through the product; it is the zero element of `S_2`.
pub fn relation_element(m: i32, n: i32) -> Result<SElement<ParamRat>> {
    let combo = relation_combo(m, n);
    combo_to_element(&combo)
}

/// The quadratic relation for `(m, n)` as a word combination.
pub fn relation_combo(m: i32, n: i32) -> WordCombo {
    let p = ParamRat::q1() * ParamRat::q2();
    let s = -(ParamRat::q1() + ParamRat::q2());
    let w = |a: i32, b: i32| ShuffleWord(vec![a, b]);
    let mut c = WordCombo::new();
    c.add_term(w(m, n), p.clone());
    c.add_term(w(n + 2, m - 2), p);
    c.add_term(w(n, m), ParamRat::one());
    c.add_term(w(m - 2, n + 2), ParamRat::one());
    c.add_term(w(m - 1, n + 1), s.clone());
    c.add_term(w(n + 1, m - 1), s);
    c
}

/// Rewrites the pair at positions `(pos, pos + 1)` (0-based) using the
/// quadratic relations. For `b = a + 2`:
/// `z^a*z^b = −q1q2 z^b*z^a + (q1+q2) z^{a+1}*z^{a+1}`; for `b ≥ a + 3`:
/// `z^a*z^b = −z^{b−2}*z^{a+2} − q1q2(z^b*z^a + z^{a+2}*z^{b−2})
///  + (q1+q2)(z^{b−1}*z^{a+1} + z^{a+1}*z^{b−1})`.
pub fn rewrite_step(w: &ShuffleWord, pos: usize) -> Result<WordCombo> {
    let letters = w.letters();
    if pos + 1 >= letters.len() || letters[pos + 1] <= letters[pos] + 1 {
        return Err(Error::NotApplicable { position: pos });
    }
    let (a, b) = (letters[pos], letters[pos + 1]);
    let p = ParamRat::q1() * ParamRat::q2();
    let s = ParamRat::q1() + ParamRat::q2();
    let replace = |x: i32, y: i32| {
        let mut v = letters.to_vec();
        v[pos] = x;
        v[pos + 1] = y;
        ShuffleWord(v)
    };
    let mut out = WordCombo::new();
    if b == a + 2 {
        out.add_term(replace(b, a), -p);
        out.add_term(replace(a + 1, a + 1), s);
    } else {
        out.add_term(replace(b - 2, a + 2), -ParamRat::one());
        out.add_term(replace(b, a), -p.clone());
        out.add_term(replace(a + 2, b - 2), -p);
        out.add_term(replace(b - 1, a + 1), s.clone());
        out.add_term(replace(a + 1, b - 1), s);
    }
    Ok(out)
}

/// Rewrites every word to normal form, leftmost violation first, within
/// `budget` rewrite steps.
pub fn rewrite_to_normal(c: &WordCombo, budget: usize) -> Result<WordCombo> {
    let mut done = WordCombo::new();
    let mut pending = WordCombo::new();
    for (w, k) in c.terms() {
        if is_normal(w) {
            done.add_term(w.clone(), k.clone());
        } else {
            pending.add_term(w.clone(), k.clone());
        }
    }
    let mut steps = 0;
    while let Some((w, k)) = pending.terms.pop_first() {
        if steps == budget {
            return Err(Error::Divergence { steps });
        }
        steps += 1;
        let pos = w.first_violation().expect("pending words are not normal");
        for (v, x) in rewrite_step(&w, pos)?.terms {
            let target = if is_normal(&v) { &mut done } else { &mut pending };
            target.add_term(v, &x * &k);
        }
    }
    Ok(done)
}

/// Normal form of a combination: rewriting with the default budget, and
/// linear elimination if the budget is exhausted.
pub fn normal_form(c: &WordCombo) -> Result<WordCombo> {
    normal_form_with_budget(c, DEFAULT_BUDGET)
}

pub fn normal_form_with_budget(c: &WordCombo, budget: usize) -> Result<WordCombo> {
    match rewrite_to_normal(c, budget) {
        Err(Error::Divergence { .. }) => normal_form_by_elimination(c),
        other => other,
    }
}

/// Normal form by solving for the coefficients on normal words of the same
/// length and degree with letters in the input's letter range (the
/// rewriting rules never leave that range).
pub fn normal_form_by_elimination(c: &WordCombo) -> Result<WordCombo> {
    let Some(len) = c.word_len() else {
        return Ok(WordCombo::new());
    };
    let lo = c.terms().flat_map(|(w, _)| w.0.iter().copied()).min().unwrap_or(0);
    let hi = c.terms().flat_map(|(w, _)| w.0.iter().copied()).max().unwrap_or(0);
    let mut by_degree: BTreeMap<i64, WordCombo> = BTreeMap::new();
    for (w, k) in c.terms() {
        by_degree.entry(w.degree()).or_default().add_term(w.clone(), k.clone());
    }
    let mut out = WordCombo::new();
    let mut cache = ProductCache::default();
    for (deg, part) in by_degree {
        let candidates: Vec<ShuffleWord> = words_in_box(len, lo, hi)
            .into_iter()
            .filter(|w| w.degree() == deg && is_normal(w))
            .collect();
        let target = cache.combo(&part)?;
        let elems = candidates.iter().map(|w| cache.word(w)).collect::<Result<Vec<_>>>()?;
        let (rows, rhs) = coefficient_matrix(&elems, &target);
        let sol = param_solve_in_row_span(&rows, &rhs).ok_or(Error::InexactDivision)?;
        for (w, x) in candidates.into_iter().zip(sol) {
            out.add_term(w, x);
        }
    }
    Ok(out)
}

fn words_in_box(len: usize, lo: i32, hi: i32) -> Vec<ShuffleWord> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<i32>| {
                (lo..=hi).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(ShuffleWord).collect()
}

/// Memoized products of word prefixes.
#[derive(Default)]
pub struct ProductCache {
    words: HashMap<ShuffleWord, SElement<ParamRat>>,
}

impl ProductCache {
    pub fn word(&mut self, w: &ShuffleWord) -> Result<SElement<ParamRat>> {
        if let Some(e) = self.words.get(w) {
            return Ok(e.clone());
        }
        let e = match w.0.split_last() {
            None => SElement::unit(),
            Some((&last, init)) => {
                let prefix = self.word(&ShuffleWord(init.to_vec()))?;
                shuffle_product(&prefix, &SElement::power(last))?
            }
        };
        self.words.insert(w.clone(), e.clone());
        Ok(e)
    }

    pub fn combo(&mut self, c: &WordCombo) -> Result<SElement<ParamRat>> {
        let mut acc = SElement::zero(c.word_len().unwrap_or(0));
        for (w, k) in c.terms() {
            acc = acc.add(&self.word(w)?.scale(k))?;
        }
        Ok(acc)
    }
}

/// Left-to-right product `z^{i_1} * … * z^{i_k}`.
pub fn word_to_element(w: &ShuffleWord) -> Result<SElement<ParamRat>> {
    ProductCache::default().word(w)
}

pub fn combo_to_element(c: &WordCombo) -> Result<SElement<ParamRat>> {
    ProductCache::default().combo(c)
}

/// Words with `i_1 = 0`, nonnegative letters and `i_{m+1} ≤ i_m + 1`, in
/// lexicographic order.
pub fn enumerate_vbasis(n: usize) -> Vec<ShuffleWord> {
    fn extend(cur: &mut Vec<i32>, n: usize, out: &mut Vec<ShuffleWord>) {
        if cur.len() == n {
            out.push(ShuffleWord(cur.clone()));
            return;
        }
        let top = cur.last().map_or(0, |&i| i + 1);
        for i in 0..=top {
            cur.push(i);
            extend(cur, n, out);
            cur.pop();
        }
    }
    if n == 0 {
        return vec![ShuffleWord::default()];
    }
    let mut out = Vec::new();
    extend(&mut vec![0], n, &mut out);
    out
}

/// Rows are the numerator coefficient vectors of `elems` over the union of
/// their monomials (and those of `target`).
fn coefficient_matrix(
    elems: &[SElement<ParamRat>],
    target: &SElement<ParamRat>,
) -> (Vec<Vec<ParamRat>>, Vec<ParamRat>) {
    let monomials: BTreeSet<Vec<i32>> = elems
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|e| e.numerator().terms().map(|(m, _)| m.clone()))
        .collect();
    let row = |e: &SElement<ParamRat>| monomials.iter().map(|m| e.numerator().coeff(m)).collect();
    (elems.iter().map(row).collect(), row(target))
}

/// Rank of the span of `word_to_element(w)` over `ℚ(q1, q2)`. Words of
/// different degree have numerators of different homogeneous degree, so
/// the rank is computed block by block.
pub fn independence_rank(words: &[ShuffleWord]) -> Result<usize> {
    let Some(first) = words.first() else {
        return Ok(0);
    };
    let mut blocks: BTreeMap<i64, Vec<&ShuffleWord>> = BTreeMap::new();
    for w in words {
        if w.len() != first.len() {
            return Err(Error::ArityMismatch { expected: first.len(), found: w.len() });
        }
        blocks.entry(w.degree()).or_default().push(w);
    }
    let mut cache = ProductCache::default();
    let mut total = 0;
    for block in blocks.values() {
        let elems = block.iter().map(|w| cache.word(w)).collect::<Result<Vec<_>>>()?;
        let (rows, _) = coefficient_matrix(&elems, &SElement::zero(first.len()));
        total += param_rank(&rows);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i32]) -> ShuffleWord {
        ShuffleWord(v.to_vec())
    }

    fn q1q2() -> ParamRat {
        ParamRat::q1() * ParamRat::q2()
    }

    fn qsum() -> ParamRat {
        ParamRat::q1() + ParamRat::q2()
    }

    #[test]
    fn relation_examples_vanish() {
        for (m, n) in [(2, 0), (0, 0), (3, -1)] {
            assert!(relation_element(m, n).unwrap().is_zero(), "({m},{n})");
        }
    }

    #[test]
    fn printed_plus_sign_does_not_vanish() {
        let mut c = relation_combo(2, 0);
        let flip = qsum() * ParamRat::from(2);
        c.add_term(w(&[1, 1]), ParamRat::from(2) * flip);
        assert!(!combo_to_element(&c).unwrap().is_zero());
    }

    #[test]
    fn normality() {
        assert!(is_normal(&w(&[0, 1, 2])));
        assert!(!is_normal(&w(&[0, 2])));
        assert!(is_normal(&w(&[])));
        assert!(is_normal(&w(&[3, -5, -4])));
    }

    #[test]
    fn gap_two_rewrite() {
        let r = rewrite_step(&w(&[0, 2]), 0).unwrap();
        let expect = WordCombo::from_terms([(w(&[2, 0]), -q1q2()), (w(&[1, 1]), qsum())]).unwrap();
        assert_eq!(r, expect);
        assert_eq!(normal_form(&WordCombo::word(w(&[0, 2]))).unwrap(), expect);
    }

    #[test]
    fn gap_three_rewrite() {
        let r = rewrite_step(&w(&[0, 3]), 0).unwrap();
        let expect = WordCombo::from_terms([
            (w(&[1, 2]), qsum() - ParamRat::one()),
            (w(&[3, 0]), -q1q2()),
            (w(&[2, 1]), qsum() - q1q2()),
        ])
        .unwrap();
        assert_eq!(r, expect);
        assert_eq!(rewrite_step(&w(&[0, 1]), 0), Err(Error::NotApplicable { position: 0 }));
    }

    #[test]
    fn rewrite_preserves_element() {
        for word in [w(&[0, 3]), w(&[-1, 3]), w(&[0, 0, 2]), w(&[1, 0, 4])] {
            let pos = word.first_violation().unwrap();
            let lhs = word_to_element(&word).unwrap();
            let rhs = combo_to_element(&rewrite_step(&word, pos).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{word}");
        }
    }

    #[test]
    fn elimination_agrees_with_rewriting() {
        let c = WordCombo::from_terms([
            (w(&[0, 0, 3]), ParamRat::one()),
            (w(&[1, 0, 2]), ParamRat::q1()),
        ])
        .unwrap();
        let a = rewrite_to_normal(&c, DEFAULT_BUDGET).unwrap();
        assert!(a.is_normal());
        assert_eq!(normal_form_by_elimination(&c).unwrap(), a);
        assert_eq!(rewrite_to_normal(&c, 1), Err(Error::Divergence { steps: 1 }));
        assert_eq!(normal_form_with_budget(&c, 1).unwrap(), a);
    }

    #[test]
    fn words_and_elements() {
        let e = word_to_element(&w(&[0, 0])).unwrap();
        assert_eq!(e, shuffle_product(&SElement::power(0), &SElement::power(0)).unwrap());
        assert_eq!(word_to_element(&w(&[])).unwrap(), SElement::unit());
        let d = word_to_element(&w(&[0, 1])).unwrap().sub(&word_to_element(&w(&[1, 0])).unwrap());
        assert!(!d.unwrap().is_zero());
    }

    #[test]
    fn vbasis_enumeration() {
        assert_eq!(enumerate_vbasis(1), vec![w(&[0])]);
        assert_eq!(enumerate_vbasis(2), vec![w(&[0, 0]), w(&[0, 1])]);
        assert_eq!(
            enumerate_vbasis(3),
            vec![w(&[0, 0, 0]), w(&[0, 0, 1]), w(&[0, 1, 0]), w(&[0, 1, 1]), w(&[0, 1, 2])]
        );
        assert!(enumerate_vbasis(4).iter().all(ShuffleWord::is_vbasis));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(independence_rank(&[w(&[0, 0]), w(&[0, 1])]).unwrap(), 2);
        assert_eq!(independence_rank(&[w(&[0, 1]), w(&[0, 1])]).unwrap(), 1);
        assert_eq!(independence_rank(&[w(&[0, 2]), w(&[2, 0]), w(&[1, 1])]).unwrap(), 2);
        assert!(independence_rank(&[w(&[0]), w(&[0, 1])]).is_err());
    }

    #[test]
    fn serialization_round_trip() {
        assert_eq!("0,-1,2".parse::<ShuffleWord>().unwrap(), w(&[0, -1, 2]));
        assert_eq!("".parse::<ShuffleWord>().unwrap(), w(&[]));
        assert!("0,x".parse::<ShuffleWord>().is_err());
        let c = rewrite_step(&w(&[0, 3]), 0).unwrap();
        assert_eq!(WordCombo::from_json(&c.to_json()).unwrap(), c);
        let mixed = serde_json::json!({"0,1": "1", "0": "2"});
        assert!(WordCombo::from_json(&mixed).is_err());
    }
}
