//! The zero locus of the ideal generated by `z − λ`: grid points, the
//! vanishing of every coset summand, linear relations between derivatives
//! of ideal elements, and multiplicity certificates.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::linalg::rank;
use crate::arith::{param_eval, EvalContext, Kernel, Mode, ParamRat, Rational};
use crate::error::{Error, Result};
use crate::grid::{GridSubset, GridVertex};
use crate::shuffle::{
    coset_factor, eval_element, eval_generator_jet, generator_at, random_symmetric, random_univariate,
    Normalization, Point, SElement,
};

/// Number of symmetrized monomials in each random generator numerator.
pub const SAMPLE_TERMS: usize = 3;

/// The point `(λ q1^a q2^b)` of a subset, in vertex order.
pub fn subset_to_point(s: &GridSubset, ctx: &EvalContext) -> Result<Point> {
    Point::new(s.coordinates(ctx)?)
}

/// `(z_c − λ) ∏_{i≠c} μ(z_c, z_i)` at `p`, for a 0-based index `c`.
pub fn master_summand(c: usize, p: &Point, ctx: &EvalContext) -> Result<Rational> {
    if c >= p.len() {
        return Err(Error::InvalidInput(format!("index {} out of range 1..={}", c + 1, p.len())));
    }
    coset_factor(c, p.coords(), ctx)
}

/// Whether every coset summand vanishes at the point of `s`.
pub fn is_common_zero(s: &GridSubset, ctx: &EvalContext) -> Result<bool> {
    let p = subset_to_point(s, ctx)?;
    point_is_common_zero(&p, ctx)
}

pub fn point_is_common_zero(p: &Point, ctx: &EvalContext) -> Result<bool> {
    for c in 0..p.len() {
        if !master_summand(c, p, ctx)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A linear combination `Σ c_i ∂/∂z_i` (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RelationVector {
    coeffs: BTreeMap<usize, ParamRat>,
}

impl RelationVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, ParamRat)>) -> Self {
        let mut r = Self::new();
        for (i, c) in terms {
            r.add(i, c);
        }
        r
    }

    pub fn add(&mut self, index: usize, c: ParamRat) {
        let slot = self.coeffs.entry(index).or_insert_with(ParamRat::zero);
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&usize, &ParamRat)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, index: usize) -> ParamRat {
        self.coeffs.get(&index).cloned().unwrap_or_else(ParamRat::zero)
    }

    /// Dense vector of length `n` at the parameters of `ctx`.
    pub fn specialize(&self, n: usize, ctx: &EvalContext) -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); n];
        for (&i, c) in &self.coeffs {
            if i >= n {
                return Err(Error::ArityMismatch { expected: n, found: i + 1 });
            }
            out[i] = param_eval(c, ctx)?;
        }
        Ok(out)
    }
}

impl fmt::Display for RelationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "e{}", i + 1)?;
            } else {
                write!(f, "({c})*e{}", i + 1)?;
            }
        }
        Ok(())
    }
}

/// A second-order relation `Σ_t c_t u_tᵀ (∇²G) w_t = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondOrderRelation {
    pub terms: Vec<(ParamRat, RelationVector, RelationVector)>,
}

impl SecondOrderRelation {
    /// The mixed relation `uᵀ (∇²G) w`.
    pub fn outer(u: RelationVector, w: RelationVector) -> Self {
        SecondOrderRelation { terms: vec![(ParamRat::one(), u, w)] }
    }

    /// Coefficients of `∂²G/∂z_i∂z_j` for `i ≤ j`.
    pub fn coefficients(&self) -> BTreeMap<(usize, usize), ParamRat> {
        let mut out: BTreeMap<(usize, usize), ParamRat> = BTreeMap::new();
        for (c, u, w) in &self.terms {
            for (&i, ui) in u.coeffs() {
                for (&j, wj) in w.coeffs() {
                    let slot = out.entry((i.min(j), i.max(j))).or_insert_with(ParamRat::zero);
                    *slot += &(c * &(ui * wj));
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// The symmetric coefficient matrix, flattened row by row.
    fn dense(&self, n: usize, ctx: &EvalContext) -> Result<Vec<Rational>> {
        let mut m = vec![Rational::zero(); n * n];
        for ((i, j), c) in self.coefficients() {
            if j >= n {
                return Err(Error::ArityMismatch { expected: n, found: j + 1 });
            }
            let v = param_eval(&c, ctx)?;
            if i == j {
                m[i * n + i] = v;
            } else {
                m[i * n + j] = &v / Rational::from_integer(2.into());
                m[j * n + i] = &v / Rational::from_integer(2.into());
            }
        }
        Ok(m)
    }
}

impl fmt::Display for SecondOrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coefficients();
        if coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, ((i, j), c)) in coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "e{}e{}", i + 1, j + 1)?;
            } else {
                write!(f, "({c})*e{}e{}", i + 1, j + 1)?;
            }
        }
        Ok(())
    }
}

/// One relation per `x ∈ X`: `e_x` plus, for every vertex reached from `x`
/// through children outside `X`, the product of the step weights (`q1` for
/// a down-left step, `q2` for a down-right step) along the way.
pub fn first_order_relations(s: &GridSubset) -> Result<Vec<RelationVector>> {
    if !s.is_admissible() {
        return Err(Error::NotAdmissible);
    }
    let x = s.x_set();
    let index = |v: &GridVertex| s.index_of(v).expect("vertex in subset");
    let mut out = Vec::new();
    for root in &x {
        let mut r = RelationVector::new();
        let mut stack = vec![(*root, ParamRat::one())];
        while let Some((v, c)) = stack.pop() {
            for (child, weight) in [(v.left_child(), ParamRat::q1()), (v.right_child(), ParamRat::q2())] {
                if s.contains(&child) && !x.contains(&child) {
                    stack.push((child, &c * &weight));
                }
            }
            r.add(index(&v), c);
        }
        out.push(r);
    }
    Ok(out)
}

/// Local coordinates of the point of an admissible subset.
///
/// Near the point, the ideal is generated by `z_root − λ`, by
/// `z_c − q z_parent` for vertices outside `X`, and by
/// `(z_x − q1 z_L)(z_x − q2 z_R)` for `x ∈ X` with parents `L = (a−1, b)`
/// and `R = (a, b−1)`. On the subspace where the linear generators vanish,
/// the free coordinates are `s_x = z_x − q1 z_L`, every `z_v` is a linear
/// function `Σ_x T_x[v] s_x`, and `z_x − q2 z_R = s_x + d_x(s)` with `d_x`
/// depending only on earlier `s`.
struct LocalChart {
    /// `T_x`: the tangent vector `∂z/∂s_x`, one per `x ∈ X`.
    tangents: Vec<RelationVector>,
    /// `d[y][x]`: coefficient of `s_x` in `d_y`.
    d: Vec<Vec<ParamRat>>,
}

fn local_chart(s: &GridSubset) -> Result<LocalChart> {
    if !s.is_admissible() {
        return Err(Error::NotAdmissible);
    }
    let x = s.x_set();
    let k = x.len();
    let mut z: BTreeMap<GridVertex, Vec<ParamRat>> = BTreeMap::new();
    let mut d = Vec::with_capacity(k);
    // Vertex order lists parents before children.
    for v in s.vertices() {
        let lin = if v.is_root() {
            vec![ParamRat::zero(); k]
        } else if let Some(xi) = x.iter().position(|u| u == v) {
            let left = &z[&GridVertex::new(v.a - 1, v.b)];
            let right = &z[&GridVertex::new(v.a, v.b - 1)];
            let mut lin: Vec<ParamRat> = left.iter().map(|c| c * &ParamRat::q1()).collect();
            d.push(
                left.iter()
                    .zip(right)
                    .map(|(l, r)| l * &ParamRat::q1() - r * &ParamRat::q2())
                    .collect::<Vec<_>>(),
            );
            lin[xi] += &ParamRat::one();
            lin
        } else {
            let (parent, q) = if v.a > 0 && s.contains(&GridVertex::new(v.a - 1, v.b)) {
                (GridVertex::new(v.a - 1, v.b), ParamRat::q1())
            } else {
                (GridVertex::new(v.a, v.b - 1), ParamRat::q2())
            };
            z[&parent].iter().map(|c| c * &q).collect()
        };
        z.insert(*v, lin);
    }
    let tangents = (0..k)
        .map(|xi| {
            RelationVector::from_terms(
                s.vertices().enumerate().map(|(i, v)| (i, z[v][xi].clone())),
            )
        })
        .collect();
    Ok(LocalChart { tangents, d })
}

/// One relation per pair `x < y` in `X`:
/// `T_xᵀ (∇²G) T_y − ½ d_y[x] · T_yᵀ (∇²G) T_y = 0`, where `T` are the
/// tangent vectors of the local chart. These span the second-order part of
/// the local dual space.
pub fn second_order_relations(s: &GridSubset) -> Result<Vec<SecondOrderRelation>> {
    let chart = local_chart(s)?;
    let k = chart.tangents.len();
    let half = ParamRat::constant(Rational::new(1.into(), 2.into()));
    let mut out = Vec::new();
    for xi in 0..k {
        for yi in xi + 1..k {
            let (tx, ty) = (chart.tangents[xi].clone(), chart.tangents[yi].clone());
            let mut rel = SecondOrderRelation::outer(tx, ty.clone());
            let dyx = &chart.d[yi][xi];
            if !dyx.is_zero() {
                rel.terms.push((-(&half * dyx), ty.clone(), ty));
            }
            out.push(rel);
        }
    }
    Ok(out)
}

/// The tangent vectors `T_x` of the local chart; they span the same space
/// as [`first_order_relations`].
pub fn tangent_vectors(s: &GridSubset) -> Result<Vec<RelationVector>> {
    Ok(local_chart(s)?.tangents)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionKind {
    Value,
    FirstOrder,
    SecondOrder,
}

/// Outcome of one linear condition over all sampled generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub id: String,
    pub kind: ConditionKind,
    pub relation: String,
    pub passed: bool,
    /// First sample on which the condition failed, and its value there.
    pub witness: Option<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityReport {
    pub point: Vec<String>,
    pub n: usize,
    pub k: usize,
    pub expected: u64,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<ConditionCheck>,
    /// Verified conditions that are linearly independent as functionals.
    pub conditions_verified: usize,
    /// Rank of the sampled gradients, when computed; `n − rank` bounds the
    /// number of independent first-order relations from above.
    pub gradient_rank: Option<usize>,
}

impl MultiplicityReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// All checks pass and the condition count equals `2^k`.
    pub fn passed(&self) -> bool {
        self.all_checks_pass() && self.conditions_verified as u64 == self.expected
    }

    /// The first failing condition as an error.
    pub fn into_result(self) -> Result<Self> {
        if let Some(c) = self.checks.iter().find(|c| !c.passed) {
            let (sample, value) = c.witness.clone().unwrap_or_default();
            return Err(Error::ConditionFailure { condition: c.id.clone(), sample, value });
        }
        Ok(self)
    }
}

/// Options for [`verify_relations`].
#[derive(Clone, Copy, Debug)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
    /// Also compute the rank of the sampled gradients.
    pub gradient_rank: bool,
}

impl SampleConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        SampleConfig { samples, seed, gradient_rank: false }
    }

    pub fn with_gradient_rank(mut self) -> Self {
        self.gradient_rank = true;
        self
    }
}

/// Draws random generators `(z − λ) * F` and checks that each vanishes at
/// `p` together with the given first- and second-order relations.
pub fn verify_relations(
    p: &Point,
    ctx: &EvalContext,
    first: &[RelationVector],
    second: &[SecondOrderRelation],
    cfg: SampleConfig,
) -> Result<MultiplicityReport> {
    let n = p.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty point".into()));
    }
    p.check_distinct()?;
    let dense_first = first.iter().map(|r| r.specialize(n, ctx)).collect::<Result<Vec<_>>>()?;
    let dense_second = second
        .iter()
        .map(|r| {
            r.terms
                .iter()
                .map(|(c, u, w)| Ok((param_eval(c, ctx)?, u.specialize(n, ctx)?, w.specialize(n, ctx)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let zero = vec![Rational::zero(); n];

    let mut checks: Vec<ConditionCheck> = Vec::new();
    checks.push(ConditionCheck {
        id: "value".into(),
        kind: ConditionKind::Value,
        relation: "G".into(),
        passed: true,
        witness: None,
    });
    for (i, r) in first.iter().enumerate() {
        checks.push(ConditionCheck {
            id: format!("first_order_{}", i + 1),
            kind: ConditionKind::FirstOrder,
            relation: r.to_string(),
            passed: true,
            witness: None,
        });
    }
    for (i, r) in second.iter().enumerate() {
        checks.push(ConditionCheck {
            id: format!("second_order_{}", i + 1),
            kind: ConditionKind::SecondOrder,
            relation: r.to_string(),
            passed: true,
            witness: None,
        });
    }
    let record = |check: &mut ConditionCheck, sample: usize, value: &Rational| {
        if !value.is_zero() && check.passed {
            check.passed = false;
            check.witness = Some((sample, value.to_string()));
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut gradients: Vec<Vec<Rational>> = Vec::new();
    for sample in 0..cfg.samples {
        let f = random_symmetric(n - 1, SAMPLE_TERMS, &mut rng);
        let value = generator_at(&f, p.coords(), ctx)?;
        record(&mut checks[0], sample, &value);
        for (i, u) in dense_first.iter().enumerate() {
            let jet = eval_generator_jet(&f, p, ctx, u, &zero)?;
            record(&mut checks[1 + i], sample, &jet.d1);
        }
        for (i, terms) in dense_second.iter().enumerate() {
            let mut acc = Rational::zero();
            for (c, u, w) in terms {
                acc += c * eval_generator_jet(&f, p, ctx, u, w)?.d12;
            }
            record(&mut checks[1 + first.len() + i], sample, &acc);
        }
        if cfg.gradient_rank && gradients.len() < n {
            let mut grad = Vec::with_capacity(n);
            for j in 0..n {
                let mut e = zero.clone();
                e[j] = Rational::one();
                grad.push(eval_generator_jet(&f, p, ctx, &e, &zero)?.d1);
            }
            gradients.push(grad);
        }
    }

    let first_rank = rank(&dense_first);
    let second_rank = rank(&second.iter().map(|r| r.dense(n, ctx)).collect::<Result<Vec<_>>>()?);
    let verified = |kind: ConditionKind| checks.iter().filter(|c| c.kind == kind).all(|c| c.passed);
    let mut conditions_verified = 0;
    if verified(ConditionKind::Value) {
        conditions_verified += 1;
        if verified(ConditionKind::FirstOrder) {
            conditions_verified += first_rank;
            if verified(ConditionKind::SecondOrder) {
                conditions_verified += second_rank;
            }
        }
    }
    let k = first.len();
    Ok(MultiplicityReport {
        point: p.coords().iter().map(ToString::to_string).collect(),
        n,
        k,
        expected: 1u64 << k,
        samples: cfg.samples,
        seed: cfg.seed,
        checks,
        conditions_verified,
        gradient_rank: cfg.gradient_rank.then(|| rank(&gradients)),
    })
}

/// Multiplicity certificate for an admissible subset: the value, one
/// first-order relation per vertex of `X`, and the pairwise second-order
/// relations, over `cfg.samples` random generators of `I_n`.
pub fn verify_multiplicity(s: &GridSubset, ctx: &EvalContext, cfg: SampleConfig) -> Result<MultiplicityReport> {
    let first = first_order_relations(s)?;
    let second = second_order_relations(s)?;
    let p = subset_to_point(s, ctx)?;
    verify_relations(&p, ctx, &first, &second, cfg)
}

/// The point `(α, q1 α, q1 q2 α, …)` obtained by walking one `q1` step,
/// then `b` steps `q2`, then `a − 2` steps `q1`; under `q1^a q2^b = 1` one
/// more `q1` step returns to `α`.
pub fn torsion_cycle_point(ctx: &EvalContext, alpha: &Rational) -> Result<Point> {
    let Mode::Torsion { a, b } = ctx.mode else {
        return Err(Error::InvalidInput("a torsion context is required".into()));
    };
    if a < 1 {
        return Err(Error::InvalidInput("torsion exponent a must be positive".into()));
    }
    let mut steps = vec![ctx.q1.clone()];
    steps.extend(std::iter::repeat_n(ctx.q2.clone(), b as usize));
    steps.extend(std::iter::repeat_n(ctx.q1.clone(), a as usize - 1));
    let mut coords = vec![alpha.clone()];
    for q in &steps[..steps.len() - 1] {
        let next = coords.last().expect("nonempty") * q;
        coords.push(next);
    }
    Point::new(coords)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub point: Vec<String>,
    pub products: usize,
    pub seed: u64,
    pub nonzero: Vec<(usize, String)>,
}

impl TorsionReport {
    pub fn passed(&self) -> bool {
        self.nonzero.is_empty()
    }
}

/// Evaluates `products` random products `f_1 * … * f_{a+b}` of elements of
/// `S_1` at [`torsion_cycle_point`].
pub fn torsion_vanishing_smoke(
    ctx: &EvalContext,
    alpha: &Rational,
    products: usize,
    seed: u64,
) -> Result<TorsionReport> {
    ctx.validate()?;
    let p = torsion_cycle_point(ctx, alpha)?;
    product_vanishing(ctx, &p, products, seed)
}

/// Evaluates random products of `p.len()` elements of `S_1` at `p`.
pub fn product_vanishing(ctx: &EvalContext, p: &Point, products: usize, seed: u64) -> Result<TorsionReport> {
    let kernel = Kernel::specialized(ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nonzero = Vec::new();
    for i in 0..products {
        let mut acc = SElement::<Rational>::unit();
        for _ in 0..p.len() {
            let f = SElement::univariate(&random_univariate((-2, 3), &mut rng));
            acc = acc.product(&f, &kernel, Normalization::Paper)?;
        }
        let v = eval_element(&acc, p, ctx)?;
        if !v.is_zero() {
            nonzero.push((i, v.to_string()));
        }
    }
    Ok(TorsionReport {
        point: p.coords().iter().map(ToString::to_string).collect(),
        products,
        seed,
        nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn simplest() -> GridSubset {
        GridSubset::from_pairs(&[(0, 0), (1, 0), (0, 1), (1, 1)])
    }

    /// The subset drawn in the ten-variable example.
    fn figure() -> GridSubset {
        GridSubset::from_pairs(&[
            (0, 0), (1, 0), (0, 1), (1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3), (2, 4),
        ])
    }

    #[test]
    fn master_summands() {
        let ctx = EvalContext::default();
        let p = Point::from_ints(&[1, 2, 3, 6]).unwrap();
        assert!(master_summand(0, &p, &ctx).unwrap().is_zero());
        assert!(master_summand(3, &p, &ctx).unwrap().is_zero());
        let q = Point::from_ints(&[1, 5]).unwrap();
        assert!(!master_summand(1, &q, &ctx).unwrap().is_zero());
    }

    #[test]
    fn common_zeros() {
        let ctx = EvalContext::default();
        assert!(is_common_zero(&GridSubset::from_pairs(&[(0, 0), (1, 0), (0, 1)]), &ctx).unwrap());
        assert!(!is_common_zero(&GridSubset::from_pairs(&[(0, 0), (1, 1)]), &ctx).unwrap());
        assert!(is_common_zero(&GridSubset::root(), &ctx).unwrap());
    }

    #[test]
    fn relation_vectors() {
        let r = first_order_relations(&simplest()).unwrap();
        assert_eq!(r, vec![RelationVector::from_terms([(3, ParamRat::one())])]);
        let r = first_order_relations(&figure()).unwrap();
        let (q1, q2) = (ParamRat::q1(), ParamRat::q2());
        assert_eq!(
            r[0].clone(),
            RelationVector::from_terms([
                (3, ParamRat::one()),
                (4, q2.clone()),
                (5, &q1 * &q2),
                (6, &q2 * &q2),
            ])
        );
        assert_eq!(r[1], RelationVector::from_terms([(7, ParamRat::one()), (8, q1.clone()), (9, q2.clone())]));
        let second = second_order_relations(&figure()).unwrap();
        assert_eq!(second.len(), 1);
        // d vanishes here, so the relation is the mixed derivative along the
        // two tangent vectors; the first one reaches (2,3) with weight q1 q2².
        assert_eq!(second[0].terms.len(), 1);
        let t = tangent_vectors(&figure()).unwrap();
        assert_eq!(t[0].coeff(7), ParamRat::q1() * q2.clone() * q2.clone());
        assert_eq!(t[1], r[1]);
        assert_eq!(
            first_order_relations(&GridSubset::from_pairs(&[(0, 0), (1, 1)])),
            Err(Error::NotAdmissible)
        );
    }

    #[test]
    fn simplest_multiplicity() {
        let ctx = EvalContext::default();
        let rep = verify_multiplicity(&simplest(), &ctx, SampleConfig::new(5, 1).with_gradient_rank()).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.conditions_verified, 2);
        assert_eq!(rep.gradient_rank, Some(3));
        let line = GridSubset::from_pairs(&[(0, 0), (1, 0)]);
        let rep = verify_multiplicity(&line, &ctx, SampleConfig::new(3, 1)).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.conditions_verified, 1);
    }

    #[test]
    fn chained_x_vertices_need_a_square_term() {
        let s = GridSubset::from_pairs(&[(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (2, 1)]);
        let second = second_order_relations(&s).unwrap();
        assert_eq!(second[0].terms.len(), 2);
        let ctx = EvalContext::default();
        let rep = verify_multiplicity(&s, &ctx, SampleConfig::new(4, 2)).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.conditions_verified, 4);
        let p = subset_to_point(&s, &ctx).unwrap();
        let first = first_order_relations(&s).unwrap();
        let naive = SecondOrderRelation::outer(first[0].clone(), first[1].clone());
        let rep = verify_relations(&p, &ctx, &first, &[naive], SampleConfig::new(4, 2)).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn wrong_relation_is_caught() {
        let ctx = EvalContext::default();
        let p = subset_to_point(&simplest(), &ctx).unwrap();
        let bad = RelationVector::from_terms([(2, ParamRat::one())]);
        let rep = verify_relations(&p, &ctx, &[bad], &[], SampleConfig::new(3, 1)).unwrap();
        assert!(!rep.passed());
        assert!(matches!(rep.into_result(), Err(Error::ConditionFailure { .. })));
    }

    #[test]
    fn torsion_point_and_smoke() {
        let ctx = EvalContext::default_torsion();
        let p = torsion_cycle_point(&ctx, &int(1)).unwrap();
        assert_eq!(p.coords(), &[int(1), int(2), rat(1, 2)]);
        assert!(torsion_vanishing_smoke(&ctx, &int(3), 5, 9).unwrap().passed());
        let generic = EvalContext::default();
        let q = Point::from_ints(&[1, 2, 6]).unwrap();
        assert!(!product_vanishing(&generic, &q, 5, 9).unwrap().passed());
        assert!(torsion_cycle_point(&generic, &int(1)).is_err());
    }
}
