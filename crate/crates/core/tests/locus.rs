use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shufflealg::arith::{rat, EvalContext, Rational};
use shufflealg::combinatorics::{count_trees, enumerate_admissible};
use shufflealg::grid::{GridSubset, GridVertex};
use shufflealg::locus::{
    first_order_relations, is_common_zero, master_summand, point_is_common_zero, second_order_relations,
    subset_to_point, verify_multiplicity, verify_relations, SampleConfig,
};
use shufflealg::shuffle::{generator_at, random_symmetric, Point};

/// Root-containing subsets of `{a + b ≤ depth}` with at most `max` vertices.
fn triangle_subsets(depth: u32, max: usize) -> Vec<GridSubset> {
    let others: Vec<GridVertex> = (0..=depth)
        .flat_map(|s| (0..=s).map(move |b| GridVertex::new(s - b, b)))
        .filter(|v| !v.is_root())
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn walk(
        others: &[GridVertex],
        from: usize,
        max: usize,
        chosen: &mut Vec<GridVertex>,
        out: &mut Vec<GridSubset>,
    ) {
        out.push(GridSubset::new(std::iter::once(GridVertex::ROOT).chain(chosen.iter().copied())));
        if chosen.len() + 1 == max {
            return;
        }
        for i in from..others.len() {
            chosen.push(others[i]);
            walk(others, i + 1, max, chosen, out);
            chosen.pop();
        }
    }
    walk(&others, 0, max, &mut chosen, &mut out);
    out
}

/// Direct substitution, sharing nothing with the library summand.
fn summand_by_hand(c: usize, p: &[Rational], ctx: &EvalContext) -> Rational {
    let mut acc = &p[c] - &ctx.lambda;
    for (i, z) in p.iter().enumerate() {
        if i != c {
            acc *= (&p[c] - &ctx.q1 * z) * (&p[c] - &ctx.q2 * z) / ((&p[c] - z) * (&p[c] - z));
        }
    }
    acc
}

#[test]
fn common_zeros_are_exactly_the_admissible_subsets() {
    let ctx = EvalContext::default();
    let subsets = triangle_subsets(4, 5);
    assert_eq!(subsets.len(), 1 + 14 + 91 + 364 + 1001);
    for s in subsets {
        let p = subset_to_point(&s, &ctx).unwrap();
        let by_hand = (0..s.len()).all(|c| summand_by_hand(c, p.coords(), &ctx).is_zero());
        let zero = is_common_zero(&s, &ctx).unwrap();
        assert_eq!(zero, by_hand, "{s}");
        assert_eq!(zero, s.is_admissible(), "{s}");
        assert_eq!(zero, count_trees(&s) > 0, "{s}");
    }
}

#[test]
fn random_points_are_not_common_zeros() {
    let ctx = EvalContext::default();
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let mut tested = 0;
    while tested < 50 {
        let n = rng.gen_range(1..=6);
        let coords: Vec<Rational> = (0..n)
            .map(|_| rat(rng.gen_range(-60..=60), rng.gen_range(1..=11)))
            .collect();
        let Ok(p) = Point::new(coords) else { continue };
        if p.check_distinct().is_err() || p.coords().iter().any(Zero::is_zero) {
            continue;
        }
        tested += 1;
        assert!(!point_is_common_zero(&p, &ctx).unwrap(), "{p}");
        let c = (0..n).find(|&c| !master_summand(c, &p, &ctx).unwrap().is_zero()).unwrap();
        assert_eq!(master_summand(c, &p, &ctx).unwrap(), summand_by_hand(c, p.coords(), &ctx));
    }
}

#[test]
fn generators_vanish_at_admissible_points() {
    let ctx = EvalContext::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 1..=5 {
        for (s, _) in enumerate_admissible(n, None) {
            let p = subset_to_point(&s, &ctx).unwrap();
            for _ in 0..3 {
                let f = random_symmetric(n - 1, 3, &mut rng);
                assert!(generator_at(&f, p.coords(), &ctx).unwrap().is_zero(), "{s}");
            }
        }
    }
}

#[test]
fn generators_do_not_vanish_at_orphan_points() {
    let ctx = EvalContext::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let s = GridSubset::from_pairs(&[(0, 0), (1, 0), (2, 1)]);
    assert!(!s.is_admissible());
    let p = subset_to_point(&s, &ctx).unwrap();
    let nonzero = (0..5).any(|_| !generator_at(&random_symmetric(2, 3, &mut rng), p.coords(), &ctx).unwrap().is_zero());
    assert!(nonzero);
}

#[test]
fn multiplicity_is_certified_for_k_at_most_two() {
    let ctx = EvalContext::default();
    let mut seen_k = [0usize; 3];
    for n in 1..=6 {
        for (s, m) in enumerate_admissible(n, None) {
            if s.k() > 2 {
                continue;
            }
            seen_k[s.k()] += 1;
            let rep = verify_multiplicity(&s, &ctx, SampleConfig::new(20, n as u64)).unwrap();
            assert!(rep.passed(), "{s}: {rep:?}");
            assert_eq!(rep.conditions_verified as u64, m, "{s}");
        }
    }
    assert!(seen_k.iter().all(|&c| c > 0), "{seen_k:?}");
}

#[test]
fn three_free_vertices_report_the_order_two_count() {
    let ctx = EvalContext::default();
    let s = GridSubset::from_pairs(&[(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (1, 2)]);
    assert_eq!(s.k(), 3);
    let rep = verify_multiplicity(&s, &ctx, SampleConfig::new(6, 3).with_gradient_rank()).unwrap();
    assert!(rep.all_checks_pass(), "{rep:?}");
    assert_eq!(rep.conditions_verified, 1 + 3 + 3);
    assert!(!rep.passed());
    assert_eq!(rep.gradient_rank, Some(s.len() - 3));
}

#[test]
fn relations_without_the_square_correction_fail() {
    let ctx = EvalContext::default();
    let s = GridSubset::from_pairs(&[(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (2, 1)]);
    let p = subset_to_point(&s, &ctx).unwrap();
    let first = first_order_relations(&s).unwrap();
    let mut second = second_order_relations(&s).unwrap();
    second[0].terms.truncate(1);
    let rep = verify_relations(&p, &ctx, &first, &second, SampleConfig::new(5, 1)).unwrap();
    assert!(rep.checks.iter().filter(|c| c.id.starts_with("first")).all(|c| c.passed));
    assert!(!rep.checks.iter().find(|c| c.id == "second_order_1").unwrap().passed);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scaling_lambda_preserves_common_zeros(
        pairs in prop::collection::btree_set((0u32..4, 0u32..4), 0..6),
        num in 1i64..20,
        den in 1i64..7,
    ) {
        let s = GridSubset::new(
            std::iter::once(GridVertex::ROOT).chain(pairs.into_iter().map(|(a, b)| GridVertex::new(a, b))),
        );
        let ctx = EvalContext::default().with_lambda(rat(num, den));
        prop_assert_eq!(is_common_zero(&s, &ctx).unwrap(), s.is_admissible());
    }
}
