use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use shufflealg::combinatorics::{
    catalan, count_trees, dyck_from_word, enumerate_admissible, enumerate_dyck, enumerate_trees,
    forbidden_trees, hilbert_table, word_from_dyck, DyckPath, HilbertMode,
};
use shufflealg::grid::{GridSubset, GridVertex, Region};
use shufflealg::rewrite::enumerate_vbasis;

/// Number of ways to pick, for every non-root vertex, a parent that is
/// present: walks the vertices and multiplies out explicit choices.
fn parent_choices(s: &GridSubset) -> u64 {
    if !s.contains(&GridVertex::ROOT) {
        return 0;
    }
    let options: Vec<Vec<GridVertex>> = s
        .vertices()
        .filter(|v| !v.is_root())
        .map(|v| v.parents().filter(|p| s.contains(p)).collect())
        .collect();
    let mut count = 0;
    let mut idx = vec![0usize; options.len()];
    if options.iter().any(Vec::is_empty) {
        return 0;
    }
    loop {
        count += 1;
        let mut i = 0;
        loop {
            if i == idx.len() {
                return count;
            }
            idx[i] += 1;
            if idx[i] < options[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn triangle(depth: u32) -> Vec<GridVertex> {
    (0..=depth).flat_map(|s| (0..=s).map(move |b| GridVertex::new(s - b, b))).collect()
}

/// All subsets of `universe` of size exactly `size` containing the root.
fn rooted_subsets(universe: &[GridVertex], size: usize) -> Vec<GridSubset> {
    let others: Vec<GridVertex> = universe.iter().copied().filter(|v| !v.is_root()).collect();
    let mut out = Vec::new();
    fn walk(others: &[GridVertex], from: usize, left: usize, cur: &mut Vec<GridVertex>, out: &mut Vec<GridSubset>) {
        if left == 0 {
            out.push(GridSubset::new(std::iter::once(GridVertex::ROOT).chain(cur.iter().copied())));
            return;
        }
        for i in from..others.len() {
            cur.push(others[i]);
            walk(others, i + 1, left - 1, cur, out);
            cur.pop();
        }
    }
    if size > 0 {
        walk(&others, 0, size - 1, &mut Vec::new(), &mut out);
    }
    out
}

#[test]
fn tree_counts_match_parent_choices() {
    let universe = triangle(4);
    for size in 1..=7 {
        for s in rooted_subsets(&universe, size) {
            let c = count_trees(&s);
            assert_eq!(c, parent_choices(&s), "{s}");
            assert!(c == 0 || c == 1 << s.k(), "{s}");
        }
    }
    assert_eq!(count_trees(&GridSubset::from_pairs(&[(1, 0)])), 0);
}

#[test]
fn tree_counts_match_tree_supports() {
    for n in 1..=7 {
        let mut by_support: BTreeMap<GridSubset, u64> = BTreeMap::new();
        for t in enumerate_trees(n) {
            if let Some(s) = t.support() {
                *by_support.entry(s).or_default() += 1;
            }
        }
        let admissible: BTreeMap<GridSubset, u64> = enumerate_admissible(n, None).into_iter().collect();
        assert_eq!(by_support, admissible, "n={n}");
        for (s, m) in &admissible {
            assert_eq!(count_trees(s), *m);
        }
    }
}

#[test]
fn duality_between_subsets_and_trees() {
    for n in 1..=7 {
        let weighted: u64 = enumerate_admissible(n, None).iter().map(|(_, m)| m).sum();
        let distinct = enumerate_trees(n).iter().filter(|t| !t.has_collision()).count() as u64;
        let forbidden = forbidden_trees(n).len() as u128;
        assert_eq!(weighted, distinct, "n={n}");
        assert_eq!(weighted as u128, catalan(n as u32) - forbidden, "n={n}");
    }
}

#[test]
fn admissible_enumeration_matches_filtering() {
    for n in 1..=6 {
        let universe = triangle(n as u32 - 1);
        for region in [None, Some(Region { a: 2, b: 1 }), Some(Region { a: 1, b: 1 })] {
            let filtered: BTreeSet<GridSubset> = rooted_subsets(&universe, n)
                .into_iter()
                .filter(|s| s.is_admissible())
                .filter(|s| region.is_none_or(|r| s.vertices().all(|v| !r.contains(v))))
                .collect();
            let enumerated: Vec<GridSubset> = enumerate_admissible(n, region).into_iter().map(|(s, _)| s).collect();
            assert_eq!(enumerated.len(), filtered.len(), "n={n} {region:?}");
            assert_eq!(enumerated.into_iter().collect::<BTreeSet<_>>(), filtered);
        }
    }
}

#[test]
fn generic_dimensions() {
    let t = hilbert_table(7, HilbertMode::Generic);
    for n in 0..=4 {
        assert_eq!(t.dims[n] as u128, catalan(n as u32));
    }
    for n in 5..=7 {
        assert!((t.dims[n] as u128) < catalan(n as u32), "n={n}");
    }
    assert_eq!(serde_json::to_string(&hilbert_table(2, HilbertMode::Generic)).unwrap(), r#"{"mode":"generic","dims":[1,1,2]}"#);
}

#[test]
fn torsion_dimensions_are_bounded_by_generic() {
    let generic = hilbert_table(7, HilbertMode::Generic);
    for a in 0..=3 {
        for b in 0..=3 {
            if a + b == 0 {
                continue;
            }
            let t = hilbert_table(7, HilbertMode::Torsion { a, b });
            for n in 0..=7 {
                assert!(t.dims[n] <= generic.dims[n], "({a},{b}) n={n}");
                if n <= (a + b) as usize {
                    assert_eq!(t.dims[n], generic.dims[n], "({a},{b}) n={n}");
                }
            }
            assert!(t.dims[(a + b) as usize + 1] < generic.dims[(a + b) as usize + 1]);
        }
    }
}

#[test]
fn dyck_bijection() {
    for n in 0..=8 {
        let words = enumerate_vbasis(n);
        let paths = enumerate_dyck(n);
        assert_eq!(paths.len() as u128, catalan(n as u32));
        let image: BTreeSet<DyckPath> = words
            .iter()
            .map(|w| {
                let p = dyck_from_word(w).unwrap();
                assert_eq!(p.semilength(), n);
                assert_eq!(&word_from_dyck(&p), w);
                p
            })
            .collect();
        assert_eq!(image.len(), words.len());
        assert_eq!(image, paths.iter().cloned().collect::<BTreeSet<_>>());
        for p in &paths {
            assert_eq!(&dyck_from_word(&word_from_dyck(p)).unwrap(), p);
        }
    }
}

proptest! {
    #[test]
    fn dyck_text_round_trip(steps in prop::collection::vec(any::<bool>(), 0..16)) {
        let text: String = steps.iter().map(|&u| if u { 'U' } else { 'D' }).collect();
        match text.parse::<DyckPath>() {
            Ok(p) => {
                prop_assert_eq!(p.to_string(), text);
                prop_assert!(word_from_dyck(&p).is_vbasis());
            }
            Err(_) => {
                let mut h = 0i32;
                let valid = steps.iter().all(|&u| { h += if u { 1 } else { -1 }; h >= 0 }) && h == 0;
                prop_assert!(!valid);
            }
        }
    }
}
