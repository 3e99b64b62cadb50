//! Admissible grid subsets, rooted binary trees placed on the grid, Hilbert
//! dimensions of the quotient, Catalan numbers and the bijection between
//! basis words and Dyck paths.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{GridSubset, GridVertex, Region};
use crate::rewrite::ShuffleWord;

/// `binom(2n, n) / (n + 1)`.
///
/// # Panics
///
/// If an intermediate value does not fit in a `u128` (`n > 65`).
pub fn catalan(n: u32) -> u128 {
    // c_{k+1} = c_k · 2(2k+1) / (k+2); the division is exact.
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c
            .checked_mul(2 * (2 * k + 1))
            .map(|x| x / (k + 2))
            .unwrap_or_else(|| panic!("catalan({n}) overflows u128"));
    }
    c
}

/// A rooted binary tree; `Empty` is the tree with no nodes.
///
/// Nodes are placed on the grid implicitly: the root at `(0,0)`, the left
/// child of `(a,b)` at `(a+1,b)` and the right child at `(a,b+1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinaryTree {
    Empty,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    pub fn leaf() -> Self {
        Self::node(BinaryTree::Empty, BinaryTree::Empty)
    }

    pub fn size(&self) -> usize {
        match self {
            BinaryTree::Empty => 0,
            BinaryTree::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Grid positions of the nodes in preorder.
    pub fn placements(&self) -> Vec<GridVertex> {
        fn walk(t: &BinaryTree, at: GridVertex, out: &mut Vec<GridVertex>) {
            if let BinaryTree::Node(l, r) = t {
                out.push(at);
                walk(l, at.left_child(), out);
                walk(r, at.right_child(), out);
            }
        }
        let mut out = Vec::new();
        walk(self, GridVertex::ROOT, &mut out);
        out
    }

    /// Whether two nodes are placed on the same vertex.
    pub fn has_collision(&self) -> bool {
        let mut counts: BTreeMap<GridVertex, usize> = BTreeMap::new();
        for v in self.placements() {
            *counts.entry(v).or_default() += 1;
        }
        counts.values().any(|&c| c > 1)
    }

    /// The set of occupied vertices, or `None` if two nodes collide.
    pub fn support(&self) -> Option<GridSubset> {
        let placed = self.placements();
        let s = GridSubset::new(placed.iter().copied());
        (s.len() == placed.len()).then_some(s)
    }

    /// `null` for the empty tree, `[left, right]` for a node.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            BinaryTree::Empty => serde_json::Value::Null,
            BinaryTree::Node(l, r) => serde_json::Value::Array(vec![l.to_json(), r.to_json()]),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::Null => Ok(BinaryTree::Empty),
            serde_json::Value::Array(children) if children.len() == 2 => {
                Ok(Self::node(Self::from_json(&children[0])?, Self::from_json(&children[1])?))
            }
            other => Err(Error::Parse(format!("tree: expected null or [left, right], found {other}"))),
        }
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// All rooted binary trees with `n` nodes, `Catalan(n)` of them.
pub fn enumerate_trees(n: usize) -> Vec<BinaryTree> {
    let mut by_size: Vec<Vec<BinaryTree>> = vec![vec![BinaryTree::Empty]];
    for m in 1..=n {
        let mut level = Vec::new();
        for i in 0..m {
            for l in &by_size[i] {
                for r in &by_size[m - 1 - i] {
                    level.push(BinaryTree::node(l.clone(), r.clone()));
                }
            }
        }
        by_size.push(level);
    }
    by_size.swap_remove(n)
}

/// Trees with `n` nodes in which two nodes share a grid vertex.
pub fn forbidden_trees(n: usize) -> Vec<BinaryTree> {
    enumerate_trees(n).into_iter().filter(BinaryTree::has_collision).collect()
}

/// Number of trees whose support is exactly `s`: zero if `s` lacks the root
/// or some other vertex has no parent in `s`, and `2^k` otherwise.
pub fn count_trees(s: &GridSubset) -> u64 {
    if s.is_admissible() {
        s.multiplicity()
    } else {
        0
    }
}

fn admissible_levels(n_max: usize, region: Option<Region>) -> Vec<BTreeSet<GridSubset>> {
    let excluded = |v: &GridVertex| region.is_some_and(|r| r.contains(v));
    let mut levels = vec![BTreeSet::new()];
    if n_max == 0 || excluded(&GridVertex::ROOT) {
        levels.resize(n_max + 1, BTreeSet::new());
        return levels;
    }
    levels.push(BTreeSet::from([GridSubset::root()]));
    for _ in 2..=n_max {
        let mut next = BTreeSet::new();
        for s in levels.last().expect("nonempty") {
            for v in s.vertices() {
                for child in [v.left_child(), v.right_child()] {
                    if !s.contains(&child) && !excluded(&child) {
                        next.insert(s.with(child));
                    }
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// Admissible subsets of size `n` avoiding `region`, with multiplicity `2^k`,
/// in subset order. Built by adding one child of a present vertex at a
/// time, so every set produced is admissible.
pub fn enumerate_admissible(n: usize, region: Option<Region>) -> Vec<(GridSubset, u64)> {
    admissible_levels(n, region)
        .swap_remove(n)
        .into_iter()
        .map(|s| {
            let m = s.multiplicity();
            (s, m)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HilbertMode {
    Generic,
    /// `q1^a q2^b = 1`: no vertex of `R(a, b)` may be used.
    Torsion { a: u32, b: u32 },
}

impl HilbertMode {
    pub fn region(&self) -> Option<Region> {
        match *self {
            HilbertMode::Generic => None,
            HilbertMode::Torsion { a, b } => Some(Region { a, b }),
        }
    }
}

impl fmt::Display for HilbertMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HilbertMode::Generic => write!(f, "generic"),
            HilbertMode::Torsion { a, b } => write!(f, "torsion({a},{b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertTable {
    pub mode: String,
    pub dims: Vec<u64>,
}

fn level_dim(level: &BTreeSet<GridSubset>) -> u64 {
    level.iter().map(GridSubset::multiplicity).sum()
}

/// Σ of `2^k` over the admissible subsets of size `n`; `1` for `n = 0`.
pub fn hilbert_dim(n: usize, mode: HilbertMode) -> u64 {
    if n == 0 {
        return 1;
    }
    level_dim(&admissible_levels(n, mode.region())[n])
}

/// `dims[0..=n_max]`.
pub fn hilbert_table(n_max: usize, mode: HilbertMode) -> HilbertTable {
    let levels = admissible_levels(n_max, mode.region());
    let dims = (0..=n_max).map(|n| if n == 0 { 1 } else { level_dim(&levels[n]) }).collect();
    HilbertTable { mode: mode.to_string(), dims }
}

/// A balanced sequence of up (`U`) and down (`D`) steps that never dips
/// below zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckPath {
    /// `true` for an up-step.
    steps: Vec<bool>,
}

impl DyckPath {
    pub fn new(steps: Vec<bool>) -> Result<Self> {
        let mut height = 0i64;
        for (i, &up) in steps.iter().enumerate() {
            height += if up { 1 } else { -1 };
            if height < 0 {
                return Err(Error::MalformedPath(format!("goes below zero at step {}", i + 1)));
            }
        }
        if height != 0 {
            return Err(Error::MalformedPath(format!("ends at height {height}")));
        }
        Ok(DyckPath { steps })
    }

    pub fn steps(&self) -> &[bool] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'U' => Ok(true),
                'D' => Ok(false),
                other => Err(Error::MalformedPath(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.steps.iter().map(|&up| if up { 'U' } else { 'D' }).collect();
        write!(f, "{s}")
    }
}

/// Splits the word into maximal strictly increasing runs; a run of length
/// `d` becomes `d` up-steps followed by down-steps to the first letter of
/// the next run (or to zero after the last run).
pub fn dyck_from_word(w: &ShuffleWord) -> Result<DyckPath> {
    if !w.is_vbasis() {
        return Err(Error::InvalidInput(format!("({w}) is not a basis word")));
    }
    let letters = w.letters();
    let mut steps = Vec::with_capacity(2 * letters.len());
    let mut start = 0;
    while start < letters.len() {
        let mut end = start + 1;
        while end < letters.len() && letters[end] > letters[end - 1] {
            end += 1;
        }
        steps.extend(std::iter::repeat_n(true, end - start));
        let top = letters[end - 1] + 1;
        let next = letters.get(end).copied().unwrap_or(0);
        steps.extend(std::iter::repeat_n(false, (top - next) as usize));
        start = end;
    }
    DyckPath::new(steps)
}

/// Each maximal ascent of length `d` starting at height `h` contributes the
/// run `h, h+1, …, h+d−1`.
pub fn word_from_dyck(p: &DyckPath) -> ShuffleWord {
    let mut letters = Vec::with_capacity(p.semilength());
    let mut height = 0i32;
    for &up in p.steps() {
        if up {
            letters.push(height);
            height += 1;
        } else {
            height -= 1;
        }
    }
    ShuffleWord::new(letters)
}

/// All Dyck paths of semilength `n`, with `U` before `D`.
pub fn enumerate_dyck(n: usize) -> Vec<DyckPath> {
    fn extend(cur: &mut Vec<bool>, ups: usize, downs: usize, n: usize, out: &mut Vec<DyckPath>) {
        if cur.len() == 2 * n {
            out.push(DyckPath { steps: cur.clone() });
            return;
        }
        if ups < n {
            cur.push(true);
            extend(cur, ups + 1, downs, n, out);
            cur.pop();
        }
        if downs < ups {
            cur.push(false);
            extend(cur, ups, downs + 1, n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 0, 0, n, &mut out);
    out
}
