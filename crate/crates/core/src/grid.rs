//! Vertices of the triangular grid and finite subsets of them.
//!
//! Vertex `(a, b)` sits `a` steps down-left and `b` steps down-right of the
//! root and carries the coordinate `λ q1^a q2^b`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::arith::{pow_i32, EvalContext, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridVertex {
    pub a: u32,
    pub b: u32,
}

/// Coordinate order: by `a + b`, then by `b`, so that `q1 λ` precedes
/// `q2 λ` and the grid point of `{(0,0),(1,0),(0,1),(1,1)}` is
/// `(λ, q1λ, q2λ, q1q2λ)`.
impl Ord for GridVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.a + self.b, self.b).cmp(&(other.a + other.b, other.b))
    }
}

impl PartialOrd for GridVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl GridVertex {
    pub const ROOT: GridVertex = GridVertex { a: 0, b: 0 };

    pub fn new(a: u32, b: u32) -> Self {
        GridVertex { a, b }
    }

    pub fn is_root(&self) -> bool {
        *self == Self::ROOT
    }

    /// `(a−1, b)` and `(a, b−1)`, where they exist.
    pub fn parents(&self) -> impl Iterator<Item = GridVertex> {
        let left = (self.a > 0).then(|| GridVertex::new(self.a - 1, self.b));
        let right = (self.b > 0).then(|| GridVertex::new(self.a, self.b - 1));
        left.into_iter().chain(right)
    }

    /// Child reached by a `q1` step.
    pub fn left_child(&self) -> GridVertex {
        GridVertex::new(self.a + 1, self.b)
    }

    /// Child reached by a `q2` step.
    pub fn right_child(&self) -> GridVertex {
        GridVertex::new(self.a, self.b + 1)
    }

    /// `λ q1^a q2^b`.
    pub fn coordinate(&self, ctx: &EvalContext) -> Rational {
        &ctx.lambda * pow_i32(&ctx.q1, self.a as i32) * pow_i32(&ctx.q2, self.b as i32)
    }
}

impl fmt::Display for GridVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A finite set of grid vertices, iterated in coordinate order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridSubset {
    vertices: BTreeSet<GridVertex>,
}

impl GridSubset {
    pub fn new(vertices: impl IntoIterator<Item = GridVertex>) -> Self {
        GridSubset { vertices: vertices.into_iter().collect() }
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        Self::new(pairs.iter().map(|&(a, b)| GridVertex::new(a, b)))
    }

    pub fn root() -> Self {
        Self::new([GridVertex::ROOT])
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: &GridVertex) -> bool {
        self.vertices.contains(v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &GridVertex> {
        self.vertices.iter()
    }

    pub fn with(&self, v: GridVertex) -> Self {
        let mut out = self.clone();
        out.vertices.insert(v);
        out
    }

    /// 0-based position of `v` in coordinate order.
    pub fn index_of(&self, v: &GridVertex) -> Option<usize> {
        self.vertices.iter().position(|u| u == v)
    }

    pub fn present_parents(&self, v: &GridVertex) -> usize {
        v.parents().filter(|p| self.contains(p)).count()
    }

    /// Vertices with both parents present.
    pub fn x_set(&self) -> Vec<GridVertex> {
        self.vertices.iter().copied().filter(|v| self.present_parents(v) == 2).collect()
    }

    pub fn k(&self) -> usize {
        self.x_set().len()
    }

    /// Contains the root, and every other vertex has a parent present.
    pub fn is_admissible(&self) -> bool {
        self.contains(&GridVertex::ROOT)
            && self.vertices.iter().all(|v| v.is_root() || self.present_parents(v) > 0)
    }

    /// `2^k` for admissible subsets.
    pub fn multiplicity(&self) -> u64 {
        1u64 << self.k()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.vertices.iter().map(|v| serde_json::json!([v.a, v.b])).collect(),
        )
    }

    /// Parses a JSON array of `[a, b]` pairs.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let pairs: Vec<(u32, u32)> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("subset: {e}")))?;
        Ok(Self::from_pairs(&pairs))
    }

    /// Coordinates in vertex order; two equal coordinates are reported as a
    /// collision.
    pub fn coordinates(&self, ctx: &EvalContext) -> Result<Vec<Rational>> {
        let coords: Vec<(GridVertex, Rational)> =
            self.vertices.iter().map(|v| (*v, v.coordinate(ctx))).collect();
        for (i, (u, cu)) in coords.iter().enumerate() {
            if cu.is_zero() {
                return Err(Error::ZeroCoordinate { index: i });
            }
            for (v, cv) in &coords[i + 1..] {
                if cu == cv {
                    return Err(Error::CoordinateCollision { first: (u.a, u.b), second: (v.a, v.b) });
                }
            }
        }
        Ok(coords.into_iter().map(|(_, c)| c).collect())
    }
}

impl fmt::Display for GridSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// `R(a, b) = {(x, y) : x ≥ a, y ≥ b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Region {
    pub a: u32,
    pub b: u32,
}

impl Region {
    pub fn contains(&self, v: &GridVertex) -> bool {
        v.a >= self.a && v.b >= self.b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn ordering_and_coordinates() {
        let s = GridSubset::from_pairs(&[(1, 1), (0, 1), (1, 0), (0, 0)]);
        let ctx = EvalContext::default();
        assert_eq!(s.coordinates(&ctx).unwrap(), vec![int(1), int(2), int(3), int(6)]);
        assert_eq!(s.x_set(), vec![GridVertex::new(1, 1)]);
        assert_eq!(s.multiplicity(), 2);
        assert!(s.is_admissible());
    }

    #[test]
    fn admissibility() {
        assert!(GridSubset::root().is_admissible());
        assert!(!GridSubset::from_pairs(&[(0, 0), (1, 1)]).is_admissible());
        assert!(!GridSubset::from_pairs(&[(1, 0)]).is_admissible());
    }

    #[test]
    fn collisions_under_torsion() {
        let ctx = EvalContext::default_torsion();
        let s = GridSubset::from_pairs(&[(0, 0), (1, 0), (2, 0), (2, 1)]);
        assert_eq!(
            s.coordinates(&ctx),
            Err(Error::CoordinateCollision { first: (0, 0), second: (2, 1) })
        );
    }

    #[test]
    fn json_round_trip() {
        let s = GridSubset::from_pairs(&[(0, 0), (1, 0), (0, 1)]);
        let text = s.to_json().to_string();
        assert_eq!(text, "[[0,0],[1,0],[0,1]]");
        assert_eq!(GridSubset::from_json_str(&text).unwrap(), s);
        assert!(GridSubset::from_json_str("[[0]]").is_err());
    }
}
