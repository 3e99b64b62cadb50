//! Gaussian elimination over an exact field, and fraction-free elimination
//! for matrices over `ℚ(q1, q2)`.

use num_traits::{One, Zero};

use super::param_poly::ParamPoly;
use super::param_rat::ParamRat;
use super::rational::{rat, Rational};
use super::FieldCoeff;

/// Reduces `m` in place to row echelon form and returns the pivot columns.
fn echelon<C: FieldCoeff>(m: &mut [Vec<C>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv();
        for c in col..ncols {
            m[row][c] *= &inv;
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..ncols {
                let delta = factor.mul_ref(&m[row][c]);
                m[r][c] -= &delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank of the matrix whose rows are `rows` (all of equal length).
pub fn rank<C: FieldCoeff>(rows: &[Vec<C>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    echelon(&mut m, ncols).len()
}

/// Coefficients `c` with `Σ c_i rows[i] = target`, if any exist. Free
/// variables are set to zero.
pub fn solve_in_row_span<C: FieldCoeff>(rows: &[Vec<C>], target: &[C]) -> Option<Vec<C>> {
    let nvars = rows.len();
    let neq = target.len();
    // One equation per column of `rows`; augmented with the target entry.
    let mut m: Vec<Vec<C>> = (0..neq)
        .map(|col| {
            let mut eq: Vec<C> = rows.iter().map(|r| r[col].clone()).collect();
            eq.push(target[col].clone());
            eq
        })
        .collect();
    let pivots = echelon(&mut m, nvars + 1);
    if pivots.last() == Some(&nvars) {
        return None;
    }
    let mut sol = vec![C::zero(); nvars];
    for (r, &col) in pivots.iter().enumerate() {
        sol[col] = m[r][nvars].clone();
    }
    Some(sol)
}

/// Parameter values at which a symbolic matrix is specialized to get a
/// cheap lower bound on its rank.
const PROBES: [(i64, i64, i64, i64); 2] = [(2, 1, 3, 1), (-5, 7, 11, 3)];

/// Rank over `ℚ(q1, q2)`. A specialization that already has full rank
/// certifies full symbolic rank; otherwise the rank is computed by
/// fraction-free elimination over `ℚ[q1, q2]`.
pub fn param_rank(rows: &[Vec<ParamRat>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let full = rows.len().min(ncols);
    for (a, b, c, d) in PROBES {
        let (q1, q2) = (rat(a, b), rat(c, d));
        let specialized: Option<Vec<Vec<Rational>>> = rows
            .iter()
            .map(|r| r.iter().map(|x| x.eval(&q1, &q2).ok()).collect())
            .collect();
        if specialized.is_some_and(|m| rank(&m) == full) {
            return full;
        }
    }
    let mut m: Vec<Vec<ParamPoly>> = rows.iter().map(|r| clear_denominators(r)).collect();
    bareiss(&mut m, ncols).len()
}

/// Coefficients `c` over `ℚ(q1, q2)` with `Σ c_i rows[i] = target`, if any;
/// free variables are set to zero.
pub fn param_solve_in_row_span(rows: &[Vec<ParamRat>], target: &[ParamRat]) -> Option<Vec<ParamRat>> {
    let nvars = rows.len();
    let mut m: Vec<Vec<ParamPoly>> = (0..target.len())
        .map(|col| {
            let mut eq: Vec<ParamRat> = rows.iter().map(|r| r[col].clone()).collect();
            eq.push(target[col].clone());
            clear_denominators(&eq)
        })
        .collect();
    let pivots = bareiss(&mut m, nvars + 1);
    if pivots.last() == Some(&nvars) {
        return None;
    }
    let mut sol = vec![ParamRat::zero(); nvars];
    for (r, &col) in pivots.iter().enumerate().rev() {
        let mut acc = ParamRat::from_poly(m[r][nvars].clone());
        for j in col + 1..nvars {
            if !m[r][j].is_zero() && !sol[j].is_zero() {
                acc -= &(ParamRat::from_poly(m[r][j].clone()) * sol[j].clone());
            }
        }
        sol[col] = acc / ParamRat::from_poly(m[r][col].clone());
    }
    Some(sol)
}

/// The row scaled by the product of its distinct denominators, as
/// polynomials.
fn clear_denominators(row: &[ParamRat]) -> Vec<ParamPoly> {
    let mut scale = ParamRat::one();
    for x in row {
        if !x.denom().is_constant() && !(x.clone() * scale.clone()).denom().is_one() {
            scale = scale * ParamRat::from_poly(x.denom().clone());
        }
    }
    row.iter()
        .map(|x| {
            let y = x.clone() * scale.clone();
            debug_assert!(y.denom().is_one());
            y.numer().clone()
        })
        .collect()
}

/// Fraction-free (Bareiss) reduction to row echelon form; every division is
/// exact. Returns the pivot columns.
fn bareiss(m: &mut [Vec<ParamPoly>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut prev = ParamPoly::one();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let (top, below) = m.split_at_mut(row + 1);
        let pivot_row = &top[row];
        for r in below.iter_mut() {
            for c in col + 1..ncols {
                let t = &(&pivot_row[col] * &r[c]) - &(&r[col] * &pivot_row[c]);
                r[c] = t.div_exact(&prev).expect("fraction-free elimination divides exactly");
            }
            r[col] = ParamPoly::zero();
        }
        prev = pivot_row[col].clone();
        pivots.push(col);
        row += 1;
    }
    pivots
}
