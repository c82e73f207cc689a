//! Dense tableau simplex over exact rationals, Bland's rule throughout.
//!
//! Only the form needed here: maximize `cᵀx` subject to `Ax ≤ b`, `x ≥ 0`
//! with `b ≥ 0`, so the slack basis is feasible and no phase one is needed.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::linalg::{Rational, RationalMatrix};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub x: Vec<Rational>,
    pub objective: Rational,
    /// Optimal dual values, one per constraint row; `y ≥ 0`, `yᵀA ≥ c`.
    pub dual: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Unbounded,
}

pub fn maximize(a: &RationalMatrix, b: &[Rational], c: &[Rational]) -> Result<LpOutcome> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m || c.len() != n {
        return Err(Error::DimensionMismatch(alloc::format!(
            "LP with {m}x{n} constraints, {} bounds and {} costs",
            b.len(),
            c.len()
        )));
    }
    if b.iter().any(Signed::is_negative) {
        return Err(Error::Unsupported(alloc::string::String::from(
            "right-hand side must be nonnegative",
        )));
    }
    let width = n + m + 1;
    let rhs = n + m;
    // Rows 0..m are constraints, row m is the objective (reduced costs).
    let mut t = alloc::vec![Rational::zero(); (m + 1) * width];
    for i in 0..m {
        for j in 0..n {
            t[i * width + j] = a[(i, j)].clone();
        }
        t[i * width + n + i] = Rational::from_integer(1.into());
        t[i * width + rhs] = b[i].clone();
    }
    for j in 0..n {
        t[m * width + j] = -c[j].clone();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| t[m * width + j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            let coef = &t[i * width + enter];
            if !coef.is_positive() {
                continue;
            }
            let ratio = &t[i * width + rhs] / coef;
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((row, _)) = leave else {
            return Ok(LpOutcome::Unbounded);
        };
        pivot(&mut t, width, m, row, enter);
        basis[row] = enter;
    }

    let mut x = alloc::vec![Rational::zero(); n];
    for (i, &v) in basis.iter().enumerate() {
        if v < n {
            x[v] = t[i * width + rhs].clone();
        }
    }
    let dual = (0..m).map(|i| t[m * width + n + i].clone()).collect();
    Ok(LpOutcome::Optimal(LpSolution {
        x,
        objective: t[m * width + rhs].clone(),
        dual,
    }))
}

fn pivot(t: &mut [Rational], width: usize, m: usize, row: usize, col: usize) {
    let p = t[row * width + col].clone();
    for j in 0..width {
        t[row * width + j] /= &p;
    }
    let pivot_row: Vec<Rational> = t[row * width..(row + 1) * width].to_vec();
    for i in 0..=m {
        if i == row {
            continue;
        }
        let f = t[i * width + col].clone();
        if f.is_zero() {
            continue;
        }
        for (j, pv) in pivot_row.iter().enumerate() {
            if !pv.is_zero() {
                t[i * width + j] -= &f * pv;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn small_optimum_with_duals() {
        // max 3x + 2y, x + y ≤ 4, x + 3y ≤ 6, x ≤ 3.
        let a = RationalMatrix::from_i64(&[&[1, 1], &[1, 3], &[1, 0]]);
        let LpOutcome::Optimal(s) = maximize(&a, &[q(4), q(6), q(3)], &[q(3), q(2)]).unwrap()
        else {
            panic!("bounded");
        };
        assert_eq!(s.x, alloc::vec![q(3), q(1)]);
        assert_eq!(s.objective, q(11));
        // Strong duality: bᵀy = cᵀx.
        let by = q(4) * &s.dual[0] + q(6) * &s.dual[1] + q(3) * &s.dual[2];
        assert_eq!(by, q(11));
        assert!(s.dual.iter().all(|y| !y.is_negative()));
    }

    #[test]
    fn unbounded_detected() {
        let a = RationalMatrix::from_i64(&[&[1, -1]]);
        assert_eq!(
            maximize(&a, &[q(1)], &[q(1), q(1)]).unwrap(),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic cycling example for the largest-coefficient rule.
        let a = RationalMatrix::from_fn(3, 4, |i, j| {
            let rows = [
                [q(1) / q(2), q(-11) / q(2), q(-5) / q(2), q(9)],
                [q(1) / q(2), q(-3) / q(2), q(-1) / q(2), q(1)],
                [q(1), q(0), q(0), q(0)],
            ];
            rows[i][j].clone()
        });
        let out = maximize(&a, &[q(0), q(0), q(1)], &[q(10), q(-57), q(-9), q(-24)]).unwrap();
        let LpOutcome::Optimal(s) = out else {
            panic!("bounded");
        };
        assert_eq!(s.objective, q(1));
    }
}
