//! Nonnegative integer solutions of `A x = b` with per-coordinate upper bounds.
//!
//! The system is reduced once; integer points are found by depth-first search
//! over the free coordinates, pruning whenever some pivot coordinate can no
//! longer land inside its bounds.

use num::{BigInt, Integer, One, ToPrimitive};

use super::matrix::{rref, Rational, RationalMatrix};
use crate::budget::{Budget, BudgetExhausted};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Budget(#[from] BudgetExhausted),
    #[error("coefficients exceed the 128-bit working range")]
    Overflow,
}

#[derive(Debug, Clone)]
pub(crate) struct BoundedSolver {
    n: usize,
    consistent: bool,
    free: Vec<usize>,
    /// Pivot column of each reduced row.
    pivots: Vec<usize>,
    /// Common denominator of the reduced system.
    den: i128,
    /// `den * rhs` per reduced row.
    rhs: Vec<i128>,
    /// `den * coefficient` of each free coordinate, per reduced row.
    coef: Vec<Vec<i128>>,
}

impl BoundedSolver {
    pub(crate) fn new(rows: &[Vec<i64>], rhs: &[i64]) -> Result<Self, SolveError> {
        let n = rows.first().map_or(0, Vec::len);
        let augmented: Vec<Vec<i64>> = rows
            .iter()
            .zip(rhs)
            .map(|(r, &b)| r.iter().copied().chain([b]).collect())
            .collect();
        let (reduced, pivot_cols) = rref(&RationalMatrix::from_integers(&augmented));
        Self::from_reduced(n, &reduced, &pivot_cols)
    }

    fn from_reduced(
        n: usize,
        reduced: &RationalMatrix,
        pivot_cols: &[usize],
    ) -> Result<Self, SolveError> {
        let consistent = !pivot_cols.contains(&n);
        let pivots: Vec<usize> = pivot_cols.iter().copied().filter(|&c| c < n).collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut den = BigInt::one();
        for (i, _) in pivots.iter().enumerate() {
            for x in reduced.row(i) {
                den = den.lcm(x.denom());
            }
        }
        let scale = |x: &Rational| -> Result<i128, SolveError> {
            (x * Rational::from_integer(den.clone()))
                .to_integer()
                .to_i128()
                .ok_or(SolveError::Overflow)
        };
        let mut rhs = Vec::with_capacity(pivots.len());
        let mut coef = Vec::with_capacity(pivots.len());
        for i in 0..pivots.len() {
            rhs.push(scale(&reduced[(i, n)])?);
            coef.push(
                free.iter()
                    .map(|&f| scale(&reduced[(i, f)]))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Ok(BoundedSolver {
            n,
            consistent,
            free,
            pivots,
            den: den.to_i128().ok_or(SolveError::Overflow)?,
            rhs,
            coef,
        })
    }

    /// Visits every solution with `0 <= x_i <= upper[i]` of the system whose
    /// right-hand side is multiplied by `scale`. The visitor returns `false` to
    /// stop early; the result is `true` when the search ran to completion.
    pub(crate) fn for_each<F>(
        &self,
        scale: i64,
        upper: &[i64],
        budget: &mut Budget,
        mut visit: F,
    ) -> Result<bool, SolveError>
    where
        F: FnMut(&[i64]) -> bool,
    {
        if !self.consistent {
            return Ok(true);
        }
        let mut state = Dfs {
            solver: self,
            upper,
            partial: self.rhs.iter().map(|&b| b * scale as i128).collect(),
            x: vec![0; self.n],
        };
        state.go(0, budget, &mut visit)
    }
}

struct Dfs<'a> {
    solver: &'a BoundedSolver,
    upper: &'a [i64],
    /// `den * pivot value` with the unassigned free coordinates at zero.
    partial: Vec<i128>,
    x: Vec<i64>,
}

impl Dfs<'_> {
    fn feasible(&self, depth: usize) -> bool {
        let s = self.solver;
        for (row, &p) in s.pivots.iter().enumerate() {
            let mut lo = self.partial[row];
            let mut hi = lo;
            for (j, &f) in s.free.iter().enumerate().skip(depth) {
                let delta = -s.coef[row][j] * self.upper[f] as i128;
                if delta < 0 {
                    lo += delta;
                } else {
                    hi += delta;
                }
            }
            if hi < 0 || lo > self.upper[p] as i128 * s.den {
                return false;
            }
        }
        true
    }

    fn go<F>(&mut self, depth: usize, budget: &mut Budget, visit: &mut F) -> Result<bool, SolveError>
    where
        F: FnMut(&[i64]) -> bool,
    {
        budget.tick()?;
        if !self.feasible(depth) {
            return Ok(true);
        }
        let s = self.solver;
        if depth == s.free.len() {
            for (row, &p) in s.pivots.iter().enumerate() {
                let v = self.partial[row];
                if v % s.den != 0 {
                    return Ok(true);
                }
                self.x[p] = (v / s.den) as i64;
            }
            return Ok(visit(&self.x));
        }
        let f = s.free[depth];
        for value in 0..=self.upper[f] {
            self.x[f] = value;
            if value > 0 {
                for row in 0..s.pivots.len() {
                    self.partial[row] -= s.coef[row][depth];
                }
            }
            let keep_going = self.go(depth + 1, budget, visit)?;
            if !keep_going {
                self.restore(depth, value);
                return Ok(false);
            }
        }
        self.restore(depth, self.upper[f]);
        Ok(true)
    }

    fn restore(&mut self, depth: usize, value: i64) {
        let s = self.solver;
        for row in 0..s.pivots.len() {
            self.partial[row] += s.coef[row][depth] * value as i128;
        }
        self.x[s.free[depth]] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(rows: &[Vec<i64>], rhs: &[i64], upper: &[i64]) -> Vec<Vec<i64>> {
        let solver = BoundedSolver::new(rows, rhs).unwrap();
        let mut out = Vec::new();
        let done = solver
            .for_each(1, upper, &mut Budget::unlimited(), |x| {
                out.push(x.to_vec());
                true
            })
            .unwrap();
        assert!(done);
        out.sort();
        out
    }

    fn brute(rows: &[Vec<i64>], rhs: &[i64], upper: &[i64]) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut x = vec![0i64; upper.len()];
        loop {
            if rows
                .iter()
                .zip(rhs)
                .all(|(r, &b)| r.iter().zip(&x).map(|(a, v)| a * v).sum::<i64>() == b)
            {
                out.push(x.clone());
            }
            let mut i = 0;
            loop {
                if i == x.len() {
                    out.sort();
                    return out;
                }
                x[i] += 1;
                if x[i] <= upper[i] {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn matches_brute_force() {
        let rows = vec![vec![1, 1, -2, -2], vec![1, -1, 1, -1], vec![1, 1, 1, 1]];
        let rhs = vec![0, 0, 6];
        let upper = vec![6; 4];
        assert_eq!(all(&rows, &rhs, &upper), brute(&rows, &rhs, &upper));
        assert_eq!(all(&rows, &rhs, &upper).len(), 3);
    }

    #[test]
    fn inconsistent_has_no_solutions() {
        let rows = vec![vec![1, 1], vec![1, 1]];
        assert!(all(&rows, &[1, 2], &[5, 5]).is_empty());
    }

    #[test]
    fn fractional_pivots_rejected() {
        // 2x = 3 has no integer solution.
        assert!(all(&[vec![2]], &[3], &[10]).is_empty());
        assert_eq!(all(&[vec![2]], &[4], &[10]), vec![vec![2]]);
    }

    #[test]
    fn stops_early() {
        let solver = BoundedSolver::new(&[vec![1, 1, 1]], &[3]).unwrap();
        let mut seen = 0;
        let done = solver
            .for_each(1, &[3, 3, 3], &mut Budget::unlimited(), |_| {
                seen += 1;
                seen < 2
            })
            .unwrap();
        assert!(!done);
        assert_eq!(seen, 2);
    }
}
