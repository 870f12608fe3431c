//! Exact feasibility for systems `A x = b, x >= 0`.
//!
//! Phase-one simplex over rationals with Bland's rule: the entering column is
//! the lowest-indexed one with negative reduced cost, and ratio-test ties go
//! to the lowest-indexed basic variable. Bland's rule cannot cycle, so the
//! loop always terminates, and the pivot sequence (hence the returned point)
//! depends only on the input.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// A system of linear equalities over nonnegative variables.
#[derive(Clone, Debug)]
pub struct EqualitySystem {
    num_vars: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
}

impl EqualitySystem {
    pub fn new(num_vars: usize) -> Self {
        EqualitySystem {
            num_vars,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Appends the row `coeffs . x = rhs`.
    ///
    /// Panics if `coeffs` has the wrong length.
    pub fn push_row(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "row length mismatch");
        self.rows.push(coeffs);
        self.rhs.push(rhs);
    }

    /// Exact residual check: true iff `x >= 0` and every row holds.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars || x.iter().any(|v| v.is_negative()) {
            return false;
        }
        self.rows.iter().zip(&self.rhs).all(|(row, b)| {
            let lhs: Rational = row.iter().zip(x).map(|(a, v)| a * v).sum();
            &lhs == b
        })
    }

    /// Returns a nonnegative solution, or `None` when the system is infeasible.
    pub fn solve(&self) -> Option<Vec<Rational>> {
        Tableau::phase_one(self).run()
    }
}

struct Tableau {
    n: usize,
    /// Row-major, `n + m` variable columns followed by the right-hand side.
    cells: Vec<Vec<Rational>>,
    /// Reduced costs of the phase-one objective, one per variable column.
    cost: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn phase_one(sys: &EqualitySystem) -> Self {
        let n = sys.num_vars;
        let m = sys.rows.len();
        let width = n + m + 1;
        let mut cells = Vec::with_capacity(m);
        for (i, (row, b)) in sys.rows.iter().zip(&sys.rhs).enumerate() {
            let flip = b.is_negative();
            let mut line = vec![Rational::zero(); width];
            for (j, a) in row.iter().enumerate() {
                line[j] = if flip { -a.clone() } else { a.clone() };
            }
            line[n + i] = Rational::from_integer(1.into());
            line[width - 1] = if flip { -b.clone() } else { b.clone() };
            cells.push(line);
        }
        let mut cost = vec![Rational::zero(); n + m];
        for line in &cells {
            for (c, a) in cost.iter_mut().zip(&line[..n]) {
                *c -= a;
            }
        }
        Tableau {
            n,
            cells,
            cost,
            basis: (n..n + m).collect(),
        }
    }

    fn run(mut self) -> Option<Vec<Rational>> {
        while let Some(col) = self.cost.iter().position(|c| c.is_negative()) {
            let row = self.leaving_row(col)?;
            self.pivot(row, col);
        }
        let rhs = self.cells.first().map_or(0, |l| l.len() - 1);
        let mut x = vec![Rational::zero(); self.n];
        for (line, &var) in self.cells.iter().zip(&self.basis) {
            let value = &line[rhs];
            if var >= self.n {
                if !value.is_zero() {
                    return None;
                }
            } else {
                x[var] = value.clone();
            }
        }
        Some(x)
    }

    fn leaving_row(&self, col: usize) -> Option<usize> {
        let rhs = self.cells[0].len() - 1;
        let mut best: Option<(usize, Rational)> = None;
        for (i, line) in self.cells.iter().enumerate() {
            let a = &line[col];
            if !a.is_positive() {
                continue;
            }
            let ratio = &line[rhs] / a;
            let better = match &best {
                None => true,
                Some((b, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*b]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so an entering column always
        // has a positive entry.
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.cells[row][col].clone();
        for v in self.cells[row].iter_mut() {
            if !v.is_zero() {
                *v /= &p;
            }
        }
        let pivot_line = self.cells[row].clone();
        for (i, line) in self.cells.iter_mut().enumerate() {
            if i == row || line[col].is_zero() {
                continue;
            }
            let f = line[col].clone();
            for (v, a) in line.iter_mut().zip(&pivot_line) {
                if !a.is_zero() {
                    *v -= &f * a;
                }
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for (c, a) in self.cost.iter_mut().zip(&pivot_line) {
                if !a.is_zero() {
                    *c -= &f * a;
                }
            }
        }
        self.basis[row] = col;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn sys(rows: &[&[i64]], rhs: &[i64]) -> EqualitySystem {
        let mut s = EqualitySystem::new(rows[0].len());
        for (r, b) in rows.iter().zip(rhs) {
            s.push_row(r.iter().map(|&a| int(a)).collect(), int(*b));
        }
        s
    }

    #[test]
    fn solves_small_system() {
        // x + y = 1, x - y = 0
        let s = sys(&[&[1, 1], &[1, -1]], &[1, 0]);
        let x = s.solve().unwrap();
        assert_eq!(x, vec![frac(1, 2), frac(1, 2)]);
        assert!(s.is_satisfied_by(&x));
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = -1 with x, y >= 0
        assert!(sys(&[&[1, 1]], &[-1]).solve().is_none());
        // x = 1 and x = 2
        assert!(sys(&[&[1], &[1]], &[1, 2]).solve().is_none());
    }

    #[test]
    fn handles_redundant_and_empty_rows() {
        let s = sys(&[&[1, 1], &[2, 2], &[0, 0]], &[3, 6, 0]);
        let x = s.solve().unwrap();
        assert!(s.is_satisfied_by(&x));
        assert!(sys(&[&[0, 0]], &[1]).solve().is_none());
        assert_eq!(EqualitySystem::new(2).solve().unwrap(), vec![int(0), int(0)]);
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale-style degenerate system; Bland's rule must terminate.
        let mut s = EqualitySystem::new(7);
        s.push_row(
            vec![frac(1, 4), int(-60), frac(-1, 25), int(9), int(1), int(0), int(0)],
            int(0),
        );
        s.push_row(
            vec![frac(1, 2), int(-90), frac(-1, 50), int(3), int(0), int(1), int(0)],
            int(0),
        );
        s.push_row(vec![int(0), int(0), int(1), int(0), int(0), int(0), int(1)], int(1));
        let x = s.solve().unwrap();
        assert!(s.is_satisfied_by(&x));
    }

    proptest! {
        // Systems built around a known nonnegative point are feasible, and the
        // returned point satisfies the system exactly.
        #[test]
        fn planted_solutions_are_found(
            entries in proptest::collection::vec(-4i64..5, 12),
            point in proptest::collection::vec(0i64..4, 4),
        ) {
            let mut s = EqualitySystem::new(4);
            for r in entries.chunks(4) {
                let b: i64 = r.iter().zip(&point).map(|(a, x)| a * x).sum();
                s.push_row(r.iter().map(|&a| int(a)).collect(), int(b));
            }
            let x = s.solve();
            prop_assert!(x.is_some());
            prop_assert!(s.is_satisfied_by(&x.unwrap()));
        }

        #[test]
        fn deterministic(entries in proptest::collection::vec(-3i64..4, 9), rhs in proptest::collection::vec(-3i64..4, 3)) {
            let mut s = EqualitySystem::new(3);
            for (r, b) in entries.chunks(3).zip(&rhs) {
                s.push_row(r.iter().map(|&a| int(a)).collect(), int(*b));
            }
            prop_assert_eq!(s.solve(), s.solve());
        }
    }
}
