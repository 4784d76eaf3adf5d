//! Dense exact simplex for `max c.x  s.t.  A x <= b, x >= 0`.
//!
//! Bland's smallest-index rule for both entering and leaving variables, so
//! degenerate pivots cannot cycle. Infeasible starting points (some `b_i < 0`)
//! go through a phase 1 with a single artificial column `x0`:
//! `max -x0  s.t.  A x - x0 <= b`.

use alloc::vec;
use alloc::vec::Vec;

use crate::exactnum::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LpSolution {
    pub x: Vec<Rat>,
    pub value: Rat,
    /// Optimal multipliers `y >= 0` on the rows of `A`, with `A^T y >= c` and
    /// `b.y == value`.
    pub duals: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum LpOutcome {
    Optimal(LpSolution),
    Unbounded,
    Infeasible,
}

struct Tableau {
    /// Rows of `B^-1 [A | I | -1]`, one extra trailing entry for the rhs.
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    /// Number of structural columns.
    n: usize,
    /// Columns at or beyond this index may not enter.
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        self.rows[i].last().expect("rhs column")
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for x in self.rows[r].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        self.basis[r] = col;
    }

    /// Reduced costs `c_j - c_B B^-1 A_j` for the full column range.
    fn reduced_costs(&self, cost: &[Rat]) -> Vec<Rat> {
        let total = self.rows.first().map_or(0, |r| r.len() - 1);
        (0..total)
            .map(|j| {
                let mut r = cost.get(j).cloned().unwrap_or_else(Rat::zero);
                for (i, &b) in self.basis.iter().enumerate() {
                    if let Some(cb) = cost.get(b) {
                        if !cb.is_zero() && !self.rows[i][j].is_zero() {
                            r -= &(cb * &self.rows[i][j]);
                        }
                    }
                }
                r
            })
            .collect()
    }

    /// Runs Bland's rule to optimality. Returns `false` if unbounded.
    fn optimize(&mut self, cost: &[Rat]) -> bool {
        loop {
            let reduced = self.reduced_costs(cost);
            let Some(enter) = (0..self.width).find(|&j| reduced[j].is_positive()) else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

pub(crate) fn maximize(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    // Columns: structural 0..n, slacks n..n+m, artificial n+m.
    let art = n + m;
    let rows = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(n + m + 2);
            row.extend(a[i].iter().cloned());
            row.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
            row.push(-Rat::one());
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        n,
        width: n + m + 1,
    };

    if let Some(worst) = (0..m)
        .filter(|&i| b[i].is_negative())
        .min_by(|&i, &j| b[i].cmp(&b[j]).then(i.cmp(&j)))
    {
        t.pivot(worst, art);
        let mut phase1 = vec![Rat::zero(); art + 1];
        phase1[art] = -Rat::one();
        let bounded = t.optimize(&phase1);
        debug_assert!(bounded, "phase 1 is bounded by construction");
        if let Some(r) = t.basis.iter().position(|&v| v == art) {
            if !t.rhs(r).is_zero() {
                return LpOutcome::Infeasible;
            }
            match (0..art).find(|&j| !t.rows[r][j].is_zero()) {
                Some(j) => t.pivot(r, j),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                }
            }
        }
    }
    t.width = art;

    if !t.optimize(c) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![Rat::zero(); t.n];
    for (i, &v) in t.basis.iter().enumerate() {
        if v < t.n {
            x[v] = t.rhs(i).clone();
        }
    }
    let reduced = t.reduced_costs(c);
    let duals: Vec<Rat> = (0..m).map(|i| -&reduced[n + i]).collect();
    let value = crate::exactnum::dot(c, &x);
    LpOutcome::Optimal(LpSolution { x, value, duals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::dot;
    use proptest::prelude::*;

    fn r(x: i64) -> Rat {
        Rat::from(x)
    }

    fn rows(xs: &[&[i64]]) -> Vec<Vec<Rat>> {
        xs.iter()
            .map(|row| row.iter().map(|&x| r(x)).collect())
            .collect()
    }

    fn ints(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| r(x)).collect()
    }

    fn check_certificate(a: &[Vec<Rat>], b: &[Rat], c: &[Rat], sol: &LpSolution) {
        assert!(sol.x.iter().all(|v| !v.is_negative()));
        for (row, bi) in a.iter().zip(b) {
            assert!(dot(row, &sol.x) <= *bi);
        }
        assert!(sol.duals.iter().all(|y| !y.is_negative()));
        for j in 0..c.len() {
            let col: Rat = a.iter().zip(&sol.duals).map(|(row, y)| &row[j] * y).sum();
            assert!(col >= c[j]);
        }
        assert_eq!(dot(b, &sol.duals), sol.value);
    }

    #[test]
    fn textbook_lp() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        let a = rows(&[&[1, 0], &[0, 2], &[3, 2]]);
        let (b, c) = (ints(&[4, 12, 18]), ints(&[3, 5]));
        let LpOutcome::Optimal(sol) = maximize(&a, &b, &c) else {
            panic!("expected optimum")
        };
        assert_eq!(sol.value, r(36));
        assert_eq!(sol.x, ints(&[2, 6]));
        assert_eq!(sol.duals, vec![r(0), Rat::ratio(3, 2), r(1)]);
        check_certificate(&a, &b, &c, &sol);
    }

    #[test]
    fn unbounded_lp() {
        let a = rows(&[&[1, -1]]);
        assert_eq!(
            maximize(&a, &ints(&[1]), &ints(&[1, 1])),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn infeasible_lp() {
        // x <= -1 with x >= 0
        let a = rows(&[&[1]]);
        assert_eq!(
            maximize(&a, &ints(&[-1]), &ints(&[1])),
            LpOutcome::Infeasible
        );
    }

    #[test]
    fn phase_one_lp() {
        // max -x - y s.t. x + y >= 2, x <= 3  ->  -2
        let a = rows(&[&[-1, -1], &[1, 0]]);
        let (b, c) = (ints(&[-2, 3]), ints(&[-1, -1]));
        let LpOutcome::Optimal(sol) = maximize(&a, &b, &c) else {
            panic!("expected optimum")
        };
        assert_eq!(sol.value, r(-2));
        check_certificate(&a, &b, &c, &sol);
    }

    #[test]
    fn degenerate_lp_terminates() {
        // Chvátal's cycling example: the largest-coefficient rule cycles here.
        let a = vec![
            vec![
                Rat::ratio(1, 2),
                Rat::ratio(-11, 2),
                Rat::ratio(-5, 2),
                r(9),
            ],
            vec![Rat::ratio(1, 2), Rat::ratio(-3, 2), Rat::ratio(-1, 2), r(1)],
            vec![r(1), r(0), r(0), r(0)],
        ];
        let b = ints(&[0, 0, 1]);
        let c = ints(&[10, -57, -9, -24]);
        let LpOutcome::Optimal(sol) = maximize(&a, &b, &c) else {
            panic!("expected optimum")
        };
        assert_eq!(sol.value, r(1));
        check_certificate(&a, &b, &c, &sol);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn strong_duality_on_random_lps(
            m in 1usize..5,
            n in 1usize..5,
            seed in proptest::collection::vec(-4i64..=4, 50),
        ) {
            let mut it = seed.into_iter().cycle();
            let a: Vec<Vec<Rat>> = (0..m).map(|_| (0..n).map(|_| r(it.next().unwrap())).collect()).collect();
            let b: Vec<Rat> = (0..m).map(|_| r(it.next().unwrap())).collect();
            let c: Vec<Rat> = (0..n).map(|_| r(it.next().unwrap())).collect();
            match maximize(&a, &b, &c) {
                LpOutcome::Optimal(sol) => check_certificate(&a, &b, &c, &sol),
                LpOutcome::Infeasible => {
                    // x = 0 would be feasible if every b_i >= 0
                    prop_assert!(b.iter().any(Rat::is_negative));
                }
                LpOutcome::Unbounded => {
                    prop_assert!(c.iter().any(Rat::is_positive));
                }
            }
        }
    }
}
