//! Exact two-phase revised simplex for LPs with 0/1 constraint columns.
//!
//! ```text
//! maximize   cᵀx
//! subject to A x ≤ b   (rows of kind Le)
//!            A x = b   (rows of kind Eq)
//!            x ≥ 0,  b ≥ 0
//! ```
//!
//! Every column of `A` is a 0/1 vector, given as the list of rows holding a
//! one. Pivoting uses Bland's rule (smallest entering index with positive
//! reduced cost, ties in the ratio test to the smallest basic index), so the
//! method terminates. All arithmetic is exact.

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Le,
    Eq,
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub kinds: Vec<RowKind>,
    pub rhs: Vec<Rational>,
    /// Column `j` lists the rows where `A` has a one.
    pub columns: Vec<Vec<usize>>,
    pub objective: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// `x` over the structural columns, `y` over the rows, and the common
    /// value `cᵀx = bᵀy`.
    Optimal {
        x: Vec<Rational>,
        y: Vec<Rational>,
        value: Rational,
    },
    /// `y` with `yᵀA ≥ 0`, `y_i ≥ 0` on `Le` rows, and `yᵀb < 0`.
    Infeasible {
        farkas: Vec<Rational>,
    },
    Unbounded,
}

impl LinearProgram {
    pub fn rows(&self) -> usize {
        self.kinds.len()
    }

    fn validate(&self) -> Result<()> {
        let m = self.rows();
        if self.rhs.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: self.rhs.len(),
            });
        }
        if self.objective.len() != self.columns.len() {
            return Err(Error::DimensionMismatch {
                expected: self.columns.len(),
                found: self.objective.len(),
            });
        }
        if self.rhs.iter().any(Rational::is_negative) {
            return Err(Error::Precondition(
                "LP right-hand side must be nonnegative".into(),
            ));
        }
        if let Some(&i) = self.columns.iter().flatten().find(|&&i| i >= m) {
            return Err(Error::IndexOutOfRange {
                index: i + 1,
                bound: m,
            });
        }
        Ok(())
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        self.validate()?;
        Tableau::new(self).run()
    }
}

/// Variables `0..N` are structural, `N..N+m` one auxiliary per row: a slack
/// for `Le` rows, an artificial for `Eq` rows.
struct Tableau<'a> {
    lp: &'a LinearProgram,
    m: usize,
    structural: usize,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    binv: Vec<Vec<Rational>>,
    xb: Vec<Rational>,
}

impl<'a> Tableau<'a> {
    fn new(lp: &'a LinearProgram) -> Self {
        let m = lp.rows();
        let structural = lp.columns.len();
        let mut binv = vec![vec![Rational::zero(); m]; m];
        for (i, row) in binv.iter_mut().enumerate() {
            row[i] = Rational::one();
        }
        let mut is_basic = vec![false; structural + m];
        for flag in &mut is_basic[structural..] {
            *flag = true;
        }
        Tableau {
            lp,
            m,
            structural,
            basis: (structural..structural + m).collect(),
            is_basic,
            binv,
            xb: lp.rhs.clone(),
        }
    }

    fn is_artificial(&self, var: usize) -> bool {
        var >= self.structural && self.lp.kinds[var - self.structural] == RowKind::Eq
    }

    /// Row indices holding a one in the column of `var`.
    fn column(&self, var: usize) -> Vec<usize> {
        if var < self.structural {
            self.lp.columns[var].clone()
        } else {
            vec![var - self.structural]
        }
    }

    /// `B⁻¹ a_var`.
    fn ftran(&self, var: usize) -> Vec<Rational> {
        let rows = self.column(var);
        (0..self.m)
            .map(|i| rows.iter().map(|&r| &self.binv[i][r]).sum())
            .collect()
    }

    /// `c_Bᵀ B⁻¹`.
    fn duals(&self, cost: &dyn Fn(usize) -> Rational) -> Vec<Rational> {
        let cb: Vec<Rational> = self.basis.iter().map(|&v| cost(v)).collect();
        (0..self.m)
            .map(|j| {
                cb.iter()
                    .zip(&self.binv)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, row)| c * &row[j])
                    .sum()
            })
            .collect()
    }

    fn pivot(&mut self, row: usize, entering: usize, u: &[Rational]) {
        let p = u[row].clone();
        for x in &mut self.binv[row] {
            *x = &*x / &p;
        }
        self.xb[row] = &self.xb[row] / &p;
        let pivot_row = self.binv[row].clone();
        let pivot_x = self.xb[row].clone();
        for (i, ui) in u.iter().enumerate() {
            if i == row || ui.is_zero() {
                continue;
            }
            for (x, q) in self.binv[i].iter_mut().zip(&pivot_row) {
                *x -= &(ui * q);
            }
            self.xb[i] = &self.xb[i] - &(ui * &pivot_x);
        }
        self.is_basic[self.basis[row]] = false;
        self.is_basic[entering] = true;
        self.basis[row] = entering;
    }

    /// Maximizes `cost` over the current basis. Returns `false` if unbounded.
    fn optimize(&mut self, cost: &dyn Fn(usize) -> Rational, allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            let y = self.duals(cost);
            let entering = (0..self.structural + self.m).find(|&j| {
                if self.is_basic[j] || !allowed(j) {
                    return false;
                }
                let reduced: Rational = cost(j) - self.column(j).iter().map(|&r| &y[r]).sum::<Rational>();
                reduced.is_positive()
            });
            let Some(entering) = entering else {
                return true;
            };
            let u = self.ftran(entering);
            let mut leave: Option<(usize, Rational)> = None;
            for (i, ui) in u.iter().enumerate() {
                if !ui.is_positive() {
                    continue;
                }
                let ratio = &self.xb[i] / ui;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, entering, &u);
        }
    }

    fn run(mut self) -> Result<LpOutcome> {
        let has_artificials = self.lp.kinds.contains(&RowKind::Eq);
        if has_artificials {
            let lp = self.lp;
            let structural = self.structural;
            let phase1_cost = move |v: usize| {
                if v >= structural && lp.kinds[v - structural] == RowKind::Eq {
                    -Rational::one()
                } else {
                    Rational::zero()
                }
            };
            if !self.optimize(&phase1_cost, &|_| true) {
                return Err(Error::Internal("phase 1 reported unbounded".into()));
            }
            let infeasibility: Rational = self
                .basis
                .iter()
                .zip(&self.xb)
                .filter(|(v, _)| self.is_artificial(**v))
                .map(|(_, x)| x)
                .sum();
            if infeasibility.is_positive() {
                let farkas = self.duals(&phase1_cost);
                return Ok(LpOutcome::Infeasible { farkas });
            }
            self.drive_out_artificials();
        }
        let lp = self.lp;
        let structural = self.structural;
        let kinds = &lp.kinds;
        let cost = move |v: usize| {
            if v < structural {
                lp.objective[v].clone()
            } else {
                Rational::zero()
            }
        };
        let allowed = move |v: usize| v < structural || kinds[v - structural] == RowKind::Le;
        if !self.optimize(&cost, &allowed) {
            return Ok(LpOutcome::Unbounded);
        }
        let mut x = vec![Rational::zero(); self.structural];
        for (v, value) in self.basis.iter().zip(&self.xb) {
            if *v < self.structural {
                x[*v] = value.clone();
            }
        }
        let y = self.duals(&cost);
        let value = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
        Ok(LpOutcome::Optimal { x, y, value })
    }

    /// Pivots zero-level artificials out of the basis where some
    /// non-artificial column has a nonzero entry in their row. Rows where
    /// none does are redundant and keep their artificial at zero.
    fn drive_out_artificials(&mut self) {
        for row in 0..self.m {
            if !self.is_artificial(self.basis[row]) {
                continue;
            }
            let replacement = (0..self.structural + self.m)
                .filter(|&j| !self.is_basic[j] && !self.is_artificial(j))
                .find_map(|j| {
                    let u = self.ftran(j);
                    (!u[row].is_zero()).then_some((j, u))
                });
            if let Some((j, u)) = replacement {
                self.pivot(row, j, &u);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn ones(n: usize) -> Vec<Rational> {
        vec![Rational::one(); n]
    }

    #[test]
    fn fractional_packing_of_a_triangle() {
        // Three sets {0,1}, {1,2}, {0,2} on unit-capacity servers: value 3/2.
        let lp = LinearProgram {
            kinds: vec![RowKind::Le; 3],
            rhs: ones(3),
            columns: vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            objective: ones(3),
        };
        match lp.solve().unwrap() {
            LpOutcome::Optimal { x, y, value } => {
                assert_eq!(value, r(3, 2));
                assert_eq!(x, vec![r(1, 2); 3]);
                assert_eq!(y.iter().sum::<Rational>(), r(3, 2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equality_rows_and_infeasibility() {
        // x0 + x1 = 2, x0 ≤ 1, x1 ≤ 1/2: infeasible.
        let lp = LinearProgram {
            kinds: vec![RowKind::Eq, RowKind::Le, RowKind::Le],
            rhs: vec![r(2, 1), r(1, 1), r(1, 2)],
            columns: vec![vec![0, 1], vec![0, 2]],
            objective: vec![Rational::zero(); 2],
        };
        match lp.solve().unwrap() {
            LpOutcome::Infeasible { farkas } => {
                for col in &lp.columns {
                    assert!(!col.iter().map(|&i| &farkas[i]).sum::<Rational>().is_negative());
                }
                assert!(!farkas[1].is_negative() && !farkas[2].is_negative());
                let yb: Rational = farkas.iter().zip(&lp.rhs).map(|(a, b)| a * b).sum();
                assert!(yb.is_negative());
            }
            other => panic!("{other:?}"),
        }
        // Same with demand 3/2: feasible.
        let lp = LinearProgram {
            rhs: vec![r(3, 2), r(1, 1), r(1, 2)],
            ..lp
        };
        match lp.solve().unwrap() {
            LpOutcome::Optimal { x, .. } => assert_eq!(x, vec![r(1, 1), r(1, 2)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        // Two identical equality rows.
        let lp = LinearProgram {
            kinds: vec![RowKind::Eq, RowKind::Eq, RowKind::Le],
            rhs: vec![r(1, 1), r(1, 1), r(1, 1)],
            columns: vec![vec![0, 1, 2], vec![0, 1]],
            objective: vec![Rational::zero(), Rational::one()],
        };
        match lp.solve().unwrap() {
            LpOutcome::Optimal { value, x, .. } => {
                assert_eq!(value, Rational::one());
                assert_eq!(x, vec![Rational::zero(), Rational::one()]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_and_invalid() {
        let lp = LinearProgram {
            kinds: vec![RowKind::Le],
            rhs: ones(1),
            columns: vec![vec![0], vec![]],
            objective: ones(2),
        };
        assert_eq!(lp.solve().unwrap(), LpOutcome::Unbounded);
        let bad = LinearProgram {
            rhs: vec![r(-1, 1)],
            ..lp.clone()
        };
        assert!(bad.solve().is_err());
        let bad = LinearProgram {
            columns: vec![vec![3], vec![]],
            ..lp
        };
        assert!(bad.solve().is_err());
    }

    #[test]
    fn degenerate_cycling_example() {
        // Zero capacity on one server makes most pivots degenerate.
        let lp = LinearProgram {
            kinds: vec![RowKind::Le; 2],
            rhs: vec![Rational::zero(), Rational::one()],
            columns: vec![vec![0], vec![0, 1], vec![1], vec![0, 1], vec![1]],
            objective: ones(5),
        };
        match lp.solve().unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, Rational::one()),
            other => panic!("{other:?}"),
        }
    }
}
