//! Exact linear algebra over `F_p`: row reduction and expressing a
//! polynomial in a given list of spanning polynomials.

use crate::fp::{inv_mod, mul_mod, sub_mod};
use crate::poly::{GradedPoly, Monomial, PolyError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("target is not in the span of the columns")]
    NotInSpan,
    #[error("solution is not unique; kernel has dimension {}", kernel.len())]
    NotUnique { kernel: Vec<Vec<u64>> },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Row echelon accumulator over `F_p`. Rows are dense coefficient vectors of
/// a fixed width; pivots are normalized to 1.
pub(crate) struct Echelon {
    p: u64,
    width: usize,
    /// (pivot column, reduced row)
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new(p: u64, width: usize) -> Self {
        Echelon {
            p,
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[(usize, Vec<u64>)] {
        &self.rows
    }

    /// Reduces `row` against the current echelon in place.
    pub fn reduce(&self, row: &mut [u64]) {
        for (pivot, r) in &self.rows {
            let c = row[*pivot];
            if c == 0 {
                continue;
            }
            for k in 0..self.width {
                row[k] = sub_mod(row[k], mul_mod(c, r[k], self.p), self.p);
            }
        }
    }

    /// Reduces and, if nonzero, inserts the row. Returns true if inserted.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        self.reduce(&mut row);
        match row.iter().position(|&c| c != 0) {
            None => false,
            Some(pivot) => {
                let inv = inv_mod(row[pivot], self.p);
                for c in row.iter_mut() {
                    *c = mul_mod(*c, inv, self.p);
                }
                self.rows.push((pivot, row));
                true
            }
        }
    }
}

/// Solves the linear system `sum_j x_j rows[.][j] = rhs[.]` over `F_p`, where
/// equations are the entries of `rows`/`rhs`.
pub(crate) fn solve_dense(
    p: u64,
    equations: impl Iterator<Item = Vec<u64>>,
    ncols: usize,
) -> Result<Vec<u64>, LinalgError> {
    // Each equation vector has width ncols + 1 (augmented with the rhs).
    let mut ech = Echelon::new(p, ncols + 1);
    for eq in equations {
        debug_assert_eq!(eq.len(), ncols + 1);
        ech.insert(eq);
    }
    let mut pivots: Vec<(usize, Vec<u64>)> = ech.rows.clone();
    pivots.sort_by_key(|(pv, _)| *pv);
    if pivots.iter().any(|(pv, _)| *pv == ncols) {
        return Err(LinalgError::NotInSpan);
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|(pv, _)| *pv).collect();
    let free_cols: Vec<usize> = (0..ncols).filter(|j| !pivot_cols.contains(j)).collect();
    if !free_cols.is_empty() {
        // Kernel basis: one vector per free column, back-substituted.
        let kernel = free_cols
            .iter()
            .map(|&f| {
                let mut v = vec![0u64; ncols];
                v[f] = 1;
                for (pv, row) in pivots.iter().rev() {
                    let mut s = 0u64;
                    for j in (pv + 1)..ncols {
                        s = (s + mul_mod(row[j], v[j], p)) % p;
                    }
                    v[*pv] = (p - s) % p;
                }
                v
            })
            .collect();
        return Err(LinalgError::NotUnique { kernel });
    }
    let mut x = vec![0u64; ncols];
    for (pv, row) in pivots.iter().rev() {
        let mut rhs = row[ncols];
        for j in (pv + 1)..ncols {
            rhs = sub_mod(rhs, mul_mod(row[j], x[j], p), p);
        }
        x[*pv] = rhs;
    }
    Ok(x)
}

/// Solves `sum_i x_i columns[i] = target` exactly.
///
/// Returns the unique coefficient vector when it exists; reports the kernel
/// basis when the columns are dependent, and `NotInSpan` when no solution
/// exists.
pub fn solve_linear(
    columns: &[GradedPoly],
    target: &GradedPoly,
) -> Result<Vec<u64>, LinalgError> {
    let p = target.p();
    for c in columns {
        if c.p() != p || c.context() != target.context() {
            return Err(LinalgError::Poly(PolyError::ContextMismatch(
                "columns and target must share a context".into(),
            )));
        }
    }
    // Index the union of supports; one equation per monomial.
    let mut support: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for poly in columns.iter().chain(std::iter::once(target)) {
        for (m, _) in poly.terms() {
            let next = support.len();
            support.entry(m).or_insert(next);
        }
    }
    let nrows = support.len();
    let ncols = columns.len();
    let mut equations = vec![vec![0u64; ncols + 1]; nrows];
    for (j, col) in columns.iter().enumerate() {
        for (m, c) in col.terms() {
            equations[support[m]][j] = c;
        }
    }
    for (m, c) in target.terms() {
        equations[support[m]][ncols] = c;
    }
    solve_dense(p, equations.into_iter(), ncols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarContext;

    #[test]
    fn identity_column() {
        let ctx = VarContext::t_vars(2);
        let t1 = GradedPoly::var(0, 23, ctx);
        assert_eq!(solve_linear(&[t1.clone()], &t1).unwrap(), vec![1]);
    }

    #[test]
    fn scaled_column() {
        let ctx = VarContext::t_vars(2);
        let t1 = GradedPoly::var(0, 23, ctx);
        assert_eq!(solve_linear(&[t1.scale(2)], &t1).unwrap(), vec![12]);
    }

    #[test]
    fn independent_variables_not_in_span() {
        let ctx = VarContext::t_vars(2);
        let t1 = GradedPoly::var(0, 23, ctx.clone());
        let t2 = GradedPoly::var(1, 23, ctx);
        assert_eq!(solve_linear(&[t1], &t2), Err(LinalgError::NotInSpan));
    }

    #[test]
    fn dependent_columns_report_kernel() {
        let ctx = VarContext::t_vars(2);
        let p = 23;
        let t1 = GradedPoly::var(0, p, ctx);
        let err = solve_linear(&[t1.clone(), t1.scale(2)], &t1).unwrap_err();
        match err {
            LinalgError::NotUnique { kernel } => {
                assert_eq!(kernel.len(), 1);
                // kernel vector (a, b) satisfies a + 2b = 0
                let v = &kernel[0];
                assert_eq!((v[0] + 2 * v[1]) % p, 0);
                assert!(v.iter().any(|&c| c != 0));
            }
            other => panic!("expected NotUnique, got {other:?}"),
        }
    }

    #[test]
    fn two_by_two_system() {
        let ctx = VarContext::t_vars(2);
        let p = 11;
        let t1 = GradedPoly::var(0, p, ctx.clone());
        let t2 = GradedPoly::var(1, p, ctx.clone());
        let c1 = t1.add(&t2).unwrap();
        let c2 = t1.sub(&t2).unwrap();
        // 3*(t1+t2) + 5*(t1-t2) = 8 t1 - 2 t2
        let target = t1.scale(8).add(&t2.scale(-2)).unwrap();
        assert_eq!(solve_linear(&[c1, c2], &target).unwrap(), vec![3, 5]);
    }
}
