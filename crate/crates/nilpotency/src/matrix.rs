//! Small square matrices over `F_p` and multiplicative closure of matrix
//! sets into finite groups.

use crate::fp::{add_mod, mul_mod};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClosureError {
    #[error("closure exceeded the expected order {0}")]
    OrderExceeded(usize),
    #[error("generator is singular")]
    Singular,
}

/// Row-major `dim x dim` matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixFp {
    pub p: u64,
    pub dim: usize,
    entries: Vec<u64>,
}

impl MatrixFp {
    pub fn identity(dim: usize, p: u64) -> Self {
        let mut entries = vec![0u64; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        MatrixFp { p, dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>, p: u64) -> Self {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in &rows {
            assert_eq!(row.len(), dim, "matrix must be square");
            for &x in row {
                entries.push(crate::fp::Fp::new(x, p).value());
            }
        }
        MatrixFp { p, dim, entries }
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows_vec(&self) -> Vec<Vec<u64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &MatrixFp) -> MatrixFp {
        debug_assert_eq!(self.p, other.p);
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    entries[idx] =
                        add_mod(entries[idx], mul_mod(a, other.entries[k * n + j], self.p), self.p);
                }
            }
        }
        MatrixFp {
            p: self.p,
            dim: n,
            entries,
        }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim;
        self.entries
            .iter()
            .enumerate()
            .all(|(idx, &x)| x == u64::from(idx / n == idx % n))
    }

    /// Inverse by the finite order of the element within a closed group is
    /// not always convenient; this is plain Gauss-Jordan.
    pub fn inverse(&self) -> Option<MatrixFp> {
        let n = self.dim;
        let p = self.p;
        let mut a: Vec<Vec<u64>> = self.rows_vec();
        let mut b: Vec<Vec<u64>> = MatrixFp::identity(n, p).rows_vec();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(pivot, col);
            b.swap(pivot, col);
            let inv = crate::fp::inv_mod(a[col][col], p);
            for j in 0..n {
                a[col][j] = mul_mod(a[col][j], inv, p);
                b[col][j] = mul_mod(b[col][j], inv, p);
            }
            for r in 0..n {
                if r == col || a[r][col] == 0 {
                    continue;
                }
                let f = a[r][col];
                for j in 0..n {
                    a[r][j] = crate::fp::sub_mod(a[r][j], mul_mod(f, a[col][j], p), p);
                    b[r][j] = crate::fp::sub_mod(b[r][j], mul_mod(f, b[col][j], p), p);
                }
            }
        }
        Some(MatrixFp::from_rows(
            b.into_iter()
                .map(|r| r.into_iter().map(|x| x as i64).collect())
                .collect(),
            p,
        ))
    }
}

/// Multiplicative closure of the generators (plus the identity) by breadth
/// first search. In a group of invertible matrices every generator has
/// finite order, so the closure is the generated subgroup. Fails if more
/// than `limit` elements appear.
pub fn close_group(
    generators: &[MatrixFp],
    limit: usize,
) -> Result<Vec<MatrixFp>, ClosureError> {
    let dim = generators
        .first()
        .map(|g| g.dim)
        .expect("at least one generator");
    let p = generators[0].p;
    for g in generators {
        if g.inverse().is_none() {
            return Err(ClosureError::Singular);
        }
    }
    let identity = MatrixFp::identity(dim, p);
    let mut seen: HashMap<MatrixFp, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    seen.insert(identity, 0);
    let mut frontier = 0;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        frontier += 1;
        for g in generators {
            let next = current.mul(g);
            if !seen.contains_key(&next) {
                if elements.len() >= limit {
                    return Err(ClosureError::OrderExceeded(limit));
                }
                seen.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
    }
    // Deterministic element order, independent of generator order.
    elements.sort_by(|a, b| a.entries.cmp(&b.entries));
    Ok(elements)
}
