//! Dense kernels for homogeneous polynomials in few variables.
//!
//! The invariant-theory computations multiply degree-30 forms in four
//! variables thousands of times; a flat coefficient vector indexed by a
//! combinatorial rank is far cheaper there than a tree of monomials. These
//! types are internal: results are converted back to [`GradedPoly`] at the
//! module boundary.

use crate::fp::{add_mod, mul_mod, pow_mod};
use crate::poly::{GradedPoly, Monomial, VarContext};
use std::collections::HashMap;
use std::sync::Arc;

/// Number of monomials of total degree `d` in `n` variables: C(d+n-1, n-1).
pub(crate) fn monomial_count(n: usize, d: u32) -> usize {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..(n as u128 - 1) {
        num *= d as u128 + 1 + i;
        den *= i + 1;
    }
    (num / den) as usize
}

/// Pascal's triangle reduced mod p, exact for all entries.
pub(crate) fn binomials_mod(max: usize, p: u64) -> Vec<Vec<u64>> {
    let mut c = vec![vec![0u64; max + 1]; max + 1];
    for i in 0..=max {
        c[i][0] = 1;
        for j in 1..=i {
            c[i][j] = add_mod(c[i - 1][j - 1], c[i - 1].get(j).copied().unwrap_or(0), p);
        }
    }
    c
}

/// The homogeneous component of degree `degree` in `nvars` variables, with a
/// materialized monomial list in lex-descending order of exponent vectors.
pub(crate) struct HomogSpace {
    pub nvars: usize,
    pub degree: u32,
    pub exponents: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl HomogSpace {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let mut exponents = Vec::with_capacity(monomial_count(nvars, degree));
        let mut current = vec![0u32; nvars];
        gen_exponents(nvars, degree, 0, &mut current, &mut exponents);
        let index = exponents
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        HomogSpace {
            nvars,
            degree,
            exponents,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn rank(&self, exps: &[u32]) -> usize {
        self.index[exps]
    }
}

fn gen_exponents(n: usize, rem: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos == n - 1 {
        cur[pos] = rem;
        out.push(cur.clone());
        return;
    }
    for v in (0..=rem).rev() {
        cur[pos] = v;
        gen_exponents(n, rem - v, pos + 1, cur, out);
    }
}

/// Cache of homogeneous spaces keyed by (nvars, degree).
#[derive(Default)]
pub(crate) struct SpaceCache {
    spaces: HashMap<(usize, u32), Arc<HomogSpace>>,
}

impl SpaceCache {
    pub fn get(&mut self, nvars: usize, degree: u32) -> Arc<HomogSpace> {
        self.spaces
            .entry((nvars, degree))
            .or_insert_with(|| Arc::new(HomogSpace::new(nvars, degree)))
            .clone()
    }
}

/// Dense homogeneous polynomial: coefficient vector over a [`HomogSpace`].
#[derive(Clone)]
pub(crate) struct DensePoly {
    pub p: u64,
    pub space: Arc<HomogSpace>,
    pub coeffs: Vec<u64>,
}

impl DensePoly {
    pub fn zero(p: u64, space: Arc<HomogSpace>) -> Self {
        let dim = space.dim();
        DensePoly {
            p,
            space,
            coeffs: vec![0; dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add_assign(&mut self, other: &DensePoly) {
        debug_assert_eq!(self.space.degree, other.space.degree);
        for (a, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = add_mod(*a, b, self.p);
        }
    }

    pub fn scale(&mut self, c: u64) {
        for a in self.coeffs.iter_mut() {
            *a = mul_mod(*a, c, self.p);
        }
    }

    pub fn mul(&self, other: &DensePoly, cache: &mut SpaceCache) -> DensePoly {
        let out_space = cache.get(self.space.nvars, self.space.degree + other.space.degree);
        let mut out = DensePoly::zero(self.p, out_space);
        let mut sum = vec![0u32; self.space.nvars];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let ea = &self.space.exponents[i];
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let eb = &other.space.exponents[j];
                for k in 0..sum.len() {
                    sum[k] = ea[k] + eb[k];
                }
                let r = out.space.rank(&sum);
                out.coeffs[r] = add_mod(out.coeffs[r], mul_mod(a, b, self.p), self.p);
            }
        }
        out
    }

    pub fn from_graded(f: &GradedPoly, cache: &mut SpaceCache) -> DensePoly {
        let n = f.context().arity();
        let degree = f
            .terms()
            .next()
            .map(|(m, _)| m.total_exponent())
            .unwrap_or(0);
        let space = cache.get(n, degree);
        let mut out = DensePoly::zero(f.p(), space);
        for (m, c) in f.terms() {
            debug_assert_eq!(m.total_exponent(), degree, "input must be homogeneous");
            let r = out.space.rank(m.exponents());
            out.coeffs[r] = c;
        }
        out
    }

    pub fn to_graded(&self, context: Arc<VarContext>) -> GradedPoly {
        let mut out = GradedPoly::zero(self.p, context);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out.add_term(Monomial::new(self.space.exponents[i].clone()), c);
            }
        }
        out
    }
}

/// Expands a power of a linear form, `(sum_j form[j] t_j)^e`, using the
/// multinomial theorem. `binom` must be Pascal's triangle mod p covering `e`.
pub(crate) fn linear_form_power(
    form: &[u64],
    e: u32,
    p: u64,
    binom: &[Vec<u64>],
    cache: &mut SpaceCache,
) -> DensePoly {
    let n = form.len();
    let space = cache.get(n, e);
    let mut out = DensePoly::zero(p, space);
    // Power tables form[j]^k for k <= e.
    let pows: Vec<Vec<u64>> = form
        .iter()
        .map(|&a| {
            let mut v = Vec::with_capacity(e as usize + 1);
            v.push(1u64);
            for _ in 0..e {
                v.push(mul_mod(*v.last().unwrap(), a % p, p));
            }
            v
        })
        .collect();
    for (i, exps) in out.space.exponents.iter().enumerate() {
        // multinomial(e; exps) = prod of binomials over partial sums
        let mut coeff = 1u64;
        let mut partial = 0u32;
        for &x in exps.iter() {
            partial += x;
            coeff = mul_mod(coeff, binom[partial as usize][x as usize], p);
            if coeff == 0 {
                break;
            }
        }
        if coeff == 0 {
            continue;
        }
        for (j, &x) in exps.iter().enumerate() {
            coeff = mul_mod(coeff, pows[j][x as usize], p);
            if coeff == 0 {
                break;
            }
        }
        out.coeffs[i] = coeff;
    }
    out
}

/// One invertible row operation, as a variable substitution.
pub(crate) enum ElementaryOp {
    /// t_i -> c * t_i
    Scale { i: usize, c: u64 },
    /// t_i -> t_i + c * t_j (i != j)
    Shear { i: usize, j: usize, c: u64 },
    /// t_i <-> t_j
    Swap { i: usize, j: usize },
}

/// Decomposes an invertible matrix into elementary factors such that the
/// substitution t -> Mt equals the elementary substitutions applied in the
/// returned order.
pub(crate) fn elementary_factors(matrix: &[Vec<u64>], p: u64) -> Vec<ElementaryOp> {
    let n = matrix.len();
    let mut m: Vec<Vec<u64>> = matrix.to_vec();
    // Reduce M to the identity by row operations; each op applied to M is
    // recorded, and the substitution for M is the record replayed in reverse
    // with inverted operations.
    let mut record: Vec<ElementaryOp> = Vec::new();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| m[r][col] % p != 0)
            .expect("matrix must be invertible");
        if pivot != col {
            m.swap(pivot, col);
            record.push(ElementaryOp::Swap { i: pivot, j: col });
        }
        let d = m[col][col] % p;
        if d != 1 {
            let dinv = crate::fp::inv_mod(d, p);
            for x in m[col].iter_mut() {
                *x = mul_mod(*x, dinv, p);
            }
            record.push(ElementaryOp::Scale { i: col, c: dinv });
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r][col] % p;
            if f == 0 {
                continue;
            }
            for k in 0..n {
                let sub = mul_mod(f, m[col][k], p);
                m[r][k] = crate::fp::sub_mod(m[r][k], sub, p);
            }
            record.push(ElementaryOp::Shear {
                i: r,
                j: col,
                c: (p - f) % p,
            });
        }
    }
    // E_k ... E_1 M = I, so M = E_1^-1 ... E_k^-1. The substitution
    // S_M = S_{E_k^-1} o ... o S_{E_1^-1}: invert each recorded op and keep
    // the recorded order (outermost first is applied first).
    record
        .into_iter()
        .map(|op| match op {
            ElementaryOp::Swap { i, j } => ElementaryOp::Swap { i, j },
            ElementaryOp::Scale { i, c } => ElementaryOp::Scale {
                i,
                c: crate::fp::inv_mod(c, p),
            },
            ElementaryOp::Shear { i, j, c } => ElementaryOp::Shear {
                i,
                j,
                c: (p - c) % p,
            },
        })
        .collect()
}

/// Applies `t -> Mt` to a dense homogeneous polynomial via the elementary
/// decomposition of `M`; cost is roughly nnz * degree per shear instead of a
/// full per-monomial expansion.
pub(crate) fn dense_substitute(
    f: &DensePoly,
    ops: &[ElementaryOp],
    binom: &[Vec<u64>],
) -> DensePoly {
    let p = f.p;
    let space = f.space.clone();
    let mut cur = f.coeffs.clone();
    for op in ops {
        match *op {
            ElementaryOp::Swap { i, j } => {
                let mut next = vec![0u64; cur.len()];
                for (idx, &c) in cur.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let mut e = space.exponents[idx].clone();
                    e.swap(i, j);
                    next[space.rank(&e)] = c;
                }
                cur = next;
            }
            ElementaryOp::Scale { i, c } => {
                for (idx, v) in cur.iter_mut().enumerate() {
                    if *v == 0 {
                        continue;
                    }
                    let e = space.exponents[idx][i];
                    *v = mul_mod(*v, pow_mod(c, e as u64, p), p);
                }
            }
            ElementaryOp::Shear { i, j, c } => {
                let mut next = vec![0u64; cur.len()];
                let mut e = vec![0u32; space.nvars];
                for (idx, &v) in cur.iter().enumerate() {
                    if v == 0 {
                        continue;
                    }
                    e.copy_from_slice(&space.exponents[idx]);
                    let ei = e[i];
                    // (t_i + c t_j)^ei, distributed onto t_j
                    let mut cpow = 1u64;
                    for k in 0..=ei {
                        let coeff = mul_mod(
                            v,
                            mul_mod(binom[ei as usize][k as usize], cpow, p),
                            p,
                        );
                        cpow = mul_mod(cpow, c, p);
                        if coeff != 0 {
                            e[i] = ei - k;
                            e[j] += k;
                            let r = space.rank(&e);
                            next[r] = add_mod(next[r], coeff, p);
                            e[j] -= k;
                        }
                    }
                    e[i] = ei;
                }
                cur = next;
            }
        }
    }
    DensePoly {
        p,
        space,
        coeffs: cur,
    }
}
