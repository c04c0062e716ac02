//! Finite reflection groups over `F_p`, Reynolds averaging, canonical
//! fundamental invariants, and the action of `P^1` expressed in those
//! invariants.
//!
//! Groups are carried as explicit matrix lists (dihedral in the eigenbasis;
//! the rank-3 and rank-4 pentagonal Coxeter groups in the reflection basis).
//! Invariant extraction follows one deterministic recipe: in each prescribed
//! degree, Reynolds-average monomials in graded-lex order until an invariant
//! independent of the decomposables appears, reduce it against the
//! decomposable subspace, and scale the leading coefficient to 1.

use crate::dense::{
    binomials_mod, dense_substitute, elementary_factors, linear_form_power, DensePoly,
    ElementaryOp, SpaceCache,
};
use crate::fp::{inv_mod, is_prime, mul_mod};
use crate::linalg::Echelon;
use crate::matrix::{close_group, ClosureError, MatrixFp};
use crate::poly::{GradedPoly, Monomial, PolyError, VarContext};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReflectionError {
    #[error("prime {p} unsupported: {reason}")]
    UnsupportedPrime { p: u64, reason: String },
    #[error("closure has order {got}, expected {expected}")]
    RepresentationError { expected: usize, got: usize },
    #[error("degrees mismatch: {0}")]
    DegreesMismatch(String),
    #[error("not in the span of the generators (non-invariant or wrong degree)")]
    NotInSpan,
    #[error("generator monomials are linearly dependent")]
    DependentGenerators,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupLabel {
    I2(u32),
    H3,
    H4,
    Custom(String),
}

impl std::fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupLabel::I2(n) => write!(f, "I2({n})"),
            GroupLabel::H3 => write!(f, "H3"),
            GroupLabel::H4 => write!(f, "H4"),
            GroupLabel::Custom(s) => write!(f, "{s}"),
        }
    }
}

/// A finite reflection group over `F_p`, with its full element list.
#[derive(Debug, Clone)]
pub struct ReflectionGroup {
    p: u64,
    dim: usize,
    label: GroupLabel,
    generators: Vec<MatrixFp>,
    elements: Vec<MatrixFp>,
}

impl ReflectionGroup {
    pub fn from_generators(
        label: GroupLabel,
        p: u64,
        generators: Vec<MatrixFp>,
        expected_order: usize,
    ) -> Result<Self, ReflectionError> {
        let dim = generators[0].dim;
        let elements = close_group(&generators, expected_order)?;
        if elements.len() != expected_order {
            return Err(ReflectionError::RepresentationError {
                expected: expected_order,
                got: elements.len(),
            });
        }
        if elements.len() as u64 % p == 0 {
            return Err(ReflectionError::UnsupportedPrime {
                p,
                reason: format!("p divides the group order {}", elements.len()),
            });
        }
        Ok(ReflectionGroup {
            p,
            dim,
            label,
            generators,
            elements,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &GroupLabel {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[MatrixFp] {
        &self.generators
    }

    pub fn elements(&self) -> &[MatrixFp] {
        &self.elements
    }

    pub fn t_context(&self) -> Arc<VarContext> {
        VarContext::t_vars(self.dim)
    }

    /// Reynolds averaging `|G|^{-1} sum_g f(g t)`: the exact projection onto
    /// the invariant subring.
    pub fn reynolds(&self, f: &GradedPoly) -> Result<GradedPoly, ReflectionError> {
        if f.context().arity() != self.dim || !f.context().all_degree_two() {
            return Err(ReflectionError::Poly(PolyError::UnsupportedContext(
                "expected degree-2 variables matching the group dimension".into(),
            )));
        }
        // Split into homogeneous components; substitute densely per element.
        let mut by_degree: BTreeMap<u32, GradedPoly> = BTreeMap::new();
        for (m, c) in f.terms() {
            let d = m.total_exponent();
            by_degree
                .entry(d)
                .or_insert_with(|| GradedPoly::zero(self.p, f.context().clone()))
                .add_term(m.clone(), c);
        }
        let max_deg = by_degree.keys().max().copied().unwrap_or(0);
        let binom = binomials_mod(max_deg as usize + 1, self.p);
        let factor_lists: Vec<Vec<ElementaryOp>> = self
            .elements
            .iter()
            .map(|g| elementary_factors(&g.rows_vec(), self.p))
            .collect();
        let mut out = GradedPoly::zero(self.p, f.context().clone());
        let inv_order = inv_mod(self.elements.len() as u64 % self.p, self.p);
        let mut cache = SpaceCache::default();
        for (_, component) in by_degree {
            let dense = DensePoly::from_graded(&component, &mut cache);
            let summed = factor_lists
                .par_iter()
                .map(|ops| dense_substitute(&dense, ops, &binom))
                .reduce(
                    || DensePoly::zero(self.p, dense.space.clone()),
                    |mut a, b| {
                        a.add_assign(&b);
                        a
                    },
                );
            let mut averaged = summed;
            averaged.scale(inv_order);
            out = out.add(&averaged.to_graded(f.context().clone()))?;
        }
        Ok(out)
    }

    /// Reynolds average of a single monomial, expanded per group element with
    /// the multinomial theorem. This is the hot path of invariant extraction.
    fn reynolds_monomial(
        &self,
        exps: &[u32],
        binom: &[Vec<u64>],
        cache: &mut SpaceCache,
    ) -> DensePoly {
        let degree: u32 = exps.iter().sum();
        let space = cache.get(self.dim, degree);
        let p = self.p;
        let dim = self.dim;
        let exps_owned: Vec<u32> = exps.to_vec();
        let summed = self
            .elements
            .par_iter()
            .map_init(SpaceCache::default, |local, g| {
                let mut product: Option<DensePoly> = None;
                for (i, &e) in exps_owned.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let factor = linear_form_power(g.row(i), e, p, binom, local);
                    product = Some(match product {
                        None => factor,
                        Some(acc) => acc.mul(&factor, local),
                    });
                }
                product.unwrap_or_else(|| {
                    let mut one = DensePoly::zero(p, local.get(dim, 0));
                    one.coeffs[0] = 1;
                    one
                })
            })
            .reduce(
                || DensePoly::zero(p, space.clone()),
                |mut a, b| {
                    a.add_assign(&b);
                    a
                },
            );
        let mut averaged = summed;
        averaged.scale(inv_mod(self.elements.len() as u64 % p, p));
        averaged
    }

    /// Dimension of the invariant subspace in a given polynomial degree,
    /// computed as the rank of the Reynolds images of all monomials.
    pub fn invariant_dimension(&self, degree: u32) -> usize {
        let mut cache = SpaceCache::default();
        let binom = binomials_mod(degree as usize + 1, self.p);
        let space = cache.get(self.dim, degree);
        let mut ech = Echelon::new(self.p, space.dim());
        let exponents = space.exponents.clone();
        for exps in &exponents {
            let r = self.reynolds_monomial(exps, &binom, &mut cache);
            ech.insert(r.coeffs);
        }
        ech.rank()
    }
}

/// Expected dimension of the degree-`d` invariants for generator degrees
/// `degs`: the number of monomials in generators of weighted degree `d`.
pub fn molien_dimension(degs: &[u32], d: u32) -> u64 {
    let mut ways = vec![0u64; d as usize + 1];
    ways[0] = 1;
    for &g in degs {
        for total in g as usize..=d as usize {
            ways[total] += ways[total - g as usize];
        }
    }
    ways[d as usize]
}

/// The dihedral group of order `2n` in the eigenbasis: the rotation
/// `diag(z, z^-1)` for `z` the smallest primitive n-th root of unity in
/// `F_p`, together with the coordinate swap.
pub fn build_dihedral(n: u32, p: u64) -> Result<ReflectionGroup, ReflectionError> {
    if !is_prime(p) {
        return Err(ReflectionError::UnsupportedPrime {
            p,
            reason: "modulus must be prime".into(),
        });
    }
    if n < 2 || (p - 1) % n as u64 != 0 {
        return Err(ReflectionError::UnsupportedPrime {
            p,
            reason: format!("F_{p} has no primitive {n}-th root of unity"),
        });
    }
    let n64 = n as u64;
    let zeta = (2..p)
        .find(|&x| {
            crate::fp::pow_mod(x, n64, p) == 1
                && (1..n64).all(|k| n64 % k != 0 || crate::fp::pow_mod(x, k, p) != 1)
        })
        .ok_or(ReflectionError::UnsupportedPrime {
            p,
            reason: format!("no element of order {n} in F_{p}"),
        })?;
    let zeta_inv = inv_mod(zeta, p);
    let rotation = MatrixFp::from_rows(
        vec![vec![zeta as i64, 0], vec![0, zeta_inv as i64]],
        p,
    );
    let swap = MatrixFp::from_rows(vec![vec![0, 1], vec![1, 0]], p);
    ReflectionGroup::from_generators(GroupLabel::I2(n), p, vec![rotation, swap], 2 * n as usize)
}

/// The rank-3 (order 120) or rank-4 (order 14400) Coxeter group with a
/// pentagonal edge, in the reflection representation. Requires a square
/// root of 5 in `F_p`.
pub fn build_coxeter_h(rank: usize, p: u64) -> Result<ReflectionGroup, ReflectionError> {
    if rank != 3 && rank != 4 {
        return Err(ReflectionError::Unsupported(format!(
            "rank {rank}: only 3 and 4 are built here"
        )));
    }
    if !is_prime(p) || p == 2 || p == 5 {
        return Err(ReflectionError::UnsupportedPrime {
            p,
            reason: "need an odd prime not equal to 5".into(),
        });
    }
    let sqrt5 = (0..p).find(|&s| mul_mod(s, s, p) == 5 % p).ok_or(
        ReflectionError::UnsupportedPrime {
            p,
            reason: format!("5 is not a square mod {p}"),
        },
    )?;
    // Coxeter matrix entries m_ij along the chain: 5, 3, 3 (rank 4).
    let edge = |i: usize, j: usize| -> u64 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        if b != a + 1 {
            2
        } else if a == 0 {
            5
        } else {
            3
        }
    };
    // C_ii = 2, C_ij = -2 cos(pi/m): 0 for m=2, -1 for m=3, -(1+sqrt5)/2 for m=5.
    let inv2 = inv_mod(2, p);
    let c_entry = |i: usize, j: usize| -> u64 {
        if i == j {
            return 2;
        }
        match edge(i, j) {
            2 => 0,
            3 => p - 1,
            5 => mul_mod(p - ((1 + sqrt5) % p), inv2, p),
            _ => unreachable!(),
        }
    };
    let mut gens = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut rows = vec![vec![0i64; rank]; rank];
        for k in 0..rank {
            for j in 0..rank {
                let mut v = u64::from(k == j);
                if k == i {
                    v = crate::fp::sub_mod(v, c_entry(i, j), p);
                }
                rows[k][j] = v as i64;
            }
        }
        gens.push(MatrixFp::from_rows(rows, p));
    }
    let (label, expected) = if rank == 3 {
        (GroupLabel::H3, 120)
    } else {
        (GroupLabel::H4, 14400)
    };
    ReflectionGroup::from_generators(label, p, gens, expected)
}

/// Canonical fundamental invariants of a reflection group together with the
/// `P^1` action expressed in them.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    label: GroupLabel,
    p: u64,
    dim: usize,
    order: usize,
    half_degrees: Vec<u32>,
    generators: Vec<GradedPoly>,
    gen_context: Arc<VarContext>,
    p1_expansions: Vec<GradedPoly>,
}

fn generator_names(label: &GroupLabel, degrees: &[u32]) -> Vec<String> {
    let prefix = match label {
        GroupLabel::I2(_) => "x",
        GroupLabel::H3 => "y",
        GroupLabel::H4 => "z",
        GroupLabel::Custom(_) => "x",
    };
    degrees.iter().map(|d| format!("{prefix}{d}")).collect()
}

impl GeneratorSet {
    pub fn label(&self) -> &GroupLabel {
        &self.label
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn half_degrees(&self) -> &[u32] {
        &self.half_degrees
    }

    pub fn generators(&self) -> &[GradedPoly] {
        &self.generators
    }

    pub fn gen_context(&self) -> &Arc<VarContext> {
        &self.gen_context
    }

    pub fn p1_expansions(&self) -> &[GradedPoly] {
        &self.p1_expansions
    }

    /// Coefficient of the generator monomial with exponents `exps` in
    /// `P^1(generator gen)`.
    pub fn p1_coefficient(&self, gen: usize, exps: &[u32]) -> u64 {
        self.p1_expansions[gen].coefficient(&Monomial::new(exps.to_vec()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.label.to_string(),
            "p": self.p,
            "order": self.order,
            "degrees": self.half_degrees,
            "generators": self.generators.iter().map(|g| serde_json::to_value(g).unwrap()).collect::<Vec<_>>(),
            "p1": self.gen_context.names().iter().zip(&self.p1_expansions).map(|(n, e)| {
                serde_json::json!({"generator": n, "expansion": serde_json::to_value(e).unwrap()})
            }).collect::<Vec<_>>(),
        })
    }
}

/// Enumerates exponent vectors over the generator degrees with the given
/// weighted total, in lexicographic descending order.
fn gen_monomials(degrees: &[u32], total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; degrees.len()];
    fn rec(degrees: &[u32], pos: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == degrees.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = rem / degrees[pos];
        for e in (0..=max).rev() {
            cur[pos] = e;
            rec(degrees, pos + 1, rem - e * degrees[pos], cur, out);
        }
        cur[pos] = 0;
    }
    rec(degrees, 0, total, &mut cur, &mut out);
    out
}

/// Lazily-built dense powers of the generator expansions.
struct GenPowers {
    powers: Vec<Vec<DensePoly>>,
}

impl GenPowers {
    fn new(generators: &[GradedPoly], cache: &mut SpaceCache) -> Self {
        GenPowers {
            powers: generators
                .iter()
                .map(|g| vec![DensePoly::from_graded(g, cache)])
                .collect(),
        }
    }

    fn get(&mut self, i: usize, k: u32, cache: &mut SpaceCache) -> &DensePoly {
        debug_assert!(k >= 1);
        while self.powers[i].len() < k as usize {
            let next = {
                let last = self.powers[i].last().unwrap();
                last.mul(&self.powers[i][0], cache)
            };
            self.powers[i].push(next);
        }
        &self.powers[i][k as usize - 1]
    }

    fn monomial(&mut self, exps: &[u32], p: u64, dim: usize, cache: &mut SpaceCache) -> DensePoly {
        let mut acc: Option<DensePoly> = None;
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let factor = self.get(i, e, cache).clone();
            acc = Some(match acc {
                None => factor,
                Some(a) => a.mul(&factor, cache),
            });
        }
        acc.unwrap_or_else(|| {
            let mut one = DensePoly::zero(p, cache.get(dim, 0));
            one.coeffs[0] = 1;
            one
        })
    }
}

/// Extracts canonical fundamental invariants in the prescribed polynomial
/// degrees and computes the `P^1` expansions.
pub fn fundamental_invariants(
    group: &ReflectionGroup,
    degrees: &[u32],
) -> Result<GeneratorSet, ReflectionError> {
    if degrees.windows(2).any(|w| w[0] > w[1]) {
        return Err(ReflectionError::DegreesMismatch(
            "degrees must be ascending".into(),
        ));
    }
    let product: u64 = degrees.iter().map(|&d| d as u64).product();
    if product != group.order() as u64 {
        return Err(ReflectionError::DegreesMismatch(format!(
            "degree product {} differs from group order {}",
            product,
            group.order()
        )));
    }
    if degrees.len() != group.dimension() {
        return Err(ReflectionError::DegreesMismatch(format!(
            "{} degrees for a rank-{} group",
            degrees.len(),
            group.dimension()
        )));
    }
    let p = group.p();
    let dim = group.dimension();
    let mut cache = SpaceCache::default();
    let max_degree = *degrees.last().unwrap();
    let binom = binomials_mod(max_degree as usize + 1, p);
    let mut found: Vec<GradedPoly> = Vec::new();
    let mut found_degrees: Vec<u32> = Vec::new();
    let t_ctx = group.t_context();
    let verbose = group.order() >= 1000;
    for &d in degrees {
        if verbose {
            eprintln!("[invariants {}] degree {d}: extracting", group.label());
        }
        let space = cache.get(dim, d);
        let mut decomposables = Echelon::new(p, space.dim());
        if !found.is_empty() {
            let mut powers = GenPowers::new(&found, &mut cache);
            for alpha in gen_monomials(&found_degrees, d) {
                let expansion = powers.monomial(&alpha, p, dim, &mut cache);
                decomposables.insert(expansion.coeffs);
            }
        }
        let exponent_list = space.exponents.clone();
        let mut new_gen: Option<DensePoly> = None;
        for exps in &exponent_list {
            let mut r = group.reynolds_monomial(exps, &binom, &mut cache);
            decomposables.reduce(&mut r.coeffs);
            if !r.is_zero() {
                // leading coefficient (first nonzero in lex-descending order) to 1
                let lead = r.coeffs.iter().position(|&c| c != 0).unwrap();
                r.scale(inv_mod(r.coeffs[lead], p));
                new_gen = Some(r);
                break;
            }
        }
        let Some(g) = new_gen else {
            return Err(ReflectionError::DegreesMismatch(format!(
                "no indecomposable invariant in degree {d}"
            )));
        };
        found.push(g.to_graded(t_ctx.clone()));
        found_degrees.push(d);
    }
    // Safety net: invariance under the group generators, checked densely.
    for (gen_poly, &d) in found.iter().zip(degrees) {
        let dense = DensePoly::from_graded(gen_poly, &mut cache);
        for m in group.generators() {
            let ops = elementary_factors(&m.rows_vec(), p);
            let sub = dense_substitute(&dense, &ops, &binom);
            if sub.coeffs != dense.coeffs {
                return Err(ReflectionError::RepresentationError {
                    expected: d as usize,
                    got: 0,
                });
            }
        }
    }
    GeneratorSet::with_p1(group, found, degrees.to_vec(), cache)
}

impl GeneratorSet {
    /// Builds a generator set from explicitly given invariants (validated),
    /// computing the `P^1` expansions.
    pub fn from_generators(
        group: &ReflectionGroup,
        generators: Vec<GradedPoly>,
        degrees: Vec<u32>,
    ) -> Result<Self, ReflectionError> {
        let p = group.p();
        let product: u64 = degrees.iter().map(|&d| d as u64).product();
        if product != group.order() as u64 {
            return Err(ReflectionError::DegreesMismatch(
                "degree product must equal the group order".into(),
            ));
        }
        let mut cache = SpaceCache::default();
        let binom = binomials_mod(*degrees.iter().max().unwrap() as usize + 1, p);
        for (g, &d) in generators.iter().zip(&degrees) {
            if g.homogeneous_degree() != Some(2 * d) {
                return Err(ReflectionError::DegreesMismatch(format!(
                    "generator is not homogeneous of polynomial degree {d}"
                )));
            }
            let dense = DensePoly::from_graded(g, &mut cache);
            for m in group.generators() {
                let ops = elementary_factors(&m.rows_vec(), p);
                if dense_substitute(&dense, &ops, &binom).coeffs != dense.coeffs {
                    return Err(ReflectionError::Unsupported(
                        "generator is not group-invariant".into(),
                    ));
                }
            }
        }
        Self::with_p1(group, generators, degrees, cache)
    }

    fn with_p1(
        group: &ReflectionGroup,
        generators: Vec<GradedPoly>,
        degrees: Vec<u32>,
        mut cache: SpaceCache,
    ) -> Result<Self, ReflectionError> {
        let p = group.p();
        let names = generator_names(group.label(), &degrees);
        let gen_degrees: Vec<u32> = degrees.iter().map(|&d| 2 * d).collect();
        let gen_context = VarContext::new(names, gen_degrees).map_err(ReflectionError::Poly)?;
        let mut gs = GeneratorSet {
            label: group.label().clone(),
            p,
            dim: group.dimension(),
            order: group.order(),
            half_degrees: degrees,
            generators,
            gen_context,
            p1_expansions: Vec::new(),
        };
        let mut powers = GenPowers::new(&gs.generators, &mut cache);
        let verbose = gs.order >= 1000;
        for i in 0..gs.generators.len() {
            if verbose {
                eprintln!("[invariants {}] P^1 of generator {i}", gs.label);
            }
            let p1 = gs.generators[i].steenrod_p1().map_err(ReflectionError::Poly)?;
            let expansion = gs.express_dense(&p1, &mut powers, &mut cache)?;
            gs.p1_expansions.push(expansion);
        }
        Ok(gs)
    }

    fn express_dense(
        &self,
        f: &GradedPoly,
        powers: &mut GenPowers,
        cache: &mut SpaceCache,
    ) -> Result<GradedPoly, ReflectionError> {
        let p = self.p;
        let Some(coh) = f.homogeneous_degree() else {
            return Err(ReflectionError::Unsupported(
                "expression requires a homogeneous input".into(),
            ));
        };
        if f.is_zero() {
            return Ok(GradedPoly::zero(p, self.gen_context.clone()));
        }
        let d = coh / 2;
        let alphas = gen_monomials(&self.half_degrees, d);
        if alphas.is_empty() {
            return Err(ReflectionError::NotInSpan);
        }
        let target = DensePoly::from_graded(f, cache);
        let columns: Vec<DensePoly> = alphas
            .iter()
            .map(|a| powers.monomial(a, p, self.dim, cache))
            .collect();
        let ncols = alphas.len();
        let nrows = target.space.dim();
        let mut ech = Echelon::new(p, ncols + 1);
        let mut row = vec![0u64; ncols + 1];
        for r in 0..nrows {
            for (j, col) in columns.iter().enumerate() {
                row[j] = col.coeffs[r];
            }
            row[ncols] = target.coeffs[r];
            if row.iter().any(|&c| c != 0) {
                ech.insert(row.clone());
            }
            if ech.rank() == ncols {
                break;
            }
        }
        if ech.rows().iter().any(|(pv, _)| *pv == ncols) {
            return Err(ReflectionError::NotInSpan);
        }
        if ech.rank() < ncols {
            return Err(ReflectionError::DependentGenerators);
        }
        let mut pivots: Vec<(usize, Vec<u64>)> = ech.rows().to_vec();
        pivots.sort_by_key(|(pv, _)| *pv);
        let mut x = vec![0u64; ncols];
        for (pv, rowv) in pivots.iter().rev() {
            let mut rhs = rowv[ncols];
            for j in (pv + 1)..ncols {
                rhs = crate::fp::sub_mod(rhs, mul_mod(rowv[j], x[j], p), p);
            }
            x[*pv] = rhs;
        }
        // Verify the claimed combination globally.
        let mut residual = target.coeffs.clone();
        for (j, col) in columns.iter().enumerate() {
            if x[j] == 0 {
                continue;
            }
            for (res, &c) in residual.iter_mut().zip(&col.coeffs) {
                *res = crate::fp::sub_mod(*res, mul_mod(x[j], c, p), p);
            }
        }
        if residual.iter().any(|&c| c != 0) {
            return Err(ReflectionError::NotInSpan);
        }
        let mut out = GradedPoly::zero(p, self.gen_context.clone());
        for (alpha, &c) in alphas.iter().zip(&x) {
            if c != 0 {
                out.add_term(Monomial::new(alpha.clone()), c);
            }
        }
        Ok(out)
    }

    /// Writes a homogeneous invariant as a polynomial in the generators.
    pub fn express_in_generators(&self, f: &GradedPoly) -> Result<GradedPoly, ReflectionError> {
        let mut cache = SpaceCache::default();
        let mut powers = GenPowers::new(&self.generators, &mut cache);
        self.express_dense(f, &mut powers, &mut cache)
    }

    /// All coefficients of every `P^1(generator)` in the generator basis.
    pub fn p1_report(&self) -> BTreeMap<(usize, Vec<u32>), u64> {
        let mut out = BTreeMap::new();
        for (i, exp) in self.p1_expansions.iter().enumerate() {
            for (m, c) in exp.terms() {
                out.insert((i, m.exponents().to_vec()), c);
            }
        }
        out
    }
}

/// A nonzero coefficient witnessing a term of some `P^1(generator)`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CoefficientWitness {
    pub generator: String,
    pub monomial: String,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ConditionVerdict {
    pub satisfied: bool,
    pub witnesses: Vec<CoefficientWitness>,
}

impl GeneratorSet {
    fn quadratic_terms(&self, gen: usize) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (m, c) in self.p1_expansions[gen].terms() {
            if m.total_exponent() != 2 {
                continue;
            }
            let nz: Vec<(usize, u32)> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e))
                .collect();
            match nz.as_slice() {
                [(i, 2)] => out.push((*i, *i, c)),
                [(i, 1), (j, 1)] => out.push((*i, *j, c)),
                _ => {}
            }
        }
        out
    }

    fn witness(&self, gen: usize, i: usize, j: usize, c: u64) -> CoefficientWitness {
        let names = self.gen_context.names();
        CoefficientWitness {
            generator: names[gen].clone(),
            monomial: if i == j {
                format!("{}^2", names[i])
            } else {
                format!("{}*{}", names[i], names[j])
            },
            value: c,
        }
    }

    /// Decides the degree-2 criterion: `P^1` of the degree-2 generator must
    /// contain a product of two generators `x_a x_b`, and `P^1` of `x_a` or
    /// `x_b` must again contain a product of two generators. By homogeneity
    /// the degree conditions `n_a + n_b = p + 1` and
    /// `n_j + n_k = n_t + p - 1` hold automatically for such terms.
    pub fn check_condition(&self) -> Result<ConditionVerdict, ReflectionError> {
        if self.half_degrees.first() != Some(&2) {
            return Err(ReflectionError::Unsupported(
                "criterion requires a degree-2 generator first".into(),
            ));
        }
        if self.half_degrees.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ReflectionError::Unsupported(
                "criterion requires strictly increasing degrees".into(),
            ));
        }
        let first_terms = self.quadratic_terms(0);
        // Prefer pairs involving the top generator, then larger t.
        let mut ordered = first_terms.clone();
        ordered.sort_by_key(|&(i, j, _)| std::cmp::Reverse(i.max(j)));
        for &(a, b, c0) in &ordered {
            for t in [a.max(b), a.min(b)] {
                let second = self.quadratic_terms(t);
                if let Some(&(j, k, c1)) = second.first() {
                    return Ok(ConditionVerdict {
                        satisfied: true,
                        witnesses: vec![self.witness(0, a, b, c0), self.witness(t, j, k, c1)],
                    });
                }
            }
        }
        Ok(ConditionVerdict {
            satisfied: false,
            witnesses: Vec::new(),
        })
    }
}
