//! The symmetric classes `c_k`, `p_k`, `s_k` and conversions between them.
//!
//! Conventions, in variables `t_1, ..., t_n` of cohomological degree 2:
//!
//! * `c_k` is the k-th elementary symmetric polynomial in the `t_i`
//!   (`1 + c_1 + ... + c_n = prod (1 + t_i)`), so `|c_k| = 2k`;
//! * `p_k` is the k-th elementary symmetric polynomial in the squares
//!   `t_i^2` (`1 - p_1 + ... + (-1)^n p_n = prod (1 - t_i^2)`), so
//!   `|p_k| = 4k`;
//! * `s_k = t_1^{2k} + ... + t_n^{2k}`, the power sum in the squares.
//!
//! Girard's formula writes `s_k` as an explicit polynomial in the `p_i`, and
//! [`to_pc_basis`] rewrites any polynomial invariant under permutations and
//! even sign changes of the `t_i` in the basis `p_1, ..., p_{n-1}, c_n`
//! (with `p_n = c_n^2`).

use crate::fp::{add_mod, inv_mod, mul_mod};
use crate::mbasis::{orbit_size, sorted_desc, to_elementary, ElemCache, Partition, SymPoly};
use crate::poly::{GradedPoly, Monomial, PolyError, VarContext};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetricError {
    #[error("index {k} out of range for arity {n}")]
    IndexError { k: u32, n: usize },
    #[error("input is not invariant under permutations and even sign changes: {0}")]
    NotInvariant(String),
    #[error("Girard expansion requires k < p (got k = {k}, p = {p})")]
    IndexTooLarge { k: u32, p: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Which symmetric class to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricKind {
    /// `c_k`, elementary in the `t_i`
    Elementary,
    /// `p_k`, elementary in the `t_i^2`
    Pontryagin,
    /// `s_k`, power sum of the `t_i^2`
    PowerSum,
}

/// A symmetric basis element `c_k`, `p_k` or `s_k` in `n` variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetricBasisElement {
    pub kind: SymmetricKind,
    pub index: u32,
    pub arity: usize,
}

impl SymmetricBasisElement {
    pub fn new(kind: SymmetricKind, index: u32, arity: usize) -> Result<Self, SymmetricError> {
        let ok = match kind {
            SymmetricKind::Elementary | SymmetricKind::Pontryagin => {
                index >= 1 && index as usize <= arity
            }
            SymmetricKind::PowerSum => index >= 1,
        };
        if !ok {
            return Err(SymmetricError::IndexError {
                k: index,
                n: arity,
            });
        }
        Ok(SymmetricBasisElement { kind, index, arity })
    }

    /// The explicit polynomial in `t_1, ..., t_n`.
    pub fn expand(&self, p: u64) -> GradedPoly {
        let n = self.arity;
        let ctx = VarContext::t_vars(n);
        let k = self.index as usize;
        match self.kind {
            SymmetricKind::Elementary => elementary_subsets(p, ctx, n, k, 1),
            SymmetricKind::Pontryagin => elementary_subsets(p, ctx, n, k, 2),
            SymmetricKind::PowerSum => GradedPoly::from_terms(
                p,
                ctx,
                (0..n).map(|i| {
                    let mut e = vec![0u32; n];
                    e[i] = 2 * self.index;
                    (e, 1)
                }),
            ),
        }
    }
}

fn elementary_subsets(
    p: u64,
    ctx: Arc<VarContext>,
    n: usize,
    k: usize,
    exponent: u32,
) -> GradedPoly {
    let mut terms = Vec::new();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let mut e = vec![0u32; n];
        for &i in &subset {
            e[i] = exponent;
        }
        terms.push((e, 1));
        // next k-subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return GradedPoly::from_terms(p, ctx, terms);
            }
            i -= 1;
            if subset[i] != i + n - k {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Convenience expansion of `c_k` in `n` variables.
pub fn chern(k: u32, n: usize, p: u64) -> GradedPoly {
    SymmetricBasisElement::new(SymmetricKind::Elementary, k, n)
        .unwrap()
        .expand(p)
}

/// Convenience expansion of `p_k` in `n` variables.
pub fn pontryagin(k: u32, n: usize, p: u64) -> GradedPoly {
    SymmetricBasisElement::new(SymmetricKind::Pontryagin, k, n)
        .unwrap()
        .expand(p)
}

/// Convenience expansion of `s_k` in `n` variables.
pub fn power_sum(k: u32, n: usize, p: u64) -> GradedPoly {
    SymmetricBasisElement::new(SymmetricKind::PowerSum, k, n)
        .unwrap()
        .expand(p)
}

/// The context `p1, ..., pn` with `|p_i| = 4i`.
pub fn p_context(n: usize) -> Arc<VarContext> {
    let names: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
    let degrees: Vec<u32> = (1..=n).map(|i| 4 * i as u32).collect();
    VarContext::new(names, degrees).expect("valid context")
}

/// The context `p1, ..., p(n-1), cn` with `|p_i| = 4i`, `|c_n| = 2n`.
pub fn pc_context(n: usize) -> Arc<VarContext> {
    let mut names: Vec<String> = (1..n).map(|i| format!("p{i}")).collect();
    names.push(format!("c{n}"));
    let mut degrees: Vec<u32> = (1..n).map(|i| 4 * i as u32).collect();
    degrees.push(2 * n as u32);
    VarContext::new(names, degrees).expect("valid context")
}

/// Girard's formula: `s_k` as a polynomial in `p_1, ..., p_n`,
///
/// `s_k = (-1)^k k sum (-1)^{i_1+...+i_n} (i_1+...+i_n-1)!/(i_1!...i_n!)
///        p_1^{i_1} ... p_n^{i_n}`
///
/// summed over `i_1 + 2 i_2 + ... + n i_n = k`. Requires `k < p` so the
/// factorial denominators are invertible.
pub fn girard_expand(k: u32, n: usize, p: u64) -> Result<GradedPoly, SymmetricError> {
    if k == 0 {
        return Err(SymmetricError::IndexError { k: 0, n });
    }
    if u64::from(k) >= p {
        return Err(SymmetricError::IndexTooLarge { k, p });
    }
    let ctx = p_context(n);
    // factorials up to k are invertible mod p
    let mut fact = vec![1u64; k as usize + 1];
    for i in 1..=k as usize {
        fact[i] = mul_mod(fact[i - 1], i as u64 % p, p);
    }
    let mut out = GradedPoly::zero(p, ctx.clone());
    let mut exps = vec![0u32; n];
    girard_rec(k, 1, n, p, &fact, &mut exps, &mut out);
    let sign_k = if k % 2 == 0 { 1 } else { p - 1 };
    Ok(out.scale(mul_mod(sign_k, k as u64 % p, p) as i64))
}

fn girard_rec(
    remaining: u32,
    part: usize,
    n: usize,
    p: u64,
    fact: &[u64],
    exps: &mut Vec<u32>,
    out: &mut GradedPoly,
) {
    if remaining == 0 {
        let m: u32 = exps.iter().sum();
        debug_assert!(m >= 1);
        let mut coeff = fact[m as usize - 1];
        for &i in exps.iter() {
            coeff = mul_mod(coeff, inv_mod(fact[i as usize], p), p);
        }
        if m % 2 == 1 {
            coeff = (p - coeff) % p;
        }
        out.add_term(Monomial::new(exps.clone()), coeff);
        return;
    }
    if part > n {
        return;
    }
    let max = remaining / part as u32;
    for i in 0..=max {
        exps[part - 1] = i;
        girard_rec(remaining - i * part as u32, part + 1, n, p, fact, exps, out);
    }
    exps[part - 1] = 0;
}

/// `P^1 s_k = 2k s_{k + (p-1)/2}`, expanded in the `t_i`.
pub fn p1_power_sum(k: u32, n: usize, p: u64) -> Result<GradedPoly, SymmetricError> {
    if p == 2 {
        return Err(SymmetricError::Poly(PolyError::UnsupportedPrime(2)));
    }
    let shifted = power_sum(k + (p as u32 - 1) / 2, n, p);
    Ok(shifted.scale(2 * k as i64))
}

/// Splits a polynomial invariant under permutations and even sign changes of
/// the `t_i` into symmetric polynomials in `u_i = t_i^2`: the all-even part
/// and the quotient of the all-odd part by `c_n = t_1 ... t_n`.
pub(crate) fn split_invariant(f: &GradedPoly) -> Result<(SymPoly, SymPoly), SymmetricError> {
    let n = f.context().arity();
    let p = f.p();
    if !f.context().all_degree_two() {
        return Err(SymmetricError::Poly(PolyError::UnsupportedContext(
            "expected a context of degree-2 variables".into(),
        )));
    }
    let mut even: BTreeMap<Partition, (u64, u128)> = BTreeMap::new();
    let mut odd: BTreeMap<Partition, (u64, u128)> = BTreeMap::new();
    for (m, c) in f.terms() {
        let exps = m.exponents();
        let all_even = exps.iter().all(|e| e % 2 == 0);
        let all_odd = exps.iter().all(|e| e % 2 == 1);
        let (bucket, u_exps) = if all_even {
            (&mut even, exps.iter().map(|e| e / 2).collect::<Vec<u32>>())
        } else if all_odd {
            (&mut odd, exps.iter().map(|e| (e - 1) / 2).collect::<Vec<u32>>())
        } else {
            return Err(SymmetricError::NotInvariant(format!(
                "monomial {:?} mixes exponent parities",
                exps
            )));
        };
        let lambda = sorted_desc(u_exps);
        let entry = bucket.entry(lambda).or_insert((c, 0));
        if entry.0 != c {
            return Err(SymmetricError::NotInvariant(
                "coefficients differ within a permutation orbit".into(),
            ));
        }
        entry.1 += 1;
    }
    let build = |bucket: BTreeMap<Partition, (u64, u128)>| -> Result<SymPoly, SymmetricError> {
        let mut s = SymPoly::zero(p, n);
        for (lambda, (c, seen)) in bucket {
            if seen != orbit_size(&lambda, n) {
                return Err(SymmetricError::NotInvariant(format!(
                    "incomplete orbit for partition {:?}",
                    lambda
                )));
            }
            s.add_term(lambda, c);
        }
        Ok(s)
    };
    Ok((build(even)?, build(odd)?))
}

/// The Steenrod operation `P^1` on the split form of an invariant:
/// on the even part it shifts one `u`-exponent by `(p-1)/2` weighted by
/// twice the old exponent, and on `c_n * g` it additionally multiplies by
/// the `u`-power sum of degree `(p-1)/2`.
pub(crate) fn p1_split(even: &SymPoly, odd: &SymPoly, p: u64) -> (SymPoly, SymPoly) {
    let q = (p as u32 - 1) / 2;
    // On an orbit sum: each candidate successor mu replaces one part a of
    // lambda by a + q. The coefficient of m_mu is the target-side sum
    // sum over positions i of mu with sorted(mu - q e_i) = lambda of
    // 2 (mu_i - q), grouping positions by value.
    let p1_even_part = |s: &SymPoly| -> SymPoly {
        let mut out = SymPoly::zero(p, s.nvars);
        for (lambda, &c) in &s.terms {
            let mut seen: Vec<u32> = Vec::new();
            for (i, &a) in lambda.iter().enumerate() {
                if seen.contains(&a) {
                    continue;
                }
                seen.push(a);
                let mut mu = lambda.clone();
                mu[i] = a + q;
                let mu = sorted_desc(mu);
                let mut coeff = 0u64;
                let mut seen_w: Vec<u32> = Vec::new();
                for (j, &w) in mu.iter().enumerate() {
                    if w <= q || seen_w.contains(&w) {
                        continue;
                    }
                    seen_w.push(w);
                    let mut back = mu.clone();
                    back[j] = w - q;
                    if sorted_desc(back) == *lambda {
                        let mult = mu.iter().filter(|&&x| x == w).count() as u64;
                        let contrib = mul_mod(2 * ((w - q) as u64 % p) % p, mult % p, p);
                        coeff = add_mod(coeff, contrib, p);
                    }
                }
                out.add_term(mu, mul_mod(c, coeff, p));
            }
        }
        out
    };
    let even_out = p1_even_part(even);
    // P^1(c_n g) = c_n * (powersum_q * g + P^1 g)
    let mut odd_out = p1_even_part(odd);
    if !odd.is_zero() {
        let ps = SymPoly::power_sum(q, p, odd.nvars);
        odd_out = odd_out.add(&mul_sym(&ps, odd));
    }
    (even_out, odd_out)
}

/// Product of two orbit-basis polynomials, via rewriting one factor in
/// elementary products. Only used for small inputs.
fn mul_sym(a: &SymPoly, b: &SymPoly) -> SymPoly {
    let mut cache = ElemCache::default();
    let a_elem = to_elementary(a, &mut cache);
    let mut out = SymPoly::zero(a.p, a.nvars);
    for (exps, c) in a_elem {
        let mut term = b.clone();
        for (j, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                term = term.mul_elementary(j + 1);
            }
        }
        out.add_scaled_assign(&term, c);
    }
    out
}

fn assemble_pc(
    even: &SymPoly,
    odd: &SymPoly,
    n: usize,
    p: u64,
    cache: &mut ElemCache,
) -> GradedPoly {
    let ctx = pc_context(n);
    let mut out = GradedPoly::zero(p, ctx.clone());
    for (part, extra_cn) in [(even, 0u32), (odd, 1u32)] {
        for (e_exps, c) in to_elementary(part, cache) {
            // p_i for i < n stays a variable; p_n becomes c_n^2
            let mut exps = vec![0u32; n];
            exps[..n - 1].copy_from_slice(&e_exps[..n - 1]);
            exps[n - 1] = 2 * e_exps[n - 1] + extra_cn;
            out.add_term(Monomial::new(exps), c);
        }
    }
    out
}

/// Rewrites an invariant of the group of permutations and even sign changes
/// in the basis `p_1, ..., p_{n-1}, c_n`.
///
/// The all-even part is a symmetric polynomial in the `u_i = t_i^2` and is
/// rewritten in the elementary symmetric polynomials of the `u_i` (which are
/// the `p_k`); the all-odd part is divided by `c_n` first. `p_n` is replaced
/// by `c_n^2` in the result.
pub fn to_pc_basis(f: &GradedPoly) -> Result<GradedPoly, SymmetricError> {
    let n = f.context().arity();
    let (even, odd) = split_invariant(f)?;
    let mut cache = ElemCache::default();
    Ok(assemble_pc(&even, &odd, n, f.p(), &mut cache))
}

/// Expands a polynomial over `pc_context(n)` back into the `t_i`.
pub fn expand_pc(f: &GradedPoly, n: usize) -> Result<GradedPoly, SymmetricError> {
    let p = f.p();
    let mut images = Vec::with_capacity(n);
    for i in 1..n {
        images.push(pontryagin(i as u32, n, p));
    }
    images.push(chern(n as u32, n, p));
    Ok(f.substitute(&images)?)
}

/// `P^1` of an invariant, computed entirely in the orbit basis and returned
/// over `pc_context(n)`. Equals `to_pc_basis(steenrod_p1(f))` but does not
/// expand large intermediate polynomials.
pub fn steenrod_p1_to_pc(f: &GradedPoly) -> Result<GradedPoly, SymmetricError> {
    if f.p() == 2 {
        return Err(SymmetricError::Poly(PolyError::UnsupportedPrime(2)));
    }
    let n = f.context().arity();
    let (even, odd) = split_invariant(f)?;
    let (p1_even, p1_odd) = p1_split(&even, &odd, f.p());
    let mut cache = ElemCache::default();
    Ok(assemble_pc(&p1_even, &p1_odd, n, f.p(), &mut cache))
}

/// Girard identity check in the orbit basis: the expansion of
/// `girard_expand(k, n, p)` at `p_i = e_i(u)` equals the power sum of the
/// `u_i`, exactly.
pub fn girard_identity_holds(k: u32, n: usize, p: u64) -> Result<bool, SymmetricError> {
    let mut cache = ElemCache::default();
    girard_identity_with_cache(k, n, p, &mut cache)
}

fn girard_identity_with_cache(
    k: u32,
    n: usize,
    p: u64,
    cache: &mut ElemCache,
) -> Result<bool, SymmetricError> {
    let g = girard_expand(k, n, p)?;
    let mut rhs = SymPoly::zero(p, n);
    for (m, c) in g.terms() {
        rhs.add_scaled_assign(&cache.product(m.exponents(), p, n), c);
    }
    Ok(rhs == SymPoly::power_sum(k, p, n))
}

/// Checks the Girard identity for every `k <= k_max` with one shared
/// expansion cache per arity.
pub fn girard_identity_sweep(n: usize, k_max: u32, p: u64) -> Result<bool, SymmetricError> {
    let mut cache = ElemCache::default();
    for k in 1..=k_max {
        if !girard_identity_with_cache(k, n, p, &mut cache)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_examples() {
        let c1 = chern(1, 3, 23);
        let expected = GradedPoly::from_terms(
            23,
            VarContext::t_vars(3),
            vec![(vec![1, 0, 0], 1), (vec![0, 1, 0], 1), (vec![0, 0, 1], 1)],
        );
        assert_eq!(c1, expected);
        assert_eq!(c1.homogeneous_degree(), Some(2));
    }

    #[test]
    fn pontryagin_one_is_first_power_sum() {
        let p1 = pontryagin(1, 5, 23);
        let s1 = power_sum(1, 5, 23);
        assert_eq!(p1, s1);
    }

    #[test]
    fn top_pontryagin_is_chern_squared() {
        for n in 2..=5 {
            let pn = pontryagin(n as u32, n, 11);
            let cn = chern(n as u32, n, 11);
            assert_eq!(pn, cn.pow(2));
        }
    }

    #[test]
    fn girard_small_cases() {
        let p = 23;
        let n = 5;
        let ctx = p_context(n);
        let pv = |i: usize| GradedPoly::var(i, p, ctx.clone());
        assert_eq!(girard_expand(1, n, p).unwrap(), pv(0));
        // s2 = p1^2 - 2 p2
        let s2 = pv(0).pow(2).sub(&pv(1).scale(2)).unwrap();
        assert_eq!(girard_expand(2, n, p).unwrap(), s2);
        // s3 = p1^3 - 3 p1 p2 + 3 p3
        let s3 = pv(0)
            .pow(3)
            .sub(&pv(0).mul(&pv(1)).unwrap().scale(3))
            .unwrap()
            .add(&pv(2).scale(3))
            .unwrap();
        assert_eq!(girard_expand(3, n, p).unwrap(), s3);
        // s4 = p1^4 - 4 p1^2 p2 + 4 p1 p3 + 2 p2^2 - 4 p4
        let s4 = pv(0)
            .pow(4)
            .sub(&pv(0).pow(2).mul(&pv(1)).unwrap().scale(4))
            .unwrap()
            .add(&pv(0).mul(&pv(2)).unwrap().scale(4))
            .unwrap()
            .add(&pv(1).pow(2).scale(2))
            .unwrap()
            .sub(&pv(3).scale(4))
            .unwrap();
        assert_eq!(girard_expand(4, n, p).unwrap(), s4);
    }

    #[test]
    fn girard_matches_direct_expansion_small() {
        for p in [23u64, 37] {
            for n in 1..=4 {
                for k in 1..=8 {
                    let g = girard_expand(k, n, p).unwrap();
                    let mut images = Vec::new();
                    for i in 1..=n {
                        images.push(pontryagin(i as u32, n, p));
                    }
                    let lhs = g.substitute(&images).unwrap();
                    assert_eq!(lhs, power_sum(k, n, p), "n={n} k={k} p={p}");
                }
            }
        }
    }

    #[test]
    fn girard_identity_orbit_basis() {
        for n in [3usize, 8] {
            for k in [5u32, 12, 22] {
                assert!(girard_identity_holds(k, n, 23).unwrap());
            }
        }
    }

    #[test]
    fn p1_power_sum_examples() {
        // P^1 s1 = 2 s12 at p = 23
        assert_eq!(p1_power_sum(1, 5, 23).unwrap(), power_sum(12, 5, 23).scale(2));
        // P^1 s3 = 6 s14 at p = 23
        assert_eq!(p1_power_sum(3, 5, 23).unwrap(), power_sum(14, 5, 23).scale(6));
        // P^1 s1 = 2 s19 at p = 37
        assert_eq!(p1_power_sum(1, 8, 37).unwrap(), power_sum(19, 8, 37).scale(2));
    }

    #[test]
    fn p1_power_sum_agrees_with_derivation() {
        for p in [11u64, 23] {
            for n in 1..=4 {
                for k in 1..=6 {
                    let direct = power_sum(k, n, p).steenrod_p1().unwrap();
                    assert_eq!(p1_power_sum(k, n, p).unwrap(), direct);
                }
            }
        }
    }

    #[test]
    fn to_pc_basis_round_trip() {
        let p = 23;
        let n = 4;
        // f = p2 * p1 + c4 * p3 + p4 (mixed even and odd parts)
        let f_t = pontryagin(2, n, p)
            .mul(&pontryagin(1, n, p))
            .unwrap()
            .add(&chern(4, n, p).mul(&pontryagin(3, n, p)).unwrap())
            .unwrap()
            .add(&pontryagin(4, n, p))
            .unwrap();
        let pc = to_pc_basis(&f_t).unwrap();
        assert_eq!(expand_pc(&pc, n).unwrap(), f_t);
        // p4 must have been rewritten via c4^2
        let ctx = pc_context(n);
        let c4sq = GradedPoly::from_terms(p, ctx, vec![(vec![0, 0, 0, 2], 1)]);
        assert_eq!(
            to_pc_basis(&pontryagin(4, n, p)).unwrap(),
            c4sq
        );
    }

    #[test]
    fn to_pc_basis_rejects_non_invariants() {
        let p = 11;
        let ctx = VarContext::t_vars(3);
        let t1 = GradedPoly::var(0, p, ctx.clone());
        assert!(matches!(
            to_pc_basis(&t1.pow(2)),
            Err(SymmetricError::NotInvariant(_))
        ));
        let t2 = GradedPoly::var(1, p, ctx);
        let mixed = t1.pow(2).mul(&t2).unwrap();
        assert!(matches!(
            to_pc_basis(&mixed),
            Err(SymmetricError::NotInvariant(_))
        ));
    }

    #[test]
    fn fast_p1_agrees_with_expansion() {
        let p = 11;
        let n = 3;
        for f in [
            pontryagin(2, n, p),
            chern(3, n, p),
            pontryagin(1, n, p).mul(&chern(3, n, p)).unwrap(),
            power_sum(2, n, p),
        ] {
            let fast = steenrod_p1_to_pc(&f).unwrap();
            let slow = to_pc_basis(&f.steenrod_p1().unwrap()).unwrap();
            assert_eq!(fast, slow);
        }
    }
}
